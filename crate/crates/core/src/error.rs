use alloc::string::String;
use alloc::vec::Vec;

use crate::pluecker::ThreeTermRelation;
use crate::subset::KSubset;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("weight is not in the Dressian: relation {relation} has a unique minimum")]
    NotInDressian { relation: ThreeTermRelation },

    #[error("cone signature is not realized by any weight vector")]
    EmptyCone,

    #[error("weight does not lie in the interior of a maximal cone (dimension {found}, a neighbouring cone has {larger})")]
    NonMaximalCone { found: usize, larger: usize },

    #[error("dissimilarity violates the four-point condition on quartet {quartet:?}")]
    NotTreeMetric { quartet: [u32; 4] },

    #[error("tree reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("arrangement is not compatible: d_{first_index:?}({}, {}) != d_{second_index:?}({}, {}) on {basis}", first_pair.0, first_pair.1, second_pair.0, second_pair.1)]
    Incompatible {
        basis: KSubset,
        first_index: Vec<u32>,
        first_pair: (u32, u32),
        second_index: Vec<u32>,
        second_pair: (u32, u32),
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
