//! Double description method: extreme rays of a pointed polyhedral cone
//! `{x : A x >= 0}` over the integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::rational::{self, Rational};

#[derive(Debug, Clone)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Extreme rays of `{x ∈ R^dim : row · x >= 0 for all rows}`, each scaled to
/// a primitive integer vector. Fails if the cone is not pointed.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let q: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();

    // initial simplicial cone on `dim` independent rows
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in q.iter().enumerate() {
        acc.push(r.clone());
        if Echelon::new(&acc, dim).rank() == acc.len() {
            basis_rows.push(i);
            if basis_rows.len() == dim {
                break;
            }
        } else {
            acc.pop();
        }
    }
    if basis_rows.len() < dim {
        return Err(Error::Internal("cone is not pointed".into()));
    }
    let mut rays: Vec<Ray> = Vec::new();
    for j in 0..dim {
        let rhs: Vec<Rational> = (0..dim)
            .map(|i| if i == j { rational::int(1) } else { rational::int(0) })
            .collect();
        let x = linalg::solve(&acc, &rhs).expect("independent rows");
        let mut zeros = BitSet::new(rows.len());
        for (i, &b) in basis_rows.iter().enumerate() {
            if i != j {
                zeros.insert(b);
            }
        }
        rays.push(Ray {
            coords: rational::to_integer_direction(&x),
            zeros,
        });
    }

    let mut processed = BitSet::new(rows.len());
    for &b in &basis_rows {
        processed.insert(b);
    }
    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&r| vals[r].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&r| vals[r].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            processed.insert(i);
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|t| t == p || t == n || !common.is_subset(&rays[t].zeros));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(qn, qp)| &vals[p] * qn - &vals[n] * qp)
                    .collect();
                let mut zeros = common;
                zeros.insert(i);
                next.push(Ray {
                    coords: rational::primitive(coords),
                    zeros,
                });
            }
        }
        for (r, v) in rays.iter_mut().zip(&vals) {
            if v.is_zero() {
                r.zeros.insert(i);
            }
        }
        let mut kept: Vec<Ray> = rays
            .into_iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r)
            .collect();
        kept.extend(next);
        rays = kept;
        processed.insert(i);
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigInt>> {
        r.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn square_cone() {
        // cone over a unit square at height z = 1: x >= 0, y >= 0, z - x >= 0, z - y >= 0
        let a = rows(&[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        let mut r = extreme_rays(&a, 3).unwrap();
        r.sort();
        let mut want = rows(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        want.sort();
        assert_eq!(r, want);
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let a = rows(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]);
        let mut r = extreme_rays(&a, 2).unwrap();
        r.sort();
        assert_eq!(r, rows(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn non_pointed_cone_is_rejected() {
        let a = rows(&[&[1, 0]]);
        assert!(extreme_rays(&a, 2).is_err());
    }
}
