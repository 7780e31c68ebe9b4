//! Exact linear programming by the two-phase simplex method.
//!
//! Pivoting follows Bland's rule, so the method terminates on degenerate
//! problems. Several objectives can be given; they are optimized
//! lexicographically in one run (reduced costs are compared as vectors),
//! which gives a canonical optimum when the first objective has ties.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Optimal {
        x: Vec<Rational>,
        /// Value of each objective at `x`, in priority order.
        values: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl Outcome {
    pub fn optimal(&self) -> Option<(&[Rational], &Rational)> {
        match self {
            Outcome::Optimal { x, values } => Some((x, &values[0])),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    nonneg: Vec<bool>,
    rows: Vec<(Vec<Rational>, Cmp, Rational)>,
    sense: Sense,
    objectives: Vec<Vec<Rational>>,
}

impl LinearProgram {
    /// A program over `num_vars` free variables.
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LinearProgram {
            num_vars,
            nonneg: vec![false; num_vars],
            rows: Vec::new(),
            sense,
            objectives: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_nonnegative(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, cmp: Cmp, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, cmp, rhs));
    }

    /// Single-variable bound `x_var cmp rhs`.
    pub fn bound(&mut self, var: usize, cmp: Cmp, rhs: Rational) {
        let mut c = vec![Rational::zero(); self.num_vars];
        c[var] = Rational::one();
        self.add(c, cmp, rhs);
    }

    /// Appends an objective; earlier objectives take priority.
    pub fn objective(&mut self, coeffs: Vec<Rational>) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.objectives.push(coeffs);
    }

    pub fn solve(&self) -> Outcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    a: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Number of structural + slack columns; artificials come after.
    real_cols: usize,
    cols: usize,
    /// Column of `x_j^+` and optionally `x_j^-`.
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut c = 0;
        for j in 0..lp.num_vars {
            if lp.nonneg[j] {
                var_cols.push((c, None));
                c += 1;
            } else {
                var_cols.push((c, Some(c + 1)));
                c += 2;
            }
        }
        let structural = c;
        // Normalize to nonnegative right-hand sides.
        let rows: Vec<(Vec<Rational>, Cmp, Rational)> = lp
            .rows
            .iter()
            .map(|(coeffs, cmp, rhs)| {
                if rhs.is_negative() {
                    let flipped = match cmp {
                        Cmp::Le => Cmp::Ge,
                        Cmp::Ge => Cmp::Le,
                        Cmp::Eq => Cmp::Eq,
                    };
                    (coeffs.iter().map(|x| -x).collect(), flipped, -rhs)
                } else {
                    (coeffs.clone(), *cmp, rhs.clone())
                }
            })
            .collect();
        let slacks = rows.iter().filter(|r| r.1 != Cmp::Eq).count();
        let artificials = rows.iter().filter(|r| r.1 != Cmp::Le).count();
        let real_cols = structural + slacks;
        let cols = real_cols + artificials;
        let mut a = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let mut slack = structural;
        let mut art = real_cols;
        for (coeffs, cmp, rhs) in rows {
            let mut row = vec![Rational::zero(); cols + 1];
            for (j, v) in coeffs.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (p, m) = var_cols[j];
                if let Some(m) = m {
                    row[m] = -v.clone();
                }
                row[p] = v;
            }
            row[cols] = rhs;
            match cmp {
                Cmp::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Cmp::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Cmp::Eq => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            a.push(row);
        }
        Tableau {
            a,
            basis,
            real_cols,
            cols,
            var_cols,
        }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Vec<Rational>]) {
        let inv = Rational::one() / &self.a[r][c];
        for x in self.a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.a[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        for row in obj.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes the lexicographic cost rows over columns `< allowed`.
    /// Each cost row carries the (negated) objective value in its last slot.
    fn optimize(&mut self, obj: &mut [Vec<Rational>], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                obj.iter()
                    .map(|row| &row[j])
                    .find(|v| !v.is_zero())
                    .is_some_and(|v| v.is_negative())
            });
            let Some(c) = entering else {
                return true;
            };
            let rhs = self.cols;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                let aic = &self.a[i][c];
                if !aic.is_positive() {
                    continue;
                }
                let ratio = &self.a[i][rhs] / aic;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, obj);
        }
    }

    fn cost_row(&self, costs: &[Rational]) -> Vec<Rational> {
        // reduced costs: c - c_B B^{-1} A, value slot holds -c_B b
        let mut row = costs.to_vec();
        row.resize(self.cols + 1, Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (x, a) in row.iter_mut().zip(&self.a[i]) {
                if !a.is_zero() {
                    *x -= &cb * a;
                }
            }
        }
        row
    }

    fn run(mut self, lp: &LinearProgram) -> Outcome {
        // Phase 1: minimize the sum of artificials.
        if self.cols > self.real_cols {
            let mut costs = vec![Rational::zero(); self.cols];
            for c in costs[self.real_cols..].iter_mut() {
                *c = Rational::one();
            }
            let mut obj = vec![self.cost_row(&costs)];
            self.optimize(&mut obj, self.cols);
            if !obj[0][self.cols].is_zero() {
                return Outcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis.
            let mut i = 0;
            while i < self.a.len() {
                if self.basis[i] < self.real_cols {
                    i += 1;
                    continue;
                }
                match (0..self.real_cols).find(|&j| !self.a[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j, &mut obj);
                        i += 1;
                    }
                    None => {
                        self.a.remove(i);
                        self.basis.remove(i);
                    }
                }
            }
        }

        // Phase 2.
        let sign = match lp.sense {
            Sense::Minimize => Rational::one(),
            Sense::Maximize => -Rational::one(),
        };
        let mut obj: Vec<Vec<Rational>> = lp
            .objectives
            .iter()
            .map(|o| {
                let mut costs = vec![Rational::zero(); self.cols];
                for (j, v) in o.iter().enumerate() {
                    let (p, m) = self.var_cols[j];
                    costs[p] = &sign * v;
                    if let Some(m) = m {
                        costs[m] = -(&sign * v);
                    }
                }
                self.cost_row(&costs)
            })
            .collect();
        if !self.optimize(&mut obj, self.real_cols) {
            return Outcome::Unbounded;
        }

        let mut col_val = vec![Rational::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            col_val[b] = self.a[i][self.cols].clone();
        }
        let x: Vec<Rational> = self
            .var_cols
            .iter()
            .map(|&(p, m)| match m {
                Some(m) => &col_val[p] - &col_val[m],
                None => col_val[p].clone(),
            })
            .collect();
        let values = lp
            .objectives
            .iter()
            .map(|o| crate::rational::dot(o, &x))
            .collect();
        Outcome::Optimal { x, values }
    }
}

/// Looks for `x` with `eq_i · x = 0`, `strict_j · x > 0` (homogeneous).
///
/// Returns a point whose strict slacks are all at least `min(1, best)`,
/// where `best` is the largest achievable uniform slack under the
/// normalization `slack <= 1`, or `None` if the system is infeasible.
pub fn strictly_feasible(
    dim: usize,
    eq: &[Vec<Rational>],
    strict: &[Vec<Rational>],
    nonstrict: &[Vec<Rational>],
) -> Option<Vec<Rational>> {
    let mut lp = LinearProgram::new(dim + 1, Sense::Maximize);
    let s = dim;
    for row in eq {
        let mut r = row.clone();
        r.push(Rational::zero());
        lp.add(r, Cmp::Eq, Rational::zero());
    }
    for row in strict {
        let mut r = row.clone();
        r.push(-Rational::one());
        lp.add(r, Cmp::Ge, Rational::zero());
    }
    for row in nonstrict {
        let mut r = row.clone();
        r.push(Rational::zero());
        lp.add(r, Cmp::Ge, Rational::zero());
    }
    lp.bound(s, Cmp::Le, Rational::one());
    let mut obj = vec![Rational::zero(); dim + 1];
    obj[s] = Rational::one();
    lp.objective(obj);
    match lp.solve() {
        Outcome::Optimal { mut x, values } if strict.is_empty() || values[0].is_positive() => {
            x.truncate(dim);
            Some(x)
        }
        _ => None,
    }
}
