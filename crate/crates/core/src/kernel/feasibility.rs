//! Exact feasibility of small systems of linear equalities and inequalities.
//!
//! Equalities are removed first by Gauss–Jordan elimination, which leaves an
//! affine parameterization `x = x₀ + N·t` of their solution set. The
//! inequalities are rewritten in `t` and decided by Fourier–Motzkin
//! elimination; a feasible point is recovered by back-substitution through
//! the stored elimination stages.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{primitive_row, Scalar};

/// `coeffs · x (=|≥) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    vars: usize,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem {
            vars,
            ..Default::default()
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn equal(&mut self, coeffs: Vec<Scalar>, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.vars, "constraint width");
        self.equalities.push(Constraint { coeffs, rhs });
    }

    pub fn at_least(&mut self, coeffs: Vec<Scalar>, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.vars, "constraint width");
        self.inequalities.push(Constraint { coeffs, rhs });
    }

    /// `x[var] ≥ 0`.
    pub fn nonnegative(&mut self, var: usize) {
        let mut coeffs = vec![Scalar::zero(); self.vars];
        coeffs[var] = Scalar::one();
        self.at_least(coeffs, Scalar::zero());
    }

    /// Returns some point satisfying every constraint, or `None`.
    pub fn feasible_point(&self) -> Option<Vec<Scalar>> {
        let param = eliminate_equalities(self.vars, &self.equalities)?;
        let free = param.free.len();
        // Rewrite g·x ≥ h as (g·N)·t ≥ h − g·x₀.
        let mut rows = Vec::with_capacity(self.inequalities.len());
        for c in &self.inequalities {
            let mut coeffs = vec![Scalar::zero(); free];
            let mut rhs = c.rhs.clone();
            for (i, g) in c.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                rhs -= g * &param.offset[i];
                for (f, dir) in param.directions[i].iter().enumerate() {
                    if !dir.is_zero() {
                        coeffs[f] += g * dir;
                    }
                }
            }
            rows.push(Constraint { coeffs, rhs });
        }
        let t = fourier_motzkin(free, rows)?;
        Some(
            (0..self.vars)
                .map(|i| {
                    param.directions[i]
                        .iter()
                        .zip(&t)
                        .fold(param.offset[i].clone(), |acc, (d, tv)| acc + d * tv)
                })
                .collect(),
        )
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// Checks a candidate point exactly against every constraint.
    pub fn satisfied_by(&self, x: &[Scalar]) -> bool {
        let dot = |c: &Constraint| {
            c.coeffs
                .iter()
                .zip(x)
                .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
        };
        self.equalities.iter().all(|c| dot(c) == c.rhs)
            && self.inequalities.iter().all(|c| dot(c) >= c.rhs)
    }
}

/// `x = offset + directions · t`, with `t` indexed by the free columns.
struct Parameterization {
    offset: Vec<Scalar>,
    directions: Vec<Vec<Scalar>>,
    free: Vec<usize>,
}

/// Fraction-free Gauss–Jordan on integer rows: each pivot step replaces every
/// other row by `(p·rowᵢ − rowᵢ[c]·row_r) / prev`, which divides exactly and
/// leaves every pivot equal to the last one, `d`. The reduced system then
/// reads `d·x_pivot + Σ a_f·x_f = rhs` over the free columns `f`.
fn eliminate_equalities(vars: usize, eqs: &[Constraint]) -> Option<Parameterization> {
    let mut rows: Vec<Vec<BigInt>> = eqs
        .iter()
        .map(|c| {
            let mut r = c.coeffs.clone();
            r.push(c.rhs.clone());
            primitive_row(&r)
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    for col in 0..vars {
        let rank = pivots.len();
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pv = pivot_row[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let factor = row[col].clone();
            for (v, pr) in row.iter_mut().zip(&pivot_row) {
                let t = &pv * &*v - &factor * pr;
                *v = t / &prev;
            }
        }
        prev = pv;
        pivots.push(col);
    }
    let rank = pivots.len();
    if rows[rank..].iter().any(|r| !r[vars].is_zero()) {
        return None;
    }
    let d = Scalar::from_integer(prev);
    let free: Vec<usize> = (0..vars).filter(|c| !pivots.contains(c)).collect();
    let mut offset = vec![Scalar::zero(); vars];
    let mut directions = vec![vec![Scalar::zero(); free.len()]; vars];
    for (f, &col) in free.iter().enumerate() {
        directions[col][f] = Scalar::one();
    }
    for (r, &col) in pivots.iter().enumerate() {
        offset[col] = Scalar::from_integer(rows[r][vars].clone()) / &d;
        for (f, &fc) in free.iter().enumerate() {
            if !rows[r][fc].is_zero() {
                directions[col][f] = -Scalar::from_integer(rows[r][fc].clone()) / &d;
            }
        }
    }
    Some(Parameterization {
        offset,
        directions,
        free,
    })
}

/// Normalizes `coeffs · t ≥ rhs` to primitive integer form. Returns `Err(())`
/// for a contradiction `0 ≥ positive`, `Ok(None)` for a tautology.
fn normalize(c: Constraint) -> Result<Option<Constraint>, ()> {
    if c.coeffs.iter().all(Zero::is_zero) {
        return if c.rhs.is_positive() {
            Err(())
        } else {
            Ok(None)
        };
    }
    let mut row = c.coeffs;
    row.push(c.rhs);
    let ints: Vec<BigInt> = primitive_row(&row);
    let mut coeffs: Vec<Scalar> = ints.into_iter().map(Scalar::from_integer).collect();
    let rhs = coeffs.pop().expect("row has a rhs entry");
    Ok(Some(Constraint { coeffs, rhs }))
}

fn dedup(constraints: Vec<Constraint>) -> Result<Vec<Constraint>, ()> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in constraints {
        if let Some(n) = normalize(c)? {
            let key = (n.coeffs.clone(), n.rhs.clone());
            if seen.insert(key) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

fn fourier_motzkin(vars: usize, rows: Vec<Constraint>) -> Option<Vec<Scalar>> {
    let mut current = dedup(rows).ok()?;
    let mut remaining: Vec<usize> = (0..vars).collect();
    // (variable, constraint set in which it was eliminated)
    let mut stages: Vec<(usize, Vec<Constraint>)> = Vec::with_capacity(vars);
    while !remaining.is_empty() {
        // Cheapest variable first: fewest generated constraints.
        let (pos_idx, var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let pos = current.iter().filter(|c| c.coeffs[v].is_positive()).count();
                let neg = current.iter().filter(|c| c.coeffs[v].is_negative()).count();
                pos * neg
            })
            .map(|(i, &v)| (i, v))
            .expect("remaining is non-empty");
        remaining.swap_remove(pos_idx);
        let mut next = Vec::new();
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for c in &current {
            if c.coeffs[var].is_positive() {
                lower.push(c);
            } else if c.coeffs[var].is_negative() {
                upper.push(c);
            } else {
                next.push(c.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = &lo.coeffs[var];
                let b = -&up.coeffs[var];
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(l, u)| l * &b + u * a)
                    .collect();
                next.push(Constraint {
                    coeffs,
                    rhs: &lo.rhs * &b + &up.rhs * a,
                });
            }
        }
        stages.push((var, current));
        current = dedup(next).ok()?;
    }
    // Everything left is a tautology; dedup already rejected contradictions.
    let mut t = vec![Scalar::zero(); vars];
    for (var, constraints) in stages.into_iter().rev() {
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        for c in &constraints {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let rest = c
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != var)
                .fold(Scalar::zero(), |acc, (i, v)| acc + v * &t[i]);
            let bound = (&c.rhs - rest) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        t[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Scalar::from_integer(BigInt::from(2)),
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => Scalar::zero(),
        };
    }
    Some(t)
}
