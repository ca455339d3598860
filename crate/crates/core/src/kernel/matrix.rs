//! Dense rational matrices with exact determinant signs and square solves.
//!
//! Both [`det_sign`] and [`solve_square`] clear denominators row by row (a
//! positive scaling that changes neither the sign of the determinant nor the
//! solution set) and then run fraction-free Bareiss elimination over the
//! integers, so intermediate entries stay bounded by minors of the scaled
//! matrix.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use super::scalar::{primitive_row, Scalar};
use super::vector::Vector;
use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Outcome of a square solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolve {
    Unique { solution: Vector, det_sign: i8 },
    Singular,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, KernelError> {
        if entries.len() != rows * cols {
            return Err(KernelError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, KernelError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(KernelError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector]) -> Result<Self, KernelError> {
        let rows = columns.first().map_or(0, Vector::dim);
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(KernelError::DimensionMismatch {
                    expected: rows,
                    found: c.dim(),
                });
            }
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, KernelError> {
        if self.cols != other.rows {
            return Err(KernelError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero();
                for l in 0..self.cols {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &Vector) -> Result<Vector, KernelError> {
        if self.cols != v.dim() {
            return Err(KernelError::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.coords())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect::<Vec<_>>()
            .into())
    }

    fn require_square(&self) -> Result<(), KernelError> {
        if !self.is_square() {
            return Err(KernelError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn integer_rows(&self, rhs: Option<&Vector>) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| match rhs {
                Some(b) => {
                    let mut row = self.row(i).to_vec();
                    row.push(b[i].clone());
                    primitive_row(&row)
                }
                None => primitive_row(self.row(i)),
            })
            .collect()
    }
}

/// Fraction-free forward elimination on the first `n` columns of an `n`-row
/// integer matrix. Returns `None` when a column has no pivot, otherwise the
/// parity of the row swaps performed. On success the diagonal entry
/// `m[n-1][n-1]` equals `±det` of the leading block.
fn bareiss_forward(m: &mut [Vec<BigInt>], n: usize) -> Option<bool> {
    let mut odd = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !m[r][k].is_zero())?;
        if pivot_row != k {
            m.swap(pivot_row, k);
            odd = !odd;
        }
        let width = m[k].len();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Some(odd)
}

/// Fraction-free row echelon reduction of the first `cols` columns, skipping
/// columns without a pivot. Returns the number of pivots.
fn echelon_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let width = m[r].len();
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    let mut rows = m.integer_rows(None);
    echelon_rank(&mut rows, m.cols)
}

/// Whether `a · x = b` has any solution, i.e. `rank a = rank [a | b]`.
pub fn is_consistent(a: &Matrix, b: &Vector) -> Result<bool, KernelError> {
    if b.dim() != a.rows {
        return Err(KernelError::DimensionMismatch {
            expected: a.rows,
            found: b.dim(),
        });
    }
    let mut rows = a.integer_rows(Some(b));
    let ra = echelon_rank(&mut rows, a.cols);
    // Rows below the pivots are zero in the first `cols` columns; any nonzero
    // right-hand side there is a contradiction.
    Ok(rows[ra..].iter().all(|r| r[a.cols].is_zero()))
}

fn sign_i8(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact sign of the determinant: `0` iff the matrix is singular.
pub fn det_sign(m: &Matrix) -> Result<i8, KernelError> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(1);
    }
    let mut rows = m.integer_rows(None);
    Ok(match bareiss_forward(&mut rows, n) {
        None => 0,
        Some(odd) => {
            let s = sign_i8(&rows[n - 1][n - 1]);
            if odd {
                -s
            } else {
                s
            }
        }
    })
}

/// Solution of a square system over a common positive denominator:
/// `x[i] = numerators[i] / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSolution {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
    pub det_sign: i8,
}

impl ScaledSolution {
    pub fn to_vector(&self) -> Vector {
        self.numerators
            .iter()
            .map(|v| Scalar::new(v.clone(), self.denominator.clone()))
            .collect::<Vec<_>>()
            .into()
    }
}

/// Solves `a · x = b` without leaving the integers: after elimination the
/// last Bareiss pivot `d` is the determinant of the row-permuted scaled
/// matrix, and by Cramer's rule every `d·xᵢ` is an integer, so the back
/// substitution divides exactly. Returns `None` for singular `a`.
pub fn solve_square_scaled(a: &Matrix, b: &Vector) -> Result<Option<ScaledSolution>, KernelError> {
    a.require_square()?;
    if b.dim() != a.rows {
        return Err(KernelError::DimensionMismatch {
            expected: a.rows,
            found: b.dim(),
        });
    }
    let n = a.rows;
    let mut rows = a.integer_rows(Some(b));
    let odd = match bareiss_forward(&mut rows, n) {
        None => return Ok(None),
        Some(odd) => odd,
    };
    let d = if n == 0 {
        BigInt::one()
    } else {
        rows[n - 1][n - 1].clone()
    };
    let mut y = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &rows[i][n] * &d;
        for j in i + 1..n {
            if !rows[i][j].is_zero() {
                acc -= &rows[i][j] * &y[j];
            }
        }
        y[i] = acc / &rows[i][i];
    }
    let det = sign_i8(&d);
    let (numerators, denominator) = if det < 0 {
        (y.into_iter().map(|v| -v).collect(), -d)
    } else {
        (y, d)
    };
    Ok(Some(ScaledSolution {
        numerators,
        denominator,
        det_sign: if odd { -det } else { det },
    }))
}

/// Solves `a · x = b` exactly, also reporting the determinant sign of `a`.
pub fn solve_square(a: &Matrix, b: &Vector) -> Result<LinearSolve, KernelError> {
    Ok(match solve_square_scaled(a, b)? {
        Some(s) => LinearSolve::Unique {
            solution: s.to_vector(),
            det_sign: s.det_sign,
        },
        None => LinearSolve::Singular,
    })
}

/// Unique solution of `a · x = b`, or `None` when `a` is singular. Never
/// approximates.
pub fn solve_affine(a: &Matrix, b: &Vector) -> Result<Option<Vector>, KernelError> {
    Ok(match solve_square(a, b)? {
        LinearSolve::Unique { solution, .. } => Some(solution),
        LinearSolve::Singular => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_and_consistency() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&Matrix::zeros(2, 3)), 0);
        assert_eq!(rank(&m(&[&[0, 1], &[0, 2], &[1, 0]])), 2);
        assert!(is_consistent(&a, &Vector::from_ints(&[1, 2, 5])).unwrap());
        assert!(!is_consistent(&a, &Vector::from_ints(&[1, 3, 5])).unwrap());
    }

    #[test]
    fn identity_and_swaps() {
        assert_eq!(det_sign(&Matrix::identity(3)).unwrap(), 1);
        assert_eq!(
            det_sign(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap(),
            -1
        );
        assert_eq!(
            det_sign(&m(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]])).unwrap(),
            0
        );
    }

    #[test]
    fn non_square_is_an_error() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(det_sign(&a), Err(KernelError::NotSquare { .. })));
        assert!(solve_affine(&a, &Vector::zeros(2)).is_err());
    }

    #[test]
    fn rational_entries_keep_sign() {
        let a = Matrix::from_rows(vec![
            vec![ratio(1, 3), ratio(-1, 2)],
            vec![ratio(1, 7), ratio(1, 5)],
        ])
        .unwrap();
        // 1/15 + 1/14 > 0
        assert_eq!(det_sign(&a).unwrap(), 1);
        assert_eq!(det_sign(&a.transpose()).unwrap(), 1);
    }

    #[test]
    fn solve_identity_and_zero() {
        let v = Vector::new(vec![ratio(1, 2), int(-3), ratio(7, 9)]);
        assert_eq!(solve_affine(&Matrix::identity(3), &v).unwrap(), Some(v));
        assert_eq!(
            solve_affine(&Matrix::zeros(2, 2), &Vector::zeros(2)).unwrap(),
            None
        );
    }

    #[test]
    fn solve_needs_row_swap() {
        let a = m(&[&[0, 2], &[3, 1]]);
        let b = Vector::from_ints(&[4, 5]);
        match solve_square(&a, &b).unwrap() {
            LinearSolve::Unique { solution, det_sign } => {
                assert_eq!(solution, Vector::from_ints(&[1, 2]));
                assert_eq!(det_sign, -1);
            }
            LinearSolve::Singular => panic!("expected a unique solution"),
        }
    }
}
