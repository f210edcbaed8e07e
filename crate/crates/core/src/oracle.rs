//! Reference values computed directly: inverse norms by explicit inversion
//! and the smallest singular value by power iteration on the inverse.
//!
//! These are independent of the recursion-based bounds and serve as the
//! ground truth they are checked against.

use crate::error::{Error, Result};
use crate::matrix::{check_len, SquareMatrix};

/// Default relative pivot threshold: a pivot below
/// `DEFAULT_PIVOT_TOLERANCE * max|a_ij|` is treated as singular.
pub const DEFAULT_PIVOT_TOLERANCE: f64 = 1e-12;

pub const POWER_ITERATION_TOLERANCE: f64 = 1e-10;
pub const POWER_ITERATION_MAX_ITERS: usize = 10_000;

/// LU factorization with partial (row) pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    // unit lower part below the diagonal, U on and above
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &SquareMatrix) -> Result<Self> {
        Self::factor_with_tolerance(a, DEFAULT_PIVOT_TOLERANCE)
    }

    pub fn factor_with_tolerance(a: &SquareMatrix, rel_tol: f64) -> Result<Self> {
        let n = a.n();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let threshold = rel_tol * a.max_abs();

        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > threshold) || pivot == 0.0 {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let d = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / d;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, b.len())?;
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Ok(x)
    }

    /// Solves `A^T x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, b.len())?;
        let n = self.n;
        // A^T = U^T L^T P, so solve U^T y = b, L^T w = y, x = P^T w.
        let mut y = b.to_vec();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[j * n + i] * y[j]).sum();
            y[i] = (y[i] - s) / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[j * n + i] * y[j]).sum();
            y[i] -= s;
        }
        let mut x = vec![0.0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = y[k];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> SquareMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e).expect("length matches");
            e[j] = 0.0;
            for i in 0..n {
                data[i * n + j] = col[i];
            }
        }
        SquareMatrix::from_row_major(n, data).expect("inverse of a factored matrix is finite")
    }
}

/// Explicit inverse by elimination with partial pivoting.
pub fn inverse(a: &SquareMatrix) -> Result<SquareMatrix> {
    Ok(Lu::factor(a)?.inverse())
}

pub fn exact_inverse_inf_norm(a: &SquareMatrix) -> Result<f64> {
    Ok(inverse(a)?.inf_norm())
}

pub fn exact_inverse_one_norm(a: &SquareMatrix) -> Result<f64> {
    Ok(inverse(a)?.one_norm())
}

/// Smallest singular value of `a`, as the reciprocal of the largest singular
/// value of `a^-1`.
///
/// Power iteration on `A^-T A^-1`, each step applied as two triangular solves,
/// starting from the all-ones vector. Stops when the Rayleigh quotient changes
/// by less than `1e-10` relative.
pub fn sigma_min_oracle(a: &SquareMatrix) -> Result<f64> {
    let lu = Lu::factor(a)?;
    let n = a.n();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0;
    for _ in 0..POWER_ITERATION_MAX_ITERS {
        let y = lu.solve(&v)?;
        let u = lu.solve_transpose(&y)?;
        // v has unit length, so v^T A^-T A^-1 v = |y|^2
        let next: f64 = y.iter().map(|t| t * t).sum();
        let norm = u.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Singular { pivot: 0 });
        }
        v = u.into_iter().map(|t| t / norm).collect();
        if (next - lambda).abs() < POWER_ITERATION_TOLERANCE * next {
            return Ok(1.0 / next.sqrt());
        }
        lambda = next;
    }
    Err(Error::NoConvergence {
        iterations: POWER_ITERATION_MAX_ITERS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mat(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().copied()).unwrap()
    }

    fn nalgebra_of(a: &SquareMatrix) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(a.n(), a.n(), a.as_slice())
    }

    fn a3() -> SquareMatrix {
        mat(&[
            &[21.0, -9.1, -4.2, -2.1],
            &[-0.7, 9.1, -4.2, -2.1],
            &[-0.7, -0.7, 4.9, -2.1],
            &[-0.7, -0.7, -0.7, 2.8],
        ])
    }

    fn a4() -> SquareMatrix {
        mat(&[
            &[5.0, 1.0, 0.2, 2.0],
            &[1.0, 21.0, 1.0, -3.0],
            &[2.0, 0.5, 6.4, -2.0],
            &[0.5, -1.0, 1.0, 9.0],
        ])
    }

    #[test]
    fn identity_norms() {
        assert_eq!(exact_inverse_inf_norm(&SquareMatrix::identity(5)).unwrap(), 1.0);
        assert_eq!(exact_inverse_one_norm(&SquareMatrix::identity(3)).unwrap(), 1.0);
        assert_relative_eq!(sigma_min_oracle(&SquareMatrix::identity(4)).unwrap(), 1.0);
    }

    #[test]
    fn inverse_matches_nalgebra() {
        for a in [a3(), a4()] {
            let ours = inverse(&a).unwrap();
            let theirs = nalgebra_of(&a).try_inverse().unwrap();
            for i in 0..a.n() {
                for j in 0..a.n() {
                    assert_relative_eq!(ours.get(i, j), theirs[(i, j)], epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn transpose_duality() {
        for a in [a3(), a4()] {
            assert_relative_eq!(
                exact_inverse_one_norm(&a).unwrap(),
                exact_inverse_inf_norm(&a.transpose()).unwrap(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn solve_transpose_agrees_with_transposed_factorization() {
        let a = a4();
        let b = [1.0, -2.0, 0.5, 3.0];
        let x1 = Lu::factor(&a).unwrap().solve_transpose(&b).unwrap();
        let x2 = Lu::factor(&a.transpose()).unwrap().solve(&b).unwrap();
        for (p, q) in x1.iter().zip(&x2) {
            assert_relative_eq!(p, q, epsilon = 1e-13);
        }
    }

    #[test]
    fn sigma_min_reported_values() {
        assert!((sigma_min_oracle(&a3()).unwrap() - 1.0943).abs() < 1e-3);
        assert!((sigma_min_oracle(&a4()).unwrap() - 4.2327).abs() < 1e-3);
    }

    #[test]
    fn sigma_min_matches_svd() {
        for a in [a3(), a4()] {
            let svd = nalgebra_of(&a).singular_values();
            let smallest = svd.iter().cloned().fold(f64::INFINITY, f64::min);
            assert_relative_eq!(sigma_min_oracle(&a).unwrap(), smallest, max_relative = 1e-8);
        }
    }

    #[test]
    fn singular_is_detected() {
        let a = mat(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(inverse(&a), Err(Error::Singular { .. })));
        assert!(matches!(sigma_min_oracle(&a), Err(Error::Singular { .. })));
    }

    #[test]
    fn pivot_tolerance_is_configurable() {
        let a = mat(&[&[1.0, 0.0], &[0.0, 1e-9]]);
        assert!(Lu::factor(&a).is_ok());
        assert!(matches!(
            Lu::factor_with_tolerance(&a, 1e-6),
            Err(Error::Singular { pivot: 1 })
        ));
    }

    #[test]
    fn inverse_norm_times_norm_at_least_one() {
        for a in [a3(), a4()] {
            assert!(exact_inverse_inf_norm(&a).unwrap() * a.inf_norm() >= 1.0);
        }
    }
}
