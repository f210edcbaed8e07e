//! Random test matrices with prescribed structure.
//!
//! Off-diagonal entries are drawn first; diagonals are then set row by row so
//! the required dominance condition holds with a controlled margin. Since
//! `h_i` only depends on diagonals of earlier rows, one forward pass suffices.

use rand::Rng;

use crate::matrix::SquareMatrix;
use crate::profile::h_values;

/// Shape of the random draw.
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    /// Off-diagonal entries are uniform in `[-magnitude, magnitude]`.
    pub magnitude: f64,
    /// Probability that an off-diagonal entry is zeroed.
    pub sparsity: f64,
    /// Diagonal modulus is `bound * (1 + u) + floor` with `u` uniform in `[0, inflation]`.
    pub inflation: f64,
    pub floor: f64,
    /// Force a positive diagonal; otherwise signs are random.
    pub positive_diagonal: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            magnitude: 10.0,
            sparsity: 0.3,
            inflation: 0.5,
            floor: 0.05,
            positive_diagonal: false,
        }
    }
}

fn off_diagonal<R: Rng + ?Sized>(rng: &mut R, n: usize, spec: &RandomSpec) -> Vec<f64> {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !rng.random_bool(spec.sparsity) {
                data[i * n + j] = rng.random_range(-spec.magnitude..=spec.magnitude);
            }
        }
        data[i * n + i] = 1.0;
    }
    data
}

fn diagonal_for<R: Rng + ?Sized>(rng: &mut R, bound: f64, spec: &RandomSpec) -> f64 {
    let modulus = bound * (1.0 + rng.random_range(0.0..=spec.inflation)) + spec.floor;
    if spec.positive_diagonal || rng.random_bool(0.5) {
        modulus
    } else {
        -modulus
    }
}

/// Raises `|a_ii|` above `h_i(A)` row by row.
fn inflate_nekrasov<R: Rng + ?Sized>(rng: &mut R, n: usize, data: &mut [f64], spec: &RandomSpec) {
    for i in 0..n {
        let current = SquareMatrix::from_row_major(n, data.to_vec()).expect("finite");
        let h = h_values(&current).expect("nonzero diagonal")[i];
        data[i * n + i] = diagonal_for(rng, h, spec);
    }
}

/// A random Nekrasov matrix (usually not SDD).
pub fn random_nekrasov<R: Rng + ?Sized>(rng: &mut R, n: usize, spec: &RandomSpec) -> SquareMatrix {
    let mut data = off_diagonal(rng, n, spec);
    inflate_nekrasov(rng, n, &mut data, spec);
    SquareMatrix::from_row_major(n, data).expect("finite")
}

/// A random matrix that is Nekrasov and whose transpose is Nekrasov.
///
/// Enlarging `|a_ii|` never decreases any slack `|a_jj| - h_j`, so fixing the
/// transpose after the matrix keeps both conditions.
pub fn random_bi_nekrasov<R: Rng + ?Sized>(rng: &mut R, n: usize, spec: &RandomSpec) -> SquareMatrix {
    let mut data = off_diagonal(rng, n, spec);
    inflate_nekrasov(rng, n, &mut data, spec);
    for i in 0..n {
        let at = SquareMatrix::from_row_major(n, data.to_vec()).expect("finite").transpose();
        let h = h_values(&at).expect("nonzero diagonal")[i];
        if data[i * n + i].abs() <= h {
            let d = diagonal_for(rng, h, spec);
            data[i * n + i] = d.abs().copysign(data[i * n + i]);
        }
    }
    SquareMatrix::from_row_major(n, data).expect("finite")
}

/// A random strictly diagonally dominant matrix.
pub fn random_sdd<R: Rng + ?Sized>(rng: &mut R, n: usize, spec: &RandomSpec) -> SquareMatrix {
    let mut data = off_diagonal(rng, n, spec);
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| data[i * n + j].abs()).sum();
        data[i * n + i] = diagonal_for(rng, off, spec);
    }
    SquareMatrix::from_row_major(n, data).expect("finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::profile;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let spec = RandomSpec::default();
        let mut non_sdd = 0;
        for n in 1..=8 {
            for _ in 0..50 {
                let a = random_nekrasov(&mut rng, n, &spec);
                let p = profile(&a).unwrap();
                assert!(p.is_nekrasov, "{a:?}");
                non_sdd += usize::from(!p.is_sdd);

                let b = random_bi_nekrasov(&mut rng, n, &spec);
                assert!(profile(&b).unwrap().is_nekrasov);
                assert!(profile(&b.transpose()).unwrap().is_nekrasov);

                assert!(profile(&random_sdd(&mut rng, n, &spec)).unwrap().is_sdd);
            }
        }
        assert!(non_sdd > 100, "generator should mostly produce non-SDD matrices");
    }

    #[test]
    fn positive_diagonal_is_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = RandomSpec {
            positive_diagonal: true,
            ..RandomSpec::default()
        };
        for _ in 0..20 {
            let a = random_nekrasov(&mut rng, 4, &spec);
            assert!(a.diagonal().iter().all(|d| *d > 0.0));
        }
    }
}
