//! su(3) structure constants and the commutator-table checker.

use nalgebra::Matrix6;
use serde::Serialize;

use super::{commutator6, su3_generators, Generator6};

/// Totally antisymmetric `f_ikj`, stored 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub table: [[[f64; 8]; 8]; 8],
}

const HALF_TRIPLES: [(usize, usize, usize); 6] =
    [(1, 4, 7), (1, 6, 5), (2, 4, 6), (2, 5, 7), (3, 4, 5), (3, 7, 6)];

impl StructureConstants {
    fn zero() -> Self {
        Self {
            table: [[[0.0; 8]; 8]; 8],
        }
    }

    /// Sets `f_ijk = value` and fills in every permutation with its sign.
    fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let (i, j, k) = (i - 1, j - 1, k - 1);
        for (a, b, c, sign) in [
            (i, j, k, 1.0),
            (j, k, i, 1.0),
            (k, i, j, 1.0),
            (j, i, k, -1.0),
            (i, k, j, -1.0),
            (k, j, i, -1.0),
        ] {
            self.table[a][b][c] = sign * value;
        }
    }

    /// The tabulated values: `f123 = 1`, six entries `1/2`, `f458 = f678 = √3/2`.
    pub fn standard() -> Self {
        let mut f = Self::zero();
        f.set(1, 2, 3, 1.0);
        for (i, j, k) in HALF_TRIPLES {
            f.set(i, j, k, 0.5);
        }
        let r = 3f64.sqrt() / 2.0;
        f.set(4, 5, 8, r);
        f.set(6, 7, 8, r);
        f
    }

    /// Re-derives the constants by projecting `[F_i, F_k] / 2` onto the F basis.
    pub fn from_commutators(generators: &[Generator6; 8]) -> Self {
        let mut f = Self::zero();
        for i in 0..8 {
            for k in 0..8 {
                let c = commutator6(&generators[i], &generators[k]);
                let (coeffs, _) = project(&c.entries, generators);
                for j in 0..8 {
                    f.table[i][k][j] = coeffs[j] / 2.0;
                }
            }
        }
        f
    }

    /// 1-based accessor.
    pub fn get(&self, i: usize, k: usize, j: usize) -> f64 {
        self.table[i - 1][k - 1][j - 1]
    }

    /// Largest deviation from total antisymmetry.
    pub fn antisymmetry_residual(&self) -> f64 {
        let t = &self.table;
        let mut worst: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let v = t[i][j][k];
                    worst = worst
                        .max((v + t[j][i][k]).abs())
                        .max((v + t[i][k][j]).abs())
                        .max((v + t[k][j][i]).abs());
                }
            }
        }
        worst
    }

    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    worst = worst.max((self.table[i][j][k] - other.table[i][j][k]).abs());
                }
            }
        }
        worst
    }
}

/// Coefficients of `m` along the `F` basis and the max-abs residual.
///
/// The `F_i` are mutually orthogonal under the Frobenius product, each with
/// squared norm 4, so a plain projection solves the least-squares problem.
fn project(m: &Matrix6<f64>, basis: &[Generator6; 8]) -> ([f64; 8], f64) {
    let mut coeffs = [0.0; 8];
    let mut rest = *m;
    for (c, g) in coeffs.iter_mut().zip(basis) {
        *c = m.dot(&g.entries) / g.entries.norm_squared();
    }
    for (c, g) in coeffs.iter().zip(basis) {
        rest -= g.entries * *c;
    }
    (coeffs, rest.amax())
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    /// 1-based.
    pub i: usize,
    pub k: usize,
    pub coefficients: [f64; 8],
    pub expected: [f64; 8],
    /// `max(|coefficients − expected|, projection residual)`.
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Su3Report {
    pub pairs: Vec<PairCheck>,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl Su3Report {
    pub fn passed(&self) -> usize {
        self.pairs.iter().filter(|p| p.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass)
    }
}

/// Checks all 28 commutators of the standard `F_i` against `2 f_ikj F_j`.
pub fn verify_su3_table(tol: f64) -> Su3Report {
    verify_su3_table_with(&su3_generators(), &StructureConstants::standard(), tol)
}

pub fn verify_su3_table_with(
    generators: &[Generator6; 8],
    constants: &StructureConstants,
    tol: f64,
) -> Su3Report {
    let mut pairs = Vec::with_capacity(28);
    for i in 0..8 {
        for k in (i + 1)..8 {
            let c = commutator6(&generators[i], &generators[k]);
            let (coefficients, proj_residual) = project(&c.entries, generators);
            let expected: [f64; 8] = std::array::from_fn(|j| 2.0 * constants.table[i][k][j]);
            let coeff_err = coefficients
                .iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let residual = coeff_err.max(proj_residual);
            pairs.push(PairCheck {
                i: i + 1,
                k: k + 1,
                coefficients,
                expected,
                residual,
                pass: residual <= tol,
            });
        }
    }
    let max_residual = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    Su3Report {
        pairs,
        max_residual,
        tolerance: tol,
    }
}
