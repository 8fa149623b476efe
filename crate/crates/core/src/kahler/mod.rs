//! The transverse Kähler potential, its Hessians, and the Hermitian-quadric
//! realization of `Z_P`.
//!
//! Everything here is floating point. The exact inputs (β vectors, the
//! relation matrix Γ) come from the fan and structure modules and are only
//! converted to `f64` at the boundary.

mod audit;
mod potential;
mod quadrics;

pub use audit::{kahler_audit, AuditOptions, AuditReport};
pub use potential::{beta_vectors, hessian_log, potential, potential_log, radial_form, BetaSystem};
pub use quadrics::{
    gamma_matrix, membership, nondegeneracy_check, point_from_exact, point_from_u, quadric_residual, sample_zp,
    Membership, Nondegeneracy, QuadricSystem,
};

/// A point of `C^m`, one `(re, im)` pair per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct PointC {
    pub z: Vec<(f64, f64)>,
}

impl PointC {
    pub fn new(z: Vec<(f64, f64)>) -> Self {
        PointC { z }
    }

    /// The point with `|z_k| = e^{x_k}` and zero phases.
    pub fn from_log(x: &[f64]) -> Self {
        PointC::new(x.iter().map(|&v| (v.exp(), 0.0)).collect())
    }

    pub fn m(&self) -> usize {
        self.z.len()
    }

    pub fn modulus(&self, k: usize) -> f64 {
        let (a, b) = self.z[k];
        a.hypot(b)
    }

    pub fn moduli_sq(&self) -> Vec<f64> {
        self.z.iter().map(|&(a, b)| a * a + b * b).collect()
    }

    /// Indices (1-based) of exactly vanishing coordinates.
    pub fn zero_set(&self) -> Vec<usize> {
        self.z
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == 0.0 && b == 0.0)
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// `x_k = log|z_k|`, or `None` on a vanishing coordinate.
    pub fn log_moduli(&self) -> Option<Vec<f64>> {
        (0..self.m())
            .map(|k| {
                let r = self.modulus(k);
                (r > 0.0).then(|| r.ln())
            })
            .collect()
    }
}
