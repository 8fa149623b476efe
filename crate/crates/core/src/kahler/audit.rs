use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::potential::{hessian_log, potential_log, radial_form, BetaSystem};
use super::PointC;
use crate::error::Result;
use crate::fan::FanData;
use crate::structure::kernel_of_a;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditOptions {
    pub seed: u64,
    /// Number of base points `x ∈ [−r, r]^m` with `r = radius / β_max`,
    /// `β_max` the largest exponent entry.
    pub samples: usize,
    pub radius: f64,
    /// Finite-difference step, also divided by `β_max`.
    pub step: f64,
    /// Finite-difference pairs `(x, λ)`.
    pub fd_pairs: usize,
    pub tol_vanish: f64,
    pub tol_eig: f64,
    pub tol_angle: f64,
    pub tol_fd: f64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            seed: 0,
            samples: 50,
            radius: 2.0,
            step: 1e-2,
            fd_pairs: 200,
            tol_vanish: 1e-10,
            tol_eig: 1e-8,
            tol_angle: 1e-6,
            tol_fd: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub samples: usize,
    /// Largest `|d²f(λ)|` over unit `λ ∈ Ker A`.
    pub max_on_kernel: f64,
    /// Smallest `d²f(λ) / |λ_⊥|²` over random `λ` with a component off `Ker A`.
    pub min_off_kernel: f64,
    /// Smallest Hessian eigenvalue, relative to the largest.
    pub min_eigenvalue: f64,
    /// Numerical kernel dimension at each sample, expected `m − n`.
    pub kernel_dims: Vec<usize>,
    pub expected_kernel_dim: usize,
    /// Largest sine of a principal angle between the Hessian kernel and `Ker A`.
    pub max_angle: f64,
    /// Largest relative error of the Richardson second difference.
    pub max_fd_error: f64,
    pub vanishes_on_kernel: bool,
    pub positive_off_kernel: bool,
    pub psd: bool,
    pub kernel_matches: bool,
    pub fd_agrees: bool,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.vanishes_on_kernel && self.positive_off_kernel && self.psd && self.kernel_matches && self.fd_agrees
    }
}

fn orthonormal_kernel(f: &FanData) -> Result<DMatrix<f64>> {
    let basis = kernel_of_a(f)?;
    let m = f.m();
    if basis.is_empty() {
        return Ok(DMatrix::zeros(m, 0));
    }
    let raw = DMatrix::from_fn(m, basis.len(), |r, c| basis[c][r].to_f64(f.table()));
    Ok(raw.qr().q())
}

fn random_vec(rng: &mut ChaCha8Rng, m: usize, r: f64) -> DVector<f64> {
    DVector::from_fn(m, |_, _| rng.gen_range(-r..r))
}

fn second_difference(b: &BetaSystem, x: &DVector<f64>, lam: &DVector<f64>, h: f64) -> f64 {
    let g = |t: f64| potential_log(b, (x + lam * t).as_slice());
    (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h)
}

/// Numerical audit of the transverse Kähler potential on `(C*)^m`.
pub fn kahler_audit(f: &FanData, b: &BetaSystem, opts: &AuditOptions) -> Result<AuditReport> {
    let m = f.m();
    let kernel = orthonormal_kernel(f)?;
    let kdim = kernel.ncols();
    let projector = &kernel * kernel.transpose();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let beta_max = b.numeric.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let radius = opts.radius / beta_max;
    let step = opts.step / beta_max;

    let mut max_on_kernel: f64 = 0.0;
    let mut min_off_kernel = f64::INFINITY;
    let mut min_eigenvalue = f64::INFINITY;
    let mut kernel_dims = Vec::with_capacity(opts.samples);
    let mut max_angle: f64 = 0.0;

    for _ in 0..opts.samples {
        let x = random_vec(&mut rng, m, radius);
        let z = PointC::from_log(x.as_slice());

        if kdim > 0 {
            let c = random_vec(&mut rng, kdim, 1.0);
            let lam = &kernel * c;
            let lam = &lam / lam.norm();
            max_on_kernel = max_on_kernel.max(radial_form(b, &z, lam.as_slice())?.abs());
        }

        if kdim < m {
            let (lam, perp) = loop {
                let lam = random_vec(&mut rng, m, 1.0);
                let perp = &lam - &projector * &lam;
                if perp.norm() >= 0.1 {
                    break (lam, perp);
                }
            };
            let q = radial_form(b, &z, lam.as_slice())?;
            min_off_kernel = min_off_kernel.min(q / perp.norm_squared());
        }

        let h = hessian_log(b, x.as_slice());
        let eig = SymmetricEigen::new(h);
        let top = eig
            .eigenvalues
            .iter()
            .copied()
            .fold(0.0f64, |a, v| a.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let small: Vec<usize> = (0..m).filter(|&k| eig.eigenvalues[k] < opts.tol_eig * top).collect();
        min_eigenvalue = min_eigenvalue.min(eig.eigenvalues.min() / top);
        kernel_dims.push(small.len());
        if !small.is_empty() {
            let vecs = eig.eigenvectors.select_columns(&small);
            let off = &vecs - &projector * &vecs;
            let sv = off.singular_values();
            max_angle = max_angle.max(sv.max());
        }
    }

    let mut max_fd_error: f64 = 0.0;
    for _ in 0..opts.fd_pairs {
        let x = random_vec(&mut rng, m, radius);
        let lam = random_vec(&mut rng, m, 1.0);
        let exact = radial_form(b, &PointC::from_log(x.as_slice()), lam.as_slice())?;
        let d1 = second_difference(b, &x, &lam, step);
        let d2 = second_difference(b, &x, &lam, step / 2.0);
        let rich = (4.0 * d2 - d1) / 3.0;
        let scale = exact.abs().max(lam.norm_squared() * beta_max * beta_max * 1e-3);
        max_fd_error = max_fd_error.max((rich - exact).abs() / scale);
    }

    let expected = m - f.n();
    Ok(AuditReport {
        samples: opts.samples,
        max_on_kernel,
        min_off_kernel,
        min_eigenvalue,
        vanishes_on_kernel: max_on_kernel <= opts.tol_vanish,
        positive_off_kernel: min_off_kernel > 0.0,
        psd: min_eigenvalue > -opts.tol_eig,
        kernel_matches: kernel_dims.iter().all(|&d| d == expected) && max_angle <= opts.tol_angle,
        fd_agrees: max_fd_error <= opts.tol_fd,
        kernel_dims,
        expected_kernel_dim: expected,
        max_angle,
        max_fd_error,
    })
}
