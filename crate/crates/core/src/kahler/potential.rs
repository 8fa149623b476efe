use nalgebra::DMatrix;

use super::PointC;
use crate::error::{Error, Result};
use crate::fan::{FanData, WeakNormalCertificate};
use crate::scalar::{dot, ScalarMatrix, ScalarVec};
use crate::simplicial::Face;
use crate::structure::kernel_of_a;

/// The exponent vectors `β_I`, exact and as `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaSystem {
    pub faces: Vec<Face>,
    pub exact: Vec<ScalarVec>,
    pub numeric: Vec<Vec<f64>>,
}

/// Recompute the `β_I` from a certificate and check that they differ
/// pairwise by elements of the row space of `A`, and that every `β_I`
/// pairs with `Ker A` as `b` does.
pub fn beta_vectors(f: &FanData, cert: &WeakNormalCertificate) -> Result<BetaSystem> {
    if !cert.verify(f)? {
        return Err(Error::Invariant("certificate does not match the fan".into()));
    }
    let a = f.matrix_a();
    let rank = a.rank();
    let first = &cert.betas[0];
    for beta in &cert.betas[1..] {
        let diff: ScalarVec = beta.iter().zip(first).map(|(x, y)| x - y).collect();
        let mut rows: Vec<ScalarVec> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
        rows.push(diff);
        if ScalarMatrix::from_rows(rows)?.rank() != rank {
            return Err(Error::Invariant("β_I − β_J is not in the row space of A".into()));
        }
    }
    for lam in kernel_of_a(f)? {
        let target = dot(&lam, &cert.offsets);
        if cert.betas.iter().any(|b| dot(&lam, b) != target) {
            return Err(Error::Invariant("⟨β_I, λ⟩ differs from Σ λ_i b_i".into()));
        }
    }
    let numeric = cert
        .betas
        .iter()
        .map(|b| b.iter().map(|x| x.to_f64(f.table())).collect())
        .collect();
    Ok(BetaSystem {
        faces: cert.faces.clone(),
        exact: cert.betas.clone(),
        numeric,
    })
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    max + v.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

fn softmax(b: &BetaSystem, x: &[f64]) -> Vec<f64> {
    let e: Vec<f64> = b.numeric.iter().map(|beta| dotf(beta, x)).collect();
    let max = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = e.iter().map(|v| (v - max).exp()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|v| v / total).collect()
}

/// `F(x) = log Σ_I e^{⟨β_I, x⟩}`, the potential in log-moduli.
pub fn potential_log(b: &BetaSystem, x: &[f64]) -> f64 {
    let e: Vec<f64> = b.numeric.iter().map(|beta| dotf(beta, x)).collect();
    log_sum_exp(&e)
}

/// `f(z) = log Σ_I |z|^{β_I}` with `0^0 = 1`.
pub fn potential(b: &BetaSystem, z: &PointC) -> Result<f64> {
    let zeros = z.zero_set();
    let mut exps = Vec::new();
    for beta in &b.numeric {
        if zeros.iter().any(|&i| beta[i - 1] != 0.0) {
            continue;
        }
        let e = (0..z.m())
            .filter(|k| !zeros.contains(&(k + 1)))
            .map(|k| beta[k] * z.modulus(k).ln())
            .sum::<f64>();
        exps.push(e);
    }
    if exps.is_empty() {
        return Err(Error::Input(format!(
            "zero set {zeros:?} is not a face: point is outside U(K)"
        )));
    }
    Ok(log_sum_exp(&exps))
}

/// Second derivative of `t ↦ f(e^{λ_1 t} z_1, …)` at `t = 0`: the
/// variance of `⟨β_I, λ⟩` under the softmax weights.
pub fn radial_form(b: &BetaSystem, z: &PointC, lambda: &[f64]) -> Result<f64> {
    let x = z
        .log_moduli()
        .ok_or_else(|| Error::Input("radial form needs all coordinates nonzero".into()))?;
    let p = softmax(b, &x);
    let v: Vec<f64> = b.numeric.iter().map(|beta| dotf(beta, lambda)).collect();
    let mean: f64 = p.iter().zip(&v).map(|(p, v)| p * v).sum();
    Ok(p.iter().zip(&v).map(|(p, v)| p * (v - mean) * (v - mean)).sum())
}

/// `H = Σ p_I β_I β_Iᵀ − μ μᵀ` with `μ = Σ p_I β_I`, the Hessian of `F`.
pub fn hessian_log(b: &BetaSystem, x: &[f64]) -> DMatrix<f64> {
    let m = x.len();
    let p = softmax(b, x);
    let mut h = DMatrix::zeros(m, m);
    let mut mu = vec![0.0; m];
    for (pi, beta) in p.iter().zip(&b.numeric) {
        for k in 0..m {
            mu[k] += pi * beta[k];
        }
    }
    for (pi, beta) in p.iter().zip(&b.numeric) {
        let d: Vec<f64> = beta.iter().zip(&mu).map(|(x, y)| x - y).collect();
        for r in 0..m {
            for c in 0..m {
                h[(r, c)] += pi * d[r] * d[c];
            }
        }
    }
    h
}
