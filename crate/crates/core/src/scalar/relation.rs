//! Heuristic search for sparse integer relations (two or three terms) among
//! the numeric values of the monomials of degree ≤ 2 in the declared
//! symbols. A hit means the independence contract is probably violated; a
//! miss proves nothing.

use super::symbols::SymbolTable;

#[derive(Clone, Debug, PartialEq)]
pub struct RelationHit {
    /// Monomials as exponent vectors, paired with integer coefficients.
    pub terms: Vec<(Vec<u32>, i64)>,
    pub residual: f64,
}

const SCALE: f64 = 1e13;
const MAX_COEFF: f64 = 100.0;

pub fn find_integer_relation(table: &SymbolTable) -> Option<RelationHit> {
    let k = table.len();
    if k == 0 {
        return None;
    }
    let vals = table.f64_values();
    let mut monos: Vec<Vec<u32>> = vec![vec![0; k]];
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        monos.push(e);
    }
    for i in 0..k {
        for j in i..k {
            let mut e = vec![0; k];
            e[i] += 1;
            e[j] += 1;
            monos.push(e);
        }
    }
    let x: Vec<f64> = monos
        .iter()
        .map(|e| e.iter().zip(&vals).map(|(&p, v)| v.powi(p as i32)).product())
        .collect();
    let n = x.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            subsets.push(vec![a, b]);
            for c in b + 1..n {
                subsets.push(vec![a, b, c]);
            }
        }
    }
    subsets.sort_by_key(|s| s.len());
    for sub in subsets {
        if let Some(coeffs) = sparse_relation(&sub.iter().map(|&i| x[i]).collect::<Vec<_>>()) {
            let residual = coeffs.iter().zip(&sub).map(|(c, &i)| c * x[i]).sum();
            let terms = sub
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c != 0.0)
                .map(|(&i, &c)| (monos[i].clone(), c as i64))
                .collect();
            return Some(RelationHit { terms, residual });
        }
    }
    None
}

/// Small-coefficient integer relation among a handful of values, if one
/// holds to near double precision.
fn sparse_relation(x: &[f64]) -> Option<Vec<f64>> {
    let n = x.len();
    let mut basis: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r = vec![0.0; n + 1];
            r[i] = 1.0;
            r[n] = SCALE * x[i];
            r
        })
        .collect();
    lll(&mut basis, 0.75);
    for b in &basis {
        let coeffs: Vec<f64> = b[..n].iter().map(|c| c.round()).collect();
        if coeffs.contains(&0.0) || coeffs.iter().any(|c| c.abs() > MAX_COEFF) {
            continue;
        }
        let residual: f64 = coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        let scale: f64 = coeffs.iter().zip(x).map(|(c, v)| (c * v).abs()).sum();
        if residual.abs() <= 1e-12 * scale.max(1.0) {
            return Some(coeffs);
        }
    }
    None
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Textbook LLL with full Gram–Schmidt recomputation; dimensions here are
/// below 20.
fn lll(b: &mut [Vec<f64>], delta: f64) {
    let n = b.len();
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 100_000 {
        guard += 1;
        let (mu, bstar_sq) = gram_schmidt(b);
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
            }
        }
        let (mu, _) = gram_schmidt(b);
        if bstar_sq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar_sq[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

fn gram_schmidt(b: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = b.len();
    let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    let mut sq = vec![0.0; n];
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = if sq[j] > 0.0 {
                dotf(&b[i], &bstar[j]) / sq[j]
            } else {
                0.0
            };
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= mu[i][j] * y;
            }
        }
        sq[i] = dotf(&v, &v);
        bstar.push(v);
    }
    (mu, sq)
}
