use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PointC;
use crate::error::{Error, Result};
use crate::fan::{FanData, PolytopeH};
use crate::scalar::{Scalar, ScalarMatrix, ScalarVec};
use crate::simplicial::SimplicialComplex;
use crate::structure::kernel_of_a;

/// `Σ_k γ_jk |z_k|² = Σ_k γ_jk b_k` for each row `j` of `Γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSystem {
    pub gamma: ScalarMatrix,
    pub rhs: ScalarVec,
    pub gamma_f64: Vec<Vec<f64>>,
    pub rhs_f64: Vec<f64>,
}

/// Rows of `Γ` are a basis of the linear relations among the `a_i`.
pub fn gamma_matrix(f: &FanData, b: &[Scalar]) -> Result<QuadricSystem> {
    if b.len() != f.m() {
        return Err(Error::Dimension(format!("{} offsets for m = {}", b.len(), f.m())));
    }
    let rows = kernel_of_a(f)?;
    let gamma = if rows.is_empty() {
        ScalarMatrix::zeros(0, f.m())
    } else {
        ScalarMatrix::from_rows(rows)?
    };
    if !gamma.mul(&f.matrix_a().transpose()).is_zero() {
        return Err(Error::Invariant("Γ Aᵀ is not zero".into()));
    }
    let rhs = gamma.mul_vec(b);
    let table = f.table();
    Ok(QuadricSystem {
        gamma_f64: (0..gamma.rows())
            .map(|r| gamma.row(r).iter().map(|x| x.to_f64(table)).collect())
            .collect(),
        rhs_f64: rhs.iter().map(|x| x.to_f64(table)).collect(),
        gamma,
        rhs,
    })
}

/// `Γ (|z_1|², …, |z_m|²)ᵀ − Γ b`.
pub fn quadric_residual(q: &QuadricSystem, z: &PointC) -> Vec<f64> {
    let y = z.moduli_sq();
    q.gamma_f64
        .iter()
        .zip(&q.rhs_f64)
        .map(|(row, r)| row.iter().zip(&y).map(|(g, v)| g * v).sum::<f64>() - r)
        .collect()
}

/// The point of `Z_P` over `u ∈ P` with the given phases.
pub fn point_from_u(p: &PolytopeH, u: &[f64], phases: &[f64]) -> PointC {
    let table = &p.table;
    let z = p
        .vectors
        .iter()
        .zip(&p.offsets)
        .zip(phases)
        .map(|((a, b), th)| {
            let y: f64 = a.iter().zip(u).map(|(x, v)| x.to_f64(table) * v).sum::<f64>() + b.to_f64(table);
            let r = y.max(0.0).sqrt();
            (r * th.cos(), r * th.sin())
        })
        .collect();
    PointC::new(z)
}

/// As [`point_from_u`] for an exact `u`; vanishing slacks give exact zeros.
pub fn point_from_exact(p: &PolytopeH, u: &[Scalar], phases: &[f64]) -> PointC {
    let z = p
        .slacks(u)
        .iter()
        .zip(phases)
        .map(|(y, th)| {
            if y.is_zero() {
                (0.0, 0.0)
            } else {
                let r = y.to_f64(&p.table).max(0.0).sqrt();
                (r * th.cos(), r * th.sin())
            }
        })
        .collect();
    PointC::new(z)
}

/// Rejection sampling of `u ∈ P` from the vertex bounding box, lifted to
/// `Z_P` with uniform phases.
pub fn sample_zp(p: &PolytopeH, seed: u64, count: usize) -> Result<Vec<PointC>> {
    let verts: Vec<Vec<f64>> = p
        .vertices()?
        .iter()
        .map(|v| v.point.iter().map(|x| x.to_f64(&p.table)).collect())
        .collect();
    if verts.is_empty() {
        return Err(Error::DegeneratePolytope("polytope has no vertices".into()));
    }
    let a: Vec<Vec<f64>> = p
        .vectors
        .iter()
        .map(|v| v.iter().map(|x| x.to_f64(&p.table)).collect())
        .collect();
    let b: Vec<f64> = p.offsets.iter().map(|x| x.to_f64(&p.table)).collect();
    let centre: Vec<f64> = (0..p.n)
        .map(|k| verts.iter().map(|v| v[k]).sum::<f64>() / verts.len() as f64)
        .collect();
    let mut lo: Vec<f64> = (0..p.n)
        .map(|k| verts.iter().map(|v| v[k]).fold(f64::INFINITY, f64::min))
        .collect();
    let mut hi: Vec<f64> = (0..p.n)
        .map(|k| verts.iter().map(|v| v[k]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 200 * count.max(1);
    let mut misses = 0;
    let mut shrinks = 0;
    while out.len() < count {
        let u: Vec<f64> = (0..p.n)
            .map(|k| {
                if lo[k] < hi[k] {
                    rng.gen_range(lo[k]..hi[k])
                } else {
                    lo[k]
                }
            })
            .collect();
        let inside = a
            .iter()
            .zip(&b)
            .all(|(ai, bi)| ai.iter().zip(&u).map(|(x, y)| x * y).sum::<f64>() + bi >= 0.0);
        if inside {
            let phases: Vec<f64> = (0..p.m()).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            out.push(point_from_u(p, &u, &phases));
            continue;
        }
        misses += 1;
        if misses > budget {
            if shrinks == 4 {
                return Err(Error::Cap("rejection sampling exhausted its budget".into()));
            }
            for k in 0..p.n {
                lo[k] = centre[k] + 0.5 * (lo[k] - centre[k]);
                hi[k] = centre[k] + 0.5 * (hi[k] - centre[k]);
            }
            shrinks += 1;
            misses = 0;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub in_u: bool,
    pub in_zk: bool,
    /// `min_k ||z_k| − 1|`: how far the unit-modulus decisions were from
    /// the threshold.
    pub margin: f64,
}

/// Membership in `U(K)` (exact zeros) and in `Z_K` (moduli compared with 1
/// at tolerance `tol`).
pub fn membership(k: &SimplicialComplex, z: &PointC, tol: f64) -> Result<Membership> {
    let in_u = k.is_face(&z.zero_set())?;
    let mut small = Vec::new();
    let mut bounded = true;
    let mut margin = f64::INFINITY;
    for i in 0..z.m() {
        let r = z.modulus(i);
        margin = margin.min((r - 1.0).abs());
        if r > 1.0 + tol {
            bounded = false;
        } else if r < 1.0 - tol {
            small.push(i + 1);
        }
    }
    Ok(Membership {
        in_u,
        in_zk: bounded && k.is_face(&small)?,
        margin,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Nondegeneracy {
    pub samples: usize,
    /// Smallest singular value of the radial Jacobian over all samples.
    pub min_singular: f64,
    /// Samples where the Jacobian rank fell below `m − n`.
    pub rank_drops: Vec<usize>,
}

impl Nondegeneracy {
    pub fn full_rank(&self) -> bool {
        self.rank_drops.is_empty()
    }
}

/// Rank of the Jacobian `(2 γ_jk |z_k|)` of the quadric map in radial
/// coordinates, at each sample.
pub fn nondegeneracy_check(q: &QuadricSystem, samples: &[PointC], tol: f64) -> Nondegeneracy {
    let rows = q.gamma_f64.len();
    let mut min_singular = f64::INFINITY;
    let mut rank_drops = Vec::new();
    for (s, z) in samples.iter().enumerate() {
        if rows == 0 {
            continue;
        }
        let m = z.m();
        let jac = DMatrix::from_fn(rows, m, |j, k| 2.0 * q.gamma_f64[j][k] * z.modulus(k));
        let sv = jac.svd(false, false).singular_values;
        let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
        min_singular = min_singular.min(smallest);
        if smallest <= tol {
            rank_drops.push(s);
        }
    }
    Nondegeneracy {
        samples: samples.len(),
        min_singular,
        rank_drops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SymbolTable;

    fn square() -> (FanData, PolytopeH) {
        let v = |x: i64, y: i64| vec![Scalar::from_int(x), Scalar::from_int(y)];
        let vs = vec![v(1, 0), v(0, 1), v(-1, 0), v(0, -1)];
        let ones = vec![Scalar::one(); 4];
        let p = PolytopeH::new(2, vs, ones, SymbolTable::new()).unwrap();
        let f = crate::fan::normal_fan(&p).unwrap().fan;
        (f, p)
    }

    #[test]
    fn square_quadrics() {
        let (f, p) = square();
        let q = gamma_matrix(&f, &p.offsets).unwrap();
        assert_eq!(q.gamma_f64, vec![vec![1.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0, 1.0]]);
        assert_eq!(q.rhs_f64, vec![2.0, 2.0]);
        let one = PointC::new(vec![(1.0, 0.0); 4]);
        assert_eq!(quadric_residual(&q, &one), vec![0.0, 0.0]);
        let z = PointC::new(vec![(2f64.sqrt(), 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert!(quadric_residual(&q, &z).iter().all(|r| r.abs() < 1e-15));
        let zero = PointC::new(vec![(0.0, 0.0); 4]);
        assert_eq!(quadric_residual(&q, &zero), vec![-2.0, -2.0]);
    }

    #[test]
    fn samples_lie_on_the_quadrics() {
        let (f, p) = square();
        let q = gamma_matrix(&f, &p.offsets).unwrap();
        let pts = sample_zp(&p, 7, 100).unwrap();
        for z in &pts {
            assert!(quadric_residual(&q, z).iter().all(|r| r.abs() < 1e-10));
            assert!(membership(f.complex(), z, 1e-12).unwrap().in_u);
        }
        let nd = nondegeneracy_check(&q, &pts, 1e-9);
        assert!(nd.full_rank() && nd.min_singular > 0.1);
    }

    #[test]
    fn vertex_points_vanish_on_their_facets() {
        let (f, p) = square();
        let v = &p.vertices().unwrap()[0];
        let z = point_from_exact(&p, &v.point, &[0.0; 4]);
        assert_eq!(z.zero_set(), v.active);
        assert!(membership(f.complex(), &z, 1e-12).unwrap().in_u);
        let q = gamma_matrix(&f, &p.offsets).unwrap();
        assert!(nondegeneracy_check(&q, &[z], 1e-9).full_rank());
    }

    #[test]
    fn membership_cases() {
        let k = SimplicialComplex::boundary_of_simplex(2, 4).unwrap();
        let pt = |v: [f64; 4]| PointC::new(v.iter().map(|&x| (x, 0.0)).collect());
        assert!(membership(&k, &pt([0.0, 1.0, 1.0, 1.0]), 1e-12).unwrap().in_u);
        assert!(!membership(&k, &pt([0.0, 0.0, 0.0, 1.0]), 1e-12).unwrap().in_u);
        let m = membership(&k, &pt([0.5, 1.0, 1.0, 1.0]), 1e-12).unwrap();
        assert!(m.in_zk);
        assert!(!membership(&k, &pt([0.5, 0.5, 0.5, 1.0]), 1e-12).unwrap().in_zk);
    }

    #[test]
    fn repeated_row_drops_rank() {
        let (f, p) = square();
        let mut q = gamma_matrix(&f, &p.offsets).unwrap();
        q.gamma_f64[1] = q.gamma_f64[0].clone();
        let one = PointC::new(vec![(1.0, 0.0); 4]);
        assert!(!nondegeneracy_check(&q, &[one], 1e-9).full_rank());
    }
}
