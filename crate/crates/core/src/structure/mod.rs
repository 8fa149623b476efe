//! Complex-structure data on top of a fan: `Ker A`, the map `Ψ`, the
//! genericity conditions, torus periods and Hopf multipliers.

mod genericity;
mod hopf;
mod periods;
mod subspace;

pub use genericity::{genericity_g1, genericity_g2, verify_g1_witness, verify_g2_witness, Genericity};
pub use hopf::{hopf_data, HopfData};
pub use periods::{torus_periods, TorusPeriods};
pub use subspace::{psi_subspace_check, Candidates, SubspaceReport, SubspaceStatus};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fan::FanData;
use crate::scalar::{ComplexScalar, Scalar, ScalarMatrix, ScalarVec};

/// An `m × ℓ` complex matrix; column `j` is `Ψ(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    rows: Vec<Vec<ComplexScalar>>,
    ell: usize,
}

impl PsiMap {
    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Result<Self> {
        let ell = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ell) {
            return Err(Error::Shape("rows of psi have different lengths".into()));
        }
        Ok(PsiMap { rows, ell })
    }

    /// Build from `2ℓ` real vectors, pairing them as `w_{2j−1} + i·w_{2j}`.
    pub fn from_real_pairs(m: usize, ws: &[ScalarVec]) -> Result<Self> {
        if !ws.len().is_multiple_of(2) || ws.iter().any(|w| w.len() != m) {
            return Err(Error::Shape(format!("need an even number of vectors of length {m}")));
        }
        let rows = (0..m)
            .map(|k| {
                ws.chunks(2)
                    .map(|p| ComplexScalar::new(p[0][k].clone(), p[1][k].clone()))
                    .collect()
            })
            .collect();
        Ok(PsiMap {
            rows,
            ell: ws.len() / 2,
        })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn rows(&self) -> &[Vec<ComplexScalar>] {
        &self.rows
    }

    pub fn entry(&self, k: usize, j: usize) -> &ComplexScalar {
        &self.rows[k][j]
    }

    pub fn column(&self, j: usize) -> Vec<ComplexScalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// The real vectors `p_j = Re Ψ(e_j)` and `q_j = Im Ψ(e_j)`, interleaved.
    pub fn real_pairs(&self) -> Vec<ScalarVec> {
        (0..self.ell)
            .flat_map(|j| {
                let p = self.rows.iter().map(|r| r[j].re.clone()).collect();
                let q = self.rows.iter().map(|r| r[j].im.clone()).collect();
                [p, q]
            })
            .collect()
    }
}

/// Basis of `Ker A`; the vectors must span `R^n`.
pub fn kernel_of_a(f: &FanData) -> Result<Vec<ScalarVec>> {
    let a = f.matrix_a();
    let rank = a.rank();
    if rank < f.n() {
        return Err(Error::NoSpan { rank, n: f.n() });
    }
    Ok(a.kernel_basis())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    /// Real rank of `Re ∘ Ψ : C^ℓ → R^m`.
    pub real_rank: usize,
    /// `Re ∘ Ψ` is injective.
    pub cond_a: bool,
    /// `A ∘ Re ∘ Ψ = 0`.
    pub cond_b: bool,
}

impl PsiReport {
    pub fn ok(&self) -> bool {
        self.cond_a && self.cond_b
    }
}

/// Check that `Re ∘ Ψ` is a monomorphism into `Ker A`.
///
/// As a real map on `C^ℓ = R^{2ℓ}`, `Re ∘ Ψ` sends `e_j ↦ p_j` and
/// `i e_j ↦ −q_j`, so both conditions are statements about the real span of
/// the `p_j, q_j`.
pub fn check_psi(f: &FanData, psi: &PsiMap) -> Result<PsiReport> {
    if psi.m() != f.m() {
        return Err(Error::Dimension(format!("psi has {} rows, m = {}", psi.m(), f.m())));
    }
    if f.ell() != Some(psi.ell()) {
        return Err(Error::Dimension(format!(
            "m − n = {} does not equal 2ℓ = {}",
            f.m() as isize - f.n() as isize,
            2 * psi.ell()
        )));
    }
    let pairs = psi.real_pairs();
    let real_rank = if pairs.is_empty() {
        0
    } else {
        ScalarMatrix::from_columns(&pairs, f.m()).rank()
    };
    let a = f.matrix_a();
    let cond_b = pairs.iter().all(|w| a.mul_vec(w).iter().all(|x| x.is_zero()));
    Ok(PsiReport {
        real_rank,
        cond_a: real_rank == 2 * psi.ell(),
        cond_b,
    })
}

/// An admissible `Ψ` built from a seeded rational recombination of a
/// `Ker A` basis; seed 0 keeps the basis as it is.
pub fn sample_psi(f: &FanData, seed: u64) -> Result<PsiMap> {
    let ell = f
        .ell()
        .ok_or_else(|| Error::Dimension("m − n must be even and nonnegative".into()))?;
    let basis = kernel_of_a(f)?;
    let d = 2 * ell;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..32 {
        let mix: Vec<Vec<i64>> = if seed == 0 && attempt == 0 {
            (0..d).map(|r| (0..d).map(|c| i64::from(r == c)).collect()).collect()
        } else {
            (0..d)
                .map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect())
                .collect()
        };
        let ws: Vec<ScalarVec> = (0..d)
            .map(|c| {
                (0..f.m())
                    .map(|k| {
                        (0..d).fold(Scalar::zero(), |acc, r| {
                            &acc + &(&basis[r][k] * &Scalar::from_int(mix[r][c]))
                        })
                    })
                    .collect()
            })
            .collect();
        let psi = PsiMap::from_real_pairs(f.m(), &ws)?;
        if check_psi(f, &psi)?.ok() {
            return Ok(psi);
        }
    }
    Err(Error::Invariant("no admissible psi after 32 attempts".into()))
}
