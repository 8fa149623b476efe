use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{check_psi, genericity_g1, PsiMap};
use crate::error::{Error, Result};
use crate::fan::FanData;
use crate::scalar::complex::complex_rank;
use crate::scalar::matrix::{primitive_integer_vector, rational_vec_to_scalar};
use crate::scalar::{ComplexScalar, QMatrix, Scalar, ScalarMatrix, ScalarVec};

/// Which rational subspaces `W ⊂ R^m` (standing for `iW ⊂ iR^m`) to try.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidates {
    /// Spans of the given integer vectors, one list per subspace.
    Explicit(Vec<Vec<Vec<i64>>>),
    /// All spans of integer vectors with entries in `[−H, H]`.
    Height(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceStatus {
    /// No candidate produced a proper subspace with the three properties.
    Verified,
    Counterexample {
        /// Basis of the rational subspace `W`.
        w: Vec<Vec<BigInt>>,
        /// `dim_C L` for `L = c + W ⊗ C`.
        l_dim: usize,
        /// `dim_R (Ker A ∩ L)`.
        q_dim: usize,
        /// Whether `Ker A ∩ L` is invariant under `π_Im ∘ π_Re^{-1}`.
        q_invariant: bool,
    },
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceReport {
    pub status: SubspaceStatus,
    pub height: Option<u32>,
    pub candidates_checked: usize,
    pub g1_holds: bool,
    /// Proper, nonzero subspaces `Q = Ker A ∩ L` that were found invariant.
    pub invariant_q_found: usize,
    /// With `ℓ = 1` an invariant `Q` would carry a complex structure in
    /// real dimension 1, so none can exist.
    pub parity_applies: bool,
}

/// Candidate cap for the height-bounded enumeration.
pub const MAX_CANDIDATES: usize = 20_000;

/// Search the candidate family for a proper complex subspace `L ⊇ c` with
/// `c̄ ∩ L ≠ 0` and `L ∩ iR^m` rational.
pub fn psi_subspace_check(f: &FanData, psi: &PsiMap, candidates: &Candidates) -> Result<SubspaceReport> {
    if !check_psi(f, psi)?.ok() {
        return Err(Error::Input("psi fails the admissibility conditions".into()));
    }
    let ctx = Context::new(f, psi);
    let mut report = SubspaceReport {
        status: SubspaceStatus::Verified,
        height: None,
        candidates_checked: 0,
        g1_holds: genericity_g1(f)?.holds(),
        invariant_q_found: 0,
        parity_applies: psi.ell() == 1,
    };
    let spaces: Vec<Vec<Vec<BigRational>>> = match candidates {
        Candidates::Explicit(list) => list
            .iter()
            .map(|vs| {
                let rows = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
                QMatrix::from_rows(rows, f.m()).row_space_canonical()
            })
            .collect(),
        Candidates::Height(h) => {
            report.height = Some(*h);
            match enumerate(&ctx, *h)? {
                Some(s) => s,
                None => {
                    report.status = SubspaceStatus::Skipped(format!("more than {MAX_CANDIDATES} candidate subspaces"));
                    return Ok(report);
                }
            }
        }
    };
    for w in spaces {
        report.candidates_checked += 1;
        let t = ctx.test(&w)?;
        if t.q_invariant && t.q_dim > 0 && t.q_dim < 2 * psi.ell() {
            report.invariant_q_found += 1;
        }
        if t.counterexample && matches!(report.status, SubspaceStatus::Verified) {
            report.status = SubspaceStatus::Counterexample {
                w: w.iter().map(|v| primitive_integer_vector(v)).collect(),
                l_dim: t.l_dim,
                q_dim: t.q_dim,
                q_invariant: t.q_invariant,
            };
        }
    }
    Ok(report)
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

struct Context {
    m: usize,
    ell: usize,
    c: Vec<Vec<ComplexScalar>>,
    cbar: Vec<Vec<ComplexScalar>>,
    /// `p_1, q_1, …, p_ℓ, q_ℓ`: a basis of `Ker A`.
    pairs: Vec<ScalarVec>,
    /// Rational values for the symbols, used for fast rank lower bounds.
    point: Vec<BigRational>,
}

struct Test {
    counterexample: bool,
    l_dim: usize,
    q_dim: usize,
    q_invariant: bool,
}

impl Context {
    fn new(f: &FanData, psi: &PsiMap) -> Self {
        let c: Vec<Vec<ComplexScalar>> = (0..psi.ell()).map(|j| psi.column(j)).collect();
        let cbar = c.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect();
        Context {
            m: f.m(),
            ell: psi.ell(),
            c,
            cbar,
            pairs: psi.real_pairs(),
            point: f.table().midpoints(64),
        }
    }

    /// Rank after substituting `point` for the symbols. It never exceeds
    /// the rank over `Q(s)`; `None` if some entry has a pole there.
    fn rank_at_point(&self, rows: &[Vec<ComplexScalar>]) -> Option<usize> {
        let at = |x: &Scalar| x.eval_rational(&self.point).map(Scalar::from_rational);
        let at_point = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|z| Some(ComplexScalar::new(at(&z.re)?, at(&z.im)?)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(complex_rank(&at_point))
    }

    fn l_span(&self, w: &[Vec<BigRational>]) -> Vec<Vec<ComplexScalar>> {
        let mut span = self.c.clone();
        span.extend(w.iter().map(|v| {
            rational_vec_to_scalar(v)
                .into_iter()
                .map(ComplexScalar::real)
                .collect::<Vec<_>>()
        }));
        span
    }

    /// Whether `c + W ⊗ C` is all of `C^m`.
    fn fills(&self, w: &[Vec<BigRational>]) -> bool {
        let span = self.l_span(w);
        span.len() >= self.m && (self.rank_at_point(&span) == Some(self.m) || complex_rank(&span) == self.m)
    }

    fn test(&self, w: &[Vec<BigRational>]) -> Result<Test> {
        let span = self.l_span(w);
        let mut sum = span.clone();
        sum.extend(self.cbar.iter().cloned());
        let everything = Test {
            counterexample: false,
            l_dim: self.m,
            q_dim: 2 * self.ell,
            q_invariant: true,
        };
        if self.rank_at_point(&span) == Some(self.m) {
            return Ok(everything);
        }
        // all rows of c, W and c̄ independent: L misses c̄
        let independent = self.rank_at_point(&sum) == Some(sum.len());
        if independent && self.ell == 1 {
            return Ok(Test {
                counterexample: false,
                l_dim: span.len(),
                q_dim: 0,
                q_invariant: false,
            });
        }
        let l_dim = complex_rank(&span);
        if l_dim == self.m {
            return Ok(everything);
        }
        let real = real_points(&span, self.m);
        let (q_dim, q_invariant) = self.operator(&real);
        let meets_cbar = !independent && complex_rank(&self.cbar) + l_dim > complex_rank(&sum);
        let counterexample = meets_cbar && is_rational(&real, self.m);
        Ok(Test {
            counterexample,
            l_dim,
            q_dim,
            q_invariant,
        })
    }

    /// `Q = Ker A ∩ V` in coordinates over the `p_j, q_j` basis, and whether
    /// `T : p_j ↦ q_j, q_j ↦ −p_j` maps it into itself.
    fn operator(&self, v: &[ScalarVec]) -> (usize, bool) {
        if v.is_empty() || self.pairs.is_empty() {
            return (0, true);
        }
        let d = self.pairs.len();
        let mut cols = self.pairs.clone();
        cols.extend(v.iter().map(|x| x.iter().map(|y| -y).collect::<ScalarVec>()));
        let ker = ScalarMatrix::from_columns(&cols, self.m).kernel_basis();
        let coords: Vec<ScalarVec> = ker
            .iter()
            .map(|k| k[..d].to_vec())
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect();
        if coords.is_empty() {
            return (0, true);
        }
        let base = ScalarMatrix::from_rows(coords.clone()).expect("rows").rank();
        let mut with_t = coords.clone();
        with_t.extend(coords.iter().map(|c| {
            (0..d)
                .map(|k| if k % 2 == 0 { -&c[k + 1] } else { c[k - 1].clone() })
                .collect::<ScalarVec>()
        }));
        let full = ScalarMatrix::from_rows(with_t).expect("rows").rank();
        (base, full == base)
    }
}

/// Spanning set of `L ∩ R^m` for `L` the complex span of `span`.
///
/// With `L ∋ Σ (α_k + iβ_k)(p_k + i q_k)`, the point is real exactly when
/// `Σ α_k q_k + β_k p_k = 0`, and then equals `Σ α_k p_k − β_k q_k`.
fn real_points(span: &[Vec<ComplexScalar>], m: usize) -> Vec<ScalarVec> {
    let d = span.len();
    let p: Vec<ScalarVec> = span.iter().map(|v| v.iter().map(|z| z.re.clone()).collect()).collect();
    let qv: Vec<ScalarVec> = span.iter().map(|v| v.iter().map(|z| z.im.clone()).collect()).collect();
    let mut cols = qv.clone();
    cols.extend(p.iter().cloned());
    let ker = ScalarMatrix::from_columns(&cols, m).kernel_basis();
    let pts: Vec<ScalarVec> = ker
        .iter()
        .map(|k| {
            (0..m)
                .map(|r| {
                    (0..d).fold(Scalar::zero(), |acc, j| {
                        &(&acc + &(&k[j] * &p[j][r])) - &(&k[d + j] * &qv[j][r])
                    })
                })
                .collect::<ScalarVec>()
        })
        .filter(|x| x.iter().any(|y| !y.is_zero()))
        .collect();
    if pts.is_empty() {
        return pts;
    }
    // reduce to a basis
    let (r, piv) = ScalarMatrix::from_rows(pts).expect("rows").rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// A real subspace given by a basis is rational when its rational points
/// span it.
fn is_rational(basis: &[ScalarVec], m: usize) -> bool {
    if basis.is_empty() {
        return true;
    }
    let ann = ScalarMatrix::from_columns(basis, m).column_annihilator();
    if ann.is_empty() {
        return true;
    }
    let rational_dim = ScalarMatrix::from_rows(ann)
        .expect("rows")
        .rational_solution_space()
        .len();
    rational_dim == basis.len()
}

/// Distinct rational subspaces spanned by height-bounded vectors, grown
/// until `c + W ⊗ C` fills `C^m`.
fn enumerate(ctx: &Context, h: u32) -> Result<Option<Vec<Vec<Vec<BigRational>>>>> {
    let m = ctx.m;
    let h = h as i64;
    let mut gens: Vec<Vec<BigRational>> = Vec::new();
    let mut seen_vec = BTreeSet::new();
    let mut cur = vec![-h; m];
    loop {
        if cur.iter().any(|&x| x != 0) {
            let v: Vec<BigRational> = cur.iter().map(|&x| q(x)).collect();
            let p = primitive_integer_vector(&v);
            if seen_vec.insert(p.clone()) {
                gens.push(p.into_iter().map(BigRational::from_integer).collect());
            }
        }
        let mut k = 0;
        while k < m && cur[k] == h {
            cur[k] = -h;
            k += 1;
        }
        if k == m {
            break;
        }
        cur[k] += 1;
    }
    let mut seen: BTreeSet<Vec<Vec<BigRational>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<Vec<BigRational>>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for g in &gens {
                let mut rows = s.clone();
                rows.push(g.clone());
                let canon = QMatrix::from_rows(rows, m).row_space_canonical();
                if canon.len() == s.len() || !seen.insert(canon.clone()) {
                    continue;
                }
                if seen.len() > MAX_CANDIDATES {
                    return Ok(None);
                }
                out.push(canon.clone());
                if canon.len() + ctx.ell < m && !ctx.fills(&canon) {
                    next.push(canon);
                }
            }
        }
        frontier = next;
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SymbolTable;
    use crate::simplicial::SimplicialComplex;

    fn c(re: i64, im: i64) -> ComplexScalar {
        ComplexScalar::new(Scalar::from_int(re), Scalar::from_int(im))
    }

    fn torus(m: usize) -> FanData {
        FanData::new(
            SimplicialComplex::empty_complex(m),
            0,
            vec![vec![]; m],
            SymbolTable::new(),
        )
        .unwrap()
    }

    #[test]
    fn block_diagonal_torus_has_a_counterexample() {
        let f = torus(4);
        let psi = PsiMap::from_rows(vec![
            vec![c(1, 0), c(0, 0)],
            vec![c(0, 1), c(0, 0)],
            vec![c(0, 0), c(1, 0)],
            vec![c(0, 0), c(0, 1)],
        ])
        .unwrap();
        let r = psi_subspace_check(
            &f,
            &psi,
            &Candidates::Explicit(vec![vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]]),
        )
        .unwrap();
        assert!(r.g1_holds);
        match r.status {
            SubspaceStatus::Counterexample {
                l_dim,
                q_dim,
                q_invariant,
                ..
            } => {
                assert_eq!(l_dim, 3);
                assert_eq!(q_dim, 2);
                assert!(q_invariant);
            }
            other => panic!("{other:?}"),
        }
        let h = psi_subspace_check(&f, &psi, &Candidates::Height(1)).unwrap();
        assert!(matches!(h.status, SubspaceStatus::Counterexample { .. }));
        assert!(h.invariant_q_found > 0);
    }

    #[test]
    fn square_lattice_torus_is_verified() {
        let f = torus(2);
        let psi = PsiMap::from_rows(vec![vec![c(0, 1)], vec![c(1, 0)]]).unwrap();
        let r = psi_subspace_check(&f, &psi, &Candidates::Height(2)).unwrap();
        assert_eq!(r.status, SubspaceStatus::Verified);
        assert!(r.parity_applies);
        assert_eq!(r.invariant_q_found, 0);
        assert!(r.candidates_checked > 0);
    }
}
