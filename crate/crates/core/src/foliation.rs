//! Leaves of the foliation by `D`-orbits, Seifert detection and the
//! coordinate submanifolds `Z_{K_J}`.
//!
//! The lattice `Γ_I = Ker A_C ∩ (Z⟨2πi e_k⟩ + C^I)` is handled through
//! its rational shadow. For `γ ∈ Z^m` the point `2πiγ` can be corrected by
//! some `c ∈ C^I` into `Ker A_C` exactly when `Aγ ∈ span{a_i : i ∈ I}`, and
//! the correction is unique because `A_C` is injective on `C^I` for a face
//! `I`. So `Γ_I` is the image of the lattice
//! `V_I ∩ Z^m, V_I = {γ : Aγ ∈ span a_I}`, and two `γ` give the same point
//! exactly when they differ by a vector supported on `I`. Hence
//! `rk Γ_I = dim_Q V_I − dim_Q (V_I ∩ Q^I)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fan::{is_complete, quotient_fan, validate_fan, FanData};
use crate::scalar::lattice::{content, coordinates, integer_kernel, lattice_basis};
use crate::scalar::matrix::primitive_integer_vector;
use crate::scalar::{QMatrix, ScalarMatrix};
use crate::simplicial::{Face, SimplicialComplex};

/// `dim_Q V_I` where `V_I = {γ ∈ Q^m : Aγ ∈ span{a_i : i ∈ I}}`.
fn v_space(f: &FanData, face: &[usize]) -> Vec<Vec<BigRational>> {
    let ann = f.columns(face).column_annihilator();
    let a = f.matrix_a();
    if ann.is_empty() {
        return (0..f.m())
            .map(|k| {
                (0..f.m())
                    .map(|j| {
                        if j == k {
                            BigRational::one()
                        } else {
                            BigRational::from_integer(0.into())
                        }
                    })
                    .collect()
            })
            .collect();
    }
    let rows = ScalarMatrix::from_rows(ann).expect("rows").mul(&a);
    rows.rational_solution_space()
}

/// `rk Γ_I` for a face `I`.
pub fn gamma_rank(f: &FanData, face: &[usize]) -> Result<usize> {
    if !f.complex().is_face(face)? {
        return Err(Error::NotAFace(face.to_vec()));
    }
    let v = v_space(f, face);
    if v.is_empty() {
        return Ok(0);
    }
    // V_I ∩ Q^I: combinations of the basis vanishing off I
    let off: Vec<usize> = (1..=f.m()).filter(|i| !face.contains(i)).collect();
    let proj: Vec<Vec<BigRational>> = v
        .iter()
        .map(|x| off.iter().map(|&i| x[i - 1].clone()).collect())
        .collect();
    let inside = if off.is_empty() {
        v.len()
    } else {
        v.len() - QMatrix::from_rows(proj, off.len()).rank()
    };
    Ok(v.len() - inside)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafReport {
    pub face: Face,
    pub rank: usize,
    /// The `G`-leaf is `(C^×)^torus × C^affine`.
    pub torus: usize,
    pub affine: usize,
    /// The `F`-leaf `C^ℓ / p(Γ_I)` is a compact torus.
    pub compact: bool,
}

pub fn leaf_type(f: &FanData, face: &[usize]) -> Result<LeafReport> {
    let ell = f
        .ell()
        .ok_or_else(|| Error::Dimension("m − n must be even and nonnegative".into()))?;
    let rank = gamma_rank(f, face)?;
    Ok(LeafReport {
        face: face.to_vec(),
        rank,
        torus: rank,
        affine: 2 * ell - rank,
        compact: rank == 2 * ell,
    })
}

/// Leaf reports for every face of `K`, smallest faces first.
pub fn all_leaves(f: &FanData) -> Result<Vec<LeafReport>> {
    f.complex().faces().iter().map(|i| leaf_type(f, i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertReport {
    pub rational: bool,
    /// Basis of the lattice `Ker A ∩ Z^m` (expressed after rationalising
    /// `A`), present when `Ker A` is rational.
    pub relations: Vec<Vec<BigInt>>,
    /// Per vector: primitive in `N_Z = Z⟨a_1, …, a_m⟩`. Zero vectors count
    /// as not primitive.
    pub primitive: Vec<bool>,
    /// Whether every nonzero `a_i` is primitive.
    pub generators_primitive: bool,
    /// Number of nonzero, pairwise distinct rays.
    pub rays: usize,
}

/// Decide whether `Ker A` is rational and, if so, examine `N_Z`.
pub fn detect_seifert(f: &FanData) -> Result<SeifertReport> {
    let (m, n) = (f.m(), f.n());
    let kernel = f.matrix_a().rational_solution_space();
    let rank = f.matrix_a().rank();
    if kernel.len() != m - rank || rank < n {
        return Ok(SeifertReport {
            rational: false,
            relations: Vec::new(),
            primitive: Vec::new(),
            generators_primitive: false,
            rays: 0,
        });
    }
    // the row space of A is the annihilator of its (rational) kernel, so
    // A = M R for an invertible M and a rational R; N_Z is carried by R
    let r_rows = if kernel.is_empty() {
        (0..m)
            .map(|k| {
                (0..m)
                    .map(|j| BigRational::from_integer(BigInt::from(i64::from(j == k))))
                    .collect()
            })
            .collect()
    } else {
        QMatrix::from_rows(kernel.clone(), m).kernel_basis()
    };
    let r_int: Vec<Vec<BigInt>> = r_rows.iter().map(|r| primitive_integer_vector(r)).collect();
    let cols: Vec<Vec<BigInt>> = (0..m).map(|i| r_int.iter().map(|r| r[i].clone()).collect()).collect();
    let basis = lattice_basis(&cols);
    let primitive: Vec<bool> = cols
        .iter()
        .map(|c| {
            if c.iter().all(|x| *x == BigInt::from(0)) {
                return false;
            }
            let x = coordinates(&basis, c).expect("in span");
            let ints: Vec<BigInt> = x.iter().map(|q| q.to_integer()).collect();
            content(&ints) == BigInt::one()
        })
        .collect();
    let nonzero: Vec<usize> = (0..m)
        .filter(|&i| cols[i].iter().any(|x| *x != BigInt::from(0)))
        .collect();
    let mut distinct: Vec<&Vec<BigInt>> = nonzero.iter().map(|&i| &cols[i]).collect();
    distinct.sort();
    distinct.dedup();
    let relations = integer_kernel(&r_int, m);
    Ok(SeifertReport {
        rational: true,
        relations,
        generators_primitive: nonzero.iter().all(|&i| primitive[i]),
        primitive,
        rays: distinct.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSubmanifold {
    pub j: Face,
    /// Maximal faces of the full subcomplex `K_J`.
    pub k_j: Vec<Face>,
    /// `Z_{K_J}` is nonempty exactly when `[m] \ J ∈ K`.
    pub nonempty: bool,
    /// Complex dimension, when nonempty.
    pub dimension: Option<usize>,
    /// The quotient fan `Σ / σ_{[m]∖J}` passes the fan axioms.
    pub fan_valid: Option<bool>,
    pub complete: Option<bool>,
}

/// Cap on `m` for exhaustive enumeration of `J ⊆ [m]`.
pub const MAX_ENUMERATION_M: usize = 16;

/// All coordinate submanifolds, or those for an explicit family of `J`.
/// Output is ordered by `|J|`, then lexicographically.
pub fn coordinate_submanifolds(f: &FanData, family: Option<&[Face]>) -> Result<Vec<CoordinateSubmanifold>> {
    let m = f.m();
    let mut js: Vec<Face> = match family {
        Some(list) => list.to_vec(),
        None => {
            if m > MAX_ENUMERATION_M {
                return Err(Error::Cap(format!(
                    "m = {m} exceeds {MAX_ENUMERATION_M}; pass an explicit family"
                )));
            }
            (0u32..1 << m)
                .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
                .collect()
        }
    };
    js.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::new();
    for j in js {
        let k_j: SimplicialComplex = f.complex().full_subcomplex(&j)?;
        let comp: Face = (1..=m).filter(|i| !j.contains(i)).collect();
        let nonempty = f.complex().is_face(&comp)?;
        let (mut dimension, mut fan_valid, mut complete) = (None, None, None);
        if nonempty {
            let d = j.len() + f.n();
            if d >= comp.len() && (d - comp.len()).is_multiple_of(2) {
                dimension = Some((d - comp.len()) / 2);
            }
            let q = quotient_fan(f, &comp)?;
            fan_valid = Some(validate_fan(&q)?.ok());
            complete = Some(is_complete(&q)?.complete());
        }
        out.push(CoordinateSubmanifold {
            j,
            k_j: k_j.maximal_faces().to_vec(),
            nonempty,
            dimension,
            fan_valid,
            complete,
        });
    }
    Ok(out)
}
