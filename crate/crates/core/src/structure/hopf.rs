use super::{check_psi, PsiMap};
use crate::error::{Error, Result};
use crate::fan::FanData;
use crate::scalar::interval::two_pi;
use crate::scalar::{ComplexScalar, FloatInterval, ScalarVec};
use crate::simplicial::SimplicialComplex;

/// Hopf-manifold data: `Z_K ≅ (C^{n+1} \ 0) / (z_k ∼ e^{2πiζ_k} z_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfData {
    /// The ghost vertex (1-based).
    pub ghost: usize,
    /// `ζ_k = μ_k + iλ_k` for the non-ghost vertices in increasing order.
    pub zetas: Vec<ComplexScalar>,
    pub lambda: ScalarVec,
    pub mu: ScalarVec,
    /// Whether `Ψ` had to be replaced by its inverse generator to make all
    /// `λ_k` positive.
    pub flipped: bool,
    /// Enclosures of `|e^{2πiζ_k}| = e^{−2πλ_k}`.
    pub moduli: Vec<FloatInterval>,
}

/// Read off the Hopf multipliers for `ℓ = 1`, `K = ∂Δ^n` plus one ghost.
pub fn hopf_data(f: &FanData, psi: &PsiMap, bits: u32) -> Result<HopfData> {
    let m = f.m();
    if psi.ell() != 1 || m != f.n() + 2 {
        return Err(Error::Shape("Hopf data needs ℓ = 1 and m = n + 2".into()));
    }
    let ghosts = f.complex().ghosts();
    let ghost = *ghosts.last().ok_or_else(|| Error::Shape("no ghost vertex".into()))?;
    let live: Vec<usize> = (1..=m).filter(|&i| i != ghost).collect();
    let expected = if f.n() == 0 {
        SimplicialComplex::empty_complex(m)
    } else {
        let faces = live
            .iter()
            .map(|&skip| live.iter().copied().filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::new(m, faces)?
    };
    if f.complex() != &expected {
        return Err(Error::Shape("complex is not a simplex boundary plus one ghost".into()));
    }
    if !check_psi(f, psi)?.ok() {
        return Err(Error::Input("psi fails the admissibility conditions".into()));
    }
    let col = psi.column(0);
    let base = &col[ghost - 1];
    let mut zetas: Vec<ComplexScalar> = live
        .iter()
        .map(|&k| col[k - 1].checked_div(base))
        .collect::<Result<_>>()?;
    let mut signs = Vec::new();
    for z in &zetas {
        signs.push(f.sign(&z.im)?);
    }
    let flipped = if signs.iter().all(|&s| s > 0) {
        false
    } else if signs.iter().all(|&s| s < 0) {
        zetas = zetas.iter().map(|z| -z).collect();
        true
    } else {
        return Err(Error::Input(
            "the relation coefficients λ_k are not all of one sign".into(),
        ));
    };
    let tau = two_pi();
    let mut moduli = Vec::new();
    for z in &zetas {
        let lam = FloatInterval::from_interval(&z.im.enclose(f.table(), bits)?);
        moduli.push(tau.mul(&lam).neg().exp());
    }
    Ok(HopfData {
        ghost,
        lambda: zetas.iter().map(|z| z.im.clone()).collect(),
        mu: zetas.iter().map(|z| z.re.clone()).collect(),
        zetas,
        flipped,
        moduli,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Scalar, SymbolTable};

    fn c(re: i64, im: i64) -> ComplexScalar {
        ComplexScalar::new(Scalar::from_int(re), Scalar::from_int(im))
    }

    fn hopf_rational() -> FanData {
        let k = SimplicialComplex::boundary_of_simplex(2, 4).unwrap();
        let v = |x: i64, y: i64| vec![Scalar::from_int(x), Scalar::from_int(y)];
        FanData::new(k, 2, vec![v(1, 0), v(0, 1), v(-1, -1), v(0, 0)], SymbolTable::new()).unwrap()
    }

    #[test]
    fn rational_multipliers() {
        let psi = PsiMap::from_rows(vec![vec![c(0, 1)], vec![c(0, 1)], vec![c(0, 1)], vec![c(1, 0)]]).unwrap();
        let h = hopf_data(&hopf_rational(), &psi, 64).unwrap();
        assert_eq!(h.ghost, 4);
        assert!(!h.flipped);
        assert_eq!(h.zetas, vec![c(0, 1); 3]);
        let target = (-std::f64::consts::TAU).exp();
        assert!(h.moduli.iter().all(|x| x.contains(target) && x.hi < 1.0));
    }

    #[test]
    fn inverse_generator_is_flipped() {
        // Ψ = (1,1,1,i): ζ = −i before flipping
        let psi = PsiMap::from_rows(vec![vec![c(1, 0)], vec![c(1, 0)], vec![c(1, 0)], vec![c(0, 1)]]).unwrap();
        let h = hopf_data(&hopf_rational(), &psi, 64).unwrap();
        assert!(h.flipped);
        assert_eq!(h.zetas, vec![c(0, 1); 3]);
    }

    #[test]
    fn elliptic_curve_case() {
        let f = FanData::new(
            SimplicialComplex::empty_complex(2),
            0,
            vec![vec![], vec![]],
            SymbolTable::new(),
        )
        .unwrap();
        let psi = PsiMap::from_rows(vec![vec![c(0, 1)], vec![c(1, 0)]]).unwrap();
        let h = hopf_data(&f, &psi, 64).unwrap();
        assert_eq!(h.zetas, vec![c(0, 1)]);
    }

    #[test]
    fn wrong_shape() {
        let k = SimplicialComplex::new(4, vec![vec![1, 2], vec![2, 3]]).unwrap();
        let v = |x: i64, y: i64| vec![Scalar::from_int(x), Scalar::from_int(y)];
        let f = FanData::new(k, 2, vec![v(1, 0), v(0, 1), v(-1, -1), v(0, 0)], SymbolTable::new()).unwrap();
        let psi = PsiMap::from_rows(vec![vec![c(0, 1)]; 4]).unwrap();
        assert!(matches!(hopf_data(&f, &psi, 64), Err(Error::Shape(_))));
    }
}
