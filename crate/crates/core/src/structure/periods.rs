use super::{check_psi, PsiMap};
use crate::error::{Error, Result};
use crate::fan::{subsets, FanData};
use crate::scalar::complex::{complex_rank, complex_solve};
use crate::scalar::interval::two_pi;
use crate::scalar::{ComplexScalar, FloatInterval, Scalar, ScalarMatrix};

/// Periods of `C^m / c` for a torus (`n = 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPeriods {
    /// Rows `R` (1-based) used to eliminate `c`; the projection is
    /// `z ↦ z_{R'} − Ψ_{R'} Ψ_R^{-1} z_R`.
    pub eliminated: Vec<usize>,
    /// Generator `k` is `2πi · coefficients[k]`.
    pub coefficients: Vec<Vec<ComplexScalar>>,
    /// Real rank of the generators in `C^ℓ = R^{2ℓ}`.
    pub real_rank: usize,
    /// Enclosures of each generator: per coordinate, real and imaginary part.
    pub numeric: Vec<Vec<(FloatInterval, FloatInterval)>>,
}

/// Project `2πi e_1, …, 2πi e_m` to `C^m / c` and return the images.
pub fn torus_periods(f: &FanData, psi: &PsiMap, bits: u32) -> Result<TorusPeriods> {
    if f.n() != 0 || !f.complex().maximal_faces().is_empty() {
        return Err(Error::Shape("torus periods need n = 0 and the empty complex".into()));
    }
    if !check_psi(f, psi)?.ok() {
        return Err(Error::Input("psi fails the admissibility conditions".into()));
    }
    let (m, ell) = (f.m(), psi.ell());
    let mut choice = None;
    for r in subsets(m, ell).into_iter().rev() {
        let block: Vec<Vec<ComplexScalar>> = r.iter().map(|&k| psi.rows()[k].clone()).collect();
        if complex_rank(&block) == ell {
            choice = Some((r, block));
            break;
        }
    }
    let (r, block) = choice.ok_or_else(|| Error::Invariant("psi has no invertible ℓ-row block".into()))?;
    let rest: Vec<usize> = (0..m).filter(|k| !r.contains(k)).collect();
    // column k of Ψ_{R'} Ψ_R^{-1}, for each unit vector e_k of C^R
    let mut mixed: Vec<Vec<ComplexScalar>> = Vec::new();
    for k in 0..ell {
        let mut e = vec![ComplexScalar::zero(); ell];
        e[k] = ComplexScalar::one();
        let x = complex_solve(&block, &e).ok_or_else(|| Error::Invariant("singular block".into()))?;
        mixed.push(
            rest.iter()
                .map(|&row| (0..ell).fold(ComplexScalar::zero(), |acc, j| &acc + &(psi.entry(row, j) * &x[j])))
                .collect(),
        );
    }
    let coefficients: Vec<Vec<ComplexScalar>> = (0..m)
        .map(|k| match rest.iter().position(|&x| x == k) {
            Some(p) => (0..rest.len())
                .map(|j| {
                    if j == p {
                        ComplexScalar::one()
                    } else {
                        ComplexScalar::zero()
                    }
                })
                .collect(),
            None => {
                let pos = r.iter().position(|&x| x == k).expect("row in R");
                mixed[pos].iter().map(|z| -z).collect()
            }
        })
        .collect();
    let real_rows: Vec<Vec<Scalar>> = coefficients
        .iter()
        .map(|g| g.iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect())
        .collect();
    let real_rank = ScalarMatrix::from_rows(real_rows)?.rank();
    if real_rank != 2 * ell {
        return Err(Error::Invariant(format!(
            "period rank {real_rank} is not 2ℓ = {}",
            2 * ell
        )));
    }
    let tau = two_pi();
    let mut numeric = Vec::new();
    for g in &coefficients {
        let mut coords = Vec::new();
        for z in g {
            let re = FloatInterval::from_interval(&z.re.enclose(f.table(), bits)?);
            let im = FloatInterval::from_interval(&z.im.enclose(f.table(), bits)?);
            // 2πi (x + iy) = 2π(−y) + i·2πx
            coords.push((tau.mul(&im.neg()), tau.mul(&re)));
        }
        numeric.push(coords);
    }
    Ok(TorusPeriods {
        eliminated: r.iter().map(|k| k + 1).collect(),
        coefficients,
        real_rank,
        numeric,
    })
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
    fn square_lattice() {
        let psi = PsiMap::from_rows(vec![vec![c(0, 1)], vec![c(1, 0)]]).unwrap();
        let p = torus_periods(&torus(2), &psi, 64).unwrap();
        assert_eq!(p.eliminated, vec![2]);
        // 2πi·1 and 2πi·(−i) = 2π
        assert_eq!(p.coefficients, vec![vec![c(1, 0)], vec![c(0, -1)]]);
        assert_eq!(p.real_rank, 2);
        let tau = std::f64::consts::TAU;
        assert!(p.numeric[0][0].0.contains(0.0) && p.numeric[0][0].1.contains(tau));
        assert!(p.numeric[1][0].0.contains(tau) && p.numeric[1][0].1.contains(0.0));
    }

    #[test]
    fn general_beta() {
        // β = 1/2 + 2i
        let beta = ComplexScalar::new(Scalar::ratio(1, 2), Scalar::from_int(2));
        let psi = PsiMap::from_rows(vec![vec![beta.clone()], vec![c(1, 0)]]).unwrap();
        let p = torus_periods(&torus(2), &psi, 64).unwrap();
        assert_eq!(p.coefficients[1], vec![-&beta]);
    }

    #[test]
    fn block_diagonal_gives_product_lattice() {
        let psi = PsiMap::from_rows(vec![
            vec![c(0, 1), c(0, 0)],
            vec![c(1, 0), c(0, 0)],
            vec![c(0, 0), c(0, 1)],
            vec![c(0, 0), c(1, 0)],
        ])
        .unwrap();
        let p = torus_periods(&torus(4), &psi, 64).unwrap();
        assert_eq!(p.real_rank, 4);
        assert_eq!(p.eliminated, vec![2, 4]);
        assert_eq!(p.coefficients[0], vec![c(1, 0), c(0, 0)]);
        assert_eq!(p.coefficients[1], vec![c(0, -1), c(0, 0)]);
        assert_eq!(p.coefficients[2], vec![c(0, 0), c(1, 0)]);
        assert_eq!(p.coefficients[3], vec![c(0, 0), c(0, -1)]);
    }

    #[test]
    fn real_beta_is_rejected() {
        let psi = PsiMap::from_rows(vec![vec![c(1, 0)], vec![c(1, 0)]]).unwrap();
        assert!(torus_periods(&torus(2), &psi, 64).is_err());
    }
}
