use num_bigint::BigInt;
use num_rational::BigRational;

use super::kernel_of_a;
use crate::error::Result;
use crate::fan::FanData;
use crate::scalar::matrix::{primitive_integer_vector, rational_vec_to_scalar};
use crate::scalar::{dot, ScalarMatrix};

/// Outcome of a genericity test: either it holds, or a primitive integer
/// witness shows why not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Holds,
    Witness(Vec<BigInt>),
}

impl Genericity {
    pub fn holds(&self) -> bool {
        matches!(self, Genericity::Holds)
    }

    fn from_space(space: Vec<Vec<BigRational>>) -> Genericity {
        match space.first() {
            None => Genericity::Holds,
            Some(v) => Genericity::Witness(primitive_integer_vector(v)),
        }
    }
}

/// No rational functional on `R^m` vanishes on all of `Ker A`.
pub fn genericity_g1(f: &FanData) -> Result<Genericity> {
    let kernel = kernel_of_a(f)?;
    if kernel.is_empty() {
        // every functional vanishes on the zero subspace
        let mut e = vec![BigInt::from(0); f.m()];
        if let Some(x) = e.first_mut() {
            *x = BigInt::from(1);
        }
        return Ok(if f.m() == 0 {
            Genericity::Holds
        } else {
            Genericity::Witness(e)
        });
    }
    let m = ScalarMatrix::from_rows(kernel)?;
    Ok(Genericity::from_space(m.rational_solution_space()))
}

/// `Ker A` contains no nonzero rational vector.
pub fn genericity_g2(f: &FanData) -> Result<Genericity> {
    Ok(Genericity::from_space(f.matrix_a().rational_solution_space()))
}

/// Exact re-check of a g1 witness: it pairs to zero with `Ker A`.
pub fn verify_g1_witness(f: &FanData, w: &[BigInt]) -> Result<bool> {
    let phi = rational_vec_to_scalar(
        &w.iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect::<Vec<_>>(),
    );
    Ok(w.iter().any(|x| *x != BigInt::from(0)) && kernel_of_a(f)?.iter().all(|k| dot(&phi, k).is_zero()))
}

/// Exact re-check of a g2 witness: `A x = 0`.
pub fn verify_g2_witness(f: &FanData, w: &[BigInt]) -> bool {
    let x = rational_vec_to_scalar(
        &w.iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect::<Vec<_>>(),
    );
    w.iter().any(|x| *x != BigInt::from(0)) && f.matrix_a().mul_vec(&x).iter().all(|y| y.is_zero())
}
