//! Complex numbers as pairs of scalars. No extension field is built; `i`
//! only appears through the multiplication rule.

use std::ops::{Add, Mul, Neg, Sub};

use super::value::Scalar;
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        ComplexScalar { re, im: Scalar::zero() }
    }

    pub fn i() -> Self {
        ComplexScalar::new(Scalar::zero(), Scalar::one())
    }

    pub fn zero() -> Self {
        ComplexScalar::default()
    }

    pub fn one() -> Self {
        ComplexScalar::real(Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Scalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> Result<ComplexScalar> {
        let d = self.norm_sqr().recip()?;
        Ok(ComplexScalar::new(&self.re * &d, -&(&self.im * &d)))
    }

    pub fn checked_div(&self, o: &ComplexScalar) -> Result<ComplexScalar> {
        Ok(self * &o.recip()?)
    }

    pub fn scale(&self, k: &Scalar) -> ComplexScalar {
        ComplexScalar::new(&self.re * k, &self.im * k)
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar::new(-&self.re, -&self.im)
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, o: &ComplexScalar) -> ComplexScalar {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        ComplexScalar::new(re, im)
    }
}

/// Rank over C of a complex matrix given by rows; Gauss elimination with
/// exact zero tests on both parts.
pub fn complex_rank(rows: &[Vec<ComplexScalar>]) -> usize {
    let mut m: Vec<Vec<ComplexScalar>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip().expect("nonzero pivot");
        let prow: Vec<ComplexScalar> = m[rank].iter().map(|x| x * &inv).collect();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                m[r][c] = &m[r][c] - &(&f * &prow[c]);
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

/// Solve the square system `M x = b` over C (Gauss–Jordan); `None` when
/// singular.
pub fn complex_solve(m: &[Vec<ComplexScalar>], b: &[ComplexScalar]) -> Option<Vec<ComplexScalar>> {
    let n = m.len();
    let mut a: Vec<Vec<ComplexScalar>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip().ok()?;
        let prow: Vec<ComplexScalar> = a[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                a[r][c] = &a[r][c] - &(&f * &prow[c]);
            }
        }
        a[col] = prow;
    }
    Some(a.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}
