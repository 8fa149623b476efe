//! `Scalar`: an element of Q(s_1, …, s_k) in canonical form.
//!
//! Canonical form: numerator and denominator coprime, denominator with
//! leading coefficient 1 under the lex order of [`Monomial`], and the zero
//! element stored as 0/1. Two scalars are equal iff they are structurally
//! equal.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::Interval;
use super::poly::{gcd, Poly};
use super::symbols::SymbolTable;
use crate::error::{Error, Result};

/// Default refinement ceiling for sign tests.
pub const DEFAULT_MAX_BITS: u32 = 4096;
/// Starting working precision for sign tests.
pub const INITIAL_BITS: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({:?} / {:?})", self.num, self.den)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Scalar {
            num: Poly::from_int(k),
            den: Poly::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn symbol(index: usize) -> Self {
        Scalar {
            num: Poly::var(index),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Build `num / den` and bring it to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return Scalar { num, den };
            }
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The value as an exact rational when no symbol occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Interval enclosure of the value with symbol enclosures at `bits`.
    pub fn enclose(&self, table: &SymbolTable, bits: u32) -> Result<Interval> {
        let encl = table.enclosures(bits);
        let n = eval_interval(&self.num, &encl, bits);
        if self.den.is_one() {
            return Ok(n);
        }
        let d = eval_interval(&self.den, &encl, bits);
        if d.contains_zero() {
            return Err(Error::PrecisionExhausted { bits });
        }
        let inv = Interval::new(d.hi.recip(), d.lo.recip());
        Ok(n.mul(&inv).round(bits))
    }

    /// Sign of the real value: exact for zero, interval-certified otherwise,
    /// doubling the working precision until `max_bits`.
    pub fn sign(&self, table: &SymbolTable, max_bits: u32) -> Result<i8> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q > BigRational::zero() { 1 } else { -1 });
        }
        let mut bits = INITIAL_BITS.min(max_bits.max(1));
        loop {
            let encl = table.enclosures(bits);
            let n = eval_interval(&self.num, &encl, bits).sign();
            let d = if self.den.is_one() {
                Some(1)
            } else {
                eval_interval(&self.den, &encl, bits).sign()
            };
            if let (Some(a), Some(b)) = (n, d) {
                return Ok(a * b);
            }
            if bits >= max_bits {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    /// Numeric value at the symbol midpoints.
    pub fn to_f64(&self, table: &SymbolTable) -> f64 {
        match self.as_rational() {
            Some(q) => super::interval::rational_approx(&q),
            None => {
                let vals = table.midpoints(128);
                let n = self.num.eval_rational(&vals);
                let d = self.den.eval_rational(&vals);
                if d.is_zero() {
                    f64::NAN
                } else {
                    super::interval::rational_approx(&(n / d))
                }
            }
        }
    }

    /// Exact value at rational points for the symbols.
    pub fn eval_rational(&self, values: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval_rational(values);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(values) / d)
    }
}

fn eval_interval(p: &Poly, encl: &[Interval], bits: u32) -> Interval {
    let mut acc = Interval::zero();
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = t.mul(&encl[i].pow(e)).round(bits);
            }
        }
        acc = acc.add(&t).round(bits);
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::canonical(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar::canonical(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return Scalar::canonical(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        let den = self.den.mul(&d1);
        Scalar::canonical(num, den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

/// Panics on division by the zero scalar; use [`Scalar::checked_div`] when
/// the divisor is not known to be nonzero.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::from_int(k)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::symbols::SymbolTable;

    fn table_st() -> SymbolTable {
        let mut t = SymbolTable::new();
        t.push_sqrt("s", BigRational::from_integer(2.into())).unwrap();
        t.push_sqrt("t", BigRational::from_integer(3.into())).unwrap();
        t
    }

    #[test]
    fn cancellation_gives_canonical_zero() {
        let s = Scalar::symbol(0);
        assert!((&s - &s).is_zero());
        assert_eq!(&s - &s, Scalar::zero());
    }

    #[test]
    fn rational_function_reduces() {
        let s = Scalar::symbol(0);
        let one = Scalar::one();
        let a = (&one + &s) / (&one - &s);
        let b = &a * &(&one - &s);
        assert_eq!(b, &one + &s);
    }

    #[test]
    fn sign_of_symbolic_values() {
        let t = table_st();
        let s = Scalar::symbol(0);
        let u = Scalar::symbol(1);
        assert_eq!(s.sign(&t, 256).unwrap(), 1);
        assert_eq!((&s - &u).sign(&t, 256).unwrap(), -1);
        assert_eq!(Scalar::zero().sign(&t, 64).unwrap(), 0);
    }

    #[test]
    fn hidden_zero_exhausts_precision() {
        let t = table_st();
        let s = Scalar::symbol(0);
        let x = &(&s * &s) - &Scalar::from_int(2);
        assert!(!x.is_zero());
        assert_eq!(x.sign(&t, 256), Err(Error::PrecisionExhausted { bits: 256 }));
    }

    #[test]
    fn recip_of_zero_errors() {
        assert_eq!(Scalar::zero().recip(), Err(Error::DivisionByZero));
    }
}
