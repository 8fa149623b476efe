//! Closed intervals with exact rational endpoints, rounded outward to a
//! working precision so endpoint sizes stay bounded.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Round `x` to a dyadic rational with about `bits` significant bits,
/// toward −∞ (`up = false`) or +∞ (`up = true`).
pub fn round_dyadic(x: &BigRational, bits: u32, up: bool) -> BigRational {
    if x.is_zero() || x.denom().is_one() && x.numer().bits() <= bits as u64 {
        return x.clone();
    }
    // scale so |x| * 2^shift has ~bits integer bits
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = bits as i64 - (nb - db);
    let (num, den) = if shift >= 0 {
        (x.numer() << shift as u64, x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (-shift) as u64)
    };
    let (q, r) = num.div_mod_floor(&den);
    let q = if up && !r.is_zero() { q + 1 } else { q };
    if shift >= 0 {
        BigRational::new(q, pow2(shift as u64))
    } else {
        BigRational::from_integer(q * pow2((-shift) as u64))
    }
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Interval::point(BigRational::zero())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// −1 / +1 when the interval excludes zero, else `None`.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn round(&self, bits: u32) -> Interval {
        Interval {
            lo: round_dyadic(&self.lo, bits, false),
            hi: round_dyadic(&self.hi, bits, true),
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(BigRational::one());
        }
        if e.is_multiple_of(2) && self.contains_zero() {
            let m = if self.lo.abs() > self.hi.abs() {
                self.lo.abs()
            } else {
                self.hi.abs()
            };
            return Interval {
                lo: BigRational::zero(),
                hi: num_traits::pow(m, e as usize),
            };
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Outward conversion to an `f64` pair.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo, false), rational_to_f64(&self.hi, true))
    }

    pub fn to_f64_mid(&self) -> f64 {
        rational_to_f64(&self.midpoint(), false)
    }
}

/// Convert to the nearest representable `f64`, then nudge one ulp in the
/// requested direction so the result bounds `x`.
pub fn rational_to_f64(x: &BigRational, up: bool) -> f64 {
    let approx = rational_approx(x);
    if !approx.is_finite() {
        return approx;
    }
    // the conversion is within two ulps
    if up {
        next_up(next_up(approx))
    } else {
        next_down(next_down(approx))
    }
}

/// A closed `f64` interval with outward-rounded operations, for reporting
/// transcendental quantities with an honest error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FloatInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        FloatInterval { lo, hi }
    }

    /// Tight enclosure of an `f64` constant known to within one ulp.
    pub fn around(x: f64) -> Self {
        FloatInterval::new(next_down(x), next_up(x))
    }

    pub fn from_interval(x: &Interval) -> Self {
        let (lo, hi) = x.to_f64_bounds();
        FloatInterval { lo, hi }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn rad(&self) -> f64 {
        next_up(0.5 * (self.hi - self.lo))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, o: &FloatInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn neg(&self) -> Self {
        FloatInterval::new(-self.hi, -self.lo)
    }

    pub fn add(&self, o: &FloatInterval) -> Self {
        FloatInterval::new(next_down(self.lo + o.lo), next_up(self.hi + o.hi))
    }

    pub fn mul(&self, o: &FloatInterval) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        FloatInterval::new(next_down(lo), next_up(hi))
    }

    /// `exp` is monotone; the library call is padded by two ulps each way.
    pub fn exp(&self) -> Self {
        FloatInterval::new(
            next_down(next_down(self.lo.exp())).max(0.0),
            next_up(next_up(self.hi.exp())),
        )
    }
}

/// Enclosure of `2π`.
pub fn two_pi() -> FloatInterval {
    FloatInterval::around(std::f64::consts::TAU)
}

pub fn rational_approx(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let r = round_dyadic(x, 64, false);
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // keep both parts in f64 range
    let ns = (nb - 60).max(0);
    let ds = (db - 60).max(0);
    let n = (num >> ns as u64).to_f64().unwrap_or(f64::NAN);
    let d = (den >> ds as u64).to_f64().unwrap_or(f64::NAN);
    let v = n / d;
    v * 2f64.powi((ns - ds) as i32)
}

pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let b = x.to_bits();
    if x > 0.0 {
        f64::from_bits(b + 1)
    } else {
        f64::from_bits(b - 1)
    }
}

pub fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// Exact rational value of an `f64`.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Integer square root floor.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.sign() != Sign::Plus {
        return BigInt::zero();
    }
    n.sqrt()
}
