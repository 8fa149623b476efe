//! Declared transcendental symbols and their real enclosures.
//!
//! The real values behind a table's symbols are assumed algebraically
//! independent over Q. Nothing here can check that; the monomial-stacking
//! routines and the exact sign tests are only meaningful under it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{isqrt, round_dyadic, Interval};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolSource {
    /// Fixed enclosure; refinement cannot shrink it.
    Enclosure(Interval),
    /// √radicand, refinable to any precision.
    Sqrt(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub source: SymbolSource,
}

impl Symbol {
    /// Enclosure at roughly `bits` bits of precision.
    pub fn enclosure(&self, bits: u32) -> Interval {
        match &self.source {
            SymbolSource::Enclosure(i) => i.clone(),
            SymbolSource::Sqrt(r) => sqrt_enclosure(r, bits),
        }
    }

    /// Precision (bits) of the stored enclosure: floor(−log2 width).
    pub fn stated_precision(&self) -> Option<u32> {
        match &self.source {
            SymbolSource::Sqrt(_) => None,
            SymbolSource::Enclosure(i) => {
                let w = i.width();
                if w.is_zero() {
                    return Some(u32::MAX);
                }
                let mut bits = 0u32;
                let mut scaled = w;
                let two = BigRational::from_integer(BigInt::from(2));
                while scaled < BigRational::one() && bits < 1 << 16 {
                    scaled *= &two;
                    bits += 1;
                }
                Some(bits.saturating_sub(1))
            }
        }
    }
}

fn sqrt_enclosure(r: &BigRational, bits: u32) -> Interval {
    // sqrt(p/q) = sqrt(p*q)/q
    let pq = r.numer() * r.denom();
    let scale = BigInt::one() << (2 * bits as u64);
    let root = isqrt(&(pq * scale));
    let den = r.denom() * (BigInt::one() << bits as u64);
    let lo = BigRational::new(root.clone(), den.clone());
    let hi = BigRational::new(root + 1, den);
    Interval::new(lo, hi)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: Vec<Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].name
    }

    fn check_name(&self, name: &str) -> Result<()> {
        let mut chars = name.chars();
        let ok = chars
            .next()
            .map(|c| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(false)
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Input(format!("invalid symbol name `{name}`")));
        }
        if self.index_of(name).is_some() {
            return Err(Error::Input(format!("duplicate symbol `{name}`")));
        }
        Ok(())
    }

    pub fn push_enclosure(&mut self, name: &str, lo: BigRational, hi: BigRational) -> Result<usize> {
        self.check_name(name)?;
        if lo > hi {
            return Err(Error::Input(format!("empty enclosure for `{name}`")));
        }
        if lo == hi {
            return Err(Error::Input(format!(
                "enclosure for `{name}` is a single rational; use a literal instead"
            )));
        }
        self.symbols.push(Symbol {
            name: name.to_string(),
            source: SymbolSource::Enclosure(Interval::new(lo, hi)),
        });
        Ok(self.symbols.len() - 1)
    }

    pub fn push_sqrt(&mut self, name: &str, radicand: BigRational) -> Result<usize> {
        self.check_name(name)?;
        if !radicand.is_positive() {
            return Err(Error::Input(format!("sqrt radicand for `{name}` must be positive")));
        }
        self.symbols.push(Symbol {
            name: name.to_string(),
            source: SymbolSource::Sqrt(radicand),
        });
        Ok(self.symbols.len() - 1)
    }

    /// Enclosures of every symbol at `bits`, rounded outward.
    pub fn enclosures(&self, bits: u32) -> Vec<Interval> {
        self.symbols
            .iter()
            .map(|s| s.enclosure(bits).round(bits.max(64)))
            .collect()
    }

    /// Representative rational values (enclosure midpoints).
    pub fn midpoints(&self, bits: u32) -> Vec<BigRational> {
        self.symbols
            .iter()
            .map(|s| round_dyadic(&s.enclosure(bits).midpoint(), bits, false))
            .collect()
    }

    pub fn f64_values(&self) -> Vec<f64> {
        self.symbols.iter().map(|s| s.enclosure(64).to_f64_mid()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_enclosure_brackets_root() {
        let i = sqrt_enclosure(&BigRational::from_integer(2.into()), 64);
        let two = BigRational::from_integer(2.into());
        assert!(&i.lo * &i.lo <= two);
        assert!(&i.hi * &i.hi >= two);
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        let mut t = SymbolTable::new();
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        t.push_enclosure("s", one.clone(), two.clone()).unwrap();
        assert!(t.push_enclosure("s", one.clone(), two.clone()).is_err());
        assert!(t.push_enclosure("9x", one, two).is_err());
    }
}
