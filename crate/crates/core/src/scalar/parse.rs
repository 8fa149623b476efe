//! Recursive-descent parser and printer for scalar expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := rational | symbol | '(' expr ')' | '-' factor
//! rational:= integer ('/' positive-integer)?
//! ```
//! Whitespace is insignificant. `print` emits a fully parenthesized canonical
//! form that parses back to the identical scalar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::symbols::SymbolTable;
use super::value::Scalar;
use crate::error::{Error, Result};

pub fn parse_scalar(expr: &str, table: &SymbolTable) -> Result<Scalar> {
    let mut p = Parser {
        src: expr.as_bytes(),
        pos: 0,
        table,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    // `x/3/4` is (x/3)/4: no literal fraction right after `/`
                    let d = self.factor_with(false)?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar> {
        self.factor_with(true)
    }

    fn factor_with(&mut self, allow_fraction: bool) -> Result<Scalar> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor_with(allow_fraction)?)
            }
            Some(c) if c.is_ascii_digit() => self.rational(allow_fraction),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.table.index_of(name) {
                    Some(i) => Ok(Scalar::symbol(i)),
                    None => Err(Error::UnknownSymbol(name.to_string())),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse::<BigInt>().expect("digits parse"))
    }

    fn rational(&mut self, allow_fraction: bool) -> Result<Scalar> {
        self.skip_ws();
        let n = self.integer()?;
        if !allow_fraction {
            return Ok(Scalar::from_rational(BigRational::from_integer(n)));
        }
        // `a/b` with b a bare integer is a literal; anything else after `/`
        // is left for `term` to handle as division.
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            if self.src.get(self.pos).map(|c| c.is_ascii_digit()).unwrap_or(false) {
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                return Ok(Scalar::from_rational(BigRational::new(n, d)));
            }
        }
        self.pos = save;
        Ok(Scalar::from_rational(BigRational::from_integer(n)))
    }
}

fn print_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn print_poly(p: &Poly, table: &SymbolTable) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // highest term first
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !mag.is_one() || m.is_one() {
            factors.push(print_rational(&mag));
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                factors.push(table.name(i).to_string());
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Fully parenthesized canonical rendering.
pub fn print_scalar(x: &Scalar, table: &SymbolTable) -> String {
    if x.denom().is_one() {
        format!("({})", print_poly(x.numer(), table))
    } else {
        format!(
            "(({})/({}))",
            print_poly(x.numer(), table),
            print_poly(x.denom(), table)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> SymbolTable {
        let mut t = SymbolTable::new();
        t.push_sqrt("s", BigRational::from_integer(2.into())).unwrap();
        t.push_sqrt("t", BigRational::from_integer(3.into())).unwrap();
        t
    }

    #[test]
    fn literal_fraction() {
        let t = table();
        assert_eq!(parse_scalar("3/4", &t).unwrap(), Scalar::ratio(3, 4));
    }

    #[test]
    fn self_cancellation() {
        let t = table();
        assert!(parse_scalar("(s - s)", &t).unwrap().is_zero());
    }

    #[test]
    fn rational_function_simplifies() {
        let t = table();
        let x = parse_scalar("(1+s)/(1-s) * (1-s)", &t).unwrap();
        assert_eq!(x, parse_scalar("1 + s", &t).unwrap());
    }

    #[test]
    fn errors_carry_position_and_kind() {
        let t = table();
        assert!(matches!(parse_scalar("1 + * 2", &t), Err(Error::Syntax { pos: 4, .. })));
        assert_eq!(parse_scalar("1 + q", &t), Err(Error::UnknownSymbol("q".into())));
        assert_eq!(parse_scalar("s/(t-t)", &t), Err(Error::DivisionByZero));
        assert_eq!(parse_scalar("1/0", &t), Err(Error::DivisionByZero));
        assert!(matches!(parse_scalar("(1", &t), Err(Error::Syntax { .. })));
    }

    #[test]
    fn print_round_trip_example() {
        let t = table();
        let x = parse_scalar("(s*s - 2*t)/(3*t + 1/2) - 5/7", &t).unwrap();
        let printed = print_scalar(&x, &t);
        assert_eq!(parse_scalar(&printed, &t).unwrap(), x);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let t = table();
        assert_eq!(parse_scalar("2 - 3 * 4", &t).unwrap(), Scalar::from_int(-10));
        assert_eq!(parse_scalar("--2", &t).unwrap(), Scalar::from_int(2));
        assert_eq!(parse_scalar("1/2/2", &t).unwrap(), Scalar::ratio(1, 4));
        assert_eq!(parse_scalar("6/(2)", &t).unwrap(), Scalar::from_int(3));
        assert_eq!(
            parse_scalar("s/3/4", &t).unwrap(),
            parse_scalar("s*(1/12)", &t).unwrap()
        );
    }
}
