//! The JSON input schema shared by every command, and JSON renderings of
//! exact values.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::FanData;
use crate::kahler::PointC;
use crate::scalar::{parse_scalar, print_scalar, ComplexScalar, FloatInterval, Scalar, ScalarVec, SymbolTable};
use crate::simplicial::SimplicialComplex;
use crate::structure::PsiMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub m: usize,
    pub maximal_faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntrySpec {
    pub re: String,
    pub im: String,
}

/// A point coordinate: either a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Real {
    Number(f64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointEntry {
    pub re: Real,
    pub im: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub symbols: Vec<SymbolSpec>,
    pub n: usize,
    pub vectors: Vec<Vec<String>>,
    pub complex: ComplexSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<EntrySpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<PointEntry>>>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: Option<String>,
    pub fan: FanData,
    pub offsets: Option<ScalarVec>,
    pub psi: Option<PsiMap>,
    pub points: Option<Vec<PointC>>,
}

/// Parse `"p/q"`, `"-12"` or a plain decimal such as `"1.4142"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Input(format!("`{text}` is not a rational or decimal literal"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let value = if let Some((p, q)) = body.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(Error::DivisionByZero);
        }
        BigRational::new(p, q)
    } else if let Some((ip, fp)) = body.split_once('.') {
        if ip.is_empty() && fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let ip: BigInt = if ip.is_empty() {
            BigInt::from(0)
        } else {
            ip.parse().map_err(|_| bad())?
        };
        let fpn: BigInt = if fp.is_empty() {
            BigInt::from(0)
        } else {
            fp.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        BigRational::new(ip * &scale + fpn, scale)
    } else {
        BigRational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if neg { -value } else { value })
}

fn parse_real(r: &Real) -> Result<f64> {
    match r {
        Real::Number(x) => Ok(*x),
        Real::Text(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Input(format!("`{s}` is not a number"))),
    }
}

impl InputFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InputFile = serde_json::from_str(text).map_err(|e| Error::Input(format!("schema: {e}")))?;
        if file.schema != SCHEMA_VERSION {
            return Err(Error::Input(format!("unsupported schema version {}", file.schema)));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn symbol_table(&self) -> Result<SymbolTable> {
        let mut t = SymbolTable::new();
        for s in &self.symbols {
            match (&s.enclosure, &s.sqrt) {
                (Some([lo, hi]), None) => {
                    t.push_enclosure(&s.name, parse_rational(lo)?, parse_rational(hi)?)?;
                }
                (None, Some(r)) => {
                    t.push_sqrt(&s.name, parse_rational(r)?)?;
                }
                _ => {
                    return Err(Error::Input(format!(
                        "symbol `{}` needs exactly one of `enclosure` and `sqrt`",
                        s.name
                    )))
                }
            }
        }
        Ok(t)
    }

    pub fn problem(&self) -> Result<Problem> {
        let table = self.symbol_table()?;
        let scalars = |v: &[String]| -> Result<ScalarVec> { v.iter().map(|e| parse_scalar(e, &table)).collect() };
        let vectors = self.vectors.iter().map(|v| scalars(v)).collect::<Result<Vec<_>>>()?;
        let complex = SimplicialComplex::new(self.complex.m, self.complex.maximal_faces.clone())?;
        let offsets = self.offsets.as_ref().map(|o| scalars(o)).transpose()?;
        let psi = match &self.psi {
            None => None,
            Some(rows) => {
                let rows = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| {
                                Ok(ComplexScalar::new(
                                    parse_scalar(&e.re, &table)?,
                                    parse_scalar(&e.im, &table)?,
                                ))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(PsiMap::from_rows(rows)?)
            }
        };
        let points = match &self.points {
            None => None,
            Some(pts) => Some(
                pts.iter()
                    .map(|p| {
                        let z = p
                            .iter()
                            .map(|e| Ok((parse_real(&e.re)?, parse_real(&e.im)?)))
                            .collect::<Result<Vec<_>>>()?;
                        if z.len() != self.complex.m {
                            return Err(Error::Dimension(format!(
                                "point has {} coordinates, m = {}",
                                z.len(),
                                self.complex.m
                            )));
                        }
                        Ok(PointC::new(z))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        if let Some(o) = &offsets {
            if o.len() != self.complex.m {
                return Err(Error::Dimension(format!(
                    "{} offsets for m = {}",
                    o.len(),
                    self.complex.m
                )));
            }
        }
        let fan = FanData::new(complex, self.n, vectors, table)?;
        Ok(Problem {
            name: self.name.clone(),
            fan,
            offsets,
            psi,
            points,
        })
    }
}

pub fn scalar_json(x: &Scalar, t: &SymbolTable) -> Value {
    Value::String(print_scalar(x, t))
}

pub fn vec_json(v: &[Scalar], t: &SymbolTable) -> Value {
    Value::Array(v.iter().map(|x| scalar_json(x, t)).collect())
}

pub fn complex_json(z: &ComplexScalar, t: &SymbolTable) -> Value {
    json!({ "re": print_scalar(&z.re, t), "im": print_scalar(&z.im, t) })
}

pub fn psi_json(psi: &PsiMap, t: &SymbolTable) -> Value {
    Value::Array(
        psi.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|z| complex_json(z, t)).collect()))
            .collect(),
    )
}

/// `PsiMap` as the input-file fragment.
pub fn psi_spec(psi: &PsiMap, t: &SymbolTable) -> Vec<Vec<EntrySpec>> {
    psi.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| EntrySpec {
                    re: print_scalar(&z.re, t),
                    im: print_scalar(&z.im, t),
                })
                .collect()
        })
        .collect()
}

pub fn interval_json(x: &FloatInterval) -> Value {
    json!([x.lo, x.hi])
}

pub fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn point_json(z: &PointC) -> Value {
    Value::Array(z.z.iter().map(|(a, b)| json!({ "re": a, "im": b })).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn schema_version_is_checked() {
        let text = r#"{"schema": 2, "n": 0, "vectors": [], "complex": {"m": 0, "maximal_faces": []}}"#;
        assert!(InputFile::from_json(text).is_err());
        let text = r#"{"schema": 1, "n": 0, "vectors": [[], []], "complex": {"m": 2, "maximal_faces": []}}"#;
        let p = InputFile::from_json(text).unwrap().problem().unwrap();
        assert_eq!(p.fan.m(), 2);
    }
}
