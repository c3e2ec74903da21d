//! The pair file format: UTF-8 JSON with fields `n`, `facets`,
//! `max_simplices`, `lambda`, and the inequality file format for polytope
//! input. Emission is canonical and byte-stable: facets in document order,
//! simplices sorted, two-space indentation, integers as JSON numbers only
//! within the exactly-representable range and as decimal strings beyond it.

use crate::charpair::{CharacteristicPair, Halfspace, PairError};
use crate::complex::SimplicialComplex;
use crate::lattice::{Int, IntVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::Value;
use std::collections::BTreeMap;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    ParseError(String),
}

fn parse_err(msg: impl Into<String>) -> DocumentError {
    DocumentError::ParseError(msg.into())
}

/// Integers stay JSON numbers while exactly representable as doubles.
const SAFE_INT: i64 = 9_007_199_254_740_991;

/// Serialized form of a characteristic pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDocument {
    pub n: usize,
    pub facets: Vec<String>,
    pub max_simplices: Vec<Vec<String>>,
    /// One entry per facet, in facet order.
    pub lambda: Vec<(String, Vec<Int>)>,
}

impl PairDocument {
    /// Canonical document of a pair: simplices member-sorted by facet order
    /// and listed lexicographically, lambda keyed in facet order.
    pub fn from_pair(pair: &CharacteristicPair) -> PairDocument {
        let facets: Vec<String> = pair.facets().to_vec();
        let position: BTreeMap<&String, usize> =
            facets.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut simplices: Vec<Vec<usize>> = pair
            .complex()
            .maximal_faces()
            .into_iter()
            .map(|face| {
                let mut pos: Vec<usize> = face.iter().map(|f| position[f]).collect();
                pos.sort_unstable();
                pos
            })
            .collect();
        simplices.sort();
        let max_simplices = simplices
            .into_iter()
            .map(|pos| pos.into_iter().map(|i| facets[i].clone()).collect())
            .collect();
        let lambda = facets
            .iter()
            .map(|f| {
                (
                    f.clone(),
                    pair.lambda_of(f).expect("facet exists").entries().to_vec(),
                )
            })
            .collect();
        PairDocument {
            n: pair.rank(),
            facets,
            max_simplices,
            lambda,
        }
    }

    pub fn to_pair(&self) -> Result<CharacteristicPair, PairError> {
        let complex = SimplicialComplex::new(self.facets.clone(), self.max_simplices.clone())?;
        let lambda: BTreeMap<String, IntVector> = self
            .lambda
            .iter()
            .map(|(f, entries)| (f.clone(), IntVector::new(entries.clone())))
            .collect();
        CharacteristicPair::new(self.n, complex, lambda)
    }

    pub fn parse(text: &str) -> Result<PairDocument, DocumentError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {}", e)))?;
        let obj = value
            .as_object()
            .ok_or_else(|| parse_err("document must be a JSON object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "n" | "facets" | "max_simplices" | "lambda") {
                return Err(parse_err(format!("unknown field {:?}", key)));
            }
        }
        let n = field(obj, "n")?
            .as_u64()
            .ok_or_else(|| parse_err("field \"n\" must be a nonnegative integer"))?
            as usize;
        let facets = string_list(field(obj, "facets")?, "facets")?;
        let simplices_value = field(obj, "max_simplices")?
            .as_array()
            .ok_or_else(|| parse_err("field \"max_simplices\" must be a list"))?;
        let max_simplices = simplices_value
            .iter()
            .map(|v| string_list(v, "max_simplices entry"))
            .collect::<Result<Vec<_>, _>>()?;
        let lambda_obj = field(obj, "lambda")?
            .as_object()
            .ok_or_else(|| parse_err("field \"lambda\" must be an object"))?;
        if lambda_obj.len() != facets.len() {
            return Err(parse_err(format!(
                "lambda has {} entries for {} facets",
                lambda_obj.len(),
                facets.len()
            )));
        }
        let mut lambda = Vec::with_capacity(facets.len());
        for f in &facets {
            let entry = lambda_obj
                .get(f)
                .ok_or_else(|| parse_err(format!("lambda is missing facet {:?}", f)))?;
            let list = entry
                .as_array()
                .ok_or_else(|| parse_err(format!("lambda[{:?}] must be a list", f)))?;
            let entries = list
                .iter()
                .map(parse_int)
                .collect::<Result<Vec<_>, _>>()?;
            lambda.push((f.clone(), entries));
        }
        Ok(PairDocument {
            n,
            facets,
            max_simplices,
            lambda,
        })
    }

    /// Canonical emission; see the module docs. Ends with a newline.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"n\": {},\n", self.n));
        out.push_str(&format!(
            "  \"facets\": {},\n",
            inline_string_list(&self.facets)
        ));
        let position: BTreeMap<&String, usize> =
            self.facets.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut simplices: Vec<Vec<usize>> = self
            .max_simplices
            .iter()
            .map(|face| {
                let mut pos: Vec<usize> = face
                    .iter()
                    .map(|f| position.get(f).copied().unwrap_or(usize::MAX))
                    .collect();
                pos.sort_unstable();
                pos
            })
            .collect();
        simplices.sort();
        simplices.dedup();
        if simplices.is_empty() {
            out.push_str("  \"max_simplices\": [],\n");
        } else {
            out.push_str("  \"max_simplices\": [\n");
            for (i, pos) in simplices.iter().enumerate() {
                let names: Vec<String> = pos
                    .iter()
                    .map(|&p| self.facets.get(p).cloned().unwrap_or_default())
                    .collect();
                let sep = if i + 1 == simplices.len() { "" } else { "," };
                out.push_str(&format!("    {}{}\n", inline_string_list(&names), sep));
            }
            out.push_str("  ],\n");
        }
        if self.lambda.is_empty() {
            out.push_str("  \"lambda\": {}\n");
        } else {
            out.push_str("  \"lambda\": {\n");
            for (i, (f, entries)) in self.lambda.iter().enumerate() {
                let values: Vec<String> = entries.iter().map(int_literal).collect();
                let sep = if i + 1 == self.lambda.len() { "" } else { "," };
                out.push_str(&format!(
                    "    {}: [{}]{}\n",
                    json_string(f),
                    values.join(", "),
                    sep
                ));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

/// Polytope input: `n` and a list of `{"normal": [...], "offset": ...}`
/// inequalities meaning `<normal, x> <= offset`. Offsets are integers or
/// strings like `"7"` and `"1/2"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityDocument {
    pub n: usize,
    pub halfspaces: Vec<Halfspace>,
}

impl InequalityDocument {
    pub fn parse(text: &str) -> Result<InequalityDocument, DocumentError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {}", e)))?;
        let obj = value
            .as_object()
            .ok_or_else(|| parse_err("document must be a JSON object"))?;
        let n = field(obj, "n")?
            .as_u64()
            .ok_or_else(|| parse_err("field \"n\" must be a nonnegative integer"))?
            as usize;
        let list = field(obj, "inequalities")?
            .as_array()
            .ok_or_else(|| parse_err("field \"inequalities\" must be a list"))?;
        let mut halfspaces = Vec::with_capacity(list.len());
        for (i, entry) in list.iter().enumerate() {
            let entry = entry
                .as_object()
                .ok_or_else(|| parse_err(format!("inequality {} must be an object", i + 1)))?;
            let normal_list = entry
                .get("normal")
                .ok_or_else(|| parse_err(format!("inequality {} is missing \"normal\"", i + 1)))?
                .as_array()
                .ok_or_else(|| parse_err("\"normal\" must be a list"))?;
            let normal = normal_list
                .iter()
                .map(parse_int)
                .collect::<Result<Vec<_>, _>>()?;
            if normal.len() != n {
                return Err(parse_err(format!(
                    "inequality {} has a normal of length {}, expected {}",
                    i + 1,
                    normal.len(),
                    n
                )));
            }
            let offset = entry
                .get("offset")
                .ok_or_else(|| parse_err(format!("inequality {} is missing \"offset\"", i + 1)))?;
            halfspaces.push(Halfspace::new(IntVector::new(normal), parse_rational(offset)?));
        }
        Ok(InequalityDocument { n, halfspaces })
    }
}

fn field<'v>(
    obj: &'v serde_json::Map<String, Value>,
    name: &str,
) -> Result<&'v Value, DocumentError> {
    obj.get(name)
        .ok_or_else(|| parse_err(format!("missing field {:?}", name)))
}

fn string_list(value: &Value, what: &str) -> Result<Vec<String>, DocumentError> {
    let list = value
        .as_array()
        .ok_or_else(|| parse_err(format!("{} must be a list", what)))?;
    list.iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err(format!("{} must contain strings", what)))
        })
        .collect()
}

/// Accepts JSON integers and decimal strings (for values beyond the safe
/// double range).
fn parse_int(value: &Value) -> Result<Int, DocumentError> {
    match value {
        Value::Number(num) => {
            if let Some(v) = num.as_i64() {
                return Ok(Int::from(v));
            }
            if let Some(v) = num.as_u64() {
                return Ok(Int::from(v));
            }
            // arbitrary-precision: the literal text survives in to_string()
            BigInt::from_str(&num.to_string())
                .map_err(|_| parse_err(format!("{} is not an integer", num)))
        }
        Value::String(s) => {
            BigInt::from_str(s).map_err(|_| parse_err(format!("{:?} is not an integer", s)))
        }
        other => Err(parse_err(format!("{} is not an integer", other))),
    }
}

fn parse_rational(value: &Value) -> Result<BigRational, DocumentError> {
    match value {
        Value::String(s) => match s.split_once('/') {
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim())
                    .map_err(|_| parse_err(format!("bad rational {:?}", s)))?;
                let d = BigInt::from_str(den.trim())
                    .map_err(|_| parse_err(format!("bad rational {:?}", s)))?;
                if d.is_zero() {
                    return Err(parse_err(format!("zero denominator in {:?}", s)));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(
                BigInt::from_str(s.trim())
                    .map_err(|_| parse_err(format!("bad rational {:?}", s)))?,
            )),
        },
        other => Ok(BigRational::from_integer(parse_int(other)?)),
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn inline_string_list(items: &[String]) -> String {
    let parts: Vec<String> = items.iter().map(|s| json_string(s)).collect();
    format!("[{}]", parts.join(", "))
}

/// Integer literal: a bare number within the double-exact range, a quoted
/// decimal string beyond it.
pub fn int_literal(v: &Int) -> String {
    if v.abs() <= Int::from(SAFE_INT) {
        v.to_string()
    } else {
        format!("\"{}\"", v)
    }
}
