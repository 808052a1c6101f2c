//! `{"basis": "P^n", "coeffs": {"k": c_k, ...}}`, with coefficients as JSON
//! integers when they fit in `i64` and as `"p/q"` strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use segcalc_core::graded::{Basis, CycleClass, Rational};

use crate::CliError;

/// A coefficient as written in a JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Coeff::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            Coeff::Text(s) => {
                s.trim().parse::<Rational>().map_err(|_| CliError::Config(format!("not a rational number: {s:?}")))
            }
        }
    }
}

pub fn rational_to_json(c: &Rational) -> Value {
    if c.is_integer() {
        if let Some(v) = c.to_integer().to_i64() {
            return json!(v);
        }
    }
    json!(c.to_string())
}

/// Nonzero coefficients only; keys are dimensions.
pub fn class_to_json(class: &CycleClass) -> Value {
    let mut coeffs = Map::new();
    for (i, c) in class.terms() {
        coeffs.insert(class.basis().dim(i).to_string(), rational_to_json(c));
    }
    json!({ "basis": class.basis().name(), "coeffs": coeffs })
}

/// Parses `"P^n"` into `n`.
pub fn parse_basis_name(name: &str) -> Result<usize, CliError> {
    name.strip_prefix("P^")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| CliError::Config(format!("unsupported basis {name:?}; expected \"P^n\"")))
}

/// Builds a class on `P^n` from a `dimension -> coefficient` map.
pub fn class_from_coeff_map<'a>(
    n: usize,
    entries: impl IntoIterator<Item = (&'a String, &'a Coeff)>,
) -> Result<CycleClass, CliError> {
    let basis = Basis::projective(n);
    let mut coeffs = vec![Rational::from_integer(BigInt::from(0)); n + 1];
    for (key, value) in entries {
        let dim: usize = key.parse().map_err(|_| CliError::Config(format!("coefficient key {key:?} is not a dimension")))?;
        if dim > n {
            return Err(CliError::Config(format!("dimension {dim} exceeds ambient P^{n}")));
        }
        coeffs[dim] = value.to_rational()?;
    }
    Ok(CycleClass::from_coeffs(&basis, coeffs)?)
}

pub fn class_from_json(value: &Value) -> Result<CycleClass, CliError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        basis: String,
        coeffs: std::collections::BTreeMap<String, Coeff>,
    }
    let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| CliError::Config(format!("bad class: {e}")))?;
    class_from_coeff_map(parse_basis_name(&raw.basis)?, &raw.coeffs)
}
