//! Problem files.
//!
//! ```json
//! {"order": 1, "operator": {"kind": "matrix", "entries": [[1, 1], [-1, -1]]},
//!  "u0": {"tri": [0, 1, 2]}, "v0": {"tri": [1, 2, 3]},
//!  "g": "zero", "T": 1.0, "tol": 1e-8}
//! ```
//!
//! `v0` turns the state into the pair `(u0, v0)`. `g` is `"zero"` or
//! `{"kind": "const", "value": <element>}`.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::cauchy::{CauchyProblem, Forcing};
use crate::error::{Error, Result};
use crate::operators::OperatorSpec;
use crate::spaces::Element;

#[derive(Clone, Debug, Default, PartialEq)]
pub enum ForcingSpec {
    #[default]
    Zero,
    Const(Element),
}

impl Serialize for ForcingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Const<'a> {
            kind: &'static str,
            value: &'a Element,
        }
        match self {
            ForcingSpec::Zero => s.serialize_str("zero"),
            ForcingSpec::Const(value) => Const { kind: "const", value }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for ForcingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Tagged { kind: String, value: Element },
        }
        match Repr::deserialize(d)? {
            Repr::Name(n) if n == "zero" => Ok(ForcingSpec::Zero),
            Repr::Tagged { kind, value } if kind == "const" => Ok(ForcingSpec::Const(value)),
            Repr::Name(n) | Repr::Tagged { kind: n, .. } => {
                Err(de::Error::custom(format!("unknown forcing {n:?}, expected \"zero\" or kind \"const\"")))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub order: u8,
    pub operator: OperatorSpec,
    pub u0: Element,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<Element>,
    #[serde(default)]
    pub g: ForcingSpec,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub tol: f64,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

impl ProblemConfig {
    /// Parses and validates; errors name the offending JSON path.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            schema(if path.is_empty() { "." } else { &path }, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if !matches!(self.order, 1 | 2) {
            return Err(schema("order", format!("must be 1 or 2, got {}", self.order)));
        }
        if !(self.horizon >= 0.0 && self.horizon.is_finite()) {
            return Err(schema("T", format!("must be finite and >= 0, got {}", self.horizon)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(schema("tol", format!("must be positive, got {}", self.tol)));
        }
        if self.order == 2 && self.g != ForcingSpec::Zero {
            return Err(schema("g", "second-order problems are homogeneous"));
        }
        Ok(())
    }

    pub fn initial(&self) -> Element {
        match &self.v0 {
            Some(v) => Element::Product(vec![self.u0.clone(), v.clone()]),
            None => self.u0.clone(),
        }
    }

    /// Builds the problem. A zero horizon is accepted here (the trajectory
    /// is then just the initial state) and mapped to a unit horizon.
    pub fn to_problem(&self) -> Result<CauchyProblem> {
        let operator = self.operator.build().map_err(|e| schema("operator", e.to_string()))?;
        let horizon = if self.horizon > 0.0 { self.horizon } else { 1.0 };
        let forcing = match &self.g {
            ForcingSpec::Zero => Forcing::Zero,
            ForcingSpec::Const(e) => Forcing::Constant(e.clone()),
        };
        let p = match self.order {
            1 => CauchyProblem::first_order(operator, self.initial(), forcing, horizon, self.tol),
            _ => CauchyProblem::second_order(operator, self.initial(), horizon, self.tol),
        };
        p.map_err(|e| match e {
            Error::SpaceMismatch(m) => schema("u0", m),
            Error::ArityMismatch(a, b) => schema("u0", format!("operator arity {b} vs state arity {a}")),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_config() {
        let text = r#"{"order":1,"operator":{"kind":"matrix","entries":[[1,1],[-1,-1]]},
            "u0":{"tri":[0,1,2]},"v0":{"tri":[1,2,3]},"g":"zero","T":1.0,"tol":1e-8}"#;
        let cfg = ProblemConfig::from_json(text).unwrap();
        assert_eq!(cfg.initial().components().unwrap().len(), 2);
        cfg.to_problem().unwrap();
        let round = serde_json::to_string(&cfg).unwrap();
        ProblemConfig::from_json(&round).unwrap();
    }

    #[test]
    fn const_forcing() {
        let text = r#"{"order":1,"operator":{"kind":"identity"},"u0":{"tri":[0,0,0]},
            "g":{"kind":"const","value":{"tri":[1,1,1]}},"T":1,"tol":1e-6}"#;
        let cfg = ProblemConfig::from_json(text).unwrap();
        assert!(matches!(cfg.g, ForcingSpec::Const(_)));
    }

    #[test]
    fn errors_name_the_path() {
        let bad_tol = r#"{"order":1,"operator":{"kind":"identity"},"u0":{"tri":[0,1,2]},"T":1,"tol":-1}"#;
        assert!(matches!(ProblemConfig::from_json(bad_tol), Err(Error::Schema { path, .. }) if path == "tol"));
        let bad_op = r#"{"order":1,"operator":{"kind":"nope"},"u0":{"tri":[0,1,2]},"T":1,"tol":1}"#;
        let e = ProblemConfig::from_json(bad_op).unwrap_err();
        assert!(matches!(&e, Error::Schema { path, .. } if path.starts_with("operator")), "{e}");
        let extra = r#"{"order":1,"operator":{"kind":"identity"},"u0":{"tri":[0,1,2]},"T":1,"tol":1,"x":0}"#;
        assert!(matches!(ProblemConfig::from_json(extra), Err(Error::Schema { .. })));
        assert!(matches!(ProblemConfig::from_json("{"), Err(Error::Schema { .. })));
        let arity =
            r#"{"order":1,"operator":{"kind":"matrix","entries":[[0,1],[1,0]]},"u0":{"tri":[0,1,2]},"T":1,"tol":1}"#;
        let cfg = ProblemConfig::from_json(arity).unwrap();
        assert!(matches!(cfg.to_problem(), Err(Error::Schema { path, .. }) if path == "u0"));
    }
}
