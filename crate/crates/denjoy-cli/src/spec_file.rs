//! Action specification files.
//!
//! A structured TOML document describes one action: the dimension, the
//! exact angle expressions, optional blown-up orbits (base point plus a
//! named gap-length family and its parameters), and optional precision
//! settings. The canonical serialization renders every expression in the
//! canonical form, so write-then-parse round-trips bit-exactly.

use denjoy_core::expr::{parse_real, render_real};
use denjoy_core::interval::Resources;
use denjoy_core::{BlowUpData, DenjoyAction, Error, GapFamily, RotationVector};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "denjoy-action/v1";

/// The on-disk document shape.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ActionSpecDocument {
    pub schema: String,
    pub d: usize,
    /// Angle expressions (`"sqrt(2) - 1"`, `"3/7"`, ...), one per
    /// generator.
    pub gamma: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blowup: Vec<BlowUpSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<PrecisionSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BlowUpSpec {
    /// Base point expression, reduced mod 1.
    pub base: String,
    /// Length family name; currently `"geometric"`.
    pub family: String,
    /// Scale parameter `c > 0`.
    pub c: String,
    /// Ratio parameter `0 < lambda < 1`.
    pub lambda: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PrecisionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_precision_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enum_budget: Option<u64>,
}

impl ActionSpecDocument {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let doc: ActionSpecDocument = toml::from_str(text)
            .map_err(|e| Error::Invalid(format!("spec file: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Invalid(format!(
                "spec file: unknown schema {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// Builds the action, validating everything.
    pub fn build(&self) -> Result<DenjoyAction, Error> {
        if self.gamma.len() != self.d {
            return Err(Error::Invalid(format!(
                "spec file: d = {} but {} gamma expressions",
                self.d,
                self.gamma.len()
            )));
        }
        let gammas = self
            .gamma
            .iter()
            .map(|g| parse_real(g))
            .collect::<Result<Vec<_>, _>>()?;
        let rho = RotationVector::new(gammas)?;
        let mut blowups = Vec::with_capacity(self.blowup.len());
        for b in &self.blowup {
            if b.family != "geometric" {
                return Err(Error::Invalid(format!(
                    "spec file: unknown gap family {:?}",
                    b.family
                )));
            }
            let base = denjoy_core::normalize(&parse_real(&b.base)?)?;
            let c = rational_param(&b.c, "c")?;
            let lambda = rational_param(&b.lambda, "lambda")?;
            blowups.push(BlowUpData::new(base, GapFamily::geometric(c, lambda)?)?);
        }
        DenjoyAction::new(rho, blowups)
    }

    /// Resources from the document's precision block over the defaults.
    pub fn resources(&self, overrides: &ResourceOverrides) -> Resources {
        let mut res = Resources::default();
        if let Some(p) = &self.precision {
            if let Some(b) = p.precision_bits {
                res.precision_bits = b;
            }
            if let Some(b) = p.max_precision_bits {
                res.max_precision_bits = b;
            }
            if let Some(b) = p.enum_budget {
                res.enum_budget = b;
            }
        }
        overrides.apply(res)
    }

    /// The canonical form: every expression re-rendered canonically,
    /// field order fixed by the struct.
    pub fn canonicalize(&self) -> Result<ActionSpecDocument, Error> {
        let gamma = self
            .gamma
            .iter()
            .map(|g| Ok(render_real(&parse_real(g)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let blowup = self
            .blowup
            .iter()
            .map(|b| {
                Ok(BlowUpSpec {
                    base: render_real(
                        denjoy_core::normalize(&parse_real(&b.base)?)?.value(),
                    ),
                    family: b.family.clone(),
                    c: render_real(&parse_real(&b.c)?),
                    lambda: render_real(&parse_real(&b.lambda)?),
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(ActionSpecDocument {
            schema: self.schema.clone(),
            d: self.d,
            gamma,
            blowup,
            precision: self.precision.clone(),
        })
    }

    pub fn to_canonical_string(&self) -> Result<String, Error> {
        let canonical = self.canonicalize()?;
        toml::to_string(&canonical).map_err(|e| Error::Invalid(format!("serialize: {e}")))
    }
}

fn rational_param(text: &str, name: &str) -> Result<BigRational, Error> {
    parse_real(text)?
        .as_rational()
        .ok_or_else(|| Error::Invalid(format!("spec file: {name} must be rational")))
}

/// Command-line precision overrides, applied over file settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct ResourceOverrides {
    pub precision_bits: Option<u32>,
    pub max_precision_bits: Option<u32>,
    pub enum_budget: Option<u64>,
}

impl ResourceOverrides {
    pub fn apply(&self, mut res: Resources) -> Resources {
        if let Some(b) = self.precision_bits {
            res.precision_bits = b;
        }
        if let Some(b) = self.max_precision_bits {
            res.max_precision_bits = b;
        }
        if let Some(b) = self.enum_budget {
            res.enum_budget = b;
        }
        res
    }
}

/// A ready-to-use d=2 example document (the worked example family).
pub fn example_document() -> ActionSpecDocument {
    ActionSpecDocument {
        schema: SCHEMA.to_string(),
        d: 2,
        gamma: vec!["sqrt(2) - 1".to_string(), "sqrt(3) - 1".to_string()],
        blowup: vec![BlowUpSpec {
            base: "0".to_string(),
            family: "geometric".to_string(),
            c: "1/4".to_string(),
            lambda: "1/2".to_string(),
        }],
        precision: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let doc = example_document();
        let text = doc.to_canonical_string().unwrap();
        let parsed = ActionSpecDocument::parse(&text).unwrap();
        assert_eq!(parsed.to_canonical_string().unwrap(), text);
        parsed.build().unwrap();
    }

    #[test]
    fn non_canonical_input_canonicalizes() {
        let text = r#"
schema = "denjoy-action/v1"
d = 1
gamma = ["sqrt(8) - 2"]

[[blowup]]
base = "0.5"
family = "geometric"
c = "0.25"
lambda = "2/4"
"#;
        let doc = ActionSpecDocument::parse(text).unwrap();
        let canon = doc.canonicalize().unwrap();
        assert_eq!(canon.gamma[0], "-2 + 2*sqrt(2)");
        assert_eq!(canon.blowup[0].base, "1/2");
        assert_eq!(canon.blowup[0].lambda, "1/2");
        doc.build().unwrap();
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(ActionSpecDocument::parse("schema = \"nope\"").is_err());
        let mismatched = ActionSpecDocument {
            d: 2,
            ..example_document()
        };
        let mut doc = mismatched;
        doc.gamma.pop();
        assert!(doc.build().is_err());
    }
}
