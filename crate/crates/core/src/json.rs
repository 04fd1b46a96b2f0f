//! JSON form of elements: the generator order plus one record per basis
//! monomial, with the coefficient in its printed form.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Gen};
use crate::syntax::{parse_scalar, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error("coefficient {text:?}: {source}")]
    Coefficient { text: String, source: ParseError },
    #[error("generator order {0:?} does not match this build")]
    GeneratorOrder(Vec<String>),
    #[error("monomial {0:?} has both xp and xm")]
    InvalidMonomial([u32; 5]),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub exponents: [u32; 5],
    pub coefficient: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ElementJson {
    pub generators: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&Element> for ElementJson {
    fn from(e: &Element) -> Self {
        ElementJson {
            generators: Gen::ALL.iter().map(|g| g.name().to_string()).collect(),
            terms: e
                .terms()
                .map(|(m, c)| TermJson {
                    exponents: *m,
                    coefficient: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementJson> for Element {
    type Error = JsonError;

    fn try_from(j: &ElementJson) -> Result<Element, JsonError> {
        let names: Vec<&str> = Gen::ALL.iter().map(|g| g.name()).collect();
        if j.generators != names {
            return Err(JsonError::GeneratorOrder(j.generators.clone()));
        }
        let mut out = Element::zero();
        for t in &j.terms {
            if t.exponents[2] > 0 && t.exponents[4] > 0 {
                return Err(JsonError::InvalidMonomial(t.exponents));
            }
            let c = parse_scalar(&t.coefficient).map_err(|source| JsonError::Coefficient {
                text: t.coefficient.clone(),
                source,
            })?;
            out.add_term(t.exponents, &c);
        }
        Ok(out)
    }
}

pub fn to_json(e: &Element) -> serde_json::Value {
    serde_json::to_value(ElementJson::from(e)).expect("plain data serializes")
}

pub fn to_json_string(e: &Element) -> String {
    serde_json::to_string(&ElementJson::from(e)).expect("plain data serializes")
}

pub fn from_json_str(s: &str) -> Result<Element, JsonError> {
    let j: ElementJson = serde_json::from_str(s)?;
    Element::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{lambda, Scalar};

    #[test]
    fn round_trip_is_exact() {
        let e = &(&Element::x_minus() * &Element::x_plus()).scale(&lambda())
            + &Element::xi_plus().scale(&Scalar::m());
        let s = to_json_string(&e);
        assert_eq!(from_json_str(&s).unwrap(), e);
        assert_eq!(to_json_string(&from_json_str(&s).unwrap()), s);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = r#"{"generators":["xip","xim","xp","x30","xm"],"terms":[{"exponents":[0,0,1,0,1],"coefficient":"1"}]}"#;
        assert!(matches!(
            from_json_str(bad),
            Err(JsonError::InvalidMonomial(_))
        ));
        let bad = r#"{"generators":["xip","xim","xp","x30","xm"],"terms":[{"exponents":[0,0,1,0,0],"coefficient":"x0"}]}"#;
        assert!(matches!(
            from_json_str(bad),
            Err(JsonError::Coefficient { .. })
        ));
        assert!(matches!(
            from_json_str(r#"{"generators":[],"terms":[]}"#),
            Err(JsonError::GeneratorOrder(_))
        ));
    }
}
