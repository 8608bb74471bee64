//! JSON documents for systems and assignments. Terms and elements are
//! stored as strings in the text grammars.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::FreeLie;
use crate::poly::Polynomial;
use crate::scalar::Field;

use super::compile::{PolyAssignment, PolyEquation, PolySystem, PolyTerm};
use super::parse::{parse_element, parse_term};
use super::{Assignment, Equation, EquationSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub lhs: String,
    pub rhs: String,
}

/// `{"field": "q", "variables": [...], "equations": [{"lhs": .., "rhs": ..}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySystemDoc {
    #[serde(default = "default_field")]
    pub field: String,
    pub variables: Vec<String>,
    pub equations: Vec<EquationDoc>,
}

/// A Lie system together with the algebra it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSystemDoc {
    #[serde(default = "default_field")]
    pub field: String,
    pub rank: usize,
    pub variables: Vec<String>,
    pub equations: Vec<EquationDoc>,
}

fn default_field() -> String {
    "q".into()
}

fn parse_field(s: &str) -> Result<Field> {
    s.parse()
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Io(format!("invalid JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

impl PolySystemDoc {
    pub fn from_system(p: &PolySystem) -> PolySystemDoc {
        PolySystemDoc {
            field: p.field().to_string(),
            variables: p.variables().to_vec(),
            equations: p
                .equations()
                .iter()
                .map(|e| EquationDoc {
                    lhs: e.lhs.to_string(),
                    rhs: e.rhs.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<PolySystem> {
        let field = parse_field(&self.field)?;
        let equations = self
            .equations
            .iter()
            .map(|e| {
                Ok(PolyEquation {
                    lhs: PolyTerm::parse(field, &e.lhs)?,
                    rhs: PolyTerm::parse(field, &e.rhs)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(field, self.variables.clone(), equations)
    }
}

impl LieSystemDoc {
    pub fn from_system(lie: &FreeLie, s: &EquationSystem) -> LieSystemDoc {
        LieSystemDoc {
            field: lie.field().to_string(),
            rank: lie.rank(),
            variables: s.variables().to_vec(),
            equations: s
                .equations()
                .iter()
                .map(|e| EquationDoc {
                    lhs: e.lhs.to_string(),
                    rhs: e.rhs.to_string(),
                })
                .collect(),
        }
    }

    /// The algebra the document declares.
    pub fn algebra(&self) -> Result<FreeLie> {
        FreeLie::new(self.rank, parse_field(&self.field)?)
    }

    pub fn to_system(&self, lie: &FreeLie) -> Result<EquationSystem> {
        let equations = self
            .equations
            .iter()
            .map(|e| Ok(Equation::new(parse_term(lie, &e.lhs)?, parse_term(lie, &e.rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        EquationSystem::new(self.variables.clone(), equations)
    }
}

/// `{"x": "[b,a]", ...}`
pub fn assignment_to_doc(sigma: &Assignment) -> BTreeMap<String, String> {
    sigma.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

pub fn assignment_from_doc(lie: &FreeLie, doc: &BTreeMap<String, String>) -> Result<Assignment> {
    doc.iter()
        .map(|(k, v)| Ok((k.clone(), parse_element(lie, v)?)))
        .collect()
}

/// `{"u": "t^2 + 1", ...}`
pub fn poly_assignment_to_doc(sigma: &PolyAssignment) -> BTreeMap<String, String> {
    sigma.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

pub fn poly_assignment_from_doc(field: Field, doc: &BTreeMap<String, String>) -> Result<PolyAssignment> {
    doc.iter()
        .map(|(k, v)| Ok((k.clone(), Polynomial::parse(field, v)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqn::compile::compile_poly_system;
    use crate::eqn::phi_system;

    #[test]
    fn poly_system_round_trip() {
        let text = r#"{"variables": ["u", "w"], "equations": [{"lhs": "u*u", "rhs": "w"}]}"#;
        let doc: PolySystemDoc = from_json(text).unwrap();
        let p = doc.to_system().unwrap();
        assert_eq!(p.field(), Field::Rationals);
        let again: PolySystemDoc = from_json(&to_json(&PolySystemDoc::from_system(&p))).unwrap();
        assert_eq!(again.to_system().unwrap(), p);
    }

    #[test]
    fn lie_system_round_trip() {
        let lie = FreeLie::new(3, Field::Rationals).unwrap();
        let p = PolySystem::parse(Field::Rationals, &["v"], &[("v", "t^2 - 1/2")]).unwrap();
        for s in [phi_system(&lie).unwrap(), compile_poly_system(&lie, &p).unwrap().system] {
            let doc = LieSystemDoc::from_system(&lie, &s);
            let back: LieSystemDoc = from_json(&to_json(&doc)).unwrap();
            let l2 = back.algebra().unwrap();
            let s2 = back.to_system(&l2).unwrap();
            assert_eq!(LieSystemDoc::from_system(&l2, &s2), doc);
            let zero = s.variables().iter().map(|v| (v.clone(), lie.zero())).collect();
            let before = crate::eqn::check_system(&lie, &s, &zero).unwrap();
            let after = crate::eqn::check_system(&l2, &s2, &zero).unwrap();
            assert_eq!(before.pass, after.pass);
        }
    }

    #[test]
    fn assignments() {
        let lie = FreeLie::new(3, Field::prime(5).unwrap()).unwrap();
        let sigma: Assignment = [("x".to_string(), parse_element(&lie, "[b,a] + 3*c").unwrap())].into();
        let doc = assignment_to_doc(&sigma);
        assert_eq!(assignment_from_doc(&lie, &doc).unwrap(), sigma);
        assert!(from_json::<PolySystemDoc>("{").is_err());
    }
}
