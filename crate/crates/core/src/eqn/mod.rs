//! Equations over the free Lie algebra: terms with variables, systems,
//! evaluation, the truncated-degree exact solver, and the compiler from
//! polynomial systems over `K[t]`.

pub mod compile;
pub mod doc;
pub mod kernel;
pub mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{FreeLie, LieElement};
use crate::scalar::Scalar;

pub use compile::{compile_poly_system, flatten, CompiledSystem, PolySystem, PolyTerm};
pub use kernel::{project, truncated_kernel, truncated_solutions, AffineSet, SubspaceBasis};
pub use parse::parse_term;

/// Values for named variables.
pub type Assignment = BTreeMap<String, LieElement>;

/// A term over the free Lie algebra with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieTerm {
    Var(String),
    Const(LieElement),
    Bracket(Box<LieTerm>, Box<LieTerm>),
    Sum(Vec<LieTerm>),
    Scale(Scalar, Box<LieTerm>),
}

impl LieTerm {
    pub fn var(name: impl Into<String>) -> LieTerm {
        LieTerm::Var(name.into())
    }

    pub fn bracket(l: LieTerm, r: LieTerm) -> LieTerm {
        LieTerm::Bracket(Box::new(l), Box::new(r))
    }

    pub fn scale(c: Scalar, t: LieTerm) -> LieTerm {
        LieTerm::Scale(c, Box::new(t))
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_vars(&mut seen, &mut out);
        out
    }

    fn collect_vars(&self, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
        match self {
            LieTerm::Var(v) => {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
            LieTerm::Const(_) => {}
            LieTerm::Bracket(l, r) => {
                l.collect_vars(seen, out);
                r.collect_vars(seen, out);
            }
            LieTerm::Sum(parts) => parts.iter().for_each(|p| p.collect_vars(seen, out)),
            LieTerm::Scale(_, t) => t.collect_vars(seen, out),
        }
    }

    /// Number of variable occurrences along the worst bracket path; errors
    /// when a bracket has variables on both sides.
    pub(crate) fn variable_degree(&self) -> Result<u32> {
        match self {
            LieTerm::Var(_) => Ok(1),
            LieTerm::Const(_) => Ok(0),
            LieTerm::Bracket(l, r) => {
                let (dl, dr) = (l.variable_degree()?, r.variable_degree()?);
                if dl > 0 && dr > 0 {
                    return Err(Error::Nonlinear(self.to_string()));
                }
                Ok(dl + dr)
            }
            LieTerm::Sum(parts) => parts
                .iter()
                .map(LieTerm::variable_degree)
                .try_fold(0, |m, d| d.map(|d| m.max(d))),
            LieTerm::Scale(_, t) => t.variable_degree(),
        }
    }

    /// Replaces the variables bound in `sigma` by constants.
    pub fn substitute(&self, sigma: &Assignment) -> LieTerm {
        match self {
            LieTerm::Var(v) => match sigma.get(v) {
                Some(e) => LieTerm::Const(e.clone()),
                None => self.clone(),
            },
            LieTerm::Const(_) => self.clone(),
            LieTerm::Bracket(l, r) => LieTerm::bracket(l.substitute(sigma), r.substitute(sigma)),
            LieTerm::Sum(parts) => LieTerm::Sum(parts.iter().map(|p| p.substitute(sigma)).collect()),
            LieTerm::Scale(c, t) => LieTerm::scale(c.clone(), t.substitute(sigma)),
        }
    }

    fn is_compound(&self) -> bool {
        match self {
            LieTerm::Sum(parts) => parts.len() > 1,
            LieTerm::Const(e) => e.len() > 1,
            _ => false,
        }
    }
}

impl fmt::Display for LieTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTerm::Var(v) => write!(f, "{v}"),
            LieTerm::Const(e) => write!(f, "{e}"),
            LieTerm::Bracket(l, r) => write!(f, "[{l},{r}]"),
            LieTerm::Sum(parts) => {
                if parts.is_empty() {
                    return write!(f, "0");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            LieTerm::Scale(c, t) => {
                if t.is_compound() {
                    write!(f, "{c}*({t})")
                } else {
                    write!(f, "{c}*{t}")
                }
            }
        }
    }
}

/// Evaluates `t` under `sigma`.
pub fn evaluate(lie: &FreeLie, t: &LieTerm, sigma: &Assignment) -> Result<LieElement> {
    match t {
        LieTerm::Var(v) => {
            let e = sigma.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            lie.check(e)?;
            Ok(e.clone())
        }
        LieTerm::Const(e) => {
            lie.check(e)?;
            Ok(e.clone())
        }
        LieTerm::Bracket(l, r) => lie.bracket(&evaluate(lie, l, sigma)?, &evaluate(lie, r, sigma)?),
        LieTerm::Sum(parts) => parts
            .iter()
            .try_fold(lie.zero(), |acc, p| acc.checked_add(&evaluate(lie, p, sigma)?)),
        LieTerm::Scale(c, inner) => evaluate(lie, inner, sigma)?.scale(c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: LieTerm,
    pub rhs: LieTerm,
}

impl Equation {
    pub fn new(lhs: LieTerm, rhs: LieTerm) -> Equation {
        Equation { lhs, rhs }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A finite conjunction of equations in declared variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    variables: Vec<String>,
    equations: Vec<Equation>,
}

impl EquationSystem {
    pub fn new(variables: Vec<String>, equations: Vec<Equation>) -> Result<EquationSystem> {
        let declared: BTreeSet<&String> = variables.iter().collect();
        if declared.len() != variables.len() {
            return Err(Error::Parse {
                offset: 0,
                message: "duplicate variable declaration".into(),
            });
        }
        for eq in &equations {
            for v in eq.lhs.variables().into_iter().chain(eq.rhs.variables()) {
                if !declared.contains(&v) {
                    return Err(Error::UnknownVariable(v));
                }
            }
        }
        Ok(EquationSystem {
            variables,
            equations,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Binds the variables in `sigma` and drops them from the declaration.
    pub fn substitute(&self, sigma: &Assignment) -> EquationSystem {
        EquationSystem {
            variables: self
                .variables
                .iter()
                .filter(|v| !sigma.contains_key(*v))
                .cloned()
                .collect(),
            equations: self
                .equations
                .iter()
                .map(|e| Equation::new(e.lhs.substitute(sigma), e.rhs.substitute(sigma)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    pub equation: String,
    pub residual: LieElement,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    pub equations: Vec<EquationReport>,
    pub pass: bool,
}

impl fmt::Display for SystemReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.equations.iter().enumerate() {
            let status = if r.pass { "ok" } else { "FAIL" };
            writeln!(f, "{i:>3} {status:<4} {}", r.equation)?;
            if !r.pass {
                writeln!(f, "    residual: {}", r.residual)?;
            }
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Residual `lhs - rhs` of every equation under `sigma`.
pub fn check_system(lie: &FreeLie, system: &EquationSystem, sigma: &Assignment) -> Result<SystemReport> {
    for v in &system.variables {
        if !sigma.contains_key(v) {
            return Err(Error::UnboundVariable(v.clone()));
        }
    }
    let mut equations = Vec::with_capacity(system.equations.len());
    for eq in &system.equations {
        let residual = evaluate(lie, &eq.lhs, sigma)?.checked_sub(&evaluate(lie, &eq.rhs, sigma)?)?;
        equations.push(EquationReport {
            equation: eq.to_string(),
            pass: residual.is_zero(),
            residual,
        });
    }
    let pass = equations.iter().all(|r| r.pass);
    Ok(SystemReport { equations, pass })
}

/// The system `[x,c] + [y,b] = [z,a]`, `[x,b] = [z1,a]`, `[y,c] = [z2,a]`.
pub fn phi_system(lie: &FreeLie) -> Result<EquationSystem> {
    lie.require_rank(3)?;
    let eq = |l: &str, r: &str| -> Result<Equation> {
        Ok(Equation::new(parse_term(lie, l)?, parse_term(lie, r)?))
    };
    EquationSystem::new(
        ["x", "y", "z", "z1", "z2"].iter().map(|s| s.to_string()).collect(),
        vec![
            eq("[x,c] + [y,b]", "[z,a]")?,
            eq("[x,b]", "[z1,a]")?,
            eq("[y,c]", "[z2,a]")?,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn lie() -> FreeLie {
        FreeLie::new(3, Field::Rationals).unwrap()
    }

    fn sigma(pairs: &[(&str, LieElement)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn evaluate_examples() {
        let l = lie();
        let t = parse_term(&l, "[x,a]").unwrap();
        let got = evaluate(&l, &t, &sigma(&[("x", l.b())])).unwrap();
        assert_eq!(got.to_string(), "[b,a]");

        let t = parse_term(&l, "x + -1*x").unwrap();
        let ba = l.bracket(&l.b(), &l.a()).unwrap();
        assert!(evaluate(&l, &t, &sigma(&[("x", ba)])).unwrap().is_zero());

        let t = parse_term(&l, "[x,c] + [y,b]").unwrap();
        assert!(evaluate(&l, &t, &sigma(&[("x", l.b()), ("y", l.c())])).unwrap().is_zero());

        assert_eq!(
            evaluate(&l, &t, &sigma(&[("x", l.b())])),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn check_system_examples() {
        let l = lie();
        let phi = phi_system(&l).unwrap();
        let zeros: Assignment = phi.variables().iter().map(|v| (v.clone(), l.zero())).collect();
        assert!(check_system(&l, &phi, &zeros).unwrap().pass);

        let sys = EquationSystem::new(
            vec!["x".into()],
            vec![Equation::new(parse_term(&l, "[x,a]").unwrap(), parse_term(&l, "0").unwrap())],
        )
        .unwrap();
        let report = check_system(&l, &sys, &sigma(&[("x", l.b())])).unwrap();
        assert!(!report.pass);
        assert_eq!(report.equations[0].residual.to_string(), "[b,a]");
        assert!(check_system(&l, &sys, &Assignment::new()).is_err());
    }

    #[test]
    fn undeclared_variables_are_rejected() {
        let l = lie();
        let eq = Equation::new(parse_term(&l, "[x,a]").unwrap(), parse_term(&l, "y").unwrap());
        assert_eq!(
            EquationSystem::new(vec!["x".into()], vec![eq]),
            Err(Error::UnknownVariable("y".into()))
        );
    }

    #[test]
    fn linearity_detection() {
        let l = lie();
        assert_eq!(parse_term(&l, "[x,a] + [b,c]").unwrap().variable_degree(), Ok(1));
        assert_eq!(parse_term(&l, "[a,b]").unwrap().variable_degree(), Ok(0));
        assert!(parse_term(&l, "[x,y]").unwrap().variable_degree().is_err());
        assert!(parse_term(&l, "[[x,a],2*(y + b)]").unwrap().variable_degree().is_err());
    }
}
