//! Compiling polynomial systems over `K[t]` into equation systems over `L`.
//!
//! A flat polynomial system has only atoms `v = k`, `v = u + w`, `v = u * w`.
//! Each polynomial variable `v` becomes five Lie variables
//! `x_v, y_v, z_v, z1_v, z2_v` tied by `phi`, so that `x_v` ranges over the
//! code set `X` and `y_v` is its partner with `c` in place of `b`:
//!
//! ```text
//! v = k       [x_v - enc(k), a] = 0
//! v = u + w   [x_u + x_w - x_v, a] = 0
//! v = u * w   [x_u, y_w] = [x_v, c] + [s_i, a]
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::hall::Generator;
use crate::interp::{encode_poly, product_witness, psi_witness};
use crate::lie::FreeLie;
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

use super::{evaluate, phi_system, truncated_solutions, Assignment, Equation, EquationSystem, LieTerm};

/// Values of polynomial variables.
pub type PolyAssignment = BTreeMap<String, Polynomial>;

/// Terms over `K[t]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyTerm {
    Var(String),
    Const(Polynomial),
    Add(Box<PolyTerm>, Box<PolyTerm>),
    Mul(Box<PolyTerm>, Box<PolyTerm>),
}

impl PolyTerm {
    pub fn var(name: impl Into<String>) -> PolyTerm {
        PolyTerm::Var(name.into())
    }

    /// Sum with constant folding.
    pub fn sum(l: PolyTerm, r: PolyTerm) -> PolyTerm {
        match (l, r) {
            (PolyTerm::Const(x), PolyTerm::Const(y)) => PolyTerm::Const(x.add(&y).expect("one field")),
            (l, r) => PolyTerm::Add(Box::new(l), Box::new(r)),
        }
    }

    /// Product with constant folding.
    pub fn product(l: PolyTerm, r: PolyTerm) -> PolyTerm {
        match (l, r) {
            (PolyTerm::Const(x), PolyTerm::Const(y)) => PolyTerm::Const(x.mul(&y).expect("one field")),
            (l, r) => PolyTerm::Mul(Box::new(l), Box::new(r)),
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            PolyTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            PolyTerm::Const(_) => {}
            PolyTerm::Add(l, r) | PolyTerm::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn eval(&self, sigma: &PolyAssignment) -> Result<Polynomial> {
        match self {
            PolyTerm::Var(v) => sigma.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone())),
            PolyTerm::Const(k) => Ok(k.clone()),
            PolyTerm::Add(l, r) => l.eval(sigma)?.add(&r.eval(sigma)?),
            PolyTerm::Mul(l, r) => l.eval(sigma)?.mul(&r.eval(sigma)?),
        }
    }

    /// Parses `+ - * ^`, parentheses, scalars, `t`, and variable names.
    pub fn parse(field: Field, text: &str) -> Result<PolyTerm> {
        let mut p = PolyParser {
            field,
            text,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let t = p.expr()?;
        p.ws();
        if p.pos != p.bytes.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(t)
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyTerm::Add(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for PolyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyTerm::Var(v) => write!(f, "{v}"),
            PolyTerm::Const(k) => {
                let s = k.to_string();
                if s.contains(' ') || s.starts_with('-') {
                    write!(f, "({s})")
                } else {
                    write!(f, "{s}")
                }
            }
            PolyTerm::Add(l, r) => write!(f, "{l} + {r}"),
            PolyTerm::Mul(l, r) => {
                l.fmt_factor(f)?;
                write!(f, "*")?;
                r.fmt_factor(f)
            }
        }
    }
}

struct PolyParser<'a> {
    field: Field,
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyTerm> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = PolyTerm::sum(acc, self.term()?);
            } else if self.eat(b'-') {
                let r = self.term()?;
                acc = PolyTerm::sum(acc, self.negate(r));
            } else {
                return Ok(acc);
            }
        }
    }

    fn negate(&self, t: PolyTerm) -> PolyTerm {
        PolyTerm::product(PolyTerm::Const(Polynomial::from_ints(self.field, &[-1])), t)
    }

    fn term(&mut self) -> Result<PolyTerm> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = PolyTerm::product(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyTerm> {
        if self.eat(b'-') {
            let f = self.factor()?;
            return Ok(self.negate(f));
        }
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let n: usize = self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "expected exponent"))?;
        if n == 0 {
            return Ok(PolyTerm::Const(Polynomial::one(self.field)));
        }
        let mut acc = base.clone();
        for _ in 1..n {
            acc = PolyTerm::product(acc, base.clone());
        }
        Ok(acc)
    }

    fn base(&mut self) -> Result<PolyTerm> {
        self.ws();
        let start = self.pos;
        let Some(&ch) = self.bytes.get(self.pos) else {
            return Err(Error::parse(start, "unexpected end of input"));
        };
        if ch == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(Error::parse(self.pos, "expected `)`"));
            }
            return Ok(e);
        }
        if ch.is_ascii_digit() {
            while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'/') {
                self.pos += 1;
            }
            let c = Scalar::parse(self.field, &self.text[start..self.pos])
                .map_err(|e| Error::parse(start, e.to_string()))?;
            return Ok(PolyTerm::Const(Polynomial::constant(c)));
        }
        if ch.is_ascii_alphabetic() || ch == b'_' {
            while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = &self.text[start..self.pos];
            return Ok(if name == "t" {
                PolyTerm::Const(Polynomial::t(self.field))
            } else {
                PolyTerm::var(name)
            });
        }
        Err(Error::parse(start, format!("unexpected character `{}`", ch as char)))
    }
}

/// `lhs = rhs` over `K[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyEquation {
    pub lhs: PolyTerm,
    pub rhs: PolyTerm,
}

impl fmt::Display for PolyEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// An atomic constraint of a flat system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Const { target: String, value: Polynomial },
    Add { target: String, left: String, right: String },
    Mul { target: String, left: String, right: String },
}

impl Atom {
    fn of(eq: &PolyEquation) -> Option<Atom> {
        let oriented = |v: &PolyTerm, e: &PolyTerm| -> Option<Atom> {
            let PolyTerm::Var(target) = v else { return None };
            let target = target.clone();
            match e {
                PolyTerm::Const(k) => Some(Atom::Const {
                    target,
                    value: k.clone(),
                }),
                PolyTerm::Add(l, r) | PolyTerm::Mul(l, r) => {
                    let (PolyTerm::Var(left), PolyTerm::Var(right)) = (&**l, &**r) else {
                        return None;
                    };
                    let (left, right) = (left.clone(), right.clone());
                    Some(if matches!(e, PolyTerm::Add(..)) {
                        Atom::Add { target, left, right }
                    } else {
                        Atom::Mul { target, left, right }
                    })
                }
                PolyTerm::Var(_) => None,
            }
        };
        oriented(&eq.lhs, &eq.rhs).or_else(|| oriented(&eq.rhs, &eq.lhs))
    }
}

/// Polynomial equations over one field in declared variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    field: Field,
    variables: Vec<String>,
    equations: Vec<PolyEquation>,
}

fn valid_name(v: &str) -> bool {
    let mut chars = v.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && v != "t"
}

impl PolySystem {
    pub fn new(field: Field, variables: Vec<String>, equations: Vec<PolyEquation>) -> Result<PolySystem> {
        let declared: BTreeSet<&String> = variables.iter().collect();
        if declared.len() != variables.len() {
            return Err(Error::parse(0, "duplicate variable declaration"));
        }
        if let Some(bad) = variables.iter().find(|v| !valid_name(v)) {
            return Err(Error::parse(0, format!("invalid variable name `{bad}`")));
        }
        for eq in &equations {
            for side in [&eq.lhs, &eq.rhs] {
                for v in side.variables() {
                    if !declared.contains(&v) {
                        return Err(Error::UnknownVariable(v));
                    }
                }
            }
        }
        Ok(PolySystem {
            field,
            variables,
            equations,
        })
    }

    /// Builds a system from `(lhs, rhs)` strings.
    pub fn parse(field: Field, variables: &[&str], equations: &[(&str, &str)]) -> Result<PolySystem> {
        let eqs = equations
            .iter()
            .map(|(l, r)| {
                Ok(PolyEquation {
                    lhs: PolyTerm::parse(field, l)?,
                    rhs: PolyTerm::parse(field, r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(field, variables.iter().map(|s| s.to_string()).collect(), eqs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[PolyEquation] {
        &self.equations
    }

    pub fn is_flat(&self) -> bool {
        self.equations.iter().all(|e| Atom::of(e).is_some())
    }

    /// The atoms of a flat system.
    pub fn atoms(&self) -> Result<Vec<Atom>> {
        self.equations
            .iter()
            .map(|e| Atom::of(e).ok_or_else(|| Error::Unflattened(e.to_string())))
            .collect()
    }

    /// Whether `sigma` satisfies every equation.
    pub fn is_solution(&self, sigma: &PolyAssignment) -> Result<bool> {
        for e in &self.equations {
            if e.lhs.eval(sigma)? != e.rhs.eval(sigma)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct Flattener {
    field: Field,
    variables: Vec<String>,
    equations: Vec<PolyEquation>,
    counter: usize,
    zero: Option<String>,
}

impl Flattener {
    fn fresh(&mut self) -> String {
        loop {
            self.counter += 1;
            let name = format!("_f{}", self.counter);
            if !self.variables.contains(&name) {
                self.variables.push(name.clone());
                return name;
            }
        }
    }

    fn emit(&mut self, target: &str, rhs: PolyTerm) {
        self.equations.push(PolyEquation {
            lhs: PolyTerm::var(target),
            rhs,
        });
    }

    fn name(&mut self, t: &PolyTerm) -> String {
        if let PolyTerm::Var(v) = t {
            return v.clone();
        }
        let f = self.fresh();
        self.define(&f, t);
        f
    }

    fn define(&mut self, target: &str, t: &PolyTerm) {
        match t {
            PolyTerm::Var(u) => {
                let z = match &self.zero {
                    Some(z) => z.clone(),
                    None => {
                        let z = self.fresh();
                        self.emit(&z, PolyTerm::Const(Polynomial::zero(self.field)));
                        self.zero = Some(z.clone());
                        z
                    }
                };
                self.emit(target, PolyTerm::sum(PolyTerm::var(u), PolyTerm::var(z)));
            }
            PolyTerm::Const(k) => self.emit(target, PolyTerm::Const(k.clone())),
            PolyTerm::Add(l, r) | PolyTerm::Mul(l, r) => {
                let (l, r) = (PolyTerm::var(self.name(l)), PolyTerm::var(self.name(r)));
                let rhs = if matches!(t, PolyTerm::Add(..)) {
                    PolyTerm::Add(Box::new(l), Box::new(r))
                } else {
                    PolyTerm::Mul(Box::new(l), Box::new(r))
                };
                self.emit(target, rhs);
            }
        }
    }
}

/// An equivalent flat system; fresh variables are named `_f1, _f2, ...`.
pub fn flatten(p: &PolySystem) -> PolySystem {
    let mut fl = Flattener {
        field: p.field,
        variables: p.variables.clone(),
        equations: Vec::new(),
        counter: 0,
        zero: None,
    };
    for eq in &p.equations {
        if Atom::of(eq).is_some() {
            fl.equations.push(eq.clone());
        } else if let PolyTerm::Var(v) = &eq.lhs {
            fl.define(v, &eq.rhs);
        } else if let PolyTerm::Var(v) = &eq.rhs {
            fl.define(v, &eq.lhs);
        } else {
            let f = fl.name(&eq.lhs);
            fl.define(&f, &eq.rhs);
        }
    }
    PolySystem {
        field: p.field,
        variables: fl.variables,
        equations: fl.equations,
    }
}

/// Names of the Lie variables attached to a polynomial variable.
pub const ROLES: [&str; 5] = ["x", "y", "z", "z1", "z2"];

pub fn lie_name(role: &str, v: &str) -> String {
    format!("{role}_{v}")
}

fn product_name(i: usize) -> String {
    format!("s_{i}")
}

/// A compiled system together with the data needed to map solutions.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    pub system: EquationSystem,
    pub source: PolySystem,
    pub atoms: Vec<Atom>,
}

/// Compiles a flat polynomial system.
pub fn compile_poly_system(lie: &FreeLie, p: &PolySystem) -> Result<CompiledSystem> {
    lie.require_rank(3)?;
    lie.field().ensure(p.field)?;
    let atoms = p.atoms()?;
    let phi = phi_system(lie)?;
    let mut variables = Vec::new();
    let mut equations = Vec::new();
    for v in &p.variables {
        variables.extend(ROLES.iter().map(|r| lie_name(r, v)));
        for eq in phi.equations() {
            equations.push(Equation::new(rename(&eq.lhs, v), rename(&eq.rhs, v)));
        }
    }
    let x = |v: &str| LieTerm::var(lie_name("x", v));
    let a = || LieTerm::Const(lie.a());
    let zero = || LieTerm::Const(lie.zero());
    let neg = |t: LieTerm| LieTerm::scale(Scalar::from_int(lie.field(), -1), t);
    let mut products = 0;
    for atom in &atoms {
        match atom {
            Atom::Const { target, value } => {
                let enc = encode_poly(lie, value, &Scalar::zero(lie.field()))?.element;
                let diff = LieTerm::Sum(vec![x(target), LieTerm::Const(-enc)]);
                equations.push(Equation::new(LieTerm::bracket(diff, a()), zero()));
            }
            Atom::Add { target, left, right } => {
                let diff = LieTerm::Sum(vec![x(left), x(right), neg(x(target))]);
                equations.push(Equation::new(LieTerm::bracket(diff, a()), zero()));
            }
            Atom::Mul { target, left, right } => {
                products += 1;
                let s = product_name(products);
                variables.push(s.clone());
                equations.push(Equation::new(
                    LieTerm::bracket(x(left), LieTerm::var(lie_name("y", right))),
                    LieTerm::Sum(vec![
                        LieTerm::bracket(x(target), LieTerm::Const(lie.generator(Generator::C)?)),
                        LieTerm::bracket(LieTerm::var(s), a()),
                    ]),
                ));
            }
        }
    }
    Ok(CompiledSystem {
        system: EquationSystem::new(variables, equations)?,
        source: p.clone(),
        atoms,
    })
}

fn rename(t: &LieTerm, v: &str) -> LieTerm {
    match t {
        LieTerm::Var(r) => LieTerm::Var(lie_name(r, v)),
        LieTerm::Const(_) => t.clone(),
        LieTerm::Bracket(l, r) => LieTerm::bracket(rename(l, v), rename(r, v)),
        LieTerm::Sum(ts) => LieTerm::Sum(ts.iter().map(|t| rename(t, v)).collect()),
        LieTerm::Scale(c, t) => LieTerm::scale(c.clone(), rename(t, v)),
    }
}

impl CompiledSystem {
    /// Extends `sigma` to every variable of the flat system by evaluating
    /// the atoms whose target is unbound.
    pub fn complete(&self, sigma: &PolyAssignment) -> Result<PolyAssignment> {
        let mut full = sigma.clone();
        loop {
            let mut progress = false;
            for atom in &self.atoms {
                let (target, value) = match atom {
                    Atom::Const { target, value } => (target, Some(value.clone())),
                    Atom::Add { target, left, right } | Atom::Mul { target, left, right } => {
                        let v = match (full.get(left), full.get(right)) {
                            (Some(l), Some(r)) if matches!(atom, Atom::Add { .. }) => Some(l.add(r)?),
                            (Some(l), Some(r)) => Some(l.mul(r)?),
                            _ => None,
                        };
                        (target, v)
                    }
                };
                if let (false, Some(v)) = (full.contains_key(target), value) {
                    full.insert(target.clone(), v);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        if let Some(v) = self.source.variables.iter().find(|v| !full.contains_key(*v)) {
            return Err(Error::UnboundVariable(v.clone()));
        }
        Ok(full)
    }

    /// The encodings `x_v, y_v` of `sigma`, without auxiliaries.
    pub fn encode_values(&self, lie: &FreeLie, sigma: &PolyAssignment) -> Result<Assignment> {
        let full = self.complete(sigma)?;
        let zero = Scalar::zero(lie.field());
        let mut out = Assignment::new();
        for v in &self.source.variables {
            let f = &full[v];
            let c = crate::interp::even_action(lie, Generator::C, f)?;
            out.insert(lie_name("x", v), encode_poly(lie, f, &zero)?.element);
            out.insert(lie_name("y", v), c);
        }
        Ok(out)
    }

    /// Encodes `sigma` and fills in all auxiliaries by the witness
    /// constructions. The result satisfies the system when `sigma` solves
    /// the source system.
    pub fn map_solution(&self, lie: &FreeLie, sigma: &PolyAssignment) -> Result<Assignment> {
        let full = self.complete(sigma)?;
        let zero = Scalar::zero(lie.field());
        let mut out = Assignment::new();
        for v in &self.source.variables {
            let w = psi_witness(lie, &full[v], &zero, &zero)?;
            for (role, e) in ROLES.iter().zip([w.x, w.y, w.z, w.z1, w.z2]) {
                out.insert(lie_name(role, v), e);
            }
        }
        let mut products = 0;
        for atom in &self.atoms {
            if let Atom::Mul { left, right, .. } = atom {
                products += 1;
                out.insert(product_name(products), product_witness(lie, &full[left], &full[right])?);
            }
        }
        Ok(out)
    }

    /// Whether auxiliaries exist making the system true at the encodings of
    /// `sigma`. Each auxiliary `w` occurs only as `[w, a]` in a single
    /// equation, so solving through the residual degree is exact.
    pub fn auxiliaries_exist(&self, lie: &FreeLie, sigma: &PolyAssignment) -> Result<bool> {
        let bound = self.encode_values(lie, sigma)?;
        let reduced = self.system.substitute(&bound);
        let zero: Assignment = reduced
            .variables()
            .iter()
            .map(|v| (v.clone(), lie.zero()))
            .collect();
        let mut degree = 1;
        for eq in reduced.equations() {
            let r = evaluate(lie, &eq.lhs, &zero)?.checked_sub(&evaluate(lie, &eq.rhs, &zero)?)?;
            if eq.lhs.variables().is_empty() && eq.rhs.variables().is_empty() && !r.is_zero() {
                return Ok(false);
            }
            degree = degree.max(r.degree().saturating_sub(1));
        }
        Ok(truncated_solutions(lie, &reduced, degree)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqn::check_system;

    const Q: Field = Field::Rationals;

    fn lie() -> FreeLie {
        FreeLie::new(3, Q).unwrap()
    }

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(Q, s).unwrap()
    }

    fn sigma(pairs: &[(&str, &str)]) -> PolyAssignment {
        pairs.iter().map(|(k, v)| (k.to_string(), poly(v))).collect()
    }

    #[test]
    fn parse_and_print() {
        let t = PolyTerm::parse(Q, "u*(v + t^2 - 1) + 2*t*3").unwrap();
        assert_eq!(t.to_string(), "u*(v + t^2 + (-1)) + 6*t");
        assert_eq!(PolyTerm::parse(Q, &t.to_string()).unwrap(), t);
        assert_eq!(PolyTerm::parse(Q, "u^3").unwrap().to_string(), "u*u*u");
        assert_eq!(PolyTerm::parse(Q, "(t+1)^2").unwrap(), PolyTerm::Const(poly("t^2 + 2*t + 1")));
        assert!(PolyTerm::parse(Q, "u +").is_err());
        assert!(PolyTerm::parse(Q, "u ? v").is_err());
    }

    #[test]
    fn flatten_preserves_solutions() {
        let p = PolySystem::parse(Q, &["u", "v"], &[("u*u + v", "t^2 + 3"), ("u", "v")]).unwrap();
        assert!(!p.is_flat());
        let f = flatten(&p);
        assert!(f.is_flat());
        let l = lie();
        let c = compile_poly_system(&l, &f).unwrap();
        let good = c.complete(&sigma(&[("u", "t"), ("v", "t")]));
        // u = v = t is not a solution (t^2 + t != t^2 + 3), but completion still works
        assert!(!f.is_solution(&good.unwrap()).unwrap());
        assert!(compile_poly_system(&l, &p).is_err());
    }

    #[test]
    fn pin_to_constant() {
        let l = lie();
        let p = PolySystem::parse(Q, &["v"], &[("v", "t")]).unwrap();
        let c = compile_poly_system(&l, &p).unwrap();
        let s = c.map_solution(&l, &sigma(&[("v", "t")])).unwrap();
        assert!(check_system(&l, &c.system, &s).unwrap().pass);
        let wrong = c.map_solution(&l, &sigma(&[("v", "t^2")])).unwrap();
        assert!(!check_system(&l, &c.system, &wrong).unwrap().pass);
        assert!(!c.auxiliaries_exist(&l, &sigma(&[("v", "t^2")])).unwrap());
        assert!(c.auxiliaries_exist(&l, &sigma(&[("v", "t")])).unwrap());
    }

    #[test]
    fn square() {
        let l = lie();
        let p = PolySystem::parse(Q, &["u", "w"], &[("u*u", "w")]).unwrap();
        assert!(p.is_flat());
        let c = compile_poly_system(&l, &p).unwrap();
        let good = sigma(&[("u", "t"), ("w", "t^2")]);
        let s = c.map_solution(&l, &good).unwrap();
        assert!(check_system(&l, &c.system, &s).unwrap().pass);
        assert!(c.auxiliaries_exist(&l, &good).unwrap());
        let bad = sigma(&[("u", "t"), ("w", "t^2 + 1")]);
        let s = c.map_solution(&l, &bad).unwrap();
        assert!(!check_system(&l, &c.system, &s).unwrap().pass);
        assert!(!c.auxiliaries_exist(&l, &bad).unwrap());
    }

    #[test]
    fn empty_and_unit() {
        let l = lie();
        let p = PolySystem::parse(Q, &[], &[]).unwrap();
        let c = compile_poly_system(&l, &p).unwrap();
        assert!(c.map_solution(&l, &PolyAssignment::new()).unwrap().is_empty());
        let p = PolySystem::parse(Q, &["u"], &[("u", "1")]).unwrap();
        let c = compile_poly_system(&l, &p).unwrap();
        let s = c.map_solution(&l, &sigma(&[("u", "1")])).unwrap();
        assert_eq!(s["x_u"], l.b());
        assert!(check_system(&l, &c.system, &s).unwrap().pass);
    }
}
