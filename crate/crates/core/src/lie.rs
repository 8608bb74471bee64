//! Normal-form arithmetic in the free Lie algebra.
//!
//! Elements are stored in Hall coordinates. Brackets of two Hall monomials
//! are rewritten into Hall coordinates with
//!
//! ```text
//! [e, e]          = 0
//! [e, f]          = -[f, e]                     if e < f
//! [e, f]          is Hall                       if e > f and (e is a leaf or e2 <= f)
//! [[e1, e2], f]   = [[e1, f], e2] + [e1, [e2, f]]   otherwise (e2 > f)
//! ```
//!
//! The structure constants are integers, so the memo table is shared by all
//! coefficient fields and stores `BigInt` coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hall::{hall_pair, Generator, HallIndex, Monomial, Multidegree};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

pub const DEFAULT_DEGREE_CAP: u32 = 24;

type IntCombination = Arc<Vec<(Monomial, BigInt)>>;

/// An element of the free Lie algebra: a finite combination of Hall
/// monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LieElement {
    pub fn zero(field: Field) -> LieElement {
        LieElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// `c * m` for a Hall monomial `m`.
    pub fn monomial(m: Monomial, c: Scalar) -> LieElement {
        debug_assert!(crate::hall::is_hall(&m), "{m} is not a Hall monomial");
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LieElement { field, terms }
    }

    pub(crate) fn from_map(field: Field, mut terms: BTreeMap<Monomial, Scalar>) -> LieElement {
        terms.retain(|_, c| !c.is_zero());
        LieElement { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending Hall order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Largest degree among the terms; 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &LieElement) -> Result<LieElement> {
        self.field.ensure(other.field)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(x) => *x = &*x + c,
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(LieElement::from_map(self.field, terms))
    }

    pub fn checked_sub(&self, other: &LieElement) -> Result<LieElement> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, alpha: &Scalar) -> Result<LieElement> {
        self.field.ensure(alpha.field())?;
        Ok(LieElement::from_map(
            self.field,
            self.terms.iter().map(|(m, c)| (m.clone(), c * alpha)).collect(),
        ))
    }

    /// Drops every term of degree `> max_degree`.
    pub fn truncate(&self, max_degree: u32) -> LieElement {
        LieElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into poly-homogeneous parts keyed by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<Multidegree, LieElement> {
        let mut out: BTreeMap<Multidegree, LieElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree().clone())
                .or_insert_with(|| LieElement::zero(self.field))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn max_generator(&self) -> Option<Generator> {
        self.terms.keys().map(Monomial::max_generator).max()
    }
}

impl fmt::Display for LieElement {
    /// Highest Hall monomial first; coefficient 1 is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

impl Add<&LieElement> for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        self.checked_add(rhs).expect("Lie elements over different fields")
    }
}

impl Sub<&LieElement> for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self.checked_sub(rhs).expect("Lie elements over different fields")
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        &self + &rhs
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        &self - &rhs
    }
}

/// A bracket expression over the generators with scalar weights.
#[derive(Clone, Debug)]
pub enum Tree {
    Gen(Generator),
    Bracket(Box<Tree>, Box<Tree>),
    Sum(Vec<Tree>),
    Scale(Scalar, Box<Tree>),
}

impl Tree {
    pub fn gen(i: usize) -> Tree {
        Tree::Gen(Generator(i))
    }

    pub fn bracket(l: Tree, r: Tree) -> Tree {
        Tree::Bracket(Box::new(l), Box::new(r))
    }

    pub fn scale(c: Scalar, t: Tree) -> Tree {
        Tree::Scale(c, Box::new(t))
    }
}

/// The free Lie algebra of a given rank over a given field.
///
/// Holds a memo table of monomial brackets. The table is a pure cache and
/// may be shared across threads.
pub struct FreeLie {
    rank: usize,
    field: Field,
    degree_cap: u32,
    memo: Mutex<HashMap<(Monomial, Monomial), IntCombination>>,
    index: Mutex<HallIndex>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLie")
            .field("rank", &self.rank)
            .field("field", &self.field)
            .field("degree_cap", &self.degree_cap)
            .finish()
    }
}

impl FreeLie {
    pub fn new(rank: usize, field: Field) -> Result<FreeLie> {
        if rank < 2 {
            return Err(Error::RankTooSmall { rank, needed: 2 });
        }
        Ok(FreeLie {
            rank,
            field,
            degree_cap: DEFAULT_DEGREE_CAP,
            memo: Mutex::new(HashMap::new()),
            index: Mutex::new(HallIndex::new()),
        })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> FreeLie {
        self.degree_cap = cap;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn require_rank(&self, needed: usize) -> Result<()> {
        if self.rank < needed {
            Err(Error::RankTooSmall {
                rank: self.rank,
                needed,
            })
        } else {
            Ok(())
        }
    }

    /// Hall monomials of multidegree `md`, ascending.
    pub fn hall_monomials(&self, md: &Multidegree) -> Arc<Vec<Monomial>> {
        self.index.lock().expect("index lock").of_multidegree(md)
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zero(self.field)
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_int(self.field, n)
    }

    pub fn generator(&self, g: Generator) -> Result<LieElement> {
        if g.0 >= self.rank {
            return Err(Error::GeneratorOutOfRange {
                index: g.0,
                rank: self.rank,
            });
        }
        Ok(LieElement::monomial(Monomial::leaf(g), Scalar::one(self.field)))
    }

    /// Generator `i`; panics when `i >= rank`.
    pub fn gen(&self, i: usize) -> LieElement {
        self.generator(Generator(i)).expect("generator in range")
    }

    pub fn a(&self) -> LieElement {
        self.gen(0)
    }

    pub fn b(&self) -> LieElement {
        self.gen(1)
    }

    pub fn c(&self) -> LieElement {
        self.gen(2)
    }

    /// Checks that `u` lives in this algebra.
    pub fn check(&self, u: &LieElement) -> Result<()> {
        self.field.ensure(u.field)?;
        if let Some(g) = u.max_generator() {
            if g.0 >= self.rank {
                return Err(Error::GeneratorOutOfRange {
                    index: g.0,
                    rank: self.rank,
                });
            }
        }
        Ok(())
    }

    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> Result<LieElement> {
        self.check(u)?;
        self.check(v)?;
        if u.is_zero() || v.is_zero() {
            return Ok(self.zero());
        }
        let degree = u.degree() + v.degree();
        if degree > self.degree_cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.degree_cap,
            });
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (e, x) in &u.terms {
            for (f, y) in &v.terms {
                let xy = x * y;
                for (m, k) in self.bracket_monomials(e, f).iter() {
                    let term = &xy * &Scalar::from_bigint(self.field, k);
                    match acc.get_mut(m) {
                        Some(s) => *s = &*s + &term,
                        None => {
                            acc.insert(m.clone(), term);
                        }
                    }
                }
            }
        }
        Ok(LieElement::from_map(self.field, acc))
    }

    /// Integer Hall coordinates of `[e, f]` for Hall monomials `e`, `f`.
    pub fn bracket_monomials(&self, e: &Monomial, f: &Monomial) -> IntCombination {
        let key = (e.clone(), f.clone());
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let result = self.rewrite(e, f);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, result.clone());
        result
    }

    fn rewrite(&self, e: &Monomial, f: &Monomial) -> IntCombination {
        if e == f {
            return Arc::new(Vec::new());
        }
        if e < f {
            let swapped = self.bracket_monomials(f, e);
            return Arc::new(swapped.iter().map(|(m, k)| (m.clone(), -k)).collect());
        }
        if hall_pair(e, f) {
            return Arc::new(vec![(Monomial::bracket(e, f), BigInt::one())]);
        }
        let (e1, e2) = e.children().expect("a leaf e always forms a Hall pair");
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut push = |m: &Monomial, k: BigInt| {
            let slot = acc.entry(m.clone()).or_insert_with(BigInt::zero);
            *slot += k;
        };
        // [[e1, e2], f] = [[e1, f], e2] + [e1, [e2, f]]
        for (m, k) in self.bracket_monomials(e1, f).iter() {
            for (m2, k2) in self.bracket_monomials(m, e2).iter() {
                push(m2, k * k2);
            }
        }
        for (m, k) in self.bracket_monomials(e2, f).iter() {
            for (m2, k2) in self.bracket_monomials(e1, m).iter() {
                push(m2, k * k2);
            }
        }
        Arc::new(acc.into_iter().filter(|(_, k)| !k.is_zero()).collect())
    }

    /// Evaluates a bracket tree into Hall coordinates.
    pub fn normal_form(&self, t: &Tree) -> Result<LieElement> {
        match t {
            Tree::Gen(g) => self.generator(*g).map_err(|_| {
                Error::MalformedTree(format!("generator {g} outside rank {}", self.rank))
            }),
            Tree::Bracket(l, r) => self.bracket(&self.normal_form(l)?, &self.normal_form(r)?),
            Tree::Sum(parts) => parts.iter().try_fold(self.zero(), |acc, p| {
                acc.checked_add(&self.normal_form(p)?)
            }),
            Tree::Scale(c, inner) => self.normal_form(inner)?.scale(c),
        }
    }

    /// `[z1, z2, ..., zk]`, bracketed from the left.
    pub fn left_normed(&self, zs: &[LieElement]) -> Result<LieElement> {
        let (first, rest) = zs
            .split_first()
            .ok_or_else(|| Error::MalformedTree("empty left-normed product".into()))?;
        self.check(first)?;
        rest.iter()
            .try_fold(first.clone(), |acc, z| self.bracket(&acc, z))
    }

    /// `[u, g, g, ..., g]` with `n` copies of `g`.
    pub fn ad_power(&self, u: &LieElement, g: Generator, n: usize) -> Result<LieElement> {
        let ge = self.generator(g)?;
        self.check(u)?;
        (0..n).try_fold(u.clone(), |acc, _| self.bracket(&acc, &ge))
    }

    /// `[u, f(g)] = sum_i f_i [u, g^(i)]`.
    pub fn poly_action(&self, u: &LieElement, f: &Polynomial, g: Generator) -> Result<LieElement> {
        self.field.ensure(f.field())?;
        self.check(u)?;
        let ge = self.generator(g)?;
        let mut acc = self.zero();
        let mut power = u.clone();
        for (i, c) in f.coeffs().iter().enumerate() {
            if i > 0 {
                power = self.bracket(&power, &ge)?;
            }
            if !c.is_zero() {
                acc = &acc + &power.scale(c)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> FreeLie {
        FreeLie::new(3, Field::Rationals).unwrap()
    }

    #[test]
    fn linear_structure() {
        let l = alg();
        let u = &l.b() + &l.a();
        assert_eq!(&u + &l.zero(), u);
        assert!(u.checked_add(&u.scale(&l.scalar(-1)).unwrap()).unwrap().is_zero());
        let two = u.scale(&l.scalar(2)).unwrap();
        assert_eq!(two.to_string(), "2*b + 2*a");
    }

    #[test]
    fn bracket_examples() {
        let l = alg();
        let ba = l.bracket(&l.b(), &l.a()).unwrap();
        assert_eq!(ba.to_string(), "[b,a]");
        assert_eq!(l.bracket(&l.a(), &l.b()).unwrap().to_string(), "-1*[b,a]");
        assert!(l.bracket(&l.a(), &l.a()).unwrap().is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let l = alg();
        let t = Tree::bracket(Tree::gen(0), Tree::gen(0));
        assert!(l.normal_form(&t).unwrap().is_zero());
        let t = Tree::bracket(Tree::gen(0), Tree::bracket(Tree::gen(1), Tree::gen(0)));
        assert_eq!(l.normal_form(&t).unwrap().to_string(), "-1*[[b,a],a]");
        // [[c,b],a] = [[c,a],b] + [c,[b,a]] = [[c,a],b] - [[b,a],c]
        let t = Tree::bracket(Tree::bracket(Tree::gen(2), Tree::gen(1)), Tree::gen(0));
        assert_eq!(l.normal_form(&t).unwrap().to_string(), "[[c,a],b] + -1*[[b,a],c]");
        let bad = Tree::bracket(Tree::gen(7), Tree::gen(0));
        assert!(matches!(l.normal_form(&bad), Err(Error::MalformedTree(_))));
    }

    #[test]
    fn left_normed_and_powers() {
        let l = alg();
        assert_eq!(l.left_normed(&[l.b()]).unwrap(), l.b());
        let baa = l.left_normed(&[l.b(), l.a(), l.a()]).unwrap();
        assert_eq!(baa, l.bracket(&l.bracket(&l.b(), &l.a()).unwrap(), &l.a()).unwrap());
        let bab = l.left_normed(&[l.b(), l.a(), l.b()]).unwrap();
        assert_eq!(bab.to_string(), "[[b,a],b]");
        assert!(l.left_normed(&[]).is_err());

        assert_eq!(l.ad_power(&l.b(), Generator::A, 0).unwrap(), l.b());
        assert_eq!(l.ad_power(&l.b(), Generator::A, 2).unwrap().to_string(), "[[b,a],a]");
        assert!(l.ad_power(&l.a(), Generator::A, 1).unwrap().is_zero());
    }

    #[test]
    fn poly_action_examples() {
        let l = alg();
        let f = Polynomial::from_ints(Field::Rationals, &[1, 0, 1]);
        let got = l.poly_action(&l.b(), &f, Generator::A).unwrap();
        assert_eq!(got.to_string(), "[[b,a],a] + b");
        let zero = Polynomial::zero(Field::Rationals);
        assert!(l.poly_action(&l.b(), &zero, Generator::A).unwrap().is_zero());
    }

    #[test]
    fn components_and_truncation() {
        let l = alg();
        let ba = l.bracket(&l.b(), &l.a()).unwrap();
        let u = &l.b() + &ba;
        let comps = u.homogeneous_components();
        let keys: Vec<String> = comps.keys().map(|k| k.display_padded(3)).collect();
        assert_eq!(keys.len(), 2);
        assert!(keys.contains(&"(0,1,0)".to_string()));
        assert!(keys.contains(&"(1,1,0)".to_string()));
        assert_eq!(ba.homogeneous_components().len(), 1);

        let w = l.bracket(&(&l.b() + &l.a()), &l.c()).unwrap();
        let sum = w
            .homogeneous_components()
            .values()
            .fold(l.zero(), |acc, x| &acc + x);
        assert_eq!(sum, w);

        let baa = l.ad_power(&l.b(), Generator::A, 2).unwrap();
        assert_eq!((&l.b() + &baa).truncate(2), l.b());
        assert_eq!(baa.truncate(3), baa);
    }

    #[test]
    fn degree_cap_and_rank_are_enforced() {
        let l = FreeLie::new(3, Field::Rationals).unwrap().with_degree_cap(3);
        let ba = l.bracket(&l.b(), &l.a()).unwrap();
        assert!(l.bracket(&ba, &l.a()).is_ok());
        assert!(matches!(l.bracket(&ba, &ba), Err(Error::DegreeCap { degree: 4, cap: 3 })));
        let big = FreeLie::new(4, Field::Rationals).unwrap();
        assert!(l.bracket(&big.gen(3), &l.a()).is_err());
        let f5 = FreeLie::new(3, Field::prime(5).unwrap()).unwrap();
        assert!(matches!(l.bracket(&f5.a(), &l.b()), Err(Error::FieldMismatch(..))));
    }
}
