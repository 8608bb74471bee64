//! Hall basis of the free Lie algebra on an ordered generating set.
//!
//! Generators are ordered `a < b < c < a1 < a2 < ...`. A [`Monomial`] is any
//! binary bracket tree over the generators; the ones passing [`is_hall`] form
//! the basis. Monomials compare by degree first, so higher-degree monomials
//! are always greater. Within one degree the order is lexicographic on
//! `(left, right)`, recursively, with leaves ordered by generator index.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A free generator, by position in the ordered list `a, b, c, a1, a2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub usize);

impl Generator {
    pub const A: Generator = Generator(0);
    pub const B: Generator = Generator(1);
    pub const C: Generator = Generator(2);

    pub fn index(self) -> usize {
        self.0
    }

    /// Parses `a`, `b`, `c`, or `a<k>` with `k >= 1`.
    pub fn from_name(name: &str) -> Option<Generator> {
        match name {
            "a" => Some(Generator(0)),
            "b" => Some(Generator(1)),
            "c" => Some(Generator(2)),
            _ => {
                let k: usize = name.strip_prefix('a')?.parse().ok()?;
                if k == 0 || name.starts_with("a0") {
                    return None;
                }
                Some(Generator(k + 2))
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "a"),
            1 => write!(f, "b"),
            2 => write!(f, "c"),
            k => write!(f, "a{}", k - 2),
        }
    }
}

/// Per-generator degrees, with trailing zeros trimmed so that vectors over
/// different ranks compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(mut degrees: Vec<u32>) -> Multidegree {
        while degrees.last() == Some(&0) {
            degrees.pop();
        }
        Multidegree(degrees)
    }

    pub fn unit(g: Generator) -> Multidegree {
        let mut v = vec![0; g.0 + 1];
        v[g.0] = 1;
        Multidegree(v)
    }

    pub fn get(&self, g: Generator) -> u32 {
        self.0.get(g.0).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        let n = self.0.len().max(other.0.len());
        Multidegree::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    /// `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if other.0.len() > self.0.len() && other.0[self.0.len()..].iter().any(|&d| d > 0) {
            return None;
        }
        let mut out = self.0.clone();
        for (i, d) in other.0.iter().enumerate() {
            if i < out.len() {
                out[i] = out[i].checked_sub(*d)?;
            }
        }
        Some(Multidegree::new(out))
    }

    /// Zero-padded to `rank` entries, e.g. `(0,1,0)`.
    pub fn display_padded(&self, rank: usize) -> String {
        let n = rank.max(self.0.len());
        let parts: Vec<String> = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0).to_string())
            .collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Debug)]
enum Shape {
    Leaf(Generator),
    Bracket(Monomial, Monomial),
}

#[derive(Debug)]
struct Node {
    shape: Shape,
    degree: u32,
    multidegree: Multidegree,
    hash: u64,
}

/// A binary bracket tree over the generators, with cached degree data.
#[derive(Clone)]
pub struct Monomial(Arc<Node>);

impl Monomial {
    pub fn leaf(g: Generator) -> Monomial {
        let mut h = DefaultHasher::new();
        0u8.hash(&mut h);
        g.hash(&mut h);
        Monomial(Arc::new(Node {
            shape: Shape::Leaf(g),
            degree: 1,
            multidegree: Multidegree::unit(g),
            hash: h.finish(),
        }))
    }

    /// The formal bracket `[left, right]`; no Hall condition is checked.
    pub fn bracket(left: &Monomial, right: &Monomial) -> Monomial {
        let mut h = DefaultHasher::new();
        1u8.hash(&mut h);
        left.0.hash.hash(&mut h);
        right.0.hash.hash(&mut h);
        Monomial(Arc::new(Node {
            degree: left.0.degree + right.0.degree,
            multidegree: left.0.multidegree.add(&right.0.multidegree),
            shape: Shape::Bracket(left.clone(), right.clone()),
            hash: h.finish(),
        }))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn multidegree(&self) -> &Multidegree {
        &self.0.multidegree
    }

    pub fn as_leaf(&self) -> Option<Generator> {
        match self.0.shape {
            Shape::Leaf(g) => Some(g),
            Shape::Bracket(..) => None,
        }
    }

    pub fn children(&self) -> Option<(&Monomial, &Monomial)> {
        match &self.0.shape {
            Shape::Leaf(_) => None,
            Shape::Bracket(l, r) => Some((l, r)),
        }
    }

    /// Largest generator index occurring in the tree.
    pub fn max_generator(&self) -> Generator {
        Generator(self.0.multidegree.0.len().saturating_sub(1))
    }

    /// `[g, h, h, ..., h]` with `n` copies of `h`, as a formal tree.
    pub fn left_normed_power(g: Generator, h: Generator, n: usize) -> Monomial {
        let hl = Monomial::leaf(h);
        (0..n).fold(Monomial::leaf(g), |acc, _| Monomial::bracket(&acc, &hl))
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Monomial) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.degree != other.0.degree {
            return false;
        }
        match (&self.0.shape, &other.0.shape) {
            (Shape::Leaf(x), Shape::Leaf(y)) => x == y,
            (Shape::Bracket(a, b), Shape::Bracket(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.degree.cmp(&other.0.degree).then_with(|| {
            match (&self.0.shape, &other.0.shape) {
                (Shape::Leaf(x), Shape::Leaf(y)) => x.cmp(y),
                (Shape::Leaf(_), Shape::Bracket(..)) => Ordering::Less,
                (Shape::Bracket(..), Shape::Leaf(_)) => Ordering::Greater,
                (Shape::Bracket(a, b), Shape::Bracket(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.shape {
            Shape::Leaf(g) => write!(f, "{g}"),
            Shape::Bracket(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The Hall order on monomials.
pub fn hall_compare(e: &Monomial, f: &Monomial) -> Ordering {
    e.cmp(f)
}

/// Whether `[e, f]` is a Hall monomial, given that `e` and `f` are.
pub(crate) fn hall_pair(e: &Monomial, f: &Monomial) -> bool {
    if e <= f {
        return false;
    }
    match e.children() {
        None => true,
        Some((_, e2)) => e2 <= f,
    }
}

/// Checks the Hall conditions at every node of `t`.
pub fn is_hall(t: &Monomial) -> bool {
    match t.children() {
        None => true,
        Some((e, f)) => is_hall(e) && is_hall(f) && hall_pair(e, f),
    }
}

/// All Hall monomials of degree `<= max_degree` on `rank` generators, in
/// ascending Hall order.
pub fn generate_basis(rank: usize, max_degree: u32) -> Result<Vec<Monomial>> {
    if rank < 2 {
        return Err(Error::RankTooSmall { rank, needed: 2 });
    }
    let mut layers: Vec<Vec<Monomial>> = vec![Vec::new()];
    layers.push((0..rank).map(|i| Monomial::leaf(Generator(i))).collect());
    for n in 2..=max_degree as usize {
        let mut layer = Vec::new();
        for d in (n.div_ceil(2))..n {
            for e in &layers[d] {
                for f in &layers[n - d] {
                    if hall_pair(e, f) {
                        layer.push(Monomial::bracket(e, f));
                    }
                }
            }
        }
        layer.sort();
        layers.push(layer);
    }
    Ok(layers.into_iter().flatten().collect())
}

/// Number of Hall monomials of each degree `1..=max_degree`.
pub fn degree_counts(basis: &[Monomial], max_degree: u32) -> Vec<usize> {
    let mut counts = vec![0; max_degree as usize];
    for m in basis {
        if (1..=max_degree).contains(&m.degree()) {
            counts[m.degree() as usize - 1] += 1;
        }
    }
    counts
}

/// Dimension of the degree-`n` component of the free Lie algebra on `rank`
/// generators: `(1/n) * sum_{d | n} mu(d) * rank^(n/d)`.
pub fn witt_dimension(rank: u64, n: u32) -> u128 {
    fn mobius(mut d: u32) -> i128 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if d > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (rank as i128).pow(n / d))
        .sum();
    (total / n as i128) as u128
}

/// Hall monomials with a prescribed multidegree, memoized by multidegree.
///
/// Only the generators with a nonzero entry in the requested multidegree are
/// ever touched, so this reaches high total degrees that full generation
/// cannot.
#[derive(Default)]
pub struct HallIndex {
    memo: HashMap<Multidegree, Arc<Vec<Monomial>>>,
}

impl HallIndex {
    pub fn new() -> HallIndex {
        HallIndex::default()
    }

    /// Ascending Hall order.
    pub fn of_multidegree(&mut self, md: &Multidegree) -> Arc<Vec<Monomial>> {
        if let Some(v) = self.memo.get(md) {
            return v.clone();
        }
        let total = md.total();
        let mut out = Vec::new();
        if total == 1 {
            let g = md.as_slice().iter().position(|&d| d == 1).expect("unit");
            out.push(Monomial::leaf(Generator(g)));
        } else if total > 1 {
            for left in sub_multidegrees(md) {
                let lt = left.total();
                if lt == 0 || lt == total || 2 * lt < total {
                    continue;
                }
                let right = md.checked_sub(&left).expect("sub-multidegree");
                let es = self.of_multidegree(&left);
                let fs = self.of_multidegree(&right);
                for e in es.iter() {
                    for f in fs.iter() {
                        if hall_pair(e, f) {
                            out.push(Monomial::bracket(e, f));
                        }
                    }
                }
            }
            out.sort();
        }
        let out = Arc::new(out);
        self.memo.insert(md.clone(), out.clone());
        out
    }
}

fn sub_multidegrees(md: &Multidegree) -> Vec<Multidegree> {
    let mut acc = vec![Vec::new()];
    for &d in md.as_slice() {
        acc = acc
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=d).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    acc.into_iter().map(Multidegree::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize) -> Monomial {
        Monomial::leaf(Generator(i))
    }

    fn br(l: &Monomial, r: &Monomial) -> Monomial {
        Monomial::bracket(l, r)
    }

    #[test]
    fn generator_names() {
        for (i, name) in ["a", "b", "c", "a1", "a2", "a10"].iter().enumerate() {
            let gen = Generator::from_name(name).unwrap();
            assert_eq!(gen.to_string(), *name);
            if i < 5 {
                assert_eq!(gen.0, i);
            }
        }
        assert_eq!(Generator::from_name("a0"), None);
        assert_eq!(Generator::from_name("a01"), None);
        assert_eq!(Generator::from_name("x"), None);
    }

    #[test]
    fn compare_examples() {
        let (a, b, c) = (g(0), g(1), g(2));
        assert_eq!(hall_compare(&a, &b), Ordering::Less);
        assert_eq!(hall_compare(&a, &a), Ordering::Equal);
        assert_eq!(hall_compare(&br(&b, &a), &c), Ordering::Greater);
    }

    #[test]
    fn is_hall_examples() {
        let (a, b) = (g(0), g(1));
        assert!(is_hall(&br(&b, &a)));
        assert!(!is_hall(&br(&a, &b)));
        assert!(is_hall(&br(&br(&b, &a), &b)));
        assert!(!is_hall(&br(&a, &a)));
        // [[c,b],a]: right factor of the left child is b > a
        assert!(!is_hall(&br(&br(&g(2), &b), &a)));
    }

    #[test]
    fn small_layers() {
        let basis = generate_basis(3, 1).unwrap();
        assert_eq!(basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(), ["a", "b", "c"]);
        let basis = generate_basis(3, 3).unwrap();
        let deg2: Vec<String> = basis
            .iter()
            .filter(|m| m.degree() == 2)
            .map(|m| m.to_string())
            .collect();
        assert_eq!(deg2, ["[b,a]", "[c,a]", "[c,b]"]);
        assert_eq!(degree_counts(&basis, 3), vec![3, 3, 8]);
        assert!(generate_basis(1, 3).is_err());
    }

    #[test]
    fn multidegree_index_agrees_with_full_generation() {
        let basis = generate_basis(3, 6).unwrap();
        let mut by_md: HashMap<Multidegree, Vec<Monomial>> = HashMap::new();
        for m in &basis {
            by_md.entry(m.multidegree().clone()).or_default().push(m.clone());
        }
        let mut idx = HallIndex::new();
        for (md, ms) in by_md {
            assert_eq!(*idx.of_multidegree(&md), ms, "multidegree {md:?}");
        }
    }

    #[test]
    fn multidegree_arithmetic() {
        let x = Multidegree::new(vec![2, 1, 0]);
        assert_eq!(x.as_slice(), &[2, 1]);
        assert_eq!(x.display_padded(3), "(2,1,0)");
        assert_eq!(x.checked_sub(&Multidegree::unit(Generator::A)), Some(Multidegree::new(vec![1, 1])));
        assert_eq!(x.checked_sub(&Multidegree::unit(Generator::C)), None);
        assert_eq!(x.total(), 3);
    }
}
