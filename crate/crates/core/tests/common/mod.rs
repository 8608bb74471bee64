//! Shared helpers for integration tests: seeded random inputs and
//! oracles that do not go through the Hall rewriting.

#![allow(dead_code)]

use std::collections::BTreeMap;

use freelie::hall::generate_basis;
use freelie::{Field, FreeLie, LieElement, Monomial, Polynomial, Scalar};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small fraction `p/q` with `|p| <= 6`, `1 <= q <= 4`.
pub fn scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let p: i64 = rng.gen_range(-6..=6);
        let q: i64 = rng.gen_range(1..=4);
        if let Ok(s) = Scalar::from_fraction(field, &BigInt::from(p), &BigInt::from(q)) {
            return s;
        }
    }
}

pub fn nonzero_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random combination of up to `terms` Hall monomials of degree `<= max_degree`.
pub fn element(lie: &FreeLie, rng: &mut impl Rng, max_degree: u32, terms: usize) -> LieElement {
    let basis = generate_basis(lie.rank(), max_degree).unwrap();
    let mut u = lie.zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        u = &u + &LieElement::monomial(m, nonzero_scalar(lie.field(), rng));
    }
    u
}

/// Random polynomial of degree `<= max_degree` (possibly zero).
pub fn poly(field: Field, rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    let n = rng.gen_range(0..=max_degree + 1);
    let coeffs = (0..n).map(|_| scalar(field, rng)).collect();
    Polynomial::from_coeffs(field, coeffs).unwrap()
}

pub fn nonzero_poly(field: Field, rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    loop {
        let f = poly(field, rng, max_degree);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn p(field: Field, s: &str) -> Polynomial {
    Polynomial::parse(field, s).unwrap()
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/n) sum_{d | n} mu(d) k^(n/d)`.
pub fn witt(k: u64, n: u64) -> u64 {
    let total: i128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) as i128 * (k as i128).pow((n / d) as u32))
        .sum();
    (total / n as i128) as u64
}

/// Noncommutative polynomial: word -> coefficient.
pub type Assoc = BTreeMap<Vec<usize>, Scalar>;

fn assoc_add(acc: &mut Assoc, word: Vec<usize>, c: Scalar) {
    let entry = acc.entry(word.clone()).or_insert_with(|| Scalar::zero(c.field()));
    *entry = entry.checked_add(&c).unwrap();
    if entry.is_zero() {
        acc.remove(&word);
    }
}

pub fn assoc_commutator(x: &Assoc, y: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (wx, cx) in x {
        for (wy, cy) in y {
            let c = cx.checked_mul(cy).unwrap();
            let mut xy = wx.clone();
            xy.extend(wy);
            assoc_add(&mut out, xy, c.clone());
            let mut yx = wy.clone();
            yx.extend(wx);
            assoc_add(&mut out, yx, -c);
        }
    }
    out
}

/// Image of a bracket monomial under `[u, v] -> uv - vu`.
pub fn assoc_of_monomial(m: &Monomial, field: Field) -> Assoc {
    match m.children() {
        None => [(vec![m.as_leaf().unwrap().index()], Scalar::one(field))].into(),
        Some((l, r)) => assoc_commutator(&assoc_of_monomial(l, field), &assoc_of_monomial(r, field)),
    }
}

/// Image of a Lie element in the free associative algebra; injective.
pub fn assoc_of(u: &LieElement) -> Assoc {
    let mut out = Assoc::new();
    for (m, c) in u.terms() {
        for (w, d) in assoc_of_monomial(m, u.field()) {
            assoc_add(&mut out, w, c.checked_mul(&d).unwrap());
        }
    }
    out
}
