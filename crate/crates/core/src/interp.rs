//! Equational encodings inside the free Lie algebra `L` on `a < b < c < ...`.
//!
//! The field `K` is encoded by tuples `(alpha a_1, ..., alpha a_n)`, cut out
//! by the systems `[y_i, a_i] = 0` and `[y_i, a_j] = [a_i, y_j]`.
//!
//! The ring `K[t]` is encoded by the set `X = {[b, f(a^2)] + alpha a}` modulo
//! `u ~ v  <=>  [u - v, a] = 0`. Membership in `X` is the projection of the
//! linear system
//!
//! ```text
//! phi:  [x, c] + [y, b] = [z, a],   [x, b] = [z1, a],   [y, c] = [z2, a]
//! ```
//!
//! and multiplication is the congruence
//! `[[b, f(a^2)], [c, g(a^2)]] = [[b, h(a^2)], c]  (mod [L, a])`.

use crate::error::{Error, Result};
use crate::hall::{Generator, Monomial, Multidegree};
use crate::lie::{FreeLie, LieElement};
use crate::linalg::{solve_affine, SparseVec};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

use std::collections::HashMap;

const A: Generator = Generator::A;

/// A tuple `(y_1, ..., y_n)`, one component per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCode {
    pub components: Vec<LieElement>,
}

/// `alpha -> (alpha a_1, ..., alpha a_n)`.
pub fn encode_field(lie: &FreeLie, alpha: &Scalar) -> Result<FieldCode> {
    let components = (0..lie.rank())
        .map(|i| lie.gen(i).scale(alpha))
        .collect::<Result<_>>()?;
    Ok(FieldCode { components })
}

fn check_arity(lie: &FreeLie, code: &FieldCode) -> Result<()> {
    if code.components.len() != lie.rank() {
        return Err(Error::NotMember {
            set: "A",
            detail: format!("{} components for rank {}", code.components.len(), lie.rank()),
        });
    }
    Ok(())
}

/// `[y_i, a_i] = 0` for every `i`.
pub fn in_diagonal_set(lie: &FreeLie, code: &FieldCode) -> Result<bool> {
    check_arity(lie, code)?;
    for (i, y) in code.components.iter().enumerate() {
        if !lie.bracket(y, &lie.gen(i))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the diagonal set plus `[y_i, a_j] = [a_i, y_j]` for all `i, j`.
pub fn in_scalar_set(lie: &FreeLie, code: &FieldCode) -> Result<bool> {
    if !in_diagonal_set(lie, code)? {
        return Ok(false);
    }
    let n = lie.rank();
    for i in 0..n {
        for j in 0..n {
            let lhs = lie.bracket(&code.components[i], &lie.gen(j))?;
            let rhs = lie.bracket(&lie.gen(i), &code.components[j])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn require_scalar_code(lie: &FreeLie, code: &FieldCode) -> Result<()> {
    if in_scalar_set(lie, code)? {
        Ok(())
    } else {
        Err(Error::NotMember {
            set: "A0",
            detail: format!("{:?}", code.components.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        })
    }
}

/// Reads `alpha` off the first component.
pub fn decode_field(lie: &FreeLie, code: &FieldCode) -> Result<Scalar> {
    require_scalar_code(lie, code)?;
    Ok(code.components[0].coeff(&Monomial::leaf(A)))
}

/// `x_i + y_i = z_i` for every `i`.
pub fn check_field_add(lie: &FreeLie, x: &FieldCode, y: &FieldCode, z: &FieldCode) -> Result<bool> {
    for code in [x, y, z] {
        require_scalar_code(lie, code)?;
    }
    Ok(x.components
        .iter()
        .zip(&y.components)
        .zip(&z.components)
        .all(|((xi, yi), zi)| &(xi + yi) == zi))
}

/// `[x_i, y_j] = [z_i, a_j]` for every `i, j`.
pub fn check_field_mul(lie: &FreeLie, x: &FieldCode, y: &FieldCode, z: &FieldCode) -> Result<bool> {
    for code in [x, y, z] {
        require_scalar_code(lie, code)?;
    }
    let n = lie.rank();
    for i in 0..n {
        for j in 0..n {
            let lhs = lie.bracket(&x.components[i], &y.components[j])?;
            let rhs = lie.bracket(&z.components[i], &lie.gen(j))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[z, a_i] = [x, y_i]` for every `i`; holds exactly when `z = alpha x`.
pub fn check_scalar_action(lie: &FreeLie, x: &LieElement, y: &FieldCode, z: &LieElement) -> Result<bool> {
    require_scalar_code(lie, y)?;
    for (i, yi) in y.components.iter().enumerate() {
        if lie.bracket(z, &lie.gen(i))? != lie.bracket(x, yi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element of `X = {[b, f(a^2)] + alpha a}` with its decoded data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCode {
    pub element: LieElement,
    pub poly: Polynomial,
    pub alpha: Scalar,
}

impl PolyCode {
    /// Validates membership in `X` and decodes.
    pub fn from_element(lie: &FreeLie, u: &LieElement) -> Result<PolyCode> {
        let (poly, alpha) = decode_poly(lie, u)?;
        Ok(PolyCode {
            element: u.clone(),
            poly,
            alpha,
        })
    }
}

/// `[g, f(a^2)]`.
pub fn even_action(lie: &FreeLie, g: Generator, f: &Polynomial) -> Result<LieElement> {
    lie.poly_action(&lie.generator(g)?, &f.even_expand(), A)
}

/// `f, alpha -> [b, f(a^2)] + alpha a`.
pub fn encode_poly(lie: &FreeLie, f: &Polynomial, alpha: &Scalar) -> Result<PolyCode> {
    lie.require_rank(3)?;
    let element = &even_action(lie, Generator::B, f)? + &lie.a().scale(alpha)?;
    Ok(PolyCode {
        element,
        poly: f.clone(),
        alpha: alpha.clone(),
    })
}

/// If `m = [g, a, a, ..., a]` returns the number of `a`s.
fn a_power_of(m: &Monomial, g: Generator) -> Option<usize> {
    let a = Monomial::leaf(A);
    let mut cur = m;
    let mut count = 0;
    while let Some((l, r)) = cur.children() {
        if *r != a {
            return None;
        }
        count += 1;
        cur = l;
    }
    (cur.as_leaf() == Some(g)).then_some(count)
}

/// Inverse of [`encode_poly`]: reads the coordinates on `a` and `[b, a^(2k)]`.
pub fn decode_poly(lie: &FreeLie, u: &LieElement) -> Result<(Polynomial, Scalar)> {
    lie.require_rank(3)?;
    lie.check(u)?;
    let field = lie.field();
    let mut alpha = Scalar::zero(field);
    let mut coeffs: Vec<Scalar> = Vec::new();
    for (m, c) in u.terms() {
        if m.as_leaf() == Some(A) {
            alpha = c.clone();
            continue;
        }
        match a_power_of(m, Generator::B) {
            Some(k) if k % 2 == 0 => {
                let i = k / 2;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Scalar::zero(field));
                }
                coeffs[i] = c.clone();
            }
            _ => {
                return Err(Error::NotMember {
                    set: "X",
                    detail: format!("term {c}*{m} outside span{{a, [b,a^(2k)]}}"),
                })
            }
        }
    }
    Ok((Polynomial::from_coeffs(field, coeffs)?, alpha))
}

/// `u ~ v  <=>  [u - v, a] = 0`.
pub fn equiv(lie: &FreeLie, u: &LieElement, v: &LieElement) -> Result<bool> {
    Ok(lie.bracket(&u.checked_sub(v)?, &lie.a())?.is_zero())
}

/// Some `s` with `[s, a] = d`, or `None` when `d` is not in `[L, a]`.
///
/// `ad a` raises the `a`-degree by one and preserves the other degrees, so
/// the search runs independently on each poly-homogeneous component of `d`
/// over the Hall monomials one `a` lower.
pub fn ad_a_preimage(lie: &FreeLie, d: &LieElement) -> Result<Option<LieElement>> {
    lie.check(d)?;
    let field = lie.field();
    let a = lie.a();
    let mut s = lie.zero();
    for (md, part) in d.homogeneous_components() {
        let Some(lower) = md.checked_sub(&Multidegree::unit(A)) else {
            return Ok(None);
        };
        let domain = lie.hall_monomials(&lower);
        let mut rows: HashMap<Monomial, Vec<(usize, Scalar)>> = HashMap::new();
        for (j, m) in domain.iter().enumerate() {
            let img = lie.bracket(&LieElement::monomial(m.clone(), Scalar::one(field)), &a)?;
            for (mm, c) in img.terms() {
                rows.entry(mm.clone()).or_default().push((j, c.clone()));
            }
        }
        for (mm, _) in part.terms() {
            rows.entry(mm.clone()).or_default();
        }
        let system = rows
            .into_iter()
            .map(|(mm, entries)| Ok((SparseVec::from_entries(field, entries)?, part.coeff(&mm))))
            .collect::<Result<Vec<_>>>()?;
        let Some(sol) = solve_affine(field, domain.len(), system) else {
            return Ok(None);
        };
        for (j, c) in sol.particular.entries() {
            s = &s + &LieElement::monomial(domain[*j].clone(), c.clone());
        }
    }
    Ok(Some(s))
}

/// Commutation witness: returns `s` with
/// `[[r, a^(m)], [g, a^(2n)]] = [[r, a^(m+2n)], g] + [s, a]`, unverified.
fn raw_witness_s(lie: &FreeLie, r: &LieElement, m: usize, n: usize, g: Generator) -> Result<LieElement> {
    if n == 0 {
        return Ok(lie.zero());
    }
    let ge = lie.generator(g)?;
    let r_m = lie.ad_power(r, A, m)?;
    let r_m1 = lie.ad_power(&r_m, A, 1)?;
    let g_hi = lie.ad_power(&ge, A, 2 * n - 1)?;
    let g_lo = lie.ad_power(&ge, A, 2 * n - 2)?;
    let first = lie.bracket(&r_m, &g_hi)?;
    let second = lie.bracket(&r_m1, &g_lo)?;
    let rest = raw_witness_s(lie, r, m + 2, n - 1, g)?;
    Ok(&(&first - &second) + &rest)
}

/// Returns `t` with
/// `[[r, a^(m)], [g, a^(2n+1)]] = -[[r, a^(m+2n+1)], g] + [t, a]`, unverified.
fn raw_witness_t(lie: &FreeLie, r: &LieElement, m: usize, n: usize, g: Generator) -> Result<LieElement> {
    let ge = lie.generator(g)?;
    let r_m = lie.ad_power(r, A, m)?;
    let g_2n = lie.ad_power(&ge, A, 2 * n)?;
    let x = lie.bracket(&r_m, &g_2n)?;
    let s = raw_witness_s(lie, r, m + 1, n, g)?;
    Ok(&x - &s)
}

fn even_identity_sides(lie: &FreeLie, r: &LieElement, m: usize, n: usize, g: Generator) -> Result<(LieElement, LieElement)> {
    let ge = lie.generator(g)?;
    let lhs = lie.bracket(&lie.ad_power(r, A, m)?, &lie.ad_power(&ge, A, 2 * n)?)?;
    let rhs = lie.bracket(&lie.ad_power(r, A, m + 2 * n)?, &ge)?;
    Ok((lhs, rhs))
}

fn odd_identity_sides(lie: &FreeLie, r: &LieElement, m: usize, n: usize, g: Generator) -> Result<(LieElement, LieElement)> {
    let ge = lie.generator(g)?;
    let lhs = lie.bracket(&lie.ad_power(r, A, m)?, &lie.ad_power(&ge, A, 2 * n + 1)?)?;
    let rhs = -lie.bracket(&lie.ad_power(r, A, m + 2 * n + 1)?, &ge)?;
    Ok((lhs, rhs))
}

/// `s` with `[[r, a^(m)], [g, a^(2n)]] = [[r, a^(m+2n)], g] + [s, a]`, checked
/// by normal form before returning.
pub fn witness_s_for(lie: &FreeLie, r: &LieElement, m: usize, n: usize, g: Generator) -> Result<LieElement> {
    let s = raw_witness_s(lie, r, m, n, g)?;
    let (lhs, rhs) = even_identity_sides(lie, r, m, n, g)?;
    if lhs != &rhs + &lie.bracket(&s, &lie.a())? {
        return Err(Error::Verification(format!(
            "even witness for r = {r}, m = {m}, n = {n}, g = {g}"
        )));
    }
    Ok(s)
}

/// `t` with `[[r, a^(m)], [g, a^(2n+1)]] = -[[r, a^(m+2n+1)], g] + [t, a]`,
/// checked by normal form before returning.
pub fn witness_t_for(lie: &FreeLie, r: &LieElement, m: usize, n: usize, g: Generator) -> Result<LieElement> {
    let t = raw_witness_t(lie, r, m, n, g)?;
    let (lhs, rhs) = odd_identity_sides(lie, r, m, n, g)?;
    if lhs != &rhs + &lie.bracket(&t, &lie.a())? {
        return Err(Error::Verification(format!(
            "odd witness for r = {r}, m = {m}, n = {n}, g = {g}"
        )));
    }
    Ok(t)
}

/// [`witness_s_for`] with `g = b`.
pub fn witness_s(lie: &FreeLie, r: &LieElement, m: usize, n: usize) -> Result<LieElement> {
    witness_s_for(lie, r, m, n, Generator::B)
}

/// [`witness_t_for`] with `g = b`.
pub fn witness_t(lie: &FreeLie, r: &LieElement, m: usize, n: usize) -> Result<LieElement> {
    witness_t_for(lie, r, m, n, Generator::B)
}

/// Evaluates the three equations of `phi`.
pub fn check_phi(
    lie: &FreeLie,
    x: &LieElement,
    y: &LieElement,
    z: &LieElement,
    z1: &LieElement,
    z2: &LieElement,
) -> Result<bool> {
    lie.require_rank(3)?;
    let (a, b, c) = (lie.a(), lie.b(), lie.c());
    let first = &lie.bracket(x, &c)? + &lie.bracket(y, &b)? == lie.bracket(z, &a)?;
    let second = lie.bracket(x, &b)? == lie.bracket(z1, &a)?;
    let third = lie.bracket(y, &c)? == lie.bracket(z2, &a)?;
    Ok(first && second && third)
}

/// A solution `(x, y, z, z1, z2)` of `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiWitness {
    pub x: LieElement,
    pub y: LieElement,
    pub z: LieElement,
    pub z1: LieElement,
    pub z2: LieElement,
}

impl PsiWitness {
    pub fn check(&self, lie: &FreeLie) -> Result<bool> {
        check_phi(lie, &self.x, &self.y, &self.z, &self.z1, &self.z2)
    }
}

/// `z` with `[[g, a^(2n)], g] = [z, a]`, from `[[g, a^(n)], [g, a^(n)]] = 0`.
fn self_bracket_witness(lie: &FreeLie, g: Generator, n: usize) -> Result<LieElement> {
    let ge = lie.generator(g)?;
    if n % 2 == 0 {
        // 0 = [[g,a^(2n)],g] + [s,a]
        Ok(-raw_witness_s(lie, &ge, n, n / 2, g)?)
    } else {
        // 0 = -[[g,a^(2n)],g] + [t,a]
        raw_witness_t(lie, &ge, n, n / 2, g)
    }
}

/// Builds `x = [b, f(a^2)] + alpha a`, `y = [c, f(a^2)] + beta a` and the
/// auxiliaries `z, z1, z2` solving `phi`, one power of `t` at a time.
pub fn psi_witness(lie: &FreeLie, f: &Polynomial, alpha: &Scalar, beta: &Scalar) -> Result<PsiWitness> {
    lie.require_rank(3)?;
    lie.field().ensure(f.field())?;
    let (a, b, c) = (lie.a(), lie.b(), lie.c());
    let mut w = PsiWitness {
        x: a.scale(alpha)?,
        y: a.scale(beta)?,
        z: -(&c.scale(alpha)? + &b.scale(beta)?),
        z1: -b.scale(alpha)?,
        z2: -c.scale(beta)?,
    };
    for (n, coef) in f.terms() {
        let x = lie.ad_power(&b, A, 2 * n)?;
        let y = lie.ad_power(&c, A, 2 * n)?;
        // 0 = [x,c] + [c,x] = [x,c] + [y,b] + [s,a]
        let z = -raw_witness_s(lie, &c, 0, n, Generator::B)?;
        let z1 = self_bracket_witness(lie, Generator::B, n)?;
        let z2 = self_bracket_witness(lie, Generator::C, n)?;
        w.x = &w.x + &x.scale(coef)?;
        w.y = &w.y + &y.scale(coef)?;
        w.z = &w.z + &z.scale(coef)?;
        w.z1 = &w.z1 + &z1.scale(coef)?;
        w.z2 = &w.z2 + &z2.scale(coef)?;
    }
    if !w.check(lie)? {
        return Err(Error::Verification(format!("psi witness for f = {f}")));
    }
    Ok(w)
}

/// `[u] (+) [v]`: the sum element, which decodes to `(f + g, alpha + beta)`.
pub fn oplus(lie: &FreeLie, u: &PolyCode, v: &PolyCode) -> Result<PolyCode> {
    lie.check(&u.element)?;
    Ok(PolyCode {
        element: u.element.checked_add(&v.element)?,
        poly: u.poly.add(&v.poly)?,
        alpha: u.alpha.checked_add(&v.alpha)?,
    })
}

/// `w ~ u + v`, after checking that all three lie in `X`.
pub fn check_oplus(lie: &FreeLie, u: &LieElement, v: &LieElement, w: &LieElement) -> Result<bool> {
    for e in [u, v, w] {
        decode_poly(lie, e)?;
    }
    equiv(lie, w, &u.checked_add(v)?)
}

/// `[[b, f(a^2)], [c, g(a^2)]] - [[b, h(a^2)], c]`.
pub fn product_defect(lie: &FreeLie, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<LieElement> {
    lie.require_rank(3)?;
    let bf = even_action(lie, Generator::B, f)?;
    let cg = even_action(lie, Generator::C, g)?;
    let bh = even_action(lie, Generator::B, h)?;
    Ok(&lie.bracket(&bf, &cg)? - &lie.bracket(&bh, &lie.c())?)
}

/// Decides `[[b, f(a^2)], [c, g(a^2)]] = [[b, h(a^2)], c]  (mod [L, a])`,
/// which holds exactly when `f g = h`.
pub fn otimes_check(lie: &FreeLie, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<bool> {
    let defect = product_defect(lie, f, g, h)?;
    Ok(ad_a_preimage(lie, &defect)?.is_some())
}

/// `s` with `[[b, f(a^2)], [c, g(a^2)]] = [[b, (fg)(a^2)], c] + [s, a]`,
/// assembled from the even witnesses and checked.
pub fn product_witness(lie: &FreeLie, f: &Polynomial, g: &Polynomial) -> Result<LieElement> {
    lie.require_rank(3)?;
    let b = lie.b();
    let mut s = lie.zero();
    for (i, fi) in f.terms() {
        for (j, gj) in g.terms() {
            let sij = raw_witness_s(lie, &b, 2 * i, j, Generator::C)?;
            s = &s + &sij.scale(&(fi * gj))?;
        }
    }
    let defect = product_defect(lie, f, g, &f.mul(g)?)?;
    if defect != lie.bracket(&s, &lie.a())? {
        return Err(Error::Verification(format!("product witness for f = {f}, g = {g}")));
    }
    Ok(s)
}

/// `[u] (x) [v]`: encodes `h = f g` and confirms the congruence.
pub fn otimes(lie: &FreeLie, u: &PolyCode, v: &PolyCode) -> Result<PolyCode> {
    let h = u.poly.mul(&v.poly)?;
    if !otimes_check(lie, &u.poly, &v.poly, &h)? {
        return Err(Error::Verification(format!(
            "product congruence rejected f = {}, g = {}",
            u.poly, v.poly
        )));
    }
    encode_poly(lie, &h, &Scalar::zero(lie.field()))
}
