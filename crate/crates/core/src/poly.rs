//! Dense univariate polynomials over a [`Field`].
//!
//! `coeffs[i]` is the coefficient of `t^i`. The vector is empty for the zero
//! polynomial and otherwise ends in a nonzero coefficient.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Polynomial {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::monomial(c, 0)
    }

    /// The indeterminate `t`.
    pub fn t(field: Field) -> Polynomial {
        Polynomial::monomial(Scalar::one(field), 1)
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Polynomial {
        let field = c.field();
        let mut coeffs = vec![Scalar::zero(field); k];
        coeffs.push(c);
        Polynomial::from_coeffs(field, coeffs).expect("single field")
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(field: Field, coeffs: Vec<Scalar>) -> Result<Polynomial> {
        for c in &coeffs {
            field.ensure(c.field())?;
        }
        let mut p = Polynomial { field, coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Polynomial {
        let coeffs = coeffs.iter().map(|&c| Scalar::from_int(field, c)).collect();
        Polynomial::from_coeffs(field, coeffs).expect("single field")
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Nonzero `(power, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.field.ensure(other.field)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Polynomial::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.field.ensure(other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.field));
        }
        let mut coeffs = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.terms() {
            for (j, y) in other.terms() {
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        Polynomial::from_coeffs(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        self.field.ensure(c.field())?;
        Polynomial::from_coeffs(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `f(t) -> f(t^2)`.
    pub fn even_expand(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(2 * self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.push(Scalar::zero(self.field));
            }
            coeffs.push(c.clone());
        }
        Polynomial {
            field: self.field,
            coeffs,
        }
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        self.field.ensure(x.field())?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.field), |acc, c| &(&acc * x) + c))
    }

    /// Parses sums of monomials such as `3*t^2 + 1/2*t - 4`.
    pub fn parse(field: Field, text: &str) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(field);
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(Error::parse(pos, "empty polynomial"));
                }
                break;
            }
            let mut negative = false;
            match bytes[pos] {
                b'+' if !first => pos += 1,
                b'-' => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(Error::parse(pos, "expected `+` or `-`")),
            }
            first = false;
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let mut coeff = if pos > start {
                Scalar::parse(field, &text[start..pos])?
            } else {
                Scalar::one(field)
            };
            let had_coeff = pos > start;
            skip_ws(&mut pos);
            let mut power = 0usize;
            if had_coeff && pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return Err(Error::parse(pos, "expected `t` after `*`"));
                }
            }
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                power = 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let s = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    power = text[s..pos]
                        .parse()
                        .map_err(|_| Error::parse(s, "expected exponent"))?;
                }
            } else if !had_coeff {
                return Err(Error::parse(pos, "expected coefficient or `t`"));
            }
            if negative {
                coeff = -coeff;
            }
            acc = acc.add(&Polynomial::monomial(coeff, power))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_ints(Q, coeffs)
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1, 0, 1]).add(&p(&[0, 0, -1])).unwrap(), p(&[1]));
        assert_eq!(p(&[3, 2]).add(&Polynomial::zero(Q)).unwrap(), p(&[3, 2]));
        assert_eq!(p(&[1, 1]).add(&p(&[1, 1])).unwrap(), p(&[2, 2]));
        let f2 = Field::prime(2).unwrap();
        let g = Polynomial::from_ints(f2, &[1, 1]);
        assert!(g.add(&g).unwrap().is_zero());
    }

    #[test]
    fn mul_examples() {
        let t = Polynomial::t(Q);
        assert_eq!(t.mul(&t).unwrap(), p(&[0, 0, 1]));
        assert_eq!(p(&[4, 0, 2]).mul(&Polynomial::one(Q)).unwrap(), p(&[4, 0, 2]));
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])).unwrap().degree(), Some(2));
    }

    #[test]
    fn even_expand_examples() {
        assert_eq!(Polynomial::t(Q).even_expand(), p(&[0, 0, 1]));
        assert_eq!(p(&[1]).even_expand(), p(&[1]));
        assert_eq!(p(&[1, 1, 1]).even_expand(), p(&[1, 0, 1, 0, 1]));
        assert!(Polynomial::zero(Q).even_expand().is_zero());
    }

    #[test]
    fn field_mismatch() {
        let f5 = Field::prime(5).unwrap();
        assert!(p(&[1]).add(&Polynomial::one(f5)).is_err());
        assert!(p(&[1]).mul(&Polynomial::one(f5)).is_err());
    }

    #[test]
    fn text_form() {
        let f = Polynomial::parse(Q, "3*t^2 + 1/2*t - 4").unwrap();
        assert_eq!(f.to_string(), "3*t^2 + 1/2*t - 4");
        assert_eq!(Polynomial::parse(Q, "t^2+1").unwrap(), p(&[1, 0, 1]));
        assert_eq!(Polynomial::parse(Q, "-t + t").unwrap().to_string(), "0");
        assert_eq!(Polynomial::parse(Q, "- 2t").unwrap(), p(&[0, -2]));
        assert_eq!(p(&[-1, 0, -1]).to_string(), "-t^2 - 1");
        assert!(Polynomial::parse(Q, "").is_err());
        assert!(Polynomial::parse(Q, "t t").is_err());
        assert!(Polynomial::parse(Q, "3*").is_err());
    }
}
