//! Exact coefficients: the rationals with arbitrary-precision integers, and
//! prime fields `F_p`.
//!
//! Every [`Scalar`] carries its field. The `checked_*` methods report a field
//! mismatch as an error; the operator impls panic on one, and are meant for
//! code paths where both operands were already validated against the same
//! field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub(crate) fn ensure(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self, other))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let Some(p) = s.strip_prefix("fp:") else {
            return Err(Error::parse(0, format!("unknown field `{s}` (expected q or fp:P)")));
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::parse(3, format!("bad prime `{p}`")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// `value` in `[0, p)`.
    Mod { value: u64, p: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::Mod {
                value: bigint_mod(n, p),
                p,
            },
        }
    }

    /// `num / den` in `field`.
    pub fn from_fraction(field: Field, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => Scalar::from_bigint(field, num).checked_div(&Scalar::from_bigint(field, den)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            (Scalar::Mod { value: x, p }, Scalar::Mod { value: y, p: q }) if p == q => {
                Ok(Scalar::Mod {
                    value: ((*x as u128 + *y as u128) % *p as u128) as u64,
                    p: *p,
                })
            }
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.field().ensure(other.field())?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
            (Scalar::Mod { value: x, p }, Scalar::Mod { value: y, p: q }) if p == q => {
                Ok(Scalar::Mod {
                    value: mul_mod(*x, *y, *p),
                    p: *p,
                })
            }
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.field().ensure(other.field())?;
        self.checked_mul(&other.inverse()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    /// Parses `n`, `-n`, or `p/q` into `field`.
    pub fn parse(field: Field, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::parse(0, format!("bad scalar `{text}`")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::parse(0, format!("bad scalar `{text}`")))?;
        Scalar::from_fraction(field, &num, &den)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from different fields")
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(Field::Rationals, &n.into(), &d.into()).unwrap()
    }

    #[test]
    fn rationals_are_reduced() {
        let x = q(6, -4);
        match &x {
            Scalar::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(-3));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
        assert_eq!(x.to_string(), "-3/2");
    }

    #[test]
    fn prime_field_residues() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(Scalar::from_int(f5, -1), Scalar::Mod { value: 4, p: 5 });
        let half = Scalar::parse(f5, "1/2").unwrap();
        assert_eq!(&half * &Scalar::from_int(f5, 2), Scalar::one(f5));
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn mismatch_and_zero_division() {
        let f5 = Field::prime(5).unwrap();
        let x = Scalar::one(Field::Rationals);
        let y = Scalar::one(f5);
        assert_eq!(
            x.checked_add(&y),
            Err(Error::FieldMismatch(Field::Rationals, f5))
        );
        assert_eq!(Scalar::zero(f5).inverse(), Err(Error::DivisionByZero));
        assert!(Scalar::parse(Field::Rationals, "1/0").is_err());
    }

    #[test]
    fn field_descriptor_text() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("fp:9".parse::<Field>().is_err());
        assert_eq!(Field::Prime(7).to_string(), "fp:7");
    }
}
