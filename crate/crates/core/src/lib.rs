//! Exact computation in free Lie algebras over `Q` and `F_p`.
//!
//! - [`hall`]: Hall basis generation, order, and recognition.
//! - [`lie`]: Hall-coordinate normal forms and bracket arithmetic.
//! - [`interp`]: encodings of the field `K` and of `K[t]` by equation
//!   systems, with constructive witnesses.
//! - [`eqn`]: equation terms and systems, a truncated-degree exact solver,
//!   and a compiler from polynomial systems over `K[t]` to Lie systems.
//!
//! ```
//! use freelie::{Field, FreeLie, Polynomial, Scalar};
//! use freelie::eqn::parse::parse_element;
//! use freelie::interp::{otimes_check, psi_witness};
//!
//! let lie = FreeLie::new(3, Field::Rationals)?;
//! let u = parse_element(&lie, "[a,b]")?;
//! assert_eq!(u.to_string(), "-1*[b,a]");
//!
//! let t = Polynomial::parse(Field::Rationals, "t")?;
//! let t2 = t.mul(&t)?;
//! assert!(otimes_check(&lie, &t, &t, &t2)?);
//!
//! let w = psi_witness(&lie, &t, &Scalar::one(Field::Rationals), &Scalar::zero(Field::Rationals))?;
//! assert_eq!(w.x.to_string(), "[[b,a],a] + a");
//! # Ok::<(), freelie::Error>(())
//! ```

pub mod cli;
pub mod eqn;
pub mod error;
pub mod hall;
pub mod interp;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use hall::{Generator, Monomial, Multidegree};
pub use lie::{FreeLie, LieElement, Tree};
pub use poly::Polynomial;
pub use scalar::{Field, Scalar};
