//! Galois groups and monogenicity of monic integer quartics, in exact
//! arithmetic.
//!
//! The layers, bottom up:
//!
//! * [`poly`]: dense integer polynomials, resultants, discriminants, Sturm
//!   sequences.
//! * [`int_arith`]: factorization (trial division, Pollard–Brent rho),
//!   Miller–Rabin, squarefree tests with an explicit effort budget.
//! * [`fq_poly`]: polynomials over prime fields and their complete
//!   factorization up to degree 4.
//! * [`qx_irreducible`]: irreducibility over Q up to degree 4.
//! * [`galois`]: the cubic-resolvent classification into 4T1..4T5 and a
//!   Frobenius cycle-type cross-check.
//! * [`dedekind`]: Dedekind's index criterion and the monogenicity verdict.
//! * [`families`]: the parametric families, their closed-form
//!   discriminants and monogenicity conditions, and the cyclic exemplars.
//! * [`scan`]: row-by-row verification of a family over a parameter range
//!   and discriminant-collision scans between families.
//!
//! ```
//! use monoquartic::{classify, is_monogenic, Effort, GaloisLabel, IntPoly, Status};
//!
//! let f: IntPoly = "1 -10 25 -20 5".parse()?;
//! let (group, _evidence) = classify(&f)?;
//! let verdict = is_monogenic(&f, &Effort::default())?;
//! assert_eq!(group, GaloisLabel::T1);
//! assert_eq!(verdict.status, Status::Monogenic);
//! assert_eq!(verdict.discriminant_factored, "2^4*5^3");
//! # Ok::<(), monoquartic::Error>(())
//! ```

pub mod dedekind;
pub mod error;
pub mod families;
pub mod fq_poly;
pub mod galois;
pub mod int_arith;
pub mod poly;
pub mod qx_irreducible;
pub mod scan;
mod ser;

pub use dedekind::{is_monogenic, MonogenicityVerdict, Status};
pub use error::{Error, Result};
pub use families::FamilyId;
pub use galois::{classify, GaloisLabel};
pub use int_arith::{Effort, Tristate};
pub use poly::IntPoly;
