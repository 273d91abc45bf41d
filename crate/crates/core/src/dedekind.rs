//! Dedekind's index criterion and the resulting monogenicity decision.
//!
//! For a monic irreducible `T` and a prime `q`, write
//! `T mod q = prod tau_i^e_i`, let `h1` lift the radical `prod tau_i` and `h2`
//! lift `prod tau_i^(e_i - 1)`, and set `F = (h1 h2 - T) / q`. Then `q`
//! divides the index `[Z_K : Z[theta]]` exactly when `h1`, `h2` and `F` have a
//! common factor mod `q`. Only primes whose square divides the discriminant
//! can divide the index, so `T` is monogenic iff none of those primes passes
//! the test; the field discriminant then equals the polynomial
//! discriminant.
//!
//! Lifts are the canonical ones with coefficients in `[0, q)`. The outcome of
//! the gcd test does not depend on the choice of lifts; the intermediate
//! `h2` and `F` do.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fq_poly::{factor_mod, gcd_mod, monic_lift, reduce_mod, FqPoly};
use crate::int_arith::{factor, Effort};
use crate::poly::IntPoly;
use crate::qx_irreducible::is_irreducible_with;
use crate::ser;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindWitness {
    pub prime: u64,
    pub h1: IntPoly,
    pub h2: IntPoly,
    #[serde(rename = "F")]
    pub f: IntPoly,
    #[serde(serialize_with = "ser::display")]
    pub gcd_mod_q: FqPoly,
    pub divides_index: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Monogenic,
    NotMonogenic,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Monogenic => "Monogenic",
            Status::NotMonogenic => "NotMonogenic",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonogenicityVerdict {
    pub status: Status,
    /// Smallest prime dividing the index, when `NotMonogenic`.
    pub witness_prime: Option<u64>,
    /// Part of the discriminant left unfactored, when `Unknown`.
    #[serde(serialize_with = "ser::display_opt")]
    pub unfactored_cofactor: Option<BigInt>,
    /// Every candidate prime tested, with its outcome, ascending.
    pub checked_primes: Vec<(u64, bool)>,
    pub witnesses: Vec<DedekindWitness>,
    #[serde(serialize_with = "ser::display")]
    pub discriminant: BigInt,
    /// Discriminant in `2^4*5^3` form (unfactored part in brackets).
    pub discriminant_factored: String,
    #[serde(serialize_with = "ser::display_opt")]
    pub field_disc_if_monogenic: Option<BigInt>,
}

/// Primes `q` with `q^2 | disc`, plus whatever could not be factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPrimeCandidates {
    pub primes: Vec<BigUint>,
    pub unfactored_cofactor: Option<BigInt>,
    pub discriminant: BigInt,
    pub discriminant_factored: String,
}

fn check_shape(t: &IntPoly) -> Result<()> {
    let deg = t.degree().ok_or(Error::ZeroPolynomial)?;
    if !(2..=4).contains(&deg) {
        return Err(Error::DegreeOutOfRange {
            min: 2,
            max: 4,
            found: deg,
        });
    }
    if !t.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

fn check_irreducible(t: &IntPoly, effort: &Effort) -> Result<()> {
    check_shape(t)?;
    if !is_irreducible_with(t, effort)? {
        return Err(Error::Reducible);
    }
    Ok(())
}

/// Dedekind's test for `T` at the prime `q`.
pub fn dedekind_at_prime(t: &IntPoly, q: &BigInt) -> Result<DedekindWitness> {
    check_irreducible(t, &Effort::default())?;
    witness_unchecked(t, q)
}

fn witness_unchecked(t: &IntPoly, q: &BigInt) -> Result<DedekindWitness> {
    let tbar = reduce_mod(t, q)?;
    let fac = factor_mod(&tbar)?;
    let h1bar = fac.radical();
    let h2bar = tbar
        .div_exact(&h1bar)
        .expect("the radical divides the polynomial");
    let h1 = monic_lift(&h1bar)?;
    let h2 = monic_lift(&h2bar)?;
    let f = (&(&h1 * &h2) - t)
        .div_exact_scalar(q)
        .expect("h1 h2 agrees with T mod q");
    let fbar = reduce_mod(&f, q)?;
    let g = gcd_mod(&gcd_mod(&h1bar, &h2bar)?, &fbar)?;
    Ok(DedekindWitness {
        prime: q.to_u64().expect("reduce_mod bounds the modulus"),
        h1,
        h2,
        f,
        divides_index: !g.is_one(),
        gcd_mod_q: g,
    })
}

/// Primes whose square divides the discriminant of `T`.
pub fn index_prime_candidates(t: &IntPoly, effort: &Effort) -> Result<IndexPrimeCandidates> {
    check_irreducible(t, effort)?;
    candidates_unchecked(t, effort)
}

fn candidates_unchecked(t: &IntPoly, effort: &Effort) -> Result<IndexPrimeCandidates> {
    let disc = t.discriminant()?;
    if disc.is_zero() {
        // impossible for an irreducible polynomial over Q
        return Err(Error::NotSquarefree);
    }
    let f = factor(&disc, effort)?;
    Ok(IndexPrimeCandidates {
        primes: f.repeated_primes().cloned().collect(),
        unfactored_cofactor: (!f.complete).then(|| BigInt::from(f.cofactor.clone())),
        discriminant_factored: f.to_factored_string(),
        discriminant: disc,
    })
}

/// Decides whether the monic irreducible `T` (degree 2 to 4) is monogenic.
///
/// Never guesses: a discriminant that cannot be fully factored within the
/// budget gives `Unknown` unless one of the primes already found divides the
/// index.
pub fn is_monogenic(t: &IntPoly, effort: &Effort) -> Result<MonogenicityVerdict> {
    check_irreducible(t, effort)?;
    let cands = candidates_unchecked(t, effort)?;
    let witnesses = cands
        .primes
        .iter()
        .map(|q| witness_unchecked(t, &BigInt::from(q.clone())))
        .collect::<Result<Vec<_>>>()?;
    let checked_primes: Vec<(u64, bool)> = witnesses
        .iter()
        .map(|w| (w.prime, w.divides_index))
        .collect();
    let witness_prime = witnesses.iter().find(|w| w.divides_index).map(|w| w.prime);
    let status = if witness_prime.is_some() {
        Status::NotMonogenic
    } else if cands.unfactored_cofactor.is_some() {
        Status::Unknown
    } else {
        Status::Monogenic
    };
    Ok(MonogenicityVerdict {
        status,
        witness_prime,
        unfactored_cofactor: if status == Status::Unknown {
            cands.unfactored_cofactor
        } else {
            None
        },
        checked_primes,
        witnesses,
        field_disc_if_monogenic: (status == Status::Monogenic).then(|| cands.discriminant.clone()),
        discriminant: cands.discriminant,
        discriminant_factored: cands.discriminant_factored,
    })
}
