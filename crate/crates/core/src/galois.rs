//! Galois groups of irreducible monic integer quartics.
//!
//! [`classify`] decides the group from the rational roots of the cubic
//! resolvent, the discriminant, and (when the resolvent has exactly one
//! rational root) whether the two quadratic factors of
//! `g(x) = (x^2 - s x + d)(x^2 + a x + (b - s))` split over the quadratic
//! field cut out by the resolvent. Quadratic fields are compared by the
//! squarefree cores of their discriminants; no field arithmetic is done.
//!
//! [`frobenius_cycle_types`] is an independent check: it collects the
//! factorization patterns of `f mod p` over good primes and reads the group
//! off which cycle types occur.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fq_poly::{reduce_mod_unchecked, squarefree_degree_pattern};
use crate::int_arith::{is_perfect_square, primes_up_to, squarefree_part, Effort};
use crate::poly::IntPoly;
use crate::qx_irreducible::{is_irreducible_with, rational_roots_with};
use crate::ser;

/// Transitive subgroups of S4, in the usual 4T numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GaloisLabel {
    #[serde(rename = "4T1")]
    T1,
    #[serde(rename = "4T2")]
    T2,
    #[serde(rename = "4T3")]
    T3,
    #[serde(rename = "4T4")]
    T4,
    #[serde(rename = "4T5")]
    T5,
}

impl GaloisLabel {
    pub const ALL: [GaloisLabel; 5] = [
        GaloisLabel::T1,
        GaloisLabel::T2,
        GaloisLabel::T3,
        GaloisLabel::T4,
        GaloisLabel::T5,
    ];

    pub fn group_name(self) -> &'static str {
        match self {
            GaloisLabel::T1 => "C4",
            GaloisLabel::T2 => "C2xC2",
            GaloisLabel::T3 => "D4",
            GaloisLabel::T4 => "A4",
            GaloisLabel::T5 => "S4",
        }
    }

    pub fn order(self) -> u32 {
        match self {
            GaloisLabel::T1 | GaloisLabel::T2 => 4,
            GaloisLabel::T3 => 8,
            GaloisLabel::T4 => 12,
            GaloisLabel::T5 => 24,
        }
    }

    /// Every cycle type occurring in the group.
    pub fn cycle_types(self) -> &'static [CycleType] {
        use CycleType::*;
        match self {
            GaloisLabel::T1 => &[Identity, DoubleTransposition, FourCycle],
            GaloisLabel::T2 => &[Identity, DoubleTransposition],
            GaloisLabel::T3 => &[Identity, Transposition, DoubleTransposition, FourCycle],
            GaloisLabel::T4 => &[Identity, DoubleTransposition, ThreeCycle],
            GaloisLabel::T5 => &[
                Identity,
                Transposition,
                DoubleTransposition,
                ThreeCycle,
                FourCycle,
            ],
        }
    }
}

impl fmt::Display for GaloisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            GaloisLabel::T1 => 1,
            GaloisLabel::T2 => 2,
            GaloisLabel::T3 => 3,
            GaloisLabel::T4 => 4,
            GaloisLabel::T5 => 5,
        };
        write!(f, "4T{n}")
    }
}

impl std::str::FromStr for GaloisLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GaloisLabel::ALL
            .into_iter()
            .find(|g| g.to_string() == s || g.group_name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown Galois label {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationEvidence {
    pub resolvent: IntPoly,
    /// Distinct rational roots of the resolvent, ascending.
    #[serde(serialize_with = "ser::display_vec")]
    pub rational_roots_of_resolvent: Vec<BigInt>,
    #[serde(serialize_with = "ser::display_opt")]
    pub chosen_s: Option<BigInt>,
    /// Squarefree `m` with `L = Q(sqrt m)`.
    #[serde(serialize_with = "ser::display_opt")]
    pub splitting_core_m: Option<BigInt>,
    pub g_factors: Option<(IntPoly, IntPoly)>,
    #[serde(serialize_with = "ser::display")]
    pub discriminant: BigInt,
    pub disc_is_square: bool,
}

fn require_monic_quartic(f: &IntPoly) -> Result<()> {
    match f.degree() {
        Some(4) if f.is_monic() => Ok(()),
        Some(4) => Err(Error::NotMonic),
        Some(d) => Err(Error::DegreeOutOfRange {
            min: 4,
            max: 4,
            found: d,
        }),
        None => Err(Error::ZeroPolynomial),
    }
}

fn quartic_coeffs(f: &IntPoly) -> (BigInt, BigInt, BigInt, BigInt) {
    (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0))
}

/// `x^3 - b x^2 + (ac - 4d) x - (a^2 d - 4bd + c^2)` for
/// `f = x^4 + a x^3 + b x^2 + c x + d`.
pub fn resolvent_cubic(f: &IntPoly) -> Result<IntPoly> {
    require_monic_quartic(f)?;
    let (a, b, c, d) = quartic_coeffs(f);
    let four = BigInt::from(4);
    Ok(IntPoly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b,
        BigInt::one(),
    ]))
}

/// The two quadratic factors of `g(x)` for resolvent root `s`.
pub fn g_factors(f: &IntPoly, s: &BigInt) -> (IntPoly, IntPoly) {
    let (a, b, _, d) = quartic_coeffs(f);
    (
        IntPoly::new(vec![d, -s, BigInt::one()]),
        IntPoly::new(vec![b - s, a, BigInt::one()]),
    )
}

fn quadratic_disc(q: &IntPoly) -> BigInt {
    let (b, c) = (q.coeff(1), q.coeff(0));
    &b * &b - BigInt::from(4) * c
}

fn splits_over(disc: &BigInt, m: &BigInt, effort: &Effort) -> Result<bool> {
    if disc.is_zero() || is_perfect_square(disc) {
        return Ok(true);
    }
    let core =
        squarefree_part(disc, effort)?.ok_or_else(|| Error::IncompleteFactorization(disc.clone()))?;
    Ok(&core == m)
}

/// Whether both quadratic factors of `g(x)` split over `Q(sqrt m)`. A zero
/// discriminant (repeated rational root) counts as split.
pub fn g_splits_over_l(f: &IntPoly, s: &BigInt, m: &BigInt) -> Result<bool> {
    g_splits_over_l_with(f, s, m, &Effort::default())
}

pub fn g_splits_over_l_with(f: &IntPoly, s: &BigInt, m: &BigInt, effort: &Effort) -> Result<bool> {
    require_monic_quartic(f)?;
    let (g1, g2) = g_factors(f, s);
    Ok(splits_over(&quadratic_disc(&g1), m, effort)? && splits_over(&quadratic_disc(&g2), m, effort)?)
}

pub fn classify(f: &IntPoly) -> Result<(GaloisLabel, ClassificationEvidence)> {
    classify_with(f, &Effort::default())
}

pub fn classify_with(f: &IntPoly, effort: &Effort) -> Result<(GaloisLabel, ClassificationEvidence)> {
    require_monic_quartic(f)?;
    if !is_irreducible_with(f, effort)? {
        return Err(Error::Reducible);
    }
    let resolvent = resolvent_cubic(f)?;
    let mut roots = rational_roots_with(&resolvent, effort)?;
    roots.dedup();
    let discriminant = f.discriminant()?;
    let disc_is_square = is_perfect_square(&discriminant);
    let mut evidence = ClassificationEvidence {
        resolvent: resolvent.clone(),
        rational_roots_of_resolvent: roots.clone(),
        chosen_s: None,
        splitting_core_m: None,
        g_factors: None,
        discriminant,
        disc_is_square,
    };
    let label = match roots.len() {
        0 if disc_is_square => GaloisLabel::T4,
        0 => GaloisLabel::T5,
        1 => {
            let s = roots[0].clone();
            let (residual, rem) = resolvent.div_rem_monic(&IntPoly::linear_root(&s))?;
            debug_assert!(rem.is_zero());
            let rdisc = quadratic_disc(&residual);
            let m = squarefree_part(&rdisc, effort)?
                .ok_or_else(|| Error::IncompleteFactorization(rdisc.clone()))?;
            let split = g_splits_over_l_with(f, &s, &m, effort)?;
            evidence.g_factors = Some(g_factors(f, &s));
            evidence.chosen_s = Some(s);
            evidence.splitting_core_m = Some(m);
            if split {
                GaloisLabel::T1
            } else {
                GaloisLabel::T3
            }
        }
        // two distinct rational roots force the third
        _ => GaloisLabel::T2,
    };
    Ok((label, evidence))
}

/// Cycle type of a Frobenius element, named by the degrees of the factors of
/// `f mod p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CycleType {
    #[serde(rename = "1111")]
    Identity,
    #[serde(rename = "112")]
    Transposition,
    #[serde(rename = "22")]
    DoubleTransposition,
    #[serde(rename = "13")]
    ThreeCycle,
    #[serde(rename = "4")]
    FourCycle,
}

impl CycleType {
    pub fn from_degrees(degrees: &[usize]) -> Option<CycleType> {
        match degrees {
            [1, 1, 1, 1] => Some(CycleType::Identity),
            [1, 1, 2] => Some(CycleType::Transposition),
            [2, 2] => Some(CycleType::DoubleTransposition),
            [1, 3] => Some(CycleType::ThreeCycle),
            [4] => Some(CycleType::FourCycle),
            _ => None,
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleType::Identity => "1111",
            CycleType::Transposition => "112",
            CycleType::DoubleTransposition => "22",
            CycleType::ThreeCycle => "13",
            CycleType::FourCycle => "4",
        })
    }
}

/// Good primes that must be seen before the absence of a cycle type counts
/// as evidence. Every nonidentity class the inference relies on has density
/// at least 1/4 in any group containing it, so a class still missing after
/// 40 primes has probability below (3/4)^40 < 1e-5 of being a fluke.
pub const MIN_PRIMES_FOR_ABSENCE: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTypeProfile {
    pub observed: BTreeSet<CycleType>,
    pub primes_used: usize,
    pub inferred: Option<GaloisLabel>,
}

/// Reads the group off the observed cycle types.
///
/// 3-cycles together with a transposition or a 4-cycle occur only in S4, so
/// that case is decided immediately. Every other decision rests on some type
/// being absent and waits for [`MIN_PRIMES_FOR_ABSENCE`] good primes.
pub fn infer_group(observed: &BTreeSet<CycleType>, primes_used: usize) -> Option<GaloisLabel> {
    use CycleType::*;
    let has = |c| observed.contains(&c);
    if has(ThreeCycle) && (has(Transposition) || has(FourCycle)) {
        return Some(GaloisLabel::T5);
    }
    if primes_used < MIN_PRIMES_FOR_ABSENCE {
        return None;
    }
    Some(match (has(ThreeCycle), has(Transposition), has(FourCycle)) {
        (true, _, _) => GaloisLabel::T4,
        (false, true, _) => GaloisLabel::T3,
        (false, false, true) => GaloisLabel::T1,
        (false, false, false) => GaloisLabel::T2,
    })
}

const FROBENIUS_CHUNK: usize = 64;

fn cycle_type_at(f: &IntPoly, p: u64) -> Option<CycleType> {
    let fbar = reduce_mod_unchecked(f, p);
    let degrees = squarefree_degree_pattern(&fbar).ok()??;
    CycleType::from_degrees(&degrees)
}

/// Frobenius cycle types of an irreducible monic quartic over the primes
/// `p <= prime_bound` not dividing its discriminant. Stops early once the
/// observations already pin down S4.
pub fn frobenius_cycle_types(f: &IntPoly, prime_bound: u64) -> Result<CycleTypeProfile> {
    require_monic_quartic(f)?;
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let good: Vec<u64> = primes_up_to(prime_bound)
        .into_iter()
        .filter(|&p| !(&disc % BigInt::from(p)).is_zero())
        .collect();
    let mut observed = BTreeSet::new();
    let mut primes_used = 0;
    for chunk in good.chunks(FROBENIUS_CHUNK) {
        #[cfg(feature = "parallel")]
        let types: Vec<Option<CycleType>> = {
            use rayon::prelude::*;
            chunk.par_iter().map(|&p| cycle_type_at(f, p)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let types: Vec<Option<CycleType>> = chunk.iter().map(|&p| cycle_type_at(f, p)).collect();
        for t in types {
            // p does not divide the discriminant, so f mod p is squarefree
            observed.insert(t.ok_or(Error::NotSquarefree)?);
            primes_used += 1;
        }
        if infer_group(&observed, 0) == Some(GaloisLabel::T5) {
            break;
        }
    }
    let inferred = infer_group(&observed, primes_used);
    Ok(CycleTypeProfile {
        observed,
        primes_used,
        inferred,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_descending(desc)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn resolvent_examples() {
        assert_eq!(resolvent_cubic(&p(&[1, 0, 8, 0, 1])).unwrap(), p(&[1, -8, -4, 32]));
        assert_eq!(resolvent_cubic(&p(&[1, 1, 1, 1, 1])).unwrap(), p(&[1, -1, -3, 2]));
        assert_eq!(resolvent_cubic(&p(&[1, 0, 0, 0, 1])).unwrap(), p(&[1, 0, -4, 0]));
        assert!(matches!(
            resolvent_cubic(&p(&[1, 0, 1])),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn g_split_examples() {
        assert!(g_splits_over_l(&p(&[1, 1, 1, 1, 1]), &b(2), &b(5)).unwrap());
        assert!(!g_splits_over_l(&p(&[1, 24, 16, 4, 1]), &b(12), &b(-10)).unwrap());
        // x^4 + 4x^2 + 2 through the full chain
        let f = p(&[1, 0, 4, 0, 2]);
        let (label, ev) = classify(&f).unwrap();
        assert_eq!(label, GaloisLabel::T1);
        let s = ev.chosen_s.unwrap();
        let m = ev.splitting_core_m.unwrap();
        assert!(g_splits_over_l(&f, &s, &m).unwrap());
    }

    #[test]
    fn classify_examples() {
        let cases: [(&[i64], GaloisLabel); 5] = [
            (&[1, 0, 4, 0, 1], GaloisLabel::T2),
            (&[1, 24, 16, 4, 1], GaloisLabel::T3),
            (&[1, 2, 2, 4, 22], GaloisLabel::T4),
            (&[1, -2, -2, 6, 2], GaloisLabel::T5),
            (&[1, 1, 1, 1, 1], GaloisLabel::T1),
        ];
        for (f, want) in cases {
            assert_eq!(classify(&p(f)).unwrap().0, want, "{f:?}");
        }
        assert_eq!(classify(&p(&[1, 0, 0, 0, -1])), Err(Error::Reducible));
    }

    #[test]
    fn classify_evidence_x3() {
        let (_, ev) = classify(&p(&[1, 24, 16, 4, 1])).unwrap();
        assert_eq!(ev.chosen_s, Some(b(12)));
        assert_eq!(ev.splitting_core_m, Some(b(-10)));
        assert_eq!(ev.g_factors.unwrap().0, p(&[1, -12, 1]));
        assert!(!ev.disc_is_square);
    }

    #[test]
    fn frobenius_examples() {
        let prof = frobenius_cycle_types(&p(&[1, 1, 1, 1, 1]), 200).unwrap();
        assert!(prof.observed.contains(&CycleType::FourCycle));
        assert!(!prof.observed.contains(&CycleType::Transposition));
        assert!(!prof.observed.contains(&CycleType::ThreeCycle));
        assert_eq!(prof.inferred, Some(GaloisLabel::T1));

        let prof = frobenius_cycle_types(&p(&[1, 0, 0, 0, 1]), 200).unwrap();
        assert_eq!(
            prof.observed,
            [CycleType::Identity, CycleType::DoubleTransposition].into()
        );
        assert_eq!(prof.inferred, Some(GaloisLabel::T2));

        let prof = frobenius_cycle_types(&p(&[1, -2, -2, 6, 2]), 10_000).unwrap();
        assert_eq!(prof.inferred, Some(GaloisLabel::T5));
    }

    #[test]
    fn inference_waits_on_absence() {
        let seen: BTreeSet<_> = [CycleType::Identity, CycleType::DoubleTransposition].into();
        assert_eq!(infer_group(&seen, 10), None);
        assert_eq!(infer_group(&seen, 40), Some(GaloisLabel::T2));
        let s4: BTreeSet<_> = [CycleType::ThreeCycle, CycleType::FourCycle].into();
        assert_eq!(infer_group(&s4, 1), Some(GaloisLabel::T5));
    }

    #[test]
    fn observed_types_lie_in_the_group() {
        for (f, g) in [
            (p(&[1, 1, 1, 1, 1]), GaloisLabel::T1),
            (p(&[1, 24, 16, 4, 1]), GaloisLabel::T3),
            (p(&[1, 2, 2, 4, 22]), GaloisLabel::T4),
        ] {
            let prof = frobenius_cycle_types(&f, 2000).unwrap();
            assert!(prof.observed.iter().all(|c| g.cycle_types().contains(c)));
            assert_eq!(prof.inferred, Some(g));
        }
    }
}
