//! Parametric quartic families, their closed-form discriminants and
//! monogenicity conditions, and a registry of cyclic exemplars.
//!
//! The four `X` families are one-parameter families with Galois groups
//! 4T2 through 4T5:
//!
//! | id | polynomial | monogenic iff squarefree |
//! |----|------------|--------------------------|
//! | X2 | `x^4 + 4t x^2 + 1` | `(2t-1)(2t+1)` |
//! | X3 | `x^4 + 24t x^3 + (12t+4) x^2 + 4x + 1` | `(6t-1)(6t+1)` |
//! | X4 | `x^4 + 2x^3 + 2x^2 + 4t x + 36t^2 - 16t + 2` | `(4t-1)(108t^2-54t+7)` |
//! | X5 | `x^4 - 2x^3 - 2x^2 + 6x + 4t - 2` | each of `4t+1`, `4t-7`, `64t+13` |
//!
//! The remaining ids are previously published monogenic families, used to
//! check that the X families produce different fields. Their published
//! monogenicity hypotheses are available through [`literature_condition`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::GaloisLabel;
use crate::int_arith::{is_primitive_root, is_prime_u64, is_squarefree, Effort, Tristate};
use crate::poly::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyId {
    X2,
    X3,
    X4,
    X5,
    /// `x^4 + (36rp - 1) x^2 + 1`, `r >= 3` and `p` prime, `r` a primitive
    /// root mod 9.
    #[serde(rename = "LIT_JonesC2C2")]
    JonesC2C2,
    /// `x^4 + x^3 + (100rp + 1) x^2 + x + 1`, `r` a primitive root mod 25.
    #[serde(rename = "LIT_JonesD4plus")]
    JonesD4Plus,
    /// `x^4 - x^3 + (100rp + 1) x^2 - x + 1`.
    #[serde(rename = "LIT_JonesD4minus")]
    JonesD4Minus,
    /// `x^4 + 18x^2 - 4m x + m^2 + 81`.
    #[serde(rename = "LIT_SpearmanA4")]
    SpearmanA4,
    /// `x^4 + b x + b`.
    #[serde(rename = "LIT_SmithB")]
    SmithB,
    /// `x^4 + x^3 + d`.
    #[serde(rename = "LIT_SmithD")]
    SmithD,
    /// `x^4 - 6x^2 - m x - 3`.
    #[serde(rename = "LIT_GSS")]
    Gss,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::X2,
        FamilyId::X3,
        FamilyId::X4,
        FamilyId::X5,
        FamilyId::JonesC2C2,
        FamilyId::JonesD4Plus,
        FamilyId::JonesD4Minus,
        FamilyId::SpearmanA4,
        FamilyId::SmithB,
        FamilyId::SmithD,
        FamilyId::Gss,
    ];

    pub const X_FAMILIES: [FamilyId; 4] = [FamilyId::X2, FamilyId::X3, FamilyId::X4, FamilyId::X5];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::X2 => "X2",
            FamilyId::X3 => "X3",
            FamilyId::X4 => "X4",
            FamilyId::X5 => "X5",
            FamilyId::JonesC2C2 => "LIT_JonesC2C2",
            FamilyId::JonesD4Plus => "LIT_JonesD4plus",
            FamilyId::JonesD4Minus => "LIT_JonesD4minus",
            FamilyId::SpearmanA4 => "LIT_SpearmanA4",
            FamilyId::SmithB => "LIT_SmithB",
            FamilyId::SmithD => "LIT_SmithD",
            FamilyId::Gss => "LIT_GSS",
        }
    }

    /// Number of integer parameters: `(r, p)` for the Jones families, one
    /// otherwise.
    pub fn arity(self) -> usize {
        match self {
            FamilyId::JonesC2C2 | FamilyId::JonesD4Plus | FamilyId::JonesD4Minus => 2,
            _ => 1,
        }
    }

    pub fn is_x_family(self) -> bool {
        FamilyId::X_FAMILIES.contains(&self)
    }

    /// Galois group of every member satisfying the family's hypotheses.
    pub fn expected_group(self) -> GaloisLabel {
        match self {
            FamilyId::X2 | FamilyId::JonesC2C2 => GaloisLabel::T2,
            FamilyId::X3 | FamilyId::JonesD4Plus | FamilyId::JonesD4Minus => GaloisLabel::T3,
            FamilyId::X4 | FamilyId::SpearmanA4 => GaloisLabel::T4,
            FamilyId::X5 | FamilyId::SmithB | FamilyId::SmithD | FamilyId::Gss => GaloisLabel::T5,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Accepts the canonical name, case-insensitively, with or without the
    /// `LIT_` prefix and with `-`/`_` ignored (`x5`, `smithb`, `jones-c2c2`).
    fn from_str(s: &str) -> Result<Self> {
        let norm = |x: &str| {
            x.to_ascii_lowercase()
                .replace(['-', '_'], "")
                .trim_start_matches("lit")
                .to_string()
        };
        let want = norm(s);
        FamilyId::ALL
            .into_iter()
            .find(|id| norm(id.name()) == want)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

fn check_arity(id: FamilyId, params: &[i64]) -> Result<()> {
    if params.len() != id.arity() {
        return Err(Error::Arity {
            family: id.name(),
            expected: id.arity(),
            found: params.len(),
        });
    }
    Ok(())
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// The product `r p` for two-parameter families, or the single parameter.
fn main_param(params: &[i64]) -> BigInt {
    params.iter().fold(BigInt::one(), |acc, &v| acc * v)
}

/// Member of a family at the given parameters.
pub fn gen(id: FamilyId, params: &[i64]) -> Result<IntPoly> {
    check_arity(id, params)?;
    let t = main_param(params);
    let i = |v: i64| BigInt::from(v);
    // coefficients ascending: constant, x, x^2, x^3, x^4
    let c: [BigInt; 5] = match id {
        FamilyId::X2 => [i(1), i(0), 4 * &t, i(0), i(1)],
        FamilyId::X3 => [i(1), i(4), 12 * &t + 4, 24 * &t, i(1)],
        FamilyId::X4 => [36 * &t * &t - 16 * &t + 2, 4 * &t, i(2), i(2), i(1)],
        FamilyId::X5 => [4 * &t - 2, i(6), i(-2), i(-2), i(1)],
        FamilyId::JonesC2C2 => [i(1), i(0), 36 * &t - 1, i(0), i(1)],
        FamilyId::JonesD4Plus => [i(1), i(1), 100 * &t + 1, i(1), i(1)],
        FamilyId::JonesD4Minus => [i(1), i(-1), 100 * &t + 1, i(-1), i(1)],
        FamilyId::SpearmanA4 => [&t * &t + 81, -4 * &t, i(18), i(0), i(1)],
        FamilyId::SmithB => [t.clone(), t.clone(), i(0), i(0), i(1)],
        FamilyId::SmithD => [t.clone(), i(0), i(0), i(1), i(1)],
        FamilyId::Gss => [i(-3), -t.clone(), i(-6), i(0), i(1)],
    };
    Ok(IntPoly::new(c.to_vec()))
}

/// Published closed form of the discriminant of `gen(id, params)`.
pub fn closed_form_disc(id: FamilyId, params: &[i64]) -> Result<BigInt> {
    check_arity(id, params)?;
    let t = main_param(params);
    let sq = |x: BigInt| &x * &x;
    Ok(match id {
        FamilyId::X2 => 256 * sq(4 * &t * &t - 1),
        FamilyId::X3 => -512 * BigInt::pow(&(6 * &t - 1), 3u32) * sq(6 * &t + 1),
        FamilyId::X4 => 64 * sq(4 * &t - 1) * sq(108 * &t * &t - 54 * &t + 7),
        FamilyId::X5 => 16 * (4 * &t + 1) * (4 * &t - 7) * (64 * &t + 13),
        FamilyId::JonesC2C2 => 144 * sq(36 * &t + 1) * sq(12 * &t - 1),
        FamilyId::JonesD4Plus | FamilyId::JonesD4Minus => {
            125 * (20 * &t + 1) * (100 * &t + 1) * sq(80 * &t - 1)
        }
        FamilyId::SpearmanA4 => 256 * sq(t.clone()) * sq(&t * &t + 108),
        FamilyId::SmithB => (256 - 27 * &t) * BigInt::pow(&t, 3u32),
        FamilyId::SmithD => (256 * &t - 27) * sq(t.clone()),
        FamilyId::Gss => -27 * sq(&t - 8) * sq(&t + 8),
    })
}

fn all_squarefree(values: &[BigInt], effort: &Effort) -> Result<Tristate> {
    let mut acc = Tristate::True;
    for v in values {
        if v.is_zero() {
            return Ok(Tristate::False);
        }
        acc = acc.and(is_squarefree(v, effort)?);
        if acc == Tristate::False {
            break;
        }
    }
    Ok(acc)
}

/// The squarefree condition characterising monogenic members of an X
/// family.
pub fn condition_holds(id: FamilyId, params: &[i64], effort: &Effort) -> Result<Tristate> {
    check_arity(id, params)?;
    let t = big(params[0]);
    match id {
        FamilyId::X2 => all_squarefree(&[(2 * &t - 1) * (2 * &t + 1)], effort),
        FamilyId::X3 => all_squarefree(&[(6 * &t - 1) * (6 * &t + 1)], effort),
        FamilyId::X4 => all_squarefree(&[(4 * &t - 1) * (108 * &t * &t - 54 * &t + 7)], effort),
        FamilyId::X5 => all_squarefree(&[4 * &t + 1, 4 * &t - 7, 64 * &t + 13], effort),
        other => Err(Error::UnsupportedFamily(other.name())),
    }
}

/// Published hypotheses under which a literature-family member is
/// monogenic (and has the expected group). For X families this is
/// [`condition_holds`].
///
/// The trinomial family `x^4 - 6x^2 - m x - 3` is used without a stated
/// condition; only the two parameters with vanishing discriminant,
/// `m = +-8`, are excluded.
pub fn literature_condition(id: FamilyId, params: &[i64], effort: &Effort) -> Result<Tristate> {
    check_arity(id, params)?;
    let prime = |v: i64| v >= 2 && is_prime_u64(v as u64);
    match id {
        FamilyId::X2 | FamilyId::X3 | FamilyId::X4 | FamilyId::X5 => {
            condition_holds(id, params, effort)
        }
        FamilyId::JonesC2C2 => {
            let (r, p) = (params[0], params[1]);
            if !(r >= 3 && prime(r) && prime(p) && is_primitive_root(r, 9)) {
                return Ok(Tristate::False);
            }
            let n = big(r) * p;
            all_squarefree(
                &[(12 * &n - 1) * (12 * &n + 1) * (36 * &n - 1) * (36 * &n + 1)],
                effort,
            )
        }
        FamilyId::JonesD4Plus | FamilyId::JonesD4Minus => {
            let (r, p) = (params[0], params[1]);
            if !(r >= 3 && prime(r) && prime(p) && is_primitive_root(r, 25)) {
                return Ok(Tristate::False);
            }
            let n = big(r) * p;
            all_squarefree(&[(20 * &n + 1) * (100 * &n + 1) * (80 * &n - 1)], effort)
        }
        FamilyId::SpearmanA4 => {
            let m = big(params[0]);
            all_squarefree(&[&m * (&m * &m + 108)], effort)
        }
        FamilyId::SmithB => {
            let b = params[0];
            if b == 3 || b == 5 {
                return Ok(Tristate::False);
            }
            all_squarefree(&[big(b), 256 - 27 * big(b)], effort)
        }
        FamilyId::SmithD => {
            let d = params[0];
            if d == -2 {
                return Ok(Tristate::False);
            }
            all_squarefree(&[big(d), 256 * big(d) - 27], effort)
        }
        FamilyId::Gss => Ok(Tristate::from_bool(params[0].abs() != 8)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exemplar {
    pub name: &'static str,
    pub poly: IntPoly,
    pub expected_group: GaloisLabel,
    #[serde(serialize_with = "crate::ser::display")]
    pub expected_disc: BigInt,
    /// Expected discriminant in `p^e*q^f` form.
    pub expected_disc_factored: &'static str,
    pub note: &'static str,
}

/// The eight monogenic cyclic quartics: four real fields found by search,
/// the two real fields with a power integral basis among the simplest
/// quartics, and the only two imaginary monogenic cyclic quartic fields.
pub fn exemplars() -> Vec<Exemplar> {
    let e = |name, desc: &[i64], disc: i64, factored, note| Exemplar {
        name,
        poly: IntPoly::from_descending(desc),
        expected_group: GaloisLabel::T1,
        expected_disc: BigInt::from(disc),
        expected_disc_factored: factored,
        note,
    };
    vec![
        e("f_2", &[1, -10, 25, -20, 5], 2000, "2^4*5^3", "real; simplest quartic field, k = 2"),
        e("f_4", &[1, -8, 16, -8, -2], 2048, "2^11", "real; simplest quartic field, k = 4"),
        e("g_1", &[1, 9, 19, 9, 1], 19773, "3^2*13^3", "real"),
        e("g_2", &[1, 5, 5, -5, -5], 1125, "3^2*5^3", "real"),
        e("g_3", &[1, 11, 31, 11, 1], 15125, "5^3*11^2", "real"),
        e("g_4", &[1, 7, 9, -7, 1], 6125, "5^3*7^2", "real"),
        e("Phi5", &[1, 1, 1, 1, 1], 125, "5^3", "imaginary; Q(zeta_5)"),
        e("x4+4x2+2", &[1, 0, 4, 0, 2], 2048, "2^11", "imaginary; Q(zeta_16 - zeta_16^-1)"),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Distinctness {
    Distinct,
    /// Equal polynomial discriminants; `resolved_by_signature` is true when
    /// the two members have different numbers of real roots, which still
    /// proves the fields differ.
    SameDiscriminant { resolved_by_signature: bool },
}

/// Whether two members of an X family generate different fields, as far
/// as discriminants and signatures can tell.
///
/// Different discriminants prove different fields only when both members
/// are monogenic (their polynomial discriminants are then the field
/// discriminants); the caller is responsible for that hypothesis, which
/// [`condition_holds`] decides. Equal discriminants with different numbers
/// of real roots always mean different fields.
pub fn distinctness_check(id: FamilyId, t1: i64, t2: i64) -> Result<Distinctness> {
    if !id.is_x_family() {
        return Err(Error::UnsupportedFamily(id.name()));
    }
    if t1 == t2 {
        return Err(Error::Precondition("parameters must differ".into()));
    }
    if closed_form_disc(id, &[t1])? != closed_form_disc(id, &[t2])? {
        return Ok(Distinctness::Distinct);
    }
    let r1 = gen(id, &[t1])?.sturm_real_root_count()?;
    let r2 = gen(id, &[t2])?.sturm_real_root_count()?;
    Ok(Distinctness::SameDiscriminant {
        resolved_by_signature: r1 != r2,
    })
}
