//! Family verification over parameter ranges.
//!
//! [`scan_row`] checks one member of an X family end to end: the Galois
//! group, the discriminant against its closed form, and the Dedekind verdict
//! against the family's squarefree condition. [`overlap`] looks for equal
//! discriminants between monogenic members of two families, which is
//! necessary for them to generate the same field.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::dedekind::{is_monogenic, Status};
use crate::error::{Error, Result};
use crate::families::{closed_form_disc, condition_holds, gen, literature_condition, FamilyId};
use crate::galois::{classify_with, GaloisLabel};
use crate::int_arith::{factor, Effort, Tristate};
use crate::poly::IntPoly;
use crate::ser;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub family: FamilyId,
    pub t: i64,
    pub group: GaloisLabel,
    pub group_matches: bool,
    #[serde(serialize_with = "ser::display")]
    pub disc: BigInt,
    pub disc_factored: Option<String>,
    pub disc_matches_formula: bool,
    pub condition: Tristate,
    pub verdict: Status,
    pub witness_prime: Option<u64>,
    /// Verdict and condition say the same thing. Rows where either side is
    /// unknown are not counted as disagreements.
    pub agree: bool,
}

impl ScanRow {
    /// Every check on the row passed.
    pub fn ok(&self) -> bool {
        self.agree && self.group_matches && self.disc_matches_formula
    }
}

pub fn scan_row(id: FamilyId, t: i64, effort: &Effort) -> Result<ScanRow> {
    if !id.is_x_family() {
        return Err(Error::UnsupportedFamily(id.name()));
    }
    let f = gen(id, &[t])?;
    let (group, evidence) = classify_with(&f, effort)?;
    let verdict = is_monogenic(&f, effort)?;
    let condition = condition_holds(id, &[t], effort)?;
    let disc = evidence.discriminant;
    let factored = factor(&disc, effort)?;
    let agree = matches!(
        (condition, verdict.status),
        (Tristate::True, Status::Monogenic)
            | (Tristate::False, Status::NotMonogenic)
            | (Tristate::Unknown, _)
            | (_, Status::Unknown)
    );
    Ok(ScanRow {
        family: id,
        t,
        group,
        group_matches: group == id.expected_group(),
        disc_matches_formula: disc == closed_form_disc(id, &[t])?,
        disc_factored: factored.complete.then(|| factored.to_factored_string()),
        disc,
        condition,
        verdict: verdict.status,
        witness_prime: verdict.witness_prime,
        agree,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub rows: usize,
    pub monogenic: usize,
    pub not_monogenic: usize,
    pub unknown: usize,
    pub agreement_failures: usize,
    pub group_failures: usize,
    pub formula_failures: usize,
}

impl ScanSummary {
    pub fn from_rows(rows: &[ScanRow]) -> Self {
        let mut s = ScanSummary {
            rows: rows.len(),
            ..Default::default()
        };
        for r in rows {
            match r.verdict {
                Status::Monogenic => s.monogenic += 1,
                Status::NotMonogenic => s.not_monogenic += 1,
                Status::Unknown => s.unknown += 1,
            }
            s.agreement_failures += usize::from(!r.agree);
            s.group_failures += usize::from(!r.group_matches);
            s.formula_failures += usize::from(!r.disc_matches_formula);
        }
        s
    }

    pub fn all_ok(&self) -> bool {
        self.agreement_failures == 0 && self.group_failures == 0 && self.formula_failures == 0
    }
}

/// Rows for `t_min..=t_max`, ascending in `t` whatever the evaluation
/// order.
pub fn scan_range(id: FamilyId, t_min: i64, t_max: i64, effort: &Effort) -> Result<Vec<ScanRow>> {
    if t_min > t_max {
        return Err(Error::Precondition(format!("empty range {t_min}..={t_max}")));
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (t_min..=t_max)
            .into_par_iter()
            .map(|t| scan_row(id, t, effort))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (t_min..=t_max).map(|t| scan_row(id, t, effort)).collect()
    }
}

/// Outcome of checking one registry entry: the group, the monogenicity
/// verdict and the discriminant against their expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExemplarCheck {
    pub name: String,
    pub poly: IntPoly,
    pub group: Option<GaloisLabel>,
    pub expected_group: GaloisLabel,
    pub verdict: Option<Status>,
    #[serde(serialize_with = "ser::display")]
    pub disc: BigInt,
    #[serde(serialize_with = "ser::display")]
    pub expected_disc: BigInt,
    pub disc_factored: Option<String>,
    /// Why the check failed, if it did.
    pub failure: Option<String>,
    pub pass: bool,
}

pub fn check_exemplar(
    name: &str,
    poly: &IntPoly,
    expected_group: GaloisLabel,
    expected_disc: &BigInt,
    effort: &Effort,
) -> Result<ExemplarCheck> {
    let disc = poly.discriminant()?;
    let mut failures = Vec::new();
    if &disc != expected_disc {
        failures.push(format!("discriminant {disc} != expected {expected_disc}"));
    }
    let group = match classify_with(poly, effort) {
        Ok((g, _)) => Some(g),
        Err(e) => {
            failures.push(e.to_string());
            None
        }
    };
    if let Some(g) = group.filter(|&g| g != expected_group) {
        failures.push(format!("group {g} != expected {expected_group}"));
    }
    let verdict = match is_monogenic(poly, effort) {
        Ok(v) => Some(v.status),
        Err(e) => {
            if group.is_some() {
                failures.push(e.to_string());
            }
            None
        }
    };
    if let Some(v) = verdict.filter(|&v| v != Status::Monogenic) {
        failures.push(format!("verdict {v}"));
    }
    let disc_factored = if disc.is_zero() {
        None
    } else {
        let f = factor(&disc, effort)?;
        f.complete.then(|| f.to_factored_string())
    };
    Ok(ExemplarCheck {
        name: name.to_string(),
        poly: poly.clone(),
        group,
        expected_group,
        verdict,
        disc,
        expected_disc: expected_disc.clone(),
        disc_factored,
        pass: failures.is_empty(),
        failure: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

/// Pairs of families compared for discriminant collisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OverlapPair {
    #[serde(rename = "X5-vs-SmithB")]
    X5SmithB,
    #[serde(rename = "X5-vs-SmithD")]
    X5SmithD,
    #[serde(rename = "X5-vs-GSS")]
    X5Gss,
    #[serde(rename = "X2-vs-JonesC2C2")]
    X2JonesC2C2,
    #[serde(rename = "X3-vs-JonesD4")]
    X3JonesD4,
    #[serde(rename = "X4-vs-Spearman")]
    X4Spearman,
}

impl OverlapPair {
    pub const ALL: [OverlapPair; 6] = [
        OverlapPair::X5SmithB,
        OverlapPair::X5SmithD,
        OverlapPair::X5Gss,
        OverlapPair::X2JonesC2C2,
        OverlapPair::X3JonesD4,
        OverlapPair::X4Spearman,
    ];

    pub fn families(self) -> (FamilyId, FamilyId) {
        match self {
            OverlapPair::X5SmithB => (FamilyId::X5, FamilyId::SmithB),
            OverlapPair::X5SmithD => (FamilyId::X5, FamilyId::SmithD),
            OverlapPair::X5Gss => (FamilyId::X5, FamilyId::Gss),
            OverlapPair::X2JonesC2C2 => (FamilyId::X2, FamilyId::JonesC2C2),
            OverlapPair::X3JonesD4 => (FamilyId::X3, FamilyId::JonesD4Plus),
            OverlapPair::X4Spearman => (FamilyId::X4, FamilyId::SpearmanA4),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OverlapPair::X5SmithB => "X5-vs-SmithB",
            OverlapPair::X5SmithD => "X5-vs-SmithD",
            OverlapPair::X5Gss => "X5-vs-GSS",
            OverlapPair::X2JonesC2C2 => "X2-vs-JonesC2C2",
            OverlapPair::X3JonesD4 => "X3-vs-JonesD4",
            OverlapPair::X4Spearman => "X4-vs-Spearman",
        }
    }
}

impl fmt::Display for OverlapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OverlapPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = |x: &str| x.to_ascii_lowercase().replace(['-', '_'], "");
        OverlapPair::ALL
            .into_iter()
            .find(|p| norm(p.name()) == norm(s))
            .ok_or_else(|| Error::Parse(format!("unknown overlap pair {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub left_params: Vec<i64>,
    pub right_params: Vec<i64>,
    #[serde(serialize_with = "ser::display")]
    pub disc: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    pub pair: OverlapPair,
    pub left: FamilyId,
    pub right: FamilyId,
    /// The X family was scanned over `-left_bound..=left_bound`.
    pub left_bound: i64,
    /// One-parameter literature families over `-right_bound..=right_bound`;
    /// two-parameter ones over `2..=right_bound` in each of `r` and `p`.
    pub right_bound: i64,
    /// Members satisfying their family's monogenicity hypotheses.
    pub left_members: usize,
    pub right_members: usize,
    pub collisions: Vec<Collision>,
    /// 2-adic valuations of the discriminants seen on each side.
    pub left_2adic: BTreeSet<u64>,
    pub right_2adic: BTreeSet<u64>,
    /// Why no collision can occur, when the valuation sets are disjoint.
    pub reason: Option<String>,
}

fn two_adic(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

/// Exhaustive discriminant-collision scan between the monogenic members of
/// the two families of `pair` within the given bounds.
pub fn overlap(pair: OverlapPair, left_bound: i64, right_bound: i64, effort: &Effort) -> Result<OverlapReport> {
    let (left, right) = pair.families();
    let left_params: Vec<Vec<i64>> = (-left_bound..=left_bound).map(|t| vec![t]).collect();
    let right_params: Vec<Vec<i64>> = if right.arity() == 2 {
        (2..=right_bound)
            .flat_map(|r| (2..=right_bound).map(move |p| vec![r, p]))
            .collect()
    } else {
        (-right_bound..=right_bound).map(|m| vec![m]).collect()
    };
    let members = |id: FamilyId, params: Vec<Vec<i64>>| -> Result<Vec<(Vec<i64>, BigInt)>> {
        let mut out = Vec::new();
        for ps in params {
            if literature_condition(id, &ps, effort)? == Tristate::True {
                let d = closed_form_disc(id, &ps)?;
                if !d.is_zero() {
                    out.push((ps, d));
                }
            }
        }
        Ok(out)
    };
    let lm = members(left, left_params)?;
    let rm = members(right, right_params)?;

    let mut by_disc: HashMap<&BigInt, Vec<&Vec<i64>>> = HashMap::new();
    for (ps, d) in &lm {
        by_disc.entry(d).or_default().push(ps);
    }
    let mut collisions = Vec::new();
    for (rps, d) in &rm {
        if let Some(lps) = by_disc.get(d) {
            for lp in lps {
                collisions.push(Collision {
                    left_params: (*lp).clone(),
                    right_params: rps.clone(),
                    disc: d.clone(),
                });
            }
        }
    }
    let left_2adic: BTreeSet<u64> = lm.iter().map(|(_, d)| two_adic(d)).collect();
    let right_2adic: BTreeSet<u64> = rm.iter().map(|(_, d)| two_adic(d)).collect();
    let reason = left_2adic
        .is_disjoint(&right_2adic)
        .then(|| "2-adic valuation mismatch".to_string());
    Ok(OverlapReport {
        pair,
        left,
        right,
        left_bound,
        right_bound,
        left_members: lm.len(),
        right_members: rm.len(),
        collisions,
        left_2adic,
        right_2adic,
        reason,
    })
}
