//! Polynomials over a prime field `F_q` and their complete factorization.
//!
//! Factoring runs squarefree decomposition (with the `q`-th root step when
//! the derivative vanishes), distinct-degree splitting via `x^(q^d) - x`, and
//! equal-degree splitting: exhaustive search below [`EXHAUSTIVE_LIMIT`],
//! Cantor-Zassenhaus above it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::int_arith::is_prime_u64;
use crate::poly::IntPoly;

/// Moduli below this split equal-degree products by trying every candidate
/// factor. Above it, and always for odd `q`, Cantor-Zassenhaus is available.
pub const EXHAUSTIVE_LIMIT: u64 = 256;

const MAX_FACTOR_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FqPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % m;
    let mut e = m - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

impl FqPoly {
    /// Builds from ascending residues, reducing each mod `modulus`. The
    /// modulus is assumed prime; use [`reduce_mod`] for a checked entry point.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(modulus, vec![])
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(modulus, vec![1])
    }

    pub fn x(modulus: u64) -> Self {
        Self::new(modulus, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
    }

    pub fn monic(&self) -> FqPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(inv_mod(lc, self.modulus)),
        }
    }

    pub fn scale(&self, k: u64) -> FqPoly {
        let m = self.modulus;
        Self::new(m, self.coeffs.iter().map(|&c| mul_mod(c, k, m)).collect())
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            m,
            (0..n)
                .map(|i| add_mod(self.c(i), other.c(i), m))
                .collect(),
        )
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            m,
            (0..n)
                .map(|i| sub_mod(self.c(i), other.c(i), m))
                .collect(),
        )
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        let m = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(m);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, m), m);
            }
        }
        Self::new(m, out)
    }

    pub fn pow(&self, e: u32) -> FqPoly {
        (0..e).fold(Self::one(self.modulus), |acc, _| acc.mul(self))
    }

    /// `(quotient, remainder)`; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &FqPoly) -> (FqPoly, FqPoly) {
        let m = self.modulus;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lc = inv_mod(divisor.coeffs[dd], m);
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (Self::zero(m), Self::zero(m));
        };
        if n < dd {
            return (Self::zero(m), self.clone());
        }
        let mut quot = vec![0u64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let lead = mul_mod(rem[k + dd], inv_lc, m);
            if lead == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(lead, d, m), m);
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        (Self::new(m, quot), Self::new(m, rem))
    }

    pub fn rem(&self, divisor: &FqPoly) -> FqPoly {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &FqPoly) -> Option<FqPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> FqPoly {
        let m = self.modulus;
        Self::new(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % m, m))
                .collect(),
        )
    }

    /// `self^e mod modulus_poly`.
    pub fn pow_mod(&self, mut e: u128, modulus_poly: &FqPoly) -> FqPoly {
        let mut acc = Self::one(self.modulus).rem(modulus_poly);
        let mut base = self.rem(modulus_poly);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus_poly);
            }
            base = base.mul(&base).rem(modulus_poly);
            e >>= 1;
        }
        acc
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Inverse of the Frobenius on coefficients: `sum a_i x^(iq)` to
    /// `sum a_i x^i`. Requires every exponent present to be a multiple of q.
    fn qth_root(&self) -> FqPoly {
        let q = self.modulus as usize;
        Self::new(
            self.modulus,
            self.coeffs.iter().step_by(q).copied().collect(),
        )
    }

    fn canonical_cmp(&self, other: &FqPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "x".into(),
                (1, _) => format!("{c}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FqFactorization {
    pub modulus: u64,
    /// Monic irreducible factors with multiplicity, sorted by degree and then
    /// by coefficients from the top down.
    pub factors: Vec<(FqPoly, u32)>,
}

impl FqFactorization {
    pub fn product(&self) -> FqPoly {
        self.factors
            .iter()
            .fold(FqPoly::one(self.modulus), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    /// Product of the distinct irreducible factors.
    pub fn radical(&self) -> FqPoly {
        self.factors
            .iter()
            .fold(FqPoly::one(self.modulus), |acc, (f, _)| acc.mul(f))
    }

    /// Factor degrees repeated by multiplicity, ascending.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.degree().unwrap(), *e as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

fn checked_modulus(q: &BigInt) -> Result<u64> {
    let small = q.to_u64().ok_or_else(|| Error::ModulusTooLarge(q.clone()))?;
    if small >= 1 << 63 {
        return Err(Error::ModulusTooLarge(q.clone()));
    }
    if !is_prime_u64(small) {
        return Err(Error::NotPrime(q.clone()));
    }
    Ok(small)
}

/// Coefficientwise reduction into `[0, q)`.
pub fn reduce_mod(p: &IntPoly, q: &BigInt) -> Result<FqPoly> {
    let m = checked_modulus(q)?;
    Ok(reduce_mod_unchecked(p, m))
}

pub(crate) fn reduce_mod_unchecked(p: &IntPoly, m: u64) -> FqPoly {
    let big_m = BigInt::from(m);
    FqPoly::new(
        m,
        p.coeffs()
            .iter()
            .map(|c| c.mod_floor(&big_m).to_u64().unwrap())
            .collect(),
    )
}

/// Monic gcd; zero only when both inputs are zero.
pub fn gcd_mod(a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus, b.modulus));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Lift with coefficients in `[0, q)`.
pub fn monic_lift(p: &FqPoly) -> Result<IntPoly> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(IntPoly::new(p.coeffs.iter().map(|&c| BigInt::from(c)).collect()))
}

/// Complete factorization of the monic normalization of `p`, `1 <= deg p <= 4`.
pub fn factor_mod(p: &FqPoly) -> Result<FqFactorization> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeOutOfRange {
            min: 1,
            max: MAX_FACTOR_DEGREE,
            found: deg,
        });
    }
    let q = p.modulus;
    let mut rng = ChaCha8Rng::seed_from_u64(q);
    let mut factors: Vec<(FqPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut merged: Vec<(FqPoly, u32)> = Vec::new();
    for (f, e) in factors {
        match merged.last_mut() {
            Some((g, acc)) if *g == f => *acc += e,
            _ => merged.push((f, e)),
        }
    }
    Ok(FqFactorization {
        modulus: q,
        factors: merged,
    })
}

/// Degrees of the irreducible factors of a squarefree `p`, ascending, from
/// distinct-degree factorization alone; `None` if `p` is not squarefree.
/// Cheaper than [`factor_mod`] when only the degrees matter.
pub fn squarefree_degree_pattern(p: &FqPoly) -> Result<Option<Vec<usize>>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let f = p.monic();
    if !gcd_mod(&f, &f.derivative())?.is_one() {
        return Ok(None);
    }
    let mut out: Vec<usize> = distinct_degree(&f)
        .into_iter()
        .flat_map(|(block, d)| std::iter::repeat_n(d, block.degree().unwrap() / d))
        .collect();
    out.sort_unstable();
    Ok(Some(out))
}

/// Squarefree factors of a monic `f` with their multiplicities.
fn squarefree_decomposition(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let q = f.modulus;
    let mut out = Vec::new();
    let mut c = gcd_mod(f, &f.derivative()).unwrap();
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = gcd_mod(&w, &c).unwrap();
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        // c is a q-th power
        let root = c.qth_root();
        out.extend(
            squarefree_decomposition(&root)
                .into_iter()
                .map(|(g, e)| (g, e * q as u32)),
        );
    }
    out
}

/// Splits a squarefree monic polynomial into products of equal-degree
/// irreducibles, tagged with that degree.
fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let q = f.modulus;
    let x = FqPoly::x(q);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q as u128, &rest);
        let g = gcd_mod(&h.sub(&x), &rest).unwrap();
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, deg));
    }
    out
}

/// Irreducible monic factors of a product of distinct degree-`d` irreducibles.
fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let q = f.modulus;
    if q < EXHAUSTIVE_LIMIT {
        return exhaustive_split(f, d);
    }
    let exponent = (q as u128).pow(d as u32).saturating_sub(1) / 2;
    loop {
        let a = FqPoly::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(exponent, f).sub(&FqPoly::one(q));
        let g = gcd_mod(&b, f).unwrap();
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g).unwrap(), d, rng));
            return out;
        }
    }
}

/// Tries every monic degree-`d` polynomial as a divisor.
fn exhaustive_split(f: &FqPoly, d: usize) -> Vec<FqPoly> {
    let q = f.modulus;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let count = q.pow(d as u32);
    for idx in 0..count {
        if rest.degree().unwrap() == d {
            out.push(rest);
            return out;
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            coeffs.push(k % q);
            k /= q;
        }
        coeffs.push(1);
        let cand = FqPoly::new(q, coeffs);
        if let Some(quot) = rest.div_exact(&cand) {
            out.push(cand);
            rest = quot;
        }
    }
    unreachable!("equal-degree block of degree {} did not split", f.degree().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u64, desc: &[u64]) -> FqPoly {
        FqPoly::new(q, desc.iter().rev().copied().collect())
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn degree_pattern_matches_full_factorization() {
        for q in [2u64, 3, 7, 101, 257, 1_000_003] {
            for a in 0..12u64 {
                let f = fq(q, &[1, a, 3, a * a + 1, 5]);
                let full = factor_mod(&f).unwrap();
                let pattern = squarefree_degree_pattern(&f).unwrap();
                if full.factors.iter().all(|(_, e)| *e == 1) {
                    assert_eq!(pattern, Some(full.degree_pattern()), "{f}");
                } else {
                    assert_eq!(pattern, None, "{f}");
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        for t in [-3i64, 0, 1, 7] {
            let f = IntPoly::from_descending(&[1, 0, 4 * t, 0, 1]);
            assert_eq!(reduce_mod(&f, &b(2)).unwrap(), fq(2, &[1, 0, 0, 0, 1]));
        }
        let f = IntPoly::from_descending(&[1, 0, -5]);
        assert_eq!(reduce_mod(&f, &b(2)).unwrap(), fq(2, &[1, 0, 1]));
        assert!(reduce_mod(&IntPoly::from_descending(&[6, 3]), &b(3))
            .unwrap()
            .is_zero());
        assert_eq!(reduce_mod(&f, &b(4)), Err(Error::NotPrime(b(4))));
    }

    #[test]
    fn gcd_examples() {
        let x1 = fq(2, &[1, 1]);
        assert_eq!(gcd_mod(&x1, &x1).unwrap(), x1);
        assert!(gcd_mod(&x1.pow(3), &fq(2, &[1, 0, 0])).unwrap().is_one());
        assert_eq!(gcd_mod(&fq(2, &[1, 0, 1]), &x1).unwrap(), x1);
        assert_eq!(
            gcd_mod(&x1, &fq(3, &[1, 1])),
            Err(Error::ModulusMismatch(2, 3))
        );
        assert!(gcd_mod(&FqPoly::zero(5), &FqPoly::zero(5)).unwrap().is_zero());
    }

    #[test]
    fn factor_examples() {
        let f = factor_mod(&fq(2, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fq(2, &[1, 1]), 4)]);

        // x^2 - 4x + 5 = x^2 + x mod 5
        let f = factor_mod(&fq(5, &[1, 1, 0])).unwrap();
        assert_eq!(f.factors, vec![(fq(5, &[1, 0]), 1), (fq(5, &[1, 1]), 1)]);

        let f = factor_mod(&fq(3, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fq(3, &[1, 0, 1]), 1)]);

        assert_eq!(factor_mod(&fq(7, &[3])), Err(Error::ConstantPolynomial));
        assert!(matches!(
            factor_mod(&fq(7, &[1, 0, 0, 0, 0, 1])),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn small_characteristic_qth_powers() {
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1 over F_2: derivative vanishes
        let f = factor_mod(&fq(2, &[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fq(2, &[1, 1, 1]), 2)]);
        // (x + 1)^3 over F_3 is x^3 + 1
        let f = factor_mod(&fq(3, &[1, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fq(3, &[1, 1]), 3)]);
        // x (x + 2)^3 over F_3
        let g = fq(3, &[1, 0]).mul(&fq(3, &[1, 2]).pow(3));
        let f = factor_mod(&g).unwrap();
        assert_eq!(f.factors, vec![(fq(3, &[1, 0]), 1), (fq(3, &[1, 2]), 3)]);
    }

    #[test]
    fn large_modulus_uses_cantor_zassenhaus() {
        let q = 1_000_003u64;
        // two distinct irreducible quadratics x^2 + a, split by CZ at degree 2
        let irr: Vec<FqPoly> = (1..50u64)
            .map(|a| fq(q, &[1, 0, a]))
            .filter(|g| factor_mod(g).unwrap().factors.len() == 1)
            .take(2)
            .collect();
        // -2 is a square mod q, so x^2 + 2 is not among them
        assert!(!irr.contains(&fq(q, &[1, 0, 2])));
        assert_eq!(factor_mod(&fq(q, &[1, 0, 2])).unwrap().degree_pattern(), vec![1, 1]);
        let lin = fq(q, &[1, q - 5]).mul(&fq(q, &[1, q - 17]));
        let f = factor_mod(&lin.mul(&irr[0])).unwrap();
        assert_eq!(f.product(), lin.mul(&irr[0]));
        assert_eq!(f.factors[0], (fq(q, &[1, q - 17]), 1));
        assert_eq!(f.factors[1], (fq(q, &[1, q - 5]), 1));
        assert_eq!(f.factors[2], (irr[0].clone(), 1));
        let f = factor_mod(&irr[0].mul(&irr[1])).unwrap();
        assert_eq!(f.degree_pattern(), vec![2, 2]);
        assert_eq!(f.product(), irr[0].mul(&irr[1]));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(
            monic_lift(&fq(2, &[1, 1])).unwrap(),
            IntPoly::from_descending(&[1, 1])
        );
        assert_eq!(
            monic_lift(&fq(5, &[1, 4, 4])).unwrap(),
            IntPoly::from_descending(&[1, 4, 4])
        );
        assert_eq!(
            monic_lift(&fq(2, &[1, 1]).pow(3)).unwrap(),
            IntPoly::from_descending(&[1, 1, 1, 1])
        );
        assert_eq!(monic_lift(&fq(5, &[2, 1])), Err(Error::NotMonic));
    }
}
