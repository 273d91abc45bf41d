//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending degree order (`coeffs[i]` multiplies
//! `x^i`) and kept trimmed, so the zero polynomial is the empty vector. The
//! text form used by the CLI is the reverse: whitespace-separated integers in
//! descending degree order. [`IntPoly::from_str`] and
//! [`IntPoly::to_descending_string`] are the only places that convert.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending-order coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(ascending: &[i64]) -> Self {
        Self::new(ascending.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from descending-order coefficients, the way
    /// polynomials are written by hand: `[1, 0, 4, 0, 1]` is `x^4 + 4x^2 + 1`.
    pub fn from_descending(descending: &[i64]) -> Self {
        Self::new(descending.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Coefficients of `p(x + c)`.
    pub fn shift(&self, c: &BigInt) -> IntPoly {
        let x_plus_c = IntPoly::new(vec![c.clone(), BigInt::one()]);
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, coeff| {
            &(&acc * &x_plus_c) + &IntPoly::constant(coeff.clone())
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `k`, failing unless the division is exact.
    pub fn div_exact_scalar(&self, k: &BigInt) -> Option<IntPoly> {
        if k.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// Division by a monic divisor. Returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((IntPoly::zero(), IntPoly::zero()));
        };
        if n < dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &lead * d;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed over the
    /// integers.
    pub fn pseudo_rem(&self, b: &IntPoly) -> Result<IntPoly> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lb = b.leading().unwrap().clone();
        let mut r = self.clone();
        let Some(da) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if da < db {
            return Ok(r);
        }
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let mut shifted = vec![BigInt::zero(); dr - db];
            shifted.extend(b.coeffs.iter().map(|c| c * &lr));
            r = &r.scale(&lb) - &IntPoly::new(shifted);
            steps -= 1;
        }
        Ok(r.scale(&num_traits::pow(lb, steps)))
    }

    /// `Res(p, q)` as the determinant of the Sylvester matrix, which equals
    /// `lc(p)^deg(q) * prod q(alpha)` over the roots of `p`.
    pub fn resultant(&self, q: &IntPoly) -> Result<BigInt> {
        let m = self.degree().ok_or(Error::ZeroPolynomial)?;
        let n = q.degree().ok_or(Error::ZeroPolynomial)?;
        let size = m + n;
        if size == 0 {
            return Ok(BigInt::one());
        }
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                rows[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in q.coeffs.iter().rev().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        Ok(bareiss_determinant(rows))
    }

    /// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)` with `n = deg p`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading().unwrap();
        let d = res / lc;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }

    /// Number of distinct real roots, via a Sturm sequence of sign-corrected
    /// primitive pseudo-remainders.
    pub fn sturm_real_root_count(&self) -> Result<usize> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Ok(0);
        }
        let seq = self.sturm_sequence()?;
        let at_pos_inf: Vec<i8> = seq.iter().map(|p| sign(p.leading().unwrap())).collect();
        let at_neg_inf: Vec<i8> = seq
            .iter()
            .map(|p| {
                let s = sign(p.leading().unwrap());
                if p.degree().unwrap() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        Ok(sign_changes(&at_neg_inf) - sign_changes(&at_pos_inf))
    }

    fn sturm_sequence(&self) -> Result<Vec<IntPoly>> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let a = &seq[seq.len() - 2];
            let b = &seq[seq.len() - 1];
            let prem = a.pseudo_rem(b)?;
            if prem.is_zero() {
                break;
            }
            // prem carries a factor lc(b)^e; a negative factor flips the sign.
            let e = a.degree().unwrap() - b.degree().unwrap() + 1;
            let flip = b.leading().unwrap().is_negative() && e % 2 == 1;
            let next = if flip { prem } else { -prem };
            let content = next.content();
            seq.push(next.div_exact_scalar(&content).unwrap());
        }
        if seq.last().unwrap().degree().unwrap() > 0 {
            return Err(Error::NotSquarefree);
        }
        Ok(seq)
    }

    /// Descending-order coefficients separated by single spaces.
    pub fn to_descending_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn sign(c: &BigInt) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Fraction-free Gaussian elimination; every intermediate is an exact minor.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.to_descending_string())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses descending-order, whitespace-separated integer coefficients.
    fn from_str(s: &str) -> Result<Self> {
        let mut desc = Vec::new();
        for tok in s.split_whitespace() {
            let c: BigInt = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))?;
            desc.push(c);
        }
        if desc.is_empty() {
            return Err(Error::Parse("no coefficients given".into()));
        }
        desc.reverse();
        Ok(IntPoly::new(desc))
    }
}

impl fmt::Display for IntPoly {
    /// Human form, e.g. `x^4 - 10x^3 + 25x^2 - 20x + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
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
    fn eval_examples() {
        assert_eq!(p(&[1, -10, 25, -20, 5]).eval(&b(1)), b(1));
        // x^3 - 4t x^2 - 4x + 16t at t = 3 vanishes at 2
        assert_eq!(p(&[1, -12, -4, 48]).eval(&b(2)), b(0));
        assert_eq!(IntPoly::zero().eval(&b(7)), b(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[1, 0, 4, 0, 1]).derivative(), p(&[4, 0, 8, 0]));
        assert!(p(&[5]).derivative().is_zero());
        assert_eq!(p(&[1, 24, 16, 4, 1]).derivative(), p(&[4, 72, 32, 4]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[1, 0, 4, 0, 1]).shift(&b(-1)), p(&[1, -4, 10, -12, 6]));
        let q = p(&[3, -1, 4, 1, -5]);
        assert_eq!(q.shift(&b(0)), q);
        assert_eq!(p(&[1, 0, 0]).shift(&b(1)), p(&[1, 2, 1]));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[1, 0, -5]).resultant(&p(&[2, 0])).unwrap(), b(-20));
        // x - 3 against x - 7: q(3) = -4
        assert_eq!(p(&[1, -3]).resultant(&p(&[1, -7])).unwrap(), b(-4));
        assert_eq!(p(&[1, 0]).resultant(&p(&[1, 0])).unwrap(), b(0));
        assert_eq!(IntPoly::zero().resultant(&p(&[1])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[1, 0, -5]).discriminant().unwrap(), b(20));
        assert_eq!(p(&[1, 0, 4, 0, 1]).discriminant().unwrap(), b(2304));
        assert_eq!(p(&[1, -10, 25, -20, 5]).discriminant().unwrap(), b(2000));
        assert_eq!(p(&[1, 0, 0, 0, 0]).discriminant().unwrap(), b(0));
        assert_eq!(p(&[7]).discriminant(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(p(&[1, 0, -4, 0, 1]).sturm_real_root_count().unwrap(), 4);
        assert_eq!(p(&[1, 0, 4, 0, 1]).sturm_real_root_count().unwrap(), 0);
        assert_eq!(p(&[1, 0, -5]).sturm_real_root_count().unwrap(), 2);
        assert_eq!(
            p(&[1, -2, 1]).sturm_real_root_count(),
            Err(Error::NotSquarefree)
        );
        // negative leading coefficient, roots -1, 0, 1
        assert_eq!(p(&[-1, 0, 1, 0]).sturm_real_root_count().unwrap(), 3);
    }

    #[test]
    fn text_round_trip() {
        let q: IntPoly = "1 -10 25 -20 5".parse().unwrap();
        assert_eq!(q, p(&[1, -10, 25, -20, 5]));
        assert_eq!(q.to_descending_string(), "1 -10 25 -20 5");
        assert_eq!(q.to_string(), "x^4 - 10x^3 + 25x^2 - 20x + 5");
        assert!("1 x 3".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
    }
}
