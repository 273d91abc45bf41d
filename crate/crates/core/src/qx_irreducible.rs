//! Irreducibility over Q for monic integer polynomials of degree 2 to 4.
//!
//! By Gauss's lemma a monic integer polynomial factors over Q iff it factors
//! into monic integer polynomials, so everything reduces to integer roots and,
//! for quartics, a search over monic quadratic pairs driven by the divisors of
//! the constant term.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fq_poly::{reduce_mod_unchecked, squarefree_degree_pattern};
use crate::int_arith::{divisors, factor, is_perfect_square, primes_up_to, Effort};
use crate::poly::IntPoly;

fn signed_divisors(n: &BigInt, effort: &Effort) -> Result<Vec<BigInt>> {
    let f = factor(n, effort)?;
    let pos = divisors(&f)?;
    Ok(pos
        .into_iter()
        .flat_map(|d| {
            let d = BigInt::from(d);
            [d.clone(), -d]
        })
        .collect())
}

/// Integer roots of a monic polynomial, with multiplicity, ascending.
pub fn rational_roots(p: &IntPoly) -> Result<Vec<BigInt>> {
    rational_roots_with(p, &Effort::default())
}

pub fn rational_roots_with(p: &IntPoly, effort: &Effort) -> Result<Vec<BigInt>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    while rest.degree().unwrap() > 0 && rest.coeff(0).is_zero() {
        roots.push(BigInt::zero());
        rest = IntPoly::new(rest.coeffs()[1..].to_vec());
    }
    if rest.degree().unwrap() > 0 {
        for d in signed_divisors(&rest.coeff(0), effort)? {
            loop {
                let (q, r) = rest.div_rem_monic(&IntPoly::linear_root(&d))?;
                if !r.is_zero() {
                    break;
                }
                roots.push(d.clone());
                rest = q;
                if rest.degree().unwrap() == 0 {
                    break;
                }
            }
            if rest.degree().unwrap() == 0 {
                break;
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn check_degree(p: &IntPoly) -> Result<usize> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !(2..=4).contains(&deg) {
        return Err(Error::DegreeOutOfRange {
            min: 2,
            max: 4,
            found: deg,
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(deg)
}

/// Exact irreducibility over Q for monic `p` of degree 2, 3 or 4.
pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    is_irreducible_with(p, &Effort::default())
}

pub fn is_irreducible_with(p: &IntPoly, effort: &Effort) -> Result<bool> {
    let deg = check_degree(p)?;
    if p.coeff(0).is_zero() {
        return Ok(false);
    }
    if deg == 2 {
        // no factoring needed: a monic quadratic splits iff its
        // discriminant is a square
        return Ok(!is_perfect_square(&p.discriminant()?));
    }
    if p.discriminant()?.is_zero() {
        // a repeated factor
        return Ok(false);
    }
    if modular_certificate(p, deg) {
        return Ok(true);
    }
    if !rational_roots_with(p, effort)?.is_empty() {
        return Ok(false);
    }
    if deg < 4 {
        return Ok(true);
    }
    Ok(quadratic_split(p, effort)?.is_none())
}

const CERTIFICATE_PRIME_BOUND: u64 = 200;

/// Proves irreducibility without factoring the constant term, from the
/// factorization patterns of `p` modulo small primes of good reduction. A
/// factorization over Z survives reduction, so a prime with no linear factor
/// rules out rational roots, and for quartics a prime with a factor of
/// degree at least 3 rules out a product of two quadratics. Returns false when
/// the small primes are inconclusive (e.g. every pattern refines 2+2).
fn modular_certificate(p: &IntPoly, deg: usize) -> bool {
    let mut no_root = false;
    let mut no_quadratic_pair = deg < 4;
    for q in primes_up_to(CERTIFICATE_PRIME_BOUND) {
        let Ok(Some(pattern)) = squarefree_degree_pattern(&reduce_mod_unchecked(p, q)) else {
            continue;
        };
        if pattern.iter().sum::<usize>() != deg {
            continue;
        }
        no_root |= !pattern.contains(&1);
        no_quadratic_pair |= pattern.iter().any(|&d| d >= 3);
        if no_root && no_quadratic_pair {
            return true;
        }
    }
    false
}

/// Finds `(x^2 + u x + v)(x^2 + w x + z)` equal to the monic quartic `p`,
/// returned as the two quadratics.
pub fn quadratic_split(p: &IntPoly, effort: &Effort) -> Result<Option<(IntPoly, IntPoly)>> {
    let (a, bc, c, d) = (p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
    if d.is_zero() {
        return Err(Error::Precondition("constant term must be nonzero".into()));
    }
    let quad = |u: &BigInt, v: &BigInt| IntPoly::new(vec![v.clone(), u.clone(), BigInt::one()]);
    for v in signed_divisors(&d, effort)? {
        let z = &d / &v;
        if v > z {
            // each unordered pair {v, z} once
            continue;
        }
        // u + w = a, v + z + u w = b, u z + v w = c
        if v != z {
            // u (z - v) = c - a v
            let (u, rem) = (&c - &a * &v).div_rem(&(&z - &v));
            if !rem.is_zero() {
                continue;
            }
            let w = &a - &u;
            if &v + &z + &u * &w == bc {
                return Ok(Some((quad(&u, &v), quad(&w, &z))));
            }
        } else {
            // v = z: need v a = c, and u, w roots of s^2 - a s + (b - 2v)
            if &v * &a != c {
                continue;
            }
            let disc = &a * &a - BigInt::from(4) * (&bc - BigInt::from(2) * &v);
            if !is_perfect_square(&disc) {
                continue;
            }
            let root = BigInt::from(disc.magnitude().sqrt());
            let (u, rem) = (&a + &root).div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                continue;
            }
            let w = &a - &u;
            return Ok(Some((quad(&u, &v), quad(&w, &z))));
        }
    }
    Ok(None)
}

/// First `(prime, shift)` in scan order such that `p(x + shift)` is Eisenstein
/// at `prime`.
pub fn eisenstein_witness(p: &IntPoly, shifts: RangeInclusive<i64>) -> Option<(BigUint, i64)> {
    let deg = p.degree()?;
    if deg == 0 || !p.is_monic() {
        return None;
    }
    let effort = Effort::default();
    for c in shifts {
        let s = p.shift(&BigInt::from(c));
        let constant = s.coeff(0);
        if constant.is_zero() {
            continue;
        }
        let Ok(f) = factor(&constant, &effort) else {
            continue;
        };
        for (prime, e) in &f.prime_powers {
            let q = BigInt::from(prime.clone());
            let divides_all = (0..deg).all(|i| s.coeff(i).is_multiple_of(&q));
            if divides_all && *e == 1 {
                return Some((prime.clone(), c));
            }
        }
    }
    None
}

/// Perron's criterion: `|a_{n-1}| > 1 + |a_{n-2}| + ... + |a_0|` with
/// `a_0 != 0` implies irreducibility of a monic polynomial.
pub fn perron_applies(p: &IntPoly) -> bool {
    let Some(n) = p.degree() else { return false };
    if n < 2 || !p.is_monic() || p.coeff(0).is_zero() {
        return false;
    }
    let tail: BigInt = (0..n - 1).map(|i| p.coeff(i).abs()).sum();
    p.coeff(n - 1).abs() > tail + 1
}
