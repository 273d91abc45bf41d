//! Integer factorization, primality and squarefree analysis.
//!
//! Factoring runs trial division by the primes below 10^6 and then Brent's
//! variant of Pollard rho, interleaved with primality and perfect-power checks
//! so that large prime or square cofactors are recognised without exhausting
//! the trial range. Rho work is metered by [`Effort::rho_iterations`]; when the
//! budget runs out the leftover cofactor is reported and the factorization is
//! marked incomplete.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;
pub const DEFAULT_RHO_ITERATIONS: u64 = 1 << 26;
pub const DEFAULT_SEED: u64 = 0x6d6f_6e6f;

/// Miller-Rabin with the first 13 prime bases is deterministic below this
/// bound (Sorenson-Webster); above it 64 pseudorandom bases are used, for a
/// false-positive probability under 4^-64.
const DETERMINISTIC_MR_BOUND: &str = "3317044064679887385961981";
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RANDOM_MR_ROUNDS: usize = 64;

/// Work limit and seed for the randomized parts of factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Effort {
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for Effort {
    fn default() -> Self {
        Self {
            rho_iterations: DEFAULT_RHO_ITERATIONS,
            seed: DEFAULT_SEED,
        }
    }
}

impl Effort {
    pub fn with_budget(rho_iterations: u64) -> Self {
        Self {
            rho_iterations,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Tristate {
    True,
    False,
    Unknown,
}

impl Tristate {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tristate::True
        } else {
            Tristate::False
        }
    }

    /// Three-valued conjunction.
    pub fn and(self, other: Tristate) -> Tristate {
        match (self, other) {
            (Tristate::False, _) | (_, Tristate::False) => Tristate::False,
            (Tristate::True, Tristate::True) => Tristate::True,
            _ => Tristate::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInt {
    pub sign: i8,
    /// `(prime, exponent)`, primes strictly increasing.
    pub prime_powers: Vec<(BigUint, u32)>,
    /// Unfactored residue; one when `complete`.
    pub cofactor: BigUint,
    pub complete: bool,
}

impl FactoredInt {
    pub fn reconstruct(&self) -> BigInt {
        let mag = self
            .prime_powers
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * p.pow(*e));
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// Primes whose square divides the number (among those found).
    pub fn repeated_primes(&self) -> impl Iterator<Item = &BigUint> {
        self.prime_powers
            .iter()
            .filter(|(_, e)| *e >= 2)
            .map(|(p, _)| p)
    }

    /// `2^4*5^3` style rendering, with a leading `-` and any cofactor in
    /// brackets.
    pub fn to_factored_string(&self) -> String {
        let mut parts: Vec<String> = self
            .prime_powers
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.cofactor.is_one() {
            parts.push(format!("[{}]", self.cofactor));
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// All primes `<= bound`, for bounds up to the trial-division limit; larger
/// bounds fall back to a direct sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound <= TRIAL_DIVISION_LIMIT as u64 {
        small_primes()
            .iter()
            .take_while(|&&p| p as u64 <= bound)
            .map(|&p| p as u64)
            .collect()
    } else {
        (2..=bound).filter(|&n| is_prime_u64(n)).collect()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn mr_round_u64(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        let p = p as u64;
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    MR_BASES.iter().all(|&a| mr_round_u64(n, d, s, a as u64))
}

fn mr_round_big(n: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn is_prime_biguint(n: &BigUint, seed: u64) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let det_bound: BigUint = DETERMINISTIC_MR_BOUND.parse().unwrap();
    if !MR_BASES
        .iter()
        .all(|&a| mr_round_big(n, &d, s, &BigUint::from(a)))
    {
        return false;
    }
    if *n < det_bound {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let two = BigUint::from(2u32);
    (0..RANDOM_MR_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        mr_round_big(n, &d, s, &a)
    })
}

/// Miller-Rabin primality; deterministic for `|n| < 3.3e24`. Values `<= 1`
/// are not prime.
pub fn is_probable_prime(n: &BigInt) -> bool {
    is_probable_prime_seeded(n, DEFAULT_SEED)
}

pub fn is_probable_prime_seeded(n: &BigInt, seed: u64) -> bool {
    match n.to_biguint() {
        Some(m) => is_prime_biguint(&m, seed),
        None => false,
    }
}

/// Largest `k >= 2` with `n = r^k`, if any.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n < BigUint::from(4u32) {
        return None;
    }
    let max_k = n.bits() as u32;
    for k in (2..=max_k).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && &r.pow(k) == n {
            return Some((r, k));
        }
    }
    None
}

struct Factorizer {
    found: Vec<(BigUint, u32)>,
    leftover: Vec<(BigUint, u32)>,
    budget: u64,
    rng: ChaCha8Rng,
    seed: u64,
    stop_on_repeat: bool,
    stopped: bool,
}

impl Factorizer {
    fn record(&mut self, p: BigUint, e: u32) {
        if self.stop_on_repeat && e >= 2 {
            self.stopped = true;
        }
        self.found.push((p, e));
    }

    /// Fully splits `n^mult` into `found`, or parks it in `leftover`.
    fn split(&mut self, n: BigUint, mult: u32, trial_from: usize) {
        if n.is_one() {
            return;
        }
        if self.stopped {
            self.leftover.push((n, mult));
            return;
        }
        if is_prime_biguint(&n, self.seed) {
            self.record(n, mult);
            return;
        }
        if let Some((root, k)) = perfect_power(&n) {
            self.split(root, mult * k, trial_from);
            return;
        }
        if let Some((p, rest)) = self.trial_divide(&n, trial_from) {
            let (e, rest) = strip(&rest, p);
            self.record(BigUint::from(p), (e + 1) * mult);
            let next = small_primes().partition_point(|&q| q <= p);
            self.split(rest, mult, next);
            return;
        }
        match self.rho(&n) {
            Some(d) => {
                let other = &n / &d;
                let g = d.gcd(&other);
                if g.is_one() {
                    self.split(d, mult, trial_from);
                    self.split(other, mult, trial_from);
                } else {
                    // d and n/d share factors; peel the common part so the
                    // pieces handed on are coprime.
                    self.split_with_common(n, g, mult, trial_from);
                }
            }
            None => self.leftover.push((n, mult)),
        }
    }

    fn split_with_common(&mut self, mut n: BigUint, g: BigUint, mult: u32, trial_from: usize) {
        let mut e = 0;
        while (&n % &g).is_zero() {
            n /= &g;
            e += 1;
        }
        self.split(g, mult * e, trial_from);
        self.split(n, mult, trial_from);
    }

    /// Smallest trial prime (from index `from`) dividing `n`, stopping at
    /// `sqrt(n)` or the trial limit.
    fn trial_divide(&self, n: &BigUint, from: usize) -> Option<(u32, BigUint)> {
        let primes = small_primes();
        if let Some(small) = n.to_u64() {
            for &p in &primes[from.min(primes.len())..] {
                let p64 = p as u64;
                if p64 * p64 > small {
                    return None;
                }
                if small % p64 == 0 {
                    return Some((p, BigUint::from(small / p64)));
                }
            }
            return None;
        }
        for &p in &primes[from.min(primes.len())..] {
            if (n % p).is_zero() {
                return Some((p, n / p));
            }
        }
        None
    }

    fn rho(&mut self, n: &BigUint) -> Option<BigUint> {
        if n.is_even() {
            return Some(BigUint::from(2u32));
        }
        while self.budget > 0 {
            let c = self.rng.gen_biguint_range(&BigUint::one(), n);
            let y0 = self.rng.gen_biguint_range(&BigUint::zero(), n);
            if let Some(d) = self.brent(n, &c, y0) {
                if &d != n {
                    return Some(d);
                }
            }
        }
        None
    }

    /// One Brent cycle-finding run of `x -> x^2 + c`. Returns a nontrivial
    /// divisor, `n` itself on a failed cycle, or `None` when out of budget.
    fn brent(&mut self, n: &BigUint, c: &BigUint, y0: BigUint) -> Option<BigUint> {
        const BATCH: u64 = 128;
        let step = |v: &BigUint| (v * v + c) % n;
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        let mut y = y0;
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut x;
        let mut ys;
        let mut g;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                let m = BATCH.min(r - k);
                for _ in 0..m {
                    y = step(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                self.budget = self.budget.saturating_sub(m);
                g = q.gcd(n);
                k += m;
                if k >= r || !g.is_one() {
                    break;
                }
            }
            r *= 2;
            if !g.is_one() {
                break;
            }
            if self.budget == 0 {
                return None;
            }
        }
        if &g == n {
            // Back up to the last batch and step one at a time.
            loop {
                ys = step(&ys);
                g = diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        Some(g)
    }
}

fn strip(n: &BigUint, p: u32) -> (u32, BigUint) {
    let mut n = n.clone();
    let mut e = 0;
    while (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    (e, n)
}

fn factor_impl(n: &BigInt, effort: &Effort, stop_on_repeat: bool) -> Result<FactoredInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mag = n.magnitude().clone();
    let mut f = Factorizer {
        found: Vec::new(),
        leftover: Vec::new(),
        budget: effort.rho_iterations,
        rng: ChaCha8Rng::seed_from_u64(effort.seed),
        seed: effort.seed,
        stop_on_repeat,
        stopped: false,
    };
    f.split(mag, 1, 0);

    let mut found = f.found;
    found.sort();
    let mut prime_powers: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in found {
        match prime_powers.last_mut() {
            Some((q, acc)) if *q == p => *acc += e,
            _ => prime_powers.push((p, e)),
        }
    }
    let cofactor = f
        .leftover
        .iter()
        .fold(BigUint::one(), |acc, (c, e)| acc * c.pow(*e));
    let complete = cofactor.is_one();
    Ok(FactoredInt {
        sign,
        prime_powers,
        cofactor,
        complete,
    })
}

/// Prime factorization of `n != 0`, possibly incomplete when the rho budget
/// runs out.
pub fn factor(n: &BigInt, effort: &Effort) -> Result<FactoredInt> {
    factor_impl(n, effort, false)
}

/// Squarefree test on `|n|`. Stops at the first repeated prime; an
/// unfactored cofactor that is itself a perfect square also means `False`.
pub fn is_squarefree(n: &BigInt, effort: &Effort) -> Result<Tristate> {
    let f = factor_impl(n, effort, true)?;
    if f.repeated_primes().next().is_some() {
        return Ok(Tristate::False);
    }
    if f.complete {
        return Ok(Tristate::True);
    }
    if is_perfect_square(&BigInt::from(f.cofactor.clone())) {
        return Ok(Tristate::False);
    }
    Ok(Tristate::Unknown)
}

/// `sign(n) * prod p` over primes of odd exponent; `None` if the
/// factorization is incomplete.
pub fn squarefree_part(n: &BigInt, effort: &Effort) -> Result<Option<BigInt>> {
    let f = factor(n, effort)?;
    if !f.complete {
        return Ok(None);
    }
    let mag = f
        .prime_powers
        .iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p);
    let sign = if f.sign < 0 { Sign::Minus } else { Sign::Plus };
    Ok(Some(BigInt::from_biguint(sign, mag)))
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(m) => {
            let r = m.sqrt();
            &r * &r == m
        }
        None => false,
    }
}

/// All positive divisors of a completely factored integer, ascending.
pub fn divisors(f: &FactoredInt) -> Result<Vec<BigUint>> {
    if !f.complete {
        return Err(Error::IncompleteFactorization(f.cofactor.clone().into()));
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in &f.prime_powers {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=*e {
                next.push(pk.clone());
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Is `g` a primitive root modulo `n`? Only meaningful when a primitive root
/// exists; computed by brute-force order.
pub fn is_primitive_root(g: i64, n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let g = g.rem_euclid(n);
    if g.gcd(&n) != 1 {
        return false;
    }
    let phi = (1..n).filter(|k| k.gcd(&n) == 1).count() as i64;
    let mut x = 1i64;
    for k in 1..=phi {
        x = x * g % n;
        if x == 1 {
            return k == phi;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pp(pairs: &[(u32, u32)]) -> Vec<(BigUint, u32)> {
        pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect()
    }

    #[test]
    fn primality_examples() {
        assert!(is_probable_prime(&b(61)));
        assert!(!is_probable_prime(&b(1)));
        assert!(!is_probable_prime(&b(143)));
        assert!(!is_probable_prime(&b(-7)));
        // Mersenne prime 2^89 - 1 is above the deterministic bound's bit size
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(&m89 * &b(3))));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&b(2000), &Effort::default()).unwrap();
        assert_eq!((f.sign, f.complete), (1, true));
        assert_eq!(f.prime_powers, pp(&[(2, 4), (5, 3)]));

        let f = factor(&b(-18480), &Effort::default()).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.prime_powers, pp(&[(2, 4), (3, 1), (5, 1), (7, 1), (11, 1)]));
        assert_eq!(f.to_factored_string(), "-2^4*3*5*7*11");

        let f = factor(&b(1), &Effort::default()).unwrap();
        assert!(f.prime_powers.is_empty() && f.complete);
        assert_eq!(factor(&b(0), &Effort::default()), Err(Error::ZeroInput));
    }

    #[test]
    fn factor_beyond_trial_range() {
        // two primes just above 10^6 and a square of a 10^7-sized prime
        let p1 = b(1_000_003);
        let p2 = b(1_000_033);
        let n = &p1 * &p2;
        let f = factor(&n, &Effort::default()).unwrap();
        assert!(f.complete);
        assert_eq!(f.prime_powers.len(), 2);
        let q = b(10_000_019);
        let f = factor(&(&q * &q * b(12)), &Effort::default()).unwrap();
        assert!(f.complete);
        assert_eq!(f.reconstruct(), &q * &q * b(12));
    }

    #[test]
    fn budget_exhaustion_reports_cofactor() {
        // semiprime of two ~40-bit primes; rho needs ~2^20 steps
        let p = b(1_099_511_627_791);
        let q = b(1_099_511_628_401);
        assert!(is_probable_prime(&p) && is_probable_prime(&q));
        let n = &p * &q;
        let f = factor(&n, &Effort::with_budget(16)).unwrap();
        assert!(!f.complete);
        assert_eq!(f.reconstruct(), n);
        assert_eq!(is_squarefree(&n, &Effort::with_budget(16)).unwrap(), Tristate::Unknown);
        assert_eq!(squarefree_part(&n, &Effort::with_budget(16)).unwrap(), None);
        // the same number with the default budget splits
        assert!(factor(&n, &Effort::default()).unwrap().complete);
    }

    #[test]
    fn unknown_cofactor_square_is_not_squarefree() {
        let p = b(1_099_511_627_791);
        let n = &p * &p;
        // perfect-power detection catches the square before rho is needed
        assert_eq!(is_squarefree(&n, &Effort::with_budget(0)).unwrap(), Tristate::False);
    }

    #[test]
    fn squarefree_examples() {
        let e = Effort::default();
        assert_eq!(is_squarefree(&b(15), &e).unwrap(), Tristate::True);
        assert_eq!(is_squarefree(&b(99), &e).unwrap(), Tristate::False);
        assert_eq!(is_squarefree(&b(1), &e).unwrap(), Tristate::True);
        assert_eq!(is_squarefree(&b(-1), &e).unwrap(), Tristate::True);
        assert_eq!(is_squarefree(&b(0), &e), Err(Error::ZeroInput));
    }

    #[test]
    fn squarefree_part_examples() {
        let e = Effort::default();
        assert_eq!(squarefree_part(&b(20), &e).unwrap(), Some(b(5)));
        assert_eq!(squarefree_part(&b(-160), &e).unwrap(), Some(b(-10)));
        assert_eq!(squarefree_part(&b(140), &e).unwrap(), Some(b(35)));
    }

    #[test]
    fn perfect_square_examples() {
        assert!(is_perfect_square(&b(2_143_296)));
        assert!(!is_perfect_square(&b(-4)));
        assert!(is_perfect_square(&b(0)));
        assert!(!is_perfect_square(&b(2_143_297)));
    }

    #[test]
    fn divisor_enumeration() {
        let f = factor(&b(12), &Effort::default()).unwrap();
        let d: Vec<u32> = divisors(&f)
            .unwrap()
            .iter()
            .map(|x| x.to_u32().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(2, 9));
        assert!(is_primitive_root(5, 9));
        assert!(!is_primitive_root(7, 9));
        assert!(is_primitive_root(3, 25));
        assert!(!is_primitive_root(7, 25));
    }
}
