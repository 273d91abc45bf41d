//! Property and brute-force checks of the algebraic invariants each layer
//! must satisfy.

use monoquartic::dedekind::{dedekind_at_prime, is_monogenic, Status};
use monoquartic::families::{closed_form_disc, gen, FamilyId};
use monoquartic::fq_poly::{factor_mod, gcd_mod, FqPoly};
use monoquartic::galois::{classify, frobenius_cycle_types, GaloisLabel};
use monoquartic::int_arith::{
    factor, is_perfect_square, is_probable_prime, squarefree_part, Effort,
};
use monoquartic::qx_irreducible::{eisenstein_witness, is_irreducible, perron_applies, rational_roots};
use monoquartic::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn quartic(a: i64, b: i64, c: i64, d: i64) -> IntPoly {
    IntPoly::from_descending(&[1, a, b, c, d])
}

#[test]
fn quadratic_discriminant_closed_form() {
    for a in -50i64..=50 {
        if a == 0 {
            continue;
        }
        for b in -50i64..=50 {
            for c in -50i64..=50 {
                let d = IntPoly::from_descending(&[a, b, c]).discriminant().unwrap();
                assert_eq!(d, big(b * b - 4 * a * c), "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn perfect_squares_exhaustive() {
    let mut next_root = 0i64;
    for n in 0i64..=1_000_000 {
        let expected = next_root * next_root == n;
        if expected {
            next_root += 1;
        }
        assert_eq!(is_perfect_square(&big(n)), expected, "{n}");
    }
}

fn fq_poly(q: u64, coeffs: &[u64]) -> FqPoly {
    FqPoly::new(q, coeffs.to_vec())
}

/// All polynomials of degree 0..=4 over F_q with nonzero leading
/// coefficient, plus zero.
fn all_fq(q: u64) -> Vec<FqPoly> {
    let mut out = vec![FqPoly::zero(q)];
    for deg in 0..=4u32 {
        for idx in 0..q.pow(deg) * (q - 1) {
            let mut k = idx;
            let mut c = Vec::new();
            for _ in 0..deg {
                c.push(k % q);
                k /= q;
            }
            c.push(1 + k);
            out.push(FqPoly::new(q, c));
        }
    }
    out
}

#[test]
fn gcd_is_greatest_common_divisor_over_f2_f3() {
    for q in [2u64, 3] {
        let polys = all_fq(q);
        let monic_divisors: Vec<&FqPoly> = polys.iter().filter(|p| p.is_monic()).collect();
        for a in polys.iter().filter(|p| p.degree().unwrap_or(0) <= 3) {
            for b in polys.iter().filter(|p| p.degree().unwrap_or(0) <= 3) {
                let g = gcd_mod(a, b).unwrap();
                if a.is_zero() && b.is_zero() {
                    assert!(g.is_zero());
                    continue;
                }
                assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero(), "{a}, {b}: {g}");
                for d in &monic_divisors {
                    if a.rem(d).is_zero() && b.rem(d).is_zero() {
                        assert!(g.rem(d).is_zero(), "{d} divides {a} and {b} but not {g}");
                    }
                }
            }
        }
    }
}

#[test]
fn literature_formulas_agree_with_resultants() {
    for id in FamilyId::ALL {
        if id.arity() == 2 {
            for r in 1..=20i64 {
                for p in [2i64, 3, 5, 7, 97] {
                    let f = gen(id, &[r, p]).unwrap();
                    assert_eq!(f.discriminant().unwrap(), closed_form_disc(id, &[r, p]).unwrap());
                }
            }
        } else {
            let bound = if id.is_x_family() { 300 } else { 100 };
            for t in -bound..=bound {
                let f = gen(id, &[t]).unwrap();
                assert_eq!(f.discriminant().unwrap(), closed_form_disc(id, &[t]).unwrap(), "{id} {t}");
            }
        }
    }
}

#[test]
fn x3_family_has_perron_certificates() {
    for t in -300i64..=300 {
        let f = gen(FamilyId::X3, &[t]).unwrap();
        if t != 0 {
            assert!(perron_applies(&f), "t={t}");
        }
        assert!(is_irreducible(&f).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_shift_invariant(
        a in -30i64..=30, b in -30i64..=30, c in -30i64..=30, d in -30i64..=30, s in -10i64..=10,
    ) {
        let f = quartic(a, b, c, d);
        prop_assert_eq!(f.shift(&big(s)).discriminant().unwrap(), f.discriminant().unwrap());
    }

    #[test]
    fn resultant_antisymmetry(
        p in prop::collection::vec(-9i64..=9, 2..=5),
        q in prop::collection::vec(-9i64..=9, 2..=5),
    ) {
        let (p, q) = (IntPoly::from_i64s(&p), IntPoly::from_i64s(&q));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
        let sign = if (dp * dq) % 2 == 0 { big(1) } else { big(-1) };
        prop_assert_eq!(q.resultant(&p).unwrap(), sign * p.resultant(&q).unwrap());
    }

    #[test]
    fn sturm_count_bounded_and_parity(coeffs in prop::collection::vec(-20i64..=20, 3..=7)) {
        let p = IntPoly::from_i64s(&coeffs);
        let n = p.degree().unwrap_or(0);
        prop_assume!(n >= 1 && !p.discriminant().unwrap().is_zero());
        let roots = p.sturm_real_root_count().unwrap();
        prop_assert!(roots <= n);
        // nonreal roots come in conjugate pairs
        prop_assert_eq!(roots % 2, n % 2);
    }

    #[test]
    fn rational_roots_are_roots(
        a in -30i64..=30, b in -30i64..=30, c in -30i64..=30,
    ) {
        let r = IntPoly::from_descending(&[1, a, b, c]);
        let roots = rational_roots(&r).unwrap();
        prop_assert!(roots.len() <= 3);
        for x in &roots {
            prop_assert!(r.eval(x).is_zero());
        }
    }

    #[test]
    fn eisenstein_implies_irreducible(
        a in -12i64..=12, b in -12i64..=12, c in -12i64..=12, d in -12i64..=12,
    ) {
        let f = quartic(a, b, c, d);
        if eisenstein_witness(&f, -3..=3).is_some() {
            prop_assert!(is_irreducible(&f).unwrap());
        }
    }

    #[test]
    fn classification_consistent_with_discriminant_and_shift(
        a in -20i64..=20, b in -20i64..=20, c in -20i64..=20, d in -20i64..=20, s in -3i64..=3,
    ) {
        let f = quartic(a, b, c, d);
        prop_assume!(is_irreducible(&f).unwrap());
        let (label, ev) = classify(&f).unwrap();
        match label {
            GaloisLabel::T4 => prop_assert!(is_perfect_square(&ev.discriminant)),
            GaloisLabel::T5 => prop_assert!(!is_perfect_square(&ev.discriminant)),
            _ => {}
        }
        prop_assert_eq!(ev.chosen_s.is_some(), ev.rational_roots_of_resolvent.len() == 1);
        if let Some(m) = &ev.splitting_core_m {
            prop_assert!(m != &big(1));
        }
        prop_assert_eq!(classify(&f.shift(&big(s))).unwrap().0, label);
    }

    #[test]
    fn frobenius_types_lie_in_group(
        a in -20i64..=20, b in -20i64..=20, c in -20i64..=20, d in -20i64..=20,
    ) {
        let f = quartic(a, b, c, d);
        prop_assume!(is_irreducible(&f).unwrap());
        let (label, _) = classify(&f).unwrap();
        let prof = frobenius_cycle_types(&f, 600).unwrap();
        prop_assert!(prof.observed.iter().all(|t| label.cycle_types().contains(t)));
        if let Some(g) = prof.inferred {
            prop_assert_eq!(g, label);
        }
    }

    #[test]
    fn dedekind_witness_identity(
        a in -15i64..=15, b in -15i64..=15, c in -15i64..=15, d in -15i64..=15,
        qi in 0usize..8,
    ) {
        let q = [2i64, 3, 5, 7, 11, 13, 17, 19][qi];
        let f = quartic(a, b, c, d);
        prop_assume!(is_irreducible(&f).unwrap());
        let w = dedekind_at_prime(&f, &big(q)).unwrap();
        prop_assert_eq!(&(&w.f.scale(&big(q)) + &f), &(&w.h1 * &w.h2));
        prop_assert_eq!(w.divides_index, !w.gcd_mod_q.is_one());
        let disc = f.discriminant().unwrap();
        if !(&disc % (q * q)).is_zero() {
            prop_assert!(!w.divides_index);
        }
    }

    #[test]
    fn monogenic_verdicts_consistent(
        a in -15i64..=15, b in -15i64..=15, c in -15i64..=15, d in -15i64..=15,
    ) {
        let f = quartic(a, b, c, d);
        prop_assume!(is_irreducible(&f).unwrap());
        let v = is_monogenic(&f, &Effort::default()).unwrap();
        match v.status {
            Status::Monogenic => {
                prop_assert_eq!(v.field_disc_if_monogenic.as_ref(), Some(&v.discriminant));
                prop_assert!(v.checked_primes.iter().all(|(_, divides)| !divides));
            }
            Status::NotMonogenic => {
                let q = v.witness_prime.unwrap();
                prop_assert!(v.checked_primes.contains(&(q, true)));
            }
            Status::Unknown => prop_assert!(false, "unknown verdict for small input"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn factorization_reconstructs(n in -1_000_000_000_000i64..=1_000_000_000_000) {
        prop_assume!(n != 0);
        let f = factor(&big(n), &Effort::default()).unwrap();
        prop_assert!(f.complete);
        prop_assert_eq!(f.reconstruct(), big(n));
        prop_assert!(f.prime_powers.windows(2).all(|w| w[0].0 < w[1].0));
        for (p, e) in &f.prime_powers {
            prop_assert!(*e >= 1 && is_probable_prime(&BigInt::from(p.clone())));
        }
        let core = squarefree_part(&big(n), &Effort::default()).unwrap().unwrap();
        prop_assert_eq!(core.signum(), big(n).signum());
        prop_assert!((big(n) % &core).is_zero());
        prop_assert!(is_perfect_square(&(big(n) / core)));
    }

    #[test]
    fn fq_refactoring_larger_primes(
        qi in 0usize..3,
        coeffs in prop::collection::vec(0u64..13, 2..=5),
    ) {
        let q = [7u64, 11, 13][qi];
        let f = FqPoly::new(q, coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor_mod(&f).unwrap();
        prop_assert_eq!(fac.product(), f.monic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn fq_root_count_matches_brute_force(
        qi in 0usize..26,
        coeffs in prop::collection::vec(0u64..101, 2..=5),
    ) {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101];
        let q = primes[qi];
        let f = fq_poly(q, &coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor_mod(&f).unwrap();
        let linear: Vec<u64> = fac
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| (q - g.coeffs()[0]) % q)
            .collect();
        let brute: Vec<u64> = (0..q).filter(|&x| f.eval(x) == 0).collect();
        let mut sorted = linear.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, brute);
    }
}
