//! Exact-scalar arithmetic: cyclotomic vectors in the power basis of a
//! root of unity, and quadratic radicals r·√s.

use moonorb::scalar::{qq, qq_int};
use moonorb::{CycScalar, ExactRadical, QQ};
use num_traits::One;
use proptest::prelude::*;

fn pow(x: &CycScalar, k: u64) -> CycScalar {
    let mut acc = CycScalar::one();
    for _ in 0..k {
        acc = acc.mul(x);
    }
    acc
}

#[test]
fn roots_of_unity_have_exact_order() {
    for e in 1..=12u64 {
        let zeta = CycScalar::e(&qq(1, e as i64));
        assert_eq!(pow(&zeta, e), CycScalar::one(), "ζ_{}^{} ≠ 1", e, e);
        for k in 1..e {
            assert_ne!(pow(&zeta, k), CycScalar::one(), "ζ_{}^{} = 1", e, k);
        }
    }
}

#[test]
fn half_turn_is_minus_one() {
    assert_eq!(CycScalar::e(&qq(1, 2)), CycScalar::from_int(-1));
    for e in [2u64, 4, 6, 8, 10, 12] {
        let half = CycScalar::root_power(e, (e / 2) as i64);
        assert_eq!(half, CycScalar::from_int(-1), "ζ_{}^{} ≠ −1", e, e / 2);
    }
}

#[test]
fn full_root_sum_vanishes() {
    for e in 2..=12u64 {
        let mut sum = CycScalar::zero();
        for k in 0..e {
            sum = sum.add(&CycScalar::root_power(e, k as i64));
        }
        assert!(sum.is_zero(), "Σ_k ζ_{}^k ≠ 0", e);
    }
}

#[test]
fn angle_addition_matches_multiplication() {
    // e(x)·e(y) = e(x + y) across mixed conductors.
    for (a, b, c, d) in [(1i64, 3i64, 1i64, 4i64), (2, 5, 1, 2), (5, 8, 5, 12)] {
        let lhs = CycScalar::e(&qq(a, b)).mul(&CycScalar::e(&qq(c, d)));
        let rhs = CycScalar::e(&(qq(a, b) + qq(c, d)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn conductor_promotion_is_transparent() {
    let x = CycScalar::e(&qq(1, 3)).add(&CycScalar::from_int(2));
    let promoted = x.promote(12);
    assert_eq!(promoted.conductor(), 12);
    assert_eq!(x, promoted);
    assert_eq!(x.mul(&x), promoted.mul(&promoted));
}

#[test]
fn rational_values_collapse_to_conductor_one() {
    // ζ₄² = −1 is rational even though it is computed at conductor 4.
    let i = CycScalar::e(&qq(1, 4));
    let minus_one = i.mul(&i);
    assert_eq!(minus_one.to_rational(), Some(qq_int(-1)));
    assert_eq!(minus_one.reduced().conductor(), 1);
    // ζ₃ is not rational.
    assert_eq!(CycScalar::e(&qq(1, 3)).to_rational(), None);
}

#[test]
fn multiplicative_inverse_round_trips() {
    let samples = [
        CycScalar::from_rational(qq(-7, 3)),
        CycScalar::e(&qq(1, 3)),
        CycScalar::e(&qq(1, 8)).scale(&qq(3, 2)),
        CycScalar::one().add(&CycScalar::e(&qq(1, 5))),
        CycScalar::from_int(2).sub(&CycScalar::e(&qq(5, 12))),
    ];
    for x in &samples {
        assert_eq!(x.mul(&x.inv()), CycScalar::one());
    }
}

#[test]
fn golden_ratio_appears_in_fifth_roots() {
    // ζ₅ + ζ₅⁻¹ = (√5 − 1)/2 satisfies y² + y − 1 = 0.
    let y = CycScalar::e(&qq(1, 5)).add(&CycScalar::e(&qq(-1, 5)));
    let lhs = y.mul(&y).add(&y).sub(&CycScalar::one());
    assert!(lhs.is_zero());
}

#[test]
fn approx_matches_unit_circle() {
    let (re, im) = CycScalar::e(&qq(1, 8)).approx();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((re - s).abs() < 1e-12 && (im - s).abs() < 1e-12);
    let (re, im) = CycScalar::e(&qq(1, 3)).approx();
    assert!((re + 0.5).abs() < 1e-12 && (im - 0.75f64.sqrt()).abs() < 1e-12);
}

/// Random cyclotomic scalar: a short Z-combination of powers of ζ_E for a
/// small conductor E.
fn arb_cyc() -> impl Strategy<Value = CycScalar> {
    let conductors = prop_oneof![Just(1u64), Just(2), Just(3), Just(4), Just(6), Just(8)];
    (conductors, proptest::collection::vec(-3i64..=3, 1..4)).prop_map(|(e, coeffs)| {
        let mut acc = CycScalar::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            let term = CycScalar::root_power(e, k as i64).scale(&qq_int(c));
            acc = acc.add(&term);
        }
        acc
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), CycScalar::zero());
    }

    #[test]
    fn inverses_and_promotion(a in arb_cyc(), target in 1u64..=4) {
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv()), CycScalar::one());
        }
        let promoted = a.promote(a.conductor() * target);
        prop_assert_eq!(&promoted, &a);
        prop_assert_eq!(promoted.reduced(), a.clone().reduced());
    }
}

#[test]
fn radical_half_integer_powers() {
    // 2^{24/2} = 2¹² and 2^{−24/2} = 2^{−12} are rational.
    let up = ExactRadical::half_integer_power(2, 24);
    assert_eq!(up.to_rational(), Some(qq_int(4096)));
    let down = ExactRadical::half_integer_power(2, -24);
    assert_eq!(down.to_rational(), Some(qq(1, 4096)));
    // 3^{5/2} = 9√3 stays radical.
    let r = ExactRadical::half_integer_power(3, 5);
    assert_eq!(r.coef(), &qq_int(9));
    assert_eq!(r.radicand(), 3);
    assert_eq!(r.to_rational(), None);
}

#[test]
fn radicals_canonicalize_square_parts() {
    let r = ExactRadical::sqrt_of(8);
    assert_eq!(r.coef(), &qq_int(2));
    assert_eq!(r.radicand(), 2);
    assert_eq!(
        ExactRadical::sqrt_of(2).mul(&ExactRadical::sqrt_of(3)).radicand(),
        6
    );
    let two = ExactRadical::sqrt_of(2).mul(&ExactRadical::sqrt_of(2));
    assert_eq!(two.to_rational(), Some(qq_int(2)));
    assert_eq!(ExactRadical::one().to_rational(), Some(QQ::one()));
}

#[test]
fn radical_approx_is_sane() {
    assert!((ExactRadical::sqrt_of(2).approx() - std::f64::consts::SQRT_2).abs() < 1e-12);
    assert!((ExactRadical::half_integer_power(2, 24).approx() - 4096.0).abs() < 1e-9);
}
