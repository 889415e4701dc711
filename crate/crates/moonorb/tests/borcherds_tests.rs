//! Tests for the two-variable product expansions and the denominator
//! identities: hand-expandable explicit systems first, then the graded
//! identities themselves and the uniqueness search.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use moonorb::borcherds::{
    denominator_2b_check, knz_check, nonfricke_degenerate_check, nonneg_uniqueness_search,
    product_log_expansion, product_side, switched_denominator_check, twisted_denominator_h1,
    CoefficientSystem,
};
use moonorb::catalog::load_catalog;
use moonorb::hecke::{build_2b_table, j_series, PairFunctionTable};
use moonorb::scalar::{qq, qq_int, CycScalar, QQ};

fn explicit(modulus: u64, values: &[((u64, i64), i64)]) -> CoefficientSystem {
    CoefficientSystem::Explicit {
        modulus,
        values: values.iter().copied().collect::<BTreeMap<_, _>>(),
    }
}

/// C(n, k) for small arguments, by the multiplicative recurrence.
fn binomial(n: i64, k: i64) -> i64 {
    let mut out: i64 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[test]
fn empty_system_gives_the_bare_pole() {
    let sys = explicit(1, &[]);
    let prod = product_side(&sys, 3, 3).unwrap();
    assert_eq!(prod.coeff(&-QQ::one(), &QQ::zero()), CycScalar::one());
    for p in 0..=3i64 {
        for q in 0..=3i64 {
            assert!(prod.coeff(&qq_int(p), &qq_int(q)).is_zero());
        }
    }
}

#[test]
fn single_factor_follows_the_binomial_theorem() {
    // p^{-1}(1 - p)^24: coefficient of p^{k-1} is (-1)^k C(24, k).
    let sys = explicit(1, &[((1, 0), 24)]);
    let prod = product_side(&sys, 10, 0).unwrap();
    for k in 0..=11i64 {
        let expect = if k % 2 == 0 { binomial(24, k) } else { -binomial(24, k) };
        assert_eq!(
            prod.coeff(&qq_int(k - 1), &QQ::zero()),
            CycScalar::from_int(expect),
            "p^{} coefficient",
            k - 1
        );
    }

    // A negative exponent inverts: p^{-1}/(1 - p) has all coefficients 1.
    let sys = explicit(1, &[((1, 0), -1)]);
    let prod = product_side(&sys, 6, 0).unwrap();
    for k in -1..=6i64 {
        assert_eq!(prod.coeff(&qq_int(k), &QQ::zero()), CycScalar::one());
    }
}

#[test]
fn negative_q_exponents_expand_correctly() {
    // p^{-1}(1 - p q^{-1})(1 - p)^2
    //   = p^{-1} - 2 + p - q^{-1} + 2 p q^{-1} - p^2 q^{-1}.
    let sys = explicit(1, &[((1, -1), 1), ((1, 0), 2)]);
    let prod = product_side(&sys, 2, 2).unwrap();
    let expect: &[((i64, i64), i64)] = &[
        ((-1, 0), 1),
        ((0, 0), -2),
        ((1, 0), 1),
        ((0, -1), -1),
        ((1, -1), 2),
        ((2, -1), -1),
        ((2, 0), 0),
        ((1, 1), 0),
        ((2, 2), 0),
    ];
    for ((p, q), c) in expect {
        assert_eq!(
            prod.coeff(&qq_int(*p), &qq_int(*q)),
            CycScalar::from_int(*c),
            "coefficient of p^{} q^{}",
            p,
            q
        );
    }
}

#[test]
fn disjoint_supports_multiply() {
    let both = explicit(1, &[((1, 0), 3), ((2, 1), -2)]);
    let left = explicit(1, &[((1, 0), 3)]);
    let right = explicit(1, &[((2, 1), -2)]);
    let combined = product_side(&both, 6, 6).unwrap();
    // Each factor carries its own p^{-1} prefactor, so the product of the
    // two sides needs one shift back.
    let assembled = product_side(&left, 6, 6)
        .unwrap()
        .mul(&product_side(&right, 6, 6).unwrap())
        .mul_monomial(&QQ::one(), &QQ::zero());
    assert!(
        combined
            .compare_to_bidegree(&assembled, 3, 3)
            .unwrap()
            .is_none()
    );
}

#[test]
fn log_of_the_product_matches_the_closed_form() {
    let sys = explicit(1, &[((1, 1), 2), ((2, 1), -3), ((1, 2), 1)]);
    // Shift the p^{-1} away: what remains is the plain product with
    // constant term 1, whose log the closed form writes down directly.
    let shifted = product_side(&sys, 4, 4)
        .unwrap()
        .mul_monomial(&QQ::one(), &QQ::zero());
    let log = shifted.log();
    let closed = product_log_expansion(&sys, 4, 4).unwrap();
    assert!(log.agrees_with(&closed));
    // Leading log terms -c·p^i q^j: -2·pq from the first factor and
    // +3·p²q from the second.
    assert_eq!(log.coeff(&QQ::one(), &QQ::one()), CycScalar::from_int(-2));
    assert_eq!(closed.coeff(&qq_int(2), &QQ::one()), CycScalar::from_int(3));
}

#[test]
fn pair_table_projections_split_the_2b_entries() {
    let table = build_2b_table(&qq_int(8));
    let sys = CoefficientSystem::from_pair_table(&table, (1, 0)).unwrap();
    assert_eq!(sys.modulus(), 2);
    // Even row: (J ± T)/2 at q^1 gives (196884 ± 276)/2.
    assert_eq!(sys.value(2, 0, &QQ::one()).unwrap(), BigInt::from(98580));
    assert_eq!(sys.value(2, 1, &QQ::one()).unwrap(), BigInt::from(98304));
    // Odd row: the half-integer column leads with 4096·q^{1/2} and the
    // integer column keeps the constant 24.
    assert_eq!(sys.value(1, 1, &qq(1, 2)).unwrap(), BigInt::from(4096));
    assert_eq!(sys.value(1, 0, &QQ::zero()).unwrap(), BigInt::from(24));
    // The trivial table reproduces the series itself.
    let triv = CoefficientSystem::from_pair_table(
        &PairFunctionTable::trivial(j_series(8)),
        (0, 0),
    )
    .unwrap();
    assert_eq!(triv.modulus(), 1);
    assert_eq!(triv.value(1, 0, &QQ::one()).unwrap(), BigInt::from(196884));
    assert_eq!(triv.value(1, 0, &(-QQ::one())).unwrap(), BigInt::one());
}

#[test]
fn knz_identity_holds_on_a_box() {
    let report = knz_check(4, 4).unwrap();
    assert!(report.pass);
    assert!(report.first_difference.is_none());
    assert_eq!((report.p_bound, report.q_bound), (4, 4));

    // The product expanded directly shows the one-variable skeleton of
    // J(σ) - J(τ): pure rows and columns carry the series coefficients,
    // every mixed coefficient cancels.
    let sys = CoefficientSystem::from_pair_table(
        &PairFunctionTable::trivial(j_series(10)),
        (0, 0),
    )
    .unwrap();
    let prod = product_side(&sys, 2, 2).unwrap();
    assert_eq!(prod.coeff(&-QQ::one(), &QQ::zero()), CycScalar::one());
    assert_eq!(prod.coeff(&QQ::zero(), &-QQ::one()), CycScalar::from_int(-1));
    assert_eq!(prod.coeff(&QQ::one(), &QQ::zero()), CycScalar::from_int(196884));
    assert_eq!(prod.coeff(&QQ::zero(), &QQ::one()), CycScalar::from_int(-196884));
    assert!(prod.coeff(&QQ::zero(), &QQ::zero()).is_zero());
    assert!(prod.coeff(&QQ::one(), &QQ::one()).is_zero());
    assert!(prod.coeff(&qq_int(2), &QQ::one()).is_zero());
}

#[test]
fn the_2b_denominator_identity_holds() {
    let report = denominator_2b_check(3, 3).unwrap();
    assert!(report.pass, "first difference: {:?}", report.first_difference);

    // Marquee coefficients of the product side: the half-integer column
    // enters with -4096·q^{1/2}, and the constant is -24.
    let table = build_2b_table(&qq_int(10));
    let sys = CoefficientSystem::from_pair_table(&table, (1, 0)).unwrap();
    let prod = product_side(&sys, 2, 2).unwrap();
    assert_eq!(prod.coeff(&-QQ::one(), &QQ::zero()), CycScalar::one());
    assert_eq!(prod.coeff(&QQ::zero(), &qq(1, 2)), CycScalar::from_int(-4096));
    assert_eq!(prod.coeff(&QQ::zero(), &QQ::zero()), CycScalar::from_int(-24));
}

#[test]
fn switched_and_twisted_forms_agree_with_the_identity() {
    let switched = switched_denominator_check(3, 2).unwrap();
    assert!(switched.pass, "{:?}", switched.first_difference);

    let twisted = twisted_denominator_h1(4, 2).unwrap();
    assert!(twisted.identity.pass, "{:?}", twisted.identity.first_difference);
    assert!(twisted.lhs_matches_swapped);
    assert!(twisted.rhs_matches_swapped);
    assert!(twisted.untwisted_pass);
}

#[test]
fn degeneration_holds_for_every_catalog_row() {
    let catalog = load_catalog().unwrap();
    for rec in &catalog {
        let report = nonfricke_degenerate_check(&rec.eta, 6).unwrap();
        assert!(
            report.pass,
            "degeneration fails for {}: {:?}",
            rec.name, report.first_difference
        );
    }
}

#[test]
fn eta_column_values_are_divisor_sums() {
    let catalog = load_catalog().unwrap();
    let eta = catalog[0].eta.clone();
    let sys = CoefficientSystem::EtaColumn { quotient: eta.clone() };
    assert_eq!(sys.modulus(), 1);
    for i in 1..=8u64 {
        assert_eq!(
            sys.value(i, 0, &QQ::zero()).unwrap(),
            BigInt::from(eta.product_exponent(i))
        );
        assert!(sys.value(i, 1, &QQ::one()).unwrap().is_zero());
        assert!(sys.value(i, -1, &-QQ::one()).unwrap().is_zero());
    }
}

#[test]
fn uniqueness_search_recovers_known_rows() {
    let catalog = load_catalog().unwrap();
    for name in ["2B", "3B"] {
        let rec = catalog.iter().find(|r| r.name == name).unwrap();
        let found = nonneg_uniqueness_search(&rec.eta, 30, 10);
        assert_eq!(found.len(), 1, "{}: {:?}", name, found);
        assert_eq!(found[0], rec.eta);
    }

    // Too tight an exponent bound excludes even the target itself: the 2B
    // row needs exponents ±24.
    let two_b = &catalog[0].eta;
    assert!(nonneg_uniqueness_search(two_b, 10, 6).is_empty());
}
