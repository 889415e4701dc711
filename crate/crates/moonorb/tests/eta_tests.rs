//! Eta quotients: q-expansions checked against two independent oracles
//! (bounded dense products and the Euler partition recurrence), divisor
//! exponents, the S-transform, the constant-term normalization, and the
//! text grammar.

use moonorb::eta::EtaQuotient;
use moonorb::scalar::{qq, qq_int};
use moonorb::{CycScalar, Error, QQ};
use num_traits::{One, Zero};

// ---------------------------------------------------------------------------
// Oracle: dense rational polynomial arithmetic, written independently of the
// series module.

/// c = a·b truncated below x^t.
fn poly_mul(a: &[QQ], b: &[QQ], t: usize) -> Vec<QQ> {
    let mut out = vec![QQ::zero(); t];
    for (i, ai) in a.iter().enumerate().take(t) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(t - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// 1/a truncated below x^t, for a with constant term 1.
fn poly_inv(a: &[QQ], t: usize) -> Vec<QQ> {
    assert!(a[0].is_one());
    let mut r = vec![QQ::zero(); t];
    r[0] = QQ::one();
    for n in 1..t {
        let mut acc = QQ::zero();
        for j in 1..=n {
            if j < a.len() {
                acc += &a[j] * &r[n - j];
            }
        }
        r[n] = -acc;
    }
    r
}

/// ∏_{m≥1} (1 − x^{km})^b truncated below x^t.
fn eta_factor_oracle(k: u64, b: i64, t: usize) -> Vec<QQ> {
    let mut base = vec![QQ::zero(); t];
    base[0] = QQ::one();
    let mut m = k as usize;
    while m < t {
        let mut factor = vec![QQ::zero(); (m + 1).min(t)];
        factor[0] = QQ::one();
        if m < t {
            factor[m] = -QQ::one();
        }
        base = poly_mul(&base, &factor, t);
        m += k as usize;
    }
    let mut out = vec![QQ::zero(); t];
    out[0] = QQ::one();
    let pos = if b >= 0 { base.clone() } else { poly_inv(&base, t) };
    for _ in 0..b.unsigned_abs() {
        out = poly_mul(&out, &pos, t);
    }
    out
}

/// The full product ∏_k ∏_m (1 − q^{km})^{b_k} truncated below q^t; the
/// q^h prefactor of the expansion is left out.
fn eta_oracle(levels: &[(u64, i64)], t: usize) -> Vec<QQ> {
    let mut out = vec![QQ::zero(); t];
    out[0] = QQ::one();
    for (k, b) in levels {
        out = poly_mul(&out, &eta_factor_oracle(*k, *b, t), t);
    }
    out
}

/// Compares `expand` against the oracle through q^{h + terms − 1}.
fn check_against_oracle(levels: &[(u64, i64)], terms: usize) {
    let eq = EtaQuotient::from_levels(levels.iter().copied());
    let h = eq.leading_exponent();
    let oracle = eta_oracle(levels, terms);
    let series = eq.expand(&(h.clone() + qq_int(terms as i64)));
    for (m, expected) in oracle.iter().enumerate() {
        let got = series.coeff(&(h.clone() + qq_int(m as i64)));
        assert_eq!(
            got.to_rational().as_ref(),
            Some(expected),
            "{} at offset {} from the leading exponent",
            eq.format_text(),
            m
        );
    }
}

#[test]
fn expansions_match_the_dense_product_oracle() {
    check_against_oracle(&[(1, 1)], 30);
    check_against_oracle(&[(1, -1)], 25);
    check_against_oracle(&[(1, 24), (2, -24)], 20);
    check_against_oracle(&[(1, 5), (2, -1), (3, 1), (6, -5)], 20);
    check_against_oracle(&[(1, 3), (9, -3)], 20);
    check_against_oracle(&[(2, 2), (3, -4)], 16);
}

#[test]
fn reciprocal_eta_counts_partitions() {
    // 1/η = q^{−1/24}·Σ p(m)q^m with p the partition function, generated
    // here by the Euler pentagonal recurrence.
    let t = 40usize;
    let mut p = vec![0i64; t];
    p[0] = 1;
    for n in 1..t {
        let mut acc = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1];
            if g2 <= n {
                acc += sign * p[n - g2];
            }
            k += 1;
        }
        p[n] = acc;
    }
    assert_eq!(&p[..10], &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);

    let eq = EtaQuotient::from_levels([(1u64, -1i64)]);
    let h = qq(-1, 24);
    let series = eq.expand(&(h.clone() + qq_int(t as i64)));
    for (m, pm) in p.iter().enumerate() {
        assert_eq!(
            series.coeff(&(h.clone() + qq_int(m as i64))).to_rational(),
            Some(qq_int(*pm)),
            "partition count p({})",
            m
        );
    }
}

#[test]
fn the_2b_hauptmodul_expansion() {
    // η(τ)²⁴/η(2τ)²⁴ = q^{−1} − 24 + 276q − 2048q² + 11202q³ − …
    let eq = EtaQuotient::parse("1^24/2^24").unwrap();
    assert_eq!(eq.leading_exponent(), -QQ::one());
    let f = eq.expand(&qq_int(4));
    for (k, c) in [(-1, 1), (0, -24), (1, 276), (2, -2048), (3, 11202)] {
        assert_eq!(f.coeff(&qq_int(k)), CycScalar::from_int(c));
    }
    assert_eq!(eq.b1(), 24);
    assert_eq!(eq.mt_constant(), 24);
}

#[test]
fn divisor_exponents_are_divisor_sums() {
    let e6 = EtaQuotient::parse("1^5 3/2 6^5").unwrap();
    assert_eq!(e6.divisor_exponents(), vec![(1, 5), (2, 4), (3, 6), (6, 0)]);
    let e12 = EtaQuotient::parse("1^3 4 6^2/2^2 3 12^3").unwrap();
    assert_eq!(
        e12.divisor_exponents(),
        vec![(1, 3), (2, 1), (3, 2), (4, 2), (6, 2), (12, 0)]
    );
    // c_j for j not dividing the level reduces to gcd(j, level).
    assert_eq!(e6.product_exponent(4), e6.product_exponent(2));
    assert_eq!(e6.product_exponent(9), e6.product_exponent(3));
}

#[test]
fn nonnegativity_flips_under_reciprocal() {
    let eq = EtaQuotient::parse("1^24/2^24").unwrap();
    assert!(eq.is_nonnegative());
    assert_eq!(eq.least_negative_exponent(), None);
    let rec = eq.reciprocal();
    assert!(!rec.is_nonnegative());
    assert_eq!(rec.least_negative_exponent(), Some(1));
}

#[test]
fn s_transform_of_balanced_quotients() {
    // η(τ)²⁴/η(2τ)²⁴ ↦ 2¹²·η(τ)²⁴/η(τ/2)²⁴.
    let (mult, image) = EtaQuotient::parse("1^24/2^24").unwrap().s_transform().unwrap();
    assert_eq!(mult.to_rational(), Some(qq_int(4096)));
    let image_levels: Vec<(QQ, i64)> = image.factors().map(|(k, b)| (k.clone(), b)).collect();
    assert_eq!(image_levels, vec![(qq(1, 2), -24), (QQ::one(), 24)]);
    assert_eq!(image.leading_exponent(), qq(1, 2));

    // η(τ)¹²/η(3τ)¹² ↦ 3⁶·η(τ)¹²/η(τ/3)¹².
    let (mult, image) = EtaQuotient::parse("1^12/3^12").unwrap().s_transform().unwrap();
    assert_eq!(mult.to_rational(), Some(qq_int(729)));
    assert_eq!(image.leading_exponent(), qq(1, 3));

    // Odd exponents still collapse when the radicands pair up:
    // 6E gives 2^{1/2}·3^{−1/2}·6^{5/2} = 72.
    let (mult, _) = EtaQuotient::parse("1^5 3/2 6^5").unwrap().s_transform().unwrap();
    assert_eq!(mult.to_rational(), Some(qq_int(72)));

    // Unbalanced quotients are rejected.
    assert!(matches!(
        EtaQuotient::parse("1^24").unwrap().s_transform(),
        Err(Error::InvalidEta(_))
    ));
}

#[test]
fn s_transform_image_expands_on_the_fractional_grid() {
    // The image η(τ)²⁴/η(τ/2)²⁴ = 4096·(q^{1/2} + 24q + 300q^{3/2} + …)/4096
    // …expanded directly: leading coefficient 1 at q^{1/2}.
    let (_, image) = EtaQuotient::parse("1^24/2^24").unwrap().s_transform().unwrap();
    let f = image.expand(&qq(5, 2));
    assert_eq!(f.coeff(&qq(1, 2)), CycScalar::one());
    assert_eq!(f.coeff(&QQ::one()), CycScalar::from_int(24));
    assert_eq!(f.coeff(&qq(3, 2)), CycScalar::from_int(300));
    assert_eq!(f.coeff(&qq_int(2)), CycScalar::from_int(2624));
}

#[test]
fn constant_normalization_examples() {
    for (text, kappa) in [("1^24/2^24", 24), ("1^5 3/2 6^5", 5), ("1^2/13^2", 2)] {
        let eq = EtaQuotient::parse(text).unwrap();
        assert_eq!(eq.mt_constant(), kappa, "κ for {}", text);
        assert_eq!(eq.b1(), kappa, "κ = b₁ for {}", text);
    }
}

#[test]
fn weight_and_balance() {
    let eq = EtaQuotient::parse("1^24/2^24").unwrap();
    assert!(eq.is_balanced());
    assert_eq!(eq.weight(), qq_int(0));
    let eta = EtaQuotient::parse("1").unwrap();
    assert!(!eta.is_balanced());
    assert_eq!(eta.weight(), qq(1, 2));
    assert_eq!(eq.level(), 2);
}

#[test]
fn grammar_round_trips() {
    for text in [
        "1^24/2^24",
        "1^5 3/2 6^5",
        "1 23/2 46",
        "1 6 26 39/2 3 13 78",
        "1^2 6 8^2 12/2 3^2 4 24^2",
        "/2^24",
        "1",
    ] {
        let eq = EtaQuotient::parse(text).unwrap();
        assert_eq!(eq.format_text(), text, "round trip of {:?}", text);
    }
    // Non-canonical but accepted input formats canonically.
    assert_eq!(EtaQuotient::parse("2^1 1^24/2^25").unwrap().format_text(), "1^24/2^24");
}

#[test]
fn grammar_rejects_malformed_text() {
    for text in ["1^0", "0^3", "x^2", "2^", "1//2", "1^-3"] {
        assert!(
            matches!(EtaQuotient::parse(text), Err(Error::Parse(_))),
            "{:?} should not parse",
            text
        );
    }
}

#[test]
fn expansion_grid_matches_leading_exponent_denominator() {
    // η itself lives on the 1/24 grid.
    let eta = EtaQuotient::parse("1").unwrap();
    let f = eta.expand(&qq(73, 24));
    assert_eq!(f.coeff(&qq(1, 24)), CycScalar::one());
    assert_eq!(f.coeff(&qq(25, 24)), CycScalar::from_int(-1));
    // The pentagonal exponent 2 appears shifted by 1/24.
    assert_eq!(f.coeff(&qq(2 * 24 + 1, 24)), CycScalar::from_int(-1));
}
