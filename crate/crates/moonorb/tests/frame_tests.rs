//! Frame shapes of rank-24 lattice automorphisms: characteristic
//! polynomials, the three viability conditions, and the exponent-negation
//! duality with eta quotients.

use moonorb::eta::EtaQuotient;
use moonorb::frame::FrameShape;
use moonorb::scalar::{qq, qq_int};
use moonorb::Error;
use num_bigint::BigInt;

/// C(n, k) as exact integers.
fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[test]
fn identity_frame_has_char_poly_x_minus_one_to_the_24() {
    let frame = FrameShape::parse("1^24").unwrap();
    assert_eq!(frame.rank(), 24);
    assert_eq!(frame.order(), 1);
    let poly = frame.char_poly().unwrap();
    assert_eq!(poly.len(), 25);
    for (k, c) in poly.iter().enumerate() {
        let sign = if (24 - k) % 2 == 0 { 1 } else { -1 };
        assert_eq!(c, &(binomial(24, k as u64) * BigInt::from(sign)), "x^{}", k);
    }
}

#[test]
fn involution_frame_has_char_poly_x_plus_one_to_the_24() {
    // (x² − 1)²⁴ / (x − 1)²⁴ = (x + 1)²⁴.
    let frame = FrameShape::parse("2^24/1^24").unwrap();
    assert_eq!(frame.rank(), 24);
    assert_eq!(frame.order(), 2);
    let poly = frame.char_poly().unwrap();
    for (k, c) in poly.iter().enumerate() {
        assert_eq!(c, &binomial(24, k as u64), "x^{}", k);
    }
}

#[test]
fn order_46_frame_char_poly_has_four_terms() {
    // (x² − 1)(x⁴⁶ − 1) / ((x − 1)(x²³ − 1)) = (x + 1)(x²³ + 1).
    let frame = FrameShape::parse("2 46/1 23").unwrap();
    assert_eq!(frame.rank(), 24);
    assert_eq!(frame.order(), 46);
    let poly = frame.char_poly().unwrap();
    for (k, c) in poly.iter().enumerate() {
        let expected = i64::from(matches!(k, 0 | 1 | 23 | 24));
        assert_eq!(c, &BigInt::from(expected), "x^{}", k);
    }
}

#[test]
fn char_poly_rejects_non_automorphism_shapes() {
    // Wrong rank.
    assert!(matches!(
        FrameShape::parse("1^23").unwrap().char_poly(),
        Err(Error::InvalidFrame(_))
    ));
    // Rank 24 but the cyclotomic factors do not cancel to a polynomial.
    assert!(matches!(
        FrameShape::parse("2^25/1^26").unwrap().char_poly(),
        Err(Error::InvalidFrame(_))
    ));
}

#[test]
fn viability_of_the_order_two_frame() {
    let report = FrameShape::parse("2^24/1^24").unwrap().tuite_conditions().unwrap();
    assert!(report.fixed_point_free);
    assert_eq!(report.vacuum_energy, qq(1, 2));
    assert!(report.no_massless);
    assert_eq!(report.order, 2);
    assert_eq!(report.anomaly, 0);
    assert!(report.anomaly_free);
    assert_eq!(report.unrolled_modulus, 2);
}

#[test]
fn viability_of_the_order_46_frame() {
    let report = FrameShape::parse("2 46/1 23").unwrap().tuite_conditions().unwrap();
    assert!(report.fixed_point_free);
    assert_eq!(report.vacuum_energy, qq(1, 46));
    assert!(report.no_massless && report.anomaly_free);
    assert_eq!(report.order, 46);
    assert_eq!(report.unrolled_modulus, 46);
}

#[test]
fn identity_frame_fails_fixed_point_and_massless_conditions() {
    let report = FrameShape::parse("1^24").unwrap().tuite_conditions().unwrap();
    assert!(!report.fixed_point_free);
    assert_eq!(report.vacuum_energy, qq_int(-1));
    assert!(!report.no_massless);
    assert!(report.anomaly_free);
}

#[test]
fn anomalous_frame_is_detected() {
    // 2⁶4⁶/1¹²: rank 24, fixed-point free, E₀ = 5/16, n = 4, so
    // n²·E₀ = 5 ≡ 1 mod 4: an anomaly.
    let report = FrameShape::parse("2^6 4^6/1^12").unwrap().tuite_conditions().unwrap();
    assert!(report.fixed_point_free);
    assert_eq!(report.vacuum_energy, qq(5, 16));
    assert!(report.no_massless);
    assert_eq!(report.anomaly, 1);
    assert!(!report.anomaly_free);
    assert_eq!(report.unrolled_modulus, 16);
}

#[test]
fn fractional_anomaly_residue_is_an_error() {
    // 1¹²2⁶: n²·E₀ = −5/2 is not an integer, so no residue is defined.
    assert!(matches!(
        FrameShape::parse("1^12 2^6").unwrap().tuite_conditions(),
        Err(Error::InvalidFrame(_))
    ));
}

#[test]
fn duality_negates_exponents_both_ways() {
    for text in ["1^24/2^24", "1^5 3/2 6^5", "1 23/2 46", "1 4 18/2 9 36"] {
        let eq = EtaQuotient::parse(text).unwrap();
        let frame = FrameShape::dual_frame(&eq);
        assert_eq!(frame.dual_eta(), eq, "round trip through the frame side");
        for ((k_eta, b), (k_frame, a)) in eq
            .integer_levels()
            .unwrap()
            .into_iter()
            .zip(frame.cycles())
        {
            assert_eq!(k_eta, k_frame);
            assert_eq!(b, -a);
        }
    }
}

#[test]
fn vacuum_energy_equals_s_image_leading_exponent() {
    // Both sides compute (1/24)·Σ_k b_k/k from opposite conventions.
    for text in ["1^24/2^24", "1^12/3^12", "1^5 3/2 6^5", "1 6 26 39/2 3 13 78"] {
        let eq = EtaQuotient::parse(text).unwrap();
        let (_, image) = eq.s_transform().unwrap();
        let report = FrameShape::dual_frame(&eq).tuite_conditions().unwrap();
        assert_eq!(
            report.vacuum_energy,
            image.leading_exponent(),
            "E₀ vs S-image exponent for {}",
            text
        );
    }
}

#[test]
fn grammar_round_trips() {
    for text in ["2^24/1^24", "2^6 4^6/1^12", "1^24", "2 46/1 23"] {
        let frame = FrameShape::parse(text).unwrap();
        assert_eq!(frame.format_text(), text);
    }
    // Merging repeated cycles loses nothing.
    let merged = FrameShape::from_cycles([(2, 10), (2, 14), (1, -24)]);
    assert_eq!(merged.format_text(), "2^24/1^24");
}
