//! Exact numbers of the form r·√s with r rational and s a squarefree
//! positive integer.
//!
//! This tiny field of values is closed under the products and rational
//! powers with denominator 2 that transformation multipliers produce:
//! √s·√t = g·√(st/g²) with g = gcd(s, t) keeps the radicand squarefree.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{gcd_u64, qq_int, QQ};
use crate::scalar::cyclotomic::rational_to_f64;

/// An exact value r·√s, with `coef` = r ∈ Q and `radicand` = s squarefree.
///
/// The representation is canonical: zero is stored with radicand 1, so
/// derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRadical {
    coef: QQ,
    radicand: u64,
}

impl ExactRadical {
    fn new(coef: QQ, radicand: u64) -> Self {
        assert!(radicand >= 1, "radicand must be positive");
        debug_assert!(is_squarefree(radicand), "radicand must be squarefree");
        if coef.is_zero() {
            return ExactRadical {
                coef,
                radicand: 1,
            };
        }
        ExactRadical { coef, radicand }
    }

    /// Embeds a rational number.
    pub fn from_rational(r: QQ) -> Self {
        ExactRadical::new(r, 1)
    }

    /// One.
    pub fn one() -> Self {
        ExactRadical::from_rational(QQ::one())
    }

    /// √n for a positive integer n, with the square part extracted:
    /// n = m²·s gives m·√s.
    pub fn sqrt_of(n: u64) -> Self {
        assert!(n >= 1, "square root of a non-positive integer");
        let (square_root, squarefree) = split_square(n);
        ExactRadical::new(qq_int(square_root as i64), squarefree)
    }

    /// k^{num/2} for a positive integer k: the even part of the exponent is
    /// a rational power, the odd remainder contributes one √k.
    pub fn half_integer_power(k: u64, num: i64) -> Self {
        assert!(k >= 1, "base must be positive");
        let a = num.div_euclid(2);
        let r = num.rem_euclid(2);
        let rational = int_power(k, a);
        let root = if r == 1 {
            ExactRadical::sqrt_of(k)
        } else {
            ExactRadical::one()
        };
        ExactRadical::from_rational(rational).mul(&root)
    }

    /// Product.  gcd(s, t) migrates from under the radical into the
    /// rational part, keeping the radicand squarefree.
    pub fn mul(&self, other: &Self) -> Self {
        let g = gcd_u64(self.radicand, other.radicand);
        let radicand = (self.radicand / g) * (other.radicand / g);
        let coef = &self.coef * &other.coef * qq_int(g as i64);
        ExactRadical::new(coef, radicand)
    }

    /// The rational part r.
    pub fn coef(&self) -> &QQ {
        &self.coef
    }

    /// The squarefree radicand s.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// Returns the value as a rational if s = 1.
    pub fn to_rational(&self) -> Option<QQ> {
        if self.radicand == 1 {
            Some(self.coef.clone())
        } else {
            None
        }
    }

    /// Floating-point approximation for display annotations.
    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.coef) * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for ExactRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coef)
        } else if self.coef.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coef, self.radicand)
        }
    }
}

/// n = m²·s with s squarefree; returns (m, s).  Trial division suffices for
/// the small levels that occur as factors of 24-component products.
fn split_square(n: u64) -> (u64, u64) {
    let mut rest = n;
    let mut square_root = 1u64;
    let mut squarefree = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            square_root *= p.pow(e / 2);
            if e % 2 == 1 {
                squarefree *= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        squarefree *= rest;
    }
    (square_root, squarefree)
}

fn is_squarefree(n: u64) -> bool {
    split_square(n).0 == 1
}

/// k^a as an exact rational, for a of either sign.
fn int_power(k: u64, a: i64) -> QQ {
    let mag = qq_int(k as i64);
    let mut out = QQ::one();
    for _ in 0..a.unsigned_abs() {
        out *= &mag;
    }
    if a < 0 {
        assert!(!out.is_zero());
        out = out.recip();
    }
    assert!(out.is_positive() || k == 0);
    out
}
