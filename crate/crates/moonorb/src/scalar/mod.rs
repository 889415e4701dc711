//! Exact scalars: rationals, cyclotomic rationals, and quadratic radicals.
//!
//! The base field is `Q` represented by [`QQ`] (arbitrary-precision
//! rationals).  [`CycScalar`] extends it by a root of unity of explicit
//! conductor, and [`ExactRadical`] carries values r·√s that arise as
//! multipliers of eta S-transforms.

mod cyclotomic;
mod radical;

pub use cyclotomic::CycScalar;
pub use radical::ExactRadical;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number, the coefficient base field.
pub type QQ = BigRational;

/// Rational from a machine-integer numerator and denominator.
///
/// Panics if `den == 0`.
pub fn qq(num: i64, den: i64) -> QQ {
    assert!(den != 0, "rational denominator must be nonzero");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn qq_int(n: i64) -> QQ {
    BigRational::from(BigInt::from(n))
}

/// Euler's totient of `n ≥ 1`, by trial-division factorization.
///
/// Cost O(√n); every conductor in this crate is tiny.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        phi = phi / m * (m - 1);
    }
    phi
}

/// Divisors of `n ≥ 1` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors needs n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Greatest common divisor on `u64`, with gcd(0, n) = gcd(n, 0) = n.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least common multiple on `u64`; panics on overflow.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    assert!(a > 0 && b > 0, "lcm needs positive arguments");
    a / gcd_u64(a, b) * b
}
