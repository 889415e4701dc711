//! Frame shapes of rank-24 lattice automorphisms and the three orbifold
//! viability conditions.
//!
//! A [`FrameShape`] ∏_k k^{a_k} records the cycle structure of an
//! automorphism acting on a rank-24 lattice: its characteristic polynomial
//! is ∏_k (x^k − 1)^{a_k}, so Σ_k k·a_k = 24.  [`FrameShape::tuite_conditions`]
//! evaluates fixed-point freeness, the twisted vacuum energy E₀, and the
//! anomaly residue, producing the [`TuiteReport`] consumed by the duality
//! checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::eta::{format_factors, parse_factor, split_quotient, EtaQuotient};
use crate::scalar::{gcd_u64, lcm_u64, qq, qq_int, QQ};

/// A finite product ∏_k k^{a_k} with positive integer cycle lengths k and
/// nonzero integer exponents a_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameShape {
    factors: BTreeMap<u64, i64>,
}

/// The outcome of the three viability conditions for one frame shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuiteReport {
    /// Σ_k a_k = 0, i.e. the automorphism fixes no nonzero vector.
    pub fixed_point_free: bool,
    /// Twisted-sector vacuum energy E₀; E₀ + 1 is the lowest twisted
    /// conformal weight.
    pub vacuum_energy: QQ,
    /// E₀ > 0.
    pub no_massless: bool,
    /// Order n of the automorphism (lcm of the cycle lengths).
    pub order: u64,
    /// Anomaly residue t ∈ {0, …, n−1} with t ≡ n²·E₀ (mod n).
    pub anomaly: u64,
    /// t = 0, equivalently n·E₀ ∈ Z.
    pub anomaly_free: bool,
    /// N = n²/gcd(n, t), the modulus of the unrolled index group.
    pub unrolled_modulus: u64,
}

impl FrameShape {
    /// Builds a frame shape from (cycle length, exponent) pairs, merging
    /// repeats and dropping zeros.
    pub fn from_cycles<I>(cycles: I) -> Self
    where
        I: IntoIterator<Item = (u64, i64)>,
    {
        let mut factors = BTreeMap::new();
        for (k, a) in cycles {
            assert!(k >= 1, "cycle lengths must be positive");
            let e = factors.entry(k).or_insert(0i64);
            *e += a;
            if *e == 0 {
                factors.remove(&k);
            }
        }
        FrameShape { factors }
    }

    /// (cycle length, exponent) pairs in increasing cycle order.
    pub fn cycles(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.factors.iter().map(|(k, a)| (*k, *a))
    }

    /// Σ_k k·a_k, the dimension of the underlying representation.
    pub fn rank(&self) -> i64 {
        self.factors.iter().map(|(k, a)| *k as i64 * a).sum()
    }

    /// lcm of the cycle lengths (1 for the empty shape).
    pub fn order(&self) -> u64 {
        self.factors.keys().fold(1, |acc, k| lcm_u64(acc, *k))
    }

    /// Characteristic polynomial ∏_k (x^k − 1)^{a_k}, coefficients from
    /// low to high degree, by exact integer polynomial division.
    ///
    /// Errors when the denominator part fails to divide the numerator part
    /// (the shape is not the cycle data of any integer matrix) or the rank
    /// constraint is violated.
    pub fn char_poly(&self) -> Result<Vec<BigInt>> {
        if self.rank() != 24 {
            return Err(Error::InvalidFrame(format!(
                "rank is {}, expected 24",
                self.rank()
            )));
        }
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for (k, a) in &self.factors {
            let base = x_pow_minus_one(*k);
            let target = if *a > 0 { &mut num } else { &mut den };
            for _ in 0..a.unsigned_abs() {
                *target = poly_mul(target, &base);
            }
        }
        let quot = poly_div_exact(&num, &den).ok_or_else(|| {
            Error::InvalidFrame("cyclotomic factors do not cancel to a polynomial".into())
        })?;
        assert_eq!(quot.len(), 25, "rank 24 forces degree 24");
        Ok(quot)
    }

    /// Evaluates the three viability conditions.
    ///
    /// E₀ = −(1/24)·Σ_k a_k/k: each k-cycle pair contributes the difference
    /// between the twisted and untwisted ground energies, and the sign is
    /// fixed by the requirement that the order-2 shape 2²⁴/1²⁴ give
    /// E₀ = 1/2 (twisted ground weight 3/2).  Errors when the rank
    /// constraint fails or n²·E₀ is not an integer (no anomaly residue is
    /// defined).
    pub fn tuite_conditions(&self) -> Result<TuiteReport> {
        if self.rank() != 24 {
            return Err(Error::InvalidFrame(format!(
                "rank is {}, expected 24",
                self.rank()
            )));
        }
        let fixed_point_free = self.factors.values().sum::<i64>() == 0;
        let mut e0 = QQ::zero();
        for (k, a) in &self.factors {
            e0 -= qq(*a, 24 * *k as i64);
        }
        let no_massless = e0.is_positive();
        let n = self.order();
        let scaled = &e0 * qq_int((n * n) as i64);
        if !scaled.is_integer() {
            return Err(Error::InvalidFrame(format!(
                "n²·E₀ = {} is not an integer; anomaly residue undefined",
                scaled
            )));
        }
        let t_signed = scaled.to_integer();
        let n_big = BigInt::from(n);
        let t_res = ((&t_signed % &n_big) + &n_big) % &n_big;
        let anomaly = u64::try_from(t_res).expect("residue fits in u64");
        let anomaly_free = anomaly == 0;
        let unrolled_modulus = n * n / gcd_or_n(n, anomaly);
        Ok(TuiteReport {
            fixed_point_free,
            vacuum_energy: e0,
            no_massless,
            order: n,
            anomaly,
            anomaly_free,
            unrolled_modulus,
        })
    }

    /// The eta quotient with exponents b_k = −a_k (the monster-side dual).
    pub fn dual_eta(&self) -> EtaQuotient {
        EtaQuotient::from_levels(self.factors.iter().map(|(k, a)| (*k, -a)))
    }

    /// The frame shape with exponents a_k = −b_k (inverse of
    /// [`FrameShape::dual_eta`]).
    pub fn dual_frame(eq: &EtaQuotient) -> Self {
        let levels = eq
            .integer_levels()
            .expect("dual frame shapes require integer levels");
        FrameShape::from_cycles(levels.into_iter().map(|(k, b)| (k, -b)))
    }

    /// Parses the shared quotient grammar; cycle lengths with positive
    /// exponents before the `/`, negative after, e.g. `2^24/1^24`.
    pub fn parse(text: &str) -> Result<Self> {
        let (num, den) = split_quotient(text)?;
        let mut factors = Vec::new();
        for (side, sign) in [(num, 1i64), (den, -1i64)] {
            for token in side.split_whitespace() {
                let (k, e) = parse_factor(token)?;
                factors.push((k, sign * e));
            }
        }
        Ok(FrameShape::from_cycles(factors))
    }

    /// Renders the grammar form; bit-exact inverse of [`FrameShape::parse`]
    /// on canonically formatted text.
    pub fn format_text(&self) -> String {
        let levels: Vec<(u64, i64)> = self.cycles().collect();
        format_factors(&levels)
    }
}

/// gcd(n, t) with the convention gcd(n, 0) = n.
fn gcd_or_n(n: u64, t: u64) -> u64 {
    if t == 0 {
        n
    } else {
        gcd_u64(n, t)
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_text())
    }
}

/// x^k − 1, low degree first.
fn x_pow_minus_one(k: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); k as usize + 1];
    p[0] = BigInt::from(-1);
    p[k as usize] = BigInt::one();
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// num/den when the division is exact over Z, `None` otherwise.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = den.iter().rposition(|c| !c.is_zero())?;
    let dn = num.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if dn < dd {
        return None;
    }
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if (&c * &lead) != rem[k + dd] {
            return None;
        }
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate().take(dd + 1) {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}
