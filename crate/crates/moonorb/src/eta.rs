//! Dedekind eta quotients: exact expansion, closed-form product exponents,
//! non-negativity, and the behaviour under τ ↦ −1/τ.
//!
//! An [`EtaQuotient`] is a finite product ∏_k η(kτ)^{b_k} with positive
//! rational levels k and nonzero integer exponents b_k.  Catalog entries have
//! integer levels; rational levels (of the form 1/a) arise as images under
//! the S-transform and exist so those images can be expanded in fractional
//! powers of q by the same code path.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{divisors, lcm_u64, qq, qq_int, CycScalar, ExactRadical, QQ};
use crate::series::PuiseuxSeries;

/// A finite product ∏_k η(kτ)^{b_k}, stored as level → exponent with no
/// zero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: BTreeMap<QQ, i64>,
}

impl EtaQuotient {
    /// The empty quotient (the constant function 1).
    pub fn new() -> Self {
        EtaQuotient {
            factors: BTreeMap::new(),
        }
    }

    /// Builds a quotient from integer (level, exponent) pairs, merging
    /// repeated levels and dropping zero exponents.
    pub fn from_levels<I>(levels: I) -> Self
    where
        I: IntoIterator<Item = (u64, i64)>,
    {
        let mut eq = EtaQuotient::new();
        for (k, b) in levels {
            eq.push(qq_int(k as i64), b);
        }
        eq
    }

    /// Adds b copies of η(level·τ) to the product.
    pub fn push(&mut self, level: QQ, exponent: i64) {
        assert!(level.is_positive(), "eta levels must be positive");
        let e = self.factors.entry(level.clone()).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.factors.remove(&level);
        }
    }

    /// (level, exponent) pairs in increasing level order.
    pub fn factors(&self) -> impl Iterator<Item = (&QQ, i64)> {
        self.factors.iter().map(|(k, b)| (k, *b))
    }

    /// Integer (level, exponent) pairs; `None` if any level is fractional.
    pub fn integer_levels(&self) -> Option<Vec<(u64, i64)>> {
        let mut out = Vec::with_capacity(self.factors.len());
        for (k, b) in &self.factors {
            if !k.is_integer() {
                return None;
            }
            out.push((u64::try_from(k.to_integer()).ok()?, *b));
        }
        Some(out)
    }

    /// The exponent on η(τ) (level 1), zero if absent.
    pub fn b1(&self) -> i64 {
        self.factors.get(&QQ::one()).copied().unwrap_or(0)
    }

    /// Leading exponent h = Σ_k k·b_k/24 of the q-expansion.
    pub fn leading_exponent(&self) -> QQ {
        let mut h = QQ::zero();
        for (k, b) in &self.factors {
            h += k * qq_int(*b);
        }
        h / qq_int(24)
    }

    /// Modular weight (1/2)Σ_k b_k.
    pub fn weight(&self) -> QQ {
        let total: i64 = self.factors.values().sum();
        qq(total, 2)
    }

    /// True iff Σ_k b_k = 0, i.e. the weight vanishes.
    pub fn is_balanced(&self) -> bool {
        self.factors.values().sum::<i64>() == 0
    }

    /// lcm of the integer levels (1 for the empty quotient).
    ///
    /// Panics if a level is fractional; level arithmetic is only meaningful
    /// on the integer-level side.
    pub fn level(&self) -> u64 {
        let levels = self
            .integer_levels()
            .expect("level lcm requires integer levels");
        levels.iter().fold(1, |acc, (k, _)| lcm_u64(acc, *k))
    }

    /// Exact q-expansion q^h·∏_k ∏_{m≥1}(1 − q^{km})^{b_k}, known for all
    /// exponents strictly below `t`.
    pub fn expand(&self, t: &QQ) -> PuiseuxSeries {
        let h = self.leading_exponent();
        assert!(t > &h, "truncation {} must exceed the leading exponent {}", t, h);
        // One global grid makes h and every level exponent integral.
        let mut denom = u64::try_from(h.denom()).expect("grid denominator fits");
        for (k, _) in &self.factors {
            denom = lcm_u64(denom, u64::try_from(k.denom()).expect("level denominator fits"));
        }
        let t_scaled = ceil_scaled(t, denom);
        let h_scaled = scaled_int(&h, denom);
        // Factors all start at q^0 with coefficient 1, so products and
        // powers keep the working truncation; the final q^h shift moves it
        // to t_scaled.
        let working = t_scaled - h_scaled;
        let mut acc = PuiseuxSeries::one(denom, working);
        for (k, b) in &self.factors {
            let level_scaled = scaled_int(k, denom);
            let factor = pentagonal_series(denom, level_scaled, working);
            acc = acc.mul(
                &factor
                    .int_pow(*b)
                    .expect("pentagonal series has unit leading coefficient"),
            );
        }
        acc.mul_q_power(&h)
    }

    /// c_j = Σ_{k|j} b_k, the exponent of (1 − q^j) in the closed-form
    /// factorization of the expansion; for j not dividing the level,
    /// c_j = c_{gcd(j, level)}.
    pub fn product_exponent(&self, j: u64) -> i64 {
        assert!(j >= 1);
        let levels = self
            .integer_levels()
            .expect("product exponents require integer levels");
        levels
            .iter()
            .filter(|(k, _)| j % k == 0)
            .map(|(_, b)| *b)
            .sum()
    }

    /// (j, c_j) for every divisor j of the level, in increasing order.
    pub fn divisor_exponents(&self) -> Vec<(u64, i64)> {
        divisors(self.level())
            .into_iter()
            .map(|j| (j, self.product_exponent(j)))
            .collect()
    }

    /// Least j with c_j < 0, scanning divisors of the level in increasing
    /// order; `None` when every c_j is nonnegative.  Because
    /// c_j = c_{gcd(j, level)} and gcd(j, level) ≤ j, the least failing j
    /// over all j ≥ 1 is always a divisor.
    pub fn least_negative_exponent(&self) -> Option<u64> {
        self.divisor_exponents()
            .into_iter()
            .find(|(_, c)| *c < 0)
            .map(|(j, _)| j)
    }

    /// True iff every product exponent c_j is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.least_negative_exponent().is_none()
    }

    /// The quotient with every exponent negated.
    pub fn reciprocal(&self) -> Self {
        EtaQuotient {
            factors: self.factors.iter().map(|(k, b)| (k.clone(), -b)).collect(),
        }
    }

    /// Behaviour under τ ↦ −1/τ: for a balanced quotient,
    /// f(−1/τ) = multiplier · image(τ), where the image replaces each level
    /// k by 1/k (same exponent) and the multiplier is ∏_k k^{−b_k/2}, an
    /// exact radical since all the √(−iτ) factors cancel.
    pub fn s_transform(&self) -> Result<(ExactRadical, EtaQuotient)> {
        if !self.is_balanced() {
            return Err(Error::InvalidEta(format!(
                "S-transform multiplier is only radical for balanced quotients; weight here is {}",
                self.weight()
            )));
        }
        let mut multiplier = ExactRadical::one();
        let mut image = EtaQuotient::new();
        for (k, b) in &self.factors {
            let num = u64::try_from(k.numer()).expect("level numerator fits");
            let den = u64::try_from(k.denom()).expect("level denominator fits");
            // k^{−b/2} = num^{−b/2} · den^{b/2}.
            multiplier = multiplier
                .mul(&ExactRadical::half_integer_power(num, -b))
                .mul(&ExactRadical::half_integer_power(den, *b));
            image.push(k.recip(), *b);
        }
        Ok((multiplier, image))
    }

    /// The additive constant κ with expand(self) + κ having zero constant
    /// term; requires integer levels and leading exponent −1, the shape of
    /// every catalog entry.
    pub fn mt_constant(&self) -> i64 {
        assert!(
            self.integer_levels().is_some(),
            "constant extraction requires integer levels"
        );
        assert_eq!(
            self.leading_exponent(),
            -QQ::one(),
            "constant extraction requires leading exponent -1"
        );
        let series = self.expand(&QQ::one());
        let c0 = series.coeff(&QQ::zero());
        let r = c0
            .to_rational()
            .expect("integer-level expansions have rational coefficients");
        assert!(r.is_integer());
        -i64::try_from(r.to_integer()).expect("constant term fits in i64")
    }

    /// Parses the quotient grammar: whitespace-separated factors `k` or
    /// `k^e` (k, e positive integers), with a single optional `/` splitting
    /// numerator from denominator, e.g. `1^5 3/2 6^5`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut eq = EtaQuotient::new();
        let (num, den) = split_quotient(text)?;
        for (side, sign) in [(num, 1i64), (den, -1i64)] {
            for token in side.split_whitespace() {
                let (level, exp) = parse_factor(token)?;
                eq.push(qq_int(level as i64), sign * exp);
            }
        }
        Ok(eq)
    }

    /// Renders the grammar form; inverse of [`EtaQuotient::parse`]
    /// (bit-exact round-trip on canonically formatted text).  Requires
    /// integer levels.
    pub fn format_text(&self) -> String {
        let levels = self
            .integer_levels()
            .expect("the text grammar covers integer levels only");
        format_factors(&levels)
    }
}

impl Default for EtaQuotient {
    fn default() -> Self {
        EtaQuotient::new()
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(levels) = self.integer_levels() {
            return write!(f, "{}", format_factors(&levels));
        }
        // Rational levels fall outside the grammar; render them readably.
        let mut first = true;
        for (k, b) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({})^{}", k, b)?;
        }
        Ok(())
    }
}

/// Splits `a/b` on the single optional slash.
pub(crate) fn split_quotient(text: &str) -> Result<(&str, &str)> {
    let mut parts = text.split('/');
    let num = parts.next().unwrap_or("");
    let den = parts.next().unwrap_or("");
    if parts.next().is_some() {
        return Err(Error::Parse(format!(
            "expected at most one '/' in {:?}",
            text
        )));
    }
    Ok((num, den))
}

/// Parses one factor token `k` or `k^e` with k ≥ 1, e ≥ 1.
pub(crate) fn parse_factor(token: &str) -> Result<(u64, i64)> {
    let (base, exp) = match token.split_once('^') {
        None => (token, "1"),
        Some((b, e)) => (b, e),
    };
    let level: u64 = base
        .parse()
        .map_err(|_| Error::Parse(format!("bad level {:?} in factor {:?}", base, token)))?;
    let exponent: i64 = exp
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent {:?} in factor {:?}", exp, token)))?;
    if level < 1 {
        return Err(Error::Parse(format!("level must be positive in {:?}", token)));
    }
    if exponent < 1 {
        return Err(Error::Parse(format!(
            "exponent must be positive in {:?}; use the other side of '/' for negatives",
            token
        )));
    }
    Ok((level, exponent))
}

/// Formats sorted (level, exponent) pairs in the quotient grammar,
/// omitting `^1`.
pub(crate) fn format_factors(levels: &[(u64, i64)]) -> String {
    fn side(levels: &[(u64, i64)], keep: impl Fn(i64) -> bool) -> String {
        levels
            .iter()
            .filter(|(_, b)| keep(*b))
            .map(|(k, b)| {
                let e = b.unsigned_abs();
                if e == 1 {
                    format!("{}", k)
                } else {
                    format!("{}^{}", k, e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
    let num = side(levels, |b| b > 0);
    let den = side(levels, |b| b < 0);
    if den.is_empty() {
        num
    } else {
        format!("{}/{}", num, den)
    }
}

/// ∏_{m≥1}(1 − x^m) with x = q^{level_scaled/denom}, via the pentagonal
/// number expansion Σ_{j∈Z} (−1)^j x^{j(3j−1)/2}: only O(√T) terms below
/// any truncation.
fn pentagonal_series(denom: u64, level_scaled: i64, trunc_scaled: i64) -> PuiseuxSeries {
    assert!(level_scaled >= 1);
    let mut terms: Vec<(i64, CycScalar)> = Vec::new();
    let mut j: i64 = 0;
    loop {
        let mut alive = false;
        for jj in [j, -j] {
            let pent = jj * (3 * jj - 1) / 2;
            let key = level_scaled * pent;
            if key < trunc_scaled {
                alive = true;
                let sign = if jj.rem_euclid(2) == 0 {
                    CycScalar::one()
                } else {
                    CycScalar::from_int(-1)
                };
                terms.push((key, sign));
            }
            if jj == 0 {
                break;
            }
        }
        if !alive {
            break;
        }
        j += 1;
    }
    PuiseuxSeries::from_scaled_terms(denom, terms, trunc_scaled)
}

/// e·denom as an exact integer; panics when e is off the grid.
fn scaled_int(e: &QQ, denom: u64) -> i64 {
    let s = e * qq_int(denom as i64);
    assert!(s.is_integer(), "exponent {} not on the 1/{} grid", e, denom);
    i64::try_from(s.to_integer()).expect("scaled exponent fits in i64")
}

/// Least integer bound t_s with {k : k < t_s} = {k : k/denom < t}.
fn ceil_scaled(t: &QQ, denom: u64) -> i64 {
    let s = t * qq_int(denom as i64);
    i64::try_from(s.ceil().to_integer()).expect("scaled truncation fits in i64")
}
