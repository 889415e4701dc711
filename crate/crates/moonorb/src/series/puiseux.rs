//! Truncated series in one variable q with rational exponents on a fixed
//! grid.
//!
//! A [`PuiseuxSeries`] with denominator D stores coefficients for exponents
//! in (1/D)·Z, keyed by the integer scaled exponent (exponent × D), together
//! with an exclusive truncation bound: the series is known exactly for all
//! exponents strictly below `trunc/D` and unknown from there on.  The
//! truncation of every operation result is derived from operand truncations
//! and leading exponents, never assumed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{lcm_u64, CycScalar, QQ};

/// A truncated q-series with exponents on the grid (1/denom)·Z.
///
/// Coefficients are exact cyclotomic rationals; zero coefficients are never
/// stored.  Equality compares the mathematical content and the truncation
/// after moving both operands to a common grid.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    /// Grid denominator D ≥ 1.
    denom: u64,
    /// Scaled exponent k ↦ coefficient of q^{k/D}; all keys < `trunc`.
    terms: BTreeMap<i64, CycScalar>,
    /// Exclusive scaled truncation: exponents < trunc/D are known.
    trunc: i64,
}

impl PuiseuxSeries {
    /// The zero series, known below `trunc_scaled/denom`.
    pub fn zero(denom: u64, trunc_scaled: i64) -> Self {
        assert!(denom >= 1, "grid denominator must be positive");
        PuiseuxSeries {
            denom,
            terms: BTreeMap::new(),
            trunc: trunc_scaled,
        }
    }

    /// The constant series 1.
    pub fn one(denom: u64, trunc_scaled: i64) -> Self {
        let mut s = PuiseuxSeries::zero(denom, trunc_scaled);
        s.insert(0, CycScalar::one());
        s
    }

    /// A single term c·q^{exp_scaled/denom}.
    pub fn monomial(denom: u64, exp_scaled: i64, coeff: CycScalar, trunc_scaled: i64) -> Self {
        let mut s = PuiseuxSeries::zero(denom, trunc_scaled);
        assert!(
            exp_scaled < trunc_scaled,
            "monomial exponent must lie below the truncation"
        );
        s.insert(exp_scaled, coeff);
        s
    }

    /// Builds a series from scaled (exponent, coefficient) pairs.
    pub fn from_scaled_terms<I>(denom: u64, terms: I, trunc_scaled: i64) -> Self
    where
        I: IntoIterator<Item = (i64, CycScalar)>,
    {
        let mut s = PuiseuxSeries::zero(denom, trunc_scaled);
        for (k, c) in terms {
            assert!(k < trunc_scaled, "term exponent must lie below the truncation");
            let cur = s.coeff_raw(k).add(&c);
            s.set(k, cur);
        }
        s
    }

    /// Grid denominator D.
    pub fn denom(&self) -> u64 {
        self.denom
    }

    /// Exclusive truncation bound, scaled by the denominator.
    pub fn trunc_scaled(&self) -> i64 {
        self.trunc
    }

    /// Exclusive truncation bound as a rational exponent.
    pub fn trunc(&self) -> QQ {
        QQ::new(BigInt::from(self.trunc), BigInt::from(self.denom))
    }

    /// Scaled exponents and coefficients, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// (exponent, coefficient) pairs with rational exponents, ascending.
    pub fn terms_rational(&self) -> Vec<(QQ, CycScalar)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                (
                    QQ::new(BigInt::from(*k), BigInt::from(self.denom)),
                    c.clone(),
                )
            })
            .collect()
    }

    /// True iff no term is stored (zero within the known range).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least scaled exponent with a nonzero coefficient.
    pub fn min_scaled(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Leading (exponent, coefficient), if any term exists.
    pub fn leading(&self) -> Option<(QQ, CycScalar)> {
        self.terms.iter().next().map(|(k, c)| {
            (
                QQ::new(BigInt::from(*k), BigInt::from(self.denom)),
                c.clone(),
            )
        })
    }

    /// Coefficient at scaled exponent `k`.
    ///
    /// Panics if `k` is at or beyond the truncation: reading unknown
    /// coefficients is a programming error, not a data condition.
    pub fn coeff_scaled(&self, k: i64) -> CycScalar {
        assert!(
            k < self.trunc,
            "coefficient at scaled exponent {} requested, but series is only known below {}",
            k,
            self.trunc
        );
        self.coeff_raw(k)
    }

    /// Coefficient at rational exponent `exp` (zero when off-grid).
    ///
    /// Panics if `exp` is at or beyond the truncation.
    pub fn coeff(&self, exp: &QQ) -> CycScalar {
        let scaled = exp * QQ::from(BigInt::from(self.denom));
        if !scaled.is_integer() {
            assert!(exp < &self.trunc(), "coefficient beyond the truncation");
            return CycScalar::zero();
        }
        let k = i64::try_from(scaled.to_integer()).expect("scaled exponent fits in i64");
        self.coeff_scaled(k)
    }

    /// Coefficient at rational exponent `exp`, or `None` when the exponent
    /// is at or beyond the truncation (for callers that report rather than
    /// panic).
    pub fn try_coeff(&self, exp: &QQ) -> Option<CycScalar> {
        if exp >= &self.trunc() {
            return None;
        }
        let scaled = exp * QQ::from(BigInt::from(self.denom));
        if !scaled.is_integer() {
            return Some(CycScalar::zero());
        }
        let k = i64::try_from(scaled.to_integer()).expect("scaled exponent fits in i64");
        Some(self.coeff_raw(k))
    }

    /// Adds a constant term (the truncation must reach past exponent 0).
    pub fn add_constant(&self, c: &CycScalar) -> Self {
        assert!(self.trunc > 0, "constant term lies beyond the truncation");
        let mut out = self.clone();
        let cur = out.coeff_raw(0).add(c);
        out.set(0, cur);
        out
    }

    fn coeff_raw(&self, k: i64) -> CycScalar {
        self.terms.get(&k).cloned().unwrap_or_else(CycScalar::zero)
    }

    fn insert(&mut self, k: i64, c: CycScalar) {
        if k >= self.trunc {
            return;
        }
        let c = c.reduced();
        if !c.is_zero() {
            self.terms.insert(k, c);
        }
    }

    fn set(&mut self, k: i64, c: CycScalar) {
        if k >= self.trunc {
            return;
        }
        let c = c.reduced();
        if c.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
    }

    /// Re-expresses the series on a finer grid whose denominator is a
    /// multiple of the current one.
    pub fn with_denom(&self, new_denom: u64) -> Self {
        assert!(
            new_denom % self.denom == 0,
            "target grid {} must refine current grid {}",
            new_denom,
            self.denom
        );
        let f = (new_denom / self.denom) as i64;
        PuiseuxSeries {
            denom: new_denom,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            trunc: self.trunc * f,
        }
    }

    fn common_grid(&self, other: &Self) -> (Self, Self) {
        let d = lcm_u64(self.denom, other.denom);
        (self.with_denom(d), other.with_denom(d))
    }

    /// Forgets information above `new_trunc_scaled` (no-op when already
    /// shorter).
    pub fn truncated(&self, new_trunc_scaled: i64) -> Self {
        let t = self.trunc.min(new_trunc_scaled);
        PuiseuxSeries {
            denom: self.denom,
            terms: self.terms.range(..t).map(|(k, c)| (*k, c.clone())).collect(),
            trunc: t,
        }
    }

    /// Sum.  Known where both operands are known.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common_grid(other);
        let trunc = a.trunc.min(b.trunc);
        let mut out = PuiseuxSeries::zero(a.denom, trunc);
        for (k, c) in a.terms.range(..trunc) {
            out.insert(*k, c.clone());
        }
        for (k, c) in b.terms.range(..trunc) {
            let cur = out.coeff_raw(*k).add(c);
            out.set(*k, cur);
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            trunc: self.trunc,
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return PuiseuxSeries::zero(self.denom, self.trunc);
        }
        let mut out = PuiseuxSeries::zero(self.denom, self.trunc);
        for (k, v) in &self.terms {
            out.insert(*k, v.mul(c));
        }
        out
    }

    /// Product with a rational scalar.
    pub fn scale_rational(&self, r: &QQ) -> Self {
        self.scale(&CycScalar::from_rational(r.clone()))
    }

    /// Product.  The result is known below
    /// min(T₁ + v₂, T₂ + v₁) where vᵢ is the leading exponent of the other
    /// operand (its truncation when that operand is zero): the unknown tail
    /// of one factor first pollutes the product at its truncation plus the
    /// other factor's valuation.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common_grid(other);
        let va = a.min_scaled().unwrap_or(a.trunc);
        let vb = b.min_scaled().unwrap_or(b.trunc);
        let trunc = (a.trunc.saturating_add(vb)).min(b.trunc.saturating_add(va));
        let mut out = PuiseuxSeries::zero(a.denom, trunc);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                if k >= trunc {
                    continue;
                }
                let cur = out.coeff_raw(k).add(&ca.mul(cb));
                out.set(k, cur);
            }
        }
        out
    }

    /// Multiplies by the monomial q^shift, refining the grid if needed.
    pub fn mul_q_power(&self, shift: &QQ) -> Self {
        let shift_den = u64::try_from(shift.denom()).expect("shift denominator fits in u64");
        let d = lcm_u64(self.denom, shift_den);
        let s = self.with_denom(d);
        let scaled_shift = shift * QQ::from(BigInt::from(d));
        debug_assert!(scaled_shift.is_integer());
        let sh = i64::try_from(scaled_shift.to_integer()).expect("scaled shift fits in i64");
        PuiseuxSeries {
            denom: d,
            terms: s.terms.iter().map(|(k, c)| (k + sh, c.clone())).collect(),
            trunc: s.trunc + sh,
        }
    }

    /// Multiplicative inverse.  Writing f = c·q^v·(1 + g), the inverse is
    /// computed by the linear recurrence for 1/(1+g); knowledge of f below
    /// T yields knowledge of 1/f below T − 2v.
    pub fn invert(&self) -> Result<Self> {
        let (v, lead) = match self.terms.iter().next() {
            Some((k, c)) => (*k, c.clone()),
            None => {
                return Err(Error::NonInvertibleLeading(
                    "cannot invert a series with no known nonzero term".into(),
                ))
            }
        };
        let lead_inv = lead.inv();
        // u = g where self = lead·q^v·(1 + g); u has strictly positive keys.
        let span = self.trunc - v; // known span of (1 + g) above its constant
        let mut u: BTreeMap<i64, CycScalar> = BTreeMap::new();
        for (k, c) in &self.terms {
            if *k == v {
                continue;
            }
            u.insert(k - v, c.mul(&lead_inv));
        }
        // c[0] = 1; c[m] = −Σ_{1≤k≤m} u[k]·c[m−k].
        let mut inv_tail: BTreeMap<i64, CycScalar> = BTreeMap::new();
        inv_tail.insert(0, CycScalar::one());
        for m in 1..span {
            let mut acc = CycScalar::zero();
            for (k, uk) in u.range(1..=m) {
                if let Some(c) = inv_tail.get(&(m - k)) {
                    acc = acc.add(&uk.mul(c));
                }
            }
            let val = acc.neg().reduced();
            if !val.is_zero() {
                inv_tail.insert(m, val);
            }
        }
        let trunc = self.trunc - 2 * v;
        let mut out = PuiseuxSeries::zero(self.denom, trunc);
        for (m, c) in inv_tail {
            out.insert(m - v, c.mul(&lead_inv));
        }
        Ok(out)
    }

    /// f^n for integer n (negative n inverts first).  Truncation follows
    /// from the product and inverse rules automatically.
    pub fn int_pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.int_pow(-n);
        }
        if n == 0 {
            let v = self.min_scaled().unwrap_or(0);
            return Ok(PuiseuxSeries::one(self.denom, self.trunc - v));
        }
        // Binary exponentiation; the min-rule makes the truncation of the
        // result identical to that of the n-fold iterated product.
        let mut base = self.clone();
        let mut n = n as u64;
        let mut acc: Option<PuiseuxSeries> = None;
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(acc.expect("n >= 1"))
    }

    /// Applies τ ↦ (aτ + b)/d to the underlying variable q = e(τ): the term
    /// c·q^r becomes c·e(rb/d)·q^{ra/d}.  The grid denominator becomes D·d.
    pub fn substitute(&self, a: u64, b: i64, d: u64) -> Self {
        assert!(a >= 1 && d >= 1, "substitution needs a, d >= 1");
        let new_denom = self.denom * d;
        let mut out = PuiseuxSeries::zero(new_denom, self.trunc * a as i64);
        for (k, c) in &self.terms {
            // r = k/D, exponent r·a/d = k·a/(D·d), phase e(r·b/d) = e(k·b/(D·d)).
            let phase = CycScalar::e(&QQ::new(
                BigInt::from(*k) * BigInt::from(b),
                BigInt::from(new_denom),
            ));
            out.insert(k * a as i64, c.mul(&phase));
        }
        out
    }

    /// (1 − q^{j_scaled/denom})^alpha as a series, by the generalized
    /// binomial theorem; `j_scaled` must be positive.
    pub fn binomial_one_minus(denom: u64, j_scaled: i64, alpha: &QQ, trunc_scaled: i64) -> Self {
        assert!(j_scaled >= 1, "binomial factor needs a positive exponent");
        let mut out = PuiseuxSeries::zero(denom, trunc_scaled);
        // Term l: C(alpha, l)·(−1)^l·q^{l·j}.
        let mut binom = QQ::one();
        let mut l: i64 = 0;
        loop {
            let key = l * j_scaled;
            if key >= trunc_scaled {
                break;
            }
            let signed = if l % 2 == 0 { binom.clone() } else { -binom.clone() };
            out.insert(key, CycScalar::from_rational(signed));
            // C(alpha, l+1) = C(alpha, l)·(alpha − l)/(l + 1).
            binom = binom * (alpha - QQ::from(BigInt::from(l))) / QQ::from(BigInt::from(l + 1));
            l += 1;
        }
        out
    }

    /// exp(f) = Σ f^k/k! for a series with strictly positive valuation.
    /// Each successive power starts at least one grid step later, so the sum
    /// below the truncation is finite.
    pub fn exp(&self) -> Self {
        if let Some(v) = self.min_scaled() {
            assert!(v >= 1, "exp needs strictly positive valuation");
        }
        let mut acc = PuiseuxSeries::one(self.denom, self.trunc);
        let mut term = PuiseuxSeries::one(self.denom, self.trunc);
        let mut k: i64 = 1;
        loop {
            term = term.mul(self).scale_rational(&QQ::new(
                BigInt::one(),
                BigInt::from(k),
            ));
            // Keep the overall sum on the original truncation.
            term = term.truncated(self.trunc);
            match term.min_scaled() {
                Some(v) if v < self.trunc => {}
                _ => break,
            }
            acc = acc.add(&term);
            k += 1;
            assert!(
                k <= self.trunc.saturating_add(4),
                "exp failed to terminate within the truncation bound"
            );
        }
        acc.truncated(self.trunc)
    }

    /// Rewrites the series as q^h·∏_{j≥1}(1 − q^j)^{c_j} and returns the
    /// nonzero rational exponents c_j, where h is the leading exponent and
    /// the leading coefficient must be 1.
    ///
    /// After peeling q^h the remaining series must live on the integer grid;
    /// the c_j are recovered greedily: c_j is minus the coefficient of q^j in
    /// log-remainder terms, i.e. the current remainder r satisfies
    /// r = 1 − c_j·q^j + O(q^{j+1}) at step j, and r is then multiplied by
    /// (1 − q^j)^{−c_j}.
    pub fn extract_product_exponents(&self) -> Result<BTreeMap<i64, QQ>> {
        let (h, lead) = self.leading().ok_or_else(|| {
            Error::NonInvertibleLeading("cannot factor a series with no nonzero term".into())
        })?;
        if lead.to_rational() != Some(QQ::one()) {
            return Err(Error::NonIntegerCoefficient(format!(
                "leading coefficient must be 1 to factor into binomials, found {}",
                lead
            )));
        }
        let g = self.mul_q_power(&(-h));
        // The normalized series must have integer exponents only.
        let d = g.denom as i64;
        let mut r = PuiseuxSeries::zero(1, div_floor_exact(g.trunc, d)?);
        for (k, c) in &g.terms {
            let j = div_floor_exact(*k, d)?;
            r.insert(j, c.clone());
        }
        let span = r.trunc;
        let mut out = BTreeMap::new();
        for j in 1..span {
            let coeff = r.coeff_raw(j);
            if coeff.is_zero() {
                continue;
            }
            let cj = match coeff.to_rational() {
                Some(q) => -q,
                None => {
                    return Err(Error::NonIntegerCoefficient(format!(
                        "product exponent at q^{} is not rational: {}",
                        j, coeff
                    )))
                }
            };
            let factor = PuiseuxSeries::binomial_one_minus(1, j, &-cj.clone(), span);
            r = r.mul(&factor).truncated(span);
            out.insert(j, cj);
        }
        debug_assert!(r.terms.range(1..).next().is_none());
        Ok(out)
    }

    /// First exponent below both truncations where the two series differ,
    /// with the two coefficients; `None` when they agree on the overlap.
    pub fn difference_witness(&self, other: &Self) -> Option<(QQ, CycScalar, CycScalar)> {
        let (a, b) = self.common_grid(other);
        let bound = a.trunc.min(b.trunc);
        let mut keys: Vec<i64> = a
            .terms
            .range(..bound)
            .map(|(k, _)| *k)
            .chain(b.terms.range(..bound).map(|(k, _)| *k))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let ca = a.coeff_raw(k);
            let cb = b.coeff_raw(k);
            if ca != cb {
                return Some((
                    QQ::new(BigInt::from(k), BigInt::from(a.denom)),
                    ca,
                    cb,
                ));
            }
        }
        None
    }

    /// True iff the series agree everywhere both are known.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.difference_witness(other).is_none()
    }
}

/// Exact division of scaled exponents when moving to a coarser grid.
fn div_floor_exact(k: i64, d: i64) -> Result<i64> {
    if k % d != 0 {
        return Err(Error::NonIntegerCoefficient(format!(
            "exponent {}/{} is not an integer",
            k, d
        )));
    }
    Ok(k / d)
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common_grid(other);
        a.trunc == b.trunc && a.terms == b.terms
    }
}

impl Eq for PuiseuxSeries {}

impl std::fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "O(q^{})", self.trunc());
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = QQ::new(BigInt::from(*k), BigInt::from(self.denom));
            if e.is_zero() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*q^{}", c, e)?;
            }
        }
        write!(f, " + O(q^{})", self.trunc())
    }
}
