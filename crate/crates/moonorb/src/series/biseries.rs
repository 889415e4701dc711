//! Truncated exact series in two variables p and q.
//!
//! A [`BiSeries`] stores coefficients on a rational exponent grid per
//! variable, with an independent exclusive truncation per variable: the
//! series is known exactly on the half-open box
//! {p-exponent < p_trunc} × {q-exponent < q_trunc}.  Product truncations use
//! the same leading-exponent rule as the one-variable type, applied per
//! axis, which under-approximates the region actually determined by the
//! operands and is therefore sound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{lcm_u64, CycScalar, QQ};
use crate::series::PuiseuxSeries;

/// A truncated series in p and q with exponents on (1/p_denom)·Z and
/// (1/q_denom)·Z.  Keys are scaled exponent pairs (p·p_denom, q·q_denom).
#[derive(Clone, Debug)]
pub struct BiSeries {
    p_denom: u64,
    q_denom: u64,
    terms: BTreeMap<(i64, i64), CycScalar>,
    /// Exclusive scaled truncation in the p direction.
    p_trunc: i64,
    /// Exclusive scaled truncation in the q direction.
    q_trunc: i64,
}

impl BiSeries {
    /// The zero series on the given grid and knowledge box.
    pub fn zero(p_denom: u64, q_denom: u64, p_trunc: i64, q_trunc: i64) -> Self {
        assert!(p_denom >= 1 && q_denom >= 1, "grid denominators must be positive");
        BiSeries {
            p_denom,
            q_denom,
            terms: BTreeMap::new(),
            p_trunc,
            q_trunc,
        }
    }

    /// The constant series 1.
    pub fn one(p_denom: u64, q_denom: u64, p_trunc: i64, q_trunc: i64) -> Self {
        let mut s = BiSeries::zero(p_denom, q_denom, p_trunc, q_trunc);
        s.insert((0, 0), CycScalar::one());
        s
    }

    /// Embeds a one-variable q-series at p-exponent zero.
    pub fn from_q_series(f: &PuiseuxSeries, p_denom: u64, p_trunc: i64) -> Self {
        let mut s = BiSeries::zero(p_denom, f.denom(), p_trunc, f.trunc_scaled());
        for (k, c) in f.terms() {
            s.insert((0, k), c.clone());
        }
        s
    }

    /// Embeds a one-variable series as a p-series at q-exponent zero.
    pub fn from_p_series(f: &PuiseuxSeries, q_denom: u64, q_trunc: i64) -> Self {
        BiSeries::from_q_series(f, q_denom, q_trunc).transpose()
    }

    /// Builds a series from scaled ((p, q), coefficient) pairs, summing
    /// repeats; terms outside the knowledge box are rejected.
    pub fn from_scaled_terms<I>(
        p_denom: u64,
        q_denom: u64,
        terms: I,
        p_trunc: i64,
        q_trunc: i64,
    ) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), CycScalar)>,
    {
        let mut s = BiSeries::zero(p_denom, q_denom, p_trunc, q_trunc);
        for (key, c) in terms {
            assert!(
                key.0 < p_trunc && key.1 < q_trunc,
                "term {:?} lies outside the knowledge box",
                key
            );
            s.accumulate(key, &c);
        }
        s
    }

    /// Grid denominator of the p axis.
    pub fn p_denom(&self) -> u64 {
        self.p_denom
    }

    /// Grid denominator of the q axis.
    pub fn q_denom(&self) -> u64 {
        self.q_denom
    }

    /// Exclusive scaled truncation of the p axis.
    pub fn p_trunc_scaled(&self) -> i64 {
        self.p_trunc
    }

    /// Exclusive scaled truncation of the q axis.
    pub fn q_trunc_scaled(&self) -> i64 {
        self.q_trunc
    }

    /// Scaled (p, q) keys and coefficients, ascending lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &CycScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// True iff no term is stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: (i64, i64), c: CycScalar) {
        if key.0 >= self.p_trunc || key.1 >= self.q_trunc {
            return;
        }
        let c = c.reduced();
        if c.is_zero() {
            return;
        }
        self.terms.insert(key, c);
    }

    fn accumulate(&mut self, key: (i64, i64), c: &CycScalar) {
        if key.0 >= self.p_trunc || key.1 >= self.q_trunc {
            return;
        }
        let cur = match self.terms.get(&key) {
            Some(old) => old.add(c),
            None => c.clone(),
        }
        .reduced();
        if cur.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, cur);
        }
    }

    /// Least scaled p-exponent over all terms, or the p truncation if none.
    pub fn min_p_scaled(&self) -> i64 {
        self.terms
            .keys()
            .map(|(p, _)| *p)
            .min()
            .unwrap_or(self.p_trunc)
    }

    /// Least scaled q-exponent over all terms, or the q truncation if none.
    pub fn min_q_scaled(&self) -> i64 {
        self.terms
            .keys()
            .map(|(_, q)| *q)
            .min()
            .unwrap_or(self.q_trunc)
    }

    /// Coefficient at scaled key; panics outside the knowledge box.
    pub fn coeff_scaled(&self, key: (i64, i64)) -> CycScalar {
        assert!(
            key.0 < self.p_trunc && key.1 < self.q_trunc,
            "coefficient at {:?} requested outside the knowledge box ({}, {})",
            key,
            self.p_trunc,
            self.q_trunc
        );
        self.terms.get(&key).cloned().unwrap_or_else(CycScalar::zero)
    }

    /// Coefficient at rational exponents (zero when off-grid); panics
    /// outside the knowledge box.
    pub fn coeff(&self, p: &QQ, q: &QQ) -> CycScalar {
        let ps = p * QQ::from(BigInt::from(self.p_denom));
        let qs = q * QQ::from(BigInt::from(self.q_denom));
        if !ps.is_integer() || !qs.is_integer() {
            assert!(p < &self.p_trunc_exp() && q < &self.q_trunc_exp());
            return CycScalar::zero();
        }
        let key = (
            i64::try_from(ps.to_integer()).expect("p key fits in i64"),
            i64::try_from(qs.to_integer()).expect("q key fits in i64"),
        );
        self.coeff_scaled(key)
    }

    /// Exclusive p truncation as a rational exponent.
    pub fn p_trunc_exp(&self) -> QQ {
        QQ::new(BigInt::from(self.p_trunc), BigInt::from(self.p_denom))
    }

    /// Exclusive q truncation as a rational exponent.
    pub fn q_trunc_exp(&self) -> QQ {
        QQ::new(BigInt::from(self.q_trunc), BigInt::from(self.q_denom))
    }

    /// Re-expresses the series on finer grids (each new denominator a
    /// multiple of the current one).
    pub fn with_denoms(&self, p_denom: u64, q_denom: u64) -> Self {
        assert!(p_denom % self.p_denom == 0 && q_denom % self.q_denom == 0);
        let fp = (p_denom / self.p_denom) as i64;
        let fq = (q_denom / self.q_denom) as i64;
        BiSeries {
            p_denom,
            q_denom,
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| ((p * fp, q * fq), c.clone()))
                .collect(),
            p_trunc: self.p_trunc * fp,
            q_trunc: self.q_trunc * fq,
        }
    }

    fn common_grid(&self, other: &Self) -> (Self, Self) {
        let pd = lcm_u64(self.p_denom, other.p_denom);
        let qd = lcm_u64(self.q_denom, other.q_denom);
        (self.with_denoms(pd, qd), other.with_denoms(pd, qd))
    }

    /// Forgets information at or above the given scaled bounds.
    pub fn truncated(&self, p_trunc: i64, q_trunc: i64) -> Self {
        let pt = self.p_trunc.min(p_trunc);
        let qt = self.q_trunc.min(q_trunc);
        BiSeries {
            p_denom: self.p_denom,
            q_denom: self.q_denom,
            terms: self
                .terms
                .iter()
                .filter(|((p, q), _)| *p < pt && *q < qt)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            p_trunc: pt,
            q_trunc: qt,
        }
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common_grid(other);
        let mut out = BiSeries::zero(
            a.p_denom,
            a.q_denom,
            a.p_trunc.min(b.p_trunc),
            a.q_trunc.min(b.q_trunc),
        );
        for (k, c) in &a.terms {
            out.accumulate(*k, c);
        }
        for (k, c) in &b.terms {
            out.accumulate(*k, c);
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        BiSeries {
            p_denom: self.p_denom,
            q_denom: self.q_denom,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            p_trunc: self.p_trunc,
            q_trunc: self.q_trunc,
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = BiSeries::zero(self.p_denom, self.q_denom, self.p_trunc, self.q_trunc);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.insert(*k, v.mul(c));
        }
        out
    }

    /// Product with a rational scalar.
    pub fn scale_rational(&self, r: &QQ) -> Self {
        self.scale(&CycScalar::from_rational(r.clone()))
    }

    /// Product.  Truncations follow the one-variable rule independently on
    /// each axis, with the minimum exponent over all terms playing the role
    /// of the valuation.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common_grid(other);
        let p_trunc = (a.p_trunc.saturating_add(b.min_p_scaled()))
            .min(b.p_trunc.saturating_add(a.min_p_scaled()));
        let q_trunc = (a.q_trunc.saturating_add(b.min_q_scaled()))
            .min(b.q_trunc.saturating_add(a.min_q_scaled()));
        let mut out = BiSeries::zero(a.p_denom, a.q_denom, p_trunc, q_trunc);
        for ((pa, qa), ca) in &a.terms {
            for ((pb, qb), cb) in &b.terms {
                let key = (pa + pb, qa + qb);
                if key.0 >= p_trunc || key.1 >= q_trunc {
                    continue;
                }
                out.accumulate(key, &ca.mul(cb));
            }
        }
        out
    }

    /// Multiplies by the monomial p^a·q^b, refining grids as needed.
    pub fn mul_monomial(&self, p_shift: &QQ, q_shift: &QQ) -> Self {
        let pd = lcm_u64(
            self.p_denom,
            u64::try_from(p_shift.denom()).expect("shift denominator fits"),
        );
        let qd = lcm_u64(
            self.q_denom,
            u64::try_from(q_shift.denom()).expect("shift denominator fits"),
        );
        let s = self.with_denoms(pd, qd);
        let dp = i64::try_from((p_shift * QQ::from(BigInt::from(pd))).to_integer())
            .expect("scaled p shift fits");
        let dq = i64::try_from((q_shift * QQ::from(BigInt::from(qd))).to_integer())
            .expect("scaled q shift fits");
        BiSeries {
            p_denom: pd,
            q_denom: qd,
            terms: s
                .terms
                .iter()
                .map(|((p, q), c)| ((p + dp, q + dq), c.clone()))
                .collect(),
            p_trunc: s.p_trunc + dp,
            q_trunc: s.q_trunc + dq,
        }
    }

    /// f^n for n ≥ 1 by binary exponentiation.
    pub fn int_pow(&self, n: u64) -> Self {
        assert!(n >= 1, "two-variable powers are only taken with n >= 1");
        let mut base = self.clone();
        let mut n = n;
        let mut acc: Option<BiSeries> = None;
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
        acc.expect("n >= 1")
    }

    /// Swaps the roles of p and q.
    pub fn transpose(&self) -> Self {
        BiSeries {
            p_denom: self.q_denom,
            q_denom: self.p_denom,
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| ((*q, *p), c.clone()))
                .collect(),
            p_trunc: self.q_trunc,
            q_trunc: self.p_trunc,
        }
    }

    /// Rescales every p-exponent by num/den (exactly, by refining the grid).
    pub fn rescale_p(&self, num: u64, den: u64) -> Self {
        assert!(num >= 1 && den >= 1);
        BiSeries {
            p_denom: self.p_denom * den,
            q_denom: self.q_denom,
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| ((p * num as i64, *q), c.clone()))
                .collect(),
            p_trunc: self.p_trunc * num as i64,
            q_trunc: self.q_trunc,
        }
        .reduced_grid()
    }

    /// Rescales every q-exponent by num/den.
    pub fn rescale_q(&self, num: u64, den: u64) -> Self {
        self.transpose().rescale_p(num, den).transpose()
    }

    /// Divides out any common factor between a grid denominator and all
    /// scaled data on that axis, keeping the representation small after
    /// rescalings.
    pub fn reduced_grid(&self) -> Self {
        fn axis_gcd(denom: u64, trunc: i64, keys: impl Iterator<Item = i64>) -> u64 {
            let mut g = crate::scalar::gcd_u64(denom, trunc.unsigned_abs());
            for k in keys {
                g = crate::scalar::gcd_u64(g, k.unsigned_abs());
                if g == 1 {
                    break;
                }
            }
            g.max(1)
        }
        let gp = axis_gcd(
            self.p_denom,
            self.p_trunc,
            self.terms.keys().map(|(p, _)| *p),
        );
        let gq = axis_gcd(
            self.q_denom,
            self.q_trunc,
            self.terms.keys().map(|(_, q)| *q),
        );
        if gp == 1 && gq == 1 {
            return self.clone();
        }
        BiSeries {
            p_denom: self.p_denom / gp,
            q_denom: self.q_denom / gq,
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| ((p / gp as i64, q / gq as i64), c.clone()))
                .collect(),
            p_trunc: self.p_trunc / gp as i64,
            q_trunc: self.q_trunc / gq as i64,
        }
    }

    /// exp(f) = Σ f^k/k! for a series all of whose terms have q-exponent at
    /// least one grid step and p-exponent at least zero.  Each power starts
    /// one q-step later, so the sum below the q truncation is finite.
    pub fn exp(&self) -> Self {
        for ((p, q), _) in &self.terms {
            assert!(*q >= 1, "exp needs strictly positive q-exponents");
            assert!(*p >= 0, "exp needs nonnegative p-exponents");
        }
        let mut acc = BiSeries::one(self.p_denom, self.q_denom, self.p_trunc, self.q_trunc);
        let mut term = BiSeries::one(self.p_denom, self.q_denom, self.p_trunc, self.q_trunc);
        let mut k: i64 = 1;
        loop {
            term = term
                .mul(self)
                .scale_rational(&QQ::new(BigInt::one(), BigInt::from(k)))
                .truncated(self.p_trunc, self.q_trunc);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
            k += 1;
            assert!(
                k <= self.q_trunc.saturating_add(8),
                "exp failed to terminate within the truncation bound"
            );
        }
        acc
    }

    /// log(f) = Σ_{k≥1} (−1)^{k+1}·u^k/k with u = f − 1, for a series whose
    /// constant term is 1 and all of whose other terms have p-exponent at
    /// least one grid step; successive powers of u then start at ever higher
    /// p-exponent, so the sum below the p truncation is finite.  Negative
    /// q-exponents in u are allowed and shrink the q truncation of the
    /// result through the ordinary product rule.
    pub fn log(&self) -> Self {
        let one = BiSeries::one(self.p_denom, self.q_denom, self.p_trunc, self.q_trunc);
        let u = self.sub(&one);
        assert!(
            self.coeff_scaled((0, 0)).to_rational() == Some(QQ::one()),
            "log needs constant term 1"
        );
        for ((p, _), _) in &u.terms {
            assert!(*p >= 1, "log needs strictly positive p-exponents off the constant");
        }
        let mut acc = BiSeries::zero(self.p_denom, self.q_denom, self.p_trunc, self.q_trunc);
        let mut power = one;
        // Every term of u^k has p-exponent at least k grid steps, so powers
        // with k ≥ p_trunc lie entirely outside the knowledge box and the
        // sum may stop there.  Powers below that bound are added even when
        // empty: their truncations record how far the partial sum is known
        // (negative q-exponents in u erode the q truncation).
        for k in 1..self.p_trunc.max(1) {
            power = power.mul(&u);
            let sign = if k % 2 == 1 { QQ::one() } else { -QQ::one() };
            acc = acc.add(&power.scale_rational(&(sign / QQ::from(BigInt::from(k)))));
        }
        acc
    }

    /// Compares the two series on the inclusive box
    /// {p-exponent ≤ p_bound} × {q-exponent ≤ q_bound}.
    ///
    /// Errors with [`Error::InsufficientTruncation`] unless both operands
    /// are known strictly beyond the box on both axes.  Returns the
    /// lexicographically first differing exponent pair with both
    /// coefficients, or `None` when the series agree on the whole box.
    #[allow(clippy::type_complexity)]
    pub fn compare_to_bidegree(
        &self,
        other: &Self,
        p_bound: i64,
        q_bound: i64,
    ) -> Result<Option<((QQ, QQ), CycScalar, CycScalar)>> {
        for (label, s) in [("left", self), ("right", other)] {
            if s.p_trunc <= p_bound.saturating_mul(s.p_denom as i64) {
                return Err(Error::InsufficientTruncation(format!(
                    "{} series only known below p-exponent {}, need beyond {}",
                    label,
                    s.p_trunc_exp(),
                    p_bound
                )));
            }
            if s.q_trunc <= q_bound.saturating_mul(s.q_denom as i64) {
                return Err(Error::InsufficientTruncation(format!(
                    "{} series only known below q-exponent {}, need beyond {}",
                    label,
                    s.q_trunc_exp(),
                    q_bound
                )));
            }
        }
        let (a, b) = self.common_grid(other);
        let pb = p_bound * a.p_denom as i64;
        let qb = q_bound * a.q_denom as i64;
        let mut keys: Vec<(i64, i64)> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .filter(|(p, q)| *p <= pb && *q <= qb)
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let ca = a.terms.get(&key).cloned().unwrap_or_else(CycScalar::zero);
            let cb = b.terms.get(&key).cloned().unwrap_or_else(CycScalar::zero);
            if ca != cb {
                return Ok(Some((
                    (
                        QQ::new(BigInt::from(key.0), BigInt::from(a.p_denom)),
                        QQ::new(BigInt::from(key.1), BigInt::from(a.q_denom)),
                    ),
                    ca,
                    cb,
                )));
            }
        }
        Ok(None)
    }

    /// First differing scaled key on the overlap of the two knowledge
    /// boxes, or `None` when the series agree there.
    #[allow(clippy::type_complexity)]
    pub fn difference_witness(&self, other: &Self) -> Option<((QQ, QQ), CycScalar, CycScalar)> {
        let (a, b) = self.common_grid(other);
        let pt = a.p_trunc.min(b.p_trunc);
        let qt = a.q_trunc.min(b.q_trunc);
        let mut keys: Vec<(i64, i64)> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .filter(|(p, q)| *p < pt && *q < qt)
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let ca = a.terms.get(&key).cloned().unwrap_or_else(CycScalar::zero);
            let cb = b.terms.get(&key).cloned().unwrap_or_else(CycScalar::zero);
            if ca != cb {
                return Some((
                    (
                        QQ::new(BigInt::from(key.0), BigInt::from(a.p_denom)),
                        QQ::new(BigInt::from(key.1), BigInt::from(a.q_denom)),
                    ),
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

impl PartialEq for BiSeries {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common_grid(other);
        a.p_trunc == b.p_trunc && a.q_trunc == b.q_trunc && a.terms == b.terms
    }
}

impl Eq for BiSeries {}
