//! Cyclotomic rationals in the power basis of a primitive root of unity.
//!
//! A [`CycScalar`] of conductor E is an element of Q(ζ_E), stored as a
//! coefficient vector of length φ(E) over the basis 1, ζ, …, ζ^{φ(E)−1},
//! reduced modulo the E-th cyclotomic polynomial Φ_E.  The representation is
//! canonical for a fixed conductor, so equality at a common conductor is
//! literal vector equality.  Mixed-conductor arithmetic promotes both operands
//! to the least common multiple first, using ζ_E = ζ_{E′}^{E′/E}.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{euler_phi, lcm_u64, QQ};

/// Precomputed data for one conductor: the cyclotomic polynomial and the
/// expansions of all powers ζ^k (0 ≤ k < E) in the power basis.
struct CycContext {
    phi: usize,
    /// `pow_table[k]` = coordinates of ζ^k over 1, ζ, …, ζ^{φ−1}.
    pow_table: Vec<Vec<QQ>>,
}

fn context_cache() -> &'static Mutex<HashMap<u64, Arc<CycContext>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycContext>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the E-th cyclotomic polynomial Φ_E, low degree first,
/// computed by exact division of x^E − 1 by the product of all Φ_d, d | E,
/// d < E.  Integer arithmetic throughout; the division is exact.
fn cyclotomic_poly(e: u64) -> Vec<BigInt> {
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
    /// Exact division of integer polynomials; panics on a remainder, which
    /// would indicate corrupted recursion rather than bad input.
    fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        assert!(den[dd].is_one(), "cyclotomic divisor must be monic");
        assert!(rem.len() > dd, "degree underflow in exact division");
        let qd = rem.len() - 1 - dd;
        let mut quot = vec![BigInt::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for (j, dj) in den.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "non-exact cyclotomic division");
        quot
    }

    if e == 1 {
        // Φ_1 = x − 1.
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^E − 1.
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::one();
    // Product of Φ_d over proper divisors d of E.
    let mut den = vec![BigInt::one()];
    for d in super::divisors(e) {
        if d < e {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    poly_div_exact(&num, &den)
}

fn context(conductor: u64) -> Arc<CycContext> {
    assert!(conductor >= 1, "conductor must be positive");
    if let Some(ctx) = context_cache().lock().unwrap().get(&conductor) {
        return Arc::clone(ctx);
    }
    let phi = euler_phi(conductor) as usize;
    let cyc = cyclotomic_poly(conductor);
    assert_eq!(cyc.len(), phi + 1, "cyclotomic degree must be phi");
    // ζ^φ expressed over the basis: x^φ ≡ −(c_0 + c_1 x + … + c_{φ−1} x^{φ−1}).
    let top: Vec<QQ> = cyc[..phi].iter().map(|c| QQ::from(-c.clone())).collect();
    let mut pow_table: Vec<Vec<QQ>> = Vec::with_capacity(conductor as usize);
    for k in 0..conductor as usize {
        if k < phi {
            let mut v = vec![QQ::zero(); phi];
            v[k] = QQ::one();
            pow_table.push(v);
        } else {
            // ζ^k = ζ · ζ^{k−1}: shift up one degree, folding x^φ back in.
            let prev = &pow_table[k - 1];
            let carry = prev[phi - 1].clone();
            let mut v = vec![QQ::zero(); phi];
            for i in 1..phi {
                v[i] = prev[i - 1].clone();
            }
            if !carry.is_zero() {
                for (vi, ti) in v.iter_mut().zip(top.iter()) {
                    *vi += &carry * ti;
                }
            }
            pow_table.push(v);
        }
    }
    let ctx = Arc::new(CycContext { phi, pow_table });
    context_cache()
        .lock()
        .unwrap()
        .insert(conductor, Arc::clone(&ctx));
    ctx
}

/// Exact element of a cyclotomic field Q(ζ_E) with explicit conductor E.
///
/// The distinguished root is ζ_E = e(1/E) = e^{2πi/E}, so [`CycScalar::e`]
/// evaluates the normalized exponential e(x) = e^{2πix} exactly for rational
/// x.  Arithmetic between different conductors promotes to the lcm; the
/// promotion commutes with all operations.
#[derive(Clone)]
pub struct CycScalar {
    conductor: u64,
    coeffs: Vec<QQ>,
}

impl CycScalar {
    /// Zero at conductor 1.
    pub fn zero() -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![QQ::zero()],
        }
    }

    /// One at conductor 1.
    pub fn one() -> Self {
        CycScalar::from_rational(QQ::one())
    }

    /// Embeds a rational number (conductor 1).
    pub fn from_rational(r: QQ) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// Embeds a machine integer.
    pub fn from_int(n: i64) -> Self {
        CycScalar::from_rational(super::qq_int(n))
    }

    /// The normalized exponential e(x) = e^{2πix} for rational x, reduced
    /// mod 1 first so the conductor is the reduced denominator.
    pub fn e(x: &QQ) -> Self {
        let folded = x - x.floor();
        let den = folded.denom().clone();
        let num = folded.numer().clone();
        let conductor: u64 = u64::try_from(&den).expect("conductor fits in u64");
        let k: u64 = u64::try_from(&num).expect("root exponent fits in u64");
        let ctx = context(conductor);
        CycScalar {
            conductor,
            coeffs: ctx.pow_table[k as usize].clone(),
        }
    }

    /// ζ_E^k for the distinguished primitive E-th root.
    pub fn root_power(conductor: u64, k: i64) -> Self {
        let kk = k.rem_euclid(conductor as i64) as usize;
        let ctx = context(conductor);
        CycScalar {
            conductor,
            coeffs: ctx.pow_table[kk].clone(),
        }
    }

    /// The conductor E of the stored representation.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficient vector over the power basis 1, ζ, …, ζ^{φ(E)−1}.
    pub fn coeffs(&self) -> &[QQ] {
        &self.coeffs
    }

    /// True iff the value is zero (all coordinates vanish).
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational if it lies in Q, i.e. if every
    /// coordinate beyond the constant one vanishes.  Reduction mod Φ_E is
    /// canonical, so this test is exact.
    pub fn to_rational(&self) -> Option<QQ> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Drops the conductor to 1 when the value is rational; otherwise
    /// returns the value unchanged.  Keeps long-lived series coefficients
    /// compact after phase cancellations.
    pub fn reduced(self) -> Self {
        if self.conductor > 1 {
            if let Some(r) = self.to_rational() {
                return CycScalar::from_rational(r);
            }
        }
        self
    }

    /// Re-expresses the value at a larger conductor `target` (the current
    /// conductor must divide it).  ζ_E = ζ_target^{target/E}.
    pub fn promote(&self, target: u64) -> Self {
        assert!(
            target % self.conductor == 0,
            "promotion target {} must be a multiple of conductor {}",
            target,
            self.conductor
        );
        if target == self.conductor {
            return self.clone();
        }
        let step = target / self.conductor;
        let ctx = context(target);
        let mut out = vec![QQ::zero(); ctx.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((k as u64 * step) % target) as usize;
            for (o, t) in out.iter_mut().zip(ctx.pow_table[idx].iter()) {
                *o += c * t;
            }
        }
        CycScalar {
            conductor: target,
            coeffs: out,
        }
    }

    fn promoted_pair(&self, other: &Self) -> (Self, Self, u64) {
        let target = lcm_u64(self.conductor, other.conductor);
        (self.promote(target), other.promote(target), target)
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b, conductor) = self.promoted_pair(other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycScalar { conductor, coeffs }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, by schoolbook polynomial multiplication followed by folding
    /// each basis power ζ^m (m < 2φ−1) through the power table, after
    /// reducing m modulo E via ζ^E = 1.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, conductor) = self.promoted_pair(other);
        let ctx = context(conductor);
        let phi = ctx.phi;
        let mut out = vec![QQ::zero(); phi];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                let m = (i + j) as u64 % conductor;
                let table = &ctx.pow_table[m as usize];
                for (o, t) in out.iter_mut().zip(table.iter()) {
                    *o += &c * t;
                }
            }
        }
        CycScalar { conductor, coeffs: out }
    }

    /// Product with a rational scalar.
    pub fn scale(&self, r: &QQ) -> Self {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo Φ_E.
    ///
    /// Panics if the value is zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "cannot invert zero");
        if let Some(r) = self.to_rational() {
            return CycScalar {
                conductor: self.conductor,
                coeffs: {
                    let mut v = vec![QQ::zero(); self.coeffs.len()];
                    v[0] = r.recip();
                    v
                },
            };
        }
        let conductor = self.conductor;
        let phi_poly: Vec<QQ> = cyclotomic_poly(conductor)
            .into_iter()
            .map(QQ::from)
            .collect();

        fn deg(p: &[QQ]) -> Option<usize> {
            p.iter().rposition(|c| !c.is_zero())
        }
        fn poly_rem_quot(num: &[QQ], den: &[QQ]) -> (Vec<QQ>, Vec<QQ>) {
            let dd = deg(den).expect("division by zero polynomial");
            let lead = den[dd].clone();
            let mut rem = num.to_vec();
            let mut quot = vec![QQ::zero(); num.len()];
            while let Some(dr) = deg(&rem) {
                if dr < dd {
                    break;
                }
                let c = &rem[dr] / &lead;
                let shift = dr - dd;
                for (j, dj) in den.iter().enumerate().take(dd + 1) {
                    rem[shift + j] -= &c * dj;
                }
                quot[shift] = c;
            }
            (quot, rem)
        }

        // Invariant: r0 = s0·self + t0·Φ, r1 = s1·self + t1·Φ (t dropped).
        let width = phi_poly.len();
        let mut r0: Vec<QQ> = {
            let mut v = vec![QQ::zero(); width];
            v[..self.coeffs.len()].clone_from_slice(&self.coeffs);
            v
        };
        let mut r1 = phi_poly;
        let mut s0 = vec![QQ::zero(); width];
        s0[0] = QQ::one();
        let mut s1 = vec![QQ::zero(); width];
        while deg(&r1).is_some() {
            let (q, rem) = poly_rem_quot(&r0, &r1);
            // s_next = s0 − q·s1, truncated to the working width.
            let mut s_next = s0.clone();
            for (i, qi) in q.iter().enumerate() {
                if qi.is_zero() {
                    continue;
                }
                for (j, sj) in s1.iter().enumerate() {
                    if i + j < width && !sj.is_zero() {
                        let prod = qi * sj;
                        s_next[i + j] -= prod;
                    }
                }
            }
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        let d = deg(&r0).expect("gcd degenerated to zero");
        assert!(d == 0, "element not invertible mod cyclotomic polynomial");
        let scale = r0[0].recip();
        let phi = self.coeffs.len();
        let mut coeffs = vec![QQ::zero(); phi];
        for (i, c) in s0.iter().enumerate().take(phi) {
            coeffs[i] = c * &scale;
        }
        // Entries of s0 beyond φ−1 cannot occur for a reduced operand.
        assert!(
            s0[phi..].iter().all(Zero::is_zero),
            "inverse escaped the power basis"
        );
        let out = CycScalar { conductor, coeffs };
        debug_assert!(out.mul(self).to_rational().map(|r| r.is_one()) == Some(true));
        out
    }

    /// Floating-point evaluation (re, im) for sanity comparisons only; all
    /// logic uses the exact representation.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = rational_to_f64(c);
            let angle = TAU * (k as f64) / (self.conductor as f64);
            re += x * angle.cos();
            im += x * angle.sin();
        }
        (re, im)
    }
}

/// Lossy conversion used only by [`CycScalar::approx`] and display
/// annotations.
pub(crate) fn rational_to_f64(r: &QQ) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Scale down in tandem to stay in f64 range for the magnitudes we meet.
    let nf = bigint_to_f64(num);
    let df = bigint_to_f64(den);
    nf / df
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    let s = b.to_string();
    s.parse::<f64>().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.promoted_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "({})*z{}^{}", c, self.conductor, k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
