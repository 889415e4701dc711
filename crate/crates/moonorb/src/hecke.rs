//! Equivariant Hecke operators on pair-indexed tables of q-series, Faber
//! polynomials, and the Hecke-monicity check.
//!
//! A [`PairFunctionTable`] assigns a series f(g, h; τ) to pairs of elements
//! of (Z/M)².  The degree-n equivariant Hecke operator averages over index-n
//! sublattices,
//! T_n f(g, h; τ) = (1/n)·Σ_{ad=n, 0≤b<d} f(g^d, g^{−b}h^a; (aτ+b)/d),
//! with the inner modular substitution realized exactly by
//! [`PuiseuxSeries::substitute`].  A table entry is Hecke-monic when
//! n·T_n f(g,h) is a monic degree-n polynomial in f(g,h);
//! [`hecke_monic_check`] decides this by exact linear algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::scalar::{divisors, lcm_u64, qq, qq_int, CycScalar, QQ};
use crate::series::PuiseuxSeries;

/// An element of (Z/M)², written additively.
pub type GroupElement = (u64, u64);

/// A table of q-series indexed by commuting pairs in (Z/M)².
#[derive(Clone, Debug)]
pub struct PairFunctionTable {
    modulus: u64,
    entries: BTreeMap<(GroupElement, GroupElement), PuiseuxSeries>,
}

impl PairFunctionTable {
    /// An empty table over (Z/M)².
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1);
        PairFunctionTable {
            modulus,
            entries: BTreeMap::new(),
        }
    }

    /// The table for the trivial group, holding a single series.
    pub fn trivial(f: PuiseuxSeries) -> Self {
        let mut t = PairFunctionTable::new(1);
        t.insert(((0, 0), (0, 0)), f);
        t
    }

    /// The modulus M.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Stores an entry (coordinates are reduced mod M).
    pub fn insert(&mut self, pair: (GroupElement, GroupElement), series: PuiseuxSeries) {
        let key = (self.reduce(pair.0), self.reduce(pair.1));
        self.entries.insert(key, series);
    }

    /// Looks up an entry; a miss is an [`Error::MissingTableEntry`].
    pub fn get(&self, pair: (GroupElement, GroupElement)) -> Result<&PuiseuxSeries> {
        let key = (self.reduce(pair.0), self.reduce(pair.1));
        self.entries.get(&key).ok_or(Error::MissingTableEntry {
            twist: key.0,
            insertion: key.1,
        })
    }

    fn reduce(&self, x: GroupElement) -> GroupElement {
        (x.0 % self.modulus, x.1 % self.modulus)
    }

    /// s·x in (Z/M)².
    fn scale(&self, x: GroupElement, s: i64) -> GroupElement {
        let m = self.modulus as i64;
        (
            ((x.0 as i64 * s).rem_euclid(m)) as u64,
            ((x.1 as i64 * s).rem_euclid(m)) as u64,
        )
    }

    fn combine(&self, x: GroupElement, cx: i64, y: GroupElement, cy: i64) -> GroupElement {
        let a = self.scale(x, cx);
        let b = self.scale(y, cy);
        ((a.0 + b.0) % self.modulus, (a.1 + b.1) % self.modulus)
    }

    /// T_n f(g, h; τ) = (1/n)·Σ_{ad=n, 0≤b<d} f(g^d, g^{−b}h^a; (aτ+b)/d).
    ///
    /// The result is known below trunc(entry)/n in the worst case (the
    /// a = 1, d = n summand); size entries accordingly.
    pub fn equivariant_hecke(
        &self,
        pair: (GroupElement, GroupElement),
        n: u64,
    ) -> Result<PuiseuxSeries> {
        assert!(n >= 1);
        let (g, h) = pair;
        let mut acc: Option<PuiseuxSeries> = None;
        for a in divisors(n) {
            let d = n / a;
            let twist = self.scale(g, d as i64);
            for b in 0..d {
                let insertion = self.combine(g, -(b as i64), h, a as i64);
                let entry = self.get((twist, insertion))?;
                let term = entry.substitute(a, b as i64, d);
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term),
                });
            }
        }
        Ok(acc
            .expect("n >= 1 yields at least one summand")
            .scale_rational(&(QQ::one() / qq_int(n as i64))))
    }
}

/// Klein J-function J = E₄³/Δ − 744 = q^{−1} + 196884q + …, exact to the
/// requested truncation (integer grid, zero constant term).
pub fn j_series(trunc: i64) -> PuiseuxSeries {
    let work = trunc + 3;
    // E₄ = 1 + 240·Σ σ₃(m) q^m by divisor-power sieve.
    let mut sigma3 = vec![0i64; work.max(1) as usize];
    let bound = sigma3.len() as i64;
    for d in 1..bound {
        let cube = d * d * d;
        let mut m = d;
        while m < bound {
            sigma3[m as usize] += cube;
            m += d;
        }
    }
    let mut e4_terms: Vec<(i64, CycScalar)> = vec![(0, CycScalar::one())];
    for (m, s) in sigma3.iter().enumerate().skip(1) {
        e4_terms.push((m as i64, CycScalar::from_rational(qq_int(240 * s))));
    }
    let e4 = PuiseuxSeries::from_scaled_terms(1, e4_terms, work);
    let delta = EtaQuotient::from_levels([(1, 24)]).expand(&qq_int(work));
    let j = e4
        .int_pow(3)
        .expect("positive power")
        .mul(&delta.invert().expect("Δ = q + … is invertible"))
        .add_constant(&CycScalar::from_int(-744));
    j.truncated(trunc)
}

/// Builds the M = 2 pair table for an order-2 twist: entries are functions
/// of the coordinate sums (x₁+x₂, y₁+y₂) mod 2, so all 16 pairs are
/// populated from four base series.
///
/// Base series: (0,0) ↦ J; (0,1) ↦ the constant-free expansion of
/// η(τ)²⁴/η(2τ)²⁴ + 24; (1,0) ↦ 24 + 4096·(the τ ↦ −1/τ image expansion);
/// (1,1) ↦ the (1,0) series with q^{1/2} ↦ −q^{1/2}, phased so the twisted
/// projection (difference of the two) has leading coefficient +4096.
/// `trunc` bounds the knowledge of every entry.
pub fn build_2b_table(trunc: &QQ) -> PairFunctionTable {
    let eta_2b = EtaQuotient::from_levels([(1, 24), (2, -24)]);
    let t_2b = eta_2b
        .expand(trunc)
        .add_constant(&CycScalar::from_int(24));
    debug_assert!(t_2b.coeff(&QQ::zero()).is_zero());

    let (multiplier, image) = eta_2b
        .s_transform()
        .expect("the 2B quotient is balanced");
    let mult = multiplier
        .to_rational()
        .expect("even exponents give a rational multiplier");
    let z_g1 = image
        .expand(trunc)
        .scale_rational(&mult)
        .add_constant(&CycScalar::from_int(24));
    let z_gg = z_g1.substitute(1, 1, 1);

    // Fix the overall phase of the twisted sector: the projection
    // (z_g1 − z_gg)/2 isolates the half-integer exponents and must lead
    // with +4096.
    let twisted = z_g1.sub(&z_gg).scale_rational(&qq(1, 2));
    let (lead_exp, lead) = twisted.leading().expect("twisted sector is nonzero");
    assert_eq!(lead_exp, qq(1, 2));
    assert_eq!(lead.to_rational(), Some(qq_int(4096)));

    let t_int = ceil_scaled_int(trunc);
    let j = j_series(t_int);

    let base = [[j, t_2b], [z_g1, z_gg]];
    let mut table = PairFunctionTable::new(2);
    for x1 in 0..2u64 {
        for x2 in 0..2u64 {
            for y1 in 0..2u64 {
                for y2 in 0..2u64 {
                    let row = ((x1 + x2) % 2) as usize;
                    let col = ((y1 + y2) % 2) as usize;
                    table.insert(((x1, x2), (y1, y2)), base[row][col].clone());
                }
            }
        }
    }
    table
}

fn ceil_scaled_int(t: &QQ) -> i64 {
    i64::try_from(t.ceil().to_integer()).expect("truncation fits in i64")
}

/// A monic polynomial over Q, low-degree coefficients first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaberPolynomial {
    coeffs: Vec<QQ>,
}

impl FaberPolynomial {
    /// Builds from coefficients (low to high); the top one must be 1.
    pub fn from_coeffs(coeffs: Vec<QQ>) -> Self {
        assert!(!coeffs.is_empty());
        assert!(coeffs.last().unwrap().is_one(), "polynomial must be monic");
        FaberPolynomial { coeffs }
    }

    /// Degree n.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients, low degree first.
    pub fn coeffs(&self) -> &[QQ] {
        &self.coeffs
    }

    /// Φ(f) by Horner evaluation in the series ring.
    pub fn evaluate(&self, f: &PuiseuxSeries) -> PuiseuxSeries {
        let n = self.degree();
        let mut acc = PuiseuxSeries::one(f.denom(), f.trunc_scaled())
            .scale_rational(&self.coeffs[n]);
        for k in (0..n).rev() {
            acc = acc.mul(f);
            if !self.coeffs[k].is_zero() {
                acc = acc.add_constant(&CycScalar::from_rational(self.coeffs[k].clone()));
            }
        }
        acc
    }
}

impl std::fmt::Display for FaberPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*x", c)?,
                _ => write!(f, "({})*x^{}", c, k)?,
            }
        }
        Ok(())
    }
}

/// The unique monic degree-n polynomial Φ_n with Φ_n(f) ∈ q^{−n} + O(q),
/// for f = q^{−1} + c₀ + O(q) with rational coefficients on the integer
/// grid.
///
/// Solved by Gaussian elimination: the conditions are the vanishing of the
/// coefficients of q^{−n+1}, …, q⁰ in f^n + Σ_{k<n} a_k f^k.
pub fn faber_polynomial(f: &PuiseuxSeries, n: usize) -> Result<FaberPolynomial> {
    assert!(n >= 1);
    let (lead_exp, lead) = f
        .leading()
        .ok_or_else(|| Error::NonInvertibleLeading("Faber input has no terms".into()))?;
    assert_eq!(lead_exp, -QQ::one(), "Faber input must start at q^-1");
    assert!(lead.to_rational() == Some(QQ::one()), "Faber input must be monic");
    // f^k is known below trunc − (k−1); the constant term of f^n must be
    // readable, so trunc must exceed n − 1.
    if f.trunc() <= qq_int(n as i64 - 1) {
        return Err(Error::InsufficientTruncation(format!(
            "need f known beyond q^{} to build the degree-{} polynomial, have {}",
            n - 1,
            n,
            f.trunc()
        )));
    }
    let powers = series_powers(f, n);
    let read = |s: &PuiseuxSeries, e: i64| -> Result<QQ> {
        let c = s
            .try_coeff(&qq_int(e))
            .ok_or_else(|| Error::InsufficientTruncation(format!("coefficient q^{} unknown", e)))?;
        c.to_rational().ok_or_else(|| {
            Error::NonIntegerCoefficient("Faber solve expects rational coefficients".into())
        })
    };
    // Unknowns a_0 … a_{n−1}; equations index r = 0…n−1 target exponent
    // e_r = −n+1+r.
    let mut rows: Vec<(Vec<QQ>, QQ)> = Vec::with_capacity(n);
    for r in 0..n {
        let e = -(n as i64) + 1 + r as i64;
        let mut row = Vec::with_capacity(n);
        for fk in powers.iter().take(n) {
            row.push(read(fk, e)?);
        }
        let rhs = -read(&powers[n], e)?;
        rows.push((row, rhs));
    }
    let (solution, consistent) = solve_rational(&rows, n);
    assert!(consistent, "the Faber system is triangular and solvable");
    let mut coeffs = solution;
    coeffs.push(QQ::one());
    Ok(FaberPolynomial::from_coeffs(coeffs))
}

/// [1, f, f², …, f^n].
fn series_powers(f: &PuiseuxSeries, n: usize) -> Vec<PuiseuxSeries> {
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(PuiseuxSeries::one(f.denom(), f.trunc_scaled()));
    for _ in 0..n {
        let next = powers.last().unwrap().mul(f);
        powers.push(next);
    }
    powers
}

/// Outcome of a Hecke-monicity test at one (pair, n).
#[derive(Clone, Debug)]
pub struct HeckeMonicReport {
    /// True iff a monic polynomial reproduces n·T_n f exactly to the
    /// compared truncation.
    pub pass: bool,
    /// The candidate polynomial recovered by the linear solve.
    pub polynomial: FaberPolynomial,
    /// n·T_n f − Φ(f) when nonzero below the compared truncation.
    pub residual: Option<PuiseuxSeries>,
}

/// Decides whether n·T_n f(g,h) = Φ(f(g,h)) for some monic degree-n Φ over
/// Q, comparing exactly for all exponents below `t_bound`.
///
/// The candidate Φ is recovered by solving the (overdetermined) linear
/// system over Q obtained by flattening each cyclotomic coefficient
/// equation into rational coordinates; every equation is then re-verified
/// against the candidate, and a failure reports the exact residual series.
pub fn hecke_monic_check(
    table: &PairFunctionTable,
    pair: (GroupElement, GroupElement),
    n: u64,
    t_bound: &QQ,
) -> Result<HeckeMonicReport> {
    let f = table.get(pair)?;
    let target = table.equivariant_hecke(pair, n)?.scale_rational(&qq_int(n as i64));
    let powers = series_powers(f, n as usize);
    // Compared range: everything below t_bound that all participants know.
    let mut bound = target.trunc();
    for p in &powers {
        bound = bound.min(p.trunc());
    }
    bound = bound.min(t_bound.clone());
    if bound <= f.leading().map(|(e, _)| e).unwrap_or_else(QQ::zero) {
        return Err(Error::InsufficientTruncation(format!(
            "comparison window below {} is empty",
            bound
        )));
    }
    let unknowns = n as usize;
    // rhs_series = n·T_n f − f^n; equations: Σ_k a_k·coeff(f^k, e) = coeff(rhs, e).
    let rhs_series = target.sub(&powers[unknowns]);
    // Common grid for coefficient harvesting.
    let mut denom = rhs_series.denom();
    for p in &powers {
        denom = lcm_u64(denom, p.denom());
    }
    let bound_scaled = scaled_bound(&bound, denom);
    let mut exponents: Vec<i64> = Vec::new();
    {
        use std::collections::BTreeSet;
        let mut set = BTreeSet::new();
        let harvest = |s: &PuiseuxSeries, set: &mut BTreeSet<i64>| {
            let scale = (denom / s.denom()) as i64;
            for (k, _) in s.terms() {
                if k * scale < bound_scaled {
                    set.insert(k * scale);
                }
            }
        };
        for p in powers.iter().take(unknowns) {
            harvest(p, &mut set);
        }
        harvest(&rhs_series, &mut set);
        exponents.extend(set);
    }
    // Flatten cyclotomic equations into rational rows.
    let mut rows: Vec<(Vec<QQ>, QQ)> = Vec::new();
    for &e in &exponents {
        let exp = QQ::new(BigInt::from(e), BigInt::from(denom));
        let mut conductor = 1u64;
        let mut lhs_coeffs: Vec<CycScalar> = Vec::with_capacity(unknowns);
        for p in powers.iter().take(unknowns) {
            let c = p.coeff(&exp);
            conductor = lcm_u64(conductor, c.conductor());
            lhs_coeffs.push(c);
        }
        let rhs = rhs_series.coeff(&exp);
        conductor = lcm_u64(conductor, rhs.conductor());
        let width = crate::scalar::euler_phi(conductor) as usize;
        let flat: Vec<Vec<QQ>> = lhs_coeffs
            .iter()
            .map(|c| c.promote(conductor).coeffs().to_vec())
            .collect();
        let rhs_flat = rhs.promote(conductor).coeffs().to_vec();
        for slot in 0..width {
            let row: Vec<QQ> = flat.iter().map(|v| v[slot].clone()).collect();
            rows.push((row, rhs_flat[slot].clone()));
        }
    }
    let (solution, _) = solve_rational(&rows, unknowns);
    let mut coeffs = solution;
    coeffs.push(QQ::one());
    let polynomial = FaberPolynomial::from_coeffs(coeffs);
    // Re-verify as series: residual must vanish below the bound.
    let resid_full = target.sub(&polynomial.evaluate(f));
    let residual = resid_full.truncated(scaled_bound(&bound, resid_full.denom()));
    let pass = residual.is_zero();
    Ok(HeckeMonicReport {
        pass,
        polynomial,
        residual: if pass { None } else { Some(residual) },
    })
}

/// Exact Gaussian elimination for (possibly overdetermined) systems over Q.
/// Returns (solution with free variables set to zero, consistency flag).
pub(crate) fn solve_rational(rows: &[(Vec<QQ>, QQ)], unknowns: usize) -> (Vec<QQ>, bool) {
    let mut mat: Vec<Vec<QQ>> = rows
        .iter()
        .map(|(r, b)| {
            let mut v = r.clone();
            assert_eq!(v.len(), unknowns);
            v.push(b.clone());
            v
        })
        .collect();
    let m = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut rank = 0usize;
    for col in 0..unknowns {
        let Some(p) = (rank..m).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let inv = mat[rank][col].clone().recip();
        for c in col..=unknowns {
            mat[rank][c] = &mat[rank][c] * &inv;
        }
        for r in 0..m {
            if r != rank && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=unknowns {
                    let delta = &f * &mat[rank][c];
                    mat[r][c] -= delta;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let consistent = mat[rank..].iter().all(|r| r[unknowns].is_zero());
    let mut solution = vec![QQ::zero(); unknowns];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = mat[*r][unknowns].clone();
        }
    }
    (solution, consistent)
}

/// Exclusive scaled bound: {k : k < result} = {k : k/denom < t}.
fn scaled_bound(t: &QQ, denom: u64) -> i64 {
    let s = t * qq_int(denom as i64);
    i64::try_from(s.ceil().to_integer()).expect("bound fits in i64")
}
