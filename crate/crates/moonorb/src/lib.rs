//! # moonorb: exact arithmetic for moonshine orbifold dualities
//!
//! This crate implements the computational substrate of the duality between
//! non-Fricke McKay-Thompson series of the Monster and fixed-point free
//! automorphisms of the Leech lattice, entirely in exact arithmetic:
//! rationals extended by roots of unity, truncated Puiseux series, and finite
//! quadratic modules. No floating-point number ever enters a result (a `--float`
//! style decimal is available as an annotation only).
//!
//! ## What lives where
//!
//! - [`scalar`]: exact coefficient arithmetic — [`scalar::CycScalar`] for
//!   cyclotomic rationals in the power basis of a root of unity, and
//!   [`scalar::ExactRadical`] for values of the form r·√s.
//! - [`series`]: sparse truncated series — [`series::PuiseuxSeries`] in one
//!   variable q with fractional exponents, and [`series::BiSeries`] in two
//!   variables (p, q) for denominator identities.
//! - [`eta`]: Dedekind eta quotients ∏ η(kτ)^{b_k}: q-expansion, product
//!   exponents c_j = Σ_{k|j} b_k, non-negativity, the S-transform η(−1/τ)
//!   assembled for balanced quotients, and the constant-term normalization κ.
//! - [`frame`]: frame shapes ∏ k^{a_k} of Leech-lattice automorphisms,
//!   Tuite's three conditions (fixed-point free, no massless states,
//!   anomaly-free), characteristic polynomials, and the duality b_k = −a_k
//!   with eta quotients.
//! - [`orbifold`]: the index arithmetic of cyclic orbifolds — the add-with-carry
//!   2-cocycle, discriminant forms of even Gram matrices via Smith normal form,
//!   anomaly-free powers, unrolling index maps into (Z/N)², and the
//!   coordinate-switch symmetry of q(a,b) = ab/N.
//! - [`hecke`]: equivariant Hecke operators T_n on pair-indexed q-series
//!   tables, Faber polynomials Φ_n, the Hecke-monicity check
//!   n·T_n f = Φ_n(f), and the modular function J = E₄³/Δ − 744.
//! - [`borcherds`]: two-variable Borcherds products p^{−1}∏(1−p^i q^j)^{c(i,j)}
//!   and the identity checks: Koike–Norton–Zagier, the 2B denominator identity
//!   with half-integer exponents, its variable-switched and h = 1 twisted
//!   variants, the q→0 degeneration, and the exhaustive search certifying the
//!   uniqueness of non-negative eta product expansions.
//! - [`catalog`]: the embedded 38-row table of non-Fricke, non-anomalous
//!   Monster classes with their eta products, norm-zero root multiplicities,
//!   and GAP/ATLAS names, plus the row-level reproduction checks.
//!
//! ## Design principles
//!
//! - **Exact arithmetic only.** Every coefficient is a `BigRational` or a
//!   cyclotomic vector of them. Equality of results is literal equality.
//! - **Truncation is part of the value.** A series carries its own truncation
//!   bound; binary operations propagate bounds pessimistically, so a stored
//!   coefficient is always correct.
//! - **Immutable values, pure functions.** Nothing here has interior
//!   mutability beyond a global cache of cyclotomic polynomial contexts; all
//!   operations are safe to run in parallel over independent inputs.
//! - **Checks return evidence.** Identity checks yield a report with the first
//!   failing position and residual data, never a bare boolean.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod borcherds;
pub mod catalog;
pub mod error;
pub mod eta;
pub mod frame;
pub mod hecke;
pub mod orbifold;
pub mod scalar;
pub mod series;

pub use error::Error;
pub use scalar::{CycScalar, ExactRadical, QQ};
pub use series::{BiSeries, PuiseuxSeries};
