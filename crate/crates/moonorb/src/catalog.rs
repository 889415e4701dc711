//! Catalog of the 38 non-Fricke, non-anomalous monster classes.
//!
//! Each record pairs a conjugacy class of the monster (ATLAS-style name)
//! with the balanced eta quotient of its McKay–Thompson series at the cusp
//! 0, the root-multiplicity column of the associated norm-zero vector of
//! II₁,₂₅, and cross-references into the GAP and ATLAS character-table
//! libraries.  The table itself is embedded as plain text so it can be
//! audited line by line; a checksum guards against silent corruption.

use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::frame::{FrameShape, TuiteReport};
use crate::scalar::{divisors, euler_phi, gcd_u64};

/// One catalog row: a monster class together with its eta quotient and the
/// root data of the corresponding norm-zero vector.
///
/// `roots` lists, for each divisor `d` of the class order in increasing
/// order, the pair `(multiplicity, count)`: the multiplicity of the simple
/// roots in the `d`-th batch and the number `φ(n/d)` of such roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    /// Class name, e.g. `"2B"` or `"46AB"`.
    pub name: String,
    /// Order of the class, the integer prefix of `name`.
    pub order: u64,
    /// Eta quotient of the McKay–Thompson series at the cusp 0.
    pub eta: EtaQuotient,
    /// `(multiplicity, count)` pairs, one per divisor of `order`, ascending.
    pub roots: Vec<(i64, u64)>,
    /// Class name in the GAP character-table library.
    pub gap: String,
    /// Class name in the ATLAS of finite groups.
    pub atlas: String,
    /// Whether the class is Fricke; always `false` for catalog rows.
    pub fricke: bool,
    /// Whether the class carries a modular anomaly; always `false` for
    /// catalog rows.
    pub anomalous: bool,
}

/// Outcome of recomputing one row's root column from its eta quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    /// Whether the recomputed column equals the stored one.
    pub pass: bool,
    /// `(Σ_{k|d} b_k, φ(n/d))` per divisor `d` of the order, ascending.
    pub computed: Vec<(i64, u64)>,
    /// The stored column.
    pub stored: Vec<(i64, u64)>,
}

/// One line of the duality report: the dual frame shape of a catalog row
/// and its viability conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityRow {
    /// Class name of the row.
    pub class_name: String,
    /// Dual frame shape, in product notation.
    pub dual_frame: String,
    /// Fixed-point, massless-state, and anomaly conditions of the dual.
    pub tuite: TuiteReport,
    /// Whether the dual frame's order equals the class order.
    pub order_matches: bool,
    /// GAP cross-reference, copied from the row.
    pub gap: String,
    /// ATLAS cross-reference, copied from the row.
    pub atlas: String,
}

impl DualityRow {
    /// All three viability conditions hold and the orders agree.
    pub fn pass(&self) -> bool {
        self.tuite.fixed_point_free
            && self.tuite.no_massless
            && self.tuite.anomaly_free
            && self.order_matches
    }
}

/// The embedded table: `NAME | ETA | ROOTS | GAP | ATLAS`, one row per
/// line, sorted by class name (numeric order, then letters).  ROOTS holds
/// `multiplicity^count` pairs, one per divisor of the order, ascending.
const CATALOG_TEXT: &str = "\
2B | 1^24/2^24 | 24^1, 0^1 | 2a | 1A_1
3B | 1^12/3^12 | 12^2, 0^1 | 3a | 3A_0
4C | 1^8/4^8 | 8^2, 8^1, 0^1 | 4c | 4A_1
5B | 1^6/5^6 | 6^4, 0^1 | 5a | 5A_0
6C | 1^6 3^6/2^6 6^6 | 6^2, 0^2, 12^1, 0^1 | 6b | 3B_1
6D | 1^4 2^4/3^4 6^4 | 4^2, 8^2, 0^1, 0^1 | 6e | 6A_0
6E | 1^5 3/2 6^5 | 5^2, 4^2, 6^1, 0^1 | 6j | 6D_1
7B | 1^4/7^4 | 4^6, 0^1 | 7a | 7A_0
8E | 1^4 4^2/2^2 8^4 | 4^4, 2^2, 4^1, 0^1 | 8e | 8C_1
9B | 1^3/9^3 | 3^6, 3^2, 0^1 | 9a | 9A_0
10B | 1^4 5^4/2^4 10^4 | 4^4, 0^4, 8^1, 0^1 | 10b | 5B_1
10C | 1^2 2^2/5^2 10^2 | 2^4, 4^4, 0^1, 0^1 | 10d | 10A_0
10E | 1^3 5/2 10^3 | 3^4, 2^4, 4^1, 0^1 | 10i | 10E_1
12B | 1^4 4^4 6^4/2^4 3^4 12^4 | 4^4, 0^2, 0^2, 4^2, 0^1, 0^1 | 12c | 12A_0
12E | 1^2 3^2/4^2 12^2 | 2^4, 2^2, 4^2, 0^2, 4^1, 0^1 | 12j | 12E_1
12I | 1^3 4 6^2/2^2 3 12^3 | 3^4, 1^2, 2^2, 2^2, 2^1, 0^1 | 12r | 12K_1
13B | 1^2/13^2 | 2^12, 0^1 | 13a | 13A_0
14B | 1^3 7^3/2^3 14^3 | 3^6, 0^6, 6^1, 0^1 | 14b | 7B_1
15B | 1^2 5^2/3^2 15^2 | 2^8, 0^4, 4^2, 0^1 | 15b | 15B_0
16B | 1^2 8/2 16^2 | 2^8, 1^4, 1^2, 2^1, 0^1 | 16c | 16B_1
18A | 1 2/9 18 | 1^6, 2^6, 1^2, 2^2, 0^1, 0^1 | 18d | 18A_0
18C | 1^3 6^2 9^3/2^3 3^2 18^3 | 3^6, 0^6, 1^2, 0^2, 4^1, 0^1 | 18c | 9C_1
18D | 1^2 6 9/2 3 18^2 | 2^6, 1^6, 1^2, 1^2, 2^1, 0^1 | 18g | 18B_1
20C | 1^2 4^2 10^2/2^2 5^2 20^2 | 2^8, 0^4, 2^4, 0^2, 0^1, 0^1 | 20c | 20A_0
21B | 1 3/7 21 | 1^12, 2^6, 0^2, 0^1 | 21b | 21B_0
22B | 1^2 11^2/2^2 22^2 | 2^10, 0^10, 4^1, 0^1 | 22a | 11A_1
24C | 1^2 6 8^2 12/2 3^2 4 24^2 | 2^8, 1^4, 0^4, 0^2, 0^2, 2^2, 0^1, 0^1 | 24d | 24B_0
28C | 1 7/4 28 | 1^12, 1^6, 0^6, 2^2, 2^1, 0^1 | 28c | 28A_1
30A | 1^3 6^3 10^3 15^3/2^3 3^3 5^3 30^3 | 3^8, 0^8, 0^4, 0^2, 0^4, 0^2, 0^1, 0^1 | 30a | 15A_1
30C | 1 3 5 15/2 6 10 30 | 1^8, 0^8, 2^4, 2^2, 0^4, 0^2, 4^1, 0^1 | 30d | 15D_1
30G | 1^2 6 10 15^2/2^2 3 5 30^2 | 2^8, 0^8, 1^4, 1^2, 0^4, 0^2, 2^1, 0^1 | 30e | 15E_1
33A | 1 11/3 33 | 1^20, 0^10, 2^2, 0^1 | 33a | 33A_0
36B | 1 4 18/2 9 36 | 1^12, 0^6, 1^4, 1^6, 0^2, 0^2, 1^2, 0^1, 0^1 | 36a | 36A_0
42B | 1^2 6^2 14^2 21^2/2^2 3^2 7^2 42^2 | 2^12, 0^12, 0^6, 0^6, 0^2, 0^2, 0^1, 0^1 | 42a | 21A_1
46AB | 1 23/2 46 | 1^22, 0^22, 2^1, 0^1 | 46ab | 23A_1B_1
60D | 1 12 15 20/3 4 5 60 | 1^16, 1^8, 0^8, 0^8, 0^4, 0^4, 0^2, 0^4, 0^2, 0^2, 0^1, 0^1 | 60d | 60A_1
70B | 1 10 14 35/2 5 7 70 | 1^24, 0^24, 0^6, 0^4, 0^6, 0^4, 0^1, 0^1 | 70a | 35A_1
78BC | 1 6 26 39/2 3 13 78 | 1^24, 0^24, 0^12, 0^12, 0^2, 0^2, 0^1, 0^1 | 78ab | 39A_1B_1
";

/// FNV-1a fingerprint of [`CATALOG_TEXT`], fixed when the table was frozen.
const CATALOG_CHECKSUM: u64 = 0x6c91fd85d1816f92;

/// Number of rows in the embedded table.
pub const CATALOG_LEN: usize = 38;

fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Loads the embedded catalog, verifying its checksum and row count.
pub fn load_catalog() -> Result<Vec<ClassRecord>> {
    if fnv1a(CATALOG_TEXT) != CATALOG_CHECKSUM {
        return Err(Error::CorruptCatalog(
            "embedded table fails its checksum".into(),
        ));
    }
    let records = load_catalog_from_str(CATALOG_TEXT)?;
    if records.len() != CATALOG_LEN {
        return Err(Error::CorruptCatalog(format!(
            "expected {} rows, found {}",
            CATALOG_LEN,
            records.len()
        )));
    }
    Ok(records)
}

/// Parses catalog rows from text in the embedded format, one
/// `NAME | ETA | ROOTS | GAP | ATLAS` row per line.  Blank lines and lines
/// starting with `#` are skipped, so user-supplied tables can carry
/// comments.  No checksum or row-count requirement is imposed.
pub fn load_catalog_from_str(text: &str) -> Result<Vec<ClassRecord>> {
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        records.push(
            parse_row(line).map_err(|e| Error::Parse(format!("row {}: {}", idx + 1, e)))?,
        );
    }
    Ok(records)
}

/// Parses and cross-validates a single `NAME | ETA | ROOTS | GAP | ATLAS`
/// row.  The root column must have one entry per divisor of the order, and
/// the count of the entry at divisor `d` must equal `φ(n/d)`; a count that
/// matches some other divisor's φ would indicate a reordered column, which
/// is reported as an error rather than silently permuted.
fn parse_row(line: &str) -> std::result::Result<ClassRecord, String> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if fields.len() != 5 {
        return Err(format!("expected 5 '|'-separated fields, found {}", fields.len()));
    }
    let name = fields[0].to_string();
    let digits: String = name.chars().take_while(|c| c.is_ascii_digit()).collect();
    let order: u64 = digits
        .parse()
        .map_err(|_| format!("class name {:?} has no numeric prefix", name))?;
    if order == 0 {
        return Err(format!("class name {:?} has order zero", name));
    }

    let eta = EtaQuotient::parse(fields[1]).map_err(|e| e.to_string())?;
    let levels = eta
        .integer_levels()
        .ok_or_else(|| "eta column has non-integer levels".to_string())?;
    for (k, _) in &levels {
        if order % k != 0 {
            return Err(format!("eta level {} does not divide the order {}", k, order));
        }
    }
    if eta.level() != order {
        return Err(format!(
            "eta level lcm {} differs from the order {}",
            eta.level(),
            order
        ));
    }

    let mut roots = Vec::new();
    for tok in fields[2].split(',') {
        let tok = tok.trim();
        let (v, e) = tok
            .split_once('^')
            .ok_or_else(|| format!("root entry {:?} is not of the form v^e", tok))?;
        let v: i64 = v.parse().map_err(|_| format!("bad multiplicity in {:?}", tok))?;
        let e: u64 = e.parse().map_err(|_| format!("bad count in {:?}", tok))?;
        roots.push((v, e));
    }
    let divs = divisors(order);
    if roots.len() != divs.len() {
        return Err(format!(
            "root column has {} entries but the order {} has {} divisors",
            roots.len(),
            order,
            divs.len()
        ));
    }
    for (d, (_, e)) in divs.iter().zip(&roots) {
        let phi = euler_phi(order / d);
        if *e != phi {
            return Err(format!(
                "root count at divisor {} is {} but φ({}/{}) = {}; \
                 column entries appear out of divisor order",
                d, e, order, d, phi
            ));
        }
    }

    let gap = fields[3].to_string();
    let atlas = fields[4].to_string();
    if gap.is_empty() || atlas.is_empty() {
        return Err("empty GAP or ATLAS field".to_string());
    }

    Ok(ClassRecord {
        name,
        order,
        eta,
        roots,
        gap,
        atlas,
        fricke: false,
        anomalous: false,
    })
}

/// Recomputes a row's root column from its eta quotient: at each divisor
/// `d` of the order, the multiplicity is the divisor sum `Σ_{k|d} b_k` and
/// the count is `φ(n/d)`.
pub fn verify_row(rec: &ClassRecord) -> RowCheck {
    let computed: Vec<(i64, u64)> = divisors(rec.order)
        .into_iter()
        .map(|d| (rec.eta.product_exponent(d), euler_phi(rec.order / d)))
        .collect();
    let stored = rec.roots.clone();
    RowCheck {
        pass: computed == stored,
        computed,
        stored,
    }
}

/// Sums the multiplicities `c_{gcd(j,n)}` over all residues `j` mod `n`
/// (with the `j = 0` slot contributing `c_n`).  The catalog rows all sum
/// to 24, the rank of the Leech lattice.
pub fn dim24_sum(rec: &ClassRecord) -> i64 {
    let n = rec.order;
    (0..n)
        .map(|j| {
            let d = if j == 0 { n } else { gcd_u64(j, n) };
            rec.eta.product_exponent(d)
        })
        .sum()
}

/// Whether [`dim24_sum`] equals 24.
pub fn dim24_check(rec: &ClassRecord) -> bool {
    dim24_sum(rec) == 24
}

/// Builds the duality report for one row: the dual frame shape, its
/// viability conditions, and whether its order matches the class order.
pub fn duality_row(rec: &ClassRecord) -> Result<DualityRow> {
    let frame = FrameShape::dual_frame(&rec.eta);
    let tuite = frame.tuite_conditions()?;
    Ok(DualityRow {
        class_name: rec.name.clone(),
        dual_frame: frame.format_text(),
        tuite: tuite.clone(),
        order_matches: tuite.order == rec.order,
        gap: rec.gap.clone(),
        atlas: rec.atlas.clone(),
    })
}

/// Builds the duality report for a whole catalog, in input order.
pub fn duality_report(records: &[ClassRecord]) -> Result<Vec<DualityRow>> {
    records.iter().map(duality_row).collect()
}
