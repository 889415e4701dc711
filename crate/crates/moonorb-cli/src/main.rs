//! Command-line surface for the moonorb toolkit: series expansion and
//! frame-condition queries, catalog listings, the verification suites, the
//! non-negative uniqueness search, and index audits.
//!
//! All mathematical payloads are exact rationals; `--float` adds decimal
//! approximations as annotations only.  Exit code 0 means every requested
//! check passed, 1 means a check failed (the first failing item is named
//! on stderr), 2 means the request itself was malformed.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use moonorb::borcherds::{
    denominator_2b_check, knz_check, nonfricke_degenerate_check, nonneg_uniqueness_search,
    switched_denominator_check, twisted_denominator_h1, IdentityReport,
};
use moonorb::catalog::{
    dim24_check, duality_row, load_catalog, load_catalog_from_str, verify_row, ClassRecord,
};
use moonorb::eta::EtaQuotient;
use moonorb::frame::FrameShape;
use moonorb::hecke::{build_2b_table, hecke_monic_check};
use moonorb::orbifold::unroll_audit;
use moonorb::scalar::{qq, qq_int, CycScalar, QQ};
use moonorb::PuiseuxSeries;

#[derive(Parser)]
#[command(name = "moonorb", version, about = "Exact-arithmetic toolkit for eta quotients, frame shapes, and denominator identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an eta quotient as an exact q-series.
    Expand(ExpandArgs),
    /// Evaluate the viability conditions of a frame shape.
    Conditions(ConditionsArgs),
    /// List catalog rows.
    Table(TableArgs),
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Search for non-negative eta quotients matching a catalog row.
    Search(SearchArgs),
    /// Audit the unrolled index maps for one order.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ExpandArgs {
    /// Eta quotient in product notation, e.g. "1^24/2^24".
    #[arg(long)]
    eta: String,
    /// Largest q-exponent of the listing (inclusive).
    #[arg(long, default_value_t = 5)]
    order: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Annotate exact values with decimal approximations.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct ConditionsArgs {
    /// Frame shape in product notation, e.g. "2^24/1^24".
    #[arg(long)]
    frame: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Annotate exact values with decimal approximations.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct TableArgs {
    /// List every row.
    #[arg(long)]
    all: bool,
    /// List a single class.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    target: VerifyTarget,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Recompute root columns, multiplicity sums, and constant terms.
    Table(VerifyRowsArgs),
    /// Two-variable J identity on a bidegree box.
    Knz(KnzArgs),
    /// Order-2 denominator identity, with optional variants.
    Denom(DenomArgs),
    /// q → 0 degeneration of catalog rows.
    Degenerate(DegenerateArgs),
    /// Dual frame viability of catalog rows.
    Duality(VerifyRowsArgs),
    /// Hecke-monicity of one pair-table entry.
    Hecke(HeckeArgs),
}

#[derive(Args)]
struct VerifyRowsArgs {
    /// Check every row.
    #[arg(long)]
    all: bool,
    /// Check a single class.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct KnzArgs {
    /// Inclusive comparison box, e.g. "6,6".
    #[arg(long, default_value = "6,6")]
    bidegree: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DenomArgs {
    /// Class whose denominator identity to check (only 2B has a table).
    #[arg(long)]
    class: String,
    /// Inclusive comparison box, e.g. "4,4".
    #[arg(long, default_value = "4,4")]
    bidegree: String,
    /// Also check the variable-switched form.
    #[arg(long)]
    switched: bool,
    /// Also check the twisted form at trivial twist.
    #[arg(long)]
    twisted: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DegenerateArgs {
    /// Check every row.
    #[arg(long)]
    all: bool,
    /// Check a single class.
    #[arg(long)]
    class: Option<String>,
    /// Inclusive p-bound of the comparison.
    #[arg(long, default_value_t = 6)]
    order: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct HeckeArgs {
    /// Class whose pair table to use (only 2B has a table).
    #[arg(long, default_value = "2B")]
    class: String,
    /// Table entry, e.g. "g^1.h^1".
    #[arg(long)]
    pair: String,
    /// Hecke index n.
    #[arg(long)]
    order: u64,
    /// Exponent below which the residual must vanish.
    #[arg(long, default_value_t = 4)]
    bound: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    /// Catalog class whose eta quotient is the search target.
    #[arg(long)]
    class: String,
    /// Exponent bound of the scan.
    #[arg(long, default_value_t = 30)]
    bound: i64,
    /// Matching order: expansions compared through q^order.
    #[arg(long, default_value_t = 10)]
    order: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    /// Group order n.
    #[arg(long)]
    order: u64,
    /// Single anomaly residue t; all residues mod n when omitted.
    #[arg(long)]
    anomaly: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// The two nonzero exit paths: a malformed request (exit 2) or a check
/// that ran and failed (exit 1, first failing item named).
enum Failure {
    Parse(String),
    Check(String),
}

type RunResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(item)) => {
            eprintln!("FAIL: {}", item);
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> RunResult {
    match command {
        Command::Expand(a) => cmd_expand(a),
        Command::Conditions(a) => cmd_conditions(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => match a.target {
            VerifyTarget::Table(v) => cmd_verify_table(v),
            VerifyTarget::Knz(v) => cmd_verify_knz(v),
            VerifyTarget::Denom(v) => cmd_verify_denom(v),
            VerifyTarget::Degenerate(v) => cmd_verify_degenerate(v),
            VerifyTarget::Duality(v) => cmd_verify_duality(v),
            VerifyTarget::Hecke(v) => cmd_verify_hecke(v),
        },
        Command::Search(a) => cmd_search(a),
        Command::Audit(a) => cmd_audit(a),
    }
}

/// Loads the embedded catalog, or the file named by MOONORB_CATALOG.
fn catalog() -> Result<Vec<ClassRecord>, Failure> {
    match std::env::var_os("MOONORB_CATALOG") {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Failure::Parse(format!("cannot read catalog override {:?}: {}", path, e))
            })?;
            load_catalog_from_str(&text)
                .map_err(|e| Failure::Parse(format!("catalog override: {}", e)))
        }
        None => load_catalog().map_err(|e| Failure::Parse(e.to_string())),
    }
}

/// Applies the --all/--class selector, rejecting unknown names before any
/// computation.
fn select<'a>(
    rows: &'a [ClassRecord],
    all: bool,
    class: &Option<String>,
) -> Result<Vec<&'a ClassRecord>, Failure> {
    match (all, class) {
        (true, None) => Ok(rows.iter().collect()),
        (false, Some(name)) => {
            let rec = rows
                .iter()
                .find(|r| &r.name == name)
                .ok_or_else(|| Failure::Parse(format!("unknown class {:?}", name)))?;
            Ok(vec![rec])
        }
        _ => Err(Failure::Parse(
            "select rows with either --all or --class NAME".into(),
        )),
    }
}

fn parse_bidegree(s: &str) -> Result<(i64, i64), Failure> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| Failure::Parse(format!("bidegree {:?} is not of the form P,Q", s)))?;
    let p: i64 = p
        .trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("bad p-bound in {:?}", s)))?;
    let q: i64 = q
        .trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("bad q-bound in {:?}", s)))?;
    if p < 0 || q < 0 {
        return Err(Failure::Parse("bidegree bounds must be nonnegative".into()));
    }
    Ok((p, q))
}

/// Parses "g^i.h^j" into the (twist, insertion) pair of a rank-2 table.
fn parse_pair(s: &str) -> Result<((u64, u64), (u64, u64)), Failure> {
    let err = || Failure::Parse(format!("pair {:?} is not of the form g^i.h^j", s));
    let (g, h) = s.split_once('.').ok_or_else(err)?;
    let i: u64 = g.strip_prefix("g^").ok_or_else(err)?.parse().map_err(|_| err())?;
    let j: u64 = h.strip_prefix("h^").ok_or_else(err)?.parse().map_err(|_| err())?;
    Ok(((i, 0), (0, j)))
}

fn format_rational(r: &QQ) -> String {
    r.to_string()
}

fn format_scalar(c: &CycScalar) -> String {
    c.to_string()
}

/// "(~x)" annotation for --float, or nothing.
fn float_note(r: &QQ, float: bool) -> String {
    if float {
        format!(" (~{})", r.to_f64().unwrap_or(f64::NAN))
    } else {
        String::new()
    }
}

fn print_json(v: &Value) {
    println!("{}", v);
}

fn cmd_expand(a: ExpandArgs) -> RunResult {
    let eq = EtaQuotient::parse(&a.eta).map_err(|e| Failure::Parse(e.to_string()))?;
    let h = eq.leading_exponent();
    let bound = qq_int(a.order + 1);
    if bound <= h {
        return Err(Failure::Parse(format!(
            "order {} lies below the leading exponent {}",
            a.order,
            format_rational(&h)
        )));
    }
    let s = eq.expand(&bound);
    let d = s.denom() as i64;
    let lo = s.min_scaled().unwrap_or(0);
    let coeffs: Vec<(QQ, QQ)> = (lo..s.trunc_scaled())
        .map(|k| {
            let e = qq(k, d);
            let c = s
                .coeff_scaled(k)
                .to_rational()
                .expect("eta expansions have rational coefficients");
            (e, c)
        })
        .collect();
    match a.format {
        Format::Text => {
            let mut tokens = Vec::with_capacity(coeffs.len());
            for (idx, (e, c)) in coeffs.iter().enumerate() {
                let tok = if idx == 0 {
                    if c == &QQ::one() {
                        format!("q^{}", format_rational(e))
                    } else {
                        format!("{} q^{}", format_rational(c), format_rational(e))
                    }
                } else {
                    format_rational(c)
                };
                tokens.push(format!("{}{}", tok, float_note(c, a.float)));
            }
            println!("{}", tokens.join(", "));
        }
        Format::Json => {
            let terms: Vec<Value> = coeffs
                .iter()
                .map(|(e, c)| {
                    let mut obj = json!({
                        "exponent": format_rational(e),
                        "coefficient": format_rational(c),
                    });
                    if a.float {
                        obj["approx"] = json!(c.to_f64().unwrap_or(f64::NAN));
                    }
                    obj
                })
                .collect();
            print_json(&json!({
                "eta": eq.format_text(),
                "leading_exponent": format_rational(&h),
                "terms": terms,
            }));
        }
        Format::Csv => {
            println!("exponent,coefficient");
            for (e, c) in &coeffs {
                println!("{},{}", format_rational(e), format_rational(c));
            }
        }
    }
    Ok(())
}

fn cmd_conditions(a: ConditionsArgs) -> RunResult {
    let frame = FrameShape::parse(&a.frame).map_err(|e| Failure::Parse(e.to_string()))?;
    let report = frame
        .tuite_conditions()
        .map_err(|e| Failure::Check(format!("conditions {}: {}", frame.format_text(), e)))?;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    match a.format {
        Format::Text => {
            println!("frame: {}", frame.format_text());
            println!("fixed-point-free: {}", yes_no(report.fixed_point_free));
            println!(
                "E0 = {}{}",
                format_rational(&report.vacuum_energy),
                float_note(&report.vacuum_energy, a.float)
            );
            println!("no-massless: {}", yes_no(report.no_massless));
            println!("anomaly: {}", report.anomaly);
            println!("anomaly-free: {}", yes_no(report.anomaly_free));
            println!("order: {}", report.order);
            println!("unrolled-modulus: {}", report.unrolled_modulus);
        }
        Format::Json => {
            let mut obj = json!({
                "frame": frame.format_text(),
                "fixed_point_free": report.fixed_point_free,
                "vacuum_energy": format_rational(&report.vacuum_energy),
                "no_massless": report.no_massless,
                "anomaly": report.anomaly,
                "anomaly_free": report.anomaly_free,
                "order": report.order,
                "unrolled_modulus": report.unrolled_modulus,
            });
            if a.float {
                obj["vacuum_energy_approx"] =
                    json!(report.vacuum_energy.to_f64().unwrap_or(f64::NAN));
            }
            print_json(&obj);
        }
        Format::Csv => {
            println!("frame,fixed_point_free,vacuum_energy,no_massless,anomaly_free,order");
            println!(
                "{},{},{},{},{},{}",
                frame.format_text(),
                report.fixed_point_free,
                format_rational(&report.vacuum_energy),
                report.no_massless,
                report.anomaly_free,
                report.order
            );
        }
    }
    if report.fixed_point_free && report.no_massless && report.anomaly_free {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "conditions {}",
            frame.format_text()
        )))
    }
}

fn format_roots(rec: &ClassRecord) -> String {
    rec.roots
        .iter()
        .map(|(v, e)| format!("{}^{}", v, e))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_table(a: TableArgs) -> RunResult {
    let rows = catalog()?;
    let picked = select(&rows, a.all, &a.class)?;
    match a.format {
        Format::Text => {
            for rec in &picked {
                println!(
                    "{} | {} | {} | {} | {}",
                    rec.name,
                    rec.eta.format_text(),
                    format_roots(rec),
                    rec.gap,
                    rec.atlas
                );
            }
        }
        Format::Json => {
            let items: Vec<Value> = picked
                .iter()
                .map(|rec| {
                    json!({
                        "name": rec.name,
                        "order": rec.order,
                        "eta": rec.eta.format_text(),
                        "roots": rec.roots.iter().map(|(v, e)| json!([v, e])).collect::<Vec<_>>(),
                        "gap": rec.gap,
                        "atlas": rec.atlas,
                    })
                })
                .collect();
            print_json(&json!(items));
        }
        Format::Csv => {
            println!("name,order,eta,gap,atlas");
            for rec in &picked {
                println!(
                    "{},{},{},{},{}",
                    rec.name,
                    rec.order,
                    rec.eta.format_text(),
                    rec.gap,
                    rec.atlas
                );
            }
        }
    }
    Ok(())
}

/// Prints one PASS/FAIL line per item and turns the first failure into the
/// exit-1 path.
fn emit_pass_fail(format: Format, items: &[(String, bool)], kind: &str) -> RunResult {
    match format {
        Format::Text => {
            for (name, pass) in items {
                println!("{} {}", name, if *pass { "PASS" } else { "FAIL" });
            }
        }
        Format::Json => {
            let arr: Vec<Value> = items
                .iter()
                .map(|(name, pass)| json!({"item": name, "pass": pass}))
                .collect();
            print_json(&json!(arr));
        }
        Format::Csv => {
            println!("item,pass");
            for (name, pass) in items {
                println!("{},{}", name, pass);
            }
        }
    }
    match items.iter().find(|(_, pass)| !pass) {
        Some((name, _)) => Err(Failure::Check(format!("{} {}", kind, name))),
        None => Ok(()),
    }
}

fn cmd_verify_table(a: VerifyRowsArgs) -> RunResult {
    let rows = catalog()?;
    let picked = select(&rows, a.all, &a.class)?;
    let items: Vec<(String, bool)> = picked
        .iter()
        .map(|rec| {
            let pass = verify_row(rec).pass
                && dim24_check(rec)
                && rec.eta.is_nonnegative()
                && rec.eta.mt_constant() == rec.eta.b1();
            (rec.name.clone(), pass)
        })
        .collect();
    emit_pass_fail(a.format, &items, "table row")
}

fn identity_item(name: String, report: &IdentityReport) -> (String, bool) {
    (name, report.pass)
}

fn cmd_verify_knz(a: KnzArgs) -> RunResult {
    let (p, q) = parse_bidegree(&a.bidegree)?;
    let report = knz_check(p, q).map_err(|e| Failure::Parse(e.to_string()))?;
    let items = vec![identity_item(format!("knz ({},{})", p, q), &report)];
    emit_pass_fail(a.format, &items, "identity")
}

fn cmd_verify_denom(a: DenomArgs) -> RunResult {
    if a.class != "2B" {
        return Err(Failure::Parse(format!(
            "no pair table for class {:?}; only 2B is available",
            a.class
        )));
    }
    let (p, q) = parse_bidegree(&a.bidegree)?;
    let mut items = Vec::new();
    let plain = denominator_2b_check(p, q).map_err(|e| Failure::Parse(e.to_string()))?;
    items.push(identity_item(format!("denom 2B ({},{})", p, q), &plain));
    if a.switched {
        let sw = switched_denominator_check(p, q).map_err(|e| Failure::Parse(e.to_string()))?;
        items.push(identity_item(format!("denom-switched 2B ({},{})", p, q), &sw));
    }
    if a.twisted {
        if p % 2 != 0 {
            return Err(Failure::Parse(
                "the twisted variant needs an even p-bound".into(),
            ));
        }
        let tw = twisted_denominator_h1(p, q).map_err(|e| Failure::Parse(e.to_string()))?;
        let pass = tw.identity.pass
            && tw.lhs_matches_swapped
            && tw.rhs_matches_swapped
            && tw.untwisted_pass;
        items.push((format!("denom-twisted 2B ({},{})", p, q), pass));
    }
    emit_pass_fail(a.format, &items, "identity")
}

fn cmd_verify_degenerate(a: DegenerateArgs) -> RunResult {
    let rows = catalog()?;
    let picked = select(&rows, a.all, &a.class)?;
    let mut items = Vec::new();
    for rec in &picked {
        let report = nonfricke_degenerate_check(&rec.eta, a.order)
            .map_err(|e| Failure::Parse(e.to_string()))?;
        items.push((rec.name.clone(), report.pass));
    }
    emit_pass_fail(a.format, &items, "degeneration")
}

fn cmd_verify_duality(a: VerifyRowsArgs) -> RunResult {
    let rows = catalog()?;
    let picked = select(&rows, a.all, &a.class)?;
    let mut items = Vec::new();
    for rec in &picked {
        let pass = duality_row(rec).map(|row| row.pass()).unwrap_or(false);
        items.push((rec.name.clone(), pass));
    }
    emit_pass_fail(a.format, &items, "duality row")
}

/// One term per line of an exact series, for failure reports.
fn format_series(s: &PuiseuxSeries) -> String {
    let d = s.denom() as i64;
    s.terms()
        .map(|(k, c)| format!("{} q^{}", format_scalar(c), format_rational(&qq(k, d))))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_verify_hecke(a: HeckeArgs) -> RunResult {
    if a.class != "2B" {
        return Err(Failure::Parse(format!(
            "no pair table for class {:?}; only 2B is available",
            a.class
        )));
    }
    if a.order == 0 {
        return Err(Failure::Parse("the Hecke index must be positive".into()));
    }
    let pair = parse_pair(&a.pair)?;
    let trunc = qq_int((a.bound + 1) * a.order as i64 + 2);
    let table = build_2b_table(&trunc);
    let report = hecke_monic_check(&table, pair, a.order, &qq_int(a.bound))
        .map_err(|e| Failure::Parse(e.to_string()))?;
    let item = format!("hecke 2B {} n={}", a.pair, a.order);
    match a.format {
        Format::Text => {
            println!("polynomial: {}", report.polynomial);
            if let Some(resid) = &report.residual {
                println!("residual: {}", format_series(resid));
            }
            println!("{} {}", item, if report.pass { "PASS" } else { "FAIL" });
        }
        Format::Json => {
            let coeffs: Vec<String> = report
                .polynomial
                .coeffs()
                .iter()
                .map(format_rational)
                .collect();
            let residual: Value = match &report.residual {
                None => Value::Null,
                Some(s) => {
                    let d = s.denom() as i64;
                    json!(s
                        .terms()
                        .map(|(k, c)| json!([format_rational(&qq(k, d)), format_scalar(c)]))
                        .collect::<Vec<_>>())
                }
            };
            print_json(&json!({
                "item": item,
                "pass": report.pass,
                "polynomial": coeffs,
                "residual": residual,
            }));
        }
        Format::Csv => {
            println!("item,pass");
            println!("{},{}", item, report.pass);
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check(item))
    }
}

fn cmd_search(a: SearchArgs) -> RunResult {
    let rows = catalog()?;
    let rec = rows
        .iter()
        .find(|r| r.name == a.class)
        .ok_or_else(|| Failure::Parse(format!("unknown class {:?}", a.class)))?;
    if a.bound < 0 || a.order < 0 {
        return Err(Failure::Parse("bound and order must be nonnegative".into()));
    }
    let matches = nonneg_uniqueness_search(&rec.eta, a.bound, a.order);
    let unique = matches.len() == 1 && matches[0] == rec.eta;
    match a.format {
        Format::Text => {
            for m in &matches {
                println!("{}", m.format_text());
            }
            println!("unique: {}", if unique { "yes" } else { "no" });
        }
        Format::Json => {
            print_json(&json!({
                "class": a.class,
                "bound": a.bound,
                "order": a.order,
                "matches": matches.iter().map(|m| m.format_text()).collect::<Vec<_>>(),
                "unique": unique,
            }));
        }
        Format::Csv => {
            println!("class,match");
            for m in &matches {
                println!("{},{}", a.class, m.format_text());
            }
        }
    }
    if unique {
        Ok(())
    } else {
        Err(Failure::Check(format!("search {}", a.class)))
    }
}

fn cmd_audit(a: AuditArgs) -> RunResult {
    if a.order == 0 {
        return Err(Failure::Parse("the order must be positive".into()));
    }
    if let Some(t) = a.anomaly {
        if t >= a.order {
            return Err(Failure::Parse(format!(
                "anomaly {} is not a residue mod {}",
                t, a.order
            )));
        }
    }
    let residues: Vec<u64> = match a.anomaly {
        Some(t) => vec![t],
        None => (0..a.order).collect(),
    };
    let audits: Vec<_> = residues.iter().map(|&t| unroll_audit(a.order, t)).collect();
    match a.format {
        Format::Text => {
            for audit in &audits {
                println!(
                    "t={} N={} subgroup={} {}",
                    audit.data.t,
                    audit.data.modulus,
                    audit.subgroup_order,
                    if audit.pass() { "PASS" } else { "FAIL" }
                );
            }
        }
        Format::Json => {
            let v = serde_json::to_value(&audits)
                .expect("audit reports serialize");
            print_json(&v);
        }
        Format::Csv => {
            println!("n,t,modulus,subgroup_order,pass");
            for audit in &audits {
                println!(
                    "{},{},{},{},{}",
                    audit.data.n,
                    audit.data.t,
                    audit.data.modulus,
                    audit.subgroup_order,
                    audit.pass()
                );
            }
        }
    }
    match audits.iter().find(|audit| !audit.pass()) {
        Some(audit) => Err(Failure::Check(format!(
            "audit n={} t={}",
            audit.data.n, audit.data.t
        ))),
        None => Ok(()),
    }
}
