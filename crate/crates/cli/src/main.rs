//! Command-line frontend: identity verification, orbits, limit sets,
//! Iwasawa decomposition, fixed points, discreteness witnesses and
//! half-space classification. All numeric work happens in the library; this
//! binary only parses documents, dispatches and formats.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use heisgeo::algebra::FieldTag;
use heisgeo::boundary;
use heisgeo::dynamics;
use heisgeo::error::Error;
use heisgeo::heisenberg::NPoint;
use heisgeo::io;
use heisgeo::similarity::{self, HalfspaceKind};
use heisgeo::verify;

#[derive(Parser)]
#[command(name = "heisgeo", about = "Heisenberg-type groups, similarity dynamics and boundary models", version)]
struct Cli {
    /// Field: R, C, H or O
    #[arg(long, global = true, default_value = "C")]
    field: String,
    /// Rank n of the ambient hyperbolic space
    #[arg(long, global = true, default_value_t = 2)]
    rank: usize,
    /// Numeric tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Seed for all randomized sampling
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Maximum word length for orbit enumeration
    #[arg(long, global = true, default_value_t = 6)]
    max_word_len: usize,
    /// Output file for machine-readable results
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: json or csv
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Worker threads for orbit expansion
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the identity battery for the configured field
    Verify,
    /// Enumerate the orbit of the basepoint under a generator document
    Orbit { input: PathBuf },
    /// Estimate and classify the limit set of a sim-mode generator document
    Limitset { input: PathBuf },
    /// KAN-decompose an isometry document
    Iwasawa { input: PathBuf },
    /// Fixed point of a similarity document
    Fixedpoint { input: PathBuf },
    /// Search for a non-discreteness witness from a two-similarity document
    Discreteness { input: PathBuf },
    /// Classify the visibility half-space of a unit-gauge center
    Halfspace { input: PathBuf },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::Precondition(_) => 3,
        Error::NonConvergence(_) => 4,
        _ => 1,
    }
}

fn read_document(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    io::parse_document(&text)
}

fn emit(cli: &Cli, machine: &str, summary: &str) -> Result<(), Error> {
    println!("{summary}");
    if let Some(path) = &cli.out {
        std::fs::write(path, machine)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    } else {
        println!("{machine}");
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn parse_field(cli: &Cli) -> Result<FieldTag, Error> {
    FieldTag::from_letter(&cli.field)
        .ok_or_else(|| Error::Parse(format!("unknown field letter \"{}\"", cli.field)))
}

fn cmd_verify(cli: &Cli) -> Result<bool, Error> {
    let tag = parse_field(cli)?;
    if cli.rank < 2 {
        return Err(Error::Parse("rank must be at least 2".into()));
    }
    if tag == FieldTag::Octonion && cli.rank != 2 {
        return Err(Error::Parse("octonionic rank is restricted to n = 2".into()));
    }
    let report = verify::run_battery(tag, cli.rank, cli.seed, 10_000)?;
    let mut summary = String::new();
    for e in &report.entries {
        summary.push_str(&format!(
            "[{}] {:<50} max error {:.3e} (tol {:.1e})\n",
            if e.pass { "pass" } else { "FAIL" },
            e.name,
            e.max_error,
            e.tol
        ));
    }
    if let Some(table) = &report.basis_table {
        summary.push_str("octonion basis products e_i e_j:\n");
        for row in table {
            summary.push_str(&format!("  {}\n", row.join(" ")));
        }
    }
    let machine = json_text(&json!({
        "field": tag.letter(),
        "entries": report.entries.iter().map(|e| json!({
            "name": e.name,
            "max_error": e.max_error,
            "tol": e.tol,
            "pass": e.pass,
        })).collect::<Vec<_>>(),
        "basis_table": report.basis_table,
        "all_pass": report.all_pass(),
    }));
    emit(cli, &machine, summary.trim_end())?;
    Ok(report.all_pass())
}

fn cmd_orbit(cli: &Cli, input: &PathBuf) -> Result<(), Error> {
    let doc = read_document(input)?;
    let gens = io::generator_set_from_value(&doc)?;
    let cloud = dynamics::orbit(&gens, cli.max_word_len, cli.tol.max(1e-12), dynamics::ORBIT_CAP)?;
    let summary = format!(
        "orbit: {} points (truncated: {})",
        cloud.points.len(),
        cloud.truncated
    );
    let machine = match cli.format.as_str() {
        "csv" => io::orbit_to_csv(&cloud),
        "json" => json_text(&json!({
            "truncated": cloud.truncated,
            "points": cloud.points.iter().map(|p| json!({
                "coords": p.coords,
                "word_len": p.word_len,
                "word": p.word,
            })).collect::<Vec<_>>(),
        })),
        other => return Err(Error::Parse(format!("unknown format \"{other}\""))),
    };
    emit(cli, &machine, &summary)
}

fn cmd_limitset(cli: &Cli, input: &PathBuf) -> Result<(), Error> {
    let doc = read_document(input)?;
    let gens = io::generator_set_from_value(&doc)?;
    let report = dynamics::limit_set_estimate(&gens, cli.max_word_len, 1e-2)?;
    let summary = format!("limit set: {:?}", report.class);
    let machine = json_text(&io::limit_report_to_value(&report));
    emit(cli, &machine, &summary)
}

fn cmd_iwasawa(cli: &Cli, input: &PathBuf) -> Result<(), Error> {
    let doc = read_document(input)?;
    let (tag, _n) = io::document_header(&doc)?;
    let g = io::group_elem_from_value(tag, &doc)?;
    let dec = boundary::iwasawa(&g)?;
    let summary = format!("iwasawa: t = {:.12}", dec.t);
    let machine = json_text(&json!({
        "k": io::group_elem_to_value(&dec.k),
        "t": dec.t,
        "u": io::vector_to_value(&dec.u),
        "center": io::elem_to_value(&dec.center),
    }));
    emit(cli, &machine, &summary)
}

fn cmd_fixedpoint(cli: &Cli, input: &PathBuf) -> Result<(), Error> {
    let doc = read_document(input)?;
    let (tag, _n) = io::document_header(&doc)?;
    let obj = doc
        .get("similarity")
        .ok_or_else(|| Error::Parse("missing field \"similarity\"".into()))?;
    let f = io::similarity_from_value(tag, obj)?;
    let p = f.fixed_point(cli.tol.min(1e-10), similarity::FIXED_POINT_MAX_ITER)?;
    let summary = format!("fixed point found (gauge norm {:.6})", p.gauge_norm());
    let machine = json_text(&io::npoint_to_value(&p));
    emit(cli, &machine, &summary)
}

fn cmd_discreteness(cli: &Cli, input: &PathBuf) -> Result<(), Error> {
    let doc = read_document(input)?;
    let (tag, _n) = io::document_header(&doc)?;
    let f = io::similarity_from_value(
        tag,
        doc.get("f").ok_or_else(|| Error::Parse("missing field \"f\"".into()))?,
    )?;
    let g = io::similarity_from_value(
        tag,
        doc.get("g").ok_or_else(|| Error::Parse("missing field \"g\"".into()))?,
    )?;
    let eps = doc.get("eps").and_then(Value::as_f64).unwrap_or(1e-6);
    let max_n = doc.get("max_n").and_then(Value::as_u64).unwrap_or(40) as usize;
    let report = similarity::discreteness_witness(&f, &g, eps, max_n)?;
    let summary = match report.pair {
        Some((n, m)) => format!("witness: h_{n} and h_{m} agree within {eps}"),
        None => format!("no witness found up to n = {max_n}"),
    };
    let machine = json_text(&json!({
        "pair": report.pair.map(|(n, m)| json!([n, m])),
        "pair_distance": report.pair_distance,
        "rotation_drift": report.rotation_drift,
        "max_n": report.max_n,
    }));
    emit(cli, &machine, &summary)
}

fn cmd_halfspace(cli: &Cli, input: &PathBuf) -> Result<(), Error> {
    let doc = read_document(input)?;
    let (tag, _n) = io::document_header(&doc)?;
    let beta = io::npoint_from_value(
        tag,
        doc.get("beta").ok_or_else(|| Error::Parse("missing field \"beta\"".into()))?,
    )?;
    let kind = similarity::halfspace_classify(&beta)?;
    let points: Vec<NPoint> = match doc.get("points") {
        Some(v) => v
            .as_array()
            .ok_or_else(|| Error::Parse("\"points\" must be an array".into()))?
            .iter()
            .map(|p| io::npoint_from_value(tag, p))
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    let (kind_name, detail) = match &kind {
        HalfspaceKind::Vertical { .. } => ("Vertical", Value::Null),
        HalfspaceKind::Horizontal { xi } => ("Horizontal", io::elem_to_value(xi)),
    };
    let mut rows = Vec::new();
    for p in &points {
        rows.push(json!({
            "point": io::npoint_to_value(p),
            "margin": kind.margin(p)?,
            "visible": kind.contains(p)?,
        }));
    }
    let summary = format!("half-space: {kind_name}");
    let machine = json_text(&json!({
        "kind": kind_name,
        "xi": detail,
        "points": rows,
    }));
    emit(cli, &machine, &summary)
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.cmd {
        Cmd::Verify => cmd_verify(cli),
        Cmd::Orbit { input } => cmd_orbit(cli, input).map(|_| true),
        Cmd::Limitset { input } => cmd_limitset(cli, input).map(|_| true),
        Cmd::Iwasawa { input } => cmd_iwasawa(cli, input).map(|_| true),
        Cmd::Fixedpoint { input } => cmd_fixedpoint(cli, input).map(|_| true),
        Cmd::Discreteness { input } => cmd_discreteness(cli, input).map(|_| true),
        Cmd::Halfspace { input } => cmd_halfspace(cli, input).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 1 {
        // deterministic regardless of thread count: expansion order is fixed
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
