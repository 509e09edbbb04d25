//! `footprint-lab`: closed-form tables, exhaustive searches, verification
//! suites and PRM code export.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use footprint_core::codes::{build_prm, ghw_exhaustive};
use footprint_core::formulas::{
    binomial, compute_h, compute_k, conjectured_er, decompose_r, gamma_dim, known_er,
    macaulay_tuple, projective_count, sorensen_dim, sorensen_mindist, Status,
};
use footprint_core::variety::{
    brute_force_affine_er, brute_force_er, brute_force_max_footprint, construct_witness,
    parse_budget, FormSpace, SearchOptions, BUDGET_ENV,
};
use footprint_core::verify::{quick_config, run_suite, Suite, SuiteReport, VerifyConfig};
use footprint_core::{stable_degree, Error, FieldSpec};

use output::{cell, Artifact, Format};

#[derive(Parser)]
#[command(name = "footprint-lab", version, about = "Rational points on projective varieties over small finite fields")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for searches; 0 picks the number of cores.
    #[arg(long, default_value_t = 0, global = true)]
    workers: usize,
    /// Maximum candidate x point evaluations per search, e.g. `1e8`.
    /// Overrides FOOTPRINT_LAB_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H_r, K_r and e_r over a parameter grid.
    Tables(TablesArgs),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Run named verification suites.
    Verify(VerifyArgs),
    /// Projective Reed-Muller codes.
    #[command(subcommand)]
    Prm(PrmCommand),
    /// Forms attaining the conjectured number of common zeros.
    Witness(Instance),
}

#[derive(Args)]
struct TablesArgs {
    /// Field sizes, e.g. `3` or `3,4,5`.
    #[arg(long, value_parser = parse_list)]
    q: List,
    /// Degrees, e.g. `2` or `1..3`.
    #[arg(long, value_parser = parse_list)]
    d: List,
    #[arg(long, value_parser = parse_list)]
    m: List,
    /// Ranks; all valid ranks when omitted.
    #[arg(long, value_parser = parse_list)]
    r: Option<List>,
}

#[derive(Args, Clone, Copy)]
struct Instance {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Max common zeros in P^m of r independent degree-d forms.
    Er {
        #[command(flatten)]
        inst: Instance,
        /// Search all degree-d forms instead of reduced ones.
        #[arg(long)]
        all_forms: bool,
    },
    /// Max common zeros in A^m of r independent reduced polynomials of degree <= d.
    Affine(Instance),
    /// Largest footprint of r reduced degree-d monomials.
    Footprint {
        #[command(flatten)]
        inst: Instance,
        /// Footprint degree; defaults to d + m(q-1).
        #[arg(long)]
        e: Option<u32>,
    },
    /// r-th generalized Hamming weight of PRM_q(d, m).
    Ghw(Instance),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, value_parser = parse_suite)]
    suite: SuiteChoice,
    #[arg(long, value_parser = parse_list)]
    q: Option<List>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Hypercube dimension for the extremal suites.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    d_max: Option<u32>,
    /// Use the fixed grids of the acceptance checks.
    #[arg(long)]
    quick: bool,
}

#[derive(Subcommand)]
enum PrmCommand {
    /// Generator matrix as JSON (with metadata) or CSV (bare rows).
    Export {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone)]
struct List(Vec<u32>);

#[derive(Debug, Clone, Copy)]
enum SuiteChoice {
    All,
    One(Suite),
}

/// `3`, `1,2,5` or `1..4` (inclusive).
fn parse_list(raw: &str) -> Result<List, String> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        let num = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("bad number `{s}`"));
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(List(out))
}

fn parse_suite(raw: &str) -> Result<SuiteChoice, String> {
    if raw == "all" {
        return Ok(SuiteChoice::All);
    }
    raw.parse::<Suite>().map(SuiteChoice::One).map_err(|e| e.to_string())
}

/// A failed run: exit code 1 for mismatches, 2 for invalid input or refusal.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WitnessInvalid { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Outcome {
    artifact: Artifact,
    /// False when a computation contradicts a proven formula or a suite fails.
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = match outcome.artifact.render(cli.format) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn options(cli: &Cli) -> Result<SearchOptions, Failure> {
    let mut opts = SearchOptions::from_env().map_err(|e| invalid(format!("{BUDGET_ENV}: {e}")))?;
    if let Some(raw) = &cli.budget {
        opts.budget = parse_budget(raw)?;
    }
    opts.workers = cli.workers;
    Ok(opts)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = options(cli)?;
    match &cli.command {
        Command::Tables(args) => tables(args),
        Command::Search(cmd) => search(cmd, &opts),
        Command::Verify(args) => verify(args, &opts),
        Command::Prm(PrmCommand::Export { q, d, m }) => prm_export(*q, *d, *m, cli.format),
        Command::Witness(inst) => witness(*inst, &opts),
    }
}

fn field(q: u32) -> Result<FieldSpec, Failure> {
    Ok(FieldSpec::new(q)?)
}

const TABLE_COLUMNS: [&str; 15] = [
    "q", "d", "m", "r", "H_r", "K_r", "e_r_value", "status", "known_e_r", "macaulay_tuple", "i",
    "j", "r_d", "prm_dim", "prm_mindist",
];

fn tables(args: &TablesArgs) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    for &q in &args.q.0 {
        field(q)?;
        for &d in &args.d.0 {
            if d == 0 || d >= q {
                return Err(invalid(format!(
                    "tables need 1 <= d < q (the conjectured formula's domain), got d = {d}, q = {q}"
                )));
            }
            for &m in &args.m.0 {
                let m = m as usize;
                let total = binomial(m as i64 + d as i64, d as i64)?;
                let ranks: Vec<u128> = match &args.r {
                    Some(list) => list.0.iter().map(|&r| r as u128).collect(),
                    None => (1..=total).collect(),
                };
                for r in ranks {
                    if r == 0 || r > total {
                        return Err(invalid(format!("r = {r} outside 1..={total} for d = {d}, m = {m}")));
                    }
                    rows.push(table_row(q, d, m, r, total)?);
                }
            }
        }
    }
    let mut artifact = Artifact::new(json!({"schema": 1, "command": "tables", "rows": rows}), &TABLE_COLUMNS);
    artifact.rows = rows
        .iter()
        .map(|row| TABLE_COLUMNS.iter().map(|c| cell(&row[*c])).collect())
        .collect();
    Ok(Outcome { artifact, ok: true })
}

fn table_row(q: u32, d: u32, m: usize, r: u128, total: u128) -> Result<Value, Failure> {
    let er = conjectured_er(r, d, m, q)?;
    let tuple = macaulay_tuple(total - r, d)?;
    let tuple_text: Vec<String> = tuple.entries.iter().map(ToString::to_string).collect();
    let dec = decompose_r(r, d, m)?;
    let dims = if d as usize <= m * (q as usize - 1) {
        (json!(sorensen_dim(d, m, q)? as u64), json!(sorensen_mindist(d, m, q)? as u64))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(json!({
        "q": q,
        "d": d,
        "m": m,
        "r": r as u64,
        "H_r": compute_h(r, d, m, q)? as u64,
        "K_r": compute_k(r, d, m, q)? as u64,
        "e_r_value": er.value as u64,
        "status": er.status.as_str(),
        "known_e_r": known_er(r, d, m, q)?.map(|v| v as u64),
        "macaulay_tuple": format!("({})", tuple_text.join(",")),
        "i": dec.i,
        "j": dec.j as u64,
        "r_d": gamma_dim(d, m, q)? as u64,
        "prm_dim": dims.0,
        "prm_mindist": dims.1,
    }))
}

/// Closed-form prediction for a search, if any applies.
struct Formula {
    name: &'static str,
    value: u128,
    status: Status,
    /// How the found value must relate to `value`.
    relation: Relation,
}

#[derive(Clone, Copy)]
enum Relation {
    Equal,
    AtLeast,
    AtMost,
}

impl Formula {
    fn exact(name: &'static str, value: u128, status: Status) -> Self {
        let relation = if status == Status::LowerBound { Relation::AtLeast } else { Relation::Equal };
        Self { name, value, status, relation }
    }

    fn matches(&self, found: u128) -> bool {
        match self.relation {
            Relation::Equal => found == self.value,
            Relation::AtLeast => found >= self.value,
            Relation::AtMost => found <= self.value,
        }
    }
}

const SEARCH_COLUMNS: [&str; 9] = [
    "kind", "q", "d", "m", "r", "value", "formula_value", "matches_formula", "subspaces_enumerated",
];

fn search(cmd: &SearchCommand, opts: &SearchOptions) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (kind, inst, value, witness, enumerated, formula, extra) = match cmd {
        SearchCommand::Er { inst, all_forms } => {
            let f = field(inst.q)?;
            let space = if *all_forms { FormSpace::AllHomogeneous } else { FormSpace::Reduced };
            let s = brute_force_er(&f, inst.r, inst.d, inst.m, space, opts)?;
            let formula = er_formula(inst, *all_forms)?;
            let witness: Vec<String> = s.witness.iter().map(ToString::to_string).collect();
            let extra = json!({"form_space": space, "footprint_audit": s.audit});
            ("er", inst, s.value, json!(witness), s.subspaces, formula, extra)
        }
        SearchCommand::Affine(inst) => {
            let f = field(inst.q)?;
            let s = brute_force_affine_er(&f, inst.r, inst.d, inst.m, opts)?;
            let h = compute_h(inst.r as u128, inst.d, inst.m, inst.q)?;
            let formula = Formula::exact("H_r", h, Status::Proven);
            let witness: Vec<String> = s.witness.iter().map(ToString::to_string).collect();
            ("affine", inst, s.value, json!(witness), s.subspaces, Some(formula), json!({}))
        }
        SearchCommand::Footprint { inst, e } => {
            field(inst.q)?;
            let star = stable_degree(inst.d, inst.m, inst.q);
            let e = e.unwrap_or(star);
            let s = brute_force_max_footprint(inst.r, inst.d, inst.m, inst.q, e, opts)?;
            // the maximal footprint is only known to be K_r for d < q
            let formula = if e >= star && inst.d < inst.q {
                let k = compute_k(inst.r as u128, inst.d, inst.m, inst.q)?;
                Some(Formula::exact("K_r", k, Status::Proven))
            } else {
                None
            };
            ("footprint", inst, s.value, json!(s.witness.to_strings()), s.subsets, formula, json!({"e": e}))
        }
        SearchCommand::Ghw(inst) => {
            let f = field(inst.q)?;
            let code = build_prm(&f, inst.d, inst.m)?;
            let value = ghw_exhaustive(&f, &code, inst.r, opts)?;
            let p_m = projective_count(inst.m as i64, inst.q)?;
            // a lower bound on e_r is an upper bound on d_r
            let formula = er_formula(inst, false)?.map(|e| Formula {
                name: "p_m - e_r",
                value: p_m - e.value,
                relation: match e.relation {
                    Relation::AtLeast => Relation::AtMost,
                    other => other,
                },
                ..e
            });
            let subspaces = footprint_core::echelon::gaussian_binomial(code.dimension(), inst.r, inst.q);
            ("ghw", inst, value, Value::Null, subspaces, formula, json!({"n": code.length(), "k": code.dimension()}))
        }
    };
    let matches = formula.as_ref().map(|f| f.matches(value));
    let ok = !matches!((&formula, matches), (Some(f), Some(false)) if f.status == Status::Proven);
    let json = json!({
        "schema": 1,
        "command": "search",
        "kind": kind,
        "q": inst.q,
        "d": inst.d,
        "m": inst.m,
        "r": inst.r,
        "value": value as u64,
        "witness": witness,
        "formula": formula.as_ref().map(|f| json!({
            "name": f.name,
            "value": f.value as u64,
            "status": f.status.as_str(),
            "relation": match f.relation {
                Relation::Equal => "equal",
                Relation::AtLeast => "at-least",
                Relation::AtMost => "at-most",
            },
        })),
        "matches_formula": matches,
        "subspaces_enumerated": enumerated as u64,
        "details": extra,
        "elapsed": start.elapsed().as_secs_f64(),
    });
    let mut artifact = Artifact::new(json, &SEARCH_COLUMNS);
    artifact.rows.push(SEARCH_COLUMNS.iter().map(|c| {
        if *c == "formula_value" {
            cell(&artifact.json["formula"]["value"])
        } else {
            cell(&artifact.json[*c])
        }
    }).collect());
    if !ok {
        let f = formula.expect("mismatch implies a formula");
        artifact.footer.push(format!("mismatch with proven {} = {}", f.name, f.value));
    }
    Ok(Outcome { artifact, ok })
}

/// `e_r` prediction for `1 <= d <= q`; for all forms it applies only where
/// reduction changes nothing.
fn er_formula(inst: &Instance, all_forms: bool) -> Result<Option<Formula>, Failure> {
    let (q, d, m) = (inst.q, inst.d, inst.m);
    if d == 0 || d > q {
        return Ok(None);
    }
    let total = binomial(m as i64 + d as i64, d as i64)?;
    let r = inst.r as u128;
    if r == 0 || r > total || (all_forms && gamma_dim(d, m, q)? > 0) {
        return Ok(None);
    }
    let e = conjectured_er(r, d, m, q)?;
    Ok(Some(Formula::exact("e_r", e.value, e.status)))
}

const VERIFY_COLUMNS: [&str; 6] = ["suite", "property", "passed", "checked", "failures", "counterexample"];

fn verify(args: &VerifyArgs, opts: &SearchOptions) -> Result<Outcome, Failure> {
    let suites: Vec<Suite> = match args.suite {
        SuiteChoice::All => Suite::ALL.to_vec(),
        SuiteChoice::One(s) => vec![s],
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        let cfg = if args.quick {
            let mut cfg = quick_config(s);
            cfg.opts.workers = opts.workers;
            cfg
        } else {
            let base = VerifyConfig::default();
            VerifyConfig {
                qs: args.q.as_ref().map(|l| l.0.clone()).unwrap_or(base.qs),
                m_max: args.m_max.unwrap_or(base.m_max),
                level: args.l.unwrap_or(base.level),
                d_max: args.d_max.unwrap_or(base.d_max),
                opts: *opts,
            }
        };
        reports.push(run_suite(s, &cfg)?);
    }
    let ok = reports.iter().all(|r| r.passed);
    let json = json!({"schema": 1, "command": "verify", "passed": ok, "suites": reports});
    let mut artifact = Artifact::new(json, &VERIFY_COLUMNS);
    for rep in &reports {
        for p in &rep.properties {
            artifact.rows.push(vec![
                rep.suite.to_string(),
                p.name.clone(),
                p.passed.to_string(),
                p.checked.to_string(),
                p.failures.to_string(),
                p.counterexample.as_ref().map(ToString::to_string).unwrap_or_default(),
            ]);
        }
        for s in &rep.skipped {
            artifact.footer.push(format!("{}: skipped {s}", rep.suite));
        }
        for n in &rep.notes {
            artifact.footer.push(format!("{}: {n}", rep.suite));
        }
    }
    Ok(Outcome { artifact, ok })
}

fn prm_export(q: u32, d: u32, m: usize, format: Format) -> Result<Outcome, Failure> {
    let code = build_prm(&field(q)?, d, m)?;
    let headers: Vec<String> = (0..code.length()).map(|p| format!("p{p}")).collect();
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut artifact = Artifact::new(code.to_json(), &header_refs);
    artifact.rows = code.generator.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
    if format == Format::Csv {
        // bare rows, no header line
        artifact.json = Value::Null;
        artifact.headers.clear();
    }
    Ok(Outcome { artifact, ok: true })
}

const WITNESS_COLUMNS: [&str; 8] = ["q", "d", "m", "r", "i", "j", "expected", "count"];

fn witness(inst: Instance, opts: &SearchOptions) -> Result<Outcome, Failure> {
    let f = field(inst.q)?;
    if inst.d == 0 || inst.d >= inst.q {
        return Err(invalid(format!("witnesses need 1 <= d < q, got d = {}, q = {}", inst.d, inst.q)));
    }
    let w = construct_witness(&f, inst.r as u128, inst.d, inst.m, opts)?;
    let forms: Vec<String> = w.forms.iter().map(ToString::to_string).collect();
    let json = json!({
        "schema": 1,
        "command": "witness",
        "q": inst.q,
        "d": inst.d,
        "m": inst.m,
        "r": inst.r,
        "i": w.i,
        "j": w.j as u64,
        "expected": w.expected as u64,
        "count": w.count as u64,
        "searched": w.searched,
        "forms": forms,
    });
    let mut artifact = Artifact::new(json, &WITNESS_COLUMNS);
    artifact.rows.push(WITNESS_COLUMNS.iter().map(|c| cell(&artifact.json[*c])).collect());
    artifact.footer.extend(forms);
    Ok(Outcome { artifact, ok: w.count == w.expected })
}
