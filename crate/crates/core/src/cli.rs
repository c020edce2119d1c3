//! Command-line front end. `main.rs` only forwards to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combgen::{cycle_form, gen_perms, gen_signed_perms, gen_stirling, Limits, Perm};
use crate::decomp::{gamma_expand, positivity_report, symmetric_decompose};
use crate::exactpoly::Bindings;
use crate::families::{
    build_by_enumeration_with, build_by_grammar, build_by_recurrence, coeff_table, Enumerator, FamilyId, KParam, Route,
};
use crate::grammar::{builtin, builtin_names, parse_grammar, Grammar};
use crate::identities::{self, all_passed, IdentityReport, RunOptions};
use crate::stats::{Mutation, PermField, WordField};
use crate::{Poly, Rational, Var};

pub const SCHEMA: &str = "stirling-lab/1";

#[derive(Debug, Parser)]
#[command(name = "stirling-lab", version, about = "Exact Euler-Stirling statistics workbench")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the identity suite (0 = one per core).
    #[arg(long, global = true, env = "STIRLING_LAB_JOBS", default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = Limits::default().max_perm_n)]
    pub max_perm_n: usize,
    #[arg(long, global = true, default_value_t = Limits::default().max_signed_n)]
    pub max_signed_n: usize,
    /// Largest number of k-Stirling permutations a single enumeration may visit.
    #[arg(long, global = true, default_value_t = Limits::default().max_stirling_count)]
    pub max_stirling: u128,
    /// Include wall times in identity reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Enum,
    Rec,
    Grammar,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Enum => Route::Enumeration,
            RouteArg::Rec => Route::Recurrence,
            RouteArg::Grammar => Route::Grammar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectArg {
    Perm,
    Signed,
    Stirling,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a family polynomial or coefficient table.
    Table {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        n: usize,
        /// Positive integer, or `k` for a symbolic k.
        #[arg(long, value_parser = parse_k)]
        k: Option<KParam>,
        /// Defaults to the recurrence when the family has one.
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
    },
    /// Run identity checks.
    Check {
        /// An identity id, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        /// Bound used instead of every default bound.
        #[arg(long)]
        max_n: Option<usize>,
        /// Corrupt one statistic (e.g. `perm.pasc`, `word.ap`) to see what fails.
        #[arg(long, value_parser = parse_mutation, hide = true)]
        mutate: Option<Mutation>,
        /// List the registered identities and exit.
        #[arg(long)]
        list: bool,
    },
    /// Symmetric decomposition, gamma vector and positivity of a family polynomial.
    Decompose {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_k)]
        k: Option<KParam>,
        /// Numeric value for q (rational, e.g. `3/2`).
        #[arg(long, value_parser = parse_rational)]
        q: Option<Rational>,
        /// Reference degree; defaults to the family's natural one.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Iterate a grammar derivative.
    Grammar {
        /// Grammar file, one `letter -> polynomial` rule per line.
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        spec: Option<PathBuf>,
        /// Name of a shipped grammar.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        start: Poly,
        #[arg(long)]
        steps: usize,
        /// Substitutions applied to the result, e.g. `a=x,b=1`.
        #[arg(long, value_parser = parse_bindings)]
        subst: Option<Bindings<Rational>>,
        /// Print every step 0..=steps.
        #[arg(long)]
        all: bool,
    },
    /// Dump statistics of every object as CSV.
    Enumerate {
        #[arg(long, value_enum)]
        object: ObjectArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Comma-separated statistic names, or `all`.
        #[arg(long, default_value = "all")]
        stats: String,
    },
}

fn parse_k(s: &str) -> Result<KParam, String> {
    match s.trim() {
        "k" | "sym" | "symbolic" => Ok(KParam::Symbolic),
        t => match t.parse::<i64>() {
            Ok(v) if v >= 1 => Ok(KParam::Int(v)),
            _ => Err(format!("`{s}` is neither a positive integer nor `k`")),
        },
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let p: Poly = s.parse().map_err(|e| format!("{e}"))?;
    p.as_constant().ok_or_else(|| format!("`{s}` is not a number"))
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    Mutation::all().into_iter().find(|m| m.to_string() == s).ok_or_else(|| format!("unknown statistic hook `{s}`"))
}

fn parse_bindings(s: &str) -> Result<Bindings<Rational>, String> {
    let mut out = Bindings::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (v, p) = part.split_once('=').ok_or_else(|| format!("`{part}` is not of the form letter=polynomial"))?;
        let p: Poly = p.parse().map_err(|e| format!("{e}"))?;
        out.insert(Var::new(v.trim()), p);
    }
    Ok(out)
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Msg(String),
    #[error(transparent)]
    Family(#[from] crate::families::FamilyError),
    #[error(transparent)]
    Gen(#[from] crate::combgen::GenError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn msg(s: impl Into<String>) -> CliError {
    CliError::Msg(s.into())
}

/// Output of one command: text lines or a JSON document, plus the exit code.
struct Emit {
    text: String,
    json: Value,
    code: i32,
}

/// Parses `args` (program name first) and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(emit) => {
            let body = match cli.common.format {
                Format::Text => emit.text,
                Format::Json => {
                    let mut doc = json!({ "schema": SCHEMA });
                    if let (Value::Object(d), Value::Object(extra)) = (&mut doc, emit.json) {
                        d.extend(extra);
                    }
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize"))
                }
            };
            let written = match &cli.common.out {
                Some(p) => fs::write(p, body.as_bytes()),
                None => out.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            emit.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn enumerator(c: &Common) -> Enumerator {
    Enumerator::new(Limits { max_perm_n: c.max_perm_n, max_signed_n: c.max_signed_n, max_stirling_count: c.max_stirling })
}

fn execute(cli: &Cli) -> Result<Emit, CliError> {
    let e = enumerator(&cli.common);
    match &cli.command {
        Command::Table { family, n, k, route } => table(&e, *family, *n, k.clone(), route.map(Route::from)),
        Command::Check { identity, max_n, mutate, list } => {
            if *list {
                return Ok(list_identities());
            }
            check(&cli.common, e.with_mutation(*mutate), identity, *max_n)
        }
        Command::Decompose { family, n, k, q, degree } => decompose(&e, *family, *n, k.clone(), q.clone(), *degree),
        Command::Grammar { spec, builtin: name, start, steps, subst, all } => {
            let g = load_grammar(spec.as_ref(), name.as_deref())?;
            Ok(derive(&g, start, *steps, subst.as_ref(), *all))
        }
        Command::Enumerate { object, n, k, stats } => enumerate(&e, *object, *n, *k, stats),
    }
}

fn default_route(f: FamilyId) -> Route {
    let r = f.routes();
    if r.contains(&Route::Recurrence) {
        Route::Recurrence
    } else {
        r.first().copied().unwrap_or(Route::Recurrence)
    }
}

fn family_poly(e: &Enumerator, f: FamilyId, n: usize, k: Option<KParam>, route: Route) -> Result<Poly, CliError> {
    Ok(match route {
        Route::Enumeration => build_by_enumeration_with(e, f, n, k)?,
        Route::Recurrence => build_by_recurrence(f, n, k)?,
        Route::Grammar => build_by_grammar(f, n, k)?,
    })
}

fn table(e: &Enumerator, f: FamilyId, n: usize, k: Option<KParam>, route: Option<Route>) -> Result<Emit, CliError> {
    if f.is_table() {
        let t = coeff_table(f, n, k)?;
        let entries: Vec<Value> = t
            .entries()
            .map(|(part, i, j, v)| json!({ "part": part, "i": i, "j": j, "value": v }))
            .collect();
        return Ok(Emit {
            text: format!("{t}\n"),
            json: json!({ "command": "table", "family": f.tag(), "n": n, "entries": entries }),
            code: 0,
        });
    }
    let route = route.unwrap_or_else(|| default_route(f));
    let p = family_poly(e, f, n, k.clone(), route)?;
    let mut j = json!({ "command": "table", "family": f.tag(), "n": n, "route": route.name(), "poly": p });
    if let Some(k) = &k {
        j["k"] = json!(k.to_string());
    }
    Ok(Emit { text: format!("{p}\n"), json: j, code: 0 })
}

fn list_identities() -> Emit {
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in identities::registry() {
        text.push_str(&format!("{:<20} bound {:<2} {}\n", c.id, c.default_bound, c.claim));
        rows.push(json!({ "id": c.id, "default_bound": c.default_bound, "claim": c.claim }));
    }
    Emit { text, json: json!({ "command": "check", "identities": rows }), code: 0 }
}

fn report_json(r: &IdentityReport, timing: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if timing {
        v["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
    }
    v
}

fn check(c: &Common, e: Enumerator, identity: &str, max_n: Option<usize>) -> Result<Emit, CliError> {
    let selected = if identity == "all" {
        Vec::new()
    } else {
        vec![identities::lookup(identity).map_err(|u| msg(u.to_string()))?]
    };
    let opts = RunOptions { bound: max_n, enumerator: e, jobs: c.jobs, ..Default::default() };
    let reports = identities::run_selected(&selected, &opts);
    let passed = all_passed(&reports);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_string());
        if c.timing {
            text.push_str(&format!("\n  time: {:.1} ms", r.elapsed.as_secs_f64() * 1e3));
        }
        text.push('\n');
    }
    let n_ok = reports.iter().filter(|r| r.passed).count();
    text.push_str(&format!("{n_ok}/{} passed\n", reports.len()));
    let rows: Vec<Value> = reports.iter().map(|r| report_json(r, c.timing)).collect();
    let mut j = json!({ "command": "check", "passed": passed, "reports": rows });
    if let Some(m) = e.mutation {
        j["mutation"] = json!(m.to_string());
    }
    Ok(Emit { text, json: j, code: if passed { 0 } else { 1 } })
}

/// The degree a family polynomial is symmetric (or decomposed) about.
pub fn reference_degree(f: FamilyId, n: usize, p: &Poly) -> u32 {
    let n32 = n as u32;
    match f {
        FamilyId::A => n32 + 1,
        FamilyId::M | FamilyId::Mq | FamilyId::Ak => n32.saturating_sub(1),
        FamilyId::B | FamilyId::N => n32,
        _ => p.degree_in(&Var::new("x")).unwrap_or(0),
    }
}

fn decompose(
    e: &Enumerator,
    f: FamilyId,
    n: usize,
    k: Option<KParam>,
    q: Option<Rational>,
    degree: Option<u32>,
) -> Result<Emit, CliError> {
    let mut p = family_poly(e, f, n, k, default_route(f))?;
    if let Some(q) = &q {
        p = p.substitute(&Bindings::from([(Var::new("q"), Poly::constant(q.clone()))]));
    }
    let d = degree.unwrap_or_else(|| reference_degree(f, n, &p));
    let mut text = format!("polynomial: {p}\nreference degree: {d}\n");
    let mut j = json!({ "command": "decompose", "family": f.tag(), "n": n, "degree": d, "poly": p });
    if let Some(q) = &q {
        j["q"] = json!(q.to_string());
    }
    match symmetric_decompose(&p, d) {
        Ok(sd) => {
            text.push_str(&format!("a: {}\nb: {}\n", sd.a, sd.b));
            j["a"] = json!(sd.a);
            j["b"] = json!(sd.b);
        }
        Err(er) => {
            text.push_str(&format!("symmetric decomposition: {er}\n"));
            j["decomposition_error"] = json!(er.to_string());
        }
    }
    if let Ok(g) = gamma_expand(&p, d) {
        text.push_str(&format!("gamma: {g}\n"));
        j["gamma"] = json!(g.gammas);
    }
    match positivity_report(&p, d) {
        Ok(r) => {
            let flags = [
                ("symmetric", r.symmetric),
                ("unimodal", r.unimodal),
                ("gamma_positive", r.gamma_positive),
                ("alternatingly_increasing", r.alternatingly_increasing),
                ("bi_gamma_positive", r.bi_gamma_positive),
            ];
            for (name, v) in flags {
                text.push_str(&format!("{name}: {v}\n"));
                j[name] = json!(v);
            }
        }
        Err(er) => {
            text.push_str(&format!("positivity: {er}\n"));
            j["positivity_error"] = json!(er.to_string());
        }
    }
    Ok(Emit { text, json: j, code: 0 })
}

fn load_grammar(spec: Option<&PathBuf>, name: Option<&str>) -> Result<Grammar, CliError> {
    match (spec, name) {
        (Some(path), _) => {
            let src = fs::read_to_string(path).map_err(|e| msg(format!("{}: {e}", path.display())))?;
            parse_grammar(&src).map_err(|e| msg(format!("{}: {e}", path.display())))
        }
        (None, Some(n)) => builtin(n).ok_or_else(|| {
            msg(format!("no shipped grammar `{n}`; available: {}", builtin_names().collect::<Vec<_>>().join(", ")))
        }),
        (None, None) => Err(msg("give --spec FILE or --builtin NAME")),
    }
}

fn derive(g: &Grammar, start: &Poly, steps: usize, subst: Option<&Bindings<Rational>>, all: bool) -> Emit {
    let seq = g.derive_seq(start, steps);
    let fin = |p: &Poly| subst.map_or_else(|| p.clone(), |b| p.substitute(b));
    if all {
        let shown: Vec<Poly> = seq.iter().map(fin).collect();
        let text = shown.iter().enumerate().map(|(i, p)| format!("{i}: {p}\n")).collect();
        return Emit { text, json: json!({ "command": "grammar", "steps": steps, "sequence": shown }), code: 0 };
    }
    let p = fin(&seq[steps]);
    Emit { text: format!("{p}\n"), json: json!({ "command": "grammar", "steps": steps, "poly": p }), code: 0 }
}

fn pick<F: Copy + std::str::FromStr<Err = String> + ToString>(all: &[F], spec: &str) -> Result<Vec<F>, CliError> {
    if spec.trim() == "all" {
        return Ok(all.to_vec());
    }
    spec.split(',').map(|s| s.trim().parse::<F>().map_err(msg)).collect()
}

fn enumerate(e: &Enumerator, object: ObjectArg, n: usize, k: usize, stats: &str) -> Result<Emit, CliError> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut push = |obj: String, extra: Option<String>, names: &[String], vals: Vec<u32>| {
        let mut line = vec![obj.clone()];
        line.extend(extra.clone());
        line.extend(vals.iter().map(u32::to_string));
        text.push_str(&line.join(","));
        text.push('\n');
        let mut row = json!({ "object": obj });
        if let Some(c) = extra {
            row["cycles"] = json!(c);
        }
        for (nm, v) in names.iter().zip(&vals) {
            row[nm.as_str()] = json!(v);
        }
        rows.push(row);
    };
    let header: Vec<String>;
    match object {
        ObjectArg::Perm => {
            let fields = pick(PermField::ALL, stats)?;
            let names: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
            header = ["perm".into(), "cycles".into()].into_iter().chain(names.iter().cloned()).collect();
            for pi in gen_perms(n, &e.limits)? {
                let s = e.perm_stats(pi.as_slice());
                let cyc = cycle_form(&Perm::new(pi.as_slice().to_vec())).to_string();
                push(pi.to_string(), Some(cyc), &names, fields.iter().map(|&f| s.get(f)).collect());
            }
        }
        ObjectArg::Stirling => {
            let fields = pick(WordField::ALL, stats)?;
            let names: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
            header = std::iter::once("word".to_string()).chain(names.iter().cloned()).collect();
            for w in gen_stirling(n, k, &e.limits)? {
                let s = e.stirling_stats(w.as_slice(), k);
                push(w.to_string(), None, &names, fields.iter().map(|&f| s.get(f)).collect());
            }
        }
        ObjectArg::Signed => {
            if stats.trim() != "all" && stats.trim() != "des_b" {
                return Err(msg("signed permutations carry only des_b"));
            }
            let names = vec!["des_b".to_string()];
            header = vec!["signed".into(), "des_b".into()];
            for s in gen_signed_perms(n, &e.limits)? {
                let r = e.signed_stats(s.as_slice());
                push(s.to_string(), None, &names, vec![r.des_b]);
            }
        }
    }
    let text = format!("{}\n{text}", header.join(","));
    Ok(Emit { text, json: json!({ "command": "enumerate", "n": n, "columns": header, "rows": rows }), code: 0 })
}
