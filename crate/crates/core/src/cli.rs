//! Command-line front end.
//!
//! Reports start with `#` header lines recording the tool version, seed,
//! grid and table labels. The exit code is 0 when every requested check
//! passes, 1 when one fails and 2 for usage errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::goeritz::{
    star_grid, verify_additivity, verify_lemma_items, verify_table_consistency, Family, IdentityCheck,
};
use crate::loelim::{eliminate, genus2_level0, orbit_reduce, PatternVerdict, SymmetryAction};
use crate::presentations::{genus_one_presentation, genus_one_presentation_at, mv_presentation};
use crate::qacert::{
    deserialize, generate_a_cert, generate_l_cert, serialize, single_field_mutations, verify, Certificate, Verdict,
};
use crate::twobridge::{cf_value, h1_cyclic_cover_order, knot_name, mirror, ContinuedFraction, EvenExpansion};
use crate::Order;

/// Directory that relative output paths are resolved against.
pub const OUT_DIR_VAR: &str = "BRIDGECOVER_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "bridgecover", version, about = "Two-bridge knot invariants, cover homology and skein certificates")]
pub struct Cli {
    /// `key = value` file with defaults for grid, seed, format and out_dir.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for sampled fuzzing; recorded in report headers.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a continued fraction `[a1, ..., am]`.
    Fraction {
        #[arg(long)]
        mirror: bool,
        /// Show the `(a_i, b_i)` pairs of an even expansion.
        #[arg(long)]
        even_form: bool,
        #[arg(required = true, allow_negative_numbers = true)]
        terms: Vec<i64>,
    },
    /// Order of `H1` of the `n`-fold cyclic branched cover.
    H1 {
        #[arg(long, default_value_t = 2)]
        cover: usize,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        #[arg(required = true, allow_negative_numbers = true)]
        terms: Vec<i64>,
    },
    /// Run a symbolic identity suite.
    Identities {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Parameter range `lo..hi` for the matrix comparison.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Generate, verify or fuzz certificates.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Sign elimination for left orders.
    LoElim {
        #[arg(long, value_enum)]
        family: LoFamily,
        /// Number of generators for the genus-one presentation.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Print the five-generator pattern table.
        #[arg(long)]
        table1: bool,
        /// Signs of `q,s,t,l`, e.g. `+,+,-,+`.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CertAction {
    Generate {
        #[command(flatten)]
        target: CertTarget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check that single-field mutations of a generated certificate are rejected.
    Fuzz {
        #[command(flatten)]
        target: CertTarget,
        /// Check this many sampled mutations instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct CertTarget {
    #[arg(long, value_enum, ignore_case = true)]
    family: CertFamily,
    /// Comma-separated `q,s,t` or `q,s,t,l`.
    #[arg(long, allow_hyphen_values = true)]
    params: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Snf,
    Oracle,
    Table,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "lemma5.4")]
    Lemma54,
    #[value(name = "lemma5.12")]
    Lemma512,
    #[value(name = "lemma5.3")]
    Lemma53,
    #[value(name = "lemma5.11")]
    Lemma511,
    Tables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertFamily {
    A,
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LoFamily {
    Genus1,
    Genus2,
}

/// Settings merged from the config file, the environment and the flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub grid: (i64, i64),
    pub out_dir: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { grid: (1, 3), out_dir: None, format: Format::Text, seed: 0 }
    }
}

impl RunConfig {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, col: 1, msg };
            let (k, v) = line.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
            let v = v.trim();
            match k.trim() {
                "grid" => c.grid = parse_range(v).map_err(|e| err(e.to_string()))?,
                "seed" => c.seed = v.parse().map_err(|_| err(format!("bad seed '{v}'")))?,
                "out_dir" => c.out_dir = Some(PathBuf::from(v)),
                "format" => c.format = Format::from_str(v, true).map_err(|_| err(format!("bad format '{v}'")))?,
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        }
        Ok(c)
    }

    fn resolve(&self, path: &Path) -> PathBuf {
        match &self.out_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    fn header(&self, grid: Option<(i64, i64)>, source: &str) -> String {
        let grid = grid.map(|(a, b)| format!("{a}..{b}")).unwrap_or_else(|| "-".into());
        format!("# bridgecover {} seed={} grid={grid} source={source}\n", env!("CARGO_PKG_VERSION"), self.seed)
    }
}

/// `lo..hi` with `lo <= hi`.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| invalid(format!("range '{s}' must look like lo..hi")))?;
    let lo: i64 = a.trim().parse().map_err(|_| invalid(format!("bad range start '{a}'")))?;
    let hi: i64 = b.trim().parse().map_err(|_| invalid(format!("bad range end '{b}'")))?;
    if lo > hi {
        return Err(invalid(format!("empty range {s}")));
    }
    Ok((lo, hi))
}

fn parse_params(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| invalid(format!("bad parameter '{p}'"))))
        .collect()
}

/// Signs such as `+,+,-,+` or `++-+`.
pub fn parse_signs(s: &str) -> Result<[i64; 4]> {
    let v: Vec<i64> = s
        .chars()
        .filter(|c| *c != ',')
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(invalid(format!("bad sign '{c}' in '{s}'"))),
        })
        .collect::<Result<_>>()?;
    v.try_into().map_err(|_| invalid(format!("'{s}' needs four signs")))
}

/// What a command prints and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// Parse arguments, run, print, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(hoist_flags(args)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::Parse { .. } => 2,
                _ => 1,
            }
        }
    }
}

/// Move named flags written after `--` in front of it, so that
/// `h1 -- -2 2 -2 2 --cover 3` reads like `h1 --cover 3 -- -2 2 -2 2`.
fn hoist_flags(args: Vec<std::ffi::OsString>) -> Vec<std::ffi::OsString> {
    const WITH_VALUE: [&str; 3] = ["--cover", "--method", "--seed"];
    const SWITCHES: [&str; 2] = ["--mirror", "--even-form"];
    let Some(sep) = args.iter().position(|a| a == "--") else {
        return args;
    };
    let mut head = args[..sep].to_vec();
    let mut tail = Vec::new();
    let mut rest = args[sep + 1..].iter();
    while let Some(a) = rest.next() {
        let s = a.to_string_lossy();
        let name = s.split('=').next().unwrap_or("");
        if WITH_VALUE.contains(&name) {
            head.push(a.clone());
            if !s.contains('=') {
                if let Some(v) = rest.next() {
                    head.push(v.clone());
                }
            }
        } else if SWITCHES.contains(&name) {
            head.push(a.clone());
        } else {
            tail.push(a.clone());
        }
    }
    head.push("--".into());
    head.extend(tail);
    head
}

fn config_for(cli: &Cli) -> Result<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::from_text(&fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?)?,
        None => RunConfig::default(),
    };
    if let Ok(dir) = std::env::var(OUT_DIR_VAR) {
        c.out_dir = Some(PathBuf::from(dir));
    }
    if let Some(seed) = cli.seed {
        c.seed = seed;
    }
    Ok(c)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cfg = config_for(cli)?;
    match &cli.command {
        Command::Fraction { mirror: m, even_form, terms } => cmd_fraction(terms, *m, *even_form),
        Command::H1 { cover, method, terms } => cmd_h1(terms, *cover, *method),
        Command::Identities { suite, grid, format } => {
            let grid = match grid {
                Some(g) => parse_range(g)?,
                None => cfg.grid,
            };
            cmd_identities(&cfg, *suite, grid, format.unwrap_or(cfg.format))
        }
        Command::Cert { action } => cmd_cert(&cfg, action),
        Command::LoElim { family, n, table1, signs, format } => {
            cmd_loelim(&cfg, *family, *n, *table1, signs.as_deref(), format.unwrap_or(cfg.format))
        }
    }
}

fn bracket(terms: &[i64]) -> String {
    let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn cmd_fraction(terms: &[i64], mirrored: bool, even_form: bool) -> Result<Outcome> {
    let cf = ContinuedFraction::new(terms.to_vec())?;
    if mirrored {
        return Ok(Outcome::pass(format!("{}\n", bracket(mirror(&cf).terms()))));
    }
    if even_form {
        let e = EvenExpansion::from_terms(terms)?;
        let pairs: Vec<String> = e.pairs().iter().map(|(a, b)| format!("({a},{b})")).collect();
        return Ok(Outcome::pass(format!("genus {} pairs {}\n", e.genus(), pairs.join(" "))));
    }
    let f = cf_value(&cf)?;
    let det = f.determinant();
    let kind = if !f.is_knot() {
        "2-component link".to_string()
    } else {
        match knot_name(&f) {
            Some(name) => format!("knot {name} class"),
            None => "knot".to_string(),
        }
    };
    Ok(Outcome::pass(format!("{f} ({kind}, det {det})\n")))
}

fn snf_order(terms: &[i64], n: usize) -> Result<Order> {
    match terms {
        &[a1, b1, a2, b2] if terms.iter().all(|t| t % 2 == 0) => {
            let (q, s, t, l) = (-a1 / 2, b1 / 2, -a2 / 2, b2 / 2);
            mv_presentation(q, s, t, l, n)?.h1_order(&[])
        }
        &[a, b] if a % 2 == 0 && b % 2 == 0 && a / 2 >= 1 && -b / 2 >= 1 => {
            genus_one_presentation_at(a / 2, -b / 2, n)?.h1_order(&[])
        }
        _ => Err(Error::UnsupportedRegime(
            "snf needs [2k,-2l] with k,l >= 1 or [-2q,2s,-2t,2l] with nonzero entries".into(),
        )),
    }
}

fn table_order(terms: &[i64], n: usize) -> Result<Order> {
    match terms {
        &[a1, b1, a2, b2] if n == 3 && terms.iter().all(|t| t % 2 == 0) => {
            let params = [-a1 / 2, b1 / 2, -a2 / 2, b2 / 2];
            let v = crate::goeritz::table_formula(Family::L, crate::goeritz::Resolution::STAR, &params)?;
            Ok(Order::Finite(v))
        }
        _ => Err(Error::UnsupportedRegime("table needs the 3-fold cover of [-2q,2s,-2t,2l]".into())),
    }
}

pub fn cmd_h1(terms: &[i64], n: usize, method: Method) -> Result<Outcome> {
    ContinuedFraction::new(terms.to_vec())?;
    if n < 2 {
        return Err(invalid("--cover must be at least 2"));
    }
    let oracle = || -> Result<Order> { h1_cyclic_cover_order(&EvenExpansion::from_terms(terms)?, n) };
    match method {
        Method::Snf => Ok(Outcome::pass(format!("{}\n", snf_order(terms, n)?))),
        Method::Oracle => Ok(Outcome::pass(format!("{}\n", oracle()?))),
        Method::Table => Ok(Outcome::pass(format!("{}\n", table_order(terms, n)?))),
        Method::All => {
            let mut names = Vec::new();
            let mut values = Vec::new();
            for (name, r) in [("snf", snf_order(terms, n)), ("oracle", oracle()), ("table", table_order(terms, n))] {
                match r {
                    Ok(v) => {
                        names.push(name);
                        values.push(v);
                    }
                    Err(Error::UnsupportedRegime(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            if values.is_empty() {
                return Err(Error::UnsupportedRegime("no method applies".into()));
            }
            let agree = values.iter().all(|v| *v == values[0]);
            let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let verdict = if agree { "AGREE" } else { "DISAGREE" };
            Ok(Outcome { text: format!("{}: {} {verdict}\n", names.join(","), shown.join(",")), ok: agree })
        }
    }
}

fn checks_report(cfg: &RunConfig, title: &str, source: &str, checks: &[IdentityCheck], format: Format) -> Outcome {
    let passed = checks.iter().filter(|c| c.pass()).count();
    let ok = passed == checks.len();
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| json!({"item": c.name, "statement": c.statement, "residual": c.residual.to_string(), "pass": c.pass()}))
                .collect();
            let v = json!({"suite": title, "source": source, "seed": cfg.seed, "version": env!("CARGO_PKG_VERSION"), "checks": rows, "passed": passed, "total": checks.len()});
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = cfg.header(None, source);
            s.push_str("item,pass,residual\n");
            for c in checks {
                s.push_str(&format!("{},{},{}\n", c.name, if c.pass() { "PASS" } else { "FAIL" }, c.residual));
            }
            s
        }
        Format::Text => {
            let mut s = cfg.header(None, source);
            for c in checks {
                let verdict = if c.pass() { "PASS".to_string() } else { format!("FAIL residual {}", c.residual) };
                s.push_str(&format!("{} {}: {verdict}\n", c.name, c.statement));
            }
            s.push_str(&format!("{title}: {passed}/{} PASS\n", checks.len()));
            s
        }
    };
    Outcome { text, ok }
}

pub fn cmd_identities(cfg: &RunConfig, suite: Suite, grid: (i64, i64), format: Format) -> Result<Outcome> {
    let out = match suite {
        Suite::Lemma54 => checks_report(cfg, "lemma5.4", "Table 3", &verify_additivity(Family::A), format),
        Suite::Lemma512 => checks_report(cfg, "lemma5.12", "Table 5", &verify_additivity(Family::L), format),
        Suite::Lemma53 => checks_report(cfg, "lemma5.3", "Table 3", &verify_lemma_items(Family::A), format),
        Suite::Lemma511 => checks_report(cfg, "lemma5.11", "Table 5", &verify_lemma_items(Family::L), format),
        Suite::Tables => {
            if grid.0 < 1 {
                return Err(Error::UnsupportedRegime("the block matrices need a grid starting at 1".into()));
            }
            let consistency = verify_table_consistency();
            let cells = star_grid(grid.0, grid.1, true)?;
            let ok = consistency.iter().all(|c| c.pass()) && cells.iter().all(|c| c.agree());
            let source = "Tables 2-5";
            let text = match format {
                Format::Json => {
                    let rows: Vec<_> = cells
                        .iter()
                        .map(|c| json!({"family": c.family.to_string(), "params": c.params, "matrix": c.matrix_det.to_string(), "formula": c.formula.to_string(), "agree": c.agree()}))
                        .collect();
                    let cons: Vec<_> = consistency.iter().map(|c| json!({"item": c.name, "pass": c.pass()})).collect();
                    let v = json!({"suite": "tables", "source": source, "seed": cfg.seed, "version": env!("CARGO_PKG_VERSION"), "grid": [grid.0, grid.1], "consistency": cons, "cells": rows});
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
                _ => {
                    let mut s = cfg.header(Some(grid), source);
                    for c in &consistency {
                        s.push_str(&format!("{}: {}\n", c.name, if c.pass() { "PASS" } else { "FAIL" }));
                    }
                    s.push_str("family,params,matrix_det,formula,verdict\n");
                    for c in &cells {
                        let p: Vec<String> = c.params.iter().map(|v| v.to_string()).collect();
                        let v = if c.agree() { "AGREE" } else { "DISAGREE" };
                        s.push_str(&format!("{},{},{},{},{v}\n", c.family, p.join(" "), c.matrix_det, c.formula));
                    }
                    let agreeing = cells.iter().filter(|c| c.agree()).count();
                    s.push_str(&format!("tables: {agreeing}/{} cells agree\n", cells.len()));
                    s
                }
            };
            Outcome { text, ok }
        }
    };
    Ok(out)
}

fn generate(target: &CertTarget) -> Result<Certificate> {
    let p = parse_params(&target.params)?;
    match (target.family, p.as_slice()) {
        (CertFamily::A, &[q, s, t]) => generate_a_cert(q, s, t),
        (CertFamily::L, &[q, s, t, l]) => generate_l_cert(q, s, t, l),
        (CertFamily::A, _) => Err(invalid("family A takes --params q,s,t")),
        (CertFamily::L, _) => Err(invalid("family L takes --params q,s,t,l")),
    }
}

pub fn cmd_cert(cfg: &RunConfig, action: &CertAction) -> Result<Outcome> {
    match action {
        CertAction::Generate { target, out } => {
            let c = generate(target)?;
            let text = serialize(&c);
            match out {
                Some(path) => {
                    let path = cfg.resolve(path);
                    fs::write(&path, &text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                    Ok(Outcome::pass(format!("{} certificate, {} nodes -> {}\n", c.claim, c.size(), path.display())))
                }
                None => Ok(Outcome::pass(text)),
            }
        }
        CertAction::Verify { input } => {
            let bytes = fs::read(input).map_err(|e| invalid(format!("{}: {e}", input.display())))?;
            let c = deserialize(&bytes)?;
            let v = verify(&c);
            Ok(Outcome { ok: v.is_accept(), text: format!("{v}\n") })
        }
        CertAction::Fuzz { target, samples } => {
            let c = generate(target)?;
            let mut muts = single_field_mutations(&c);
            if let Some(k) = samples {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                muts.shuffle(&mut rng);
                muts.truncate(*k);
            }
            let mut text = cfg.header(None, "certificate mutations");
            let accepted: Vec<&String> =
                muts.iter().filter(|(_, m)| verify(m) == Verdict::Accept).map(|(label, _)| label).collect();
            for label in &accepted {
                text.push_str(&format!("ACCEPTED {label}\n"));
            }
            text.push_str(&format!("{}/{} mutations rejected\n", muts.len() - accepted.len(), muts.len()));
            Ok(Outcome { text, ok: accepted.is_empty() })
        }
    }
}

pub fn cmd_loelim(
    cfg: &RunConfig,
    family: LoFamily,
    n: usize,
    table1: bool,
    signs: Option<&str>,
    format: Format,
) -> Result<Outcome> {
    match family {
        LoFamily::Genus1 => {
            if table1 && n != 5 {
                return Err(invalid("--table1 needs n = 5"));
            }
            let p = genus_one_presentation(n)?;
            let rep = eliminate(&p, &p.env);
            let orbits = orbit_reduce(&rep, SymmetryAction::default());
            let mut text = cfg.header(None, if n == 5 { "Table 1" } else { "genus-one presentation" });
            match format {
                Format::Json => {
                    let rows: Vec<_> = rep
                        .rows
                        .iter()
                        .map(|r| match &r.verdict {
                            PatternVerdict::Eliminated { relator, witness, .. } => json!({"pattern": r.index, "signs": r.pattern.to_string(), "verdict": "ELIMINATED", "witness": relator, "sign": witness.label()}),
                            PatternVerdict::Survives => json!({"pattern": r.index, "signs": r.pattern.to_string(), "verdict": "SURVIVES"}),
                        })
                        .collect();
                    let orb: Vec<_> =
                        orbits.iter().map(|o| json!({"canonical": o.canonical.to_string(), "members": o.members})).collect();
                    let v = json!({"family": "genus1", "n": n, "seed": cfg.seed, "version": env!("CARGO_PKG_VERSION"), "rows": rows, "orbits": orb});
                    text = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Csv => text.push_str(&rep.to_csv()),
                Format::Text if table1 => text.push_str(&rep.to_table()),
                Format::Text => {
                    text.push_str(&rep.to_table());
                    for o in &orbits {
                        let m: Vec<String> = o.members.iter().map(|i| i.to_string()).collect();
                        text.push_str(&format!("orbit {} <- {}\n", o.canonical, m.join(",")));
                    }
                }
            }
            Ok(Outcome::pass(text))
        }
        LoFamily::Genus2 => {
            let cases: Vec<[i64; 4]> = match signs {
                Some(s) => vec![parse_signs(s)?],
                None => vec![
                    [1, 1, 1, 1],
                    [1, 1, -1, 1],
                    [-1, 1, -1, 1],
                    [-1, -1, -1, 1],
                    [-1, 1, 1, 1],
                    [-1, 1, -1, -1],
                    [1, -1, -1, 1],
                    [1, 1, -1, -1],
                ],
            };
            let mut text = cfg.header(None, "level-0 sign analysis");
            let mut json_rows = Vec::new();
            for s in cases {
                let r = genus2_level0(s[0], s[1], s[2], s[3])?;
                match format {
                    Format::Json => {
                        let pats: Vec<_> = r
                            .patterns
                            .iter()
                            .map(|p| {
                                let caps: BTreeMap<_, _> =
                                    p.capitals.iter().map(|(n, s, _)| (n.clone(), s.label())).collect();
                                json!({"pattern": p.pattern.to_string(), "capitals": caps, "closed": p.closed()})
                            })
                            .collect();
                        json_rows.push(json!({"signs": s, "case": r.case, "mirror": r.mirrored, "patterns": pats, "residual": r.residual().len()}));
                    }
                    Format::Csv => {
                        for p in &r.patterns {
                            let caps: Vec<String> = p.capitals.iter().map(|(_, s, _)| s.label().to_string()).collect();
                            text.push_str(&format!(
                                "{},{},{},{}\n",
                                r.case,
                                p.pattern,
                                caps.join(","),
                                if p.closed() { "CLOSED" } else { "OPEN" }
                            ));
                        }
                    }
                    Format::Text => {
                        text.push_str(&r.to_text());
                        text.push_str(&format!("  residual: {} of {} patterns open\n", r.residual().len(), r.patterns.len()));
                    }
                }
            }
            if format == Format::Json {
                let v = json!({"family": "genus2", "seed": cfg.seed, "version": env!("CARGO_PKG_VERSION"), "cases": json_rows});
                text = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            }
            Ok(Outcome::pass(text))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_line() {
        let o = cmd_fraction(&[-2, 2, -2, 2], false, false).unwrap();
        assert_eq!(o.text, "-5/4 (knot 5_1 class, det 5)\n");
        assert_eq!(cmd_fraction(&[-2, 2, -2, 2], true, false).unwrap().text, "[2,-2,2,-2]\n");
        let e = cmd_fraction(&[2, 0, 2], false, false).err().unwrap();
        assert!(e.to_string().contains("index 2"));
    }

    #[test]
    fn h1_methods() {
        assert_eq!(cmd_h1(&[-2, 2, -2, 2], 3, Method::All).unwrap().text, "snf,oracle,table: 1,1,1 AGREE\n");
        assert_eq!(cmd_h1(&[2, -2], 5, Method::Oracle).unwrap().text, "1\n");
        assert_eq!(cmd_h1(&[2, 2], 3, Method::Oracle).unwrap().text, "16\n");
        assert!(matches!(cmd_h1(&[2, 2], 3, Method::Table), Err(Error::UnsupportedRegime(_))));
    }

    #[test]
    fn config_file() {
        let c = RunConfig::from_text("grid = 1..2\nseed = 7 # comment\nformat = csv\n").unwrap();
        assert_eq!(c.grid, (1, 2));
        assert_eq!(c.seed, 7);
        assert_eq!(c.format, Format::Csv);
        assert!(matches!(RunConfig::from_text("grid 1..2"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_range("3..1").is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(parse_signs("+,+,-,+").unwrap(), [1, 1, -1, 1]);
        assert!(parse_signs("+,x").is_err());
    }
}
