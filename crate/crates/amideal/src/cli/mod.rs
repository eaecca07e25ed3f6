//! Batch command-line front end. `run` returns the process exit code:
//! 0 ok/holds, 1 fails, 2 parse or usage, 3 evaluation or hypothesis error,
//! 4 indeterminate or unsupported, 5 corpus failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::corpus::{report_string, run_corpus, suites::split_ok, CorpusError, Status};
use crate::ideals::{member, parse_ideal, IdealError};
use crate::majorization::{apply_matrix, lemma31_split, markus_matrix, MajError};
use crate::num::{fmt_decimal, fmt_rat, parse_rat, Interval, Rat};
use crate::parse::{parse_seq, ParseError};
use crate::relations::{Config, Decision, Verdict, DEFAULT_HORIZON};
use crate::seq::Prefix;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;
pub const EXIT_CORPUS: i32 = 5;

/// Environment variable overriding the default horizon.
pub const HORIZON_ENV: &str = "AMIDEAL_DEFAULT_HORIZON";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "amideal", version, about = "Exact computations with arithmetic-mean ideals of sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the first n terms of a sequence expression.
    Eval {
        expr: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// fixed-point digits for table output
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Horizon verdict for membership of a sequence in an ideal.
    Member {
        #[arg(long)]
        probe: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Run registered checks and write the JSON report.
    Corpus {
        #[arg(long, conflicts_with = "only")]
        all: bool,
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// report path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split xi into two parts dominating eta and mu in partial sums.
    Split {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Substochastic P with P xi = eta for a majorized pair.
    Markus {
        #[arg(long)]
        eta: String,
        #[arg(long)]
        xi: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn parse_fail(text: &str, e: &ParseError) -> Failure {
    fail(EXIT_PARSE, format!("parse error\n{}", e.diagnostic(text)))
}

type Out<'a> = &'a mut dyn Write;

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let res = match cli.cmd {
        Cmd::Eval { expr, n, format, decimal } => cmd_eval(&expr, n, format, decimal, out),
        Cmd::Member { probe, ideal, horizon, format } => cmd_member(&probe, &ideal, horizon, format, out),
        Cmd::Corpus { all: _, only, seed, out: path } => cmd_corpus(&only, seed, path.as_deref(), out),
        Cmd::Split { xi, eta, mu, format } => cmd_split(&xi, &eta, &mu, format, out),
        Cmd::Markus { eta, xi, format } => cmd_markus(&eta, &xi, format, out),
    };
    match res {
        Ok(code) => code,
        Err(f) => {
            if !f.msg.is_empty() {
                let _ = writeln!(err, "error: {}", f.msg);
            }
            f.code
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return fail(EXIT_OK, "");
    }
    fail(EXIT_EVAL, format!("i/o: {e}"))
}

/// Horizon from the flag, else the environment, else the built-in default.
pub fn default_horizon() -> usize {
    std::env::var(HORIZON_ENV).ok().and_then(|s| s.trim().parse().ok()).filter(|&n| n > 0).unwrap_or(DEFAULT_HORIZON)
}

fn cell(v: &Interval, decimal: Option<usize>) -> String {
    let f = |r: &Rat| match decimal {
        Some(d) => fmt_decimal(r, d),
        None => fmt_rat(r),
    };
    match v.exact() {
        Some(r) => f(r),
        None => format!("[{}, {}]", f(&v.lo), f(&v.hi)),
    }
}

fn cmd_eval(expr: &str, n: usize, format: OutputFormat, decimal: Option<usize>, out: Out) -> Result<i32, Failure> {
    let s = parse_seq(expr).map_err(|e| parse_fail(expr, &e))?;
    if n == 0 {
        return Err(fail(EXIT_PARSE, "--n must be at least 1"));
    }
    let vals = s.values(n).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
    match format {
        OutputFormat::Table => {
            let w = n.to_string().len();
            for (i, v) in vals.iter().enumerate() {
                writeln!(out, "{:>w$}  {}", i + 1, cell(v, decimal)).map_err(io)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "n,lo,hi").map_err(io)?;
            for (i, v) in vals.iter().enumerate() {
                writeln!(out, "{},{},{}", i + 1, fmt_rat(&v.lo), fmt_rat(&v.hi)).map_err(io)?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = vals
                .iter()
                .enumerate()
                .map(|(i, v)| match v.exact() {
                    Some(r) => json!({ "n": i + 1, "value": fmt_rat(r) }),
                    None => json!({ "n": i + 1, "lo": fmt_rat(&v.lo), "hi": fmt_rat(&v.hi) }),
                })
                .collect();
            let doc = json!({ "expr": s.to_string(), "values": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes")).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn verdict_code(v: &Verdict) -> i32 {
    match v.decision {
        Decision::Holds => EXIT_OK,
        Decision::Fails => EXIT_FAILS,
        Decision::Indeterminate => EXIT_UNDECIDED,
    }
}

fn write_verdict(v: &Verdict, format: OutputFormat, out: Out) -> std::io::Result<()> {
    let w = v.witness.as_ref();
    let m = w.and_then(|w| w.m).map(|m| m.to_string()).unwrap_or_default();
    let c = w.and_then(|w| w.c.as_ref()).map(fmt_rat).unwrap_or_default();
    let idx = |xs: &[usize]| xs.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    match format {
        OutputFormat::Table => {
            writeln!(out, "decision  {}", v.decision)?;
            writeln!(out, "horizon   {}", v.horizon)?;
            if w.is_some() {
                writeln!(out, "witness   m={} C={}", if m.is_empty() { "-" } else { &m }, if c.is_empty() { "-" } else { &c })?;
            }
            if !v.refuting.is_empty() {
                writeln!(out, "refuting  {}", idx(&v.refuting))?;
            }
            writeln!(out, "margin    {}", fmt_decimal(&v.margin, 6))?;
            writeln!(out, "bounds    m<={} k<={}", v.bounds.m_max, v.bounds.k_max)?;
            writeln!(out, "note      {}", v.note)
        }
        OutputFormat::Csv => {
            writeln!(out, "decision,horizon,m,c,refuting,margin,m_max,k_max,note")?;
            let note = v.note.replace('"', "\"\"");
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},\"{}\"",
                v.decision,
                v.horizon,
                m,
                c,
                idx(&v.refuting),
                fmt_rat(&v.margin),
                v.bounds.m_max,
                v.bounds.k_max,
                note
            )
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializes")),
    }
}

fn cmd_member(probe: &str, ideal: &str, horizon: Option<usize>, format: OutputFormat, out: Out) -> Result<i32, Failure> {
    let p = parse_seq(probe).map_err(|e| parse_fail(probe, &e))?;
    let e = parse_ideal(ideal).map_err(|e| parse_fail(ideal, &e))?;
    let cfg = Config::with_horizon(horizon.unwrap_or_else(default_horizon));
    if cfg.horizon < 2 * cfg.n0 {
        return Err(fail(EXIT_PARSE, format!("--horizon must be at least {}", 2 * cfg.n0)));
    }
    let v = match member(&p, &e, &cfg) {
        Ok(v) => v,
        Err(e @ (IdealError::UnsupportedIdeal(_) | IdealError::GuardIndeterminate(_) | IdealError::NotPrincipal(_))) => {
            return Err(fail(EXIT_UNDECIDED, e.to_string()))
        }
        Err(e) => return Err(fail(EXIT_EVAL, e.to_string())),
    };
    write_verdict(&v, format, out).map_err(io)?;
    Ok(verdict_code(&v))
}

fn repro_path(report: Option<&Path>, id: &str) -> PathBuf {
    let name = format!("{}.repro.json", id.replace(['/', '\\'], "_"));
    match report {
        Some(p) => {
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
            p.with_file_name(format!("{stem}.{name}"))
        }
        None => PathBuf::from(name),
    }
}

fn cmd_corpus(only: &[String], seed: u64, path: Option<&Path>, out: Out) -> Result<i32, Failure> {
    let sel = if only.is_empty() { None } else { Some(only) };
    let results = run_corpus(sel, &Config::default(), seed).map_err(|e| match e {
        CorpusError::UnknownCheckId(_) => fail(EXIT_PARSE, e.to_string()),
    })?;
    let text = report_string(seed, &results);
    match path {
        Some(p) => std::fs::write(p, &text).map_err(io)?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    for r in &results {
        if let Some(rep) = &r.repro {
            let doc = json!({ "id": r.id, "seed": seed, "instance": rep });
            let body = serde_json::to_string_pretty(&doc).expect("serializes") + "\n";
            std::fs::write(repro_path(path, &r.id), body).map_err(io)?;
        }
    }
    let ok = results.iter().all(|r| r.status == Status::Pass);
    Ok(if ok { EXIT_OK } else { EXIT_CORPUS })
}

/// Comma-separated rationals, or `@path` for a file of comma/whitespace-separated ones.
fn parse_vector(flag: &str, text: &str) -> Result<Prefix, Failure> {
    let body = match text.strip_prefix('@') {
        Some(p) => std::fs::read_to_string(p).map_err(|e| fail(EXIT_PARSE, format!("--{flag}: cannot read {p}: {e}")))?,
        None => text.to_string(),
    };
    let mut v = Vec::new();
    let mut pos = 0;
    for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
        if !tok.is_empty() {
            let r = parse_rat(tok).map_err(|m| {
                let e = ParseError { pos, expected: format!("a rational ({m})") };
                fail(EXIT_PARSE, format!("--{flag}\n{}", e.diagnostic(body.trim_end())))
            })?;
            v.push(r);
        }
        pos += tok.len() + 1;
    }
    if v.is_empty() {
        return Err(fail(EXIT_PARSE, format!("--{flag}: empty vector")));
    }
    Ok(Prefix::new(v))
}

fn maj_fail(e: MajError) -> Failure {
    match e {
        MajError::HypothesisViolated(k) => fail(EXIT_EVAL, format!("hypothesis violated at k={k}")),
        e => fail(EXIT_EVAL, e.to_string()),
    }
}

fn join(p: &Prefix) -> String {
    p.values().iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

fn strings(p: &Prefix) -> Vec<String> {
    p.values().iter().map(fmt_rat).collect()
}

fn cmd_split(xi: &str, eta: &str, mu: &str, format: OutputFormat, out: Out) -> Result<i32, Failure> {
    let (x, h, m) = (parse_vector("xi", xi)?, parse_vector("eta", eta)?, parse_vector("mu", mu)?);
    let (a, b) = lemma31_split(&x, &h, &m).map_err(maj_fail)?;
    if !split_ok(&x, &h, &m, &a, &b) {
        return Err(fail(EXIT_EVAL, "internal: split post-conditions failed"));
    }
    match format {
        OutputFormat::Table => {
            writeln!(out, "eta~  {}", join(&a)).map_err(io)?;
            writeln!(out, "mu~   {}", join(&b)).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "k,eta,mu").map_err(io)?;
            for (k, (p, q)) in a.values().iter().zip(b.values()).enumerate() {
                writeln!(out, "{},{},{}", k + 1, fmt_rat(p), fmt_rat(q)).map_err(io)?;
            }
        }
        OutputFormat::Json => {
            let doc = json!({ "eta": strings(&a), "mu": strings(&b) });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes")).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_markus(eta: &str, xi: &str, format: OutputFormat, out: Out) -> Result<i32, Failure> {
    let (h, x) = (parse_vector("eta", eta)?, parse_vector("xi", xi)?);
    let p = markus_matrix(&h, &x).map_err(maj_fail)?;
    let image = apply_matrix(&p, &x).map_err(maj_fail)?;
    if p.validate().is_err() || image != h {
        return Err(fail(EXIT_EVAL, "internal: matrix post-conditions failed"));
    }
    let t = p.triplets();
    match format {
        OutputFormat::Table => {
            let cells: Vec<String> = t.iter().map(|(i, j, v)| format!("({i},{j},{})", fmt_rat(v))).collect();
            writeln!(out, "{}", cells.join(",")).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "row,col,value").map_err(io)?;
            for (i, j, v) in &t {
                writeln!(out, "{i},{j},{}", fmt_rat(v)).map_err(io)?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = t.iter().map(|(i, j, v)| json!([i, j, fmt_rat(v)])).collect();
            let doc = json!({ "nrows": p.nrows(), "ncols": p.ncols(), "triplets": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes")).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("amideal").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn eval_rows() {
        let (c, o, _) = go(&["eval", "am(e1)", "--n", "4"]);
        assert_eq!(c, 0);
        assert_eq!(o, "1  1\n2  1/2\n3  1/3\n4  1/4\n");
        let (_, o, _) = go(&["eval", "min(omega,omega)", "--n", "2", "--format", "csv"]);
        assert_eq!(o, "n,lo,hi\n1,1,1\n2,1/2,1/2\n");
    }

    #[test]
    fn parse_error_has_caret() {
        let (c, _, e) = go(&["eval", "am(omega", "--n", "2"]);
        assert_eq!(c, EXIT_PARSE);
        assert!(e.contains("am(omega\n        ^"), "{e}");
    }

    #[test]
    fn split_and_markus() {
        let (c, o, _) = go(&["split", "--xi", "2,1", "--eta", "1,1", "--mu", "1,0"]);
        assert_eq!((c, o.as_str()), (0, "eta~  1,1\nmu~   1,0\n"));
        let (c, _, e) = go(&["split", "--xi", "1,0", "--eta", "1,0", "--mu", "1,0"]);
        assert_eq!(c, EXIT_EVAL);
        assert!(e.contains("hypothesis violated at k=1"));
        let (c, o, _) = go(&["markus", "--eta", "1/2,1/2", "--xi", "1,0"]);
        assert_eq!((c, o.as_str()), (0, "(1,1,1/2),(2,1,1/2)\n"));
    }

    #[test]
    fn bad_vector_entry() {
        let (c, _, e) = go(&["markus", "--eta", "1,x", "--xi", "1,0"]);
        assert_eq!(c, EXIT_PARSE);
        assert!(e.contains("1,x\n  ^"), "{e}");
    }
}
