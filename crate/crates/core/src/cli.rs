//! The `odc` command line: `construct`, `verify`, `search` and `coverage`.
//!
//! Exit codes are stable: 0 success, 1 a verification failed, 2 invalid or
//! ineligible input.
//!
//! Text output follows the path file format: data lines are the emitted
//! paths and everything else is a `#` comment, so a text dump from
//! `construct` can be fed straight back to `verify`. `--format machine`
//! prints one JSON document per invocation instead.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::construct::{self, witness_certificate, ConstructError, WitnessPair};
use crate::coverage::{self, CoverageVerdict};
use crate::fixture;
use crate::odc::{is_odc_starter, verify_odc, OdcCollection, VerificationReport, Violation};
use crate::path::{edge_lengths, is_terrace, VertexPath};
use crate::search::{self, Pruning, SearchConfig, SearchError};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "odc",
    version,
    about = "Orthogonal double covers of K_n by Hamiltonian paths"
)]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the discrete-logarithm ODC-starter for odd n with 2n+1 prime.
    Construct(ConstructArgs),
    /// Check the paths in a file.
    Verify(VerifyArgs),
    /// Enumerate ODC-starters of Z_n exhaustively.
    Search(SearchArgs),
    /// Report which existence results cover n.
    Coverage(CoverageArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    Starter,
    Odc,
    Witnesses,
    All,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub n: usize,
    /// Primitive root of 2n+1 (default: the smallest).
    #[arg(long)]
    pub root: Option<u64>,
    #[arg(long, value_enum, default_value_t = Emit::Starter)]
    pub emit: Emit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Terrace,
    Starter,
    Odc,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// What to check (default: starter for a single path, odc otherwise).
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PruneArg {
    None,
    Length,
    Distance,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = search::DEFAULT_CEILING)]
    pub ceiling: usize,
    /// One representative per translation/reversal class.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub canonicalize: bool,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = PruneArg::Distance)]
    pub prune: PruneArg,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["n", "range"])))]
pub struct CoverageArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub range: Option<Vec<u64>>,
    /// Only list values covered by the construction and nothing else.
    #[arg(long)]
    pub new_only: bool,
}

#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: serde_json::Value,
    pub result: serde_json::Value,
    pub verified: bool,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
}

impl Io<'_> {
    fn envelope(
        &mut self,
        command: &'static str,
        inputs: serde_json::Value,
        result: serde_json::Value,
        verified: bool,
    ) -> std::io::Result<()> {
        let env = OutputEnvelope {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            result,
            verified,
        };
        serde_json::to_writer_pretty(&mut *self.out, &env)?;
        writeln!(self.out)
    }

    fn invalid(&mut self, msg: impl std::fmt::Display) -> std::io::Result<i32> {
        writeln!(self.err, "error: {msg}")?;
        Ok(EXIT_INVALID)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut io = Io {
        out,
        err,
        format: cli.format,
    };
    let res = match &cli.command {
        Command::Construct(a) => cmd_construct(&mut io, a),
        Command::Verify(a) => cmd_verify(&mut io, a),
        Command::Search(a) => cmd_search(&mut io, a),
        Command::Coverage(a) => cmd_coverage(&mut io, a),
    };
    res.unwrap_or_else(|e| {
        let _ = writeln!(io.err, "error: {e}");
        EXIT_FAILED
    })
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn witness_json(w: &WitnessPair) -> serde_json::Value {
    json!({
        "k": w.k, "x": w.x, "u": w.u, "i": w.i, "j": w.j,
        "pos_i": w.pos_i, "pos_j": w.pos_j,
        "e_i": [w.e_i.lo(), w.e_i.hi()], "e_j": [w.e_j.lo(), w.e_j.hi()],
        "length": w.length.get(),
    })
}

fn cmd_construct(io: &mut Io<'_>, a: &ConstructArgs) -> std::io::Result<i32> {
    let inst = match construct::ap_terrace(a.n, a.root) {
        Ok(inst) => inst,
        Err(e @ (ConstructError::NotEligible { .. } | ConstructError::InvalidRoot(_))) => {
            return io.invalid(e);
        }
        Err(e) => {
            writeln!(io.err, "error: {e}")?;
            return Ok(EXIT_FAILED);
        }
    };
    let starter = inst.terrace();
    let lengths: Vec<usize> = edge_lengths(starter).into_iter().map(|l| l.get()).collect();
    let (starter_ok, profile) = is_odc_starter(starter);
    let distances = profile.map(|p| p.pairs()).unwrap_or_default();
    let mut verified = is_terrace(starter).0 && starter_ok;

    let want_odc = matches!(a.emit, Emit::Odc | Emit::All);
    let want_witnesses = matches!(a.emit, Emit::Witnesses | Emit::All);
    let odc = want_odc.then(|| inst.odc());
    if let Some(c) = &odc {
        verified &= verify_odc(c).is_ok();
    }
    let witnesses = if want_witnesses {
        match witness_certificate(&inst) {
            Ok(cert) => Some(cert.witnesses),
            Err(e) => {
                writeln!(io.err, "error: {e}")?;
                verified = false;
                None
            }
        }
    } else {
        None
    };

    match io.format {
        Format::Machine => {
            let mut result = json!({
                "n": inst.n(),
                "root": inst.root().g(),
                "modulus": inst.modulus(),
                "starter": starter,
                "lengths": lengths,
                "distances": distances,
            });
            if let Some(c) = &odc {
                result["odc"] = json!(c.paths());
            }
            if let Some(ws) = &witnesses {
                result["witnesses"] = ws.iter().map(witness_json).collect();
            }
            io.envelope(
                "construct",
                json!({"n": a.n, "root": a.root, "emit": a.emit}),
                result,
                verified,
            )?;
        }
        Format::Text => {
            let out = &mut io.out;
            writeln!(
                out,
                "# construct n={} root={} modulus={}",
                inst.n(),
                inst.root().g(),
                inst.modulus()
            )?;
            writeln!(out, "# lengths: {}", join(&lengths))?;
            writeln!(
                out,
                "# distances: {}",
                join(distances.iter().map(|(l, k)| format!("{l}->{k}")))
            )?;
            match &odc {
                Some(c) => fixture::write_paths(&mut *out, c.paths())?,
                None => writeln!(out, "{starter}")?,
            }
            for w in witnesses.iter().flatten() {
                writeln!(
                    out,
                    "# witness k={} x={} u={} i={} j={} positions={},{} e_i={}-{} e_j={}-{} length={}",
                    w.k,
                    w.x,
                    w.u,
                    w.i,
                    w.j,
                    w.pos_i,
                    w.pos_j,
                    w.e_i.lo(),
                    w.e_i.hi(),
                    w.e_j.lo(),
                    w.e_j.hi(),
                    w.length
                )?;
            }
            writeln!(out, "# verified={verified}")?;
        }
    }
    Ok(if verified { EXIT_OK } else { EXIT_FAILED })
}

fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::EdgeCount { edge, count } => {
            format!("edge {}-{} lies in {count} paths", edge.lo(), edge.hi())
        }
        Violation::PairOverlap {
            first,
            second,
            shared,
        } => {
            format!("paths {first} and {second} share {shared} edges")
        }
    }
}

#[derive(Serialize)]
struct PathCheck {
    index: usize,
    ok: bool,
    problems: Vec<String>,
}

fn check_path(index: usize, p: &VertexPath, mode: Mode) -> PathCheck {
    let (terrace, lengths) = is_terrace(p);
    let mut problems: Vec<String> = lengths
        .counts()
        .filter(|&(_, c)| c != 2)
        .map(|(l, c)| format!("length {l} count {c}"))
        .collect();
    if terrace && mode == Mode::Starter {
        let (ok, profile) = is_odc_starter(p);
        if !ok {
            let profile = profile.expect("terrace");
            let m = p.half();
            let mut hits = vec![0usize; m + 1];
            for (_, k) in profile.pairs() {
                hits[k] += 1;
            }
            problems.extend(
                (1..=m)
                    .filter(|&k| hits[k] != 1)
                    .map(|k| format!("distance {k} realized {} times", hits[k])),
            );
        }
    }
    PathCheck {
        index,
        ok: problems.is_empty(),
        problems,
    }
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    json!({
        "double_cover_ok": r.double_cover_ok,
        "orthogonality_ok": r.orthogonality_ok,
        "violations": r.violations,
    })
}

fn cmd_verify(io: &mut Io<'_>, a: &VerifyArgs) -> std::io::Result<i32> {
    let paths = match fixture::read_paths(&a.file) {
        Ok(p) if p.is_empty() => return io.invalid(format!("{}: no paths", a.file.display())),
        Ok(p) => p,
        Err(e) => return io.invalid(format!("{}: {e}", a.file.display())),
    };
    let mode = a.mode.unwrap_or(if paths.len() == 1 {
        Mode::Starter
    } else {
        Mode::Odc
    });
    let inputs = json!({"file": a.file.display().to_string(), "mode": mode});

    let (ok, result, lines) = match mode {
        Mode::Terrace | Mode::Starter => {
            let checks: Vec<_> = paths
                .iter()
                .enumerate()
                .map(|(i, p)| check_path(i, p, mode))
                .collect();
            let ok = checks.iter().all(|c| c.ok);
            let lines = checks
                .iter()
                .map(|c| match c.ok {
                    true => format!("path {}: ok", c.index),
                    false => format!("path {}: {}", c.index, c.problems.join("; ")),
                })
                .collect::<Vec<_>>();
            (ok, json!(checks), lines)
        }
        Mode::Odc => {
            let c = match OdcCollection::new(paths) {
                Ok(c) => c,
                Err(e) => return io.invalid(e),
            };
            let r = verify_odc(&c);
            let mut lines = vec![
                format!(
                    "double cover: {}",
                    if r.double_cover_ok { "ok" } else { "FAILED" }
                ),
                format!(
                    "orthogonality: {}",
                    if r.orthogonality_ok { "ok" } else { "FAILED" }
                ),
            ];
            lines.extend(r.violations.iter().map(describe_violation));
            (r.is_ok(), report_json(&r), lines)
        }
    };

    match io.format {
        Format::Machine => io.envelope("verify", inputs, result, ok)?,
        Format::Text => {
            for l in lines {
                writeln!(io.out, "{l}")?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_search(io: &mut Io<'_>, a: &SearchArgs) -> std::io::Result<i32> {
    let cfg = SearchConfig {
        n: a.n,
        canonicalize: a.canonicalize,
        limit: a.limit,
        pruning: match a.prune {
            PruneArg::None => Pruning::None,
            PruneArg::Length => Pruning::LengthCount,
            PruneArg::Distance => Pruning::LengthAndDistance,
        },
        ceiling: a.ceiling,
        parallel: true,
    };
    let res = match search::enumerate_starters(&cfg) {
        Ok(r) => r,
        Err(e @ (SearchError::BadOrder(_) | SearchError::AboveCeiling { .. })) => {
            return io.invalid(e)
        }
        Err(e) => {
            writeln!(io.err, "error: {e}")?;
            return Ok(EXIT_FAILED);
        }
    };
    let ms = res.wall_time.as_secs_f64() * 1e3;
    writeln!(
        io.err,
        "# n={} starters={} nodes={} time={ms:.1}ms",
        a.n,
        res.starters.len(),
        res.nodes_explored
    )?;
    match io.format {
        Format::Machine => io.envelope(
            "search",
            json!({"n": a.n, "ceiling": a.ceiling, "canonicalize": a.canonicalize, "limit": a.limit}),
            json!({
                "starters": res.starters,
                "count": res.starters.len(),
                "nodes_explored": res.nodes_explored,
            }),
            true,
        )?,
        Format::Text => fixture::write_paths(&mut *io.out, &res.starters)?,
    }
    Ok(EXIT_OK)
}

fn verdict_line(v: &CoverageVerdict) -> String {
    let thm1 = v
        .thm1
        .as_ref()
        .map_or("none".to_string(), |c| c.to_string());
    let mut line = format!(
        "n={} thm1={{{thm1}}} thm2={} (2n+1={}) new={}",
        v.n,
        v.thm2,
        v.modulus(),
        v.is_new
    );
    if !v.families.is_empty() {
        let fams: Vec<_> = v.families.iter().map(|f| f.to_string()).collect();
        line.push_str(&format!(" families={{{}}}", fams.join("; ")));
    }
    line
}

fn cmd_coverage(io: &mut Io<'_>, a: &CoverageArgs) -> std::io::Result<i32> {
    let (inputs, verdicts) = match (a.n, a.range.as_deref()) {
        (Some(n), _) => match coverage::classify(n) {
            Ok(v) => (json!({"n": n, "new_only": a.new_only}), vec![v]),
            Err(e) => return io.invalid(e),
        },
        (None, Some(&[lo, hi])) => {
            if lo > hi {
                return io.invalid(format!("empty range {lo}..{hi}"));
            }
            let lo3 = lo.max(3) | 1;
            let vs: Vec<_> = (lo3..=hi.min(coverage::MAX_N))
                .step_by(2)
                .map(|n| coverage::classify(n).expect("odd and in range"))
                .collect();
            (json!({"range": [lo, hi], "new_only": a.new_only}), vs)
        }
        _ => return io.invalid("give --n or --range LO HI"),
    };
    let shown: Vec<_> = verdicts
        .into_iter()
        .filter(|v| !a.new_only || v.is_new)
        .collect();
    let verified = shown
        .iter()
        .all(|v| v.thm1.as_ref().is_none_or(|c| c.is_valid_for(v.n)));

    match io.format {
        Format::Machine => {
            let result = match (a.n, shown.as_slice()) {
                (Some(_), [one]) => json!(one),
                _ => json!(shown),
            };
            io.envelope("coverage", inputs, result, verified)?;
        }
        Format::Text => {
            for v in &shown {
                writeln!(io.out, "{}", verdict_line(v))?;
            }
        }
    }
    Ok(if verified { EXIT_OK } else { EXIT_FAILED })
}
