//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors. All big integers are emitted as decimal strings in JSON.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::critgroup::{
    closed_form_group, group_of_graph, group_via_relations, subgroup_check,
    verify_reduction_pipeline, AbelianGroup,
};
use crate::error::{invalid, Error, Result};
use crate::exactla::snf;
use crate::graph::{c4xcn, Multigraph};
use crate::matrix::IntegerMatrix;
use crate::seq::{
    derived_terms, observed_valuation, predicted_valuation, u_terms, v_terms, Family, SeqKind,
};
use crate::treecount::{tree_count_closed, tree_count_report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "c4cn", version, about = "Critical groups and spanning trees of C4 x Cn")]
pub struct RunConfig {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Relative tolerance for the trigonometric tree-count check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Worker threads for sweeps (0 = one per available core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical group of C4 x Cn.
    Group {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Spanning-tree count of C4 x Cn.
    Treecount {
        n: usize,
        #[arg(long, value_enum)]
        check: Option<TreeCheck>,
    },
    /// Terms 0..=N of e, f, h, g, or u/v with parameter --m.
    Seq {
        #[arg(value_enum)]
        name: SeqName,
        #[arg(long)]
        upto: usize,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Compare predicted and observed 2- and 3-adic valuations of e_n, f_n for 2 <= n <= N.
    Valuations {
        #[arg(long)]
        upto: u64,
    },
    /// Whether K(C4 x C_n1) divides K(C4 x C_n2) factor by factor.
    Subgroup { n1: usize, n2: usize },
    /// Smith normal form of a matrix file.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
        /// Also print the unimodular transforms P and Q.
        #[arg(long)]
        transforms: bool,
    },
    /// Critical group of a graph given as an edge list.
    GraphGroup {
        #[arg(long)]
        edges: PathBuf,
    },
    /// Three-way agreement sweep over a range of n (inclusive, e.g. 3..12).
    Verify {
        #[arg(long)]
        range: NRange,
        /// Also replay the explicit reduction for each n.
        #[arg(long)]
        pipeline: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Snf,
    Relations,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeCheck {
    Matrix,
    Trig,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    E,
    F,
    H,
    G,
    U,
    V,
}

/// Inclusive range of `n`, written `A..B` or `A..=B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NRange(pub RangeInclusive<usize>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s
            .split_once("..=")
            .or_else(|| s.split_once(".."))
            .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let lo: usize = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
        let hi: usize = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
        if lo < 3 {
            return Err(format!("lower bound must be at least 3, got {lo}"));
        }
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        Ok(NRange(lo..=hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The JSON document every subcommand produces; absent fields are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_count: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckEntry>>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    fn with_group(mut self, k: &AbelianGroup) -> Self {
        self.invariant_factors = Some(strings(k.invariant_factors()));
        self.order = Some(k.order().to_string());
        self
    }

    fn all_passed(&self) -> bool {
        self.checks.iter().flatten().all(|c| c.pass)
    }
}

fn strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

/// Result of a `verify` sweep.
#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub range: RangeInclusive<usize>,
    pub statuses: Vec<CheckEntry>,
    pub first_failure: Option<usize>,
    pub elapsed: Duration,
}

fn verify_one(n: usize, pipeline: bool) -> CheckEntry {
    let name = format!("n={n}");
    let outcome = (|| -> Result<(bool, String)> {
        let closed = closed_form_group(n)?;
        let relations = group_via_relations(n)?;
        let full = group_of_graph(&c4xcn(n)?)?;
        let trees = tree_count_closed(n)?;
        let mut problems = Vec::new();
        if relations != closed {
            problems.push(format!("relations route gives {relations}"));
        }
        if full != closed {
            problems.push(format!("Laplacian SNF gives {full}"));
        }
        if *closed.order() != trees {
            problems.push(format!("order {} != tree count {trees}", closed.order()));
        }
        if pipeline {
            let report = verify_reduction_pipeline(n);
            if let Some(bad) = report.first_failure() {
                problems.push(format!("pipeline stage {} failed: {}", bad.name, bad.detail));
            }
        }
        if problems.is_empty() {
            Ok((true, closed.to_string()))
        } else {
            Ok((false, format!("closed form gives {closed}; {}", problems.join("; "))))
        }
    })();
    match outcome {
        Ok((pass, detail)) => check(name, pass, detail),
        Err(e) => check(name, false, e.to_string()),
    }
}

/// Runs the three-way agreement (and optionally the reduction replay) for
/// every `n` in `range`. Output is ordered by `n` regardless of scheduling.
pub fn verify_range(range: RangeInclusive<usize>, pipeline: bool, threads: usize) -> VerifySummary {
    let start = Instant::now();
    let ns: Vec<usize> = range.clone().collect();
    let statuses = crate::par::with_threads(threads, || {
        crate::par::map(&ns, |&n| verify_one(n, pipeline))
    });
    let first_failure = statuses
        .iter()
        .zip(&ns)
        .find(|(s, _)| !s.pass)
        .map(|(_, &n)| n);
    VerifySummary {
        range,
        statuses,
        first_failure,
        elapsed: start.elapsed(),
    }
}

fn need_n(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(invalid(format!("n must be at least 3, got {n}")));
    }
    Ok(n)
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn resolve_threads(threads: usize) -> usize {
    if threads > 0 {
        return threads;
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Executes a parsed configuration, returning the report and the text
/// rendering. Errors are input errors (exit code 2).
pub fn execute(cfg: &RunConfig) -> Result<(Report, String)> {
    let threads = resolve_threads(cfg.threads);
    let mut text = String::new();
    let report = match &cfg.command {
        Command::Group { n, method } => {
            let n = need_n(*n)?;
            let (k, label) = match method {
                Method::Closed => (closed_form_group(n)?, "closed"),
                Method::Relations => (group_via_relations(n)?, "relations"),
                Method::Snf => (group_of_graph(&c4xcn(n)?)?, "snf"),
            };
            text += &format!("K(C4 x C{n}) = {k}\n");
            text += &format!("invariant factors: {}\n", strings(k.invariant_factors()).join(" "));
            text += &format!("order: {}\n", k.order());
            let mut r = Report::new("group").with_group(&k);
            r.n = Some(n.to_string());
            r.method = Some(label.to_string());
            r
        }
        Command::Treecount { n, check: which } => {
            let n = need_n(*n)?;
            if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
                return Err(invalid("tolerance must be positive"));
            }
            let with_matrix = matches!(which, Some(TreeCheck::Matrix | TreeCheck::All));
            let with_trig = matches!(which, Some(TreeCheck::Trig | TreeCheck::All));
            let rep = tree_count_report(n, with_matrix, with_trig, cfg.tolerance)?;
            text += &format!("spanning trees of C4 x C{n}: {}\n", rep.closed_form);
            let mut checks = Vec::new();
            if let Some(m) = &rep.matrix_tree {
                let ok = *m == rep.closed_form;
                text += &format!("matrix-tree determinant: {m} ({})\n", verdict(ok));
                checks.push(check("matrix-tree", ok, m.to_string()));
            }
            if let Some(res) = rep.trig_log_residual {
                let ok = res.abs() <= rep.tolerance;
                text += &format!(
                    "eigenvalue product: relative log residual {res:.3e}, tolerance {:.1e} ({})\n",
                    rep.tolerance,
                    verdict(ok)
                );
                checks.push(check("trig-product", ok, format!("{res:e}")));
            }
            let mut r = Report::new("treecount");
            r.n = Some(n.to_string());
            r.tree_count = Some(rep.closed_form.to_string());
            if !checks.is_empty() {
                r.checks = Some(checks);
            }
            r
        }
        Command::Seq { name, upto, m } => {
            let count = upto + 1;
            let values = match (name, m) {
                (SeqName::U, Some(m)) => u_terms(*m, count)?,
                (SeqName::V, Some(m)) => v_terms(*m, count)?,
                (SeqName::U | SeqName::V, None) => {
                    return Err(invalid("sequences u and v need --m"))
                }
                (_, Some(_)) => return Err(invalid("--m only applies to u and v")),
                (SeqName::E, None) => derived_terms(SeqKind::E, count),
                (SeqName::F, None) => derived_terms(SeqKind::F, count),
                (SeqName::H, None) => derived_terms(SeqKind::H, count),
                (SeqName::G, None) => derived_terms(SeqKind::G, count),
            };
            for (i, v) in values.iter().enumerate() {
                text += &format!("{i} {v}\n");
            }
            let mut r = Report::new("seq");
            r.values = Some(strings(&values));
            r
        }
        Command::Valuations { upto } => {
            if *upto < 2 {
                return Err(invalid("--upto must be at least 2"));
            }
            let checks = valuation_checks(*upto, threads)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in checks.iter().filter(|c| !c.pass) {
                text += &format!("MISMATCH {}: {}\n", c.name, c.detail);
            }
            text += &format!(
                "{} of {} valuation checks agree for 2 <= n <= {upto}\n",
                checks.len() - failed,
                checks.len()
            );
            let mut r = Report::new("valuations");
            r.range = Some(format!("2..{upto}"));
            r.checks = Some(checks);
            r
        }
        Command::Subgroup { n1, n2 } => {
            let (n1, n2) = (need_n(*n1)?, need_n(*n2)?);
            let ok = subgroup_check(n1, n2)?;
            text += &format!("K(C4 x C{n1}) divides K(C4 x C{n2}) factorwise: {ok}\n");
            let mut r = Report::new("subgroup");
            r.checks = Some(vec![check(
                format!("{n1}|{n2}"),
                ok,
                format!("{} vs {}", closed_form_group(n1)?, closed_form_group(n2)?),
            )]);
            r
        }
        Command::Snf { matrix, transforms } => {
            let a = IntegerMatrix::parse(&read_file(matrix)?)?;
            let res = snf(&a, *transforms);
            text += &format!("diagonal: {}\n", strings(&res.diagonal).join(" "));
            if let Some((p, q)) = &res.transforms {
                text += &format!("P:\n{p}Q:\n{q}");
            }
            let mut r = Report::new("snf");
            r.diagonal = Some(strings(&res.diagonal));
            r
        }
        Command::GraphGroup { edges } => {
            let g = Multigraph::parse_edge_list(&read_file(edges)?)?;
            let k = group_of_graph(&g)?;
            text += &format!("K(G) = {k}\norder: {}\n", k.order());
            Report::new("graph-group").with_group(&k)
        }
        Command::Verify { range, pipeline } => {
            let summary = verify_range(range.0.clone(), *pipeline, threads);
            for s in &summary.statuses {
                text += &format!("{} {} {}\n", s.name, verdict(s.pass), s.detail);
            }
            match summary.first_failure {
                None => text += &format!(
                    "all {} values of n agree\n",
                    summary.statuses.len()
                ),
                Some(n) => text += &format!("first failure at n={n}\n"),
            }
            let mut r = Report::new("verify");
            r.range = Some(format!("{}..{}", range.0.start(), range.0.end()));
            r.checks = Some(summary.statuses);
            r
        }
    };
    Ok((report, text))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Predicted vs. observed valuations for the four families over `2..=upto`.
pub fn valuation_checks(upto: u64, threads: usize) -> Result<Vec<CheckEntry>> {
    let count = upto as usize + 1;
    let e = derived_terms(SeqKind::E, count);
    let f = derived_terms(SeqKind::F, count);
    let ns: Vec<u64> = (2..=upto).collect();
    let per_n = crate::par::with_threads(threads, || {
        crate::par::map(&ns, |&n| -> Result<Vec<CheckEntry>> {
            let mut out = Vec::with_capacity(4);
            for (fam, values) in [(Family::E, &e), (Family::F, &f)] {
                for prime in [2, 3] {
                    let predicted = predicted_valuation(fam, prime, n)?.predicted_exponent;
                    let observed = observed_valuation(&values[n as usize], prime)?;
                    out.push(check(
                        format!("T_{prime}({fam}_{n})"),
                        predicted == observed,
                        format!("predicted {predicted}, observed {observed}"),
                    ));
                }
            }
            Ok(out)
        })
    });
    let mut all = Vec::new();
    for chunk in per_n {
        all.extend(chunk?);
    }
    Ok(all)
}

/// Parses `argv` (program name first), runs the command and writes the
/// result. Returns the process exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    match execute(&cfg) {
        Ok((report, text)) => {
            let written = if cfg.json {
                serde_json::to_string_pretty(&report)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}"))
            } else {
                write!(out, "{text}")
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if matches!(cfg.command, Command::Verify { .. }) {
                let _ = writeln!(err, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
            }
            if report.all_passed() {
                EXIT_OK
            } else if matches!(cfg.command, Command::Subgroup { .. }) {
                // a negative answer is a result, not a failed verification
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point used by the binary.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

impl From<Error> for String {
    fn from(e: Error) -> String {
        e.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!("3..12".parse::<NRange>().unwrap(), NRange(3..=12));
        assert_eq!("3..=5".parse::<NRange>().unwrap(), NRange(3..=5));
        assert_eq!("4..4".parse::<NRange>().unwrap(), NRange(4..=4));
        assert!("2..5".parse::<NRange>().is_err());
        assert!("7..5".parse::<NRange>().is_err());
        assert!("x..5".parse::<NRange>().is_err());
        assert!("5".parse::<NRange>().is_err());
    }

    #[test]
    fn verify_is_ordered() {
        let s = verify_range(3..=6, false, 2);
        let names: Vec<&str> = s.statuses.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["n=3", "n=4", "n=5", "n=6"]);
        assert_eq!(s.first_failure, None);
    }
}
