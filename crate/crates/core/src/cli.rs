//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chebyshev::{verify_relation, RelationReport};
use crate::closed_form::{cube_column_sum, HypersimplexSpec};
use crate::error::Error;
use crate::exact_math::{binomial, Integer};
use crate::face_oracle::{cube_decomposition_f, face_lattice};
use crate::series::{expand_closed_gf, expand_column_sum_gf, expand_half_open_gf};
use crate::verify::{self, Fault, Outcome, VerifyConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest `n` accepted by the formula paths of `fvector` and `table`.
pub const MAX_FORMULA_N: u32 = 512;

pub fn ser_integer<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

mod decimal_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Integer>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse::<Integer>().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Series,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Read off a counting route.
    Formula,
    /// Summed directly because no column-sum formula covers it (`j = 0`).
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

/// One row group of output. `k = None` marks a column sum over `k`;
/// `j = None` means `values` is the whole f-vector, otherwise the single
/// entry `f_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u32,
    pub k: Option<u32>,
    pub j: Option<u32>,
    pub half_open: bool,
    pub method: Method,
    #[serde(with = "decimal_vec")]
    pub values: Vec<Integer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
}

impl OutputRecord {
    fn rows(&self) -> impl Iterator<Item = (u32, &Integer)> + '_ {
        let start = self.j.unwrap_or(0);
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (start + i as u32, v))
    }
}

/// Inclusive integer range: `3`, `2..5` or `2..=5` (both mean 2 through 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad bound {t:?}: {e}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelect {
    All,
    Range(IntRange),
    Sum,
}

impl FromStr for KSelect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sum" => Ok(KSelect::Sum),
            "all" => Ok(KSelect::All),
            _ => s.parse().map(KSelect::Range),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaultArg(pub Fault);

impl FromStr for FaultArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [n, k, j] => Ok(FaultArg(Fault { n, k, j })),
            _ => Err("expected n,k,j".into()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperfv",
    version,
    about = "Exact f-vectors of (half-open) hypersimplices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct PolytopeFlag {
    /// Half-open hypersimplex (default)
    #[arg(long, conflicts_with = "closed")]
    pub half_open: bool,
    /// Closed hypersimplex
    #[arg(long)]
    pub closed: bool,
}

impl PolytopeFlag {
    pub fn is_half_open(self) -> bool {
        !self.closed
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the f-vector of one polytope
    Fvector {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        polytope: PolytopeFlag,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate face numbers over ranges of n, k, j
    Table {
        /// n or lo..hi
        #[arg(long)]
        n: IntRange,
        /// k, lo..hi, all, or sum (column sums over k)
        #[arg(long, default_value = "all")]
        k: KSelect,
        /// j or lo..hi
        #[arg(long)]
        j: Option<IntRange>,
        #[command(flatten)]
        polytope: PolytopeFlag,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare generating-function coefficients with the formulas
    SeriesCheck {
        #[arg(long, default_value_t = 12)]
        max_series_n: u32,
    },
    /// Run every cross-check
    Verify {
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        #[arg(long, default_value_t = 12)]
        max_series_n: u32,
        /// Perturb the half-open formula at n,k,j (harness self-test)
        #[arg(long, hide = true)]
        corrupt: Option<FaultArg>,
    },
    /// Compare Chebyshev coefficients with scaled column sums
    Chebyshev {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch,
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Fvector {
            n,
            k,
            polytope,
            method,
            format,
        } => {
            let record = fvector_record(n, k, polytope.is_half_open(), method)?;
            match format {
                Format::Text => writeln!(out, "{}", crate::FVector(record.values))?,
                _ => render(&[record], format, out)?,
            }
            Ok(())
        }
        Command::Table {
            n,
            k,
            j,
            polytope,
            method,
            format,
        } => {
            let records = table_records(n, k, j, polytope.is_half_open(), method)?;
            render(&records, format, out)
        }
        Command::SeriesCheck { max_series_n } => {
            let outcome = verify::run_series_checks(max_series_n)?;
            report(&outcome, out)
        }
        Command::Verify {
            max_n,
            max_series_n,
            corrupt,
        } => {
            let cfg = VerifyConfig {
                max_n,
                max_series_n,
                fault: corrupt.map(|c| c.0),
                ..VerifyConfig::default()
            };
            let outcome = verify::run(&cfg)?;
            report(&outcome, out)
        }
        Command::Chebyshev { ell, format } => chebyshev(ell, format, out),
    }
}

/// Full f-vector of one polytope by the chosen route.
///
/// The generating functions start at `t^1`, so the series route takes the
/// vertex count from `C(n,k)` (half-open) or `C(n,k) + C(n,k-1)` (closed).
pub fn fvector_record(
    n: u32,
    k: u32,
    half_open: bool,
    method: Method,
) -> Result<OutputRecord, Error> {
    let spec = HypersimplexSpec::new(n, k, half_open)?;
    let values = match method {
        Method::Formula => {
            if n > MAX_FORMULA_N {
                return Err(Error::SizeGuard {
                    what: "dimension n",
                    requested: n,
                    guard: MAX_FORMULA_N,
                    hint: "output grows quadratically in n",
                });
            }
            spec.f_vector()?.0
        }
        Method::Series => {
            let gf = if half_open {
                expand_half_open_gf(n)?
            } else {
                expand_closed_gf(n)?
            };
            let mut values = vec![vertex_count(n, k, half_open)];
            for j in 1..=n {
                values.push(gf.face_count(n, k, j)?);
            }
            values
        }
        Method::Oracle => {
            let lattice = face_lattice(n, k)?;
            if half_open {
                lattice.half_open_f_vector().0
            } else {
                lattice.f_vector().0
            }
        }
    };
    Ok(OutputRecord {
        n,
        k: Some(k),
        j: None,
        half_open,
        method,
        values,
        source: None,
    })
}

fn vertex_count(n: u32, k: u32, half_open: bool) -> Integer {
    let top = binomial(n.into(), k.into());
    if half_open {
        top
    } else {
        top + binomial(n.into(), i64::from(k) - 1)
    }
}

pub fn table_records(
    n: IntRange,
    k: KSelect,
    j: Option<IntRange>,
    half_open: bool,
    method: Method,
) -> Result<Vec<OutputRecord>, Error> {
    if n.lo == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n.hi > MAX_FORMULA_N {
        return Err(Error::SizeGuard {
            what: "dimension n",
            requested: n.hi,
            guard: MAX_FORMULA_N,
            hint: "output grows quadratically in n",
        });
    }
    let mut records = Vec::new();
    for n in n.iter() {
        let js: Vec<u32> = match j {
            Some(r) => r.iter().filter(|&j| j <= n).collect(),
            None => (0..=n).collect(),
        };
        match k {
            KSelect::Sum => {
                if !half_open {
                    return Err(Error::InvalidArgument(
                        "column sums are defined for the half-open decomposition; drop --closed"
                            .into(),
                    ));
                }
                let sums = column_sums(n, method)?;
                for &j in &js {
                    records.push(OutputRecord {
                        n,
                        k: None,
                        j: Some(j),
                        half_open,
                        method,
                        values: vec![sums[j as usize].clone()],
                        source: Some(if j == 0 {
                            Source::Direct
                        } else {
                            Source::Formula
                        }),
                    });
                }
            }
            KSelect::All | KSelect::Range(_) => {
                let ks = match k {
                    KSelect::Range(r) => r.lo.max(1)..=r.hi.min(n),
                    _ => 1..=n,
                };
                for k in ks {
                    let full = fvector_record(n, k, half_open, method)?;
                    if j.is_none() {
                        records.push(full);
                        continue;
                    }
                    for &j in &js {
                        records.push(OutputRecord {
                            j: Some(j),
                            values: vec![full.values[j as usize].clone()],
                            ..full.clone()
                        });
                    }
                }
            }
        }
    }
    if records.is_empty() {
        return Err(Error::InvalidArgument("ranges select no rows".into()));
    }
    Ok(records)
}

/// `Σ_k f_j(Δ'(n,k))` for `j = 0..=n`; entry 0 is summed directly.
fn column_sums(n: u32, method: Method) -> Result<Vec<Integer>, Error> {
    if method == Method::Oracle {
        return cube_decomposition_f(n);
    }
    let mut sums = vec![(1..=n).map(|k| binomial(n.into(), k.into())).sum()];
    for j in 1..=n {
        sums.push(match method {
            Method::Series => expand_column_sum_gf(j, n)?.coefficient(n)?,
            _ => cube_column_sum(n, j)?,
        });
    }
    Ok(sums)
}

struct KCell(Option<u32>);

impl fmt::Display for KCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(k) => write!(f, "{k}"),
            None => f.write_str("sum"),
        }
    }
}

fn render(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> CmdResult {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            w.write_record(["n", "k", "j", "half_open", "f"])?;
            for r in records {
                for (j, v) in r.rows() {
                    w.write_record([
                        r.n.to_string(),
                        KCell(r.k).to_string(),
                        j.to_string(),
                        r.half_open.to_string(),
                        v.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Markdown => {
            let with_source = records.iter().any(|r| r.source.is_some());
            if with_source {
                writeln!(out, "| n | k | j | half_open | f | source |")?;
                writeln!(out, "|---|---|---|---|---|---|")?;
            } else {
                writeln!(out, "| n | k | j | half_open | f |")?;
                writeln!(out, "|---|---|---|---|---|")?;
            }
            for r in records {
                for (j, v) in r.rows() {
                    write!(
                        out,
                        "| {} | {} | {j} | {} | {v} |",
                        r.n,
                        KCell(r.k),
                        r.half_open
                    )?;
                    if with_source {
                        let s = match r.source {
                            Some(Source::Direct) => "direct",
                            Some(Source::Formula) => "formula",
                            None => "",
                        };
                        write!(out, " {s} |")?;
                    }
                    writeln!(out)?;
                }
            }
        }
        Format::Text => {
            for r in records {
                writeln!(
                    out,
                    "n={} k={} j={} {}",
                    r.n,
                    KCell(r.k),
                    r.j.map_or_else(|| "*".to_string(), |j| j.to_string()),
                    crate::FVector(r.values.clone())
                )?;
            }
        }
    }
    Ok(())
}

fn report(outcome: &Outcome, out: &mut dyn Write) -> CmdResult {
    let passed = match outcome {
        Outcome::Passed(p) => p,
        Outcome::Failed { passed, .. } => passed,
    };
    for c in passed {
        writeln!(out, "ok   {} ({} cases)", c.name, c.cases)?;
    }
    if let Outcome::Failed { mismatch, .. } = outcome {
        writeln!(out, "FAIL {mismatch}")?;
        writeln!(out, "{}", serde_json::to_string(mismatch)?)?;
        return Err(Failure::Mismatch);
    }
    writeln!(out, "all checks passed")?;
    Ok(())
}

fn chebyshev(ell: u32, format: Format, out: &mut dyn Write) -> CmdResult {
    if ell < 4 {
        return Err(Failure::Usage(format!(
            "--ell must be at least 4 (need 2 <= m <= ell/2), got {ell}"
        )));
    }
    let rows: Vec<RelationReport> = (2..=ell / 2)
        .map(|m| verify_relation(ell, m))
        .collect::<Result<_, _>>()?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            w.write_record(["ell", "m", "lhs", "rhs", "equal"])?;
            for r in &rows {
                w.write_record([
                    r.ell.to_string(),
                    r.m.to_string(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.equal.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Markdown => {
            writeln!(out, "| ell | m | lhs | rhs | equal |")?;
            writeln!(out, "|---|---|---|---|---|")?;
            for r in &rows {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    r.ell, r.m, r.lhs, r.rhs, r.equal
                )?;
            }
        }
        Format::Text => {
            for r in &rows {
                let status = if r.equal { "match" } else { "MISMATCH" };
                writeln!(
                    out,
                    "ell={} m={} lhs={} rhs={} {status}",
                    r.ell, r.m, r.lhs, r.rhs
                )?;
            }
        }
    }
    if rows.iter().all(|r| r.equal) {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("hyperfv").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranges() {
        assert_eq!("3".parse::<IntRange>().unwrap(), IntRange { lo: 3, hi: 3 });
        assert_eq!(
            "2..5".parse::<IntRange>().unwrap(),
            IntRange { lo: 2, hi: 5 }
        );
        assert_eq!(
            "2..=5".parse::<IntRange>().unwrap(),
            IntRange { lo: 2, hi: 5 }
        );
        assert!("5..2".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
        assert_eq!("sum".parse::<KSelect>().unwrap(), KSelect::Sum);
        assert_eq!(
            "3,2,1".parse::<FaultArg>().unwrap().0,
            Fault { n: 3, k: 2, j: 1 }
        );
        assert!("3,2".parse::<FaultArg>().is_err());
    }

    #[test]
    fn fvector_methods_agree() {
        for method in ["formula", "series", "oracle"] {
            let (code, out, _) = run_str(&[
                "fvector",
                "--n",
                "3",
                "--k",
                "2",
                "--half-open",
                "--method",
                method,
            ]);
            assert_eq!(code, 0);
            assert_eq!(out.trim(), "(3, 9, 7, 1)", "method {method}");
            let (code, out, _) = run_str(&[
                "fvector", "--n", "3", "--k", "2", "--closed", "--method", method,
            ]);
            assert_eq!(code, 0);
            assert_eq!(out.trim(), "(6, 12, 8, 1)", "method {method}");
        }
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["fvector", "--n", "0", "--k", "1"]).0, 2);
        assert_eq!(run_str(&["fvector", "--n", "3", "--k", "4"]).0, 2);
        assert_eq!(
            run_str(&["fvector", "--n", "3", "--k", "1", "--half-open", "--closed"]).0,
            2
        );
        assert_eq!(run_str(&["table", "--n", "3..1"]).0, 2);
        assert_eq!(
            run_str(&["table", "--n", "3", "--k", "sum", "--closed"]).0,
            2
        );
        assert_eq!(run_str(&["chebyshev", "--ell", "3"]).0, 2);
        let (code, _, err) = run_str(&["fvector", "--n", "12", "--k", "3", "--method", "oracle"]);
        assert_eq!(code, 2);
        assert!(err.contains("size guard"), "{err}");
    }

    #[test]
    fn table_sum_csv() {
        let (code, out, _) = run_str(&["table", "--n", "3", "--k", "sum", "--format", "csv"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], "n,k,j,half_open,f");
        assert_eq!(lines[1], "3,sum,0,true,7");
        assert_eq!(lines[3], "3,sum,2,true,14");
        assert!(!out.contains('\r'));
    }

    #[test]
    fn table_json_round_trips() {
        let (code, out, _) = run_str(&["table", "--n", "2..3", "--half-open", "--format", "json"]);
        assert_eq!(code, 0);
        let parsed: Vec<OutputRecord> = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.len(), 5);
        let expected = table_records(
            IntRange { lo: 2, hi: 3 },
            KSelect::All,
            None,
            true,
            Method::Formula,
        )
        .unwrap();
        assert_eq!(parsed, expected);
        assert!(out.contains("\"values\": [\n      \"1\""));
    }

    #[test]
    fn table_markdown() {
        let (code, out, _) = run_str(&["table", "--n", "3", "--k", "2", "--format", "markdown"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2 + 4);
        assert!(out.starts_with("| n | k | j | half_open | f |"));
        let (_, out, _) = run_str(&["table", "--n", "2", "--k", "sum", "--format", "markdown"]);
        assert!(out.contains("| 2 | sum | 0 | true | 3 | direct |"));
    }

    #[test]
    fn chebyshev_rows() {
        let (code, out, _) = run_str(&["chebyshev", "--ell", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        let (code, out, _) = run_str(&["chebyshev", "--ell", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.ends_with("match")).count(), 4);
    }
}
