//! Command-line front end: enumerate strata, run verification suites,
//! tabulate semisimple traces, emit Hasse diagrams and count points.
//!
//! Exit codes: 0 success, 1 verification failure or internal error,
//! 2 usage error, 3 size limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod report;
pub mod verify;

use krstrata::alcove::enumerate_perm_gsp;
use krstrata::local_model::chain::{max_points_q, stratified_count};
use krstrata::prank::{hasse_dot, p_rank, strata_report, MAX_REPORT_N};
use krstrata::rpoly::{ss_trace, RPolynomials};
use krstrata::{Error, Group, WeylGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

pub const MAX_TRACE_N: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "krstrata", version, about = "Kottwitz-Rapoport strata of the Siegel local model")]
pub struct Cli {
    /// Progress and timing on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Strata report for KR(mu) of GSp(2n): JSON, CSV or DOT.
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
    /// Run named verification checks and print PASS/FAIL lines.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated subset of checks; default: all that apply to n.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Semisimple trace of Frobenius on nearby cycles, per stratum.
    Trace {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Only strata of this p-rank.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Bruhat covers inside KR(mu) as a DOT digraph.
    Hasse {
        #[command(flatten)]
        common: Common,
    },
    /// Count F_q-points of the special fiber by p-rank.
    Points {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Half the rank: the group is GSp(2n).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here (atomically) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

/// An error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = match error.downcast_ref::<Error>() {
            Some(Error::SizeLimit { .. }) => EXIT_LIMIT,
            Some(Error::UnsupportedField(_)) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure { code, error }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: anyhow::anyhow!(msg.into()),
    }
}

fn limit(what: String, bound: String) -> Failure {
    Error::SizeLimit { what, limit: bound }.into()
}

/// Writes `bytes` to `out` via a temporary file in the same directory and a
/// rename, or to `stdout` when no path is given.
pub fn emit(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        None => stdout.write_all(bytes).context("writing to stdout"),
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
                _ => PathBuf::from("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(&dir)
                .with_context(|| format!("creating temporary file in {}", dir.display()))?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path)
                .with_context(|| format!("renaming into {}", path.display()))?;
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("KRSTRATA_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| usage(format!("KRSTRATA_THREADS must be a positive integer, got {raw:?}")))?;
    if threads == 0 {
        return Err(usage("KRSTRATA_THREADS must be positive"));
    }
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn checked_n(n: u64, max: usize, what: &str) -> Result<usize, Failure> {
    match usize::try_from(n) {
        Ok(n) if n <= max => Ok(n),
        _ => Err(limit(format!("{what} for n = {n}"), format!("n <= {max}"))),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = configure_threads().and_then(|()| dispatch(&cli, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {:#}", f.error);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let started = std::time::Instant::now();
    let code = match &cli.command {
        Command::Enumerate { common } => cmd_enumerate(common, stdout)?,
        Command::Verify {
            common,
            q,
            seed,
            checks,
        } => verify::cmd_verify(common, *q, *seed, checks, stdout)?,
        Command::Trace { common, q, m, r } => cmd_trace(common, *q, *m, *r, stdout)?,
        Command::Hasse { common } => cmd_hasse(common, stdout)?,
        Command::Points { common, q } => cmd_points(common, *q, stdout)?,
    };
    if cli.verbose > 0 {
        let _ = writeln!(stderr, "done in {:.3?}", started.elapsed());
    }
    Ok(code)
}

fn cmd_enumerate(common: &Common, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let n = checked_n(common.n, MAX_REPORT_N, "strata report")?;
    let weyl = WeylGroup::new(Group::Gsp(n));
    let rep = strata_report(n, &weyl)?;
    let bytes = match common.format.unwrap_or(Format::Json) {
        Format::Json => report::to_json(&rep)?,
        Format::Csv => report::to_csv(&rep)?,
        Format::Dot => hasse_dot(&rep).into_bytes(),
    };
    emit(common.out.as_deref(), &bytes, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_hasse(common: &Common, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if common.format.is_some_and(|f| f != Format::Dot) {
        return Err(usage("hasse only writes DOT"));
    }
    let n = checked_n(common.n, MAX_REPORT_N, "Hasse diagram")?;
    let weyl = WeylGroup::new(Group::Gsp(n));
    let rep = strata_report(n, &weyl)?;
    emit(common.out.as_deref(), hasse_dot(&rep).as_bytes(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(serde::Serialize)]
struct TraceRow {
    window: Vec<i64>,
    length: usize,
    p_rank: usize,
    ss_trace: String,
    below_translation: bool,
}

fn cmd_trace(
    common: &Common,
    q: u64,
    m: u32,
    r: Option<usize>,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    if !krstrata::rpoly::is_prime_power(q) {
        return Err(Error::UnsupportedField(q).into());
    }
    if m == 0 {
        return Err(usage("--m must be positive"));
    }
    let n = checked_n(common.n, MAX_TRACE_N, "trace table")?;
    let rp = RPolynomials::new(Group::Gsp(n));
    let mut rows = Vec::new();
    for w in enumerate_perm_gsp(n)?.gsp_elements() {
        let rank = p_rank(&w)?;
        if r.is_some_and(|r| r != rank) {
            continue;
        }
        let tr = ss_trace(&rp, &w, q, m)?;
        rows.push(TraceRow {
            window: w.perm().window().to_vec(),
            length: w.length(),
            p_rank: rank,
            ss_trace: tr.value.to_string(),
            below_translation: tr.below_translation,
        });
    }
    let bytes = match common.format {
        Some(Format::Json) => {
            let mut v = serde_json::to_vec_pretty(&rows).context("serializing trace table")?;
            v.push(b'\n');
            v
        }
        Some(Format::Csv) | None => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["window", "length", "p_rank", "ss_trace", "below_translation"])
                .context("writing CSV")?;
            for row in &rows {
                w.write_record([
                    report::window_string(&row.window),
                    row.length.to_string(),
                    row.p_rank.to_string(),
                    row.ss_trace.clone(),
                    row.below_translation.to_string(),
                ])
                .context("writing CSV")?;
            }
            w.into_inner().context("flushing CSV")?
        }
        Some(Format::Dot) => return Err(usage("trace writes CSV or JSON")),
    };
    emit(common.out.as_deref(), &bytes, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_points(common: &Common, q: u64, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if common.format.is_some_and(|f| f != Format::Json) {
        return Err(usage("points only writes JSON"));
    }
    krstrata::local_model::Fq::new(q)?;
    let n = checked_n(common.n, 2, "point count")?;
    if q > max_points_q(n) {
        return Err(limit(
            format!("point count for n = {n}, q = {q}"),
            format!("q <= {}", max_points_q(n)),
        ));
    }
    let counts = stratified_count(n, q)?;
    let weyl = WeylGroup::new(Group::Gsp(n));
    let rep = strata_report(n, &weyl)?;
    let summary = report::PointSummary::new(n, q, counts, &rep);
    let mut bytes = serde_json::to_vec_pretty(&summary).context("serializing point counts")?;
    bytes.push(b'\n');
    emit(common.out.as_deref(), &bytes, stdout)?;
    Ok(if summary.matches_polynomial {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}
