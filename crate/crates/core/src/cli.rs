//! Command-line surface.
//!
//! `count`, `list`, `irreducible`, `verify` and `bench`. Records are one per
//! line in one of four formats; see [`Format`]. Exit status is 0 on success,
//! 1 when verification fails (or output cannot be written), 2 on bad
//! arguments.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::forest::{self, ClassRoot, Scope, Visit};
use crate::irreducible::{self, IrreducibleKind};
use crate::oracle;
use crate::semigroup::write_list;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "SEMIFOREST_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Engine(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated minimal generators
    #[default]
    Gens,
    /// Comma-separated gaps
    Gaps,
    /// Kunz bit string x_1..x_{2g-1}
    Kunz,
    /// One JSON object per semigroup
    JsonLines,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    /// key=value lines
    Kv,
}

#[derive(Debug, Parser)]
#[command(
    name = "semiforest",
    version,
    about = "Enumerate numerical semigroups by genus and Frobenius number"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Selection {
    #[arg(long, short = 'g')]
    pub genus: Option<u32>,
    #[arg(long, short = 'f')]
    pub frobenius: Option<u32>,
}

#[derive(Debug, Args)]
pub struct Workers {
    /// Worker threads (default: all cores)
    #[arg(long, short = 't', env = THREADS_ENV)]
    pub threads: Option<NonZeroUsize>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Gens)]
    pub format: Format,
    /// Sort records by Kunz text; identical output for any thread count
    #[arg(long)]
    pub sorted: bool,
    /// Write records here instead of standard output
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the number of semigroups of the given genus (and Frobenius number)
    Count {
        #[command(flatten)]
        selection: Selection,
        #[command(flatten)]
        workers: Workers,
    },
    /// Print one record per semigroup
    List {
        #[command(flatten)]
        selection: Selection,
        #[command(flatten)]
        workers: Workers,
        #[command(flatten)]
        output: Output,
    },
    /// Irreducible semigroups with the given Frobenius number
    Irreducible {
        #[arg(long, short = 'f')]
        frobenius: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the enumeration against the brute-force oracles
    Verify {
        #[arg(long, short = 'g')]
        genus: u32,
        #[arg(long, short = 'f')]
        frobenius: Option<u32>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Counts per Frobenius number with timings, as CSV
    Bench {
        #[arg(long, short = 'g')]
        genus: u32,
        #[command(flatten)]
        workers: Workers,
        /// One row per genus 1..=g instead of per Frobenius number
        #[arg(long)]
        sweep: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Count,
    List,
    Irreducible,
    Verify,
    Bench,
}

/// Everything `run` needs, independent of how it was parsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub command: CommandKind,
    pub genus: Option<u32>,
    pub frobenius: Option<u32>,
    pub format: Format,
    pub sorted: bool,
    pub threads: usize,
    pub output: Option<PathBuf>,
    pub report: ReportFormat,
    pub sweep: bool,
}

impl EnumerationRequest {
    pub fn new(command: CommandKind) -> Self {
        EnumerationRequest {
            command,
            genus: None,
            frobenius: None,
            format: Format::Gens,
            sorted: false,
            threads: 1,
            output: None,
            report: ReportFormat::Text,
            sweep: false,
        }
    }

    fn scope(&self) -> Result<Scope, CliError> {
        Ok(match (self.genus, self.frobenius) {
            (Some(g), Some(f)) => Scope::frobenius_genus(f, g)?,
            (Some(g), None) => Scope::genus(g)?,
            (None, Some(f)) => Scope::frobenius(f)?,
            (None, None) => {
                return Err(CliError::Usage(
                    "one of --genus or --frobenius is required".into(),
                ))
            }
        })
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

impl From<Cli> for EnumerationRequest {
    fn from(cli: Cli) -> Self {
        let threads = |w: Workers| w.threads.map_or_else(default_threads, NonZeroUsize::get);
        match cli.command {
            Command::Count { selection, workers } => EnumerationRequest {
                genus: selection.genus,
                frobenius: selection.frobenius,
                threads: threads(workers),
                ..EnumerationRequest::new(CommandKind::Count)
            },
            Command::List {
                selection,
                workers,
                output,
            } => EnumerationRequest {
                genus: selection.genus,
                frobenius: selection.frobenius,
                threads: threads(workers),
                format: output.format,
                sorted: output.sorted,
                output: output.output,
                ..EnumerationRequest::new(CommandKind::List)
            },
            Command::Irreducible { frobenius, output } => EnumerationRequest {
                frobenius: Some(frobenius),
                format: output.format,
                sorted: output.sorted,
                output: output.output,
                ..EnumerationRequest::new(CommandKind::Irreducible)
            },
            Command::Verify {
                genus,
                frobenius,
                report,
            } => EnumerationRequest {
                genus: Some(genus),
                frobenius,
                report,
                ..EnumerationRequest::new(CommandKind::Verify)
            },
            Command::Bench {
                genus,
                workers,
                sweep,
            } => EnumerationRequest {
                genus: Some(genus),
                threads: threads(workers),
                sweep,
                ..EnumerationRequest::new(CommandKind::Bench)
            },
        }
    }
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    genus: u32,
    frobenius: u32,
    multiplicity: u64,
    gens: Vec<u64>,
    gaps: Vec<u64>,
    kunz: String,
    #[serde(rename = "elementary-root")]
    elementary_root: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'a IrreducibleKind>,
}

/// Renders one semigroup, without the trailing newline.
pub fn render(format: Format, visit: &Visit<'_>, kind: Option<IrreducibleKind>) -> String {
    let mut line = String::new();
    match format {
        Format::Gens => {
            let gens = visit.node.to_semigroup().minimal_generators();
            write_list(&mut line, &gens).unwrap();
        }
        Format::Gaps => write_list(&mut line, &visit.node.gaps()).unwrap(),
        Format::Kunz => write!(line, "{}", visit.node).unwrap(),
        Format::JsonLines => {
            let s = visit.node.to_semigroup();
            let record = JsonRecord {
                genus: visit.genus(),
                frobenius: visit.frobenius,
                multiplicity: s.multiplicity(),
                gens: s.minimal_generators(),
                gaps: s.gaps().to_vec(),
                kunz: visit.node.to_string(),
                elementary_root: visit.root.to_string(),
                kind: kind.as_ref(),
            };
            return serde_json::to_string(&record).expect("plain data serializes");
        }
    }
    if let Some(kind) = kind {
        write!(line, " {kind}").unwrap();
    }
    line
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} workers: {e}")))?;
    Ok(pool.install(job))
}

/// Executes `request`, writing records to `out` unless the request names an
/// output file.
pub fn run(request: &EnumerationRequest, out: &mut dyn Write) -> Result<Status, CliError> {
    if request.threads == 0 {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    let mut file;
    let out: &mut dyn Write = match &request.output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => out,
    };
    let status = match request.command {
        CommandKind::Count => {
            let scope = request.scope()?;
            let n = if request.threads == 1 {
                forest::count(scope)
            } else {
                with_pool(request.threads, || forest::par_count(scope))?
            };
            writeln!(out, "{n}")?;
            Status::Success
        }
        CommandKind::List => {
            list(request.scope()?, request, out)?;
            Status::Success
        }
        CommandKind::Irreducible => {
            irreducible_list(request, out)?;
            Status::Success
        }
        CommandKind::Verify => {
            let genus = request
                .genus
                .ok_or_else(|| CliError::Usage("--genus is required".into()))?;
            let report = oracle::verify(genus, request.frobenius)?;
            match request.report {
                ReportFormat::Text => writeln!(out, "{report}")?,
                ReportFormat::Kv => write!(out, "{}", report.key_values())?,
            }
            if report.passed() {
                Status::Success
            } else {
                Status::VerificationFailed
            }
        }
        CommandKind::Bench => {
            bench(request, out)?;
            Status::Success
        }
    };
    out.flush()?;
    Ok(status)
}

fn list(scope: Scope, request: &EnumerationRequest, out: &mut dyn Write) -> Result<(), CliError> {
    let format = request.format;
    if request.sorted {
        let class_lines = |class: &ClassRoot| {
            let mut lines = Vec::new();
            class
                .traverse::<Error, _>(|v| {
                    lines.push((v.node.to_string(), render(format, &v, None)));
                    Ok(())
                })
                .map(|_| lines)
        };
        let mut lines: Vec<(String, String)> = if request.threads == 1 {
            let mut all = Vec::new();
            for class in scope.roots() {
                all.extend(class_lines(&class)?);
            }
            all
        } else {
            with_pool(request.threads, || {
                scope
                    .par_roots()
                    .map(|class| class_lines(&class))
                    .try_reduce(Vec::new, |mut a, b| {
                        a.extend(b);
                        Ok(a)
                    })
            })??
        };
        lines.sort_unstable();
        for (_, line) in lines {
            writeln!(out, "{line}")?;
        }
    } else if request.threads == 1 {
        forest::enumerate::<CliError, _>(scope, |v| {
            writeln!(out, "{}", render(format, &v, None))?;
            Ok(())
        })?;
    } else {
        // Workers render one class at a time; this thread does all writing.
        let (send, recv) = mpsc::sync_channel::<String>(4 * request.threads);
        let produced = std::thread::scope(|s| {
            let producer = s.spawn(move || {
                with_pool(request.threads, || {
                    scope.par_roots().try_for_each_with(send, |send, class| {
                        let mut buf = String::new();
                        class.traverse::<Error, _>(|v| {
                            buf.push_str(&render(format, &v, None));
                            buf.push('\n');
                            Ok(())
                        })?;
                        // A closed channel means the writer already failed.
                        let _ = send.send(buf);
                        Ok::<_, Error>(())
                    })
                })
            });
            let mut written = Ok(());
            for buf in recv {
                if written.is_ok() {
                    written = out.write_all(buf.as_bytes());
                }
            }
            let produced = producer.join().expect("worker pool panicked");
            written.map(|_| produced)
        })?;
        produced??;
    }
    Ok(())
}

fn irreducible_list(request: &EnumerationRequest, out: &mut dyn Write) -> Result<(), CliError> {
    let frobenius = request
        .frobenius
        .ok_or_else(|| CliError::Usage("--frobenius is required".into()))?;
    if frobenius == 0 {
        return Err(CliError::Usage("--frobenius must be positive".into()));
    }
    let mut lines = Vec::new();
    irreducible::enumerate_irreducible::<CliError, _>(frobenius, |v, kind| {
        let line = render(request.format, &v, Some(kind));
        if request.sorted {
            lines.push((v.node.to_string(), line));
        } else {
            writeln!(out, "{line}")?;
        }
        Ok(())
    })?;
    lines.sort_unstable();
    for (_, line) in lines {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn timed_count(scope: Scope, threads: usize) -> Result<(u64, f64), CliError> {
    let start = Instant::now();
    let n = if threads == 1 {
        forest::count(scope)
    } else {
        with_pool(threads, || forest::par_count(scope))?
    };
    Ok((n, start.elapsed().as_secs_f64()))
}

fn bench(request: &EnumerationRequest, out: &mut dyn Write) -> Result<(), CliError> {
    let genus = request
        .genus
        .ok_or_else(|| CliError::Usage("--genus is required".into()))?;
    Scope::genus(genus)?;
    let start = Instant::now();
    let mut total = 0;
    if request.sweep {
        writeln!(out, "genus,count,seconds")?;
        for g in 1..=genus {
            let (n, secs) = timed_count(Scope::genus(g)?, request.threads)?;
            writeln!(out, "{g},{n},{secs:.6}")?;
            total += n;
        }
    } else {
        writeln!(out, "frobenius,count,seconds")?;
        for f in genus..2 * genus {
            let (n, secs) = timed_count(Scope::frobenius_genus(f, genus)?, request.threads)?;
            writeln!(out, "{f},{n},{secs:.6}")?;
            total += n;
        }
    }
    writeln!(out, "total,{total},{:.6}", start.elapsed().as_secs_f64())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(request: &EnumerationRequest) -> (Status, String) {
        let mut out = Vec::new();
        let status = run(request, &mut out).unwrap();
        (status, String::from_utf8(out).unwrap())
    }

    fn request(
        command: CommandKind,
        genus: Option<u32>,
        frobenius: Option<u32>,
    ) -> EnumerationRequest {
        EnumerationRequest {
            genus,
            frobenius,
            ..EnumerationRequest::new(command)
        }
    }

    #[test]
    fn count_genus_five() {
        let (status, out) = run_to_string(&request(CommandKind::Count, Some(5), None));
        assert_eq!(status, Status::Success);
        assert_eq!(out, "12\n");
    }

    #[test]
    fn list_formats() {
        let mut req = request(CommandKind::List, Some(5), Some(7));
        req.sorted = true;
        let (_, gens) = run_to_string(&req);
        assert_eq!(gens.lines().count(), 4);
        assert!(gens.lines().any(|l| l == "4,6,9,11"));
        req.format = Format::Kunz;
        let (_, kunz) = run_to_string(&req);
        assert!(kunz.lines().any(|l| l == "110110100"));
        req.format = Format::Gaps;
        let (_, gaps) = run_to_string(&req);
        assert!(gaps.lines().any(|l| l == "1,2,4,5,7"));
        req.format = Format::JsonLines;
        let (_, json) = run_to_string(&req);
        let child = json
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .find(|v| v["kunz"] == "110110100")
            .unwrap();
        assert_eq!(child["elementary-root"], "111010100");
        assert_eq!(child["gens"], serde_json::json!([3, 8, 10]));
        assert_eq!(child["multiplicity"], 3);
        assert_eq!(child["frobenius"], 7);
        assert_eq!(child["genus"], 5);
    }

    #[test]
    fn sequential_list_follows_forest_order() {
        let (_, out) = run_to_string(&EnumerationRequest {
            format: Format::Kunz,
            ..request(CommandKind::List, Some(5), None)
        });
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], "111110000");
        assert_eq!(lines.last(), Some(&"101010101"));
        assert_eq!(lines.len(), 12);
    }

    #[test]
    fn irreducible_tags() {
        let mut req = request(CommandKind::Irreducible, None, Some(7));
        req.sorted = true;
        let (_, out) = run_to_string(&req);
        let mut lines: Vec<_> = out.lines().collect();
        lines.sort();
        assert_eq!(lines, ["2,9 symmetric", "3,5 symmetric", "4,5,6 symmetric"]);
        let (_, out) = run_to_string(&request(CommandKind::Irreducible, None, Some(4)));
        assert_eq!(out, "3,5,7 pseudo-symmetric\n");
    }

    #[test]
    fn argument_errors() {
        let mut sink = Vec::new();
        let err = run(&request(CommandKind::Count, Some(5), Some(10)), &mut sink).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run(&request(CommandKind::List, None, None), &mut sink).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run(&request(CommandKind::Verify, Some(13), None), &mut sink).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_and_bench() {
        let (status, out) = run_to_string(&EnumerationRequest {
            report: ReportFormat::Kv,
            ..request(CommandKind::Verify, Some(6), None)
        });
        assert_eq!(status, Status::Success);
        assert!(out.contains("actual=23\n"));
        let (_, out) = run_to_string(&request(CommandKind::Bench, Some(5), None));
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], "frobenius,count,seconds");
        assert!(lines[3].starts_with("7,4,"));
        assert!(lines[6].starts_with("total,12,"));
    }

    #[test]
    fn count_matches_list_lines() {
        for g in 1..=9 {
            let (_, count) = run_to_string(&request(CommandKind::Count, Some(g), None));
            let (_, list) = run_to_string(&request(CommandKind::List, Some(g), None));
            assert_eq!(count.trim().parse::<usize>().unwrap(), list.lines().count());
        }
        let (_, count) = run_to_string(&request(CommandKind::Count, None, Some(9)));
        let (_, list) = run_to_string(&request(CommandKind::List, None, Some(9)));
        assert_eq!(count.trim().parse::<usize>().unwrap(), list.lines().count());
    }

    #[test]
    fn parse_flags() {
        let cli = Cli::try_parse_from([
            "semiforest",
            "list",
            "--genus",
            "5",
            "--frobenius",
            "7",
            "--format",
            "json-lines",
            "--sorted",
            "--threads",
            "3",
        ])
        .unwrap();
        let req = EnumerationRequest::from(cli);
        assert_eq!(req.command, CommandKind::List);
        assert_eq!((req.genus, req.frobenius), (Some(5), Some(7)));
        assert_eq!(req.format, Format::JsonLines);
        assert!(req.sorted);
        assert_eq!(req.threads, 3);
        assert!(Cli::try_parse_from(["semiforest", "list", "--format", "xml"]).is_err());
    }
}
