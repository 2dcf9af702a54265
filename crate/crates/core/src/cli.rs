//! Command-line front end.
//!
//! [`run`] takes the argument vector and a reader for standard input and
//! returns everything the process would print, so the whole interface is
//! testable in-process. Exit codes: 0 success, 1 a verification failed,
//! 2 usage or input error.

use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::counting::{verify_finite_inequality, Carrier, DEFAULT_ENUMERATION_CUTOFF};
use crate::diagonal::{earlier_indices, BaseFamily, DiagonalFamily};
use crate::encodings::{
    bounded_partition_to_seq, bounded_seq_to_partition, decode_nat_as_seq, encode_seq_as_nat,
    partition_to_seq_dedekind, seq_to_partition_dedekind, MarkerGrid, MarkerUniverse,
};
use crate::fraenkel::{fraenkel_report, DEFAULT_REPORT_ATOM_LIMIT};
use crate::suites::{run_suites, Suite};
use crate::text::{
    format_nat_list, format_partition, format_sequence, grid_carrier, marker_carrier, parse_nat,
    parse_nat_list, parse_partition, parse_sequence,
};

/// Points of `G(k)` printed by `diagonal`: `0..=DIAGONAL_SPAN`.
pub const DIAGONAL_SPAN: u64 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "seqpart",
    version,
    about = "Sequences versus finite-block partitions: counts, encodings, diagonal witnesses, Fraenkel certificates"
)]
struct Cli {
    /// Output as human-readable text or line-delimited JSON records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a(n) against B(n) for 1 <= n <= N.
    Table {
        #[arg(long = "max", value_name = "N", value_parser = clap::value_parser!(u64).range(1..=100_000))]
        max: u64,
        /// Recount both columns by enumeration up to this n.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CUTOFF as u64, value_parser = clap::value_parser!(u64).range(0..=9))]
        cutoff: u64,
    },
    /// Encode sequences (one per input line) with the marker encoding.
    EncodeDedekind(DedekindArgs),
    /// Decode marker-encoded partitions (one per input line).
    DecodeDedekind(DedekindArgs),
    /// Encode bounded-length sequences (one per input line) with the grid encoding.
    EncodeBounded(BoundedArgs),
    /// Decode grid-encoded partitions (one per input line).
    DecodeBounded(BoundedArgs),
    /// Run exhaustive property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteChoice,
    },
    /// Print G(k) membership on 0..=64 and every distinguishing witness.
    Diagonal {
        /// Base family: singleton:ARG, upto:ARG, evens or periodic:[PREFIX.]CYCLE.
        #[arg(long = "base", value_name = "DESC")]
        base: BaseFamily,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=1_000_000))]
        k: u64,
    },
    /// Certificate bundle for the finite Fraenkel shadow.
    Fraenkel {
        #[arg(long)]
        atoms: usize,
        /// Comma-separated support sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        esizes: Vec<usize>,
        #[arg(long)]
        b: usize,
    },
    /// Bijection between finite sequences of naturals and naturals.
    Seqnat {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Encode,
    Decode,
}

#[derive(Debug, Clone)]
enum SuiteChoice {
    All,
    One(Suite),
}

impl std::str::FromStr for SuiteChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(SuiteChoice::All)
        } else {
            s.parse().map(SuiteChoice::One)
        }
    }
}

#[derive(Debug, clap::Args)]
struct DedekindArgs {
    /// Whitespace-separated names of the base labels.
    #[arg(long, default_value = "x y z")]
    base: String,
    /// Number of markers m0, m1, ..
    #[arg(long = "markers", short = 'M', default_value_t = 4)]
    markers: usize,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
}

#[derive(Debug, clap::Args)]
struct BoundedArgs {
    /// Length bound; the grid has (n + 2)^2 cells.
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=62))]
    n: u64,
    /// Whitespace-separated names of labels outside the grid.
    #[arg(long, default_value = "")]
    plain: String,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
}

/// Everything a run prints, plus the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    format: Format,
    text: String,
}

impl Output {
    fn line(&mut self, human: impl AsRef<str>) {
        self.text.push_str(human.as_ref());
        self.text.push('\n');
    }

    fn record<T: Serialize>(&mut self, value: &T) {
        let line = serde_json::to_string(value).expect("records serialize");
        self.line(line);
    }

    fn emit<T: Serialize>(&mut self, human: impl AsRef<str>, value: &T) {
        match self.format {
            Format::Human => self.line(human),
            Format::Json => self.record(value),
        }
    }
}

enum Failure {
    /// Bad flags or unreadable / malformed input.
    Usage(String),
    /// A verification reported a counterexample.
    Verification(String),
}

fn read_input<R: Read>(path: &Option<String>, stdin: R) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("--in {p}: {e}"))),
        None => {
            let mut s = String::new();
            let mut stdin = stdin;
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn names(list: &str) -> Vec<String> {
    list.split_whitespace().map(String::from).collect()
}

/// Runs the CLI on `args` (including the program name).
pub fn run<R: Read>(args: &[String], stdin: R) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = Output {
        format: cli.format,
        text: String::new(),
    };
    match execute(cli.command, &mut out, stdin) {
        Ok(()) => Outcome {
            code: 0,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(Failure::Verification(msg)) => Outcome {
            code: 1,
            stdout: out.text,
            stderr: format!("verification failed: {msg}\n"),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: out.text,
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn execute<R: Read>(command: Command, out: &mut Output, stdin: R) -> Result<(), Failure> {
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    match command {
        Command::Table { max, cutoff } => {
            let report = verify_finite_inequality(max as usize, cutoff as usize)
                .map_err(|e| usage(&e))?;
            if out.format == Format::Human {
                out.line("n\ta(n)\tB(n)\tenumerated\tholds");
            }
            for row in &report.rows {
                let enumerated = row
                    .enumerated
                    .map_or("-".to_string(), |(a, b)| format!("{a}/{b}"));
                let human = format!(
                    "{}\t{}\t{}\t{}\t{}",
                    row.n, row.arrangements, row.partitions, enumerated, row.holds
                );
                let mut value = serde_json::to_value(row).expect("row serializes");
                value["kind"] = json!("row");
                out.emit(human, &value);
            }
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            out.emit(verdict, &json!({"kind": "summary", "pass": report.pass, "rows": report.rows.len()}));
            if !report.pass {
                let bad = report.rows.iter().find(|r| !r.holds).expect("a failing row");
                return Err(Failure::Verification(format!("row n = {}", bad.n)));
            }
        }
        Command::EncodeDedekind(args) => {
            let base = names(&args.base);
            let carrier = marker_carrier(&base, args.markers).map_err(|e| usage(&e))?;
            let base_carrier = Carrier::named(base.clone()).map_err(|e| usage(&e))?;
            let universe = MarkerUniverse::new(base.len(), args.markers);
            for line in read_input(&args.input, stdin)?.lines() {
                let seq = parse_sequence(&base_carrier, line).map_err(|e| usage(&e))?;
                let p = seq_to_partition_dedekind(&seq, &universe).map_err(|e| usage(&e))?;
                let text = format_partition(&carrier, &p);
                out.emit(&text, &json!({"kind": "partition", "partition": text}));
            }
        }
        Command::DecodeDedekind(args) => {
            let base = names(&args.base);
            let carrier = marker_carrier(&base, args.markers).map_err(|e| usage(&e))?;
            let universe = MarkerUniverse::new(base.len(), args.markers);
            for line in read_input(&args.input, stdin)?.lines() {
                let p = parse_partition(&carrier, line).map_err(|e| usage(&e))?;
                let seq = partition_to_seq_dedekind(&p, &universe).map_err(|e| usage(&e))?;
                let text = format_sequence(&carrier, &seq);
                out.emit(&text, &json!({"kind": "sequence", "sequence": text}));
            }
        }
        Command::EncodeBounded(args) => {
            let n = args.n as usize;
            let carrier = grid_carrier(n, &names(&args.plain)).map_err(|e| usage(&e))?;
            let grid = MarkerGrid::new(n, carrier.size()).map_err(|e| usage(&e))?;
            for line in read_input(&args.input, stdin)?.lines() {
                let seq = parse_sequence(&carrier, line).map_err(|e| usage(&e))?;
                let p = bounded_seq_to_partition(&seq, &grid).map_err(|e| usage(&e))?;
                let text = format_partition(&carrier, &p);
                out.emit(&text, &json!({"kind": "partition", "partition": text}));
            }
        }
        Command::DecodeBounded(args) => {
            let n = args.n as usize;
            let carrier = grid_carrier(n, &names(&args.plain)).map_err(|e| usage(&e))?;
            let grid = MarkerGrid::new(n, carrier.size()).map_err(|e| usage(&e))?;
            for line in read_input(&args.input, stdin)?.lines() {
                let p = parse_partition(&carrier, line).map_err(|e| usage(&e))?;
                let seq = bounded_partition_to_seq(&p, &grid).map_err(|e| usage(&e))?;
                let text = format_sequence(&carrier, &seq);
                out.emit(&text, &json!({"kind": "sequence", "sequence": text}));
            }
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = match suite {
                SuiteChoice::All => Suite::ALL.to_vec(),
                SuiteChoice::One(s) => vec![s],
            };
            let checks = run_suites(&suites);
            for check in &checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                let human = format!("{}\t{}\t{}\t{}", check.suite, status, check.name, check.detail);
                out.emit(human, check);
            }
            let failed = checks.iter().find(|c| !c.passed);
            let verdict = if failed.is_none() { "PASS" } else { "FAIL" };
            out.emit(
                format!("{verdict}: {} checks", checks.len()),
                &json!({"kind": "summary", "pass": failed.is_none(), "checks": checks.len()}),
            );
            if let Some(c) = failed {
                return Err(Failure::Verification(format!(
                    "{} / {}: {}",
                    c.suite, c.name, c.detail
                )));
            }
        }
        Command::Diagonal { base, k } => {
            let desc = base.to_string();
            let family = DiagonalFamily::new(base);
            let membership: String = (0..=DIAGONAL_SPAN)
                .map(|x| if family.contains(k, x) { '1' } else { '0' })
                .collect();
            out.emit(
                format!("G({k}) on 0..={DIAGONAL_SPAN}: {membership}"),
                &json!({"kind": "membership", "base": desc, "k": k, "from": 0, "bits": membership}),
            );
            let mut all_differ = true;
            for earlier in earlier_indices(k, DIAGONAL_SPAN + 1) {
                let w = family
                    .distinguishing_witness(k, earlier)
                    .expect("earlier_indices stays below Upper(k)");
                all_differ &= w.differs();
                out.emit(
                    format!(
                        "witness {} xi={} in_G={} in_earlier={} differs={}",
                        w.earlier,
                        w.xi,
                        w.in_derived,
                        w.in_earlier,
                        w.differs()
                    ),
                    &json!({
                        "kind": "witness",
                        "earlier": w.earlier.to_string(),
                        "xi": w.xi,
                        "in_derived": w.in_derived,
                        "in_earlier": w.in_earlier,
                        "differs": w.differs(),
                    }),
                );
            }
            if !all_differ {
                return Err(Failure::Verification("a witness failed to separate".into()));
            }
        }
        Command::Fraenkel { atoms, esizes, b } => {
            let records =
                fraenkel_report(atoms, &esizes, b, DEFAULT_REPORT_ATOM_LIMIT).map_err(|e| usage(&e))?;
            for r in &records {
                let inequality = match r.strict_inequality {
                    Some(true) => format!("{} > {}", r.supported_sequences, r.supported_partitions),
                    Some(false) => format!("{} <= {}", r.supported_sequences, r.supported_partitions),
                    None => format!("{} vs {}", r.supported_sequences, r.supported_partitions),
                };
                let verdict = if r.injection_exists { "YES" } else { "NO" };
                let human = format!(
                    "|E|={} b={} supported {} injection={} pigeonhole={} orbits={}/{} hall={}/{} rechecked={}",
                    r.support_size,
                    r.block_bound,
                    inequality,
                    verdict,
                    r.pigeonhole_suffices,
                    r.domain_orbits,
                    r.codomain_orbits,
                    r.hall_violators,
                    r.hall_targets,
                    r.certificate_rechecked
                );
                out.emit(human, r);
            }
            if let Some(r) = records.iter().find(|r| {
                r.strict_inequality == Some(false)
                    || (!r.injection_exists && !r.certificate_rechecked)
            }) {
                return Err(Failure::Verification(format!(
                    "support size {} failed",
                    r.support_size
                )));
            }
        }
        Command::Seqnat { direction, input } => {
            for line in read_input(&input, stdin)?.lines() {
                match direction {
                    Direction::Encode => {
                        let seq = parse_nat_list(line).map_err(|e| usage(&e))?;
                        let code = encode_seq_as_nat(&seq).to_string();
                        out.emit(&code, &json!({"kind": "nat", "value": code}));
                    }
                    Direction::Decode => {
                        let z = parse_nat(line).map_err(|e| usage(&e))?;
                        let seq = decode_nat_as_seq(&z).map_err(|e| usage(&e))?;
                        let text = format_nat_list(&seq);
                        out.emit(&text, &json!({"kind": "sequence", "sequence": text}));
                    }
                }
            }
        }
    }
    Ok(())
}
