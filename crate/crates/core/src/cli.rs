//! The `kbonacci` command line.
//!
//! ```text
//! kbonacci term   --k K --j J [--method iter|qpow]
//! kbonacci seq    --k K --from A --to B
//! kbonacci matrix [--family F|L|Q] --k K [--r R] [--j J]
//! kbonacci blocks --k K --count N
//! kbonacci verify [--suite all|ID,ID,...] [--max-k K] [--max-r R] [--max-n N] [--with K:R]...
//! kbonacci bench  --k K --j-max J --step S
//! ```
//!
//! Every subcommand accepts `--format plain|json|csv` and `--output PATH`.
//! Exit status is 0 on success, 1 when `verify` finds an undeclared failure
//! or `bench` sees two different values (or the output cannot be written),
//! and 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bench::{bench, BenchRow};
use crate::error::Error;
use crate::identities::{parse_selection, run_suite, Grid};
use crate::kbx::{fast_term, Family, MatrixSpec};
use crate::matrix::SquareMatrix;
use crate::sequence::{iterate_term, KbonacciSequence, Order};

#[derive(Debug, Parser)]
#[command(
    name = "kbonacci",
    version,
    about = "Exact k-bonacci sequences and matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Iter,
    Qpow,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One term f[j, k].
    Term {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, value_enum, default_value = "iter")]
        method: Method,
        #[command(flatten)]
        out: Output,
    },
    /// Terms f[from..=to, k]; bounds may be negative.
    Seq {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        #[command(flatten)]
        out: Output,
    },
    /// An F, L or Q matrix.
    Matrix {
        #[arg(long, default_value = "F")]
        family: Family,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        j: i64,
        #[command(flatten)]
        out: Output,
    },
    /// The first N backward blocks with their properties.
    Blocks {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Run the identity checkers over a grid.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 2)]
        max_r: u32,
        /// Bound on every index parameter (n, j, m).
        #[arg(long, default_value_t = 12)]
        max_n: i64,
        /// Extra level, as K:R. Repeatable.
        #[arg(long = "with", value_parser = parse_level)]
        with: Vec<(usize, u32)>,
        #[command(flatten)]
        out: Output,
    },
    /// Time the iterative and Q-power paths against each other.
    Bench {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        j_max: i64,
        #[arg(long)]
        step: i64,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_level(s: &str) -> Result<(usize, u32), String> {
    let (k, r) = s
        .split_once(':')
        .ok_or_else(|| format!("expected K:R, got `{s}`"))?;
    let k = k
        .trim()
        .parse()
        .map_err(|e| format!("bad K in `{s}`: {e}"))?;
    let r = r
        .trim()
        .parse()
        .map_err(|e| format!("bad R in `{s}`: {e}"))?;
    Ok((k, r))
}

/// How a subcommand ended.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BenchMismatch { .. } => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Rendered output plus the exit status it should produce.
struct Rendered {
    text: String,
    status: i32,
}

impl From<String> for Rendered {
    fn from(text: String) -> Self {
        Rendered { text, status: 0 }
    }
}

fn csv_document(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Always)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json_document(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
    s.push('\n');
    s
}

fn render_term(k: Order, j: i64, method: Method, format: Format) -> Result<Rendered, Failure> {
    let value = match method {
        Method::Iter => iterate_term(k, j),
        Method::Qpow => fast_term(k, j)?,
    };
    Ok(match format {
        Format::Plain => format!("{value}\n"),
        Format::Json => json_document(json!({
            "k": k.get(),
            "j": j,
            "method": method,
            "value": value.to_string(),
        })),
        Format::Csv => csv_document(
            &["k", "j", "method", "value"],
            [vec![
                k.to_string(),
                j.to_string(),
                format!("{method:?}").to_lowercase(),
                value.to_string(),
            ]],
        ),
    }
    .into())
}

fn render_seq(k: Order, from: i64, to: i64, format: Format) -> Result<Rendered, Failure> {
    let values = KbonacciSequence::new(k).range(from, to)?;
    let pairs: Vec<(i64, String)> = (from..=to)
        .zip(values.iter().map(|v| v.to_string()))
        .collect();
    Ok(match format {
        Format::Plain => {
            let jw = pairs
                .iter()
                .map(|(j, _)| j.to_string().len())
                .max()
                .unwrap_or(1);
            let vw = pairs.iter().map(|(_, v)| v.len()).max().unwrap_or(1);
            pairs
                .iter()
                .map(|(j, v)| format!("{j:>jw$}  {v:>vw$}\n"))
                .collect()
        }
        Format::Json => json_document(json!({
            "k": k.get(),
            "from": from,
            "to": to,
            "terms": pairs.iter().map(|(j, v)| json!({"j": j, "value": v})).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_document(
            &["k", "j", "value"],
            pairs
                .iter()
                .map(|(j, v)| vec![k.to_string(), j.to_string(), v.clone()]),
        ),
    }
    .into())
}

fn render_matrix(m: &SquareMatrix, format: Format) -> Rendered {
    match format {
        Format::Plain => m.to_plain(),
        Format::Json => {
            let mut s = m.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let header: Vec<String> = (0..m.dim()).map(|c| format!("c{c}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_document(
                &header,
                m.rows()
                    .map(|row| row.iter().map(|v| v.to_string()).collect()),
            )
        }
    }
    .into()
}

fn render_blocks(k: Order, count: u32, format: Format) -> Rendered {
    let seq = KbonacciSequence::new(k);
    let blocks: Vec<_> = (0..count)
        .map(|n| (seq.backward_block(n), seq.block_properties(n)))
        .collect();
    match format {
        Format::Plain => {
            let width = blocks
                .iter()
                .flat_map(|(b, _)| b.values.iter().map(|v| v.to_string().len()))
                .max()
                .unwrap_or(1);
            let mut out = String::new();
            for (block, props) in &blocks {
                let first = block.first_index();
                let last = first - (k.get() as i64 - 1);
                let values: Vec<String> = block
                    .values
                    .iter()
                    .map(|v| format!("{:>width$}", v.to_string()))
                    .collect();
                out.push_str(&format!(
                    "n={:<3} [{first}..{last}]  {}\n",
                    block.index,
                    values.join(" ")
                ));
                let flags = [
                    ("alternating", props.alternating_signs),
                    ("zero-sum", props.zero_sum),
                    ("leader=f[k+n]", props.leader_matches_forward),
                    ("leader=2^n", props.leader_is_power_of_two),
                    ("last=±1", props.last_nonzero_unit),
                    ("second-last=±(2n+1)", props.second_last_odd),
                    ("interior-even", props.interior_even),
                ];
                let marks: Vec<String> = flags
                    .iter()
                    .map(|(name, ok)| format!("{}{name}", if *ok { "+" } else { "-" }))
                    .collect();
                out.push_str(&format!("      {}\n", marks.join(" ")));
            }
            out
        }
        Format::Json => json_document(json!({
            "k": k.get(),
            "blocks": blocks.iter().map(|(b, p)| json!({
                "n": b.index,
                "first_index": b.first_index(),
                "values": b.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "properties": p,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut header = vec!["n".to_string(), "first_index".to_string()];
            header.extend((1..=k.get()).map(|i| format!("v{i}")));
            header.extend(
                [
                    "alternating_signs",
                    "zero_sum",
                    "leader_matches_forward",
                    "leader_is_power_of_two",
                    "last_nonzero_unit",
                    "second_last_odd",
                    "interior_even",
                ]
                .map(String::from),
            );
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_document(
                &header,
                blocks.iter().map(|(b, p)| {
                    let mut row = vec![b.index.to_string(), b.first_index().to_string()];
                    row.extend(b.values.iter().map(|v| v.to_string()));
                    row.extend(
                        [
                            p.alternating_signs,
                            p.zero_sum,
                            p.leader_matches_forward,
                            p.leader_is_power_of_two,
                            p.last_nonzero_unit,
                            p.second_last_odd,
                            p.interior_even,
                        ]
                        .map(|b| b.to_string()),
                    );
                    row
                }),
            )
        }
    }
    .into()
}

fn unix_timestamp() -> String {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_default()
}

fn render_verify(suite: &str, grid: &Grid, format: Format) -> Result<Rendered, Failure> {
    let selection = parse_selection(suite)?;
    let mut report = run_suite(&selection, grid);
    report.timestamp = Some(unix_timestamp());
    let text = match format {
        Format::Plain => report.to_plain(),
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => csv_document(
            &["id", "checker", "reading", "k", "r", "status", "expected"],
            report.cases.iter().map(|c| {
                vec![
                    c.id.clone(),
                    c.checker.to_string(),
                    c.reading.to_string(),
                    c.k.to_string(),
                    c.r.to_string(),
                    c.status.to_string(),
                    c.expected.to_string(),
                ]
            }),
        ),
    };
    Ok(Rendered {
        text,
        status: if report.pass { 0 } else { 1 },
    })
}

fn render_bench(k: Order, rows: &[BenchRow], format: Format) -> Rendered {
    match format {
        Format::Plain => {
            let mut out = format!(
                "{:>12} {:>14} {:>14} {:>10}\n",
                "j", "iter_seconds", "qpow_seconds", "digits"
            );
            for row in rows {
                out.push_str(&format!(
                    "{:>12} {:>14.6} {:>14.6} {:>10}\n",
                    row.j, row.iter_seconds, row.qpow_seconds, row.digits
                ));
            }
            out
        }
        Format::Json => json_document(json!({ "k": k.get(), "rows": rows })),
        Format::Csv => csv_document(
            &["j", "iter_seconds", "qpow_seconds", "digits"],
            rows.iter().map(|row| {
                vec![
                    row.j.to_string(),
                    row.iter_seconds.to_string(),
                    row.qpow_seconds.to_string(),
                    row.digits.to_string(),
                ]
            }),
        ),
    }
    .into()
}

fn execute(command: Command) -> Result<(Rendered, Output), Failure> {
    Ok(match command {
        Command::Term { k, j, method, out } => {
            (render_term(Order::new(k)?, j, method, out.format)?, out)
        }
        Command::Seq { k, from, to, out } => {
            (render_seq(Order::new(k)?, from, to, out.format)?, out)
        }
        Command::Matrix {
            family,
            k,
            r,
            j,
            out,
        } => {
            let spec = MatrixSpec {
                family,
                k: Order::new(k)?,
                r,
                j,
            };
            (render_matrix(&spec.build()?, out.format), out)
        }
        Command::Blocks { k, count, out } => {
            (render_blocks(Order::new(k)?, count, out.format), out)
        }
        Command::Verify {
            suite,
            max_k,
            max_r,
            max_n,
            with,
            out,
        } => {
            if max_k < 2 {
                return Err(Error::InvalidOrder(max_k).into());
            }
            if max_n < 1 {
                return Err(Failure::Usage(format!(
                    "--max-n must be at least 1, got {max_n}"
                )));
            }
            let mut grid = Grid::new(max_k, max_r, max_n);
            for (k, r) in with {
                Order::new(k)?;
                grid = grid.with_level(k, r);
            }
            (render_verify(&suite, &grid, out.format)?, out)
        }
        Command::Bench {
            k,
            j_max,
            step,
            out,
        } => {
            let k = Order::new(k)?;
            let rows = bench(k, j_max, step)?;
            (render_bench(k, &rows, out.format), out)
        }
    })
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit status. Results go to `out` or to the
/// `--output` file; diagnostics go to `err` as a single line.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(cli.command) {
        Ok((rendered, output)) => {
            let written = match &output.output {
                Some(path) => std::fs::write(path, &rendered.text),
                None => out.write_all(rendered.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return 1;
            }
            rendered.status
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
