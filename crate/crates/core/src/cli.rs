//! Command-line front end.
//!
//! Exit codes: 0 success or theorem match, 1 verification failure or
//! mismatch, 2 usage or input error, 3 search budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::coloring::{color_board, display_color, Coloring};
use crate::error::Error;
use crate::io::{
    export_coloring_json, export_dimacs, import_coloring_json, render_grid, RenderFormat,
    RenderSpec,
};
use crate::latin::{build_graph, CyclicLatinSquare};
use crate::oracle::{verify_theorem_with, Agreement, ChiOptions, ChiStatus, SearchBudget};
use crate::verify::{check_proper, verify_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-latin",
    version,
    about = "Colorings and chromatic numbers of cyclic Latin square graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dimacs,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ImageFormat {
    Text,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the labels of the cyclic Latin square
    Generate {
        #[arg(long, value_parser = clap::value_parser!(usize))]
        order: usize,
    },
    /// Print the closed-form coloring
    Color {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: GridFormat,
        /// Show 1-based colors (residue 0 as k) in text output
        #[arg(long)]
        paper_colors: bool,
    },
    /// Check a coloring: properness, equitability and label structure
    Verify {
        #[arg(long)]
        order: usize,
        /// JSON coloring document; defaults to the closed-form coloring
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Print the full report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Compute the chromatic number by exact search
    Chi {
        #[arg(long)]
        order: usize,
        /// Seconds allowed for each decision run
        #[arg(long)]
        max_time: Option<f64>,
        /// Search nodes allowed for each decision run
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Write the graph or the coloring in an interchange format
    Export {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
    /// Draw the coloring as a text grid or an SVG image
    Render {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ImageFormat,
        /// Include the two extra columns (even orders)
        #[arg(long)]
        extended: bool,
        /// Show labels next to colors in text output
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        paper_colors: bool,
        /// Comma-separated SVG fill colors, one per color
        #[arg(long, value_delimiter = ',')]
        palette: Option<Vec<String>>,
    },
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
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid --max-time {0}")]
    BadTime(f64),
    #[error(transparent)]
    Write(#[from] std::io::Error),
}

fn text_grid(coloring: &Coloring, paper_colors: bool) -> String {
    let spec = RenderSpec {
        paper_colors,
        ..RenderSpec::default()
    };
    render_grid(coloring, &spec).expect("text rendering without extended columns cannot fail")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Generate { order } => {
            let square = CyclicLatinSquare::new(order)?;
            let width = (order - 1).to_string().len();
            for row in square.rows() {
                let line: Vec<String> = row.iter().map(|l| format!("{l:>width$}")).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Color {
            order,
            format,
            paper_colors,
        } => {
            let coloring = color_board(order)?;
            match format {
                GridFormat::Json => write!(out, "{}", export_coloring_json(&coloring, None))?,
                GridFormat::Text => write!(out, "{}", text_grid(&coloring, paper_colors))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            order,
            coloring,
            json,
        } => {
            let graph = build_graph(order)?;
            let coloring = match coloring {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Read {
                        path: path.clone(),
                        source,
                    })?;
                    import_coloring_json(&text)?
                }
                None => color_board(order)?,
            };
            let suite = verify_suite(&graph, &coloring)?;
            if json {
                let text = serde_json::to_string_pretty(&suite).expect("suite report serializes");
                writeln!(out, "{text}")?;
            } else {
                write_suite(out, &suite)?;
            }
            Ok(if suite.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Chi {
            order,
            max_time,
            max_nodes,
            threads,
        } => {
            let max_time = match max_time {
                Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
                Some(s) => return Err(CliError::BadTime(s)),
                None => None,
            };
            let options = ChiOptions {
                budget: SearchBudget {
                    max_nodes,
                    max_time,
                },
                threads: threads.max(1),
            };
            let check = verify_theorem_with(order, options)?;
            let r = &check.result;
            writeln!(out, "order={}", check.order)?;
            writeln!(out, "expected={}", check.expected)?;
            writeln!(out, "status={}", status_name(r.status))?;
            match r.chi {
                Some(chi) => writeln!(out, "chi={chi}")?,
                None => writeln!(out, "chi=unknown")?,
            }
            writeln!(out, "bounds=[{},{}]", r.lower_bound, r.upper_bound)?;
            writeln!(out, "agreement={}", agreement_name(check.agreement))?;
            writeln!(out, "nodes={}", r.stats.nodes_explored)?;
            writeln!(out, "elapsed_s={:.3}", r.stats.elapsed.as_secs_f64())?;
            if let (Some(w), Some(_)) = (&r.witness, r.chi) {
                writeln!(out, "witness:")?;
                write!(out, "{}", text_grid(w, false))?;
            }
            Ok(match check.agreement {
                Agreement::Match => EXIT_OK,
                Agreement::Mismatch => EXIT_FAILED,
                Agreement::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Export { order, format } => {
            match format {
                ExportFormat::Dimacs => write!(out, "{}", export_dimacs(&build_graph(order)?))?,
                ExportFormat::Json => {
                    let graph = build_graph(order)?;
                    let coloring = color_board(order)?;
                    let report = check_proper(&graph, &coloring)?;
                    write!(out, "{}", export_coloring_json(&coloring, Some(&report)))?
                }
            }
            Ok(EXIT_OK)
        }
        Command::Render {
            order,
            format,
            extended,
            labels,
            paper_colors,
            palette,
        } => {
            let coloring = color_board(order)?;
            let spec = RenderSpec {
                format: match format {
                    ImageFormat::Text => RenderFormat::Text,
                    ImageFormat::Svg => RenderFormat::Svg,
                },
                show_labels: labels,
                show_extended_columns: extended,
                paper_colors,
                palette,
            };
            write!(out, "{}", render_grid(&coloring, &spec)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn status_name(status: ChiStatus) -> &'static str {
    match status {
        ChiStatus::Exact => "exact",
        ChiStatus::LowerAndUpperBounds => "lower_and_upper_bounds",
        ChiStatus::Timeout => "timeout",
    }
}

fn agreement_name(a: Agreement) -> &'static str {
    match a {
        Agreement::Match => "match",
        Agreement::Mismatch => "mismatch",
        Agreement::Inconclusive => "inconclusive",
    }
}

fn write_suite(out: &mut dyn Write, suite: &crate::verify::SuiteReport) -> std::io::Result<()> {
    let r = &suite.report;
    let k = suite.num_colors;
    writeln!(out, "order={}", suite.order)?;
    writeln!(out, "colors={} expected={}", k, suite.expected_colors)?;
    writeln!(out, "proper={}", r.proper)?;
    writeln!(out, "conflicts={}", r.conflicts.len())?;
    for (a, b) in r.conflicts.iter().take(10) {
        writeln!(out, "  conflict {a} {b}")?;
    }
    writeln!(out, "equitable={}", r.equitable)?;
    writeln!(out, "class_sizes min={} max={}", r.min_class, r.max_class)?;
    let sizes: Vec<String> = r
        .class_sizes
        .iter()
        .map(|(c, s)| format!("{c}(color {}):{s}", display_color(*c, k)))
        .collect();
    writeln!(out, "  {}", sizes.join(" "))?;
    if let Some(ok) = suite.class_pattern {
        writeln!(out, "class_pattern={ok}")?;
    }
    if !suite.parity.is_empty() {
        let failed: Vec<usize> = suite
            .parity
            .iter()
            .filter(|f| !f.holds(suite.order))
            .map(|f| f.color)
            .collect();
        writeln!(out, "parity={}", failed.is_empty())?;
        if !failed.is_empty() {
            writeln!(out, "  failing colors {failed:?}")?;
        }
    }
    if !suite.sequences.is_empty() {
        let failed: Vec<usize> = suite
            .sequences
            .iter()
            .filter(|s| !s.1)
            .map(|s| s.0)
            .collect();
        writeln!(out, "label_steps={}", failed.is_empty())?;
        if !failed.is_empty() {
            writeln!(out, "  failing colors {failed:?}")?;
        }
    }
    writeln!(
        out,
        "verdict={}",
        if suite.passed() { "pass" } else { "fail" }
    )
}
