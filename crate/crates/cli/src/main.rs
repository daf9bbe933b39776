mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tropcurve::paths::TieRule;
use tropcurve::Rat;

use crate::output::Failure;

#[derive(Parser)]
#[command(name = "tropcurve", version, about = "Exact computations with weighted balanced tropical curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn rational(s: &str) -> Result<Rat, String> {
    tropcurve::rational::parse_rat(s)
}

#[derive(Args)]
struct Input {
    /// Curve document, or `-` for standard input.
    file: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the curve conditions and list violations.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "lenient")]
        strict: bool,
        /// Skip balancing at flagged truncation points.
        #[arg(long)]
        lenient: bool,
    },
    /// Print the tropical area.
    Area {
        #[command(flatten)]
        input: Input,
    },
    /// Replace the curve by a saturated curve in the standard simplex.
    Saturate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = rational)]
        delta: Rat,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Extract the paths starting on the face {x_dir = 0} of a saturated curve.
    Paths {
        #[command(flatten)]
        input: Input,
        /// 1-based coordinate direction.
        #[arg(long)]
        dir: usize,
        #[arg(long, default_value = "id")]
        tie: TieRule,
        /// Print plain segment coordinates of every path piece instead.
        #[arg(long)]
        emit_segments: bool,
    },
    /// Run the full vertex-count certificate.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = rational)]
        delta: Rat,
        #[arg(long, value_parser = rational)]
        area_budget: Rat,
        #[arg(long, default_value = "id")]
        tie: TieRule,
        #[arg(long)]
        json: bool,
    },
    /// Generate a curve from the gallery.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short, long, default_value = "-", global = true)]
        output: String,
        /// Print plain segment coordinates instead of a document.
        #[arg(long, global = true)]
        emit_segments: bool,
    },
    /// Compare the measure density on a slice with the crossing-sum prediction.
    Slice {
        #[command(flatten)]
        input: Input,
        /// 1-based coordinate direction.
        #[arg(long)]
        dir: usize,
        #[arg(long, value_parser = rational)]
        at: Rat,
    },
    /// Components and first Betti number of the vertex graph.
    Betti {
        #[command(flatten)]
        input: Input,
    },
    /// The conjectural Castelnuovo-type vertex bound.
    Castelnuovo {
        #[arg(long)]
        degree: num_bigint::BigInt,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The tropical line with the given apex (default: the centroid of K).
    Line {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Comma-separated coordinates, e.g. 1/3,1/3.
        #[arg(long)]
        apex: Option<String>,
    },
    /// The truncated infinite curve in the unit square.
    Example7 {
        #[arg(long)]
        levels: u32,
    },
    /// A superposition of random translated lines.
    Random {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        complexity: usize,
    },
    /// A random balanced tree in the dilated simplex.
    Tree {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        complexity: usize,
        #[arg(long, value_parser = rational, default_value = "1/4")]
        delta: Rat,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { input, lenient, .. } => commands::validate(&input.file, lenient),
        Command::Area { input } => commands::area(&input.file),
        Command::Saturate { input, delta, output } => commands::saturate(&input.file, &delta, &output),
        Command::Paths {
            input,
            dir,
            tie,
            emit_segments,
        } => commands::paths(&input.file, dir, tie, emit_segments),
        Command::Certify {
            input,
            delta,
            area_budget,
            tie,
            json,
        } => commands::certify(&input.file, &delta, &area_budget, tie, json),
        Command::Gen {
            kind,
            output,
            emit_segments,
        } => commands::gen(kind, &output, emit_segments),
        Command::Slice { input, dir, at } => commands::slice(&input.file, dir, &at),
        Command::Betti { input } => commands::betti(&input.file),
        Command::Castelnuovo { degree, dim } => commands::castelnuovo(&degree, dim),
    }
}

fn main() -> ExitCode {
    // Exit quietly when a downstream pipe closes, like other Unix filters.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
