use std::io::{self, IsTerminal, Read, Write};
use std::process::ExitCode;

use tropcurve::document::DocumentError;
use tropcurve::Error;

/// Why a command did not succeed; each kind has its own exit code.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input or arguments (exit 1).
    Input(String),
    /// A check reported FAIL; the report is already printed (exit 2).
    Check,
    /// An internal precondition did not hold (exit 3).
    Internal(String),
}

impl Failure {
    pub fn report(self) -> ExitCode {
        match self {
            Failure::Input(m) => {
                eprintln!("error: {m}");
                ExitCode::from(1)
            }
            Failure::Check => ExitCode::from(2),
            Failure::Internal(m) => {
                eprintln!("error: {m}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use Error::*;
        match e {
            NonTransversal(_) | VertexOnBoundary(_) | NotSaturated | DegenerateSlice(_)
            | PreconditionViolated(_) | StuckVertex(_) | CollarFailure(_) | SkeletonRay(_)
            | DegenerateCurve(_) | RegionNotContained => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

pub fn write_output(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stdout().is_terminal()
}

/// Prints a report line, colouring a trailing PASS/FAIL on terminals.
pub fn line(text: &str) {
    if use_color() {
        if let Some(head) = text.strip_suffix(" PASS") {
            println!("{head} \x1b[32mPASS\x1b[0m");
            return;
        }
        if let Some(head) = text.strip_suffix(" FAIL") {
            println!("{head} \x1b[31mFAIL\x1b[0m");
            return;
        }
    }
    println!("{text}");
}
