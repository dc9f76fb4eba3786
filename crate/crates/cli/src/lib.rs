//! Command line front end for `hfk-core`: corpus handling, knot references,
//! the subcommands and the `check` runner.

pub mod check;
pub mod commands;
pub mod corpus;
pub mod knot;
pub mod plot;

use std::path::Path;

use thiserror::Error;

use hfk_core::diagram::DiagramError;

pub use corpus::{Corpus, CorpusEntry, Expected};
pub use knot::{Knot, KnotRef};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown knot {0}")]
    UnknownKnot(String),
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("no certified route: {0}")]
    NoCertifiedRoute(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0} failed")]
    CheckFailed(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }

    pub fn from_diagram(context: &str, e: DiagramError) -> Self {
        match e {
            DiagramError::MultiComponent | DiagramError::ClosureIsLink(_) => {
                CliError::Domain(format!("{context}: {e}"))
            }
            _ => CliError::Parse(format!("{context}: {e}")),
        }
    }

    /// 1 for domain errors, 2 for input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownKnot(_) | CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::NoCertifiedRoute(_) | CliError::Domain(_) | CliError::CheckFailed(_) => 1,
        }
    }
}

/// Result of a command in both output formats.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
}

impl Output {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}
