//! Command-line front end. Every invocation prints one JSON report
//! `{status, payload, human_summary, version, backend[, timestamp]}`.
//!
//! Exit codes: 0 ok, 1 mathematical negative, 2 usage or parse error,
//! 3 unsupported scalar, undecided, or cap exceeded.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

pub use args::{BackendKind, Cli, Command, ConstructKind, SolveArgs};

use crate::error::Error;
use crate::scalar::{session_tolerance, set_session_tolerance};

/// Float tolerance override for the float backend.
pub const TOLERANCE_ENV: &str = "BALLMAP_FLOAT_TOLERANCE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
    Usage,
    Undecided,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Usage => 2,
            Status::Undecided => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Negative | Status::Usage => "fail",
            Status::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
    pub summary: String,
}

impl Outcome {
    pub fn new(status: Status, payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            status,
            payload,
            summary: summary.into(),
        }
    }
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::UnsupportedScalar(_) | Error::UnsupportedInverse | Error::CapExceeded(_) => Status::Undecided,
        Error::NotCyclic => Status::Negative,
        _ => Status::Usage,
    }
}

pub fn error_outcome(e: &Error) -> Outcome {
    Outcome::new(error_status(e), json!({ "error": e.to_string() }), format!("error: {e}"))
}

fn backend_descriptor(b: BackendKind) -> String {
    match b {
        BackendKind::Exact => "exact: Q(zeta_L) with rational square roots".to_string(),
        BackendKind::Float => format!("float: f64, tolerance {:e}", session_tolerance()),
    }
}

pub fn render(outcome: &Outcome, backend: Option<BackendKind>, timestamp: bool) -> String {
    let mut report = json!({
        "status": outcome.status.label(),
        "payload": outcome.payload,
        "human_summary": outcome.summary,
        "version": env!("CARGO_PKG_VERSION"),
        "backend": backend.map(backend_descriptor),
    });
    if timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report["timestamp"] = json!(secs);
    }
    serde_json::to_string_pretty(&report).expect("report serialises")
}

fn apply_tolerance_env() -> Result<(), Error> {
    if let Ok(raw) = std::env::var(TOLERANCE_ENV) {
        let eps: f64 = raw
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{TOLERANCE_ENV}={raw:?} is not a number")))?;
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Parse(format!("{TOLERANCE_ENV} must be positive")));
        }
        set_session_tolerance(eps);
    }
    Ok(())
}

/// Runs one command; the report goes to `out`, the exit code is returned.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let o = Outcome::new(Status::Usage, json!({ "error": e.to_string() }), "usage error");
            let _ = writeln!(out, "{}", render(&o, None, false));
            return o.status.exit_code();
        }
    };
    let outcome = match apply_tolerance_env() {
        Ok(()) => commands::execute(&cli).unwrap_or_else(|e| error_outcome(&e)),
        Err(e) => error_outcome(&e),
    };
    let _ = writeln!(out, "{}", render(&outcome, Some(cli.backend), !cli.no_timestamp));
    outcome.status.exit_code()
}

pub(crate) fn read_json(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
