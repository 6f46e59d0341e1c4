mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use zetalab::zeta::EvalAccuracy;
use zetalab::Error;

use args::{Cli, Format};

/// A failed run: exit code 2 for invalid input, 3 for a failed computation.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    pub fn validation(kind: &str, message: String) -> Self {
        Self { code: 2, kind: kind.into(), message }
    }

    pub fn io(e: std::io::Error) -> Self {
        Self { code: 3, kind: "Io".into(), message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // violated preconditions are reported as validation failures
        let precondition = e.is_validation()
            || matches!(
                e,
                Error::Unsupported(_)
                    | Error::RangeExceeded { .. }
                    | Error::AbscissaViolation { .. }
                    | Error::PoleAtOne { .. }
                    | Error::PoleAtZeroOrOne
                    | Error::PoleAtNonpositiveInteger(_)
                    | Error::PoleOnSegment { .. }
                    | Error::PoleInRange
                    | Error::PoleAtOneInWindow
                    | Error::DepthCapExceeded { .. }
            );
        Self { code: if precondition { 2 } else { 3 }, kind: e.kind().into(), message: e.to_string() }
    }
}

fn fail(f: Failure) -> ExitCode {
    let doc = json!({"error": f.kind, "message": f.message, "exit_code": f.code});
    eprintln!("{doc}");
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(Failure::validation("Usage", e.render().to_string().trim().to_string())),
    };
    let acc = match EvalAccuracy::new(cli.global.abs_tol, 1_000_000) {
        Ok(a) => a,
        Err(e) => return fail(e.into()),
    };
    if cli.global.format == Some(Format::Csv) && commands::natural_format(&cli.command) == Format::Json {
        return fail(Failure::validation(
            "InvalidParameter",
            "this command produces a structured report; use --format json".into(),
        ));
    }
    let config = json!({"global": cli.global, "args": cli.command});
    let name = config["args"]["command"].as_str().unwrap_or("unknown").to_string();
    let result = commands::run(&cli.command, &acc)
        .map(|mut report| {
            report.disclosures.insert(0, ("abs_tol".into(), format!("{:e}", acc.abs_tol)));
            report
        })
        .and_then(|report| output::emit(&name, &config, report, cli.global.format, cli.global.out_dir.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}
