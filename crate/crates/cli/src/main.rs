//! `kndeform`: tables, verification suites and specialization for the
//! elliptic family of Krichever–Novikov type algebras and its degenerations.
//!
//! Exit status: 0 on success, 2 when a mathematical check fails, 1 on usage
//! or I/O errors.

mod args;
mod input;
mod routes;
mod specialize;
mod tables;
mod verify;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command, Common};
use routes::MathFailure;

const EXIT_FAILURE: u8 = 2;
const EXIT_USAGE: u8 = 1;

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Tables(a) => {
            let c = &a.common;
            let spec = input::resolve_spec(c.spec.as_deref(), &c.params)?;
            let text = tables::run(a.what, a.route, &spec, &c.lie, c.window, c.order, c.format)?;
            emit(c, &text)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let c = &a.common;
            let explicit = c.spec.is_some() || !input::bindings(&c.params)?.is_empty() || input::slope_is_infinite(&c.params);
            let spec = if explicit {
                Some(input::resolve_spec(c.spec.as_deref(), &c.params)?)
            } else {
                None
            };
            let suite = verify::SuiteInput {
                spec,
                lie: &c.lie,
                window: c.window,
                order: c.order,
                p: input::parse_poly(&a.p).context("--p")?,
            };
            let report = verify::run(a.suite, &suite)?;
            emit(c, &verify::render(&report, c.format)?)?;
            Ok(if report.passed() { 0 } else { EXIT_FAILURE })
        }
        Command::Specialize(a) => {
            let c = &a.common;
            let spec = input::resolve_spec(c.spec.as_deref(), &c.params)?;
            let fiber = specialize::fiber(&spec)?;
            for w in &fiber.warnings {
                eprintln!("warning: {w}");
            }
            emit(c, &specialize::render(&fiber, c.format)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<MathFailure>().is_some() {
                ExitCode::from(EXIT_FAILURE)
            } else {
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}
