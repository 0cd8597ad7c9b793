//! `bts`: command-line front end for `bts-core`.
//!
//! Exit codes: 0 success, 1 domain error (invalid input, empty subshift),
//! 2 certification failure, 64 usage error.

mod args;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use bts_core::{Error, Limits};
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use commands::*;

const EXIT_DOMAIN: u8 = 1;
const EXIT_CERT: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let s = Settings {
        limits: Limits { refine_cap: cli.precision_cap, digit_depth: cli.depth, ..Limits::default() },
    };
    match &cli.command {
        Command::Expand(a) => expand_cmd(a, &s),
        Command::Alpha(a) => alpha_cmd(a, &s),
        Command::Admissible(a) => admissible_cmd(a, &s),
        Command::SolveBeta(a) => solve_beta_cmd(a, &s),
        Command::Normalize(a) => normalize_cmd(a, &s),
        Command::Entropy(a) => entropy_cmd(a, &s),
        Command::SftEntropy(a) => sft_cmd(a, &s),
        Command::Dim(a) => dim_cmd(a, &s),
        Command::Bifurcation(a) => bifurcation_cmd(a, &s),
        Command::Sweep(a) => sweep_cmd(a, &s),
        Command::Holder(a) => holder_cmd(a, &s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if cli.precision_cap == 0 || cli.depth == 0 || cli.jobs == Some(0) {
        eprintln!("error: --precision-cap, --depth and --jobs must be positive");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(o) => {
            let written = if cli.json {
                let mut doc = o.json;
                doc["version"] = json!(env!("CARGO_PKG_VERSION"));
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else {
                write_text(&mut out, &o.text)
            };
            if written.is_err() {
                return ExitCode::from(EXIT_DOMAIN);
            }
            if o.domain_failure {
                ExitCode::from(EXIT_DOMAIN)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let cert = e.is_certification_failure();
            if cli.json {
                let kind = if cert { "certification" } else { "domain" };
                let doc = json!({ "error": e.to_string(), "kind": kind, "version": env!("CARGO_PKG_VERSION") });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if cert { EXIT_CERT } else { EXIT_DOMAIN })
        }
    }
}
