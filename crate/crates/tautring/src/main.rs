//! Command-line front end: parses arguments, dispatches to the library, and
//! prints machine-readable JSON reports.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a verification ran
//! but found a mismatch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tautring::banana;
use tautring::report::{
    to_pretty_json, BananaEntry, BananaReport, Conventions, CurveFile, DeltaReport, DrReport,
    VerifyReport,
};
use tautring::splitting;
use tautring::strata::Space;
use tautring::tropical;
use tautring::{dr, Error};

#[derive(Parser)]
#[command(
    name = "tautring",
    version,
    about = "Exact tautological-ring computations: banana data, double ramification \
             cycles, splitting and relation verification, tropical PL functions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker count accepted for CI compatibility; computations are
    /// deterministic and currently single-threaded, so output is identical
    /// for any value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Root directory for fixture files referenced by relative path.
    #[arg(long, global = true, env = "TAUTRING_FIXTURES")]
    fixtures: Option<PathBuf>,
}

#[derive(Args)]
struct SpaceArgs {
    /// Genus of the (unglued) space.
    #[arg(long)]
    g: u32,
    /// Number of markings of the (unglued) space.
    #[arg(long)]
    n: u32,
    /// Comma-separated ramification vector.
    #[arg(long = "A", value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<i64>,
    /// Twist of the log canonical bundle.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    k: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Data with a residue parameter b; A has n-2 entries.
    Residue,
    /// Oriented data for the relation; A has n entries.
    Oriented,
}

#[derive(Subcommand)]
enum Cmd {
    /// List banana splitting data with weights and automorphism counts.
    Bananas {
        #[command(flatten)]
        space: SpaceArgs,
        /// Restrict to a single residue b (residue mode only).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        /// Enumeration mode; inferred from the length of A when omitted.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Compute a double ramification cycle in the stratum basis.
    Dr {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Check the banana sum against the pulled-back cycle on the glued space.
    VerifySplitting {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Check the divisor-times-cycle relation against zero.
    VerifyRelation {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Evaluate the stabilizing PL function difference on a curve file.
    Delta {
        /// JSON file with the tree, the slope vector A, and the twist k.
        #[arg(long)]
        curve: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invalid(_) => ExitCode::from(2),
                Error::Internal(_) => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> tautring::Result<ExitCode> {
    match &cli.cmd {
        Cmd::Bananas { space, b, mode } => {
            let report = cmd_bananas(space, *b, *mode)?;
            emit(&cli, &report)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dr { space } => {
            let s = Space::new(space.g, space.n)?;
            let class = dr::dr_cycle(s, &space.a, space.k)?;
            emit(&cli, &DrReport::new(s, &space.a, space.k, &class))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifySplitting { space } => {
            let s = Space::new(space.g, space.n)?;
            let v = splitting::verify_splitting(s, &space.a, space.k)?;
            let glued = Space::new(space.g + 1, space.n - 2)?;
            let report = VerifyReport::new("splitting", s, Some(glued), &space.a, space.k, &v);
            emit(&cli, &report)?;
            Ok(verdict(report.pass))
        }
        Cmd::VerifyRelation { space } => {
            let s = Space::new(space.g, space.n)?;
            let v = splitting::verify_relation(s, &space.a, space.k)?;
            let report = VerifyReport::new("relation", s, None, &space.a, space.k, &v);
            emit(&cli, &report)?;
            Ok(verdict(report.pass))
        }
        Cmd::Delta { curve } => {
            let path = resolve(curve, cli.fixtures.as_deref());
            let (curve, a, k) = CurveFile::load(&path)?;
            let d = tropical::delta(&curve, &a, k)?;
            let slope = tropical::glued_edge_slope(&curve, &a, k)?;
            println!("{d}");
            if cli.out.is_some() {
                emit(&cli, &DeltaReport::new(&curve, &a, k, &d, slope))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_bananas(
    args: &SpaceArgs,
    b: Option<i64>,
    mode: Option<Mode>,
) -> tautring::Result<BananaReport> {
    let space = Space::new(args.g, args.n)?;
    let residue_len = (args.n as usize).saturating_sub(2);
    let mode = match mode {
        Some(m) => m,
        None if args.a.len() == residue_len => Mode::Residue,
        None if args.a.len() == args.n as usize => Mode::Oriented,
        None => {
            return Err(tautring::invalid!(
                "A has {} entries; expected n - 2 = {} (residue mode) or n = {} (oriented mode)",
                args.a.len(),
                residue_len,
                args.n
            ))
        }
    };
    let (label, entries, bound) = match mode {
        Mode::Residue => {
            let data = match b {
                Some(b) => banana::residue_bananas(space, &args.a, args.k, b)?,
                None => banana::all_residue_bananas(space, &args.a, args.k)?,
            };
            let entries = data.iter().map(|d| BananaEntry::new(d, None)).collect();
            (
                "residue",
                entries,
                Some(banana::b_bound(space, &args.a, args.k)),
            )
        }
        Mode::Oriented => {
            if b.is_some() {
                return Err(tautring::invalid!("--b applies to residue mode only"));
            }
            let data = banana::oriented_bananas(space, &args.a, args.k)?;
            let entries = data
                .iter()
                .map(|(d, s)| BananaEntry::new(d, Some(*s)))
                .collect();
            ("oriented", entries, None)
        }
    };
    Ok(BananaReport {
        space,
        mode: label,
        a: args.a.clone(),
        k: args.k,
        b,
        b_bound: bound,
        conventions: Conventions::current(),
        entries,
    })
}

fn verdict(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn resolve(path: &Path, fixtures: Option<&Path>) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(root) = fixtures {
            let candidate = root.join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

fn emit<T: Serialize>(cli: &Cli, report: &T) -> tautring::Result<()> {
    let json = to_pretty_json(report);
    match &cli.out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| tautring::invalid!("cannot write {}: {e}", path.display())),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}
