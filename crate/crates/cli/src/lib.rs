//! Command-line surface for the topact engine: file formats, a workspace of
//! named objects, one report per subcommand, and the exhaustive suite.

pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod suite;
pub mod workspace;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::Property;
use error::CliResult;
use report::Report;
use workspace::Workspace;

#[derive(Debug, Parser)]
#[command(
    name = "topact",
    version,
    about = "Finite monoids with topologies: actions, reflections, completions and sites"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write report.json and derived object files into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load objects and report what they are.
    Validate { objects: Vec<String> },
    /// Algebraic facts about a monoid, and topological ones given a topology.
    Analyze { monoid: String, topology: Option<String> },
    /// The right congruence lattice.
    Congruences { monoid: String },
    /// The continuous subsets and the action topology they generate.
    ActTopology { monoid: String, topology: String },
    /// The powder reflection.
    Powder { monoid: String, topology: String },
    /// The T0 quotient of a topological monoid.
    T0 { monoid: String, topology: String },
    /// The largest coarsening making multiplication continuous.
    MultCore { monoid: String, topology: String },
    /// The completion along a filter.
    Complete {
        monoid: String,
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Surjection-inclusion and dense-closed factorizations of a hom.
    FactorHom {
        hom: String,
        #[arg(long, default_value = "discrete")]
        source_topology: String,
        #[arg(long, default_value = "discrete")]
        target_topology: String,
    },
    /// The principal site of a filter.
    Site {
        monoid: String,
        #[arg(long, default_value = "all")]
        filter: String,
        /// Print the site as a DOT graph.
        #[arg(long)]
        dot: bool,
    },
    /// Compare the principal sites of two monoids.
    Morita {
        first: String,
        second: String,
        /// Filter for the first monoid, then the second; one value applies to both.
        #[arg(long)]
        filter: Vec<String>,
    },
    /// Check a property; exits 1 when it is false.
    Check {
        #[arg(value_enum)]
        property: Property,
        monoid: String,
        topology: Option<String>,
        /// Defaults to the open congruences of the topology, or `all`.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run every invariant over all small monoids and topologies.
    Suite {
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 4)]
        carrier: usize,
    },
}

pub fn execute(w: &mut Workspace, command: &Command) -> CliResult<Report> {
    match command {
        Command::Validate { objects } => commands::validate(w, objects),
        Command::Analyze { monoid, topology } => commands::analyze(w, monoid, topology.as_deref()),
        Command::Congruences { monoid } => commands::congruences(w, monoid),
        Command::ActTopology { monoid, topology } => commands::act_topology(w, monoid, topology),
        Command::Powder { monoid, topology } => commands::powder(w, monoid, topology),
        Command::T0 { monoid, topology } => commands::t0(w, monoid, topology),
        Command::MultCore { monoid, topology } => commands::mult_core(w, monoid, topology),
        Command::Complete { monoid, filter } => commands::complete_cmd(w, monoid, filter),
        Command::FactorHom { hom, source_topology, target_topology } => {
            commands::factor_hom(w, hom, source_topology, target_topology)
        }
        Command::Site { monoid, filter, .. } => commands::site(w, monoid, filter),
        Command::Morita { first, second, filter } => commands::morita(w, first, second, filter),
        Command::Check { property, monoid, topology, filter } => {
            commands::check(w, *property, monoid, topology.as_deref(), filter.as_deref())
        }
        Command::Suite { order, carrier } => suite::suite(*order, *carrier),
    }
}

/// Runs a parsed command line, returning stdout and the exit code.
pub fn run(cli: &Cli) -> (String, Result<u8, error::CliError>) {
    let mut w = Workspace::with_fixtures();
    let report = match execute(&mut w, &cli.command) {
        Ok(r) => r,
        Err(e) => return (String::new(), Err(e)),
    };
    if let Some(dir) = &cli.out {
        if let Err(e) = report.write_to(dir) {
            return (String::new(), Err(e));
        }
    }
    let dot = matches!(cli.command, Command::Site { dot: true, .. });
    let out = match (&report.dot, dot, cli.json) {
        (Some(d), true, _) => d.clone(),
        (_, _, true) => report.json_text(),
        _ => report.text(),
    };
    (out, Ok(if report.holds { 0 } else { 1 }))
}
