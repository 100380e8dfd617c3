//! Command-line front end: file formats, job configuration and reports.

pub mod commands;
pub mod config;
pub mod files;
pub mod report;

use std::io::Write;

use clap::{Parser, Subcommand};

use config::{Job, JobArgs};

#[derive(Debug, Parser)]
#[command(
    name = "iontrap",
    version,
    about = "Compile fermion and fermion-boson models to trapped-ion gate sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the Hamiltonian of a model as JSON.
    Build(JobArgs),
    /// Map, Trotterize and compile a model; print gate counts.
    Compile(JobArgs),
    /// Report gate counts, protocol time and classical cost.
    Estimate(JobArgs),
    /// Check a small instance against exact simulation.
    Verify(JobArgs),
}

/// Exit status for a finished command.
pub fn exit_code(result: &anyhow::Result<()>) -> u8 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is::<commands::VerificationFailed>() => 1,
        Err(_) => 2,
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    let (args, command): (&JobArgs, fn(&Job, &mut dyn Write) -> anyhow::Result<()>) = match &cli.command {
        Command::Build(a) => (a, commands::build),
        Command::Compile(a) => (a, commands::compile),
        Command::Estimate(a) => (a, commands::estimate),
        Command::Verify(a) => (a, commands::verify),
    };
    command(&Job::resolve(args)?, out)
}
