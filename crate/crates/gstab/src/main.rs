//! `gstab` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gstab::acceptance;
use gstab::scenario::run_file;
use gstab_core::{CategoryModel, ModelId};

#[derive(Parser)]
#[command(name = "gstab", version, about = "Stability conditions on finite triangulated categories and their limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Report path; stdout when absent and the scenario names none.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Built-in checks.
    Check {
        #[command(subcommand)]
        action: CheckAction,
    },
}

#[derive(Subcommand)]
enum ModelsAction {
    List,
}

#[derive(Subcommand)]
enum CheckAction {
    /// Run the acceptance suite and print a pass/fail table.
    Acceptance {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn list_models() -> anyhow::Result<()> {
    println!("{:<10} {:>4} {:>6} {:>6} {:>6}  indecomposables", "id", "rank", "indecs", "thick", "hearts");
    for id in [ModelId::A1Cyn(2), ModelId::A2Path, ModelId::A1Path, ModelId::Zero] {
        let m = CategoryModel::load(id)?;
        let syms: Vec<&str> = m.indecs().map(|x| m.symbol(x)).collect();
        println!(
            "{:<10} {:>4} {:>6} {:>6} {:>6}  {}",
            id.to_string(),
            m.rank(),
            m.num_indecs(),
            m.thick_lattice().len(),
            m.hearts().len(),
            syms.join(" ")
        );
    }
    println!("a1_cyn:N accepts any N >= 2; a1_path and zero arise as quotients.");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Models { action: ModelsAction::List } => match list_models() {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Run { scenario, out, csv } => match run_file(&scenario, out.as_deref(), csv.as_deref()) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
        Command::Check { action: CheckAction::Acceptance { only } } => {
            let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=11).contains(&i)) {
                eprintln!("error: no acceptance criterion {bad}");
                return ExitCode::from(2);
            }
            let mut results = Vec::new();
            for id in ids {
                let r = acceptance::run(id);
                println!("{}", r.line());
                results.push(r);
            }
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} criteria passed", results.len());
            if passed == results.len() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
