mod commands;
mod report;

use clap::{ArgGroup, Args, Parser, Subcommand};
use report::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "colink", version, about = "Coloured link invariants, homology and the supporting checks")]
struct Cli {
    #[arg(long, value_enum, default_value = "kv", global = true)]
    format: Format,
    /// Subspace-test budget for finite-field enumeration.
    #[arg(long, env = "COLINK_BUDGET", default_value_t = colink::grassmann_geometry::DEFAULT_BUDGET, global = true)]
    budget: u128,
    /// Worker threads for the relation suite.
    #[arg(long, env = "COLINK_JOBS", default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the link polynomial of a closed diagram.
    Invariant {
        #[arg(long)]
        m: Option<u8>,
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Homology of the coloured complex, at rational colours or symbolically.
    Homology {
        #[arg(long)]
        diagram: PathBuf,
        /// Comma-separated rational colour per colour id, or `symbolic`.
        #[arg(long)]
        colours: String,
    },
    /// The spectral sequence along a line of colours.
    Ss {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        direction: String,
    },
    /// Check the tangle relations as matrix identities.
    Relations {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        m: u8,
        #[arg(long, default_value_t = 4)]
        max_strands: usize,
    },
    /// Check the line bundle identities.
    Ledger {
        #[arg(long)]
        check: String,
        /// Integer sample `k=..,l=..[,m=..]` for the independent route.
        #[arg(long)]
        params: Option<String>,
    },
    Geometry(GeometryArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["poincare", "towers", "count"])))]
pub struct GeometryArgs {
    /// `m,k1,k2,...`
    #[arg(long)]
    poincare: Option<String>,
    #[arg(long)]
    towers: bool,
    /// Tower data files; the bundled towers when omitted.
    #[arg(long = "tower-file", requires = "towers")]
    tower_files: Vec<PathBuf>,
    /// `p,m,k1,k2,...`
    #[arg(long)]
    count: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.budget == 0 || cli.jobs == 0 {
        eprintln!("error: budget and jobs must be positive");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Invariant { m, diagram } => commands::invariant(&diagram, m),
        Command::Homology { diagram, colours } => commands::homology(&diagram, &colours),
        Command::Ss { diagram, direction } => commands::ss(&diagram, &direction),
        Command::Relations { suite, m, max_strands } => commands::relations(&suite, m, max_strands, cli.jobs),
        Command::Ledger { check, params } => commands::ledger(&check, params.as_deref()),
        Command::Geometry(g) => commands::geometry(&g, cli.budget),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
