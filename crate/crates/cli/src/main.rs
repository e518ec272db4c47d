use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "twistlab",
    version,
    about = "Twists of elliptic curves over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Automorphism group of a curve
    Automorphisms(CurveArgs),
    /// All twists of a curve over the base field
    Twists(CurveArgs),
    /// Frobenius-twisted conjugacy classes of the automorphism group
    H1 {
        #[command(flatten)]
        curve: CurveArgs,
        /// trivial, full, minus-one or C<n>
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Isomorphism classes of curves with j = 0
    Census(FieldArgs),
    /// Run every reproduction check
    Repro {
        #[arg(long)]
        json: bool,
        #[arg(long, env = "TWISTLAB_LIMIT")]
        limit: Option<u64>,
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, env = "TWISTLAB_LIMIT")]
    pub limit: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Long-form coefficients "[a1,a2,a3,a4,a6]"
    #[arg(long, conflicts_with = "short", allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// "a,b": y^2 = x^3 + a x + b (odd p) or y^2 + y = x^3 + a x + b (p = 2)
    #[arg(long, allow_hyphen_values = true)]
    pub short: Option<String>,
    #[arg(long, default_value_t = twistlab::twists::DEFAULT_MAX_SPLIT_DEGREE)]
    pub max_split_degree: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                commands::EXIT_USAGE
            } else {
                0
            });
        }
    };
    let result = match cli.command {
        Command::Automorphisms(args) => commands::automorphisms(&args),
        Command::Twists(args) => commands::twists(&args),
        Command::H1 { curve, subgroup } => commands::h1(&curve, subgroup.as_deref()),
        Command::Census(args) => commands::census(&args),
        Command::Repro {
            json,
            limit,
            corrupt_table,
        } => commands::repro(json, limit, corrupt_table),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
