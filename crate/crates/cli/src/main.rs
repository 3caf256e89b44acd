use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twistk_cli::check::{run_suite, CheckConfig, SUITES};
use twistk_cli::compute::{render, ComputeArgs};
use twistk_cli::table::{evaluate, rows, Family, Grid};
use twistk_cli::{exit_code, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

/// Twisted K-theory of spheres, products, lens spaces, SU(n) and SU(2)-bundles.
#[derive(Parser)]
#[command(name = "twistk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute K^*(X, δ) for one space and twist.
    Compute(ComputeArgs),
    /// Recompute the regression table and diff against the expected values.
    Table(TableArgs),
    /// Run the cross-method and property suites.
    Check(CheckArgs),
}

#[derive(Args)]
struct TableArgs {
    /// Row families: sphere, product, product-top, rp, lens, su2bundle.
    #[arg(long, value_delimiter = ',')]
    rows: Vec<Family>,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 5])]
    primes: Vec<usize>,
    #[arg(long = "N-max", default_value_t = 12)]
    twist_max: i64,
    /// Print every row, not only the differences.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Run only these suites.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Number of random Smith normal form instances.
    #[arg(long, default_value_t = 200)]
    fuzz: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn compute(args: &ComputeArgs) -> i32 {
    match args.run().and_then(|c| render(&c, args.format)) {
        Ok(text) => {
            println!("{text}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn table(args: &TableArgs) -> i32 {
    let grid = Grid {
        n_max: args.n_max,
        m_max: args.m_max,
        primes: args.primes.clone(),
        twist_max: args.twist_max,
        ..Grid::default()
    };
    let families = if args.rows.is_empty() {
        Family::DEFAULT.to_vec()
    } else {
        args.rows.clone()
    };
    let all = families.iter().flat_map(|&f| rows(f, &grid)).collect();
    let outcomes = evaluate(all, Default::default());
    let mut diffs = 0;
    for o in &outcomes {
        if !o.passed() {
            diffs += 1;
        }
        if args.verbose || !o.passed() {
            println!("{o}");
        }
    }
    println!(
        "{} rows, {} match, {diffs} differ",
        outcomes.len(),
        outcomes.len() - diffs
    );
    if diffs == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn check(args: &CheckArgs) -> i32 {
    let cfg = CheckConfig {
        fuzz: args.fuzz,
        seed: args.seed,
        ..CheckConfig::default()
    };
    let names: Vec<&str> = if args.only.is_empty() {
        SUITES.to_vec()
    } else {
        args.only.iter().map(String::as_str).collect()
    };
    let mut failed = false;
    for name in names {
        let Some(report) = run_suite(name, &cfg) else {
            eprintln!("error: unknown suite {name:?} (suites: {})", SUITES.join(", "));
            return EXIT_USAGE;
        };
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!("{status} {:<20} {} cases", report.name, report.cases);
        for f in &report.failures {
            println!("     {}", f.replace('\n', "\n     "));
        }
        failed |= !report.passed();
    }
    if failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match &cli.command {
        Command::Compute(args) => compute(args),
        Command::Table(args) => table(args),
        Command::Check(args) => check(args),
    };
    ExitCode::from(code as u8)
}
