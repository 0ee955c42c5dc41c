use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyparr::freeness::DEFAULT_BUDGET;
use hyparr_cli::{run_analyze, run_audit_table, run_generate, AnalyzeOptions, CliError, GenRequest, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "hyparr", version, about = "Exact computations with central hyperplane arrangements")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an arrangement file for a built-in family.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Analyze an arrangement file (`-` or no argument reads stdin).
    Analyze(AnalyzeArgs),
    /// Recompute the checks on the bundled Table 1 rows.
    AuditTable {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Calogero-Moser arrangement of the wreath product `G wr S_n`.
    Wreath {
        /// Root system label of the McKay correspondent: A1, D4, E6, ...
        #[arg(long)]
        g: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        n: usize,
    },
    /// Cyclic group of order `ell`.
    Cyclic {
        #[arg(long)]
        ell: usize,
    },
    /// Dihedral group; `--m` selects the order of the rotation subgroup.
    Dihedral {
        #[arg(long)]
        m: Option<usize>,
    },
    G4,
    G8,
    /// Coxeter arrangement of a product of symmetric groups, e.g. `S2xS3`.
    Coxeter {
        #[arg(long)]
        weyl: String,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    poincare: bool,
    #[arg(long)]
    os: bool,
    /// List the nbc basis (implies --os).
    #[arg(long)]
    basis: bool,
    #[arg(long)]
    free: bool,
    /// Node budget for the freeness search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    stability: bool,
    #[arg(long)]
    orbits: bool,
    #[arg(long = "e-count")]
    e_count: bool,
    /// Recompute the characteristic polynomial from point counts over this
    /// many primes.
    #[arg(long = "ff-primes")]
    ff_primes: Option<usize>,
    /// Every stage except the basis listing.
    #[arg(long)]
    all: bool,
    /// Exit with status 3 when freeness is undecided.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
}

impl AnalyzeArgs {
    fn options(&self) -> AnalyzeOptions {
        let base = if self.all { AnalyzeOptions::all() } else { AnalyzeOptions::default() };
        AnalyzeOptions {
            poincare: base.poincare || self.poincare,
            os: base.os || self.os,
            basis: self.basis,
            free: base.free || self.free,
            budget: self.budget,
            stability: base.stability || self.stability,
            orbits: base.orbits || self.orbits,
            e_count: base.e_count || self.e_count,
            ff_primes: self.ff_primes,
            strict: self.strict,
        }
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, CliError> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(s)
        }
    }
}

fn gen_request(f: Family) -> GenRequest {
    match f {
        Family::Wreath { g, order, n } => GenRequest::Wreath { g, order, n },
        Family::Cyclic { ell } => GenRequest::Cyclic { ell },
        Family::Dihedral { m } => GenRequest::Dihedral { m },
        Family::G4 => GenRequest::G4,
        Family::G8 => GenRequest::G8,
        Family::Coxeter { weyl } => GenRequest::Coxeter { weyl },
    }
}

fn run(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Gen { family } => {
            print!("{}", run_generate(&gen_request(family))?);
            Ok(0)
        }
        Command::Analyze(args) => {
            let text = read_input(&args.file)?;
            let analysis = run_analyze(&text, &args.options())?;
            for w in &analysis.warnings {
                eprintln!("warning: {w}");
            }
            if args.json {
                println!("{}", analysis.report.to_json());
            } else {
                print!("{}", analysis.report.to_text());
            }
            Ok(analysis.exit_code)
        }
        Command::AuditTable { json } => {
            let report = run_audit_table();
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
