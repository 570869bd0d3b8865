mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use regcycle_core::bounds::MtTable;
use regcycle_core::lang::{self, ActionSpec, GroupSpec, RunConfig};
use regcycle_core::suites::{self, Suite, SuiteParams};
use regcycle_core::Error;

const EXIT_ASSERTION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Tsv,
}

#[derive(Parser, Debug)]
#[command(name = "regcycle", version, about = "Regular cycles of permutation group elements in induced actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Output,
    /// Worker threads (0 lets the pool decide).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest domain scanned point by point.
    #[arg(long, global = true)]
    cap: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether an element has a regular cycle.
    Decide {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        action: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// List cycle types without a regular cycle.
    Scan {
        #[arg(long)]
        action: String,
        #[arg(long)]
        m: String,
    },
    /// Tabulate N_m, alpha_m, beta_m and their product.
    Bounds {
        #[arg(long, default_value = "47..100")]
        m: String,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Certification(_) => EXIT_ASSERTION,
        _ => EXIT_USAGE,
    }
}

fn mt_table() -> Result<MtTable, Error> {
    let table = MtTable::builtin();
    match std::env::var_os("REGCYCLE_MT_TABLE") {
        None => Ok(table),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("REGCYCLE_MT_TABLE {}: {e}", path.to_string_lossy())))?;
            Ok(table.merged(MtTable::parse_tsv(&text)?))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut cfg = RunConfig {
        seed: cli.seed,
        ..RunConfig::default()
    };
    if let Some(cap) = cli.cap {
        cfg.domain_cap = cap;
    }
    cfg.validate()?;
    let out = cli.output;
    match cli.command {
        Command::Decide { group, element, action } => {
            let g: GroupSpec = group.parse()?;
            let a: ActionSpec = action.parse()?;
            let v = lang::decide(&g, &a, &element, &cfg)?;
            print!("{}", report::verdict(&v, out));
            Ok(0)
        }
        Command::Verify { suite, m, k } => {
            let suite: Suite = suite.parse()?;
            let params = SuiteParams {
                m: m.as_deref().map(lang::parse_range).transpose()?,
                k,
                samples: None,
            };
            let r = suites::run_suite(suite, &params, &cfg, &mt_table()?)?;
            print!("{}", report::suite(&r, cfg.seed, out));
            Ok(if r.passed() { 0 } else { EXIT_ASSERTION })
        }
        Command::Scan { action, m } => {
            let a: ActionSpec = action.parse()?;
            let (lo, hi) = lang::parse_range(&m)?;
            let rows = (lo..=hi)
                .map(|m| Ok((m, lang::scan_failing_types(&a, m)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            print!("{}", report::scan(&a, &rows, out));
            Ok(0)
        }
        Command::Bounds { m } => {
            let (lo, hi) = lang::parse_range(&m)?;
            let rows = (lo..=hi).map(regcycle_core::bounds::alpha_beta).collect::<Result<Vec<_>, _>>()?;
            print!("{}", report::bounds(&rows, out));
            Ok(if rows.iter().all(|r| r.exact.is_pass()) { 0 } else { EXIT_ASSERTION })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
