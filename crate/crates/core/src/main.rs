//! `effint`: exact invariant-curve search, Darboux integrating data,
//! cyclic sumset verification, and orbifold pluricanonical tables.

use clap::{Parser, Subcommand};
use effint::groebner::GroebnerConfig;
use effint::orbifold::TripleConstraint;
use effint::report::{
    self, parse_foliation_file, parse_m_range, parse_profile, CliError, NmaxArg, Report,
    ReportMeta,
};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(
    name = "effint",
    version,
    about = "Exact-arithmetic search for invariant algebraic curves, Darboux/Liouvillian data, sumset bounds and orbifold k_min tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON report instead of the human-readable rendering.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: EFFINT_THREADS, then all cores). Results
    /// and their order are independent of this setting.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress the timestamp so identical runs are byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Override the Groebner pair ceiling used by the search commands.
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
    /// Override the Groebner degree ceiling used by the search commands.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Search a foliation file for invariant algebraic curves.
    Curves {
        file: PathBuf,
        /// Degree cap: a number or "auto" (profile bound, needs d >= 2).
        #[arg(long, default_value = "auto")]
        nmax: String,
        /// Bound profile: thmA, a2g1, a2g1n or a2hyp.
        #[arg(long, default_value = "thmA")]
        profile: String,
    },
    /// Verify the candidate curves supplied in the file.
    Check { file: PathBuf },
    /// Full pipeline: search, assemble integrating data, verify budgets.
    Darboux {
        file: PathBuf,
        #[arg(long)]
        nmax: Option<String>,
        #[arg(long, default_value = "thmA")]
        profile: String,
    },
    /// Scan unit-group decompositions for the sumset bounds.
    Speyer {
        /// Modulus or inclusive range, e.g. 12 or 3..30.
        #[arg(short, long)]
        m: String,
        /// Set one pair {lambda, -lambda} aside (bound 12 instead of 6).
        #[arg(long)]
        lambda: bool,
    },
    /// Pluricanonical k_min from inline orbifold tokens, e.g.
    /// `kmin g=0 b=2,3,7`.
    Kmin {
        #[arg(required = true)]
        tokens: Vec<String>,
    },
    /// Degree cap for a foliation degree under a bound profile.
    Bound {
        #[arg(short)]
        d: usize,
        #[arg(long, default_value = "thmA")]
        profile: String,
    },
    /// Exhaustive k_min table over hyperbolic weight triples.
    Scan {
        /// "all" or "lcm" (o3 = lcm(o1, o2)).
        #[arg(long, default_value = "all")]
        constraint: String,
        #[arg(long, default_value_t = 12)]
        o_max: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_human());
            }
        }
        Err(e) => {
            eprintln!("effint: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn configure_threads(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("EFFINT_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn meta_for(cli: &Cli, input: Vec<u8>) -> ReportMeta {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let mut meta = ReportMeta::new(echo.join(" "), input);
    if !cli.no_timestamp {
        meta.timestamp = Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .expect("clock after the epoch")
                .as_secs(),
        );
    }
    if cli.max_pairs.is_some() || cli.max_degree.is_some() {
        let defaults = GroebnerConfig::default();
        meta.groebner = Some(GroebnerConfig {
            max_pairs: cli.max_pairs.unwrap_or(defaults.max_pairs),
            max_degree: cli.max_degree.unwrap_or(defaults.max_degree),
        });
    }
    meta
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_nmax(text: &str) -> Result<NmaxArg, CliError> {
    if text == "auto" {
        return Ok(NmaxArg::Auto);
    }
    text.parse::<usize>()
        .map(NmaxArg::Fixed)
        .map_err(|_| CliError::Input(format!("bad nmax '{text}' (number or \"auto\")")))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Curves {
            file,
            nmax,
            profile,
        } => {
            let bytes = read_file(file)?;
            let meta = meta_for(cli, bytes.clone());
            let doc = parse_foliation_file(&bytes)?;
            report::cmd_curves(&meta, &doc, parse_nmax(nmax)?, parse_profile(profile)?)
        }
        Command::Check { file } => {
            let bytes = read_file(file)?;
            let meta = meta_for(cli, bytes.clone());
            let doc = parse_foliation_file(&bytes)?;
            report::cmd_check(&meta, &doc)
        }
        Command::Darboux {
            file,
            nmax,
            profile,
        } => {
            let bytes = read_file(file)?;
            let meta = meta_for(cli, bytes.clone());
            let doc = parse_foliation_file(&bytes)?;
            let nmax = nmax.as_deref().map(parse_nmax).transpose()?;
            report::cmd_darboux(&meta, &doc, nmax, parse_profile(profile)?)
        }
        Command::Speyer { m, lambda } => {
            let meta = meta_for(cli, format!("speyer {m} lambda={lambda}").into_bytes());
            report::cmd_speyer(&meta, parse_m_range(m)?, *lambda)
        }
        Command::Kmin { tokens } => {
            let meta = meta_for(cli, tokens.join(" ").into_bytes());
            report::cmd_kmin(&meta, tokens)
        }
        Command::Bound { d, profile } => {
            let meta = meta_for(cli, format!("bound {d} {profile}").into_bytes());
            report::cmd_bound(&meta, *d, parse_profile(profile)?)
        }
        Command::Scan { constraint, o_max } => {
            let c = match constraint.as_str() {
                "all" => TripleConstraint::All,
                "lcm" => TripleConstraint::Lcm,
                other => {
                    return Err(CliError::Input(format!(
                        "unknown constraint '{other}' (expected all or lcm)"
                    )))
                }
            };
            let meta = meta_for(cli, format!("scan {constraint} {o_max}").into_bytes());
            report::cmd_scan(&meta, c, *o_max)
        }
    }
}
