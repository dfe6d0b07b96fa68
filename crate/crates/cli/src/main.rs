use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fcrystal::commands::{self, Outcome};
use fcrystal::input::parse_seq;
use fcrystal::output::emit;
use fcrystal::scan::{Check, CheckSet, Family, ScanSpec};
use fcrystal::{CliError, CrystalInput, Format, JobSpec, Levels, Limits, EXIT_OK, EXIT_VIOLATION};

/// Level-m invariants of F-cyclic F-crystals: γ(m) = dim Aut_m and the
/// component exponent b(m) of End_m, by closed formula and by digraph oracle.
#[derive(Parser)]
#[command(name = "fcrystal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// γ table, Δγ, b, stabilization level and per-orbit segment census
    Gamma {
        #[command(flatten)]
        crystal: CrystalArgs,
        #[command(flatten)]
        levels: LevelArgs,
        /// Write the level-m_max digraph of every orbit (Graphviz) to FILE
        #[arg(long, value_name = "FILE")]
        dump_digraph: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// b(m), and p^b(m) with --prime
    Endo {
        #[command(flatten)]
        crystal: CrystalArgs,
        #[command(flatten)]
        levels: LevelArgs,
        #[arg(long)]
        prime: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the closed formulas with the digraph oracle
    Verify {
        /// Raw circular sequence, e.g. "3,0,-1,-2"
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["r_max", "perm", "slopes"])]
        seq: Option<String>,
        /// Exhaustive mode: all permutations of rank ≤ R_MAX
        #[arg(long, conflicts_with_all = ["perm", "slopes", "r"])]
        r_max: Option<usize>,
        /// Exhaustive mode: slopes range over 0..=SLOPE_MAX
        #[arg(long, default_value_t = 1)]
        slope_max: u32,
        #[command(flatten)]
        crystal: CrystalArgs,
        #[command(flatten)]
        levels: LevelArgs,
        /// Write the digraph of --seq at the top level (Graphviz) to FILE
        #[arg(long, value_name = "FILE", requires = "seq")]
        dump_digraph: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive scan of a family with property checks
    Scan {
        #[arg(long, value_enum)]
        family: Family,
        /// Scan exactly this rank
        #[arg(long, conflicts_with = "r_max")]
        r: Option<usize>,
        /// Scan every rank 1..=R_MAX
        #[arg(long)]
        r_max: Option<usize>,
        /// Largest slope for the F-crystal families
        #[arg(long, default_value_t = 2)]
        slope_max: u32,
        #[arg(long)]
        m_max: usize,
        /// Properties counted as violations (repeatable; default all)
        #[arg(long, value_enum)]
        check: Vec<Check>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Minimality verdict, Newton slopes, and minimal ⟺ stabilization ≤ 1
    Minimal {
        #[command(flatten)]
        crystal: CrystalArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct CrystalArgs {
    /// Rank (defaults to the number of slopes)
    #[arg(long)]
    r: Option<usize>,
    /// Permutation: one-line "2 3 1" or cycles "(1 2 3)", "(1,2)(3,4)", "()"
    #[arg(long)]
    perm: Option<String>,
    /// Hodge slopes, comma-separated
    #[arg(long)]
    slopes: Option<String>,
}

impl From<CrystalArgs> for CrystalInput {
    fn from(a: CrystalArgs) -> Self {
        CrystalInput {
            r: a.r,
            perm: a.perm,
            slopes: a.slopes,
        }
    }
}

#[derive(Args)]
struct LevelArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
}

impl From<LevelArgs> for Levels {
    fn from(a: LevelArgs) -> Self {
        Levels {
            m: a.m,
            m_max: a.m_max,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to FILE (atomically) instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = Limits::default().max_r)]
    max_r: usize,
    #[arg(long, default_value_t = Limits::default().max_m)]
    max_m: usize,
    #[arg(long, default_value_t = Limits::default().vertex_budget)]
    vertex_budget: u64,
    #[arg(long, default_value_t = Limits::default().max_records)]
    max_records: u64,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_r: self.max_r,
            max_m: self.max_m,
            vertex_budget: self.vertex_budget,
            max_records: self.max_records,
        }
    }
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let job = |crystal: CrystalArgs, levels: Levels, prime, common: &Common| {
        JobSpec::new(&crystal.into(), levels, common.format, prime, common.limits())
    };
    Ok(match cli.command {
        Command::Gamma {
            crystal,
            levels,
            dump_digraph,
            common,
        } => {
            // γ always starts at 0; a lone --m means "up to m".
            let levels = Levels {
                m: None,
                m_max: levels.m_max.or(levels.m),
            };
            let spec = job(crystal, levels, None, &common)?;
            (commands::gamma(&spec, dump_digraph.as_deref())?, common.out)
        }
        Command::Endo {
            crystal,
            levels,
            prime,
            common,
        } => {
            let spec = job(crystal, levels.into(), prime, &common)?;
            (commands::endo(&spec)?, common.out)
        }
        Command::Verify {
            seq,
            r_max,
            slope_max,
            crystal,
            levels,
            dump_digraph,
            jobs,
            common,
        } => {
            let limits = common.limits();
            let levels: Levels = levels.into();
            let outcome = if let Some(text) = seq {
                let seq = parse_seq(&text)?;
                commands::verify_seq(&seq, levels, common.format, &limits, dump_digraph.as_deref())?
            } else if let Some(r_max) = r_max {
                let (_, m_max) = levels.range(&limits)?;
                commands::verify_family(r_max, slope_max, m_max, common.format, &limits, jobs)?
            } else {
                let input: CrystalInput = crystal.into();
                if input.is_empty() {
                    return Err(CliError::invalid("give --seq, --r-max, or a crystal (--perm, --slopes)"));
                }
                let levels = Levels {
                    m: None,
                    m_max: levels.m_max.or(levels.m),
                };
                commands::verify_crystal(&JobSpec::new(&input, levels, common.format, None, limits)?)?
            };
            (outcome, common.out)
        }
        Command::Scan {
            family,
            r,
            r_max,
            slope_max,
            m_max,
            check,
            jobs,
            common,
        } => {
            let ranks = match (r, r_max) {
                (Some(r), _) => vec![r],
                (None, Some(hi)) => (1..=hi).collect(),
                (None, None) => return Err(CliError::invalid("--r or --r-max is required")),
            };
            let spec = ScanSpec {
                family,
                ranks,
                slope_max,
                m_max,
                checks: CheckSet::from_checks(&check),
                jobs,
            };
            (commands::scan(&spec, common.format, &common.limits())?, common.out)
        }
        Command::Minimal { crystal, common } => {
            let levels = Levels {
                m: Some(1),
                m_max: None,
            };
            let spec = job(crystal, levels, None, &common)?;
            (commands::minimal(&spec)?, common.out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, out)) => {
            if let Err(e) = emit(out.as_deref(), &outcome.output) {
                eprintln!("fcrystal: {}", CliError::from(e));
                return ExitCode::from(fcrystal::EXIT_INVALID);
            }
            ExitCode::from(if outcome.violation { EXIT_VIOLATION } else { EXIT_OK })
        }
        Err(e) => {
            eprintln!("fcrystal: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
