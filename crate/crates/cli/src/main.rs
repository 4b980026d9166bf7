use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use leafsub_core::family::{Family, Method};

use leafsub_cli::commands::{self, CliError, CountSource, Output, Suite};

#[derive(Parser)]
#[command(
    name = "leafsub",
    version,
    about = "Count nonisomorphic leaf-induced subtrees"
)]
struct Cli {
    /// Cap on worker threads for parallel routes.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of leaf-induced subtree classes of a tree or family member.
    Count(CountArgs),
    /// List every leaf-induced subtree class, sorted by leaf count then code.
    Enumerate {
        #[arg(long)]
        newick: PathBuf,
        /// Print canonical Newick instead of leaf count, height and code.
        #[arg(long)]
        emit_newick: bool,
        #[arg(long)]
        json: bool,
    },
    /// The growth constant kappa(d) of the complete d-ary tree counts.
    Kappa {
        #[arg(long)]
        d: u32,
        /// Significant digits, rounded half to even.
        #[arg(long, default_value_t = 16)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Tables of kappa(d) or of the complete-tree counts.
    Table(TableArgs),
    /// Floor-formula value of N(C^d_h) next to the exact recursion.
    Floor {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and report pass or fail.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Star,
    Bincat,
    Cat,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Enumerate,
    Brute,
    Formula,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Enumerate => Method::Enumerate,
            MethodArg::Brute => Method::Brute,
            MethodArg::Formula => Method::Formula,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["newick", "family"])))]
struct CountArgs {
    #[arg(long)]
    newick: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    h: Option<u32>,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["kappa", "complete"])))]
struct TableArgs {
    /// kappa(d) for 2 <= d <= d-max.
    #[arg(long, requires = "d_max")]
    kappa: bool,
    /// N(C^d_h) for 0 <= h <= h-max.
    #[arg(long, requires_all = ["d", "h_max"])]
    complete: bool,
    #[arg(long)]
    d_max: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    h_max: Option<u32>,
    #[arg(long, default_value_t = 16)]
    digits: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("suite").required(true).args(["theorem1", "prop7", "prop8", "lemma1", "oracle"])))]
struct VerifyArgs {
    /// Minimum count over every topological tree with 5..=n-max leaves.
    #[arg(long, requires = "n_max")]
    theorem1: bool,
    /// 1 < kappa(d) <= d^(1/(d-1)) for 2 <= d <= d-max.
    #[arg(long, requires = "d_max")]
    prop7: bool,
    /// Floor formula against the recursion for 0 <= h <= h-max.
    #[arg(long, requires_all = ["d", "h_max"])]
    prop8: bool,
    /// Closed log expression against the iterated sequence for 1 <= n' <= n.
    #[arg(long, requires_all = ["d", "n"])]
    lemma1: bool,
    /// Enumeration against brute force on every tree with at most n-max leaves.
    #[arg(long, requires = "n_max")]
    oracle: bool,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    d_max: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    h_max: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    json: bool,
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn family(args: &CountArgs, kind: FamilyKind) -> Result<Family, CliError> {
    Ok(match kind {
        FamilyKind::Star => Family::Star {
            n: need(args.n, "n")?,
        },
        FamilyKind::Bincat => Family::BinaryCaterpillar {
            n: need(args.n, "n")?,
        },
        FamilyKind::Cat => Family::Caterpillar {
            d: u64::from(need(args.d, "d")?),
            n: need(args.n, "n")?,
        },
        FamilyKind::Complete => Family::Complete {
            d: need(args.d, "d")?,
            h: need(args.h, "h")?,
        },
    })
}

fn run(command: Command) -> Result<(Output, bool), CliError> {
    Ok(match command {
        Command::Count(args) => {
            let source = match (&args.newick, args.family) {
                (Some(path), _) => CountSource::Newick(path.clone()),
                (None, Some(kind)) => CountSource::Family(family(&args, kind)?),
                (None, None) => unreachable!("clap requires a source"),
            };
            (commands::count(&source, args.method.into())?, args.json)
        }
        Command::Enumerate {
            newick,
            emit_newick,
            json,
        } => (commands::enumerate(&newick, emit_newick)?, json),
        Command::Kappa { d, digits, json } => (commands::kappa(d, digits)?, json),
        Command::Table(args) => {
            let out = if args.kappa {
                commands::table_kappa(need(args.d_max, "d-max")?, args.digits)?
            } else {
                commands::table_complete(need(args.d, "d")?, need(args.h_max, "h-max")?)?
            };
            (out, args.json)
        }
        Command::Floor { d, h, json } => (commands::floor(d, h)?, json),
        Command::Verify(args) => {
            let suite = if args.theorem1 {
                Suite::Theorem1 {
                    n_max: need(args.n_max, "n-max")?,
                }
            } else if args.prop7 {
                Suite::Prop7 {
                    d_max: need(args.d_max, "d-max")?,
                }
            } else if args.prop8 {
                Suite::Prop8 {
                    d: need(args.d, "d")?,
                    h_max: need(args.h_max, "h-max")?,
                }
            } else if args.lemma1 {
                Suite::Lemma1 {
                    d: need(args.d, "d")?,
                    n: need(args.n, "n")?,
                }
            } else {
                Suite::Oracle {
                    n_max: need(args.n_max, "n-max")?,
                }
            };
            (commands::verify(suite)?, args.json)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: cannot configure {k} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok((out, json)) => {
            if json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.text);
            }
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
