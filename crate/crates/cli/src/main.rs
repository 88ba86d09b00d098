use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use coda::spaces::SampleConfig;
use coda_cli::commands::{self, Check, Output, SearchArgs};
use coda_cli::repl::Repl;
use coda_cli::service::{self, AppState};

#[derive(Parser)]
#[command(name = "coda", version, about = "Pure-data rewriting kernel")]
struct Cli {
    /// Step budget (default 10; 30 for law checks)
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bytes enumerated by allByteSequences and generated in samples
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Serialized definitions to replay before running
    #[arg(long, global = true)]
    context: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the final data of an expression
    Eval {
        expr: String,
        /// Also print status, logic value and the undecidability hint
        #[arg(long)]
        explain: bool,
    },
    /// Print every step of an expression
    Step { expr: String },
    /// Sample algebraic laws
    Check {
        #[command(subcommand)]
        what: CheckCommand,
        #[arg(long, global = true, default_value_t = 200)]
        count: usize,
        #[arg(long, global = true, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, global = true, default_value_t = 4)]
        max_width: usize,
    },
    /// Search for classifiers separating two sample files
    Search {
        #[arg(long)]
        pos: PathBuf,
        #[arg(long)]
        neg: PathBuf,
        /// Comma-separated names (default: every builtin)
        #[arg(long, value_delimiter = ',')]
        vocab: Option<Vec<String>>,
        #[arg(long, default_value_t = 2)]
        max_terms: usize,
        /// Try this many random candidates instead of enumerating
        #[arg(long)]
        random: Option<usize>,
    },
    /// Run a scripted demo
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(coda::demos::DEMO_NAMES))]
        name: String,
    },
    /// Serve sessions over HTTP
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Seconds before an unused session is dropped
        #[arg(long, default_value_t = 1800)]
        idle_secs: u64,
    },
    /// Interactive session on stdin
    Repl,
}

#[derive(Subcommand)]
enum CheckCommand {
    Space { subject: String },
    Morphism { f: String, source: String, target: String },
    Antispace { subject: String, negation: String },
    Group { subject: String, negation: String },
    /// idempotent, distributive or abelian
    Law { law: String, subject: String },
}

fn emit(out: Output) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = io::stdout().flush();
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let alphabet = cli.alphabet.as_deref().map(str::as_bytes);
    let ctx = match commands::load_context(alphabet, cli.context.as_deref()) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let budget = cli.budget.unwrap_or(coda::eval::DEFAULT_BUDGET);
    let sample_config = || {
        let mut cfg = SampleConfig {
            seed: cli.seed,
            ..SampleConfig::default()
        };
        if let Some(b) = cli.budget {
            cfg.budget = b;
        }
        if let Some(a) = alphabet {
            cfg.alphabet = a.to_vec();
        }
        cfg
    };
    match cli.command {
        Command::Eval { expr, explain } => emit(commands::eval(&ctx, expr.as_bytes(), budget, explain)),
        Command::Step { expr } => emit(commands::step(&ctx, expr.as_bytes(), budget)),
        Command::Check {
            what,
            count,
            max_depth,
            max_width,
        } => {
            let cfg = SampleConfig {
                count,
                max_depth,
                max_width,
                ..sample_config()
            };
            let what = match what {
                CheckCommand::Space { subject } => Check::Space(subject),
                CheckCommand::Morphism { f, source, target } => Check::Morphism(f, source, target),
                CheckCommand::Antispace { subject, negation } => Check::Antispace(subject, negation),
                CheckCommand::Group { subject, negation } => Check::Group(subject, negation),
                CheckCommand::Law { law, subject } => Check::Law(law, subject),
            };
            emit(commands::check(&ctx, &what, &cfg))
        }
        Command::Search {
            pos,
            neg,
            vocab,
            max_terms,
            random,
        } => {
            let cfg = SampleConfig {
                budget,
                ..sample_config()
            };
            let args = SearchArgs {
                positives: Vec::new(),
                negatives: Vec::new(),
                vocabulary: vocab.unwrap_or_else(commands::default_vocabulary),
                max_terms,
                random,
            };
            emit(commands::search_files(&ctx, &pos, &neg, args, &cfg))
        }
        Command::Demo { name } => emit(commands::demo(&name, budget, alphabet)),
        Command::Serve { port, host, idle_secs } => {
            let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
            let state = AppState::new(ctx, Duration::from_secs(idle_secs));
            let result = runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind((host.as_str(), port)).await?;
                eprintln!("listening on {}", listener.local_addr()?);
                service::serve(listener, state).await
            });
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("serve: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Repl => {
            let mut repl = Repl::new(ctx, budget);
            let stdin = io::stdin();
            match repl.run(stdin.lock(), io::stdout(), io::stderr()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("repl: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
