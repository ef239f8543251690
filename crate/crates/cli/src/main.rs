mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

use qamus::{Encoding, OutputFormat};

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (dictionary format v1, gold format v1)"
);

#[derive(Parser, Debug)]
#[command(name = "qamus", version = VERSION, about = "Context-free Arabic lemmatizer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Dictionary, lexicon and overrides shared by the engine-loading commands.
#[derive(Args, Debug)]
pub struct EngineArgs {
    /// Diacritization dictionary TSV
    #[arg(long)]
    pub dict: PathBuf,
    /// Directory holding prefixes/stems/suffixes and ab/ac/bc tables
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Lemma-order overrides TSV
    #[arg(long)]
    pub overrides: Option<PathBuf>,
    /// Retry dictionary misses with hamza/madda alef variants folded to bare alef
    #[arg(long)]
    pub normalize_hamza: bool,
    /// Ignore dictionary forms seen fewer times than this
    #[arg(long, default_value_t = 1)]
    pub min_count: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count diacritized forms in a corpus and write the dictionary
    BuildDict {
        #[arg(long, num_args = 1.., required = true)]
        corpus: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_count: u64,
        #[arg(long, default_value = "arabic")]
        encoding: Encoding,
    },
    /// Lemmatize text from stdin (or --input) to stdout
    Lemmatize {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "plain")]
        format: OutputFormat,
        #[arg(long, default_value = "arabic")]
        encoding: Encoding,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Score the lemmatizer against a gold file
    Evaluate {
        #[arg(long)]
        gold: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Evaluate on uncorrected surfaces
        #[arg(long)]
        raw: bool,
        /// Write misses as TSV to this file
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "arabic")]
        encoding: Encoding,
    },
    /// Measure lemmatization throughput on a file
    Bench {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value = "arabic")]
        encoding: Encoding,
    },
    /// Show every analysis of a word with its match score
    Explain {
        word: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// List words whose analyses share a diacritization but differ in lemma
    ReportAmbiguous {
        #[arg(long)]
        lexicon: PathBuf,
        /// Word list, one per line (first tab field); dictionary files work too
        #[arg(long)]
        words: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };

    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qamus: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
