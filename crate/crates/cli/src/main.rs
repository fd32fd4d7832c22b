use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pivot_clir::eval::{load_cases, report_to_text, run_batch};
use pivot_clir::report::format_outcome;
use pivot_clir::vector::CorpusStats;
use pivot_clir::{
    build_index, load_corpus, load_index, save_index, CorpusIndex, Engine, Error, PipelineConfig,
    SearchMode, Translator,
};

mod settings;

use settings::{Resolved, SearchArgs};

#[derive(Parser)]
#[command(
    name = "pivot-clir",
    version,
    about = "Search a Russian corpus with English queries via Wikipedia and a translator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a corpus directory or JSON Lines file.
    Index {
        corpus: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        /// Stoplist file (one word per line); defaults to the bundled list.
        #[arg(long)]
        stoplist: Option<PathBuf>,
    },
    /// Run one query and print the ranked table.
    Query {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        search: SearchArgs,
        /// English query; several words are joined with spaces.
        #[arg(required = true, num_args = 1..)]
        query: Vec<String>,
    },
    /// Interactive prompt; `:mode wiki|mt|fused` switches mode, `:quit` exits.
    Repl {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run a cases file through several modes and report expected-document ranks.
    Eval {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        search: SearchArgs,
        /// TSV of query<TAB>expected doc id[<TAB>note].
        #[arg(long)]
        cases: PathBuf,
        /// Comma-separated modes to compare.
        #[arg(long, value_delimiter = ',', default_value = "wiki,mt,fused")]
        modes: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct IndexArg {
    /// Index file written by `pivot-clir index`.
    #[arg(long = "index", short = 'i')]
    path: PathBuf,
}

fn exit_code(e: &Error) -> u8 {
    if e.is_resolution() {
        3
    } else if e.is_network() {
        4
    } else {
        2
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Index {
            corpus,
            out,
            stoplist,
        } => cmd_index(corpus, stoplist, out),
        Command::Query {
            index,
            search,
            query,
        } => {
            let ctx = Context::open(&index.path, &search)?;
            let text = ctx.run_query(&query.join(" "), ctx.settings.mode)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Repl { index, search } => {
            let ctx = Context::open(&index.path, &search)?;
            let stdin = std::io::stdin();
            ctx.repl(stdin.lock(), std::io::stdout().lock())
                .map_err(|e| Error::InvalidArgument(format!("terminal i/o: {e}")))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval {
            index,
            search,
            cases,
            modes,
            out,
        } => {
            let ctx = Context::open(&index.path, &search)?;
            let modes = modes
                .iter()
                .map(|m| m.parse::<SearchMode>())
                .collect::<Result<Vec<_>, _>>()?;
            let cases = load_cases(&cases)?;
            let report = run_batch(&cases, &ctx.engine(), &modes, &ctx.settings.options)?;
            let text = report_to_text(&report);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_index(corpus: PathBuf, stoplist: Option<PathBuf>, out: PathBuf) -> Result<ExitCode, Error> {
    let config = match stoplist {
        Some(p) => PipelineConfig::from_stoplist_file(&p)?,
        None => PipelineConfig::default(),
    };
    let docs = load_corpus(&corpus)?;
    let index = build_index(&docs, &config)?;
    save_index(&index, &out)?;
    println!(
        "indexed N={} documents, vocabulary={} terms -> {}",
        index.doc_count(),
        index.vocabulary_size(),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

struct Context {
    index: CorpusIndex,
    pivot: pivot_clir::WikiPivot,
    translator: Translator,
    settings: Resolved,
}

impl Context {
    fn open(index_path: &std::path::Path, args: &SearchArgs) -> Result<Self, Error> {
        let settings = settings::resolve(args)?;
        let index = load_index(index_path)?;
        if let Some(p) = &settings.stoplist {
            index.check_pipeline(&PipelineConfig::from_stoplist_file(p)?)?;
        }
        let client = settings.fetch_client()?;
        let pivot = pivot_clir::WikiPivot::with_endpoint(settings.endpoint.clone(), client.clone());
        let translator = settings.translator(client)?;
        Ok(Context {
            index,
            pivot,
            translator,
            settings,
        })
    }

    fn engine(&self) -> Engine<'_> {
        Engine::new(&self.index, &self.pivot, &self.translator)
    }

    fn run_query(&self, query: &str, mode: SearchMode) -> Result<String, Error> {
        let outcome = self.engine().search(query, mode, &self.settings.options)?;
        Ok(format_outcome(&outcome))
    }

    fn repl(&self, input: impl BufRead, mut out: impl Write) -> std::io::Result<()> {
        let mut mode = self.settings.mode;
        writeln!(
            out,
            "search mode: {mode} (:mode wiki|mt|fused to switch, :quit to exit)"
        )?;
        writeln!(out, "Please enter your English search query:")?;
        out.flush()?;
        for line in input.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(cmd) = line.strip_prefix(':') {
                let mut parts = cmd.split_whitespace();
                match (parts.next(), parts.next()) {
                    (Some("quit" | "q"), _) => break,
                    (Some("mode"), Some(m)) => match m.parse::<SearchMode>() {
                        Ok(m) => {
                            mode = m;
                            writeln!(out, "search mode: {mode}")?;
                        }
                        Err(e) => writeln!(out, "error: {e}")?,
                    },
                    _ => writeln!(out, "commands: :mode wiki|mt|fused, :quit")?,
                }
            } else {
                match self.run_query(line, mode) {
                    Ok(text) => write!(out, "{text}")?,
                    Err(e) => writeln!(out, "error: {e}")?,
                }
            }
            writeln!(out)?;
            writeln!(out, "Please enter your English search query:")?;
            out.flush()?;
        }
        Ok(())
    }
}
