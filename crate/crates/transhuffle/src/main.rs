//! Command-line front end for building, verifying, drawing, sampling, and
//! searching lazy-transposition shuffles.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verify verdict,
//! 2 usage or parse failure, 3 construction failure, 4 resource guard.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use transhuffle::constructions::{
    self, default_divide_and_conquer, partition_sweep, simple_shuffle_from_word, simple_sweep,
    star_sweep, Block, Partition, Sweep,
};
use transhuffle::document::{Provenance, ShuffleDocument};
use transhuffle::search::{self, SolveOptions, SurveyOptions};
use transhuffle::words::{
    bubble_sort_word, enumerate_reduced_words, random_reduced_word, stanley_count,
    ReducedWord,
};
use transhuffle::{diagram, verify, Error};

#[derive(Parser)]
#[command(name = "transhuffle", version, about = "Lazy-transposition shuffles of S_n")]
struct Cli {
    /// Worker threads for search; defaults to TRANSHUFFLE_THREADS or all cores.
    #[arg(long, global = true, env = "TRANSHUFFLE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Word,
    Sweep,
    Divide,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFamily {
    Simple,
    Star,
    Partition,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Svg,
    Ascii,
}

#[derive(Subcommand)]
enum Command {
    /// Build a shuffle and emit its document.
    Construct {
        #[arg(long)]
        method: Method,
        #[arg(long)]
        n: usize,
        /// Comma-separated reduced-word letters (method word).
        #[arg(long)]
        word: Option<String>,
        /// Sweep family (method sweep).
        #[arg(long)]
        family: Option<SweepFamily>,
        /// Top-level partition blocks like "1,2;3;4" (family partition).
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a shuffle document for exact uniformity.
    Verify {
        path: PathBuf,
        /// Uniformity tolerance for real-mode documents.
        #[arg(long, default_value_t = verify::REAL_UNIFORM_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Reduced-word utilities.
    Words {
        #[command(subcommand)]
        sub: WordsCommand,
    },
    /// Survey transposition networks for feasible shuffles.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lmin: usize,
        #[arg(long)]
        lmax: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = search::DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        /// Cap on candidates per length; enables sampling above the budget.
        #[arg(long)]
        max_candidates: Option<usize>,
        /// Append-only JSONL checkpoint path.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Resume from the checkpoint file instead of starting fresh.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a shuffle document as a wiring ladder.
    Diagram {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Ascii)]
        format: DiagramFormat,
    },
    /// Sample permutations from a shuffle document.
    Sample {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum WordsCommand {
    /// Number of reduced words of the reverse permutation.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Stream all reduced words, one comma-separated line each.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// A seeded random reduced word.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply one commuting or braid move at a 1-based site.
    Moves {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, group = "move")]
        braid_at: Option<usize>,
        #[arg(long, group = "move")]
        commute_at: Option<usize>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard(_) => 4,
        Error::ConstructionFailed(_) | Error::FactorizationFailed(_) => 3,
        _ => 2,
    }
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Document(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

fn parse_partition(n: usize, text: &str) -> Result<Partition, Error> {
    let blocks: Result<Vec<Block>, Error> = text
        .split(';')
        .map(|b| {
            let members = parse_usize_list(b)?;
            let rep = *members
                .iter()
                .min()
                .ok_or_else(|| Error::BadPartition("empty block".into()))?;
            Block::new(members, rep)
        })
        .collect();
    Partition::new(n, blocks?)
}

fn cmd_construct(
    method: Method,
    n: usize,
    word: Option<String>,
    family: Option<SweepFamily>,
    partition: Option<String>,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let (shuffle, provenance) = match method {
        Method::Word => {
            let letters = match &word {
                Some(w) => parse_usize_list(w)?,
                None => bubble_sort_word(n).letters().to_vec(),
            };
            let reduced = ReducedWord::new(n, letters.clone())?;
            (
                simple_shuffle_from_word(&reduced),
                Provenance {
                    method: "word".into(),
                    word: Some(letters),
                    partition: None,
                    seed: None,
                },
            )
        }
        Method::Sweep => {
            let family = family.unwrap_or(SweepFamily::Simple);
            let top_partition = match (&family, &partition) {
                (SweepFamily::Partition, Some(p)) => Some(parse_partition(n, p)?),
                (SweepFamily::Partition, None) => {
                    return Err(Error::BadPartition(
                        "--family partition requires --partition".into(),
                    ));
                }
                _ => None,
            };
            let provider = |k: usize| -> Result<Sweep, Error> {
                match family {
                    SweepFamily::Simple => Ok(simple_sweep(k)),
                    SweepFamily::Star => Ok(star_sweep(k)),
                    SweepFamily::Partition => {
                        // the named partition covers the top order; lower
                        // orders close with simple sweeps
                        if k == n {
                            let part = top_partition.as_ref().unwrap();
                            let subs: Vec<Sweep> = part
                                .blocks()
                                .iter()
                                .map(|b| simple_sweep(b.size()))
                                .collect();
                            partition_sweep(k, part, &subs)
                        } else {
                            Ok(simple_sweep(k))
                        }
                    }
                }
            };
            (
                constructions::shuffle_from_sweeps(&provider, n)?,
                Provenance {
                    method: "sweep".into(),
                    word: None,
                    partition: top_partition.map(|p| {
                        p.blocks().iter().map(|b| b.members().to_vec()).collect()
                    }),
                    seed: None,
                },
            )
        }
        Method::Divide => (
            default_divide_and_conquer(n)?,
            Provenance {
                method: "divide".into(),
                word: None,
                partition: None,
                seed: None,
            },
        ),
    };
    let doc = ShuffleDocument::from_shuffle(&shuffle, Some(provenance));
    match out {
        Some(path) => doc.write_file(&path)?,
        None => println!("{}", doc.to_json()),
    }
    Ok(())
}

fn cmd_verify(path: &PathBuf, tol: f64, json: bool) -> Result<bool, Error> {
    let shuffle = ShuffleDocument::read_file(path)?.to_shuffle()?;
    let report = verify::verify_shuffle(&shuffle, tol)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    } else {
        print!("{}", report.human_text());
    }
    Ok(report.uniform)
}

fn cmd_words(sub: WordsCommand) -> Result<(), Error> {
    match sub {
        WordsCommand::Count { n } => println!("{}", stanley_count(n)),
        WordsCommand::Enumerate { n } => {
            for word in enumerate_reduced_words(n)? {
                println!("{}", format_letters(word.letters()));
            }
        }
        WordsCommand::Random { n, seed } => {
            println!("{}", format_letters(random_reduced_word(n, seed).letters()));
        }
        WordsCommand::Moves {
            word,
            n,
            braid_at,
            commute_at,
        } => {
            let letters = parse_usize_list(&word)?;
            let n = n.unwrap_or_else(|| letters.iter().max().map_or(1, |m| m + 1));
            let reduced = ReducedWord::new(n, letters)?;
            let moved = match (braid_at, commute_at) {
                (Some(j), None) => reduced.apply_braid_move(j)?,
                (None, Some(j)) => reduced.apply_commuting_move(j)?,
                _ => {
                    return Err(Error::Document(
                        "exactly one of --braid-at / --commute-at is required".into(),
                    ));
                }
            };
            println!("{}", format_letters(moved.letters()));
        }
    }
    Ok(())
}

fn format_letters(letters: &[usize]) -> String {
    letters
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    lmin: usize,
    lmax: usize,
    restarts: usize,
    seed: u64,
    budget: u64,
    max_candidates: Option<usize>,
    checkpoint: Option<PathBuf>,
    resume: bool,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    if let (Some(path), false) = (&checkpoint, resume) {
        if path.exists() {
            std::fs::remove_file(path)
                .map_err(|e| Error::Document(format!("checkpoint: {e}")))?;
        }
    }
    let opts = SurveyOptions {
        solve: SolveOptions {
            restarts,
            tol: 1e-9,
            seed,
        },
        budget,
        max_candidates,
        checkpoint,
    };
    let report = search::minimum_length_survey(n, lmin, lmax, &opts)?;
    let text = serde_json::to_string_pretty(&report).unwrap();
    match out {
        Some(path) => std::fs::write(&path, text + "\n")
            .map_err(|e| Error::Document(format!("write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_diagram(path: &PathBuf, format: DiagramFormat) -> Result<(), Error> {
    let shuffle = ShuffleDocument::read_file(path)?.to_shuffle()?;
    match format {
        DiagramFormat::Svg => print!("{}", diagram::svg(&shuffle)),
        DiagramFormat::Ascii => print!("{}", diagram::ascii(&shuffle)),
    }
    Ok(())
}

fn cmd_sample(path: &PathBuf, count: usize, seed: u64) -> Result<(), Error> {
    let shuffle = ShuffleDocument::read_file(path)?.to_shuffle()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let pi = shuffle.sample_with_rng(&mut rng);
        println!(
            "{}",
            pi.one_line()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Error> {
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match cli.command {
        Command::Construct {
            method,
            n,
            word,
            family,
            partition,
            out,
        } => cmd_construct(method, n, word, family, partition, out).map(|_| true),
        Command::Verify { path, tol, json } => cmd_verify(&path, tol, json),
        Command::Words { sub } => cmd_words(sub).map(|_| true),
        Command::Search {
            n,
            lmin,
            lmax,
            restarts,
            seed,
            budget,
            max_candidates,
            checkpoint,
            resume,
            out,
        } => cmd_search(
            n,
            lmin,
            lmax,
            restarts,
            seed,
            budget,
            max_candidates,
            checkpoint,
            resume,
            out,
        )
        .map(|_| true),
        Command::Diagram { path, format } => cmd_diagram(&path, format).map(|_| true),
        Command::Sample { path, count, seed } => cmd_sample(&path, count, seed).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
