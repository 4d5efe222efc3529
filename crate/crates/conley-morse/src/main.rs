//! Thin CLI over the library: `analyze`, `check-pair`, `homology`, and
//! `morse-graph`. Errors exit with a stable per-class code and print a
//! machine-readable JSON diagnostic on stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use conley_morse::error::{Error, Result};
use conley_morse::grid::CellSet;
use conley_morse::homology::relative_homology;
use conley_morse::indexpair::{pair_to_json, verify_weak_index_pair, Certification, WeakIndexPair};
use conley_morse::morse::morse_graph;
use conley_morse::report::{analyze, decomposition_for, SystemSpec};

#[derive(Parser)]
#[command(name = "conley-morse", about = "Conley-Morse analysis of combinatorial multivalued maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a system file and emit the report.
    Analyze {
        spec: PathBuf,
        /// Print per-stage wall times to stderr (never part of the
        /// report, which stays byte-deterministic).
        #[arg(long)]
        timings: bool,
        /// Write the report JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the Morse graph in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// JSON file with an explicit cell-id list to use as the ambient
        /// isolating neighborhood (default: the whole grid).
        #[arg(long)]
        neighborhood: Option<PathBuf>,
    },
    /// Verify a candidate weak index pair against a system.
    CheckPair { spec: PathBuf, pair: PathBuf },
    /// Relative homology of a pair of cell sets.
    Homology {
        spec: PathBuf,
        pair: PathBuf,
        /// Also compute the index map of the pair (taken as an F-pair in
        /// the given ambient set) and dump its matrices as JSON arrays.
        #[arg(long)]
        index: bool,
    },
    /// Morse graph of a system in DOT format.
    MorseGraph { spec: PathBuf },
}

#[derive(Deserialize)]
struct PairFile {
    p1: Vec<usize>,
    p2: Vec<usize>,
    #[serde(default)]
    ambient: Option<Vec<usize>>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { spec, timings, out, dot, neighborhood } => {
            let n_ids = match neighborhood {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    Some(serde_json::from_str::<Vec<usize>>(&text)?)
                }
                None => None,
            };
            let started = std::time::Instant::now();
            let run = analyze(&spec, n_ids)?;
            if timings {
                eprintln!("analyze: {} ms total", started.elapsed().as_millis());
                for (stage, ms) in &run.timings_ms {
                    eprintln!("  {stage}: {ms} ms");
                }
            }
            let report = serde_json::to_string_pretty(&run.to_json())?;
            match out {
                Some(path) => std::fs::write(path, report + "\n")?,
                None => println!("{report}"),
            }
            if let Some(path) = dot {
                std::fs::write(path, run.to_dot())?;
            }
            Ok(())
        }
        Command::CheckPair { spec, pair } => {
            let (_, grid, map) = SystemSpec::load(&spec)?;
            let n = grid.total_cells();
            let pf: PairFile = serde_json::from_slice(&std::fs::read(pair)?)?;
            let candidate = WeakIndexPair {
                p1: cellset(n, &pf.p1)?,
                p2: cellset(n, &pf.p2)?,
                ambient: match &pf.ambient {
                    Some(ids) => cellset(n, ids)?,
                    None => CellSet::full(n),
                },
            };
            match verify_weak_index_pair(&map, &candidate) {
                Certification::Certified => {
                    println!("{}", serde_json::to_string_pretty(&pair_to_json(&candidate, true))?);
                    Ok(())
                }
                Certification::Violated { condition, cells } => {
                    Err(Error::ResolutionTooCoarse(format!(
                        "pair violates condition ({condition}) at cells {cells:?}"
                    )))
                }
            }
        }
        Command::Homology { spec, pair, index } => {
            let (_, grid, map) = SystemSpec::load(&spec)?;
            let n = grid.total_cells();
            let pf: PairFile = serde_json::from_slice(&std::fs::read(pair)?)?;
            let p1 = cellset(n, &pf.p1)?;
            let p2 = cellset(n, &pf.p2)?;
            let (_, dims) = relative_homology(&grid, &p1, &p2)?;
            let mut out = serde_json::json!({ "dims": dims });
            if index {
                let fpair = conley_morse::indexpair::FPair {
                    r1: p1,
                    r2: p2,
                    ambient: match &pf.ambient {
                        Some(ids) => cellset(n, ids)?,
                        None => CellSet::full(n),
                    },
                };
                let imap = conley_morse::homology::index_map(&map, &fpair)?;
                out["index_dims"] = serde_json::json!(imap.dims);
                out["index_matrices"] = serde_json::json!(
                    imap.matrices.iter().map(|m| m.to_i64_lossy()).collect::<Vec<_>>()
                );
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(())
        }
        Command::MorseGraph { spec } => {
            let (sys, grid, map) = SystemSpec::load(&spec)?;
            let all = CellSet::full(grid.total_cells());
            let d = decomposition_for(&map, &sys, &all)?;
            print!("{}", morse_graph(&d).to_dot());
            Ok(())
        }
    }
}

fn cellset(n: usize, ids: &[usize]) -> Result<CellSet> {
    for &id in ids {
        if id >= n {
            return Err(Error::InvalidCell { id, total: n });
        }
    }
    Ok(CellSet::from_ids(n, ids.iter().copied()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
