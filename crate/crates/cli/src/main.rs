//! Command-line surface: build the graph of a dynamical system, report
//! its invariants, compare two presentations, enumerate partitions and
//! colorings, list paths, and export DOT.
//!
//! Exit codes: 0 for success (and `compare` equivalence), 1 for a
//! `compare` distinction, 2 for any parse or validation error.

mod dot;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use graphinv::coloring;
use graphinv::partition::{self, DEFAULT_PARTITION_CAP};
use graphinv::paths;
use graphinv::report::{self, CompareOutcome};

use crate::load::{load_input, resolve_partition, CliError};

#[derive(Parser)]
#[command(
    name = "graphinv",
    version,
    about = "Directed-graph invariants of finite dynamical systems and colored graph algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph of a dynamical system and print it as a graph file
    Build {
        /// System file
        system: PathBuf,
    },
    /// Print the invariant report for a system or graph file
    Report {
        /// System or graph file (sniffed by header)
        file: PathBuf,
        /// Edge-count cap for partition enumeration
        #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
        max_partition_edges: usize,
        /// Partition for the coloring fields: `canonical`, a partition
        /// file, or inline `class ...` text
        #[arg(long)]
        partition: Option<String>,
    },
    /// Compare two presentations' invariants; exit 0 if equivalent, 1 if not
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Compare the underlying digraphs only
        #[arg(long)]
        ignore_colors: bool,
    },
    /// Enumerate topological partitions and their Hasse diagram
    Partitions {
        file: PathBuf,
        /// Edge-count cap for partition enumeration
        #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
        max_partition_edges: usize,
    },
    /// Conflict pairs, minimal coloring, and maximality over a partition
    Colorings {
        file: PathBuf,
        /// Partition to color: `canonical`, a partition file, or inline
        /// `class ...` text
        #[arg(long)]
        partition: Option<String>,
    },
    /// List composable paths between two vertices
    Paths {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Render the graph as Graphviz DOT
    Dot { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("{error}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Build { system } => {
            let input = load_input(&system)?;
            if !input.from_system {
                return Err(CliError::new(&system, None, "build expects a system file"));
            }
            print!("{}", input.graph.serialize());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            file,
            max_partition_edges,
            partition,
        } => {
            let input = load_input(&file)?;
            let active = resolve_partition(&input, partition.as_deref())?;
            let report = report::build_report(&input.graph, &active, max_partition_edges)
                .map_err(|e| CliError::new(&file, None, e))?;
            print!("{}", report.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            a,
            b,
            ignore_colors,
        } => {
            let left = load_input(&a)?;
            let right = load_input(&b)?;
            let outcome = report::compare_graphs(
                &left.graph,
                &left.partition,
                &right.graph,
                &right.partition,
                ignore_colors,
            )
            .map_err(|e| CliError::new(&a, None, e))?;
            match outcome {
                CompareOutcome::Equivalent(witness) => {
                    println!("EQUIVALENT");
                    let pairs = |items: Vec<String>| items.join(" ");
                    println!(
                        "vertices: {}",
                        pairs(
                            witness
                                .vertex_map
                                .iter()
                                .map(|(v, w)| format!("{v}->{w}"))
                                .collect()
                        )
                    );
                    println!(
                        "edges: {}",
                        pairs(
                            witness
                                .edge_map
                                .iter()
                                .map(|(e, f)| format!("{e}->{f}"))
                                .collect()
                        )
                    );
                    if !witness.color_map.is_empty() {
                        println!(
                            "colors: {}",
                            pairs(
                                witness
                                    .color_map
                                    .iter()
                                    .map(|(c, d)| format!("{c}->{d}"))
                                    .collect()
                            )
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
                CompareOutcome::Distinguished {
                    invariant,
                    left,
                    right,
                } => {
                    println!("DISTINGUISHED {invariant}: {left} vs {right}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Partitions {
            file,
            max_partition_edges,
        } => {
            let input = load_input(&file)?;
            let partitions =
                partition::enumerate_topological_partitions(&input.graph, max_partition_edges)
                    .map_err(|e| CliError::new(&file, None, e))?;
            for (index, p) in partitions.iter().enumerate() {
                println!("partition {}", index + 1);
                print!("{}", p.render());
            }
            let covers =
                partition::hasse_edges(&partitions).map_err(|e| CliError::new(&file, None, e))?;
            for (low, high) in covers {
                println!("cover {} {}", low + 1, high + 1);
            }
            let (minimal, maximal) = partition::poset_extremes(&partitions)
                .map_err(|e| CliError::new(&file, None, e))?;
            let one_based = |list: Vec<usize>| {
                list.into_iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("minimal {}", one_based(minimal));
            println!("maximal {}", one_based(maximal));
            Ok(ExitCode::SUCCESS)
        }
        Command::Colorings { file, partition } => {
            let input = load_input(&file)?;
            let active = resolve_partition(&input, partition.as_deref())?;
            let conflict_graph = coloring::conflict_relation(&input.graph, &active)
                .map_err(|e| CliError::new(&file, None, e))?;
            print!("{}", active.render());
            for (a, b) in conflict_graph.conflict_pairs() {
                println!("conflict {a} {b}");
            }
            let (count, witness) = coloring::minimal_coloring(&conflict_graph);
            println!("minimal_color_count {count}");
            print!("{}", witness.render());
            let maximal = coloring::is_maximal_coloring(&input.graph, &active, &witness)
                .map_err(|e| CliError::new(&file, None, e))?;
            println!("maximal {maximal}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Paths {
            file,
            from,
            to,
            max_len,
        } => {
            let input = load_input(&file)?;
            let found = paths::admissible_paths(&input.graph, &from, &to, max_len)
                .map_err(|e| CliError::new(&file, None, e))?;
            for path in found {
                print!("{}", path.render());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { file } => {
            let input = load_input(&file)?;
            print!("{}", dot::render(&input.graph));
            Ok(ExitCode::SUCCESS)
        }
    }
}
