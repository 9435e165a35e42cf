//! Command-line surface: parse inputs in the text formats, run the analyses,
//! and emit verdicts, witnesses and DOT renderings.
//!
//! Exit codes: 0 for success / yes-verdicts, 1 for negative verdicts, 2 for
//! parse errors, 3 for precondition violations and other errors. The
//! `RXNSKEL_MAX_N` environment variable overrides the background/ground size
//! caps of operations that materialize all `2^n` states.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rxnskel::format::{
    digraph_to_dot, one_out_to_dot, parse_digraph, parse_reaction_system, parse_set_family,
    parse_skeleton, parse_state_sequence, reaction_system_to_json, state_labels, write_digraph,
    write_reaction_system, write_set_family, write_skeleton, SymbolTable,
};
use rxnskel::graph::brute_force_isomorphic_with_cap;
use rxnskel::reaction::{
    equivalent_with_cap, is_transition_graph, transition_isomorphism, Equivalence,
    DEFAULT_TRANSITION_CAP, DEFAULT_ZERO_CONTEXT_CAP,
};
use rxnskel::skeleton::{are_companions, certify_isomorphic};
use rxnskel::{Error, ReactionSystem, Skeleton, SubsetMask};

#[derive(Parser)]
#[command(name = "rxnskel", version, about = "Reaction-system dynamics and skeleton certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print res(state) for a reaction system.
    Res { rs: PathBuf, state: String },
    /// Emit the zero-context graph of a reaction system.
    Graph0 {
        rs: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Emit the transition graph of a reaction system.
    Tgraph {
        rs: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Print the companion partition of a set family, or of the state space
    /// of a reaction system (one block per line).
    Companions { input: PathBuf },
    /// Print the intersection closure of a set family.
    Closure { family: PathBuf },
    /// Extract a skeleton from a graph and print it.
    Skeleton { graph: PathBuf },
    /// Decide whether two skeletons are companions.
    CompanionCheck { skeleton1: PathBuf, skeleton2: PathBuf },
    /// Decide graph isomorphism through the skeleton certificate.
    Iso {
        graph1: PathBuf,
        graph2: PathBuf,
        /// Cross-check the verdict against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Vertex cap for the oracle search.
        #[arg(long, default_value_t = 8)]
        oracle_cap: usize,
    },
    /// Decide whether a graph is isomorphic to a transition graph; on yes,
    /// synthesize a reaction system for it.
    Characterize {
        graph: PathBuf,
        /// Write the synthesized reaction system here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide equivalence of two reaction systems (Theorem-3 certificate).
    Equivalent { rs1: PathBuf, rs2: PathBuf },
    /// Swap the zero-context successors of two companion states and emit the
    /// resulting reaction system.
    Swap {
        rs: PathBuf,
        x: String,
        y: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate a state sequence against a reaction system.
    Trace { rs: PathBuf, sequence: PathBuf },
}

const EXIT_NO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CHECK: u8 = 3;

/// Outcome of a decision subcommand. A yes always carries a witness whose
/// reload re-validates against the same inputs; diagnostics go to stderr.
struct Verdict {
    yes: bool,
    witness: Vec<String>,
    diagnostics: Vec<String>,
}

impl Verdict {
    fn yes(witness: Vec<String>) -> Self {
        Verdict {
            yes: true,
            witness,
            diagnostics: Vec::new(),
        }
    }

    fn no() -> Self {
        Verdict {
            yes: false,
            witness: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn with_diagnostic(mut self, message: impl Into<String>) -> Self {
        self.diagnostics.push(message.into());
        self
    }

    fn emit(self) -> u8 {
        println!("{}", if self.yes { "yes" } else { "no" });
        for line in &self.witness {
            println!("{line}");
        }
        for line in &self.diagnostics {
            eprintln!("{line}");
        }
        if self.yes {
            0
        } else {
            EXIT_NO
        }
    }
}

fn witness_lines(map: &[usize], from: &SymbolTable, to: &SymbolTable) -> Vec<String> {
    map.iter()
        .enumerate()
        .map(|(x, &y)| format!("{} -> {}", from.label(x), to.label(y)))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse { .. } => ExitCode::from(EXIT_PARSE),
                _ => ExitCode::from(EXIT_CHECK),
            }
        }
    }
}

fn cap_override(default: usize) -> usize {
    std::env::var("RXNSKEL_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_rs(path: &Path) -> Result<(ReactionSystem, SymbolTable), Error> {
    let (rs, table) = parse_reaction_system(&read(path)?)?;
    for index in rs.inert_reactions() {
        eprintln!(
            "warning: reaction {} of {} can never fire (reactants and inhibitors overlap)",
            index + 1,
            path.display()
        );
    }
    Ok((rs, table))
}

fn parse_state(table: &SymbolTable, text: &str) -> Result<SubsetMask, Error> {
    table.parse_set(text).map_err(|message| Error::Parse {
        line: 0,
        message,
    })
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Res { rs, state } => {
            let (system, table) = load_rs(&rs)?;
            let state = parse_state(&table, &state)?;
            println!("{}", table.render_set(&system.result(&state)?));
            Ok(0)
        }
        Command::Graph0 { rs, dot } => {
            let (system, table) = load_rs(&rs)?;
            let zero = system.zero_context_graph_with_cap(cap_override(DEFAULT_ZERO_CONTEXT_CAP))?;
            let labels = state_labels(&table);
            if dot {
                print!("{}", one_out_to_dot(&zero, &labels, &[]));
            } else {
                let table = SymbolTable::new(labels)?;
                print!("{}", write_digraph(&zero.to_digraph(), &table));
            }
            Ok(0)
        }
        Command::Tgraph { rs, dot } => {
            let (system, table) = load_rs(&rs)?;
            let graph = system.transition_graph_with_cap(cap_override(DEFAULT_TRANSITION_CAP))?;
            let labels = state_labels(&table);
            if dot {
                // Mark the empty and full states.
                let marks = [0, graph.num_vertices() - 1];
                print!("{}", digraph_to_dot(&graph, &labels, &marks));
            } else {
                let table = SymbolTable::new(labels)?;
                print!("{}", write_digraph(&graph, &table));
            }
            Ok(0)
        }
        Command::Companions { input } => {
            let text = read(&input)?;
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or_default()
                .to_string();
            if first.starts_with("universe") {
                let (family, table) = parse_set_family(&text)?;
                for block in family.companion_partition().blocks() {
                    println!("{}", table.render_set(block));
                }
            } else {
                let (system, table) = parse_reaction_system(&text)?;
                let partition =
                    system.res_companions_with_cap(cap_override(DEFAULT_ZERO_CONTEXT_CAP))?;
                let n = system.background_size();
                for block in partition.blocks() {
                    let states: Vec<String> = block
                        .iter()
                        .map(|i| table.render_set(&SubsetMask::from_index(n, i)))
                        .collect();
                    println!("{}", states.join(" "));
                }
            }
            Ok(0)
        }
        Command::Closure { family } => {
            let (family, table) = parse_set_family(&read(&family)?)?;
            print!("{}", write_set_family(&family.intersection_closure(), &table));
            Ok(0)
        }
        Command::Skeleton { graph } => {
            let (graph, table) = parse_digraph(&read(&graph)?)?;
            print!("{}", write_skeleton(&Skeleton::of_graph(&graph), &table));
            Ok(0)
        }
        Command::CompanionCheck { skeleton1, skeleton2 } => {
            let (a, table_a) = parse_skeleton(&read(&skeleton1)?)?;
            let (b, table_b) = parse_skeleton(&read(&skeleton2)?)?;
            let verdict = match are_companions(&a, &b) {
                Some(witness) => {
                    let eta = witness.vertex_map().expect("companion witness");
                    Verdict::yes(witness_lines(eta, &table_a, &table_b))
                }
                None => Verdict::no(),
            };
            Ok(verdict.emit())
        }
        Command::Iso { graph1, graph2, oracle, oracle_cap } => {
            let (a, table_a) = parse_digraph(&read(&graph1)?)?;
            let (b, table_b) = parse_digraph(&read(&graph2)?)?;
            let certified = certify_isomorphic(&a, &b);
            if oracle {
                let oracle_verdict = brute_force_isomorphic_with_cap(&a, &b, oracle_cap)?;
                if certified.is_some() != oracle_verdict.is_some() {
                    return Err(Error::Invalid(
                        "certificate and oracle disagree; this is a bug".into(),
                    ));
                }
                eprintln!("oracle cross-check: agreed");
            }
            let verdict = match certified {
                Some(psi) => Verdict::yes(witness_lines(&psi, &table_a, &table_b)),
                None => Verdict::no(),
            };
            Ok(verdict.emit())
        }
        Command::Characterize { graph, output, json } => {
            let (graph, table) = parse_digraph(&read(&graph)?)?;
            if !graph.num_vertices().is_power_of_two() || graph.num_vertices() < 2 {
                return Ok(Verdict::no()
                    .with_diagnostic(format!(
                        "vertex count {} is not a power of two",
                        graph.num_vertices()
                    ))
                    .emit());
            }
            match is_transition_graph(&graph) {
                Some((system, phi)) => {
                    let state_table = SymbolTable::new(state_labels(&SymbolTable::numeric(
                        system.background_size(),
                    )))?;
                    let code =
                        Verdict::yes(witness_lines(&phi, &table, &state_table)).emit();
                    let body = if json {
                        reaction_system_to_json(&system)
                    } else {
                        write_reaction_system(&system)
                    };
                    match output {
                        Some(path) => fs::write(&path, body).map_err(|e| Error::Invalid(
                            format!("cannot write {}: {e}", path.display()),
                        ))?,
                        None => {
                            println!("# synthesized reaction system");
                            print!("{body}");
                        }
                    }
                    Ok(code)
                }
                None => Ok(Verdict::no().emit()),
            }
        }
        Command::Equivalent { rs1, rs2 } => {
            let (a, table_a) = load_rs(&rs1)?;
            let (b, _) = load_rs(&rs2)?;
            let cap = cap_override(DEFAULT_TRANSITION_CAP);
            let verdict = match equivalent_with_cap(&a, &b, cap)? {
                Equivalence::Equivalent(witness) => {
                    let psi = transition_isomorphism(&a, &b, &witness)?;
                    let states = SymbolTable::new(state_labels(&table_a))?;
                    Verdict::yes(witness_lines(&psi, &states, &states))
                }
                Equivalence::NotEquivalent => Verdict::no(),
                Equivalence::BackgroundSizeMismatch { left, right } => Verdict::no()
                    .with_diagnostic(format!("background sizes differ: {left} vs {right}")),
            };
            Ok(verdict.emit())
        }
        Command::Swap { rs, x, y, json } => {
            let (system, table) = load_rs(&rs)?;
            let x = parse_state(&table, &x)?;
            let y = parse_state(&table, &y)?;
            let swapped =
                system.swap_states_with_cap(&x, &y, cap_override(DEFAULT_ZERO_CONTEXT_CAP))?;
            if json {
                println!("{}", reaction_system_to_json(&swapped));
            } else {
                print!("{}", write_reaction_system(&swapped));
            }
            Ok(0)
        }
        Command::Trace { rs, sequence } => {
            let (system, table) = load_rs(&rs)?;
            let states = parse_state_sequence(&read(&sequence)?, &table)?;
            if system.validate_state_sequence(&states)? {
                println!("valid");
                Ok(0)
            } else {
                println!("invalid");
                Ok(EXIT_NO)
            }
        }
    }
}
