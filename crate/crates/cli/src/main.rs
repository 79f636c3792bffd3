use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pdbg::exact::{self, SolverConfig, SolverError, DEFAULT_MAX_STATES};
use pdbg::format::{self, Instance};
use pdbg::gen::{self, RandomSpec};
use pdbg::graph::{is_covering, is_sound, validate_graph};
use pdbg::oracle::find_ham_cycle;
use pdbg::poly;
use pdbg::reductions::{self, ReductionTrace};
use pdbg::undirected::{HamCycle, UndirectedGraph};

#[derive(Parser)]
#[command(version, about = "Sound cycles in paired de Bruijn graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file; exit 0 iff the graph is well formed
    Validate {
        /// Instance file, stdin when omitted or `-`
        path: Option<PathBuf>,
    },
    /// Decide whether a sound (or covering sound) cycle exists
    Solve {
        path: Option<PathBuf>,
        #[arg(long)]
        covering: bool,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        #[arg(long, env = "PDBG_MAX_STATES", default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Write the cycle found to this file (exact engine only)
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run reductions. With `--stage` the input is an undirected graph,
    /// without it an order-1 instance that `--lift`/`--binarize` act on
    Reduce {
        path: Option<PathBuf>,
        #[arg(long, value_enum)]
        stage: Option<Stage>,
        /// Lift the order-1 result to this order
        #[arg(long, value_name = "K")]
        lift: Option<usize>,
        /// Re-encode the order-1 result over a binary alphabet
        #[arg(long)]
        binarize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the per-stage vertex and edge maps here
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Build the covering sound cycle for the block graph of a hamiltonian graph
    Witness {
        graph: PathBuf,
        hamcycle: PathBuf,
        /// Treat the inputs as the source of the full pipeline instead
        #[arg(long)]
        pipeline: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a cycle file against an instance from the definitions alone
    Verify {
        instance: PathBuf,
        cycle: PathBuf,
        /// Override the shift stored in the cycle file
        #[arg(long)]
        d: Option<usize>,
        /// Also require every edge to be traversed
        #[arg(long)]
        covering: bool,
    },
    /// Print the instance graph in DOT
    ExportDot { path: Option<PathBuf> },
    /// Print a deterministic test input
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Size parameter for c_n, path and star
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print a hamiltonian cycle of the graph instead of the graph
        #[arg(long)]
        hamcycle: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Exact,
    Poly,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Promise,
    Pdbg,
    Pipeline,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    K3,
    K4,
    #[value(name = "c_n")]
    Cn,
    Path,
    Star,
    Bowtie,
    /// Order-1 instance, at most 6 vertices, 4 symbols and shift 3
    Random,
    /// Order-0 instance on 3 symbols
    RandomK0,
}

/// Process exit status besides 0 (yes / valid) and 1 (no / invalid).
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
            Ok(text)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: Option<&Path>) -> Result<Instance> {
    Ok(format::parse_instance(&read_input(path)?)?)
}

fn load_ugraph(path: Option<&Path>) -> Result<UndirectedGraph> {
    Ok(format::parse_ugraph(&read_input(path)?)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> ExitCode {
    ExitCode::from(if b { 0 } else { 1 })
}

fn validate(path: Option<PathBuf>) -> Result<ExitCode> {
    let inst = load_instance(path.as_deref())?;
    let report = validate_graph(&inst.graph);
    if report.is_valid() {
        println!("VALID");
    } else {
        println!("INVALID");
        print!("{report}");
    }
    Ok(verdict(report.is_valid()))
}

fn solve(
    path: Option<PathBuf>,
    covering: bool,
    engine: Engine,
    max_states: usize,
    witness: Option<PathBuf>,
) -> Result<ExitCode> {
    let Instance { graph, shift } = load_instance(path.as_deref())?;
    let poly_applies = graph.alphabet().len() == 1 || graph.k() == 0;
    let use_poly = match engine {
        Engine::Poly if witness.is_some() => bail!("the poly engine does not produce witnesses"),
        Engine::Poly if !poly_applies => bail!("the poly engine needs order 0 or a one-symbol alphabet"),
        Engine::Poly => true,
        Engine::Auto => poly_applies && witness.is_none(),
        Engine::Exact => false,
    };
    let found = if use_poly {
        let report = validate_graph(&graph);
        if !report.is_valid() {
            return Err(SolverError::InvalidGraph(report).into());
        }
        if graph.alphabet().len() == 1 {
            poly::solve_unary_alphabet(&graph, shift, covering)?
        } else {
            poly::solve_k0(&graph, shift, covering)?
        }
    } else {
        let config = SolverConfig { max_states };
        let cycle = if covering {
            exact::exists_covering_sound_cycle(&graph, shift, &config)?
        } else {
            exact::exists_sound_cycle(&graph, shift, &config)?
        };
        if let (Some(out), Some(cycle)) = (&witness, &cycle) {
            write_output(Some(out), &format::write_cycle(cycle, graph.alphabet()))?;
        }
        cycle.is_some()
    };
    let label = if covering {
        "COVERING-SOUND-CYCLE"
    } else {
        "SOUND-CYCLE"
    };
    println!("{label}: {}", yes_no(found));
    Ok(verdict(found))
}

fn reduce(
    path: Option<PathBuf>,
    stage: Option<Stage>,
    lift: Option<usize>,
    binarize: bool,
    out: Option<PathBuf>,
    trace_path: Option<PathBuf>,
) -> Result<ExitCode> {
    let mut traces: Vec<ReductionTrace> = Vec::new();
    let text = read_input(path.as_deref())?;
    let (mut graph, mut shift) = match stage {
        Some(Stage::Promise) => {
            if lift.is_some() || binarize {
                bail!("--lift and --binarize need an order-1 instance, not the promise graph");
            }
            let (promise, trace) = reductions::hc_to_promise(&format::parse_ugraph(&text)?)?;
            write_output(out.as_deref(), &format::write_ugraph(&promise))?;
            if let Some(p) = trace_path {
                write_output(Some(&p), &format::write_traces(&[trace]))?;
            }
            return Ok(ExitCode::SUCCESS);
        }
        Some(s) => {
            let mut source = format::parse_ugraph(&text)?;
            if s == Stage::Pipeline {
                let (promise, trace) = reductions::hc_to_promise(&source)?;
                traces.push(trace);
                source = promise;
            }
            let (graph, shift, trace) = reductions::promise_to_pdbg(&source)?;
            traces.push(trace);
            (graph, shift)
        }
        None => {
            if lift.is_none() && !binarize {
                bail!("nothing to do: give --stage, --lift or --binarize");
            }
            let inst = format::parse_instance(&text)?;
            (inst.graph, inst.shift)
        }
    };
    if let Some(order) = lift {
        let (lifted, d, trace) = reductions::lift_k(&graph, shift, order)?;
        (graph, shift) = (lifted, d);
        traces.push(trace);
    }
    if binarize {
        if lift.is_some_and(|k| k != 1) {
            bail!("--binarize needs an order-1 graph; drop --lift or use --lift 1");
        }
        let (binary, d, trace) = reductions::binarize(&graph, shift)?;
        (graph, shift) = (binary, d);
        traces.push(trace);
    }
    write_output(out.as_deref(), &format::write_instance(&Instance { graph, shift })?)?;
    if let Some(p) = trace_path {
        write_output(Some(&p), &format::write_traces(&traces))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn witness(graph: PathBuf, hamcycle: PathBuf, pipeline: bool, out: Option<PathBuf>) -> Result<ExitCode> {
    let source = load_ugraph(Some(&graph))?;
    let cycle = format::parse_hamcycle(&read_input(Some(&hamcycle))?, &source)?;
    let (pdbg, _, _) = if pipeline {
        reductions::pipeline(&source)?
    } else {
        reductions::promise_to_pdbg(&source)?
    };
    let w = if pipeline {
        reductions::pipeline_witness(&source, &cycle)?
    } else {
        reductions::build_witness_cycle(&source, &cycle)?
    };
    if !is_sound(&pdbg, &w.walk, w.shift)? || !is_covering(&pdbg, &w.walk)? {
        bail!("constructed cycle failed its self-check");
    }
    write_output(out.as_deref(), &format::write_cycle(&w, pdbg.alphabet()))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(instance: PathBuf, cycle: PathBuf, d: Option<usize>, covering: bool) -> Result<ExitCode> {
    let inst = load_instance(Some(&instance))?;
    let w = format::parse_cycle(&read_input(Some(&cycle))?, inst.graph.alphabet())?;
    let shift = d.unwrap_or(w.shift);
    let sound = is_sound(&inst.graph, &w.walk, shift)?;
    let covers = is_covering(&inst.graph, &w.walk)?;
    let ok = sound && (covers || !covering);
    if ok {
        println!("VALID");
    } else if !sound {
        println!("INVALID: spelled pair does not match at shift {shift}");
    } else {
        println!("INVALID: cycle misses an edge");
    }
    println!("sound: {}", yes_no(sound));
    println!("covering: {}", yes_no(covers));
    Ok(verdict(ok))
}

fn gen_family(family: Family, n: usize, seed: u64, hamcycle: bool) -> Result<ExitCode> {
    let graph = match family {
        Family::Random | Family::RandomK0 => {
            if hamcycle {
                bail!("--hamcycle applies to undirected families only");
            }
            let (graph, shift) = if family == Family::Random {
                gen::random_instance(&RandomSpec::default(), seed)
            } else {
                gen::random_k0_instance(3, 3, seed)
            };
            print!("{}", format::write_instance(&Instance { graph, shift })?);
            return Ok(ExitCode::SUCCESS);
        }
        Family::K3 => UndirectedGraph::complete(3),
        Family::K4 => UndirectedGraph::complete(4),
        Family::Cn if n < 3 => bail!("c_n needs --n of at least 3"),
        Family::Cn => UndirectedGraph::cycle(n),
        Family::Path => UndirectedGraph::path(n),
        Family::Star => UndirectedGraph::star(n),
        Family::Bowtie => UndirectedGraph::bowtie(),
    };
    if hamcycle {
        let order = find_ham_cycle(&graph).ok_or_else(|| anyhow!("graph has no hamiltonian cycle"))?;
        print!("{}", format::write_hamcycle(&HamCycle::new(&graph, order)?));
    } else {
        print!("{}", format::write_ugraph(&graph));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { path } => validate(path),
        Command::Solve {
            path,
            covering,
            engine,
            max_states,
            witness,
        } => solve(path, covering, engine, max_states, witness),
        Command::Reduce {
            path,
            stage,
            lift,
            binarize,
            out,
            trace,
        } => reduce(path, stage, lift, binarize, out, trace),
        Command::Witness {
            graph,
            hamcycle,
            pipeline,
            out,
        } => witness(graph, hamcycle, pipeline, out),
        Command::Verify {
            instance,
            cycle,
            d,
            covering,
        } => verify(instance, cycle, d, covering),
        Command::ExportDot { path } => {
            print!("{}", format::to_dot(&load_instance(path.as_deref())?.graph));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            family,
            n,
            seed,
            hamcycle,
        } => gen_family(family, n, seed, hamcycle),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            let resource = matches!(
                err.downcast_ref::<SolverError>(),
                Some(SolverError::ResourceExceeded { .. })
            );
            let kind = if resource { "resource" } else { "input" };
            let message = format!("{err:#}").replace('\n', "; ");
            eprintln!("error: {kind}: {message}");
            ExitCode::from(if resource { EXIT_RESOURCE } else { EXIT_INPUT })
        }
    }
}
