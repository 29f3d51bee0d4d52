use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pachner::census::{enumerate_closed, sphere_closure, CensusSpec, DEFAULT_CEILING};
use pachner::graph::{
    height_bound, height_bound_two_phase, length_bound, log10_ratio, mijatovic_bound, HeightReport,
    LengthReport, DEFAULT_MAX_HEIGHT, DEFAULT_MAX_ROUNDS,
};
use pachner::io::{read_signatures, write_signatures};
use pachner::isosig::FORMAT_VERSION;
use pachner::moves::greedy_simplify;
use pachner::{Error, IsoSig, Triangulation};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (signature format 1)");

#[derive(Parser, Debug)]
#[command(name = "pachner", version = VERSION, about = "Census, signatures and Pachner-graph analyses of 3-manifold triangulations")]
struct Cli {
    /// Report progress and timings on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Jobs {
    /// Worker threads [default: all cores].
    #[arg(long, short = 'j', env = "PACHNER_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate closed 3-manifold triangulations of one size.
    Census {
        #[arg(long, short = 'n')]
        size: usize,
        /// Keep only one-vertex triangulations.
        #[arg(long)]
        one_vertex: bool,
        /// Largest size accepted.
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
        /// Output file of sorted signatures.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Find one-vertex 3-spheres by 2-3/3-2 reachability.
    Spheres {
        #[arg(long)]
        max_level: usize,
        /// Extra levels the search may climb above --max-level.
        #[arg(long, default_value_t = 2)]
        height: usize,
        /// Output directory; one `level-N.sig` file per level.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Convert between gluing tables and signatures.
    Isosig {
        #[command(subcommand)]
        action: IsosigAction,
    },
    /// Greedily reduce a triangulation by 3-2 and 4-1 moves, using jumps when stuck.
    Simplify {
        signature: String,
        #[arg(long, default_value_t = 4)]
        max_rounds: usize,
    },
    /// Excess-height search over one level of the 3-sphere graph.
    Height {
        #[arg(long)]
        level: usize,
        /// Stop after level n+1 and join level n+1 nodes by 2-3/3-2 pairs.
        #[arg(long)]
        two_phase: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_HEIGHT)]
        max_height: usize,
        /// Directory written by `spheres`.
        #[arg(long)]
        spheres: PathBuf,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Jump-based path-length search over one level of the 3-sphere graph.
    Length {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        /// Directory written by `spheres`.
        #[arg(long)]
        spheres: PathBuf,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Subcommand, Debug)]
enum IsosigAction {
    /// Read a gluing table (file or `-` for stdin) and print its signature.
    Encode {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print the gluing table of a signature.
    Decode { signature: String },
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
    Inconclusive,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn level_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("level-{n}.sig"))
}

fn with_pool<T: Send>(jobs: Jobs, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs.jobs {
        builder = builder.num_threads(j as usize);
    }
    builder.build().expect("thread pool").install(f)
}

struct Progress {
    verbose: bool,
    start: Instant,
}

impl Progress {
    fn note(&self, msg: &str) {
        if self.verbose {
            eprintln!("[{:>8.2}s] {msg}", self.start.elapsed().as_secs_f64());
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let progress = Progress {
        verbose: cli.verbose,
        start: Instant::now(),
    };
    match cli.command {
        Command::Census {
            size,
            one_vertex,
            ceiling,
            output,
            jobs,
        } => {
            let spec = CensusSpec::new(size)
                .one_vertex(one_vertex)
                .with_ceiling(ceiling);
            spec.validate()?;
            progress.note(&format!("enumerating size {size}"));
            let sigs = with_pool(jobs, || enumerate_closed(&spec))?;
            progress.note(&format!("found {}", sigs.len()));
            if let Some(path) = output {
                let header = vec![
                    format!(
                        "pachner {} signature-format {FORMAT_VERSION}",
                        env!("CARGO_PKG_VERSION")
                    ),
                    format!("census size={size} one_vertex={one_vertex}"),
                    format!("count={}", sigs.len()),
                ];
                write_signatures(&path, &header, &sigs)?;
            }
            println!("{}", sigs.len());
        }
        Command::Spheres {
            max_level,
            height,
            output,
            jobs,
        } => {
            if max_level == 0 {
                return Err(Error::Empty.into());
            }
            progress.note(&format!(
                "closure to level {max_level} with allowance {height}"
            ));
            let closure = with_pool(jobs, || sphere_closure(max_level, height));
            if let Some(dir) = &output {
                fs::create_dir_all(dir)?;
            }
            for n in 1..=max_level {
                let empty = Default::default();
                let level = closure.level(n).unwrap_or(&empty);
                if let Some(dir) = &output {
                    let header = vec![
                        format!(
                            "pachner {} signature-format {FORMAT_VERSION}",
                            env!("CARGO_PKG_VERSION")
                        ),
                        format!("spheres level={n} max_level={max_level} height={height}"),
                        format!("count={}", level.len()),
                    ];
                    write_signatures(&level_file(dir, n), &header, level)?;
                }
                println!("level={n} count={}", level.len());
            }
        }
        Command::Isosig { action } => match action {
            IsosigAction::Encode { input } => {
                let text = if input == "-" {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                } else {
                    fs::read_to_string(&input).map_err(|e| Failure::Io(format!("{input}: {e}")))?
                };
                let t = Triangulation::from_text(&text)?;
                println!("{}", t.isosig());
            }
            IsosigAction::Decode { signature } => {
                let t = pachner::isosig::decode(&signature)?;
                print!("{}", t.to_text());
            }
        },
        Command::Simplify {
            signature,
            max_rounds,
        } => {
            let t = pachner::isosig::decode(&signature)?;
            let s = greedy_simplify(&t, max_rounds);
            println!("{}", s.result.isosig());
            for step in &s.trace {
                println!("{}  -> size {}", step.site, step.size_after);
            }
        }
        Command::Height {
            level,
            two_phase,
            max_height,
            spheres,
            jobs,
        } => {
            let nodes = load_level(&spheres, level)?;
            progress.note(&format!("{} nodes at level {level}", nodes.len()));
            let report = with_pool(jobs, || {
                if two_phase {
                    height_bound_two_phase(level, &nodes, max_height)
                } else {
                    height_bound(level, &nodes, max_height)
                }
            })?;
            print_height(&report, two_phase);
            report.result().map_err(|_| Failure::Inconclusive)?;
        }
        Command::Length {
            level,
            max_rounds,
            spheres,
            jobs,
        } => {
            let nodes = load_level(&spheres, level)?;
            progress.note(&format!("{} nodes at level {level}", nodes.len()));
            let report = with_pool(jobs, || length_bound(level, &nodes, max_rounds))?;
            print_length(&report);
            report.result().map_err(|_| Failure::Inconclusive)?;
        }
    }
    Ok(())
}

fn load_level(dir: &Path, n: usize) -> Result<std::collections::BTreeSet<IsoSig>, Failure> {
    let path = level_file(dir, n);
    if !path.exists() {
        return Err(Failure::Io(format!(
            "{} not found; run `pachner spheres` first",
            path.display()
        )));
    }
    let sigs = read_signatures(&path)?;
    if let Some(bad) = sigs.iter().find(|s| s.size().ok() != Some(n)) {
        return Err(Failure::Io(format!(
            "{}: {bad} is not of size {n}",
            path.display()
        )));
    }
    Ok(sigs)
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn print_height(r: &HeightReport, two_phase: bool) {
    println!("{:>6}  {:>8}  {:>10}", "level", "nodes", "components");
    for (i, c) in r.trace.iter().enumerate() {
        let nodes = r
            .level_sizes
            .get(i)
            .map_or("-".to_string(), usize::to_string);
        println!("{:>6}  {:>8}  {:>10}", r.n + i, nodes, c);
    }
    match r.height {
        Some(h) => println!("H_{} = {h}", r.n),
        None => println!("H_{} inconclusive", r.n),
    }
    println!();
    println!("n={}", r.n);
    println!("method={}", if two_phase { "two-phase" } else { "full" });
    println!("trace={}", join(&r.trace));
    println!(
        "height={}",
        r.height
            .map_or("inconclusive".to_string(), |h| h.to_string())
    );
}

fn print_length(r: &LengthReport) {
    println!("|I| = {}", r.initial);
    println!("{:>6}  {:>9}", "jumps", "remaining");
    for (j, left) in r.remaining.iter().enumerate() {
        println!("{j:>6}  {left:>9}");
    }
    match r.bound() {
        Some(l) => println!("L_{} = {l}", r.n),
        None => println!("L_{} inconclusive", r.n),
    }
    println!();
    println!("n={}", r.n);
    println!("initial={}", r.initial);
    println!("remaining={}", join(&r.remaining));
    match (r.rounds, r.bound()) {
        (Some(j), Some(l)) => {
            println!("rounds={j}");
            println!("bound={l}");
            let ratio = log10_ratio(&mijatovic_bound(r.n), l as u64);
            println!("log10_mijatovic_ratio={ratio:.3}");
        }
        _ => {
            println!("rounds=inconclusive");
            println!("bound=inconclusive");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match f {
                Failure::Domain(e) => eprintln!("error: {e}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Inconclusive => eprintln!("error: {}", Error::Inconclusive),
            }
            ExitCode::from(1)
        }
    }
}
