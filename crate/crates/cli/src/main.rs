mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::GraphArgs;

/// Sum graphs over magmas: verify labellings, run the classical constructions,
/// search for labellings within bounds, and re-check the claims.
#[derive(Parser, Debug)]
#[command(name = "sumgraph", version, propagate_version = true)]
struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel work (defaults to one per core)
    #[arg(long, global = true, env = "SUMGRAPH_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a labelling induces exactly a target graph
    Verify(VerifyArgs),
    /// Print a named graph
    Build(BuildArgs),
    /// Run one of the closed-form labelling constructions
    #[command(subcommand)]
    Construct(Construct),
    /// Search for a labelling within a bounded domain
    Search(SearchArgs),
    /// Least radius of an integral labelling, up to a cap
    Radius(RadiusArgs),
    /// Least number of isolated vertices giving a sum graph over the naturals
    SumNumber(SumNumberArgs),
    /// Smallest modulus m admitting a Z_m labelling, up to a cap
    ModSweep(ModSweepArgs),
    /// Count graphs in a graph6 file admitting (relaxed) integral labellings
    Count(CountArgs),
    /// The Fibonacci parameters d, z, delta (and the rest) for C_n
    FibParams(FibParamsArgs),
    /// Successive delta ratios along the five residue progressions
    DeltaReport(DeltaReportArgs),
    /// Kernel of the edge-equation system of an integral labelling
    Kernel(KernelArgs),
    /// Primitive integral labellings inside a kernel
    Primitives(PrimitivesArgs),
    /// Randomised prime-field search for cycle labellings
    RandomCycle(RandomCycleArgs),
    /// Strong labelling of a direct product from strong labellings of factors
    Product(ProductArgs),
    /// Run or list the registered claim checks
    #[command(subcommand)]
    Claims(ClaimsCommand),
    /// Convert between graph6, JSON and DOT
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    target: GraphArgs,
    /// Magma of the labels: z, n, absdiff, z5, z*11, z4xz4, set:4:union, ...
    #[arg(long, default_value = "z")]
    magma: String,
    /// Comma-separated labels in vertex order, e.g. 1,3,9 or (0,1),(1,3) or {1},{1,2}
    #[arg(long, allow_hyphen_values = true)]
    labels: Option<String>,
    /// Allow repeated labels
    #[arg(long)]
    relaxed: bool,
    /// A built-in labelling, by id (see --list-fixtures)
    #[arg(long, conflicts_with_all = ["labels", "file", "graph", "g6"])]
    fixture: Option<String>,
    /// A JSON labelling file (as printed by --json), optionally with its graph
    #[arg(long, conflicts_with = "labels")]
    file: Option<PathBuf>,
    /// List the built-in fixtures and exit
    #[arg(long)]
    list_fixtures: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    G6,
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Named family: C5, P6, K4, K3,3, E3, M4, Q4, Petersen, Prism, C4+E3
    family: String,
    #[arg(long, value_enum, default_value = "g6")]
    format: GraphFormat,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Harary's labelling of the path P_n
    HararyPath { n: usize },
    /// The radius-(3m-4) matching labelling of mP_2
    MatchingHarary { m: usize },
    /// Li's matching labelling of mP_2 with range 4m-3
    MatchingLi { m: usize },
    /// The edgeless graph on n vertices with radius n-1
    Kbar { n: usize },
    /// The alternative edgeless labelling for even n
    KbarAlt { n: usize },
    /// C_4 over an abelian group from an element a of order 5: a, 3a, 4a, 2a
    C4Abelian {
        magma: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Fibonacci cycle a_0, a_1, a_0+a_1, ... of length n
    Fibonacci {
        magma: String,
        #[arg(allow_hyphen_values = true)]
        a0: String,
        #[arg(allow_hyphen_values = true)]
        a1: String,
        n: usize,
    },
    /// The C_{4l} candidate over Z_f x Z_f with f = f_{2l}
    C4l { l: usize },
    /// C_{2k} over subsets under union
    UnionCycle { k: usize },
    /// K_n over subsets of {1..universe} under union
    UnionClique { n: usize, universe: u32 },
    /// K_m over subsets under symmetric difference (m = 2^k or 2^k - 1)
    BooleanClique { m: u64 },
    /// K_n as a relaxed labelling with every label 0
    RelaxedClique { n: usize },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// int:R (labels in [-R,R]), nat:B (labels in [1,B]), mod:M, or magma:SPEC
    #[arg(long)]
    domain: String,
    #[arg(long)]
    relaxed: bool,
    /// Require that no label doubled is a label
    #[arg(long)]
    strong: bool,
    /// Exclude the zero label
    #[arg(long)]
    nonzero: bool,
    /// Give up after this many search nodes
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct RadiusArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 20)]
    cap: u64,
    #[arg(long)]
    relaxed: bool,
}

#[derive(Args, Debug)]
struct SumNumberArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 4)]
    max_isolated: usize,
    /// Largest label allowed
    #[arg(long, visible_alias = "max-label", default_value_t = 30)]
    bound: u64,
}

#[derive(Args, Debug)]
struct ModSweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, visible_alias = "mod-cap", default_value_t = 30)]
    cap: u64,
    #[arg(long)]
    relaxed: bool,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// graph6 file, one graph per line, all of the same order
    #[arg(long)]
    file: PathBuf,
    #[arg(long, visible_alias = "radius", default_value_t = 12)]
    radius_cap: u64,
    /// Allow the label 0
    #[arg(long)]
    allow_zero: bool,
    /// Skip the relaxed count
    #[arg(long)]
    no_relaxed: bool,
}

#[derive(Args, Debug)]
struct FibParamsArgs {
    n: i64,
}

#[derive(Args, Debug)]
struct DeltaReportArgs {
    #[arg(long, default_value_t = 20)]
    max_k: i64,
}

#[derive(Args, Debug)]
struct LabelledGraphArgs {
    /// A built-in integral labelling
    #[arg(long, conflicts_with_all = ["labels", "graph", "g6"])]
    fixture: Option<String>,
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, allow_hyphen_values = true)]
    labels: Option<String>,
}

#[derive(Args, Debug)]
struct KernelArgs {
    #[command(flatten)]
    input: LabelledGraphArgs,
    /// Also give coordinates in the printed Q4 basis u1, u2, u3
    #[arg(long)]
    u_basis: bool,
}

#[derive(Args, Debug)]
struct PrimitivesArgs {
    #[command(flatten)]
    input: LabelledGraphArgs,
    /// Combine the printed Q4 basis u1, u2, u3 instead of the computed kernel basis
    #[arg(long)]
    u_basis: bool,
    /// Coefficient bound: every coefficient lies in [-box, box]
    #[arg(long = "box", default_value_t = 10)]
    bound: i64,
    /// How many labellings to print
    #[arg(long, default_value_t = 10)]
    limit: usize,
}

#[derive(Args, Debug)]
struct RandomCycleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    prime_bound: u64,
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
}

#[derive(Args, Debug)]
struct ProductArgs {
    /// A factor graph; repeat once per factor, paired with --labels
    #[arg(long = "graph", required = true)]
    graphs: Vec<String>,
    /// Integer labels of the matching factor
    #[arg(long = "labels", required = true, allow_hyphen_values = true)]
    labels: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum ClaimsCommand {
    /// Run the claims matching a pattern (an id, an id prefix, or a glob)
    Run {
        pattern: Option<String>,
        /// Include the long-running claims
        #[arg(long)]
        extended: bool,
    },
    /// List the registered claims
    List,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// graph6 lines, or a JSON labelling file; - reads standard input
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    to: GraphFormat,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match commands::run(cli.command, cli.json) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
