use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use colred::collection::{is_colourful, verify_sampled, DEFAULT_MATERIALIZE_BOUND};
use colred::compiler::{check_properness, check_symmetry};
use colred::format::{
    collection_from_json, collection_to_json, graph_from_json, graph_to_json, search_to_json,
    table_from_json, table_to_json, trace_to_json,
};
use colred::search::{max_colourful, DEFAULT_BUDGET};
use colred::simulator::{
    default_chain, format_palette, random_distinct, random_proper, run_chain, step,
};
use colred::{
    base_collection_c3, construct, example_4to3, extract, tabulate, AlgorithmTable,
    ColouredGraph, ImplicitAlgorithm, OneRound, Topology,
};

#[derive(Parser)]
#[command(name = "colred", version, about = "One-round colour reduction on paths and cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the colourful collection `2^(s/2) + c ▷ c` for an even c >= 4.
    Construct {
        #[arg(short)]
        c: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check (P1)/(P2) for a collection file.
    Verify {
        file: PathBuf,
        /// Check this many random families and pairs instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate the algorithm of a collection on the input palette [k].
    Compile {
        file: PathBuf,
        #[arg(short)]
        k: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recover a colourful collection from an algorithm table.
    Extract {
        table: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check an algorithm table for symmetry and properness.
    Check { table: PathBuf },
    /// Run a chain of one-round algorithms on a random (or given) colouring.
    Simulate {
        #[arg(long, value_parser = parse_topology, default_value = "path")]
        topology: Topology,
        #[arg(short, default_value_t = 1000)]
        n: usize,
        /// Input palette: decimal, `a^b` or `a^b+r`.
        #[arg(short, value_parser = parse_palette, default_value = "10^100")]
        k: BigUint,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `default`, or a comma-separated list of collection/table files and
        /// the names `construct:C`, `base`, `example`.
        #[arg(long, default_value = "default")]
        chain: String,
        /// Draw pairwise distinct colours.
        #[arg(long)]
        distinct: bool,
        /// Read the input colouring from a graph file instead.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the final colouring.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Include full colourings in the JSON trace.
        #[arg(long)]
        snapshots: bool,
    },
    /// Search for the largest colourful collection over [c].
    Search {
        #[arg(short)]
        c: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Walk through the 4 ▷ 3 example end to end.
    Demo,
}

enum Failure {
    /// Bad input, unreadable file, mismatched palettes: exit 2.
    Usage(String),
    /// A check or validation failed: exit 1.
    Check(String),
}

impl From<colred::Error> for Failure {
    fn from(e: colred::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_topology(s: &str) -> Result<Topology, String> {
    s.parse().map_err(|e: colred::Error| e.to_string())
}

fn parse_palette(s: &str) -> Result<BigUint, String> {
    let number = |t: &str| {
        BigUint::parse_bytes(t.trim().as_bytes(), 10).ok_or_else(|| format!("bad number {t:?}"))
    };
    let (power, rest) = match s.split_once('+') {
        Some((p, r)) => (p, Some(r)),
        None => (s, None),
    };
    let mut value = match power.split_once('^') {
        Some((base, exp)) => {
            let exp: u32 = exp.trim().parse().map_err(|_| format!("bad exponent {exp:?}"))?;
            number(base)?.pow(exp)
        }
        None => number(power)?,
    };
    if let Some(r) = rest {
        value += number(r)?;
    }
    Ok(value)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn with_file<T>(path: &Path, parse: impl FnOnce(&str) -> colred::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_construct(c: u32, output: Option<PathBuf>) -> Outcome {
    let a = construct(c)?;
    let pairs = colred::pair_split(c)?.len();
    println!("c = {c}, s = {}, |A| = {}", 2 * pairs, format_palette(&a.size()));
    if !a.is_lazy() {
        println!("{}", a.display_compact()?);
    }
    if let Some(path) = output {
        write(&path, &collection_to_json(&a)?)?;
    }
    Ok(())
}

fn cmd_verify(file: &Path, samples: Option<usize>, seed: u64) -> Outcome {
    let a = with_file(file, collection_from_json)?;
    let size = a.size();
    let (verdict, mode) = match samples {
        Some(n) => (verify_sampled(&a, n, seed)?, format!("sampled, {n} samples")),
        None if size > BigUint::from(DEFAULT_MATERIALIZE_BOUND) => (
            verify_sampled(&a, 1000, seed)?,
            "sampled, 1000 samples".to_string(),
        ),
        None => (is_colourful(&a)?, "exhaustive".to_string()),
    };
    println!("k = {}, c = {} ({mode})", format_palette(&size), a.c());
    if verdict.is_colourful() {
        println!("colourful");
        Ok(())
    } else {
        Err(Failure::Check(verdict.to_string()))
    }
}

fn cmd_compile(file: &Path, k: u32, output: &Path) -> Outcome {
    let a = with_file(file, collection_from_json)?;
    let alg = ImplicitAlgorithm::new(a)?;
    let table = tabulate(&alg, k)?;
    check_symmetry(&table).map_err(|c| Failure::Check(c.to_string()))?;
    check_properness(&table).map_err(|c| Failure::Check(c.to_string()))?;
    write(output, &table_to_json(&table)?)?;
    println!("compiled {k} ▷ {} ({} entries)", table.c(), table.len());
    Ok(())
}

fn cmd_extract(table: &Path, output: &Path) -> Outcome {
    let t = with_file(table, table_from_json)?;
    let a = extract(&t).map_err(|e| match e {
        colred::Error::TableCheck(why) => Failure::Check(why),
        other => other.into(),
    })?;
    let verdict = is_colourful(&a)?;
    if !verdict.is_colourful() {
        return Err(Failure::Check(verdict.to_string()));
    }
    write(output, &collection_to_json(&a)?)?;
    println!("extracted a colourful collection of size {} over [{}]", a.size(), a.c());
    println!("{}", a.display_compact()?);
    Ok(())
}

fn cmd_check(table: &Path) -> Outcome {
    let t = with_file(table, table_from_json)?;
    println!("table {} ▷ {} ({} entries)", t.k(), t.c(), t.len());
    check_symmetry(&t).map_err(|c| Failure::Check(c.to_string()))?;
    println!("symmetric: yes");
    check_properness(&t).map_err(|c| Failure::Check(c.to_string()))?;
    println!("proper: yes");
    Ok(())
}

fn load_stage(spec: &str) -> Result<Box<dyn OneRound>, Failure> {
    if let Some(c) = spec.strip_prefix("construct:") {
        let c: u32 = c
            .parse()
            .map_err(|_| Failure::Usage(format!("bad palette in {spec:?}")))?;
        return Ok(Box::new(ImplicitAlgorithm::new(construct(c)?)?));
    }
    match spec {
        "base" => return Ok(Box::new(ImplicitAlgorithm::new(base_collection_c3())?)),
        "example" => return Ok(Box::new(example_4to3())),
        _ => {}
    }
    let path = Path::new(spec);
    let text = read(path)?;
    if text.contains("\"entries\"") {
        let t: AlgorithmTable = with_file(path, table_from_json)?;
        Ok(Box::new(t))
    } else {
        let a = with_file(path, collection_from_json)?;
        Ok(Box::new(ImplicitAlgorithm::new(a)?))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    topology: Topology,
    n: usize,
    k: BigUint,
    seed: u64,
    chain: &str,
    distinct: bool,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    trace_path: Option<PathBuf>,
    snapshots: bool,
) -> Outcome {
    let g: ColouredGraph = match input {
        Some(path) => with_file(&path, graph_from_json)?,
        None if distinct => random_distinct(topology, n, &k, seed)?,
        None => random_proper(topology, n, &k, seed)?,
    };
    let stages: Vec<Box<dyn OneRound>> = if chain == "default" {
        default_chain()
            .into_iter()
            .map(|a| Box::new(a) as Box<dyn OneRound>)
            .collect()
    } else {
        chain
            .split(',')
            .filter(|s| !s.is_empty())
            .map(load_stage)
            .collect::<Result<_, _>>()?
    };
    let refs: Vec<&dyn OneRound> = stages.iter().map(|s| s.as_ref()).collect();
    println!(
        "input: {} n={} palette {} digest {}",
        g.topology,
        g.len(),
        format_palette(&g.k),
        &g.digest()[..16]
    );
    let (out, trace) = run_chain(&g, &refs, snapshots).map_err(|e| match e {
        colred::Error::RoundFailed(why) => Failure::Check(why),
        other => other.into(),
    })?;
    for (i, r) in trace.rounds.iter().enumerate() {
        println!(
            "round {}: {} {} ▷ {} digest {}",
            i + 1,
            r.stage,
            format_palette(&r.k_in),
            format_palette(&r.k_out),
            &r.digest[..16]
        );
    }
    println!("chain: {}", trace.chain_notation());
    let violations = out.validate();
    if let Some(v) = violations.first() {
        return Err(Failure::Check(format!("final colouring invalid: {v}")));
    }
    println!(
        "final: proper {}-colouring in {} rounds",
        format_palette(&out.k),
        trace.rounds.len()
    );
    if let Some(path) = trace_path {
        write(&path, &trace_to_json(&trace)?)?;
    }
    if let Some(path) = output {
        write(&path, &graph_to_json(&out)?)?;
    }
    Ok(())
}

fn cmd_search(c: u32, budget: u64, output: Option<PathBuf>) -> Outcome {
    let r = max_colourful(c, budget)?;
    if r.exhaustive {
        println!("max={} (exhaustive, {} nodes)", r.best_size, r.nodes);
    } else {
        println!("max>={} (budget-limited, {} nodes)", r.best_size, r.nodes);
    }
    if let Some(w) = &r.witness {
        println!("{}", w.display_compact()?);
    }
    if let Some(path) = output {
        write(&path, &search_to_json(&r)?)?;
    }
    Ok(())
}

fn cmd_demo() -> Outcome {
    let g = ColouredGraph::path(&[1, 2, 1, 4, 3, 4, 3], 4)?;
    let show = |g: &ColouredGraph| {
        let parts: Vec<String> = g.colours.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    };
    println!("4 ▷ 3: A(x,y,z) = y for y <= 3, A(x,4,z) = min({{1,2,3}} \\ {{x,z}})");
    println!("input:  {}", show(&g));
    let out = step(&g, &example_4to3())?;
    println!("output: {}", show(&out));
    let base = base_collection_c3();
    println!("colourful collection over [3]:");
    println!("{}", base.display_compact()?);
    let compiled = step(&g, &ImplicitAlgorithm::new(base)?)?;
    println!("compiled collection gives: {}", show(&compiled));
    if compiled != out || !out.is_proper() {
        return Err(Failure::Check("compiled algorithm disagrees with the table".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { c, output } => cmd_construct(c, output),
        Command::Verify { file, samples, seed } => cmd_verify(&file, samples, seed),
        Command::Compile { file, k, output } => cmd_compile(&file, k, &output),
        Command::Extract { table, output } => cmd_extract(&table, &output),
        Command::Check { table } => cmd_check(&table),
        Command::Simulate {
            topology,
            n,
            k,
            seed,
            chain,
            distinct,
            input,
            output,
            trace,
            snapshots,
        } => cmd_simulate(
            topology, n, k, seed, &chain, distinct, input, output, trace, snapshots,
        ),
        Command::Search { c, budget, output } => cmd_search(c, budget, output),
        Command::Demo => cmd_demo(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(why)) => {
            eprintln!("check failed: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(2)
        }
    }
}
