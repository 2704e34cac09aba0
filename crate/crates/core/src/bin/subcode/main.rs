//! Command line front end for the `subcode` library.
//!
//! Exit status is 0 on success, 1 when a verification or feasibility check
//! fails and 2 on usage or input errors.

mod out;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use subcode::bounds::{
    double_count_bound, format_rational, johnson_bound, johnson_cascade_check, one_incidence_bound,
    pair_threshold, resolve_upper, BoundsDb,
};
use subcode::clique::{build_distance_graph, build_extension_graph, max_clique, ConflictGraph, SearchConfig, SearchStatus};
use subcode::codes::{emit_code, parse_code, parse_code_with_claim, verify, CodeClaim, SubspaceCode};
use subcode::constructions::{lifted_mrd, lifted_mrd_plus_one};
use subcode::ilp::{
    build_blowup_model, build_extension_model, build_full_model, check_solution, export_model, import_solution,
    parse_lp, relax_note, solve_packing, ExtensionOptions, IlpError, IlpModel, ModelOptions,
};
use subcode::{gaussian_binomial, Error, FieldSpec, Grassmannian, Subspace};

use out::{read_input, write_output};

#[derive(Parser, Debug)]
#[command(name = "subcode", version, about = "Constant-dimension subspace codes: verification, bounds, ILP models, clique search")]
struct Cli {
    /// Worker threads for model building and clique search
    #[arg(long, global = true, env = "SUBCODE_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,

    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (or list) the k-subspaces of GF(q)^v
    Enumerate {
        q: u32,
        v: usize,
        k: usize,
        /// Print every subspace with its index
        #[arg(long)]
        list: bool,
    },
    /// Check a code file against the claims in its header
    Verify {
        file: PathBuf,
        /// Claimed size, overriding the header
        #[arg(long = "size")]
        n: Option<usize>,
        /// Claimed minimum distance, overriding the header
        #[arg(long = "min-distance")]
        d: Option<usize>,
        /// Claimed dimension set, e.g. 3,4
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
    },
    /// Upper bounds on A_q(v,d;k) with their derivations
    Bound {
        q: u32,
        v: u32,
        d: u32,
        k: u32,
        /// Bounds table replacing the built-in one
        #[arg(long)]
        db: Option<PathBuf>,
    },
    /// Write a lifted MRD code
    Construct {
        kind: ConstructKind,
        q: u32,
        v: usize,
        k: usize,
        #[arg(long, default_value_t = 6)]
        min_distance: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shorten a code by a point and a hyperplane not containing it
    Shorten {
        file: PathBuf,
        /// Spanning rows of the point, e.g. 10000000
        #[arg(long)]
        point: String,
        /// Spanning rows of the hyperplane, comma separated
        #[arg(long)]
        hyperplane: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace every codeword by its orthogonal complement
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the incidence BLP for A_q(v,d;k)
    BuildIlp {
        q: u32,
        v: usize,
        d: usize,
        k: usize,
        /// Also emit the redundant middle-dimension families
        #[arg(long)]
        full_constraints: bool,
        /// Code file whose codewords are fixed to 1
        #[arg(long)]
        prescribe: Option<PathBuf>,
        #[arg(long)]
        db: Option<PathBuf>,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Write the hyperplane BLP for a set of solids of F_2^7
    BuildExt {
        file: PathBuf,
        /// Accept any set of solids, not only (7,*,6;4)_2 codes
        #[arg(long)]
        unchecked: bool,
        /// Also write the conflict graph in DIMACS format
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Solve the model exactly by set packing and by clique search
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Write the blow-up BLP for a plane code F3 and a solid code F4 of F_2^7
    BuildBlowup {
        f3: PathBuf,
        f4: PathBuf,
        #[arg(long)]
        db: Option<PathBuf>,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Recheck a solution file against an LP model exactly
    CheckSol {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Maximum clique search with anytime bounds
    Clique {
        #[command(subcommand)]
        source: GraphSource,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstructKind {
    LiftedMrd,
    LiftedMrdPlusOne,
}

#[derive(Args, Debug)]
struct EmitArgs {
    /// LP file to write (stdout when absent)
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the LP relaxation instead of the binary model
    #[arg(long)]
    relaxed: bool,
    /// External solver command with {model} and {solution} placeholders
    #[arg(long, requires = "output")]
    solver_cmd: Option<String>,
    /// Where the solver writes its solution (default: model path with .sol)
    #[arg(long, requires = "solver_cmd")]
    solution: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GraphSource {
    /// All k-subspaces of GF(q)^v, adjacent at distance >= d
    Distance { q: u32, v: usize, k: usize, d: usize },
    /// Solids compatible with a (7,17,6;3)_2 plane code
    Extension { file: PathBuf },
    /// A graph in DIMACS edge format
    Dimacs { file: PathBuf },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Stop at the first clique of this size
    #[arg(long, global = true)]
    target: Option<usize>,
    /// Wall clock budget
    #[arg(long, global = true, env = "SUBCODE_BUDGET_SECONDS")]
    budget_seconds: Option<u64>,
    /// Node budget
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Greedy restarts before the exact search
    #[arg(long, global = true, default_value_t = 20)]
    warm_start: usize,
    /// Write the clique (as a code file for subspace graphs)
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Write the graph in DIMACS format
    #[arg(long, global = true)]
    export_graph: Option<PathBuf>,
}

/// Outcome of a subcommand that ran to completion.
enum Verdict {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Verdict, Error> {
    let threads = cli.threads as usize;
    match &cli.command {
        Command::Enumerate { q, v, k, list } => enumerate(*q, *v, *k, *list),
        Command::Verify { file, n, d, dims } => verify_file(file, *n, *d, dims.as_deref()),
        Command::Bound { q, v, d, k, db } => bound(*q, *v, *d, *k, &load_db(db.as_deref())?),
        Command::Construct { kind, q, v, k, min_distance, output } => {
            if *q != 2 {
                return Err(usage(format!("construct supports q = 2 only, got {q}")));
            }
            let c = match kind {
                ConstructKind::LiftedMrd => lifted_mrd(*v, *k, *min_distance)?,
                ConstructKind::LiftedMrdPlusOne => lifted_mrd_plus_one(*v, *k, *min_distance)?,
            };
            let report = verify(&c, None)?;
            eprintln!("# constructed {} code", report.params());
            write_output(output.as_deref(), &emit_code(&c)?)?;
            Ok(Verdict::Ok)
        }
        Command::Shorten { file, point, hyperplane, output } => {
            let c = read_code(file)?;
            let p = parse_subspace(&c, point)?;
            let h = parse_subspace(&c, hyperplane)?;
            let s = c.shorten(&p, &h)?;
            eprintln!("# shortened code {}", verify(&s, None)?.params());
            write_output(output.as_deref(), &emit_code(&s)?)?;
            Ok(Verdict::Ok)
        }
        Command::Dualize { file, output } => {
            let c = read_code(file)?;
            write_output(output.as_deref(), &emit_code(&c.orthogonal())?)?;
            Ok(Verdict::Ok)
        }
        Command::BuildIlp { q, v, d, k, full_constraints, prescribe, db, emit } => {
            let db = load_db(db.as_deref())?;
            let opts = ModelOptions { full_constraints: *full_constraints, threads };
            let mut model = build_full_model(*q, *v, *d, *k, &db, &opts)?;
            if let Some(path) = prescribe {
                let c = read_code(path)?;
                model.prescribe(c.words())?;
            }
            emit_model(&model, emit)
        }
        Command::BuildExt { file, unchecked, graph, solve, emit } => {
            let f = read_code(file)?;
            let ext = build_extension_model(&f, &ExtensionOptions { checked: !unchecked })?;
            eprintln!("# candidate planes: {}, conflict graph edges: {}", ext.candidates.len(), ext.graph.edge_count());
            if let Some(path) = graph {
                write_output(Some(path), &ext.graph.to_dimacs())?;
            }
            if *solve {
                solve_both(&ext.model, &ext.graph, cli.seed, threads)?;
            }
            emit_model(&ext.model, emit)
        }
        Command::BuildBlowup { f3, f4, db, emit } => {
            let db = load_db(db.as_deref())?;
            let opts = ModelOptions { full_constraints: false, threads };
            let model = build_blowup_model(&read_code(f3)?, &read_code(f4)?, &db, &opts)?;
            emit_model(&model, emit)
        }
        Command::CheckSol { model, solution } => {
            let model = parse_lp(&read_input(model)?)?;
            check(&model, solution)
        }
        Command::Clique { source, search } => clique(source, search, cli.seed, threads),
    }
}

fn usage(msg: String) -> Error {
    Error::Io(std::io::Error::new(std::io::ErrorKind::InvalidInput, msg))
}

fn load_db(path: Option<&Path>) -> Result<BoundsDb, Error> {
    Ok(match path {
        Some(p) => BoundsDb::load(p)?,
        None => BoundsDb::seeded(),
    })
}

fn read_code(path: &Path) -> Result<SubspaceCode, Error> {
    Ok(parse_code(&read_input(path)?)?)
}

/// Parses comma separated rows in the ambient space of `c`.
fn parse_subspace(c: &SubspaceCode, rows: &str) -> Result<Subspace, Error> {
    let text = format!("q={} v={}\n{rows}\n", c.field().q(), c.ambient());
    let parsed = parse_code(&text)?;
    match parsed.words() {
        [u] => Ok(u.clone()),
        _ => Err(usage(format!("expected one subspace, got `{rows}`"))),
    }
}

fn enumerate(q: u32, v: usize, k: usize, list: bool) -> Result<Verdict, Error> {
    let count = gaussian_binomial(v as u32, k as u32, q)?;
    println!("[{v} choose {k}]_{q} = {count}");
    if list {
        let g = Grassmannian::new(FieldSpec::new(q)?, v, k)?;
        for (i, u) in g.iter().indexed() {
            println!("{i} {}", u.to_row_string());
        }
    }
    Ok(Verdict::Ok)
}

fn verify_file(path: &Path, n: Option<usize>, d: Option<usize>, dims: Option<&[usize]>) -> Result<Verdict, Error> {
    let (c, mut claim) = parse_code_with_claim(&read_input(path)?)?;
    claim.q = Some(c.field().q() as u32);
    claim.v = Some(c.ambient());
    claim.n = n.or(claim.n);
    claim.d = d.or(claim.d);
    if let Some(ks) = dims {
        claim.dims = Some(ks.iter().copied().collect());
    }
    let report = verify(&c, Some(&claim))?;
    println!("parameters: {}", report.params());
    println!("dimension distribution: {}", c.dimension_distribution());
    if let (Some(dist), Some((i, j))) = (report.min_distance, report.closest_pair) {
        println!("closest pair: codewords {} and {} at distance {dist}", i + 1, j + 1);
    }
    if report.confirmed() {
        println!("claims: confirmed");
        return Ok(Verdict::Ok);
    }
    for m in &report.mismatches {
        println!("mismatch {}: claimed {}, actual {}", m.field, m.claimed, m.actual);
    }
    if let Some((i, j)) = report.closest_pair {
        println!("  codeword {}: {}", i + 1, c.words()[i].to_row_string());
        println!("  codeword {}: {}", j + 1, c.words()[j].to_row_string());
    }
    Ok(Verdict::Failed)
}

fn bound(q: u32, v: u32, d: u32, k: u32, db: &BoundsDb) -> Result<Verdict, Error> {
    print!("best upper bound: {}", resolve_upper(q, v, d, k, db)?);
    print!("johnson: {}", johnson_bound(q, v, d, k, db)?);
    if v == 2 * k && d + 2 == 2 * k && k >= 2 {
        let c: u32 = 1;
        let per_point = BigUint::from(q).pow(k) + 1u32 - c;
        let per = u64::try_from(&per_point).map_err(|_| usage("incidence count too large".into()))?;
        let value = one_incidence_bound(q, k, c as u64)?;
        println!("one-incidence (c = {c}): {value} [one_incidence, conditional]");
        println!("  condition: every point (or every hyperplane) lies on at most q^k+1-c = {per_point} codewords");
        println!("  points: [{v},1]_{q} * {per} / [{k},1]_{q} = {}", double_count_bound(q, v, k, 1, per)?);
        println!(
            "  hyperplanes: [{v},{}]_{q} * {per} / [{},{}]_{q} = {}",
            v - 1,
            v - k,
            v - k - 1,
            double_count_bound(q, v, k, v - 1, per)?
        );
        let b = 2 * (per + c as u64) - 1;
        println!(
            "  above {} codewords some point P and hyperplane H with P not in H meet at least {b} codewords",
            format_rational(&pair_threshold(q, v, k, b)?)
        );
        if k >= 3 {
            print!("{}", johnson_cascade_check(q, k, &value)?);
            println!();
        }
    }
    Ok(Verdict::Ok)
}

fn emit_model(model: &IlpModel, emit: &EmitArgs) -> Result<Verdict, Error> {
    eprintln!("# {}: {}", model.name(), model.stats());
    let text = if emit.relaxed { relax_note(model) } else { export_model(model) };
    write_output(emit.output.as_deref(), &text)?;
    let Some(cmd) = &emit.solver_cmd else {
        return Ok(Verdict::Ok);
    };
    let model_path = emit.output.as_deref().expect("clap requires --output");
    let sol_path = emit.solution.clone().unwrap_or_else(|| model_path.with_extension("sol"));
    let line = cmd.replace("{model}", &model_path.display().to_string()).replace("{solution}", &sol_path.display().to_string());
    eprintln!("# running: {line}");
    let status = std::process::Command::new("sh").arg("-c").arg(&line).status()?;
    if !status.success() {
        return Err(usage(format!("solver command failed with {status}")));
    }
    check(model, &sol_path)
}

fn check(model: &IlpModel, solution: &Path) -> Result<Verdict, Error> {
    let a = import_solution(model, &read_input(solution)?)?;
    let report = check_solution(model, &a);
    print!("{report}");
    Ok(if report.feasible() { Verdict::Ok } else { Verdict::Failed })
}

/// Solves a packing model by branch and bound on its rows and by clique search
/// on its conflict graph; the two optima must agree.
fn solve_both(model: &IlpModel, graph: &ConflictGraph, seed: u64, threads: usize) -> Result<(), Error> {
    let t = Instant::now();
    let packing = solve_packing(model, None)?;
    eprintln!("# set packing: {} nodes in {:.3}s", packing.nodes, t.elapsed().as_secs_f64());
    let t = Instant::now();
    let clique = max_clique(graph, &SearchConfig { seed, threads, ..SearchConfig::default() })?;
    eprintln!("# clique search: {} nodes in {:.3}s", clique.nodes, t.elapsed().as_secs_f64());
    println!("z(F) by set packing: {}", packing.optimum);
    println!("z(F) by clique search: {}", clique.lower);
    if packing.optimum != clique.lower {
        return Err(IlpError::NotPacking(format!("routes disagree: {} vs {}", packing.optimum, clique.lower)).into());
    }
    Ok(())
}

fn clique(source: &GraphSource, s: &SearchArgs, seed: u64, threads: usize) -> Result<Verdict, Error> {
    let mut base: Option<SubspaceCode> = None;
    let (graph, vertices, d) = match source {
        GraphSource::Distance { q, v, k, d } => {
            let sg = build_distance_graph(*q, *v, *k, *d)?;
            (sg.graph, Some(sg.vertices), Some(*d))
        }
        GraphSource::Extension { file } => {
            let c = read_code(file)?;
            let sg = build_extension_graph(&c)?;
            base = Some(c);
            (sg.graph, Some(sg.vertices), None)
        }
        GraphSource::Dimacs { file } => (ConflictGraph::from_dimacs(&read_input(file)?)?, None, None),
    };
    eprintln!("# graph: {} vertices, {} edges", graph.n(), graph.edge_count());
    if let Some(path) = &s.export_graph {
        write_output(Some(path), &graph.to_dimacs())?;
    }
    let cfg = SearchConfig {
        time_limit: s.budget_seconds.map(Duration::from_secs),
        node_limit: s.budget_nodes,
        target: s.target,
        threads,
        seed,
        warm_start: s.warm_start,
        ..SearchConfig::default()
    };
    let r = max_clique(&graph, &cfg)?;
    eprintln!("# elapsed {:.3}s", r.elapsed.as_secs_f64());
    println!("status: {:?}", r.status);
    println!("lower: {}", r.lower);
    println!("upper: {}", r.upper);
    println!("optimal: {}", r.optimal);
    println!("nodes: {}", r.nodes);
    let text = match &vertices {
        Some(vs) => {
            let field = vs.first().map_or(FieldSpec::GF2, |u| u.field());
            let ambient = vs.first().map_or(0, |u| u.ambient());
            let chosen: Vec<Subspace> = r.clique.iter().map(|&i| vs[i].clone()).collect();
            let mut code = SubspaceCode::new(field, ambient, chosen)?;
            if let Some(c) = &base {
                code = c.union(&code)?;
            }
            let report = verify(&code, d.map(|d| CodeClaim { d: Some(d), ..CodeClaim::default() }).as_ref())?;
            println!("code: {} with distribution {}", report.params(), code.dimension_distribution());
            if let Some(dist) = report.min_distance.filter(|_| d.is_some()) {
                if dist < d.unwrap() {
                    return Err(usage(format!("clique yields distance {dist}")));
                }
            }
            emit_code(&code)?
        }
        None => r.clique.iter().map(|v| format!("{}\n", v + 1)).collect(),
    };
    if s.output.is_some() {
        write_output(s.output.as_deref(), &text)?;
    }
    let missed = matches!((s.target, r.status), (Some(t), SearchStatus::Complete) if r.lower < t);
    Ok(if missed { Verdict::Failed } else { Verdict::Ok })
}
