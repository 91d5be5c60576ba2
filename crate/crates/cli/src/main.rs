mod formats;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use pathfree::{
    acyclic_coloring, check_pk_witness, dichromatic_exact, find_pk_exhaustive, find_trans,
    homogeneous_sets, max_transitive_exact, path_tournament, random_tournament, schedule_for,
    search_base, substitution_product, verify_coloring, verify_trans_result, AlphaSequence,
    BaseSearch, ColorOutcome, ConstantSchedule, Error, FamilySpec, FindOutcome, ModeSpec,
    OracleBudget, Tournament, VertexSet,
};

use formats::{parse_rational, parse_sets, parse_tournament, serialize_tournament};
use report::RunReport;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_WITNESS: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_DEGENERATE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "pathfree",
    about = "Transitive subsets, acyclic colorings and exact oracles on dense tournaments",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate tournaments on stdout.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Extract a verified transitive subset.
    FindTrans {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Partition into verified transitive classes.
    Color {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify a claim about a tournament; exit 0 iff it holds.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Exact brute-force answers on small inputs.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Timing and output-size CSV over random instances.
    Bench {
        #[arg(long)]
        k: usize,
        /// Comma-separated vertex counts.
        #[arg(long)]
        sizes: String,
        /// Number of seeds per size (seeds 0..N).
        #[arg(long)]
        seeds: u64,
        #[arg(long, default_value = "relaxed")]
        mode: String,
        /// Rational like 1/4; required with --mode relaxed.
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "strict")]
    mode: String,
    /// Rational like 1/4; required with --mode relaxed.
    #[arg(long)]
    lambda: Option<String>,
    /// Emit the run report as one JSON object.
    #[arg(long)]
    json: bool,
    /// Tournament file; stdin when omitted or "-".
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// The directed path tournament on k vertices.
    Path {
        #[arg(long)]
        k: usize,
    },
    /// Seeded uniform random tournament.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Substitution product: blocks follow BASE, blocks are copies of INNER.
    Product {
        #[arg(long)]
        base: PathBuf,
        /// Inner tournament file; stdin when omitted.
        inner: Option<PathBuf>,
    },
    /// Iterated product family over a base tournament.
    Family {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Search seeds for a verified small-transitive pattern-free base.
    BaseSearch {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tr_max: usize,
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Is the given vertex set transitive?
    Transitive {
        /// Comma-separated vertex indices.
        #[arg(long)]
        set: String,
        file: Option<PathBuf>,
    },
    /// Is the tournament free of the k-vertex path? (exhaustive)
    PkFree {
        #[arg(long)]
        k: usize,
        file: Option<PathBuf>,
    },
    /// Do the sets form a (c, lambda) alpha-sequence?
    Alpha {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        sets: PathBuf,
        file: Option<PathBuf>,
    },
    /// Do the sets form a smooth sequence for lambda?
    Smooth {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        sets: PathBuf,
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Maximum transitive subset (exact).
    MaxTrans { file: Option<PathBuf> },
    /// Dichromatic number and an optimal partition (exact).
    Dichromatic { file: Option<PathBuf> },
    /// Exhaustive path-pattern search.
    FindPk {
        #[arg(long)]
        k: usize,
        file: Option<PathBuf>,
    },
    /// All nontrivial homogeneous sets.
    Homog { file: Option<PathBuf> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Malformed(_) | Error::Precondition(_) | Error::UnsupportedSize { .. } => {
            EXIT_MALFORMED
        }
        Error::SizeCapExceeded { .. } => EXIT_MALFORMED,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::DegenerateSize { .. } | Error::DegenerateSequence => EXIT_DEGENERATE,
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<(String, String), Error> {
    let text = match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Malformed(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let digest = report::digest(&text);
    Ok((text, digest))
}

fn load_tournament(file: &Option<PathBuf>) -> Result<(Tournament, String), Error> {
    let (text, digest) = read_input(file)?;
    let t = parse_tournament(&text)?;
    Ok((t, digest))
}

fn build_schedule(k: usize, mode: &str, lambda: &Option<String>) -> Result<ConstantSchedule, Error> {
    let spec = match mode {
        "strict" => {
            if lambda.is_some() {
                return Err(Error::Precondition(
                    "--lambda only applies to relaxed mode".into(),
                ));
            }
            ModeSpec::Strict
        }
        "relaxed" => {
            let raw = lambda.as_ref().ok_or_else(|| {
                Error::Precondition("relaxed mode needs --lambda p/q".into())
            })?;
            ModeSpec::Relaxed {
                lambda: parse_rational(raw)?,
            }
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown mode {other:?}; use strict or relaxed"
            )))
        }
    };
    schedule_for(k, spec)
}

fn mode_label(mode: &str, lambda: &Option<String>) -> String {
    match lambda {
        Some(l) => format!("{mode}:{l}"),
        None => mode.to_string(),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Gen { what } => run_gen(what),
        Cmd::FindTrans { run } => run_find_trans(run),
        Cmd::Color { run } => run_color(run),
        Cmd::Check { what } => run_check(what),
        Cmd::Oracle { what } => run_oracle(what),
        Cmd::Bench {
            k,
            sizes,
            seeds,
            mode,
            lambda,
        } => run_bench(k, &sizes, seeds, &mode, &lambda),
    }
}

fn run_gen(what: GenCmd) -> Result<u8, Error> {
    let t = match what {
        GenCmd::Path { k } => path_tournament(k)?,
        GenCmd::Random { n, seed } => random_tournament(n, seed)?,
        GenCmd::Product { base, inner } => {
            let (outer, _) = load_tournament(&Some(base))?;
            let (inner, _) = load_tournament(&inner)?;
            substitution_product(&outer, &inner)?
        }
        GenCmd::Family { base, depth } => {
            let (b, _) = load_tournament(&Some(base))?;
            pathfree::family(&FamilySpec::new(b, depth))?
        }
        GenCmd::BaseSearch {
            k,
            n,
            tr_max,
            budget,
        } => {
            let oracle_budget = OracleBudget::default();
            match search_base(k, n, tr_max, budget, &oracle_budget)? {
                BaseSearch::Found {
                    tournament,
                    seed,
                    attempts,
                    max_transitive,
                } => {
                    eprintln!(
                        "found: seed={seed} attempts={attempts} max_transitive={max_transitive}"
                    );
                    tournament
                }
                BaseSearch::NotFound { attempts } => {
                    return Err(Error::BudgetExceeded(format!(
                        "no base found after {attempts} seeds"
                    )));
                }
            }
        }
    };
    print!("{}", serialize_tournament(&t));
    Ok(EXIT_OK)
}

fn run_find_trans(args: RunArgs) -> Result<u8, Error> {
    let schedule = build_schedule(args.k, &args.mode, &args.lambda)?;
    let (t, digest) = load_tournament(&args.file)?;
    let start = Instant::now();
    let outcome = find_trans(&t, &schedule)?;
    let elapsed = start.elapsed();

    let mut rep = RunReport::new("find-trans", &digest, t.n(), &schedule);
    rep.mode_label = mode_label(&args.mode, &args.lambda);
    rep.time_ms = elapsed.as_secs_f64() * 1e3;
    match outcome {
        FindOutcome::Transitive(res) => {
            let verified = verify_trans_result(&t, &res);
            rep.set_transitive(&res, verified);
            rep.emit(args.json);
            Ok(if verified { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        FindOutcome::Witness(w) => {
            let verified = check_pk_witness(&t, &w.vertices)?;
            rep.set_witness(&w.vertices, verified);
            rep.emit(args.json);
            Ok(if verified {
                EXIT_WITNESS
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn run_color(args: RunArgs) -> Result<u8, Error> {
    let schedule = build_schedule(args.k, &args.mode, &args.lambda)?;
    let (t, digest) = load_tournament(&args.file)?;
    let start = Instant::now();
    let outcome = acyclic_coloring(&t, &schedule)?;
    let elapsed = start.elapsed();

    let mut rep = RunReport::new("color", &digest, t.n(), &schedule);
    rep.mode_label = mode_label(&args.mode, &args.lambda);
    rep.time_ms = elapsed.as_secs_f64() * 1e3;
    match outcome {
        ColorOutcome::Colored(c, trace) => {
            let verified = verify_coloring(&t, &c);
            rep.set_coloring(&c, &trace, verified);
            rep.emit(args.json);
            Ok(if verified { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        ColorOutcome::Witness(w) => {
            let verified = check_pk_witness(&t, &w.vertices)?;
            rep.set_witness(&w.vertices, verified);
            rep.emit(args.json);
            Ok(if verified {
                EXIT_WITNESS
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn parse_vertex_list(raw: &str, n: usize) -> Result<VertexSet, Error> {
    let mut vs = Vec::new();
    for part in raw.split(',').filter(|p| !p.trim().is_empty()) {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad vertex index {part:?}")))?;
        vs.push(v);
    }
    VertexSet::from_indices(n, vs)
}

fn run_check(what: CheckCmd) -> Result<u8, Error> {
    match what {
        CheckCmd::Transitive { set, file } => {
            let (t, _) = load_tournament(&file)?;
            let vs = parse_vertex_list(&set, t.n())?;
            match t.is_transitive(&vs) {
                pathfree::Transitivity::Transitive => {
                    println!("transitive: true");
                    Ok(EXIT_OK)
                }
                pathfree::Transitivity::Cycle(a, b, c) => {
                    println!("transitive: false");
                    println!("cycle: {a} {b} {c}");
                    Ok(EXIT_CHECK_FAILED)
                }
            }
        }
        CheckCmd::PkFree { k, file } => {
            let (t, _) = load_tournament(&file)?;
            match find_pk_exhaustive(&t, k, &OracleBudget::default())? {
                None => {
                    println!("pk-free: true (k={k})");
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    println!("pk-free: false (k={k})");
                    println!(
                        "witness: {}",
                        w.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    Ok(EXIT_CHECK_FAILED)
                }
            }
        }
        CheckCmd::Alpha {
            lambda,
            c,
            sets,
            file,
        } => {
            let (t, _) = load_tournament(&file)?;
            let lambda = parse_rational(&lambda)?;
            let c = parse_rational(&c)?;
            let seq = load_sequence(&t, &sets)?;
            let report = seq.check_alpha(&t);
            let pass = report.alpha_ok(&c, &lambda);
            print_alpha_report(&report, pass);
            Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        CheckCmd::Smooth { lambda, sets, file } => {
            let (t, _) = load_tournament(&file)?;
            let lambda = parse_rational(&lambda)?;
            let seq = load_sequence(&t, &sets)?;
            let report = seq.check_smooth(&t);
            let pass = report.smooth_ok(&lambda);
            print_alpha_report(&report, pass);
            Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn load_sequence(t: &Tournament, path: &PathBuf) -> Result<AlphaSequence, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let raw = parse_sets(&text)?;
    let elements = raw
        .into_iter()
        .map(|vs| VertexSet::from_indices(t.n(), vs))
        .collect::<Result<Vec<_>, _>>()?;
    AlphaSequence::new(t, elements)
}

fn print_alpha_report(report: &pathfree::AlphaReport, pass: bool) {
    println!("pass: {pass}");
    println!("min_relative_size: {}", report.min_relative_size);
    match &report.min_pair_density {
        Some(d) => println!("min_pair_density: {d}"),
        None => println!("min_pair_density: n/a (single element)"),
    }
    if let Some(d) = &report.worst_vertex_density {
        println!("worst_vertex_density: {d}");
    }
}

fn run_oracle(what: OracleCmd) -> Result<u8, Error> {
    let budget = OracleBudget::default();
    match what {
        OracleCmd::MaxTrans { file } => {
            let (t, _) = load_tournament(&file)?;
            let best = max_transitive_exact(&t, &budget)?;
            println!("{}", best.len());
            println!(
                "set: {}",
                best.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Ok(EXIT_OK)
        }
        OracleCmd::Dichromatic { file } => {
            let (t, _) = load_tournament(&file)?;
            let (count, coloring) = dichromatic_exact(&t, &budget)?;
            println!("{count}");
            for (i, class) in coloring.classes().iter().enumerate() {
                println!(
                    "class {i}: {}",
                    class
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
            Ok(EXIT_OK)
        }
        OracleCmd::FindPk { k, file } => {
            let (t, _) = load_tournament(&file)?;
            match find_pk_exhaustive(&t, k, &budget)? {
                Some(w) => {
                    println!(
                        "witness: {}",
                        w.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
                None => println!("none"),
            }
            Ok(EXIT_OK)
        }
        OracleCmd::Homog { file } => {
            let (t, _) = load_tournament(&file)?;
            let sets = homogeneous_sets(&t)?;
            println!("{}", sets.len());
            for s in sets {
                println!(
                    "{}",
                    s.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
            Ok(EXIT_OK)
        }
    }
}

fn run_bench(
    k: usize,
    sizes: &str,
    seeds: u64,
    mode: &str,
    lambda: &Option<String>,
) -> Result<u8, Error> {
    let schedule = build_schedule(k, mode, lambda)?;
    let label = mode_label(mode, lambda);
    let mut ns = Vec::new();
    for part in sizes.split(',').filter(|p| !p.trim().is_empty()) {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad size {part:?}")))?;
        ns.push(n);
    }
    ns.sort_unstable();

    println!("n,seed,mode,time_ms,out_size,classes,exit");
    for &n in &ns {
        for seed in 0..seeds {
            let t = random_tournament(n, seed)?;
            let start = Instant::now();
            let outcome = find_trans(&t, &schedule)?;
            let time_ms = start.elapsed().as_secs_f64() * 1e3;
            let (out_size, exit) = match &outcome {
                FindOutcome::Transitive(res) => {
                    assert!(verify_trans_result(&t, res));
                    (res.vertices.len(), EXIT_OK)
                }
                FindOutcome::Witness(w) => {
                    assert!(check_pk_witness(&t, &w.vertices)?);
                    (0, EXIT_WITNESS)
                }
            };
            let classes = match acyclic_coloring(&t, &schedule)? {
                ColorOutcome::Colored(c, _) => {
                    assert!(verify_coloring(&t, &c));
                    c.len()
                }
                ColorOutcome::Witness(_) => 0,
            };
            println!("{n},{seed},{label},{time_ms:.3},{out_size},{classes},{exit}");
        }
    }
    Ok(EXIT_OK)
}
