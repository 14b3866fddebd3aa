//! Batch CLI: generate families, analyze them, run piercing algorithms
//! and bound calculators, and execute the acceptance suite.
//!
//! One structured report per invocation goes to standard output; logs and
//! progress go to standard error. Exit codes: 0 success, 1 property
//! violation, 2 usage/parse/budget errors.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use pqlab::bounds::{
    alon_kleitman_exponent, decaen_bound, exponent_a, hd_regime, piercing_fraction_bound, PQParams,
};
use pqlab::budget::Budget;
use pqlab::clique::{approx_max_clique, check_union_condition, union_complexity, CliqueError};
use pqlab::family::{
    dichotomy_split, has_pq_property, intersection_graph, tuple_stats, DichotomyOutcome, Family,
    FamilyError,
};
use pqlab::fileformat::{FamilyFile, PointsFile};
use pqlab::geometry::{rat_from_string, rat_to_string, Rat};
use pqlab::instances::{gen, GenOutput, GenSpec};
use pqlab::pierce::{
    ak_pipeline, exact_min_piercing, fractional_lps, greedy_piercing, verify_weak_net,
    weak_epsilon_net, PierceError, PiercingSet,
};
use pqlab::suite;

use report::{flatten_csv, points_json, pq_params_json, rat_json};

#[derive(Parser)]
#[command(name = "pqlab", version, about = "piercing experiments on planar convex families")]
struct Cli {
    /// Work budget for exponential searches (enumerated subsets / nodes).
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Cap on net repair rounds.
    #[arg(long, global = true, default_value_t = 200)]
    repair_cap: u32,
    /// Worker threads (default: all cores). Output never depends on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct InputArg {
    /// Input file (family or points JSON, depending on the subcommand).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family (or point multiset) file.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Body count (family kinds).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = 4)]
        points_per_body: u32,
        #[arg(long, default_value_t = 8)]
        extent: u32,
        #[arg(long, default_value_t = 3)]
        span: u32,
        #[arg(long, default_value_t = 4)]
        max_radius: u32,
        #[arg(long, default_value_t = 4)]
        side: u32,
        #[arg(long)]
        support: Option<u32>,
        #[arg(long, default_value_t = 1)]
        max_weight: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersection graph, f-vector and Helly residue of a family.
    Analyze {
        #[command(flatten)]
        input: InputArg,
        /// Largest tuple size to count (default: the family size).
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Decide the (p,q) property.
    PqCheck {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Either the family satisfies (p',q'), or a witness subfamily is
    /// removed and the remainder satisfies the residual property.
    Dichotomy {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p_small: usize,
        #[arg(long)]
        q_small: usize,
    },
    /// Piercing sets: exact minimum, greedy, or the full pipeline.
    Pierce {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// (p,q) parameters; required by the pipeline method.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Exact fractional transversal/matching LPs.
    Lp {
        #[command(flatten)]
        input: InputArg,
    },
    /// Weak epsilon-net construction with verification (points input).
    Net {
        #[command(flatten)]
        input: InputArg,
        /// Threshold fraction, e.g. 1/3.
        #[arg(long)]
        eps: String,
    },
    /// Bound calculators and regime classification for (p, q, d).
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        d: u64,
        /// Enables the near-tight regime gate q >= p^((d-1)/d + eps).
        #[arg(long)]
        eps: Option<String>,
        /// When given, also evaluates the q-uniform edge minimum at n.
        #[arg(long)]
        n: Option<u64>,
        /// When given, reports the weak-net transfer at p = r*q + 1.
        #[arg(long)]
        net_lower_r: Option<u64>,
        /// Convex-set Ramsey upper bound i * j^4.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        ramsey: Option<Vec<u64>>,
    },
    /// Deep-point clique approximation.
    Maxclique {
        #[command(flatten)]
        input: InputArg,
        /// Also compute the exact maximum clique and the ratio.
        #[arg(long)]
        exact: bool,
    },
    /// Union complexity of the family, or the every-k-subfamily check.
    Union {
        #[command(flatten)]
        input: InputArg,
        /// Check union complexity < C(k,2) over every k-subfamily.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the acceptance suite.
    VerifyAll,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    CrossingSegments,
    Disjoint,
    Concentric,
    SegmentsPlusBoxes,
    RandomPolygons,
    DiscPolygons,
    GridPoints,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Greedy,
    Pipeline,
}

/// Usage/parse/budget problems exit 2; violated properties exit 1.
enum CliError {
    Usage(String),
    Violation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Violation(_) => 1,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Violation(m) => m,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::InternalCheckFailed(_) => CliError::Violation(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PierceError> for CliError {
    fn from(e: PierceError) -> Self {
        match e {
            PierceError::StageFailed { .. } => CliError::Violation(e.to_string()),
            PierceError::Simplex(pqlab::pierce::SimplexError::Internal(_)) => {
                CliError::Violation(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CliqueError> for CliError {
    fn from(e: CliqueError) -> Self {
        match e {
            CliqueError::InternalCheckFailed(_) => CliError::Violation(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self { CliError::Usage(e.to_string()) }
        }
    )*};
}
usage_from!(
    pqlab::fileformat::FormatError,
    pqlab::instances::GenError,
    pqlab::bounds::BoundsError,
    pqlab::geometry::RatParseError,
    std::io::Error
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("pqlab: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = Budget {
        max_work: cli.budget,
        max_repair_rounds: cli.repair_cap,
    };

    let start = Instant::now();
    match run(&cli.command, &budget) {
        Ok(Output::File { text, out }) => match out {
            Some(path) => {
                if let Err(e) = std::fs::write(&path, text) {
                    eprintln!("pqlab: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                eprintln!("pqlab: wrote {}", path.display());
                ExitCode::SUCCESS
            }
            None => {
                println!("{text}");
                ExitCode::SUCCESS
            }
        },
        Ok(Output::Report {
            result,
            digest,
            exit,
        }) => {
            let envelope = json!({
                "command": std::env::args().collect::<Vec<_>>(),
                "input_digest": digest,
                "result": result,
                "wall_time_ms": start.elapsed().as_millis() as u64,
                "budget": { "max_work": budget.max_work, "max_repair_rounds": budget.max_repair_rounds },
            });
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&envelope).expect("serializable")
                ),
                Format::Csv => print!("{}", flatten_csv(&envelope)),
            }
            ExitCode::from(exit)
        }
        Err(e) => {
            eprintln!("pqlab: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

enum Output {
    /// A generated data file (no envelope).
    File {
        text: String,
        out: Option<PathBuf>,
    },
    /// A structured report plus the exit code to use.
    Report {
        result: Value,
        digest: Option<String>,
        exit: u8,
    },
}

fn read_family(path: &PathBuf) -> Result<(Family, String), CliError> {
    let bytes = std::fs::read(path)?;
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8_lossy(&bytes);
    let family = FamilyFile::parse(&text)?.to_family()?;
    Ok((family, digest))
}

fn read_points(path: &PathBuf) -> Result<(pqlab::pierce::WeightedPoints, String), CliError> {
    let bytes = std::fs::read(path)?;
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8_lossy(&bytes);
    let points = PointsFile::parse(&text)?.to_points()?;
    Ok((points, digest))
}

fn piercing_json(ps: &PiercingSet) -> Value {
    json!({
        "size": ps.size(),
        "points": points_json(&ps.points),
        "certificate": ps
            .certificate
            .iter()
            .map(|(id, idx)| (id.0.to_string(), json!(idx)))
            .collect::<serde_json::Map<_, _>>(),
    })
}

fn run(command: &Command, budget: &Budget) -> Result<Output, CliError> {
    match command {
        Command::Gen {
            kind,
            n,
            p,
            q,
            points_per_body,
            extent,
            span,
            max_radius,
            side,
            support,
            max_weight,
            seed,
            out,
        } => {
            let need_n = || n.ok_or_else(|| CliError::Usage("--n is required for this kind".into()));
            let spec = match kind {
                Kind::CrossingSegments => GenSpec::CrossingSegments { n: need_n()?, seed: *seed },
                Kind::Disjoint => GenSpec::Disjoint { n: need_n()?, seed: *seed },
                Kind::Concentric => GenSpec::Concentric { n: need_n()?, seed: *seed },
                Kind::SegmentsPlusBoxes => GenSpec::SegmentsPlusBoxes {
                    p: p.ok_or_else(|| CliError::Usage("--p is required".into()))?,
                    q: q.ok_or_else(|| CliError::Usage("--q is required".into()))?,
                    seed: *seed,
                },
                Kind::RandomPolygons => GenSpec::RandomPolygons {
                    n: need_n()?,
                    points_per_body: *points_per_body,
                    extent: *extent,
                    span: *span,
                    seed: *seed,
                },
                Kind::DiscPolygons => GenSpec::DiscPolygons {
                    n: need_n()?,
                    extent: *extent,
                    max_radius: *max_radius,
                    seed: *seed,
                },
                Kind::GridPoints => GenSpec::GridPoints {
                    side: *side,
                    support: support.unwrap_or(side * side),
                    max_weight: *max_weight,
                    seed: *seed,
                },
            };
            let text = match gen(&spec)? {
                GenOutput::Family(f) => FamilyFile::from_family(&f, Some(spec)).to_json(),
                GenOutput::Points(p) => PointsFile::from_points(&p).to_json(),
            };
            Ok(Output::File {
                text,
                out: out.clone(),
            })
        }

        Command::Analyze { input, k_max } => {
            let (family, digest) = read_family(&input.input)?;
            let n = family.len();
            let k_max = k_max.unwrap_or(n);
            let stats = tuple_stats(&family, k_max, budget)?;
            let graph = intersection_graph(&family);
            let result = json!({
                "n": n,
                "edges": graph
                    .edges()
                    .iter()
                    .map(|(a, b)| json!([a.0, b.0]))
                    .collect::<Vec<_>>(),
                "f_vector": stats.f,
                "helly_residue": stats.helly_residue,
            });
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: 0,
            })
        }

        Command::PqCheck { input, p, q } => {
            let (family, digest) = read_family(&input.input)?;
            let d = has_pq_property(&family, *p, *q, budget)?;
            let holds = d.holds;
            let result = json!({
                "p": p, "q": q,
                "holds": d.holds,
                "counterexample": d.counterexample.map(|ids| ids.iter().map(|i| i.0).collect::<Vec<_>>()),
            });
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: if holds { 0 } else { 1 },
            })
        }

        Command::Dichotomy {
            input,
            p,
            q,
            p_small,
            q_small,
        } => {
            let (family, digest) = read_family(&input.input)?;
            let outcome = dichotomy_split(&family, *p, *q, *p_small, *q_small, budget)?;
            let result = match outcome {
                DichotomyOutcome::PropertyHolds { p_small, q_small } => json!({
                    "branch": "property-holds",
                    "p_small": p_small,
                    "q_small": q_small,
                }),
                DichotomyOutcome::Split {
                    removed,
                    residual_p,
                    residual_q,
                } => json!({
                    "branch": "split",
                    "removed": removed.iter().map(|i| i.0).collect::<Vec<_>>(),
                    "residual_p": residual_p,
                    "residual_q": residual_q,
                }),
            };
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: 0,
            })
        }

        Command::Pierce {
            input,
            method,
            p,
            q,
        } => {
            let (family, digest) = read_family(&input.input)?;
            let result = match method {
                Method::Exact => {
                    let ps = exact_min_piercing(&family, budget)?;
                    json!({ "method": "exact", "piercing": piercing_json(&ps) })
                }
                Method::Greedy => {
                    let ps = greedy_piercing(&family);
                    json!({ "method": "greedy", "piercing": piercing_json(&ps) })
                }
                Method::Pipeline => {
                    let p = p.ok_or_else(|| CliError::Usage("--p is required for the pipeline".into()))?;
                    let q = q.ok_or_else(|| CliError::Usage("--q is required for the pipeline".into()))?;
                    let params = PQParams::new(p, q, 2)?;
                    let report = ak_pipeline(&family, &params, budget)?;
                    json!({
                        "method": "pipeline",
                        "n": report.n, "p": report.p, "q": report.q,
                        "stage1": {
                            "f_vector": report.counts.stats.f,
                            "helly_residue": report.counts.stats.helly_residue,
                            "q_edges": report.counts.q_edges,
                            "turan_lower": rat_json(&report.counts.turan_lower),
                            "upper_bound_checked": report.counts.upper_bound_checked,
                        },
                        "stage2": {
                            "point": [rat_to_string(&report.deep_point.point.x), rat_to_string(&report.deep_point.point.y)],
                            "depth": report.deep_point.depth,
                            "required": report.deep_point.required,
                        },
                        "stage3": {
                            "value": rat_json(&report.lp.primal_value),
                            "alpha": rat_json(&report.lp.alpha),
                            "support": report.lp.point_weights.support_size(),
                        },
                        "stage4": {
                            "eps": rat_json(&report.net.eps),
                            "initial_size": report.net.initial_size,
                            "repair_rounds": report.net.repair_rounds,
                            "net_size": report.net.net_size,
                        },
                        "piercing": piercing_json(&report.piercing),
                    })
                }
            };
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: 0,
            })
        }

        Command::Lp { input } => {
            let (family, digest) = read_family(&input.input)?;
            let lp = fractional_lps(&family)?;
            let result = json!({
                "value": rat_json(&lp.primal_value),
                "alpha": rat_json(&lp.alpha),
                "point_weights": lp
                    .point_weights
                    .entries()
                    .iter()
                    .map(|(pt, w)| json!([rat_to_string(&pt.x), rat_to_string(&pt.y), rat_to_string(w)]))
                    .collect::<Vec<_>>(),
                "set_weights": lp
                    .set_weights
                    .iter()
                    .map(|(id, w)| (id.0.to_string(), json!(rat_to_string(w))))
                    .collect::<serde_json::Map<_, _>>(),
            });
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: 0,
            })
        }

        Command::Net { input, eps } => {
            let (points, digest) = read_points(&input.input)?;
            let eps: Rat = rat_from_string(eps)?;
            let report = weak_epsilon_net(&points, &eps, budget)?;
            let recheck = verify_weak_net(&points, &eps, &report.net, budget)?;
            let verified = recheck.is_none();
            let result = json!({
                "eps": rat_json(&eps),
                "net": points_json(&report.net),
                "initial_size": report.initial_size,
                "repair_rounds": report.repair_rounds,
                "verified": verified,
            });
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: if verified { 0 } else { 1 },
            })
        }

        Command::Bounds {
            p,
            q,
            d,
            eps,
            n,
            net_lower_r,
            ramsey,
        } => {
            let params = PQParams::new(*p, *q, *d)?;
            let eps_rat = eps.as_deref().map(rat_from_string).transpose()?;
            let report = hd_regime(&params, eps_rat.as_ref())?;
            let mut result = json!({
                "params": pq_params_json(&params),
                "regime": report.regime.as_str(),
                "lower": report.lower,
                "upper_exact": report.upper_exact,
                "upper_exponent": report.upper_exponent.as_ref().map(rat_json),
                "notes": report.notes,
                "baseline_exponent": alon_kleitman_exponent(*d),
            });
            let obj = result.as_object_mut().expect("object");
            if q > d {
                obj.insert(
                    "exponent_a".into(),
                    rat_json(&exponent_a(&params)?),
                );
                obj.insert(
                    "depth_fraction_lower".into(),
                    rat_json(&piercing_fraction_bound(&params)?),
                );
            }
            if let Some(n) = n {
                obj.insert(
                    "q_tuple_edge_minimum".into(),
                    rat_json(&decaen_bound(*n, *p, *q)?),
                );
            }
            if let Some(r) = net_lower_r {
                let rel = pqlab::bounds::weak_net_hd_lower(*r, *q, *d)?;
                obj.insert(
                    "weak_net_transfer".into(),
                    json!({ "r": rel.r, "p": rel.p, "statement": rel.statement }),
                );
            }
            if let Some(ij) = ramsey {
                obj.insert(
                    "ramsey_upper".into(),
                    json!(pqlab::bounds::ramsey_bound(ij[0], ij[1]).to_string()),
                );
            }
            Ok(Output::Report {
                result,
                digest: None,
                exit: 0,
            })
        }

        Command::Maxclique { input, exact } => {
            let (family, digest) = read_family(&input.input)?;
            let rep = approx_max_clique(&family, *exact);
            let result = json!({
                "approx_clique": rep.approx_clique.iter().map(|i| i.0).collect::<Vec<_>>(),
                "witness_point": [
                    rat_to_string(&rep.witness_point.x),
                    rat_to_string(&rep.witness_point.y)
                ],
                "exact_clique": rep.exact_clique.map(|ids| ids.iter().map(|i| i.0).collect::<Vec<_>>()),
                "exact_clique_size": rep.exact_clique_size,
                "ratio": rep.ratio.as_ref().map(rat_json),
            });
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit: 0,
            })
        }

        Command::Union { input, k } => {
            let (family, digest) = read_family(&input.input)?;
            let (result, exit) = match k {
                None => {
                    let rep = union_complexity(&family);
                    (
                        json!({
                            "vertex_count": rep.vertex_count,
                            "vertices": points_json(&rep.vertices),
                            "k": rep.k,
                            "threshold": rep.threshold,
                        }),
                        0,
                    )
                }
                Some(k) => {
                    let rep = check_union_condition(&family, *k, budget)?;
                    (
                        json!({
                            "k": k,
                            "holds": rep.holds,
                            "witness": rep.witness.map(|ids| ids.iter().map(|i| i.0).collect::<Vec<_>>()),
                        }),
                        if rep.holds { 0 } else { 1 },
                    )
                }
            };
            Ok(Output::Report {
                result,
                digest: Some(digest),
                exit,
            })
        }

        Command::VerifyAll => {
            let outcomes = suite::run_all(budget);
            let mut all_pass = true;
            for o in &outcomes {
                eprintln!("{}", o.line());
                all_pass &= o.passed;
            }
            let result = json!({
                "criteria": outcomes
                    .iter()
                    .map(|o| json!({
                        "id": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "details": o.details,
                        "millis": o.millis as u64,
                    }))
                    .collect::<Vec<_>>(),
                "all_passed": all_pass,
            });
            Ok(Output::Report {
                result,
                digest: None,
                exit: if all_pass { 0 } else { 1 },
            })
        }
    }
}
