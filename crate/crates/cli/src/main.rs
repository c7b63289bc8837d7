mod output;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbitstrata::arrangement::{jacobian_rank, jacobian_rank_exact, Arrangement};
use orbitstrata::invariants::{basic_invariants, basic_invariants_prefix, BasicInvariantSet, SparseObjective, Variant};
use orbitstrata::lie::{self, LieKind};
use orbitstrata::parabolic::{parnum_witness, secparnum, table1, Convention};
use orbitstrata::poly::{parse_in, parse_indexed};
use orbitstrata::reduce::{
    brute_oracle, check_nonneg, f4_certificate, h4_evidence, pieces, solve_on_strata, Constraint, Problem, Sense, Solution,
};
use orbitstrata::{selftest, Coefficient, Error, GroupDescriptor, OutputFormat, RunConfig};

use output::{exact, num, nums, rounded, to_value};

const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "orbitstrata", version, about = "Degree-principle reductions for invariant problems over finite reflection groups")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Table,
    Unrestricted,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basic invariants of a group.
    Invariants {
        group: GroupDescriptor,
        #[arg(long)]
        variant: Option<Variant>,
        /// Only the first COUNT invariants.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Degrees of the basic invariants.
    Degrees { group: GroupDescriptor },
    /// parNum(d) with the attaining parabolic subgroup.
    Parnum {
        group: GroupDescriptor,
        d: u32,
        #[arg(long, value_enum, default_value = "table")]
        convention: Conv,
    },
    /// SecParNum(k).
    Secparnum { group: GroupDescriptor, k: usize },
    /// The parNum and SecParNum rows of a group.
    Table1 { group: GroupDescriptor },
    /// Pieces of the k-stratum up to the group action.
    Strata { group: GroupDescriptor, k: usize },
    /// Smallest i with the point in the i-stratum.
    StratumDim {
        group: GroupDescriptor,
        /// Comma-separated coordinates; rationals and sqrt5 are exact.
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Rank of the Jacobian of the first k+1 basic invariants.
    JacobianRank {
        group: GroupDescriptor,
        #[arg(allow_hyphen_values = true)]
        point: String,
        k: usize,
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Optimize or test feasibility of a sparse invariant problem.
    Solve(SolveArgs),
    /// Decide nonnegativity of an invariant over a semialgebraic set.
    Nonneg(NonnegArgs),
    /// Extremes of the second F4 invariant on the sphere, with the
    /// bivariate critical-point computation.
    F4Certificate,
    /// Extremizers of the H4 degree-12 surrogate on the sphere.
    H4Evidence,
    /// Trace-power problems on sl_n and so_n.
    LieSolve(LieArgs),
    /// Run the acceptance criteria.
    Selftest {
        /// Comma-separated criterion numbers.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    group: GroupDescriptor,
    /// Polynomial in y1..yk standing for the basic invariants.
    #[arg(long, allow_hyphen_values = true)]
    objective: String,
    #[arg(long)]
    k: usize,
    /// sphere:R, principal:v1,..,vj or none.
    #[arg(long, default_value = "none", allow_hyphen_values = true)]
    constraint: Constraint,
    /// min, max or feasible.
    #[arg(long, default_value = "min")]
    sense: Sense,
    #[arg(long)]
    variant: Option<Variant>,
    /// Also run the full-dimensional multistart and report the gap.
    #[arg(long)]
    oracle: bool,
    /// The objective is coercive, so no compact constraint is needed.
    #[arg(long)]
    coercive: bool,
}

#[derive(Args)]
struct NonnegArgs {
    #[arg(long)]
    group: GroupDescriptor,
    #[arg(long, allow_hyphen_values = true)]
    objective: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "none", allow_hyphen_values = true)]
    constraint: Constraint,
    /// An inequality g >= 0 in y1, y2, ...; repeatable.
    #[arg(long = "ineq", allow_hyphen_values = true)]
    ineqs: Vec<String>,
    #[arg(long)]
    variant: Option<Variant>,
}

#[derive(Args)]
struct LieArgs {
    #[arg(long)]
    kind: LieKind,
    #[arg(long)]
    n: usize,
    /// Polynomial in t2, t3, ... (sl) or t2, t4, ..., pf (so).
    #[arg(long, allow_hyphen_values = true)]
    objective: String,
    /// sphere:R is the Frobenius sphere; principal values follow the coordinate order.
    #[arg(long, default_value = "none", allow_hyphen_values = true)]
    constraint: Constraint,
    #[arg(long, default_value = "min")]
    sense: Sense,
    /// Also run the multistart over matrices.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    coercive: bool,
}

/// Output of one command: the JSON document, its text rendering and the
/// exit code.
struct Report {
    json: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: 0 }
    }
}

fn basis(g: &GroupDescriptor, variant: Option<Variant>) -> Result<Arc<BasicInvariantSet>, Error> {
    let v = match variant {
        Some(v) => v,
        None => Variant::default_for(g)?,
    };
    Ok(Arc::new(basic_invariants(g, v)?))
}

fn parse_point(s: &str) -> Result<Vec<Coefficient>, Error> {
    s.split(',')
        .map(|part| {
            let p = parse_in(part.trim(), "x", 0)?;
            Ok(p.coefficient(&[]))
        })
        .collect()
}

fn solution_text(s: &Solution) -> String {
    let mut t = format!("status: {}\nvalue: {}\nwitness: {}\n", s.status, num(s.value), nums(&s.witness));
    if let Some(p) = &s.piece {
        t += &format!("piece: {} ({} free)\n", p.label, p.free_vars);
    }
    if let Some(d) = s.stratum_dim {
        t += &format!("stratum_dim: {d}\n");
    }
    t += &format!("residual: {}\n", num(s.residual));
    if s.low_confidence {
        t += "low confidence: the value was reached from a single start\n";
    }
    for w in &s.warnings {
        t += &format!("warning: {w}\n");
    }
    t
}

fn run(cmd: Cmd, cfg: &RunConfig) -> Result<Report, Error> {
    Ok(match cmd {
        Cmd::Invariants { group, variant, count } => {
            let v = match variant {
                Some(v) => v,
                None => Variant::default_for(&group)?,
            };
            let b = match count {
                Some(c) => basic_invariants_prefix(&group, v, c)?,
                None => basic_invariants(&group, v)?,
            };
            let items: Vec<Value> = b
                .polys
                .iter()
                .enumerate()
                .map(|(i, p)| json!({"index": i + 1, "degree": p.degree(), "polynomial": p.to_string()}))
                .collect();
            Report::ok(
                json!({"group": group.to_string(), "variant": v.name(), "invariants": items, "degree_ties": b.degree_ties}),
                format!("{b}\n"),
            )
        }
        Cmd::Degrees { group } => {
            let d = &group.degrees;
            let text = d.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            Report::ok(json!({"group": group.to_string(), "degrees": d, "order": group.order().to_string()}), format!("{text}\n"))
        }
        Cmd::Parnum { group, d, convention } => {
            let conv = match convention {
                Conv::Table => Convention::Table,
                Conv::Unrestricted => Convention::Unrestricted,
            };
            let w = parnum_witness(&group, d, conv)?;
            Report::ok(
                json!({"group": group.to_string(), "d": d, "parnum": w.value, "w": w.decomposition.to_string(), "w_top_degree": w.top_degree, "subset": w.decomposition.subset}),
                format!("{}\nW = {} (d_n(W) = {})\n", w.value, w.decomposition, w.top_degree),
            )
        }
        Cmd::Secparnum { group, k } => {
            let v = secparnum(&group, k)?;
            Report::ok(json!({"group": group.to_string(), "k": k, "secparnum": v}), format!("{v}\n"))
        }
        Cmd::Table1 { group } => {
            let t = table1(&group)?;
            let mut text = format!("{group}\n{:<10} {:>6}  {:<10} {:>6}\n", "d", "parNum", "W", "d_n(W)");
            for r in &t.rows {
                text += &format!("{:<10} {:>6}  {:<10} {:>6}\n", format!("{}-{}", r.d_min, r.d_max), r.parnum, r.w, r.w_top_degree);
            }
            text += &format!("{:<10} {:>9}\n", "k", "SecParNum");
            for r in &t.sec {
                text += &format!("{:<10} {:>9}\n", r.k, r.secparnum);
            }
            Report::ok(to_value(&t), text)
        }
        Cmd::Strata { group, k } => {
            let ps = pieces(&group, k)?;
            let items: Vec<Value> = ps
                .iter()
                .map(|p| json!({"label": p.label(), "free_vars": p.free_vars(), "kind": to_value(&p.kind)}))
                .collect();
            let mut text = format!("{} pieces of the {k}-stratum of {group}\n", ps.len());
            for p in &ps {
                text += &format!("  {} ({} free)\n", p.label(), p.free_vars());
            }
            Report::ok(json!({"group": group.to_string(), "k": k, "pieces": items}), text)
        }
        Cmd::StratumDim { group, point } => {
            let p = parse_point(&point)?;
            let arr = Arrangement::new(&group)?;
            let d = if arr.exact.is_some() {
                arr.stratum_dim_exact(&p)?
            } else {
                arr.stratum_dim(&p.iter().map(Coefficient::to_f64).collect::<Vec<_>>())?
            };
            Report::ok(
                json!({"group": group.to_string(), "point": p.iter().map(exact).collect::<Vec<_>>(), "stratum_dim": d, "exact": arr.exact.is_some()}),
                format!("{d}\n"),
            )
        }
        Cmd::JacobianRank { group, point, k, variant } => {
            let p = parse_point(&point)?;
            let b = basis(&group, variant)?;
            let arr = Arrangement::new(&group)?;
            let (rank, sd) = if arr.exact.is_some() {
                (jacobian_rank_exact(&b.polys, &p, k)?, arr.stratum_dim_exact(&p)?)
            } else {
                let x: Vec<f64> = p.iter().map(Coefficient::to_f64).collect();
                (jacobian_rank(&b.polys, &x, k)?, arr.stratum_dim(&x)?)
            };
            Report::ok(
                json!({"group": group.to_string(), "point": p.iter().map(exact).collect::<Vec<_>>(), "k": k, "rank": rank, "stratum_dim": sd}),
                format!("rank {rank} (k = {k}), stratum_dim {sd}\n"),
            )
        }
        Cmd::Solve(a) => {
            let obj = SparseObjective::parse(&a.objective, a.k, basis(&a.group, a.variant)?)?;
            let mut p = Problem::new(obj, a.constraint.clone(), a.sense);
            p.coercive = a.coercive;
            let sol = solve_on_strata(&p, cfg)?;
            let mut json = json!({
                "group": a.group.to_string(),
                "objective": a.objective,
                "k": a.k,
                "sense": a.sense,
                "solution": to_value(&sol),
            });
            let mut text = solution_text(&sol);
            if a.oracle {
                let o = brute_oracle(&p, cfg)?;
                let gap = (o.value - sol.value).abs();
                text += &format!("oracle value: {}\ngap: {}\n", num(o.value), num(gap));
                json["oracle"] = to_value(&o);
                json["gap"] = json!(gap);
            }
            Report { json, text, code: sol.status.exit_code() as u8 }
        }
        Cmd::Nonneg(a) => {
            let b = basis(&a.group, a.variant)?;
            let f = SparseObjective::parse(&a.objective, a.k, b.clone())?;
            let gs = a
                .ineqs
                .iter()
                .map(|g| SparseObjective::new(parse_indexed(g, "y", 1)?, b.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            let r = check_nonneg(&f, &a.constraint, &gs, cfg)?;
            let mut text = format!("nonneg: {}\nmin: {}\nwitness: {}\n", r.nonneg, num(r.min), nums(&r.witness));
            if let Some(p) = &r.piece {
                text += &format!("piece: {}\n", p.label);
            }
            if r.unbounded {
                text += "unbounded below\n";
            }
            Report::ok(to_value(&r), text)
        }
        Cmd::F4Certificate => {
            let c = f4_certificate(cfg)?;
            let mut text = format!("identities hold: {}\ncritical points:\n", c.identities_hold);
            for p in &c.critical_points {
                text += &format!(
                    "  {} value {}{}\n",
                    nums(&p.y),
                    num(p.value),
                    if p.interior { if p.exact { " (interior, exact)" } else { " (interior)" } } else { " (boundary)" }
                );
            }
            text += &format!("min on S^3: {} at {}\n", num(c.sphere_min.value), nums(&c.sphere_min.witness));
            text += &format!("max on S^3: {} at {}\n", num(c.sphere_max.value), nums(&c.sphere_max.witness));
            let ok = c.identities_hold && (c.sphere_min.value - 1.0).abs() <= 1e-8 && (c.sphere_max.value - 1.5).abs() <= 1e-8;
            Report { json: to_value(&c), text, code: if ok { 0 } else { EXIT_ERROR } }
        }
        Cmd::H4Evidence => {
            let ev = h4_evidence(cfg)?;
            let mut text = String::new();
            for e in &ev.extremizers {
                text += &format!(
                    "{:?}: {} at {} stratum_dim {} distance to (1,0,0,0) {:.1e}, to (1,1,0,0)/sqrt2 {:.1e}\n",
                    e.sense,
                    num(e.value),
                    nums(&e.witness),
                    e.stratum_dim,
                    e.distance_to_e1,
                    e.distance_to_e12
                );
            }
            text += &format!("strata min {} max {}\nlocated: {}\n", num(ev.strata_min), num(ev.strata_max), ev.located);
            text += "warning: H4: the reduction to strata rests on a conjecture\n";
            Report { json: to_value(&ev), text, code: if ev.located { 0 } else { EXIT_ERROR } }
        }
        Cmd::LieSolve(a) => {
            let f = lie::parse_objective(a.kind, a.n, &a.objective)?;
            let mut red = lie::lie_reduce(a.kind, a.n, &f, &a.constraint, a.sense)?;
            red.problem.coercive = a.coercive;
            let sol = solve_on_strata(&red.problem, cfg)?;
            let matrix = red.lift_solution(&sol)?;
            let coords = red.coordinates();
            let values = matrix.as_ref().map(lie::invariant_values).transpose()?;
            let mut json = json!({
                "kind": a.kind,
                "n": a.n,
                "weyl_group": red.problem.group().to_string(),
                "coordinates": coords,
                "solution": to_value(&sol),
                "matrix": to_value(&matrix),
                "invariant_values": values,
            });
            let mut text = format!("{}_{} reduced to {}\n", a.kind, a.n, red.problem.group());
            text += &solution_text(&sol);
            if let (Some(m), Some(v)) = (&matrix, &values) {
                text += "matrix:\n";
                for row in &m.entries {
                    text += &format!("  {}\n", nums(row));
                }
                let pairs: Vec<String> = coords.iter().zip(v).map(|(c, x)| format!("{c} = {}", num(*x))).collect();
                text += &format!("invariants: {}\n", pairs.join(", "));
            }
            if a.oracle {
                let o = lie::matrix_oracle(a.kind, a.n, &f, &a.constraint, a.sense, cfg)?;
                let gap = (o.value - sol.value).abs();
                text += &format!("oracle value: {}\ngap: {}\n", num(o.value), num(gap));
                json["oracle"] = to_value(&o);
                json["gap"] = json!(gap);
            }
            Report { json, text, code: sol.status.exit_code() as u8 }
        }
        Cmd::Selftest { only } => {
            let only: Vec<usize> = match only {
                Some(s) => s
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad criterion `{x}`") }))
                    .collect::<Result<_, _>>()?,
                None => vec![],
            };
            let stream = cfg.format == OutputFormat::Text;
            let results = selftest::run(cfg, &only, |r| {
                if stream {
                    println!("{r}");
                }
            });
            let failed = results.iter().filter(|r| !r.passed).count();
            let text = format!("selftest: {} passed, {failed} failed\n", results.len() - failed);
            Report { json: json!({"criteria": to_value(&results), "failed": failed}), text, code: if failed == 0 { 0 } else { EXIT_ERROR } }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    let mut cfg = RunConfig::default();
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    let start = Instant::now();
    match run(cli.cmd, &cfg) {
        Ok(mut r) => {
            let secs = start.elapsed().as_secs_f64();
            match cfg.format {
                OutputFormat::Json => {
                    if cli.timing {
                        r.json = match r.json {
                            Value::Object(mut m) => {
                                m.insert("timing_secs".into(), json!(secs));
                                Value::Object(m)
                            }
                            other => json!({"result": other, "timing_secs": secs}),
                        };
                    }
                    println!("{}", serde_json::to_string_pretty(&rounded(r.json)).unwrap_or_default());
                }
                OutputFormat::Text => {
                    print!("{}", r.text);
                    if cli.timing {
                        println!("time: {secs:.3}s");
                    }
                }
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse { .. } | Error::UnknownGroup(_) => EXIT_USAGE,
                _ => EXIT_ERROR,
            };
            ExitCode::from(code)
        }
    }
}
