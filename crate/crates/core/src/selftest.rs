//! The acceptance criteria, runnable from tests and from the command line.

use std::sync::Arc;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{jacobian_rank, jacobian_rank_exact, Arrangement};
use crate::config::RunConfig;
use crate::coxeter::{FiniteGroup, GroupDescriptor};
use crate::error::Result;
use crate::invariants::{basic_invariants, BasicInvariantSet, SparseObjective, Variant};
use crate::lie::{lie_reduce, matrix_oracle, pfaffian, LieKind, MatrixPoint};
use crate::parabolic::{canonical_type_name, table1};
use crate::poly::{Coefficient, Polynomial};
use crate::reduce::{
    brute_oracle, f4_certificate, find_zero, h4_evidence, restrict_to_hyperplanes, solve_on_strata, zero_oracle, Constraint, Problem,
    Sense, Status,
};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {}. {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_secs,
            self.detail
        )
    }
}

type Check = Result<(bool, String)>;

pub const CRITERIA: [&str; 9] = [
    "parabolic table reproduction",
    "F4 certificate",
    "D5 counterexample regression",
    "degree principle vs oracle (A/B/D)",
    "Jacobian criterion vs strata (A/B)",
    "hyperplane restriction zeros",
    "H4 evidence",
    "Lie adapter",
    "group and arrangement sanity",
];

const LIMITS: [Option<u64>; 9] = [Some(5), Some(10), None, Some(300), None, None, Some(120), None, None];

/// Runs the selected criteria (1-based ids; empty means all) in order,
/// calling `report` after each.
pub fn run(cfg: &RunConfig, only: &[usize], mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for id in 1..=CRITERIA.len() {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let res = match id {
            1 => table1_reproduction(),
            2 => f4(cfg),
            3 => d5_regression(),
            4 => degree_principle(cfg),
            5 => jacobian_criterion(cfg),
            6 => hyperplane_zeros(cfg),
            7 => h4(cfg),
            8 => lie_adapter(cfg),
            _ => sanity(),
        };
        let elapsed = t.elapsed();
        let (mut passed, mut detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
        if let Some(limit) = LIMITS[id - 1] {
            if elapsed > Duration::from_secs(limit) {
                passed = false;
                detail = format!("{detail}; over the {limit}s budget");
            }
        }
        let r = CriterionResult { id, name: CRITERIA[id - 1], passed, detail, elapsed_secs: elapsed.as_secs_f64() };
        report(&r);
        out.push(r);
    }
    out
}

fn g(s: &str) -> Result<GroupDescriptor> {
    s.parse()
}

fn default_basis(grp: &GroupDescriptor) -> Result<Arc<BasicInvariantSet>> {
    Ok(Arc::new(basic_invariants(grp, Variant::default_for(grp)?)?))
}

/// `(d, parNum(d), W, d_n(W))` for every `d` in the printed range.
type PerD = Vec<(u32, usize, String, u32)>;

fn rows_per_d(d_max: u32, f: impl Fn(u32) -> (usize, String, u32)) -> PerD {
    (0..=d_max)
        .map(|d| {
            let (p, w, t) = f(d);
            (d, p, w, t)
        })
        .collect()
}

/// The published table, transcribed, with `SecParNum` as `(k, value)`.
fn table1_reference(s: &str) -> Option<(PerD, Vec<(usize, usize)>)> {
    let grp: GroupDescriptor = s.parse().ok()?;
    let n = grp.ambient_dim;
    let exceptional = |rows: &[(u32, u32, usize, &str, u32)], sec: &[usize]| {
        let per_d = rows
            .iter()
            .flat_map(|&(a, b, p, w, t)| (a..=b).map(move |d| (d, p, w.to_string(), t)))
            .collect();
        (per_d, sec.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect())
    };
    let nn = n as u32;
    Some(match s {
        _ if s.starts_with('A') => (
            rows_per_d(2 * nn - 1, |d| ((d / 2) as usize, format!("A{}", d / 2), d / 2 + 1)),
            (0..n).map(|k| (k, k)).collect(),
        ),
        _ if s.starts_with('B') => (
            rows_per_d(4 * nn - 1, |d| ((d / 4) as usize, format!("B{}", d / 4 + 1), 2 * (d / 4 + 1))),
            (0..n).map(|k| (k, k)).collect(),
        ),
        _ if s.starts_with('D') => (
            rows_per_d(4 * nn - 5, |d| ((d / 4 + 1) as usize, format!("D{}", d / 4 + 2), 2 * (d / 4 + 1))),
            (0..=n).map(|k| (k, if k <= n / 2 { k + 1 } else { k })).collect(),
        ),
        _ if s.starts_with("I2") => {
            let m = grp.param as u32;
            ((1..=2 * m - 1).map(|d| (d, 1, format!("I2({m})"), m)).collect(), vec![(1, 1)])
        }
        "E6" => exceptional(
            &[(1, 5, 1, "A2", 3), (6, 7, 2, "A3", 4), (8, 11, 3, "D4", 6), (12, 15, 4, "D5", 8), (16, 23, 5, "E6", 12)],
            &[1, 3, 4, 5, 5],
        ),
        "E7" => exceptional(
            &[
                (1, 5, 1, "A2", 3),
                (6, 7, 2, "A3", 4),
                (8, 11, 3, "D4", 6),
                (12, 15, 4, "D5", 8),
                (16, 23, 5, "E6", 12),
                (24, 35, 6, "E7", 18),
            ],
            &[1, 4, 5, 5, 6, 6],
        ),
        "E8" => exceptional(
            &[
                (1, 5, 1, "A2", 3),
                (6, 7, 2, "A3", 4),
                (8, 11, 3, "D4", 6),
                (12, 15, 4, "D5", 8),
                (16, 23, 5, "E6", 12),
                (24, 35, 6, "E7", 18),
                (36, 59, 7, "E8", 30),
            ],
            &[1, 5, 6, 6, 7, 7, 7],
        ),
        "F4" => exceptional(&[(1, 7, 1, "B2", 4), (8, 11, 2, "B3", 6), (12, 23, 3, "F4", 12)], &[1, 3, 3]),
        "H3" => exceptional(&[(1, 9, 1, "I2(5)", 5), (10, 19, 2, "H3", 10)], &[1, 2]),
        "H4" => exceptional(&[(1, 9, 1, "I2(5)", 5), (10, 19, 2, "H3", 10), (20, 59, 3, "H4", 30)], &[1, 3, 3]),
        _ => return None,
    })
}

pub fn table1_groups() -> Vec<String> {
    let mut v: Vec<String> = (2..=7).map(|n| format!("A{n}")).collect();
    v.extend((2..=8).map(|n| format!("B{n}")));
    v.extend((4..=8).map(|n| format!("D{n}")));
    v.extend((3..=10).map(|m| format!("I2({m})")));
    v.extend(["E6", "E7", "E8", "F4", "H3", "H4"].map(String::from));
    v
}

fn table1_reproduction() -> Check {
    let mut mismatches = Vec::new();
    let mut entries = 0;
    for s in table1_groups() {
        let (rows, sec) = table1_reference(&s).expect("listed group");
        let t = table1(&g(&s)?)?;
        let got: PerD = t
            .rows
            .iter()
            .flat_map(|r| (r.d_min..=r.d_max).map(move |d| (d, r.parnum, canonical_type_name(&r.w), r.w_top_degree)))
            .collect();
        let want: PerD =
            rows.into_iter().map(|(d, p, w, top)| (d, p, canonical_type_name(&w), top)).collect();
        if got != want {
            let first = got.iter().zip(&want).find(|(a, b)| a != b);
            mismatches.push(format!("{s}: {first:?} (lengths {} vs {})", got.len(), want.len()));
        }
        let got_sec: Vec<(usize, usize)> = t.sec.iter().map(|r| (r.k, r.secparnum)).collect();
        if got_sec != sec {
            mismatches.push(format!("{s} SecParNum: {got_sec:?} vs {sec:?}"));
        }
        entries += want.len() + sec.len();
    }
    Ok((mismatches.is_empty(), if mismatches.is_empty() { format!("{entries} entries over {} groups match", table1_groups().len()) } else { mismatches.join("; ") }))
}

fn f4(cfg: &RunConfig) -> Check {
    let c = f4_certificate(cfg)?;
    let mut values = c.interior_values.clone();
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() <= 1e-8);
    let interior_ok = values.len() == 2 && (values[0] - 1.0).abs() <= 1e-8 && (values[1] - 11.0 / 9.0).abs() <= 1e-8;
    let min_ok = (c.sphere_min.value - 1.0).abs() <= 1e-8;
    let max_ok = (c.sphere_max.value - 1.5).abs() <= 1e-8;
    let strata_ok = [&c.sphere_min, &c.sphere_max].iter().all(|s| s.stratum_dim.is_some_and(|d| d <= 1));
    Ok((
        c.identities_hold && interior_ok && min_ok && max_ok && strata_ok,
        format!(
            "min {:.12} max {:.12} interior {:?} strata {}/{} identities {}",
            c.sphere_min.value,
            c.sphere_max.value,
            values,
            dim(c.sphere_min.stratum_dim),
            dim(c.sphere_max.stratum_dim),
            c.identities_hold
        ),
    ))
}

fn dim(d: Option<usize>) -> String {
    d.map_or("?".into(), |d| d.to_string())
}

fn d5_regression() -> Check {
    let p = [1.0, 1.0, 1.0, 1.0, 0.0];
    let exact: Vec<Coefficient> = p.iter().map(|&v| Coefficient::from_int(v as i64)).collect();
    let s24 = [Polynomial::power_sum(5, 2), Polynomial::power_sum(5, 4)];
    let rank = jacobian_rank(&s24, &p, 1)?;
    let rank_exact = jacobian_rank_exact(&s24, &exact, 1)?;
    let d5 = Arrangement::new(&g("D5")?)?.stratum_dim_exact(&exact)?;
    let b5 = Arrangement::new(&g("B5")?)?.stratum_dim_exact(&exact)?;
    let b5_basis = basic_invariants(&g("B5")?, Variant::PowerSum)?;
    let b5_rank = jacobian_rank_exact(&b5_basis.polys, &exact, 1)?;
    let ok = rank == 1 && rank_exact == 1 && d5 == 2 && b5 == 1 && (b5_rank <= 1) == (b5 <= 1);
    Ok((ok, format!("rank {rank} (exact {rank_exact}), D5 stratum {d5}, B5 stratum {b5} with rank {b5_rank}")))
}

/// A random polynomial of degree at most 3 in `k` variables with a few
/// small rational coefficients.
pub fn random_objective(rng: &mut ChaCha8Rng, k: usize) -> Polynomial {
    let terms = rng.random_range(2..=4);
    let mut f = Polynomial::zero(k);
    for t in 0..terms {
        let deg = rng.random_range(1..=3u32);
        let mut e = vec![0u32; k];
        // the first term always involves the last variable so k is the sparsity
        let first = if t == 0 { k - 1 } else { rng.random_range(0..k) };
        e[first] += 1;
        for _ in 1..deg {
            e[rng.random_range(0..k)] += 1;
        }
        let mut num: i64 = rng.random_range(-5..=5);
        if num == 0 {
            num = 1;
        }
        let den: i64 = rng.random_range(1..=4);
        f = &f + &Polynomial::monomial(k, e, Coefficient::from_frac(num, den));
    }
    if f.is_zero() {
        Polynomial::var(k, k - 1)
    } else {
        f
    }
}

fn degree_principle(cfg: &RunConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 4);
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    for n in 4..=6 {
        for k in 1..=n {
            shapes.push((n, k));
        }
    }
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut count = 0;
    for fam in ["A", "B", "D"] {
        for i in 0..100 {
            let (n, k) = shapes[i % shapes.len()];
            let name = if fam == "A" { format!("A{}", n - 1) } else { format!("{fam}{n}") };
            let grp = g(&name)?;
            let basis = default_basis(&grp)?;
            let f = random_objective(&mut rng, k);
            let obj = SparseObjective::new(f.clone(), basis)?;
            for sense in [Sense::Min, Sense::Max] {
                let p = Problem::new(obj.clone(), Constraint::Sphere(1.0), sense);
                let a = solve_on_strata(&p, cfg)?;
                let b = brute_oracle(&p, cfg)?;
                let diff = (a.value - b.value).abs();
                count += 1;
                if !(diff <= 1e-6) || a.status != Status::Solved || b.status != Status::Solved {
                    failures.push(format!("{name} k={k} {sense:?} F={f}: strata {} oracle {}", a.value, b.value));
                } else {
                    worst = worst.max(diff);
                }
            }
        }
    }
    let ok = failures.is_empty();
    let mut detail = format!("{} of {count} comparisons agree, worst gap {worst:.2e}", count - failures.len());
    if !ok {
        detail.push_str(&format!("; first: {}", failures[0]));
    }
    Ok((ok, detail))
}

fn random_rational_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Coefficient> {
    // few distinct values so every stratum shows up
    let pool: Vec<BigRational> = (0..rng.random_range(1..=n))
        .map(|_| BigRational::new(BigInt::from(rng.random_range(-6..=6)), BigInt::from(rng.random_range(1..=3))))
        .collect();
    (0..n)
        .map(|_| {
            let v = pool[rng.random_range(0..pool.len())].clone();
            Coefficient::rational(if rng.random_bool(0.3) { -v } else { v })
        })
        .collect()
}

fn jacobian_criterion(cfg: &RunConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 5);
    let mut violations = Vec::new();
    let mut checks = 0;
    let mut seen = std::collections::BTreeSet::new();
    for n in 3..=7 {
        for fam in ["A", "B"] {
            let grp = if fam == "A" { GroupDescriptor::a(n - 1)? } else { GroupDescriptor::b(n)? };
            let basis = basic_invariants(&grp, Variant::PowerSum)?;
            let arr = Arrangement::new(&grp)?;
            let grads: Vec<Vec<Polynomial>> = basis.polys.iter().map(|p| p.gradient()).collect();
            for _ in 0..500 {
                let p = random_rational_point(&mut rng, n);
                let sd = arr.stratum_dim_exact(&p)?;
                seen.insert((fam, n, sd));
                let rows: Vec<Vec<Coefficient>> =
                    grads.iter().map(|g| g.iter().map(|d| d.eval_exact(&p)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
                for k in 0..n {
                    let rank = crate::linalg::rank(&rows[..=k]);
                    checks += 1;
                    if (rank <= k) != (sd <= k) {
                        violations.push(format!("{fam} n={n} k={k} rank {rank} stratum {sd}"));
                    }
                }
            }
        }
    }
    let ok = violations.is_empty();
    let mut detail = format!("{checks} (point, k) checks, {} violations, {} (family, n, stratum) cells hit", violations.len(), seen.len());
    if !ok {
        detail.push_str(&format!("; first: {}", violations[0]));
    }
    Ok((ok, detail))
}

/// `a(y) * y_j + b(y)` with `a`, `b` free of `y_j` and of degree at most 2.
fn random_linear_in_one(rng: &mut ChaCha8Rng, k: usize) -> Polynomial {
    let j = rng.random_range(0..k);
    let others: Vec<usize> = (0..k).filter(|&i| i != j).collect();
    let part = |rng: &mut ChaCha8Rng, terms: usize| {
        let mut p = Polynomial::constant(k, Coefficient::from_frac(rng.random_range(-4..=4), rng.random_range(1..=3)));
        for _ in 0..terms {
            if others.is_empty() {
                break;
            }
            let mut e = vec![0u32; k];
            for _ in 0..rng.random_range(1..=2) {
                e[others[rng.random_range(0..others.len())]] += 1;
            }
            p = &p + &Polynomial::monomial(k, e, Coefficient::from_frac(rng.random_range(-4..=4), rng.random_range(1..=3)));
        }
        p
    };
    let a = part(rng, 1);
    let b = part(rng, 2);
    let a = if a.is_zero() { Polynomial::one(k) } else { a };
    &(&a * &Polynomial::var(k, j)) + &b
}

fn hyperplane_zeros(cfg: &RunConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 6);
    let mut agree = 0;
    let mut zeros = 0;
    let mut first = None;
    let mut total = 0;
    for name in ["B3", "A3"] {
        let grp = g(name)?;
        let basis = default_basis(&grp)?;
        for _ in 0..50 {
            let k = rng.random_range(1..=basis.len());
            let f = random_linear_in_one(&mut rng, k);
            let obj = SparseObjective::new(f.clone(), basis.clone())?;
            let z = find_zero(&restrict_to_hyperplanes(&obj)?, cfg);
            let o = zero_oracle(&obj, cfg)?;
            total += 1;
            if z.found == o.found {
                agree += 1;
            } else if first.is_none() {
                first = Some(format!("{name} F={f}: restriction {} oracle {}", z.found, o.found));
            }
            zeros += usize::from(o.found);
        }
    }
    let mut detail = format!("{agree}/{total} agree ({zeros} with zeros)");
    if let Some(f) = first {
        detail.push_str(&format!("; first disagreement: {f}"));
    }
    Ok((agree == total, detail))
}

fn h4(cfg: &RunConfig) -> Check {
    let ev = h4_evidence(cfg)?;
    let parts: Vec<String> = ev
        .extremizers
        .iter()
        .map(|e| {
            format!(
                "{:?} {:.6} stratum {} d(e1) {:.1e} d(e12) {:.1e}",
                e.sense, e.value, e.stratum_dim, e.distance_to_e1, e.distance_to_e12
            )
        })
        .collect();
    Ok((ev.located, parts.join("; ")))
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> Result<MatrixPoint> {
    let mut e = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random_range(-1.0..1.0);
            e[i][j] = v;
            e[j][i] = -v;
        }
    }
    MatrixPoint::new(LieKind::So, e)
}

fn lie_adapter(cfg: &RunConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 8);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let n = if i % 2 == 0 { 4 } else { 5 };
        // coordinates t2..tn; t2 is fixed by the sphere, so use t3..tn
        let k = rng.random_range(1..=n - 2);
        let inner = random_objective(&mut rng, k);
        let f = inner.compose(&(0..k).map(|c| Polynomial::var(n - 1, c + 1)).collect::<Vec<_>>())?;
        let sense = if rng.random_bool(0.5) { Sense::Min } else { Sense::Max };
        let red = lie_reduce(LieKind::Sl, n, &f, &Constraint::Sphere(1.0), sense)?;
        let sol = solve_on_strata(&red.problem, cfg)?;
        let oracle = matrix_oracle(LieKind::Sl, n, &f, &Constraint::Sphere(1.0), sense, cfg)?;
        let diff = (sol.value - oracle.value).abs();
        if !(diff <= 1e-6) || sol.status != Status::Solved {
            failures.push(format!("sl{n} {sense:?} F={f}: strata {} matrices {}", sol.value, oracle.value));
        } else {
            worst = worst.max(diff);
        }
    }
    let mut pf_worst = 0.0f64;
    for i in 0..100 {
        let a = random_skew(&mut rng, if i % 2 == 0 { 4 } else { 6 })?;
        let pf = pfaffian(&a)?;
        let det = DMatrix::from_fn(a.n, a.n, |r, c| a.entries[r][c]).determinant();
        pf_worst = pf_worst.max((pf * pf - det).abs());
    }
    let ok = failures.is_empty() && pf_worst <= 1e-8;
    let mut detail = format!("{}/20 objectives agree (worst gap {worst:.2e}), max |pf^2 - det| {pf_worst:.2e}", 20 - failures.len());
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    Ok((ok, detail))
}

fn sanity() -> Check {
    let mut bad = Vec::new();
    let mut groups: Vec<String> = (1..=4).map(|n| format!("A{n}")).collect();
    groups.extend((2..=4).map(|n| format!("B{n}")));
    groups.extend((2..=4).map(|n| format!("D{n}")));
    groups.extend((3..=10).map(|m| format!("I2({m})")));
    groups.extend(["F4", "H3", "H4"].map(String::from));
    for s in &groups {
        let grp = g(s)?;
        let order = if s.starts_with("I2") { FiniteGroup::numeric(&grp)?.order() } else { FiniteGroup::exact(&grp)?.order() };
        if order as u128 != grp.order() {
            bad.push(format!("|{s}| = {order}, expected {}", grp.order()));
        }
    }
    let mut expected: Vec<(String, usize)> = (2..=8).map(|n| (format!("B{n}"), n * n)).collect();
    expected.extend((4..=8).map(|n| (format!("D{n}"), n * (n - 1))));
    expected.extend([("F4".to_string(), 24), ("H3".to_string(), 15), ("H4".to_string(), 60)]);
    for (s, want) in &expected {
        let got = Arrangement::new(&g(s)?)?.hyperplane_count();
        if got != *want {
            bad.push(format!("{s} has {got} hyperplanes, expected {want}"));
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("{} orders and {} hyperplane counts match", groups.len(), expected.len()) } else { bad.join("; ") }))
}
