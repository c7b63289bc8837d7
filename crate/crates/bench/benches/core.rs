use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use orbitstrata::arrangement::{flats, jacobian_rank_exact, Arrangement};
use orbitstrata::coxeter::{reynolds, FiniteGroup, RootSystem};
use orbitstrata::invariants::{basic_invariants, Variant};
use orbitstrata::parabolic::table1;
use orbitstrata::reduce::{brute_oracle, solve_on_strata};
use orbitstrata::{Coefficient, Polynomial, RunConfig};
use orbitstrata_bench::{group, sphere_problem};

fn groups(c: &mut Criterion) {
    let f4 = group("F4");
    c.bench_function("generate F4", |b| b.iter(|| FiniteGroup::exact(black_box(&f4)).unwrap().order()));
    let e8 = group("E8");
    c.bench_function("table1 E8", |b| b.iter(|| table1(black_box(&e8)).unwrap()));
}

fn invariants(c: &mut Criterion) {
    let h3 = group("H3");
    let x6 = Polynomial::var(3, 0).try_pow(6).unwrap();
    c.bench_function("reynolds H3 x1^6", |b| b.iter(|| reynolds(&h3, black_box(&x6)).unwrap()));
    let b5 = group("B5");
    let basis = basic_invariants(&b5, Variant::PowerSum).unwrap();
    let p: Vec<Coefficient> = [1, 1, 2, 3, 0].iter().map(|&v| Coefficient::from_int(v)).collect();
    c.bench_function("exact jacobian rank B5", |b| b.iter(|| jacobian_rank_exact(&basis.polys, black_box(&p), 4).unwrap()));
}

fn arrangements(c: &mut Criterion) {
    let rs = RootSystem::exact(&group("H4")).unwrap();
    c.bench_function("H4 flats of dim 2", |b| b.iter(|| flats(black_box(&rs), 2).len()));
    let arr = Arrangement::new(&group("E8")).unwrap();
    let p = [1.0, 1.0, 0.0, 0.0, 2.0, 2.0, 3.0, 0.5];
    c.bench_function("stratum_dim E8", |b| b.iter(|| arr.stratum_dim(black_box(&p)).unwrap()));
}

fn solving(c: &mut Criterion) {
    let cfg = RunConfig::default();
    let p = sphere_problem("B4", "y2 - y3 + y1*y2", 3);
    let mut g = c.benchmark_group("solve B4");
    g.sample_size(10);
    g.bench_function("strata", |b| b.iter(|| solve_on_strata(black_box(&p), &cfg).unwrap().value));
    g.bench_function("oracle", |b| b.iter(|| brute_oracle(black_box(&p), &cfg).unwrap().value));
    g.finish();
}

criterion_group!(benches, groups, invariants, arrangements, solving);
criterion_main!(benches);
