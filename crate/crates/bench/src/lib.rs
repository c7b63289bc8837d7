//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use orbitstrata::invariants::{basic_invariants, SparseObjective, Variant};
use orbitstrata::reduce::{Constraint, Problem, Sense};
use orbitstrata::GroupDescriptor;

pub fn group(s: &str) -> GroupDescriptor {
    s.parse().expect("catalog group")
}

/// `F(y_1..y_k)` over the default basic set, minimized on the unit sphere.
pub fn sphere_problem(g: &str, f: &str, k: usize) -> Problem {
    let g = group(g);
    let b = Arc::new(basic_invariants(&g, Variant::default_for(&g).expect("variant")).expect("basis"));
    let obj = SparseObjective::parse(f, k, b).expect("objective");
    Problem::new(obj, Constraint::Sphere(1.0), Sense::Min)
}
