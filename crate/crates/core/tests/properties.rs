use nalgebra::DMatrix;
use proptest::prelude::*;

use orbitstrata::arrangement::{jacobian_rank_exact, patterns, Arrangement, PatternFamily};
use orbitstrata::coxeter::{is_invariant, reynolds, FiniteGroup};
use orbitstrata::invariants::{basic_invariants, newton_rewrite, Variant};
use orbitstrata::lie::{pfaffian, trace_powers, LieKind, MatrixPoint};
use orbitstrata::reduce::halton_starts;
use orbitstrata::{Coefficient, GroupDescriptor, Polynomial};

fn poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5, 1i64..=4), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(nvars), |acc, (e, a, b)| &acc + &Polynomial::monomial(nvars, e, Coefficient::from_frac(a, b)))
    })
}

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5)
        .prop_map(|(a, b, c, d)| &Coefficient::from_frac(a, b) + &(&Coefficient::from_frac(c, d) * &Coefficient::sqrt5()))
}

fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n)
}

fn g(s: &str) -> GroupDescriptor {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_operations_commute_with_evaluation(p in poly(3), q in poly(3), x in point(3)) {
        let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        let scale = 1.0 + pv.abs() * qv.abs() + pv.abs() + qv.abs();
        prop_assert!(((&p + &q).eval(&x).unwrap() - (pv + qv)).abs() <= 1e-9 * scale);
        prop_assert!(((&p * &q).eval(&x).unwrap() - pv * qv).abs() <= 1e-9 * scale);
    }

    #[test]
    fn composition_is_substitution(p in poly(2), a in poly(3), b in poly(3), x in point(3)) {
        let c = p.compose(&[a.clone(), b.clone()]).unwrap();
        let inner = [a.eval(&x).unwrap(), b.eval(&x).unwrap()];
        let want = p.eval(&inner).unwrap();
        prop_assert!((c.eval(&x).unwrap() - want).abs() <= 1e-8 * (1.0 + want.abs()));
    }

    #[test]
    fn quadratic_field_inverses(c in coefficient()) {
        prop_assume!(!c.is_zero());
        let inv = c.inverse().unwrap();
        prop_assert!((&c * &inv).is_one());
        prop_assert_eq!(c.conjugate().conjugate(), c.clone());
        prop_assert_eq!(&c * &c.conjugate(), Coefficient::rational(c.norm()));
    }

    #[test]
    fn newton_rewrite_round_trips(f in poly(3)) {
        // any polynomial in power sums is symmetric; rewriting it gives back F
        let n = 3;
        let s: Vec<Polynomial> = (1..=n as u32).map(|k| Polynomial::power_sum(n, k)).collect();
        let sym = f.compose(&s).unwrap();
        let back = newton_rewrite(&sym, n).unwrap();
        prop_assert_eq!(back.compose(&s).unwrap(), sym);
    }

    #[test]
    fn reynolds_images_are_invariant(e in prop::collection::vec(0u32..4, 3)) {
        let b3 = g("B3");
        let m = Polynomial::monomial(3, e, Coefficient::one());
        let r = reynolds(&b3, &m).unwrap();
        let gens = FiniteGroup::exact(&b3).unwrap().generators();
        prop_assert!(is_invariant(&r, &gens).unwrap());
    }

    #[test]
    fn stratum_dim_is_constant_on_orbits(x in prop::collection::vec(-2i64..=2, 4), i in 0usize..384) {
        let b4 = g("B4");
        let grp = FiniteGroup::exact(&b4).unwrap();
        let arr = Arrangement::new(&b4).unwrap();
        let p: Vec<Coefficient> = x.iter().map(|&v| Coefficient::from_int(v)).collect();
        let w = grp.matrix(i % grp.order());
        let q: Vec<Coefficient> = w.iter().map(|row| row.iter().zip(&p).fold(Coefficient::zero(), |s, (a, b)| &s + &(a * b))).collect();
        prop_assert_eq!(arr.stratum_dim_exact(&p).unwrap(), arr.stratum_dim_exact(&q).unwrap());
    }

    #[test]
    fn jacobian_rank_detects_strata(x in prop::collection::vec(-2i64..=2, 5), k in 0usize..5) {
        for grp in [GroupDescriptor::a(4).unwrap(), g("B5")] {
            let basis = basic_invariants(&grp, Variant::PowerSum).unwrap();
            let p: Vec<Coefficient> = x.iter().map(|&v| Coefficient::from_int(v)).collect();
            let rank = jacobian_rank_exact(&basis.polys, &p, k).unwrap();
            let sd = Arrangement::new(&grp).unwrap().stratum_dim_exact(&p).unwrap();
            prop_assert_eq!(rank <= k, sd <= k);
        }
    }

    #[test]
    fn pattern_points_lie_in_their_stratum(t in prop::collection::vec(-2.0f64..2.0, 3), fam in 0usize..3) {
        let grp = [GroupDescriptor::a(4).unwrap(), g("B5"), g("D5")][fam].clone();
        let arr = Arrangement::new(&grp).unwrap();
        let n = grp.ambient_dim;
        for p in patterns(PatternFamily::of(&grp).unwrap(), n, 3).unwrap() {
            let j = p.free_vars();
            let x = p.embed(&t[..j]).unwrap();
            prop_assert!(arr.stratum_dim(&x).unwrap() <= 3, "{} at {:?}", p, x);
        }
    }

    #[test]
    fn pfaffian_squares_to_the_determinant(v in prop::collection::vec(-1.0f64..1.0, 15)) {
        let n = 6;
        let mut e = vec![vec![0.0; n]; n];
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = it.next().unwrap();
                e[i][j] = x;
                e[j][i] = -x;
            }
        }
        let a = MatrixPoint::new(LieKind::So, e).unwrap();
        let pf = pfaffian(&a).unwrap();
        prop_assert!((pf * pf - a.matrix().determinant()).abs() < 1e-10);
    }

    #[test]
    fn traces_of_diagonal_matrices_are_power_sums(l in point(4)) {
        let a = MatrixPoint::diagonal(&l);
        let mean = l.iter().sum::<f64>() / 4.0;
        let t = trace_powers(&a, &[2, 3, 4]).unwrap();
        for (k, tk) in [2, 3, 4].iter().zip(t) {
            let s: f64 = l.iter().map(|x| (x - mean).powi(*k)).sum();
            prop_assert!((tk - s).abs() < 1e-10);
        }
        prop_assert!(a.matrix().trace().abs() <= 1e-12);
    }

    #[test]
    fn halton_starts_fill_the_cube(j in 1usize..6, seed in any::<u64>()) {
        let s = halton_starts(j, 20, seed);
        prop_assert_eq!(s.len(), 20);
        prop_assert!(s.iter().all(|p| p.len() == j && p.iter().all(|v| (-1.0..=1.0).contains(v))));
        let m = DMatrix::from_fn(20, j, |r, c| s[r][c]);
        prop_assert!(m.rank(1e-9) == j);
    }
}
