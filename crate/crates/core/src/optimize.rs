//! Local solvers for smooth objectives: Riemannian Newton on spheres,
//! saddle-free Newton in the open, an augmented Lagrangian for equality and
//! inequality constraints, and Levenberg-Marquardt for feasibility.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::poly::{PolyFunction, Polynomial};

/// A twice differentiable function on `R^dim`.
pub trait Smooth: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    /// Value, gradient and Hessian.
    fn eval2(&self, x: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>);
}

/// `F(p_1(x), ..., p_k(x))`, differentiated by the chain rule so that `F`
/// is never expanded in `x`.
#[derive(Debug, Clone)]
pub struct Composite {
    outer: PolyFunction,
    inner: Vec<PolyFunction>,
    dim: usize,
}

impl Composite {
    pub fn new(outer: &Polynomial, inner: &[Polynomial]) -> Result<Self> {
        if outer.nvars() != inner.len() {
            return Err(Error::ArityMismatch { expected: outer.nvars(), got: inner.len() });
        }
        let dim = inner.first().map_or(0, Polynomial::nvars);
        if let Some(p) = inner.iter().find(|p| p.nvars() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.nvars() });
        }
        Ok(Composite { outer: PolyFunction::new(outer), inner: inner.iter().map(PolyFunction::new).collect(), dim })
    }

    /// The polynomial itself.
    pub fn direct(p: &Polynomial) -> Self {
        Self::new(&Polynomial::var(1, 0), std::slice::from_ref(p)).expect("one inner polynomial")
    }

    /// Values of the inner polynomials.
    pub fn inner_values(&self, x: &[f64]) -> Vec<f64> {
        self.inner.iter().map(|p| p.value.eval(x)).collect()
    }
}

impl Smooth for Composite {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.outer.value.eval(&self.inner_values(x))
    }

    fn eval2(&self, x: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>) {
        let n = self.dim;
        let k = self.inner.len();
        let y = self.inner_values(x);
        let gf: Vec<f64> = self.outer.gradient.iter().map(|g| g.eval(&y)).collect();
        let mut jac = DMatrix::<f64>::zeros(k, n);
        let mut hess = DMatrix::<f64>::zeros(n, n);
        for (i, p) in self.inner.iter().enumerate() {
            for (j, g) in p.gradient.iter().enumerate() {
                jac[(i, j)] = g.eval(x);
            }
            if gf[i] != 0.0 {
                for a in 0..n {
                    for b in a..n {
                        let h = gf[i] * p.hessian[a][b].eval(x);
                        hess[(a, b)] += h;
                        if a != b {
                            hess[(b, a)] += h;
                        }
                    }
                }
            }
        }
        let hf = DMatrix::from_fn(k, k, |a, b| self.outer.hessian[a][b].eval(&y));
        let grad = jac.transpose() * DVector::from_vec(gf);
        hess += jac.transpose() * hf * &jac;
        (self.outer.value.eval(&y), grad, hess)
    }
}

/// `f(M u)` for a fixed matrix `M`.
pub struct Linear<'a> {
    pub f: &'a dyn Smooth,
    pub m: DMatrix<f64>,
}

impl Linear<'_> {
    pub fn map(&self, u: &[f64]) -> Vec<f64> {
        (&self.m * DVector::from_column_slice(u)).iter().copied().collect()
    }
}

impl Smooth for Linear<'_> {
    fn dim(&self) -> usize {
        self.m.ncols()
    }

    fn value(&self, u: &[f64]) -> f64 {
        self.f.value(&self.map(u))
    }

    fn eval2(&self, u: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>) {
        let (v, g, h) = self.f.eval2(&self.map(u));
        let mt = self.m.transpose();
        (v, &mt * g, &mt * h * &self.m)
    }
}

/// `-f`.
pub struct Negated<'a>(pub &'a dyn Smooth);

impl Smooth for Negated<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        -self.0.value(x)
    }

    fn eval2(&self, x: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>) {
        let (v, g, h) = self.0.eval2(x);
        (-v, -g, -h)
    }
}

/// `f - c`.
pub struct Shifted<'a>(pub &'a dyn Smooth, pub f64);

impl Smooth for Shifted<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.0.value(x) - self.1
    }

    fn eval2(&self, x: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>) {
        let (v, g, h) = self.0.eval2(x);
        (v - self.1, g, h)
    }
}

/// Outcome of one local solve.
#[derive(Debug, Clone)]
pub struct Local {
    pub x: Vec<f64>,
    pub value: f64,
    /// Stationarity measure at `x` (projected gradient norm).
    pub stationarity: f64,
    /// Largest constraint violation at `x`.
    pub violation: f64,
    /// The iterates left every bounded region.
    pub diverged: bool,
}

const MAX_ITER: usize = 400;
const DIVERGENCE: f64 = 1e8;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn add_scaled(x: &[f64], d: &DVector<f64>, a: f64) -> Vec<f64> {
    x.iter().zip(d.iter()).map(|(xi, di)| xi + a * di).collect()
}

/// Saddle-free Newton direction `-|H|^{-1} g` with eigenvalues floored.
fn newton_direction(g: &DVector<f64>, h: &DMatrix<f64>) -> DVector<f64> {
    let eig = h.clone().symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-10 * top.max(1e-300) + 1e-300;
    let vt_g = eig.eigenvectors.transpose() * g;
    let scaled = DVector::from_iterator(vt_g.len(), vt_g.iter().zip(eig.eigenvalues.iter()).map(|(c, l)| c / l.abs().max(floor)));
    -(&eig.eigenvectors * scaled)
}

/// Unconstrained local minimization.
pub fn minimize_free(f: &dyn Smooth, x0: &[f64]) -> Local {
    let mut x = x0.to_vec();
    let (mut v, mut g, mut h) = f.eval2(&x);
    let mut diverged = false;
    for _ in 0..MAX_ITER {
        let gn = g.norm();
        if !v.is_finite() || gn <= 1e-13 * (1.0 + v.abs()) {
            break;
        }
        let mut d = newton_direction(&g, &h);
        let mut slope = g.dot(&d);
        if !(slope < 0.0) || !d.iter().all(|c| c.is_finite()) {
            d = -g.clone();
            slope = -gn * gn;
        }
        let cap = 10.0 * (1.0 + norm(&x));
        let mut a = (cap / d.norm()).min(1.0);
        let mut moved = false;
        while a > 1e-16 {
            let cand = add_scaled(&x, &d, a);
            let cv = f.value(&cand);
            if cv <= v + 1e-4 * a * slope {
                x = cand;
                moved = true;
                break;
            }
            a *= 0.5;
        }
        if !moved {
            break;
        }
        (v, g, h) = f.eval2(&x);
        if norm(&x) > DIVERGENCE {
            diverged = true;
            break;
        }
    }
    Local { stationarity: g.norm(), x, value: v, violation: 0.0, diverged }
}

fn retract(u: &[f64], r: f64) -> Vec<f64> {
    let n = norm(u);
    u.iter().map(|c| c * r / n).collect()
}

/// Local minimization on the sphere `|u| = r` by Riemannian Newton steps
/// with a gradient fallback.
pub fn minimize_sphere(f: &dyn Smooth, r: f64, u0: &[f64]) -> Local {
    let d = f.dim();
    let mut u = if norm(u0) > 0.0 { retract(u0, r) } else { (0..d).map(|i| if i == 0 { r } else { 0.0 }).collect() };
    let mut rg_norm = f64::INFINITY;
    let (mut v, _, _) = f.eval2(&u);
    for _ in 0..MAX_ITER {
        let (val, g, h) = f.eval2(&u);
        v = val;
        let uv = DVector::from_column_slice(&u);
        let lam = g.dot(&uv) / (r * r);
        let rg = &g - lam * &uv;
        rg_norm = rg.norm();
        if rg_norm * r <= 1e-13 * (1.0 + v.abs()) {
            break;
        }
        // tangent Newton step from the bordered system
        let mut k = DMatrix::<f64>::zeros(d + 1, d + 1);
        k.view_mut((0, 0), (d, d)).copy_from(&(&h - lam * DMatrix::identity(d, d)));
        for i in 0..d {
            k[(i, d)] = u[i];
            k[(d, i)] = u[i];
        }
        let mut rhs = DVector::<f64>::zeros(d + 1);
        rhs.rows_mut(0, d).copy_from(&(-&rg));
        let newton = k.lu().solve(&rhs).map(|s| s.rows(0, d).into_owned());
        let hl = &h - lam * DMatrix::identity(d, d);
        let mut dir = match newton {
            Some(s) if s.iter().all(|c| c.is_finite()) && s.dot(&rg) < 0.0 && s.dot(&(&hl * &s)) > 0.0 => s,
            _ => -rg.clone(),
        };
        let mut slope = rg.dot(&dir);
        if !(slope < 0.0) {
            dir = -rg.clone();
            slope = -rg_norm * rg_norm;
        }
        let mut a = (r / dir.norm()).min(1.0);
        let mut moved = false;
        while a > 1e-16 {
            let cand = retract(&add_scaled(&u, &dir, a), r);
            if f.value(&cand) <= v + 1e-4 * a * slope {
                u = cand;
                moved = true;
                break;
            }
            a *= 0.5;
        }
        if !moved {
            break;
        }
    }
    let violation = (norm(&u) - r).abs();
    Local { x: u, value: v, stationarity: rg_norm, violation, diverged: false }
}

/// `f` plus augmented Lagrangian terms for `c_i = 0` and `g_j ≥ 0`.
struct AugLag<'a> {
    f: &'a dyn Smooth,
    eqs: &'a [&'a dyn Smooth],
    ineqs: &'a [&'a dyn Smooth],
    lam: Vec<f64>,
    mu: Vec<f64>,
    rho: f64,
}

impl Smooth for AugLag<'_> {
    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let mut v = self.f.value(x);
        for (c, l) in self.eqs.iter().zip(&self.lam) {
            let cv = c.value(x);
            v += l * cv + 0.5 * self.rho * cv * cv;
        }
        for (g, m) in self.ineqs.iter().zip(&self.mu) {
            let s = (m - self.rho * g.value(x)).max(0.0);
            v += (s * s - m * m) / (2.0 * self.rho);
        }
        v
    }

    fn eval2(&self, x: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>) {
        let (mut v, mut grad, mut hess) = self.f.eval2(x);
        for (c, l) in self.eqs.iter().zip(&self.lam) {
            let (cv, cg, ch) = c.eval2(x);
            let w = l + self.rho * cv;
            v += l * cv + 0.5 * self.rho * cv * cv;
            grad += w * &cg;
            hess += w * ch + self.rho * &cg * cg.transpose();
        }
        for (g, m) in self.ineqs.iter().zip(&self.mu) {
            let (gv, gg, gh) = g.eval2(x);
            let s = (m - self.rho * gv).max(0.0);
            v += (s * s - m * m) / (2.0 * self.rho);
            if s > 0.0 {
                grad -= s * &gg;
                hess += -s * gh + self.rho * &gg * gg.transpose();
            }
        }
        (v, grad, hess)
    }
}

fn violation(eqs: &[&dyn Smooth], ineqs: &[&dyn Smooth], x: &[f64]) -> f64 {
    let e = eqs.iter().map(|c| c.value(x).abs()).fold(0.0, f64::max);
    ineqs.iter().map(|g| (-g.value(x)).max(0.0)).fold(e, f64::max)
}

/// Newton on the KKT system of `f` with the given equalities. Returns the
/// polished point when it reduces the violation without leaving the basin.
fn kkt_polish(f: &dyn Smooth, eqs: &[&dyn Smooth], x0: &[f64], lam0: &[f64]) -> Option<Vec<f64>> {
    let n = f.dim();
    let m = eqs.len();
    let mut x = x0.to_vec();
    let mut lam = lam0.to_vec();
    let kkt_res = |x: &[f64], lam: &[f64]| -> (f64, DVector<f64>, DMatrix<f64>) {
        let (_, g, h) = f.eval2(x);
        let mut grad = g;
        let mut hl = h;
        let mut a = DMatrix::<f64>::zeros(m, n);
        let mut c = DVector::<f64>::zeros(m);
        for (i, e) in eqs.iter().enumerate() {
            let (cv, cg, ch) = e.eval2(x);
            grad += lam[i] * &cg;
            hl += lam[i] * ch;
            a.row_mut(i).copy_from(&cg.transpose());
            c[i] = cv;
        }
        let mut k = DMatrix::<f64>::zeros(n + m, n + m);
        k.view_mut((0, 0), (n, n)).copy_from(&hl);
        k.view_mut((0, n), (n, m)).copy_from(&a.transpose());
        k.view_mut((n, 0), (m, n)).copy_from(&a);
        let mut r = DVector::<f64>::zeros(n + m);
        r.rows_mut(0, n).copy_from(&grad);
        r.rows_mut(n, m).copy_from(&c);
        (r.norm(), r, k)
    };
    let (mut best, mut r, mut k) = kkt_res(&x, &lam);
    let start = best;
    for _ in 0..30 {
        if best < 1e-14 {
            break;
        }
        let Some(step) = k.clone().lu().solve(&(-&r)) else { break };
        if !step.iter().all(|s| s.is_finite()) || step.rows(0, n).norm() > 1e-2 * (1.0 + norm(&x)) {
            break;
        }
        let nx = add_scaled(&x, &step.rows(0, n).into_owned(), 1.0);
        let nl: Vec<f64> = lam.iter().zip(step.rows(n, m).iter()).map(|(l, s)| l + s).collect();
        let (nb, nr, nk) = kkt_res(&nx, &nl);
        if nb >= best {
            break;
        }
        (x, lam, best, r, k) = (nx, nl, nb, nr, nk);
    }
    (best < start).then_some(x)
}

/// Local minimization subject to `c_i(x) = 0` and `g_j(x) ≥ 0`.
pub fn minimize_constrained(f: &dyn Smooth, eqs: &[&dyn Smooth], ineqs: &[&dyn Smooth], x0: &[f64]) -> Local {
    let mut al = AugLag { f, eqs, ineqs, lam: vec![0.0; eqs.len()], mu: vec![0.0; ineqs.len()], rho: 10.0 };
    let mut x = x0.to_vec();
    let mut viol = violation(eqs, ineqs, &x);
    let mut diverged = false;
    for _ in 0..40 {
        let loc = minimize_free(&al, &x);
        x = loc.x;
        if loc.diverged {
            diverged = true;
            break;
        }
        let nv = violation(eqs, ineqs, &x);
        for (l, c) in al.lam.iter_mut().zip(eqs) {
            *l += al.rho * c.value(&x);
        }
        for (m, g) in al.mu.iter_mut().zip(ineqs) {
            *m = (*m - al.rho * g.value(&x)).max(0.0);
        }
        if nv < 1e-12 && loc.stationarity < 1e-8 * (1.0 + loc.value.abs()) {
            break;
        }
        if nv > 0.25 * viol {
            al.rho = (al.rho * 10.0).min(1e10);
        }
        viol = nv;
    }
    if !diverged {
        let mut active: Vec<&dyn Smooth> = eqs.to_vec();
        let mut mult = al.lam.clone();
        for (g, m) in ineqs.iter().zip(&al.mu) {
            if *m > 0.0 {
                active.push(*g);
                // the constraint enters the Lagrangian as -mu g
                mult.push(-m);
            }
        }
        if !active.is_empty() {
            if let Some(p) = kkt_polish(f, &active, &x, &mult) {
                if violation(eqs, ineqs, &p) <= violation(eqs, ineqs, &x).max(1e-14) {
                    x = p;
                }
            }
        }
    }
    let (value, grad, _) = f.eval2(&x);
    Local { value, stationarity: grad.norm(), violation: violation(eqs, ineqs, &x), x, diverged }
}

/// Levenberg-Marquardt on the residuals `r_i(x)`; `value` is `max |r_i|`.
pub fn least_squares(residuals: &[&dyn Smooth], x0: &[f64]) -> Local {
    let n = x0.len();
    let m = residuals.len();
    let mut x = x0.to_vec();
    let eval = |x: &[f64]| -> (DVector<f64>, DMatrix<f64>) {
        let mut r = DVector::<f64>::zeros(m);
        let mut j = DMatrix::<f64>::zeros(m, n);
        for (i, f) in residuals.iter().enumerate() {
            let (v, g, _) = f.eval2(x);
            r[i] = v;
            j.row_mut(i).copy_from(&g.transpose());
        }
        (r, j)
    };
    let (mut r, mut j) = eval(&x);
    let mut cost = r.norm_squared();
    let mut damping = 1e-3;
    for _ in 0..MAX_ITER {
        if cost < 1e-30 {
            break;
        }
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let scale = jtj.diagonal().iter().fold(1e-12f64, |a, b| a.max(*b));
        let mut improved = false;
        while damping < 1e12 {
            let a = &jtj + DMatrix::identity(n, n) * (damping * scale);
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&g))) else {
                damping *= 10.0;
                continue;
            };
            let nx = add_scaled(&x, &step, 1.0);
            let (nr, nj) = eval(&nx);
            let nc = nr.norm_squared();
            if nc.is_finite() && nc < cost {
                (x, r, j, cost) = (nx, nr, nj, nc);
                damping = (damping / 3.0).max(1e-15);
                improved = true;
                break;
            }
            damping *= 4.0;
        }
        if !improved || norm(&x) > DIVERGENCE {
            break;
        }
    }
    let worst = r.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    Local { value: worst, stationarity: (j.transpose() * &r).norm(), violation: worst, diverged: norm(&x) > DIVERGENCE, x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_in;

    fn comp(text: &str, n: usize) -> Composite {
        Composite::direct(&parse_in(text, "x", n).unwrap())
    }

    #[test]
    fn chain_rule_matches_expansion() {
        let inner = [parse_in("x1^2 + x2", "x", 2).unwrap(), parse_in("x1*x2^3", "x", 2).unwrap()];
        let outer = parse_in("y1^2*y2 - 3*y2", "y", 2).unwrap();
        let c = Composite::new(&outer, &inner).unwrap();
        let e = Composite::direct(&outer.compose(&inner).unwrap());
        let x = [0.7, -1.3];
        let (v1, g1, h1) = c.eval2(&x);
        let (v2, g2, h2) = e.eval2(&x);
        assert!((v1 - v2).abs() < 1e-12);
        assert!((g1 - g2).norm() < 1e-10);
        assert!((h1 - h2).norm() < 1e-10);
    }

    #[test]
    fn sphere_and_free() {
        // min of x1 + 2 x2 on the unit circle is -sqrt(5)
        let f = comp("x1 + 2*x2", 2);
        let loc = minimize_sphere(&f, 1.0, &[1.0, 0.3]);
        assert!((loc.value + 5f64.sqrt()).abs() < 1e-12);
        let q = comp("(x1 - 1)^2 + 3*(x2 + 2)^2 + x1^4", 2);
        let loc = minimize_free(&q, &[5.0, 5.0]);
        assert!(loc.stationarity < 1e-9);
        let u = comp("-x1^2", 1);
        assert!(minimize_free(&u, &[0.5]).diverged);
    }

    #[test]
    fn constrained_and_least_squares() {
        // min x1 + x2 subject to x1^2 + x2^2 = 2 and x1 >= -0.5
        let f = comp("x1 + x2", 2);
        let c = comp("x1^2 + x2^2 - 2", 2);
        let g = comp("x1 + 1/2", 2);
        let loc = minimize_constrained(&f, &[&c], &[&g], &[1.0, 0.0]);
        let expect = -0.5 - (2.0f64 - 0.25).sqrt();
        assert!((loc.value - expect).abs() < 1e-9, "{}", loc.value);
        assert!(loc.violation < 1e-10);

        let r1 = comp("x1^2 + x2^2 - 1", 2);
        let r2 = comp("x1 - x2", 2);
        let loc = least_squares(&[&r1, &r2], &[2.0, 0.1]);
        assert!(loc.value < 1e-12);
        let bad = comp("x1^2 + 1", 2);
        assert!(least_squares(&[&bad], &[1.0, 1.0]).value > 0.5);
    }
}
