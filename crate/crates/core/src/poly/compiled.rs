//! Floating-point compiled form of a [`Polynomial`] for hot evaluation loops.

use super::Polynomial;

#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    max_exp: Vec<u32>,
    terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &Polynomial) -> Self {
        let nvars = p.nvars();
        let terms: Vec<(f64, Vec<(usize, u32)>)> = p
            .terms()
            .map(|(m, c)| {
                let factors = m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
                (c.to_f64(), factors)
            })
            .collect();
        let max_exp = (0..nvars).map(|i| p.degree_in(i)).collect();
        CompiledPoly { nvars, max_exp, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        let mut acc = 0.0;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, e) in factors {
                t *= pow(x[i], e);
            }
            acc += t;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self, var: usize) -> u32 {
        self.max_exp[var]
    }
}

#[inline]
fn pow(x: f64, e: u32) -> f64 {
    match e {
        1 => x,
        2 => x * x,
        3 => x * x * x,
        _ => x.powi(e as i32),
    }
}

/// A polynomial together with its compiled gradient and Hessian.
#[derive(Clone, Debug)]
pub struct PolyFunction {
    pub value: CompiledPoly,
    pub gradient: Vec<CompiledPoly>,
    pub hessian: Vec<Vec<CompiledPoly>>,
}

impl PolyFunction {
    pub fn new(p: &Polynomial) -> Self {
        let grad = p.gradient();
        let hessian = grad.iter().map(|g| g.gradient().iter().map(CompiledPoly::new).collect()).collect();
        PolyFunction { value: CompiledPoly::new(p), gradient: grad.iter().map(CompiledPoly::new).collect(), hessian }
    }

    pub fn nvars(&self) -> usize {
        self.value.nvars()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_indexed;

    #[test]
    fn agrees_with_exact_evaluation() {
        let p = parse_indexed("3*x1^4*x2 - x2^3 + 1/3*x1 - 7", "x", 0).unwrap();
        let c = CompiledPoly::new(&p);
        for pt in [[0.3, -1.2], [2.0, 0.5], [0.0, 0.0]] {
            assert!((c.eval(&pt) - p.eval(&pt).unwrap()).abs() < 1e-12);
        }
        let f = PolyFunction::new(&p);
        assert_eq!(f.hessian[0][1].eval(&[1.0, 1.0]), 12.0);
    }
}
