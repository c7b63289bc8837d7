//! Exact elements of the quadratic field Q(sqrt5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const SQRT5: f64 = 2.236_067_977_499_79;

/// `a + b·sqrt5` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    a: BigRational,
    b: BigRational,
}

impl Coefficient {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Coefficient { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Coefficient { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The element `sqrt5` itself.
    pub fn sqrt5() -> Self {
        Coefficient { a: BigRational::zero(), b: BigRational::one() }
    }

    /// The golden ratio `(1 + sqrt5)/2`.
    pub fn phi() -> Self {
        Coefficient {
            a: BigRational::new(1.into(), 2.into()),
            b: BigRational::new(1.into(), 2.into()),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b·sqrt5`.
    pub fn conjugate(&self) -> Self {
        Coefficient { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Coefficient { a: c.a / &n, b: c.b / n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 5b²
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * SQRT5
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Coefficient::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Best rational approximation of a float, exact for dyadic inputs.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::rational)
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rat_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // huge numerators/denominators: scale down by shifting bits
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = (nb.max(db) - 60).max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => write!(f, "{}*sqrt5", format_rational(&self.b)),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "({} - {}*sqrt5)", format_rational(&self.a), format_rational(&-self.b.clone()))
                } else {
                    write!(f, "({} + {}*sqrt5)", format_rational(&self.a), format_rational(&self.b))
                }
            }
        }
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<BigRational> for Coefficient {
    fn from(q: BigRational) -> Self {
        Coefficient::rational(q)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Coefficient::rational(&self.a * &rhs.a);
        }
        let five = BigRational::from_integer(5.into());
        Coefficient {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        Coefficient { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        Coefficient { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

/// Panics on division by zero; use [`Coefficient::checked_div`] otherwise.
impl Div for Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: Coefficient) -> Coefficient {
        self.checked_div(&rhs).expect("division by zero in Q(sqrt5)")
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { a: -self.a, b: -self.b }
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Coefficient> for Coefficient {
    fn mul_assign(&mut self, rhs: &Coefficient) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: (i64, i64), b: (i64, i64)) -> Coefficient {
        Coefficient::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn product_matches_reexpansion() {
        // (1 + 2√5)(3 - √5) = 3 - √5 + 6√5 - 10 = -7 + 5√5
        let x = c((1, 1), (2, 1));
        let y = c((3, 1), (-1, 1));
        assert_eq!(&x * &y, c((-7, 1), (5, 1)));
        assert!(((&x * &y).to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-12);
    }

    #[test]
    fn inverse_and_phi_identity() {
        let phi = Coefficient::phi();
        // φ² = φ + 1
        assert_eq!(&phi * &phi, &phi + &Coefficient::one());
        let inv = phi.inverse().unwrap();
        assert_eq!(&phi * &inv, Coefficient::one());
        assert_eq!(inv, &phi - &Coefficient::one());
        assert!(Coefficient::zero().inverse().is_err());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(c((9, 4), (-1, 1)).signum(), 1); // 2.25 - 2.236
        assert_eq!(c((2, 1), (-1, 1)).signum(), -1);
        assert_eq!(c((-3, 1), (1, 1)).signum(), -1);
        assert_eq!(c((-2, 1), (1, 1)).signum(), 1);
        assert_eq!(Coefficient::zero().signum(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(Coefficient::from_frac(-3, 6).to_string(), "-1/2");
        assert_eq!(Coefficient::phi().to_string(), "(1/2 + 1/2*sqrt5)");
        assert_eq!(Coefficient::sqrt5().to_string(), "1*sqrt5");
    }
}
