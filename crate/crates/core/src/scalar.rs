//! Scalar types: exact complex rationals and the exact-or-float values
//! produced by state evaluation.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat::default()
    }

    pub fn one() -> Self {
        CRat::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        CRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_rational(re: BigRational) -> Self {
        CRat::new(re, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        CRat::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        CRat::new(&self.re * s, &self.im * s)
    }
}

impl Add for CRat {
    type Output = CRat;
    fn add(self, rhs: CRat) -> CRat {
        CRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for CRat {
    fn add_assign(&mut self, rhs: CRat) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for CRat {
    type Output = CRat;
    fn sub(self, rhs: CRat) -> CRat {
        CRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat::new(-self.re, -self.im)
    }
}

impl Mul for CRat {
    type Output = CRat;
    fn mul(self, rhs: CRat) -> CRat {
        &self * &rhs
    }
}

impl Mul for &CRat {
    type Output = CRat;
    fn mul(self, rhs: &CRat) -> CRat {
        CRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A complex value that is either exactly rational (both parts) or a double.
///
/// Arithmetic stays exact as long as every operand is exact; mixing with an
/// approximate value demotes the result to a double. State evaluators use
/// this to keep the tolerance-zero code paths honest.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(CRat),
    Approx(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(CRat::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(CRat::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(CRat::from_rational(r))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.to_c64(),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.conj()),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.clone() + b.clone()),
            _ => Scalar::Approx(self.to_c64() + rhs.to_c64()),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.clone() - b.clone()),
            _ => Scalar::Approx(self.to_c64() - rhs.to_c64()),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Approx(self.to_c64() * rhs.to_c64()),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.scale(s)),
            Scalar::Approx(z) => Scalar::Approx(z * s.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Whether |self - rhs| <= threshold. Decided exactly when all three are
    /// exact (by comparing squares), otherwise in doubles.
    pub fn close_to(&self, rhs: &Scalar, threshold: &BigRational) -> bool {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                let diff = a.clone() - b.clone();
                diff.norm_sqr() <= threshold * threshold
            }
            _ => {
                let t = threshold.to_f64().unwrap_or(f64::NAN);
                (self.to_c64() - rhs.to_c64()).norm() <= t
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{}", c),
            Scalar::Approx(z) => {
                if z.im == 0.0 {
                    write!(f, "{:.12e}", z.re)
                } else {
                    write!(f, "{:.12e}{:+.12e}i", z.re, z.im)
                }
            }
        }
    }
}

/// Parse a rational given as "p/q" or a plain integer string.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Exact nonnegative power of a rational.
pub fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn crat_arithmetic() {
        let a = CRat::new(q(1, 2), q(1, 3));
        let b = CRat::new(q(1, 2), q(-1, 3));
        assert_eq!(&a * &b, CRat::from_rational(q(1, 4) + q(1, 9)));
        assert_eq!(a.conj(), b);
        assert_eq!(a.norm_sqr(), q(1, 4) + q(1, 9));
    }

    #[test]
    fn scalar_promotion() {
        let e = Scalar::from_rational(q(1, 3));
        let f = Scalar::Approx(Complex64::new(0.5, 0.0));
        assert!(e.is_exact());
        assert!(!e.mul(&f).is_exact());
        assert!(e.mul(&e).is_exact());
    }

    #[test]
    fn exact_closeness_is_sharp() {
        let a = Scalar::from_rational(q(1, 3));
        let b = Scalar::from_rational(q(1, 3));
        let c = Scalar::from_rational(q(1, 3) + q(1, 1_000_000_000_000i64));
        let zero = BigRational::zero();
        assert!(a.close_to(&b, &zero));
        assert!(!a.close_to(&c, &zero));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1/3"), Some(q(1, 3)));
        assert_eq!(parse_rational("-2/6"), Some(q(-1, 3)));
        assert_eq!(parse_rational("5"), Some(q(5, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn pow_is_exact() {
        assert_eq!(rational_pow(&q(2, 3), 3), q(8, 27));
        assert_eq!(rational_pow(&q(2, 3), 0), q(1, 1));
    }
}
