//! Scalar arithmetic in two modes: exact Gaussian rationals and complex doubles.
//!
//! Exact mode keeps every computation in ℚ(i), so equality and rank decisions
//! are decidable. Float mode defers all zero/rank decisions to the tolerance
//! policy in [`crate::matrix`]; arithmetic here never compares floats.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Which scalar field a scenario runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Exact,
    Float,
}

/// A complex scalar, either an exact Gaussian rational or a complex double.
///
/// Mixed-mode arithmetic promotes to float. A scenario picks one mode up
/// front, so promotion only happens when exact structural constants (0, 1)
/// meet float data.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact { re: BigRational, im: BigRational },
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar::Exact {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn exact(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact { re, im }
    }

    /// The imaginary unit, exact.
    pub fn i() -> Self {
        Scalar::Exact {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// i^k for k mod 4; stays exact.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => -&Scalar::one(),
            _ => -&Scalar::i(),
        }
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Self {
        Scalar::Float(z)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact { .. })
    }

    /// Exact zero test. In float mode this is a bitwise test, used only for
    /// pruning blocks that were never touched; tolerance decisions live in
    /// the rank/kernel routines.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_one() && im.is_zero(),
            Scalar::Float(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.clone(),
                im: -im,
            },
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact { re, im } => Complex64::new(
                re.to_f64().expect("rational out of f64 range"),
                im.to_f64().expect("rational out of f64 range"),
            ),
            Scalar::Float(z) => *z,
        }
    }

    /// Modulus as f64; used for pivot selection and error reporting.
    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn recip(&self) -> Option<Self> {
        match self {
            Scalar::Exact { re, im } => {
                let n = re * re + im * im;
                if n.is_zero() {
                    return None;
                }
                Some(Scalar::Exact {
                    re: re / &n,
                    im: -(im / &n),
                })
            }
            Scalar::Float(z) => {
                if z.re == 0.0 && z.im == 0.0 {
                    None
                } else {
                    Some(Scalar::Float(z.inv()))
                }
            }
        }
    }

    /// Real part as f64 (exact converted).
    pub fn re_f64(&self) -> f64 {
        self.to_complex().re
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { re, im } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else if re.is_zero() {
                    write!(f, "{im}i")
                } else if im.is_negative() {
                    write!(f, "{re}{im}i")
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{}{:+}i", z.re, z.im)
                }
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $ex:expr, $fl:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (
                        Scalar::Exact { re: a, im: b },
                        Scalar::Exact { re: c, im: d },
                    ) => {
                        let f: fn(
                            &BigRational,
                            &BigRational,
                            &BigRational,
                            &BigRational,
                        ) -> (BigRational, BigRational) = $ex;
                        let (re, im) = f(a, b, c, d);
                        Scalar::Exact { re, im }
                    }
                    _ => {
                        let f: fn(Complex64, Complex64) -> Complex64 = $fl;
                        Scalar::Float(f(self.to_complex(), rhs.to_complex()))
                    }
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, c, d| (a + c, b + d), |x, y| x + y);
binop!(Sub, sub, |a, b, c, d| (a - c, b - d), |x, y| x - y);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational| {
        (a * c - b * d, a * d + b * c)
    },
    |x, y| x * y
);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division by zero scalar");
        self * &inv
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact { re: -re, im: -im },
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = Scalar::from_ratio(1, 2);
        let b = Scalar::i();
        let p = &a * &b;
        assert_eq!(p, Scalar::exact(BigRational::zero(), BigRational::new(1.into(), 2.into())));
        let q = &p / &b;
        assert_eq!(q, a);
    }

    #[test]
    fn i_pow_cycle() {
        assert_eq!(Scalar::i_pow(0), Scalar::one());
        assert_eq!(Scalar::i_pow(2), -Scalar::one());
        assert_eq!(Scalar::i_pow(5), Scalar::i());
        assert_eq!(Scalar::i_pow(-1), -Scalar::i());
        let z = &Scalar::i_pow(3) * &Scalar::i_pow(1);
        assert_eq!(z, Scalar::one());
    }

    #[test]
    fn mixed_mode_promotes() {
        let a = Scalar::from_int(2);
        let b = Scalar::float(0.5, 0.0);
        let p = &a * &b;
        assert!(!p.is_exact());
        assert_eq!(p.to_complex(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn recip_of_zero_is_none() {
        assert!(Scalar::zero().recip().is_none());
        assert!(Scalar::float(0.0, 0.0).recip().is_none());
    }

    #[test]
    fn conj_involution() {
        let z = Scalar::exact(BigRational::new(3.into(), 7.into()), BigRational::one());
        assert_eq!(z.conj().conj(), z);
    }
}
