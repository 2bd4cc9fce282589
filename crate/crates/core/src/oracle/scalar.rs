//! Scalar arithmetic for the matrix oracle.
//!
//! The default mode is exact complex-rational arithmetic, so every subspace
//! decision is tolerance-free and bit-stable. A complex `f64` mode exists for
//! random-unitary sampling; its rank decisions go through singular values
//! (see `linalg`), never through syntactic zero tests.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Relative singular-value threshold for floating-mode rank decisions.
pub const FLOAT_RANK_TOL: f64 = 1e-9;

/// Field operations shared by the two arithmetic modes.
pub trait Scalar: Clone + PartialEq + fmt::Debug + 'static {
    /// Whether zero tests are exact (rational mode).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugate.
    fn conj(&self) -> Self;

    /// Syntactic zero test. In float mode this is exact equality with zero
    /// and is only meaningful for values produced symbolically.
    fn is_zero(&self) -> bool;

    /// `(re, im)` as floats, for pivot-size heuristics and the Jacobi sweep.
    fn approx(&self) -> (f64, f64);

    /// Rebuilds a scalar from float parts (exactly in rational mode, since
    /// every finite `f64` is rational).
    fn from_approx(re: f64, im: f64) -> Self;

    fn abs_sq_approx(&self) -> f64 {
        let (re, im) = self.approx();
        re * re + im * im
    }
}

/// Exact complex rational: `re + im·i` with big-rational parts.
#[derive(Clone, PartialEq, Eq)]
pub struct RatComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RatComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RatComplex { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        RatComplex {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        RatComplex {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }
}

impl fmt::Debug for RatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Scalar for RatComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        RatComplex::real(BigRational::zero())
    }

    fn one() -> Self {
        RatComplex::real(BigRational::one())
    }

    fn from_int(n: i64) -> Self {
        RatComplex::real(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        RatComplex::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn add(&self, rhs: &Self) -> Self {
        RatComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        RatComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        RatComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn div(&self, rhs: &Self) -> Self {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        RatComplex {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &norm,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &norm,
        }
    }

    fn neg(&self) -> Self {
        RatComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn conj(&self) -> Self {
        RatComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn approx(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn from_approx(re: f64, im: f64) -> Self {
        RatComplex {
            re: BigRational::from_float(re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_float(im).unwrap_or_else(BigRational::zero),
        }
    }
}

/// Complex `f64` scalar for the floating mode.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FloatComplex {
    pub re: f64,
    pub im: f64,
}

impl FloatComplex {
    pub fn new(re: f64, im: f64) -> Self {
        FloatComplex { re, im }
    }
}

impl Scalar for FloatComplex {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatComplex { re: 0.0, im: 0.0 }
    }

    fn one() -> Self {
        FloatComplex { re: 1.0, im: 0.0 }
    }

    fn from_int(n: i64) -> Self {
        FloatComplex {
            re: n as f64,
            im: 0.0,
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        FloatComplex {
            re: num as f64 / den as f64,
            im: 0.0,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        FloatComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        FloatComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        FloatComplex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }

    fn div(&self, rhs: &Self) -> Self {
        let norm = rhs.re * rhs.re + rhs.im * rhs.im;
        FloatComplex {
            re: (self.re * rhs.re + self.im * rhs.im) / norm,
            im: (self.im * rhs.re - self.re * rhs.im) / norm,
        }
    }

    fn neg(&self) -> Self {
        FloatComplex {
            re: -self.re,
            im: -self.im,
        }
    }

    fn conj(&self) -> Self {
        FloatComplex {
            re: self.re,
            im: -self.im,
        }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn approx(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn from_approx(re: f64, im: f64) -> Self {
        FloatComplex { re, im }
    }
}
