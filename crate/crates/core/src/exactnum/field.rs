use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Scalars the admissible machinery can run on: exact rationals or `f64`.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn from_int(i: i64) -> Self;
    fn from_bigint(i: &BigInt) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self;
    /// The exact value, when the scalar carries one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Zero test. Exact for rationals; relative to `scale` for floats.
    fn is_negligible(&self, scale: f64) -> bool;
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_int(i: i64) -> Self {
        BigRational::from_integer(BigInt::from(i))
    }

    fn from_bigint(i: &BigInt) -> Self {
        BigRational::from_integer(i.clone())
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_int(i: i64) -> Self {
        i as f64
    }

    fn from_bigint(i: &BigInt) -> Self {
        i.to_f64().unwrap_or(f64::NAN)
    }

    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-12 * scale.max(1.0)
    }
}

/// Correctly scaled conversion that survives numerators and denominators
/// far outside the `f64` range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let (n, d) = (q.numer(), q.denom());
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    // Shift both into range before dividing.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let a = (n >> shift_n as usize).to_f64().unwrap_or(0.0);
    let b = (d >> shift_d as usize).to_f64().unwrap_or(1.0);
    (a / b) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Exact rational image of a finite `f64`.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Shorthand for `num / den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

