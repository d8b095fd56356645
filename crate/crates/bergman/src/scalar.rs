//! Exact complex-rational scalars used by the polynomial algebra.
//!
//! Every finite `f64` is a dyadic rational, so converting inputs with
//! `crat_from_c64` is lossless and all downstream ring operations stay exact.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Complex number with exact rational real and imaginary parts.
pub type CRat = num_complex::Complex<BigRational>;

pub fn crat_zero() -> CRat {
    CRat::new(BigRational::zero(), BigRational::zero())
}

pub fn crat_from_int(n: i64) -> CRat {
    CRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub fn crat_from_ratio(num: i64, den: i64) -> CRat {
    assert!(den != 0);
    CRat::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

pub fn rat_ratio(num: i64, den: i64) -> BigRational {
    assert!(den != 0);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion; `None` when either part is NaN or infinite.
pub fn crat_from_c64(z: Complex64) -> Option<CRat> {
    Some(CRat::new(
        BigRational::from_float(z.re)?,
        BigRational::from_float(z.im)?,
    ))
}

pub fn crat_to_c64(z: &CRat) -> Complex64 {
    Complex64::new(rat_to_f64(z.re.clone()), rat_to_f64(z.im.clone()))
}

pub fn crat_conj(z: &CRat) -> CRat {
    CRat::new(z.re.clone(), -z.im.clone())
}

pub fn crat_abs_f64(z: &CRat) -> f64 {
    crat_to_c64(z).norm()
}

/// Nearest-f64 conversion that stays finite-accurate for large numerators
/// and denominators by rescaling with powers of two first.
pub fn rat_to_f64(r: BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let r = r.abs();
    let (num, den) = (r.numer().clone(), r.denom().clone());
    // Scale the quotient into [2^63, 2^64) so the integer division below
    // carries more than f64 precision, then undo the scaling via exp2.
    let shift: i64 = 64 - (num.bits() as i64 - den.bits() as i64);
    let scaled = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = scaled.to_f64().unwrap_or(f64::INFINITY);
    // Apply the power-of-two rescale in steps so intermediate factors stay
    // inside the normal f64 exponent range.
    let mut value = q;
    let mut e = -shift;
    while e > 900 {
        value *= (900f64).exp2();
        e -= 900;
    }
    while e < -900 {
        value *= (-900f64).exp2();
        e += 900;
    }
    value *= (e as f64).exp2();
    if negative {
        -value
    } else {
        value
    }
}
