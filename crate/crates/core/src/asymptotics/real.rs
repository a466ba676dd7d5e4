//! 256-bit binary floating point, and complex numbers over it.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::genfunc::Polynomial;

pub type Real = FBig<HalfEven, 2>;
pub type Complex = num_complex::Complex<Real>;

/// About 77 decimal digits.
pub const PRECISION_BITS: usize = 256;

pub fn real(i: i64) -> Real {
    Real::from(i).with_precision(PRECISION_BITS).value()
}

pub fn real_from_bigint(i: &BigInt) -> Real {
    Real::from(IBig::from_le_bytes(&i.to_signed_bytes_le()))
        .with_precision(PRECISION_BITS)
        .value()
}

pub fn real_from_ratio(r: &BigRational) -> Real {
    real_from_bigint(r.numer()) / real_from_bigint(r.denom())
}

/// `2^e` for any integer `e`.
pub fn pow2(e: isize) -> Real {
    Real::from_parts(IBig::ONE, e)
        .with_precision(PRECISION_BITS)
        .value()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal scientific notation with `digits` significant digits.
pub fn to_decimal_string(x: &Real, digits: usize) -> String {
    format!(
        "{:e}",
        x.to_decimal().value().with_precision(digits).value()
    )
}

pub fn eval_real(p: &Polynomial, x: &Real) -> Real {
    p.eval_with(x, real_from_bigint)
}

pub fn complex(re: Real, im: Real) -> Complex {
    Complex::new(re, im)
}

pub fn complex_from_f64(re: f64, im: f64) -> Complex {
    let f = |v: f64| {
        Real::try_from(v)
            .expect("finite")
            .with_precision(PRECISION_BITS)
            .value()
    };
    complex(f(re), f(im))
}

pub fn eval_complex(p: &Polynomial, z: &Complex) -> Complex {
    p.eval_with(z, |c| complex(real_from_bigint(c), real(0)))
}

pub fn abs(z: &Complex) -> Real {
    z.norm_sqr().sqrt()
}

/// Principal square root.
pub fn sqrt(z: &Complex) -> Complex {
    let r = abs(z);
    let two = real(2);
    let re = ((r.clone() + &z.re) / &two).sqrt();
    let im = ((r - &z.re) / &two).sqrt();
    let im = if z.im < real(0) { -im } else { im };
    complex(re, im)
}
