//! Dense univariate polynomials over the integers and rational series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SawError};

/// Polynomial in `x` with `coeffs[i]` the coefficient of `x^i`. Trailing
/// zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::new(vec![c.into()])
    }

    /// `c x^n`
    pub fn monomial(c: impl Into<BigInt>, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.push(c.into());
        Polynomial::new(coeffs)
    }

    pub fn x() -> Self {
        Polynomial::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Horner evaluation in any ring containing the integers.
    pub fn eval_with<T, F>(&self, x: &T, lift: F) -> T
    where
        T: Clone + Zero + for<'a> Mul<&'a T, Output = T> + Add<Output = T>,
        F: Fn(&BigInt) -> T,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + lift(c))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.eval_with(x, |c| BigRational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.eval_with(x, Clone::clone)
    }

    /// Substitutes `x -> c x`.
    pub fn dilate(&self, c: &BigInt) -> Polynomial {
        let mut p = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &p);
            p *= c;
        }
        Polynomial::new(out)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / denominator` expanded as a power series at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalSeries {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(SawError::ZeroConstantTerm);
        }
        Ok(RationalSeries {
            numerator,
            denominator,
        })
    }

    /// Coefficients of `x^0 ..= x^lmax`, from the linear recurrence of the
    /// denominator. Fails if a coefficient is not an integer.
    pub fn coefficients(&self, lmax: usize) -> Result<Vec<BigInt>> {
        let q = self.denominator.coeffs();
        let q0 = &q[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(lmax + 1);
        for n in 0..=lmax {
            let mut acc = self.numerator.coeff(n);
            for (i, qi) in q.iter().enumerate().skip(1).take(n) {
                acc -= qi * &out[n - i];
            }
            let (c, r) = acc.div_rem(q0);
            if !r.is_zero() {
                return Err(SawError::NonIntegralCoefficient { index: n });
            }
            out.push(c);
        }
        Ok(out)
    }

    pub fn coeff(&self, l: usize) -> Result<BigInt> {
        Ok(self.coefficients(l)?.pop().expect("non-empty"))
    }

    /// Cross-multiplied equality `p/q == r/s`.
    pub fn same_function(&self, other: &RationalSeries) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

/// Coefficient of `x^l` in the expansion of `rs`.
pub fn series_coeff(rs: &RationalSeries, l: usize) -> Result<BigInt> {
    rs.coeff(l)
}
