//! Sparse Laurent polynomials in `x, y, a, b` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use crate::error::{Result, SawError};

/// Exponents of `(x, y, a, b)`.
pub type Exponents = [i32; 4];

const NAMES: [&str; 4] = ["x", "y", "a", "b"];

/// Terms keyed by exponent vector. Key order is lexicographic with
/// `x > y > a > b`, so the last entry is the lex-leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPolynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, [0; 4])
    }

    pub fn term(c: impl Into<BigInt>, e: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn x() -> Self {
        Self::term(1, [1, 0, 0, 0])
    }

    pub fn y() -> Self {
        Self::term(1, [0, 1, 0, 0])
    }

    pub fn a() -> Self {
        Self::term(1, [0, 0, 1, 0])
    }

    pub fn b() -> Self {
        Self::term(1, [0, 0, 0, 1])
    }

    /// `y^n`, possibly with `n < 0`.
    pub fn y_pow(n: i32) -> Self {
        Self::term(1, [0, n, 0, 0])
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponents) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    pub fn leading_term(&self) -> Option<(Exponents, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor` when it is a polynomial with integer
    /// coefficients, by lex-leading-term division.
    pub fn div_exact(&self, divisor: &MultiPolynomial) -> Option<MultiPolynomial> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        if !self.is_polynomial() || !divisor.is_polynomial() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = MultiPolynomial::zero();
        while let Some((e, c)) = rem.leading_term() {
            let shift: Exponents = std::array::from_fn(|i| e[i] - lead_e[i]);
            if shift.iter().any(|&s| s < 0) {
                return None;
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let m = MultiPolynomial::term(qc, shift);
            rem = &rem - &(&m * divisor);
            quot = &quot + &m;
        }
        Some(quot)
    }

    /// Substitutes a univariate polynomial for each variable. Fails on
    /// negative exponents.
    pub fn substitute(&self, values: [&Polynomial; 4]) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (v, &k) in values.iter().zip(e) {
                let k = u32::try_from(k).map_err(|_| {
                    SawError::Precondition("cannot substitute into a negative power".into())
                })?;
                for _ in 0..k {
                    t = &t * v;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `x -> 3x, y -> 2, a -> 2x, b -> 1`: the weights of the second moment.
    pub fn moment_specialization(&self) -> Result<Polynomial> {
        self.substitute([
            &Polynomial::from_i64(&[0, 3]),
            &Polynomial::constant(2),
            &Polynomial::from_i64(&[0, 2]),
            &Polynomial::constant(1),
        ])
    }

    /// Value at the origin, i.e. the constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coeff([0; 4])
    }
}

impl Add<&MultiPolynomial> for &MultiPolynomial {
    type Output = MultiPolynomial;

    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&MultiPolynomial> for &MultiPolynomial {
    type Output = MultiPolynomial;

    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&MultiPolynomial> for &MultiPolynomial {
    type Output = MultiPolynomial;

    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(std::array::from_fn(|i| e1[i] + e2[i]), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;

    fn neg(self) -> MultiPolynomial {
        MultiPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPolynomial> for MultiPolynomial {
            type Output = MultiPolynomial;
            fn $m(self, rhs: MultiPolynomial) -> MultiPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(a.to_string());
            }
            for (name, &k) in NAMES.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
