//! The algebraic series `S(x)` and the closed forms of `N_k`, `G_k` in
//! terms of it.

use num_traits::One;

use super::real::{abs, complex, eval_complex, real, sqrt, to_f64, Complex, Real};
use crate::error::{Result, SawError};
use crate::genfunc::nes_polynomials;

fn c(i: i64) -> Complex {
    complex(real(i), real(0))
}

/// `S = (5+9x - 3 sqrt((1+x)(1+9x)))/4`, the root of `S + 1/S = (5+9x)/2`
/// with `S(0) = 1/2`, continued analytically off the cut `[-1, -1/9]`.
pub fn algebraic_s(x: &Complex) -> Result<Complex> {
    let zero = real(0);
    let on_cut = x.im == zero && x.re >= real(-1) && x.re.clone() * real(9) <= real(-1);
    if on_cut {
        return Err(SawError::OnBranchCut);
    }
    let disc = (c(1) + x.clone()) * (c(1) + x.clone() * c(9));
    let root = sqrt(&disc) * c(3);
    let base = c(5) + x.clone() * c(9);
    let s = if x.re.clone() * real(9) >= real(-5) {
        base - root
    } else {
        base + root
    };
    Ok(s / c(4))
}

/// Closed forms `(G_{2m}, G_{2m+1}, N_{2m}, N_{2m+1})` at `x`.
pub fn gns_closed_forms(m: u32, x: &Complex) -> Result<[Complex; 4]> {
    let s = algebraic_s(x)?;
    let inv = Complex::one() / s.clone();
    let p = |t: &Complex| c(1) + x.clone() * c(2) - t.clone() * c(2) * (c(1) - x.clone());
    let q = |t: &Complex| -(c(1) + t.clone());
    let sm = s.powu(m);
    let sm1 = s.powu(m + 1);
    let s_neg_m = inv.powu(m);
    let two_m = c(2).powu(m);
    let third = two_m.clone() / c(3);
    let over = two_m / (c(1) + s.clone());

    let g_even = -third.clone() * (p(&inv) * sm.clone() + p(&s) * s_neg_m.clone());
    let g_odd = -over.clone() * (p(&inv) * sm1.clone() + p(&s) * s_neg_m.clone());
    let n_even = -third
        * (q(&inv) * sm.clone() + q(&s) * s_neg_m.clone()
            - c(3) * (sm.clone() - s_neg_m.clone() * s.clone()) / (s.clone() - c(1)));
    let n_odd =
        -over * (q(&inv) * sm1 + q(&s) * s_neg_m.clone() - c(3) * (sm - s_neg_m) / (c(1) - inv));
    Ok([g_even, g_odd, n_even, n_odd])
}

#[derive(Debug, Clone, PartialEq)]
pub struct GnsCheck {
    pub m: u32,
    /// Largest relative deviation over all points and all four identities.
    pub max_relative_error: f64,
    pub holds: bool,
}

/// Compares the closed forms for `G_{2m}, G_{2m+1}, N_{2m}, N_{2m+1}` with
/// the polynomials at each point, to relative precision `1e-20`.
pub fn gns_identity_check(m: u32, points: &[Complex]) -> Result<GnsCheck> {
    if m == 0 {
        return Err(SawError::InvalidParameter("index m must be >= 1".into()));
    }
    let (n_even, g_even) = nes_polynomials(2 * m as usize)?;
    let (n_odd, g_odd) = nes_polynomials(2 * m as usize + 1)?;
    let mut worst = 0f64;
    for x in points {
        let closed = gns_closed_forms(m, x)?;
        for (value, poly) in closed.iter().zip([&g_even, &g_odd, &n_even, &n_odd]) {
            let exact = eval_complex(poly, x);
            let err: Real = abs(&(value.clone() - exact.clone())) / abs(&exact);
            worst = worst.max(to_f64(&err));
        }
    }
    Ok(GnsCheck {
        m,
        max_relative_error: worst,
        holds: worst < 1e-20,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::real::complex_from_f64;

    fn rat(n: i64, d: i64) -> Complex {
        complex(real(n) / real(d), real(0))
    }

    #[test]
    fn s_at_zero_and_identity() {
        let s = algebraic_s(&c(0)).unwrap();
        assert_eq!(to_f64(&s.re), 0.5);
        let x = rat(1, 10);
        let s = algebraic_s(&x).unwrap();
        let lhs = s.clone() + Complex::one() / s;
        assert!((to_f64(&lhs.re) - 2.95).abs() < 1e-60);
        assert!(to_f64(&lhs.im).abs() < 1e-60);
    }

    #[test]
    fn modulus_below_one_off_the_cut() {
        let points = [
            complex(real(0), real(1) / real(9)),
            rat(-2, 1),
            rat(3, 1),
            complex_from_f64(-0.5, 0.01),
            complex_from_f64(-0.5, -0.01),
            rat(-1, 20),
        ];
        for x in &points {
            let s = algebraic_s(x).unwrap();
            assert!(to_f64(&abs(&s)) < 1.0, "{x:?}");
        }
        assert_eq!(algebraic_s(&rat(-1, 2)), Err(SawError::OnBranchCut));
        assert_eq!(algebraic_s(&rat(-1, 1)), Err(SawError::OnBranchCut));
    }

    #[test]
    fn closed_forms_match_polynomials() {
        let points = [
            rat(1, 20),
            rat(-1, 20),
            rat(1, 100),
            complex_from_f64(0.03, 0.2),
            rat(3, 1),
        ];
        for m in 1..=5 {
            let check = gns_identity_check(m, &points).unwrap();
            assert!(check.holds, "m={m}: {}", check.max_relative_error);
        }
    }
}
