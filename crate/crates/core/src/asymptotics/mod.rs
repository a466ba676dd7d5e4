//! Dominant pole and residue of `M_k(x)`, and the asymptotic laws they
//! govern.
//!
//! `G_k` has a single zero `rho_k` in `(0, 1/9)`, close to `2^-(k+1)`, and
//! `E(X_{k,l}^2) = alpha_k rho_k^-l + O(9^l k)` with `alpha_k -> 3/2`.

pub mod bounds;
pub mod kernel;
pub mod real;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

pub use bounds::{growth_bounds, BoundsReport, BoundsRow};
pub use kernel::{algebraic_s, gns_closed_forms, gns_identity_check, GnsCheck};
pub use real::{Complex, Real};

use self::real::{eval_real, pow2, real, real_from_bigint, real_from_ratio, to_f64};
use crate::error::{Result, SawError};
use crate::estimator::ratio_to_f64;
use crate::genfunc::{first_moment_gf, nes_moment_gf, nes_polynomials, Polynomial};

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `B` such that the pole of `M_k` lies in `(0, 1/B)`. For `k = 1` the only
/// zero of `G_1 = 1 - 4x` is `1/4`, above `1/9`.
fn bracket_base(k: usize) -> u32 {
    if k == 1 {
        2
    } else {
        9
    }
}

/// Upper end of the bracketing interval, `1/B - 1e-9`.
fn bracket_hi(k: usize) -> BigRational {
    ratio(1, bracket_base(k)) - ratio(1, 1_000_000_000)
}

/// Sign variations of `(B(1+t))^d G(t / (B(1+t)))`, whose positive roots
/// are the roots of `G` in `(0, 1/B)`. One variation means exactly one root.
pub fn descartes_count(g: &Polynomial, base: u32) -> usize {
    let d = g.degree().unwrap_or(0);
    // sum_i c_i B^(d-i) t^i (1+t)^(d-i)
    let one_plus_t = Polynomial::from_i64(&[1, 1]);
    let mut acc = Polynomial::zero();
    for (i, ci) in g.coeffs().iter().enumerate() {
        let mut term = Polynomial::monomial(ci * Pow::pow(BigInt::from(base), d - i), i);
        for _ in 0..d - i {
            term = &term * &one_plus_t;
        }
        acc = &acc + &term;
    }
    let signs: Vec<bool> = acc
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Pole location with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub k: usize,
    pub rho: Real,
    /// Sign variations after mapping the bracket `(0, 1/B)` to `(0, inf)`.
    pub descartes_count: usize,
    /// `|G_k(rho)|`
    pub residual: f64,
}

/// Exact-sign bisection on `(0, 1/9 - 1e-9)` (`(0, 1/2 - 1e-9)` for
/// `k = 1`) down to relative width
/// `2^-64`, then Newton at 256 bits.
pub fn locate_pole(k: usize) -> Result<Pole> {
    let (_, g) = nes_polynomials(k)?;
    let sign = |x: &BigRational| g.eval_rational(x).signum();
    let mut lo = BigRational::zero();
    let mut hi = bracket_hi(k);
    if !sign(&lo).is_positive() || !sign(&hi).is_negative() {
        return Err(SawError::NoSignChange { k });
    }
    let two = ratio(2, 1);
    let tol = ratio(1, BigInt::one() << 64);
    while &hi - &lo > &lo * &tol || lo.is_zero() {
        let mid = (&lo + &hi) / &two;
        if sign(&mid).is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (lo, hi) = (real_from_ratio(&lo), real_from_ratio(&hi));
    let dg = g.derivative();
    let mut x = (lo.clone() + &hi) / real(2);
    let eps = pow2(-(real::PRECISION_BITS as isize) + 8);
    for _ in 0..64 {
        let step = eval_real(&g, &x) / eval_real(&dg, &x);
        x -= &step;
        if step.abs() <= x.clone().abs() * &eps {
            break;
        }
    }
    if x < lo || x > hi {
        return Err(SawError::Precondition(format!(
            "Newton iteration left the bracket for k={k}"
        )));
    }
    Ok(Pole {
        k,
        residual: to_f64(&eval_real(&g, &x).abs()),
        rho: x,
        descartes_count: descartes_count(&g, bracket_base(k)),
    })
}

/// The unique zero `rho_k` of `G_k` in `(0, 1/9)`.
pub fn dominant_pole(k: usize) -> Result<Real> {
    Ok(locate_pole(k)?.rho)
}

/// `alpha_k = -2 N_k(rho) / G_k'(rho)`, so that `M_k(x) - alpha_k/(1 - x/rho)`
/// is finite at `rho`.
pub fn residue_at_pole(k: usize, rho: &Real) -> Result<Real> {
    let (n, g) = nes_polynomials(k)?;
    let dg = eval_real(&g.derivative(), rho);
    if dg.clone().abs() < pow2(-200) {
        return Err(SawError::DegenerateDerivative { k });
    }
    Ok(real(-2) * eval_real(&n, rho) / dg)
}

/// Which truncated expansions to compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionSet {
    /// The four-term expansions as usually quoted.
    #[default]
    Printed,
    /// Four-term expansions refitted from high-precision poles.
    Corrected,
}

fn kpoly(k: usize, coeffs: &[BigRational]) -> BigRational {
    let k = ratio(k as i64, 1);
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &k + c)
}

fn inv_pow(base: u32, e: usize) -> BigRational {
    ratio(1, Pow::pow(BigInt::from(base), e))
}

fn r(n: i64, d: i64) -> BigRational {
    ratio(n, d)
}

/// Truncated expansion of `rho_k`, exact.
pub fn rho_expansion(k: usize, set: ExpansionSet) -> BigRational {
    let e = k + 1;
    match set {
        ExpansionSet::Printed => {
            inv_pow(2, e) + r(9, 2) * inv_pow(4, e)
                - kpoly(k, &[r(-23, 1), r(12, 1)]) * r(1, 2) * inv_pow(8, e)
                + kpoly(k, &[r(-87, 8), r(-54, 1), r(36, 1)]) * inv_pow(16, e)
        }
        ExpansionSet::Corrected => {
            inv_pow(2, e)
                + kpoly(k, &[r(9, 2), r(-3, 1)]) * inv_pow(4, e)
                + kpoly(k, &[r(23, 2), r(-33, 1), r(27, 2)]) * inv_pow(8, e)
                + kpoly(k, &[r(-87, 8), r(-315, 2), r(234, 1), r(-72, 1)]) * inv_pow(16, e)
        }
    }
}

/// Truncated expansion of `alpha_k`, exact.
pub fn alpha_expansion(k: usize, set: ExpansionSet) -> BigRational {
    let e = k + 1;
    match set {
        ExpansionSet::Printed => {
            r(3, 2) - kpoly(k, &[r(-4, 1), r(9, 1)]) * inv_pow(2, k + 2)
                + kpoly(k, &[r(1, 1), r(-48, 1), r(27, 1)]) * r(1, 2) * inv_pow(4, e)
                - kpoly(k, &[r(140, 1), r(75, 1), r(-306, 1), r(81, 1)]) * r(1, 2) * inv_pow(8, e)
        }
        ExpansionSet::Corrected => {
            r(3, 2)
                + kpoly(k, &[r(2, 1), r(-9, 2)]) * inv_pow(2, e)
                + kpoly(k, &[r(1, 2), r(-30, 1), r(27, 1)]) * inv_pow(4, e)
                + kpoly(k, &[r(-70, 1), r(-81, 2), r(324, 1), r(-729, 4)]) * inv_pow(8, e)
        }
    }
}

/// Fifth terms of the corrected expansions of `rho_k` and `alpha_k`.
pub fn corrected_next_terms(k: usize) -> (BigRational, BigRational) {
    let e = k + 1;
    let rho = kpoly(
        k,
        &[r(-2579, 8), r(75, 4), r(6705, 4), r(-3375, 2), r(3375, 8)],
    ) * inv_pow(32, e);
    let alpha = kpoly(
        k,
        &[r(-4537, 8), r(2799, 2), r(1044, 1), r(-3168, 1), r(1296, 1)],
    ) * inv_pow(16, e);
    (rho, alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticData {
    pub k: usize,
    pub set: ExpansionSet,
    pub rho: Real,
    pub alpha: Real,
    pub rho_expansion: Real,
    pub alpha_expansion: Real,
    /// `|rho - expansion|`
    pub rho_residual: Real,
    pub alpha_residual: Real,
    /// `k^3 / 32^k`
    pub rho_scale: Real,
    /// `k^4 / 16^k`
    pub alpha_scale: Real,
    pub rho_ratio: f64,
    pub alpha_ratio: f64,
}

/// Pole, residue, and their distance to the truncated expansions measured
/// in units of the next-order magnitudes.
pub fn verify_expansions(k: usize, set: ExpansionSet) -> Result<AsymptoticData> {
    let rho = dominant_pole(k)?;
    let alpha = residue_at_pole(k, &rho)?;
    let rho_expansion = real_from_ratio(&rho_expansion(k, set));
    let alpha_expansion = real_from_ratio(&alpha_expansion(k, set));
    let rho_residual = (rho.clone() - &rho_expansion).abs();
    let alpha_residual = (alpha.clone() - &alpha_expansion).abs();
    let kk = ratio(k as i64, 1);
    let rho_scale = real_from_ratio(&(Pow::pow(&kk, 3u32) * inv_pow(32, k)));
    let alpha_scale = real_from_ratio(&(Pow::pow(&kk, 4u32) * inv_pow(16, k)));
    Ok(AsymptoticData {
        k,
        set,
        rho_ratio: to_f64(&(rho_residual.clone() / &rho_scale)),
        alpha_ratio: to_f64(&(alpha_residual.clone() / &alpha_scale)),
        rho,
        alpha,
        rho_expansion,
        alpha_expansion,
        rho_residual,
        alpha_residual,
        rho_scale,
        alpha_scale,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceLaw {
    pub k: usize,
    pub l: usize,
    pub second_moment: BigInt,
    /// `E(X)^2 = (k+1)^(2l)`
    pub mean_square: BigInt,
    pub variance: BigInt,
    /// `variance / ((3/2) 2^((k+1)l))`
    pub ratio: f64,
    pub relative_variance: BigRational,
    /// `relative_variance / ((3/2)(2^(k+1)/(k+1)^2)^l)`
    pub relative_ratio: f64,
}

/// Exact `Var(X_{k,l})` against `(3/2) 2^((k+1)l)`.
pub fn variance_law_check(k: usize, l: usize) -> Result<VarianceLaw> {
    let second_moment = nes_moment_gf(k)?.coeff(l)?;
    let mean_square = first_moment_gf(k)?.coeff(l)?;
    let variance = &second_moment - &mean_square;
    let prediction = ratio(3, 2) * ratio(BigInt::one() << ((k + 1) * l), 1);
    let relative_variance = ratio(variance.clone(), mean_square.clone());
    let rel_prediction =
        ratio(3, 2) * Pow::pow(ratio(BigInt::one() << (k + 1), (k + 1) * (k + 1)), l);
    Ok(VarianceLaw {
        k,
        l,
        ratio: ratio_to_f64(&(ratio(variance.clone(), 1) / prediction)),
        relative_ratio: ratio_to_f64(&(&relative_variance / rel_prediction)),
        second_moment,
        mean_square,
        variance,
        relative_variance,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRow {
    pub l: usize,
    /// `|alpha rho^-l - E(X^2)| / E(X^2)`
    pub relative_error: f64,
    /// `relative_error / ((9 rho)^l k)`
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolePrediction {
    pub k: usize,
    pub rows: Vec<PredictionRow>,
    /// Smallest `C` with `relative_error <= C (9 rho)^l k` on all rows.
    pub fitted_c: f64,
}

/// Compares `alpha_k rho_k^-l` with the exact coefficients for `1 <= l <= lmax`.
pub fn pole_prediction(k: usize, lmax: usize) -> Result<PolePrediction> {
    let rho = dominant_pole(k)?;
    let alpha = residue_at_pole(k, &rho)?;
    let coeffs = nes_moment_gf(k)?.coefficients(lmax)?;
    let nine_rho = rho.clone() * real(9);
    let mut rows = Vec::with_capacity(lmax);
    let mut pred = alpha;
    let mut decay = real(k as i64);
    for (l, c) in coeffs.iter().enumerate().skip(1) {
        pred /= &rho;
        decay *= &nine_rho;
        let exact = real_from_bigint(c);
        let err = (pred.clone() - &exact).abs() / &exact;
        rows.push(PredictionRow {
            l,
            relative_error: to_f64(&err),
            normalized: to_f64(&(err / &decay)),
        });
    }
    let fitted_c = rows.iter().map(|r| r.normalized).fold(0.0, f64::max);
    Ok(PolePrediction { k, rows, fitted_c })
}

#[cfg(test)]
mod tests {
    use super::real::to_decimal_string;
    use super::*;

    #[test]
    fn small_poles() {
        assert_eq!(to_f64(&dominant_pole(1).unwrap()), 0.25);
        let rho2 = dominant_pole(2).unwrap();
        let exact = (real(105).sqrt() - real(9)) / real(12);
        assert!(to_f64(&(rho2.clone() - exact).abs()) < 1e-60);
        let alpha2 = residue_at_pole(2, &rho2).unwrap();
        assert!((to_f64(&alpha2) - 1.036745040).abs() < 1e-9);
        assert!(to_decimal_string(&alpha2, 6).starts_with("1.03675"));
        assert!(dominant_pole(0).is_err());
    }

    #[test]
    fn pole_is_unique_and_accurate() {
        for k in 1..=30 {
            let p = locate_pole(k).unwrap();
            assert_eq!(p.descartes_count, 1, "k={k}");
            assert!(p.residual < 1e-30, "k={k}: {}", p.residual);
        }
    }

    #[test]
    fn leading_term_residual_decreases() {
        let mut prev = f64::INFINITY;
        for k in 6..=20 {
            let rho = dominant_pole(k).unwrap();
            let dev = to_f64(&(rho * pow2(k as isize + 1) - real(1)).abs());
            assert!(dev < prev, "k={k}");
            prev = dev;
        }
    }

    #[test]
    fn residue_tends_to_three_halves() {
        for k in 10..=30 {
            let alpha = residue_at_pole(k, &dominant_pole(k).unwrap()).unwrap();
            let dev = to_f64(&(alpha - real(3) / real(2)).abs());
            let bound = 2.0 * (9.0 * k as f64 - 4.0) / 2f64.powi(k as i32 + 2);
            assert!(dev <= bound, "k={k}");
        }
    }

    #[test]
    fn expansions_agree_on_their_common_terms() {
        for k in [3, 10, 25] {
            let p = alpha_expansion(k, ExpansionSet::Printed);
            let c = alpha_expansion(k, ExpansionSet::Corrected);
            // both start 3/2 - (9k-4)/2^(k+2)
            let diff = ratio_to_f64(&(p - c).abs());
            assert!(
                diff < 100.0 * (k * k) as f64 / 4f64.powi(k as i32 + 1),
                "k={k}"
            );
        }
    }

    #[test]
    fn corrected_expansions_leave_the_fifth_term() {
        for k in 10..=16 {
            let d = verify_expansions(k, ExpansionSet::Corrected).unwrap();
            let (rho5, alpha5) = corrected_next_terms(k);
            let rho_left = to_f64(&(d.rho.clone() - &d.rho_expansion)) / ratio_to_f64(&rho5);
            let alpha_left =
                to_f64(&(d.alpha.clone() - &d.alpha_expansion)) / ratio_to_f64(&alpha5);
            assert!((rho_left - 1.0).abs() < 0.2, "k={k}: {rho_left}");
            assert!((alpha_left - 1.0).abs() < 0.2, "k={k}: {alpha_left}");
        }
    }

    #[test]
    fn variance_law() {
        let v = variance_law_check(2, 2).unwrap();
        assert_eq!(v.variance, BigInt::from(15));
        assert_eq!(v.relative_variance, ratio(5, 27));
        let v = variance_law_check(10, 8).unwrap();
        assert!((0.85..=1.15).contains(&v.ratio), "{}", v.ratio);
        assert!(
            (0.85..=1.15).contains(&v.relative_ratio),
            "{}",
            v.relative_ratio
        );
    }

    #[test]
    fn prediction_converges() {
        let rho = dominant_pole(3).unwrap();
        let alpha = residue_at_pole(3, &rho).unwrap();
        let c40 = nes_moment_gf(3).unwrap().coeff(40).unwrap();
        let scaled = real_from_bigint(&c40) * rho.powi(40.into());
        assert!(to_f64(&((scaled - &alpha) / &alpha).abs()) < 1e-6);

        for k in 6..=10 {
            let p = pole_prediction(k, 20).unwrap();
            assert_eq!(p.rows.len(), 20);
            assert!(p.fitted_c.is_finite() && p.fitted_c > 0.0);
        }
    }
}
