//! Exact generating functions for the second moments of the samplers.
//!
//! For NES walks in a rectangle of height `k`,
//! `M_k(x) = sum_l E(X_{k,l}^2) x^l = 2x N_k / G_k` where `N_k`, `G_k` obey
//! `u_k = (5+9x) u_{k-2} - 4 u_{k-4}`. They are specializations of the
//! four-variable series `T_k(x,y,a,b) = N_k/G_k` counting strip walks by
//! horizontal steps (`x`), vertical steps (`y`) and contacts (`a`, `b`).

pub mod multi;
pub mod poly;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Pow, Zero};

pub use multi::MultiPolynomial;
pub use poly::{series_coeff, Polynomial, RationalSeries};

use crate::error::{Result, SawError};

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(SawError::InvalidParameter(
            "strip height k must be >= 1".into(),
        ));
    }
    Ok(())
}

/// Univariate `(N_k, G_k)`.
pub fn nes_polynomials(k: usize) -> Result<(Polynomial, Polynomial)> {
    check_k(k)?;
    let p = Polynomial::from_i64;
    let mut n = vec![p(&[2]), p(&[5, 3]), p(&[11, 9]), p(&[23, 54, 27])];
    let mut g = vec![
        p(&[1, -4]),
        p(&[1, -9, -6]),
        p(&[1, -19, -18]),
        p(&[1, -36, -99, -54]),
    ];
    let c = p(&[5, 9]);
    let four = p(&[4]);
    for i in 4..k {
        n.push(&(&c * &n[i - 2]) - &(&four * &n[i - 4]));
        g.push(&(&c * &g[i - 2]) - &(&four * &g[i - 4]));
    }
    Ok((n.swap_remove(k - 1), g.swap_remove(k - 1)))
}

/// `M_k(x) = 2x N_k / G_k`, the generating function of `E(X_{k,l}^2)`.
pub fn nes_moment_gf(k: usize) -> Result<RationalSeries> {
    let (n, g) = nes_polynomials(k)?;
    RationalSeries::new(&Polynomial::from_i64(&[0, 2]) * &n, g)
}

/// `(k+1)^2 x / (1 - (k+1)^2 x)`, the generating function of
/// `E(X_{k,l})^2 = (k+1)^(2l)`.
pub fn first_moment_gf(k: usize) -> Result<RationalSeries> {
    check_k(k)?;
    let s = BigInt::from((k + 1) * (k + 1));
    RationalSeries::new(
        Polynomial::new(vec![BigInt::zero(), s.clone()]),
        Polynomial::new(vec![1.into(), -s]),
    )
}

/// Numerator and denominator of `T_k(x,y,a,b;1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripGf {
    pub k: usize,
    pub n: MultiPolynomial,
    pub g: MultiPolynomial,
}

type M = MultiPolynomial;

fn m(terms: &[(i64, [i32; 4])]) -> M {
    terms
        .iter()
        .fold(M::zero(), |acc, &(c, e)| &acc + &M::term(c, e))
}

/// `1 - x + y^2 (1 + x)`
fn strip_kernel() -> M {
    m(&[
        (1, [0; 4]),
        (-1, [1, 0, 0, 0]),
        (1, [0, 2, 0, 0]),
        (1, [1, 2, 0, 0]),
    ])
}

fn n_seeds() -> [M; 4] {
    let one_x_xy = m(&[(1, [0; 4]), (-1, [1, 0, 0, 0]), (-1, [1, 1, 0, 0])]);
    let b_minus_y = m(&[(1, [0, 0, 0, 1]), (-1, [0, 1, 0, 0])]);
    [
        // N_{-1} = (1-x-xy)(b-y)/y^2
        &(&one_x_xy * &b_minus_y) * &M::y_pow(-2),
        // N_0 = (b - xb + xy)/y
        &m(&[(1, [0, 0, 0, 1]), (-1, [1, 0, 0, 1]), (1, [1, 1, 0, 0])]) * &M::y_pow(-1),
        // N_1 = 1 + b
        m(&[(1, [0; 4]), (1, [0, 0, 0, 1])]),
        // N_2 = 1 - x + y + by(1+x)
        m(&[
            (1, [0; 4]),
            (-1, [1, 0, 0, 0]),
            (1, [0, 1, 0, 0]),
            (1, [0, 1, 0, 1]),
            (1, [1, 1, 0, 1]),
        ]),
    ]
}

fn g_seeds() -> [M; 4] {
    let one_minus_a = m(&[(1, [0; 4]), (-1, [0, 0, 1, 0])]);
    let one_minus_x = m(&[(1, [0; 4]), (-1, [1, 0, 0, 0])]);
    [
        // G_0 = (x-1)ab/y - (x+1)(a-1)
        &(&m(&[(1, [1, 0, 1, 1]), (-1, [0, 0, 1, 1])]) * &M::y_pow(-1))
            - &m(&[
                (1, [1, 0, 1, 0]),
                (-1, [1, 0, 0, 0]),
                (1, [0, 0, 1, 0]),
                (-1, [0; 4]),
            ]),
        // G_1 = 1 - a - ab
        m(&[(1, [0; 4]), (-1, [0, 0, 1, 0]), (-1, [0, 0, 1, 1])]),
        // G_2 = (1-x)(1-a) - (x+1)yab
        &(&one_minus_x * &one_minus_a) - &m(&[(1, [1, 1, 1, 1]), (1, [0, 1, 1, 1])]),
        // G_3 = (1-x-xy)(1-a) - yab(x+y+xy)
        &(&m(&[(1, [0; 4]), (-1, [1, 0, 0, 0]), (-1, [1, 1, 0, 0])]) * &one_minus_a)
            - &m(&[(1, [1, 1, 1, 1]), (1, [0, 2, 1, 1]), (1, [1, 2, 1, 1])]),
    ]
}

/// Runs `u_i = c u_{i-2} - y^2 u_{i-4}` from four seeds at indices
/// `first..first+4` up to index `k`.
fn step_two(seeds: [M; 4], first: i32, k: i32) -> M {
    let c = strip_kernel();
    let y2 = M::y_pow(2);
    let mut u: Vec<M> = seeds.into();
    let mut idx = first + 3;
    while idx < k {
        let i = u.len();
        u.push(&(&c * &u[i - 2]) - &(&y2 * &u[i - 4]));
        idx += 1;
    }
    u.swap_remove((k - first) as usize)
}

/// Multivariate `N_k`, `G_k` with `T_k(1) = N_k / G_k`.
pub fn strip_gf_multivariate(k: usize) -> Result<StripGf> {
    check_k(k)?;
    let ki = k as i32;
    let n = step_two(n_seeds(), -1, ki);
    let g = step_two(g_seeds(), 0, ki);
    debug_assert!(n.is_polynomial() && g.is_polynomial());
    Ok(StripGf { k, n, g })
}

impl StripGf {
    /// Whether `2x N_k(3x,2,2x,1) / G_k(3x,2,2x,1)` equals `M_k(x)` as
    /// rational functions.
    pub fn matches_moment_gf(&self) -> Result<bool> {
        let ns = self.n.moment_specialization()?;
        let gs = self.g.moment_specialization()?;
        let (n, g) = nes_polynomials(self.k)?;
        Ok(&ns * &g == &n * &gs)
    }
}

/// `F_k` with `T_{k,k} = b y^(k-1) / F_k`, and `F_k / G_k` when it is a
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TkkGf {
    pub k: usize,
    pub f: MultiPolynomial,
    pub quotient_by_g: Option<MultiPolynomial>,
}

/// `F_k = (1-x+(1+x)y^2) F_{k-1} - y^2 F_{k-2}`.
pub fn t_kk(k: usize) -> Result<TkkGf> {
    check_k(k)?;
    let one_minus_a = m(&[(1, [0; 4]), (-1, [0, 0, 1, 0])]);
    let ab = M::term(1, [0, 0, 1, 1]);
    let f1 = &(&one_minus_a - &ab) * &(&one_minus_a + &ab);
    // F_2 = (1-a+bya)((1-x)(1-a)-(x+1)yab)
    let f2 = &(&one_minus_a + &M::term(1, [0, 1, 1, 1])) * &g_seeds()[2];
    let c = strip_kernel();
    let y2 = M::y_pow(2);
    let mut f = vec![f1, f2];
    for i in 2..k {
        f.push(&(&c * &f[i - 1]) - &(&y2 * &f[i - 2]));
    }
    let f = f.swap_remove(k - 1);
    let g = strip_gf_multivariate(k)?.g;
    let quotient_by_g = f.div_exact(&g);
    Ok(TkkGf {
        k,
        f,
        quotient_by_g,
    })
}

/// Exact coefficients of `2x/(1+2x) (3 (1-16x)^(-1/2) - 1)`, the generating
/// function of `E(X_k^2)` for directed walks.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirectedGf;

pub fn directed_gf() -> DirectedGf {
    DirectedGf
}

impl DirectedGf {
    /// Coefficients of `x^0 ..= x^kmax`.
    pub fn coefficients(&self, kmax: usize) -> Vec<BigInt> {
        // 3 (1-16x)^(-1/2) - 1 = sum a_n x^n, a_0 = 2, a_n = 3 C(2n,n) 4^n
        let a: Vec<BigInt> = (0..kmax)
            .map(|n| {
                if n == 0 {
                    BigInt::from(2)
                } else {
                    BigInt::from(3)
                        * binomial(BigInt::from(2 * n), BigInt::from(n))
                        * Pow::pow(BigInt::from(4), n)
                }
            })
            .collect();
        // divide by (1+2x), then multiply by 2x
        let mut q: Vec<BigInt> = Vec::with_capacity(kmax);
        for (n, an) in a.iter().enumerate() {
            let prev = if n == 0 {
                BigInt::zero()
            } else {
                &q[n - 1] * 2
            };
            q.push(an - prev);
        }
        std::iter::once(BigInt::zero())
            .chain(q.into_iter().map(|c| c * 2))
            .collect()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coefficients(k).pop().expect("non-empty")
    }

    /// `16^k / (3 sqrt(pi k))`
    pub fn asymptotic(&self, k: usize) -> f64 {
        16f64.powi(k as i32) / (3.0 * (std::f64::consts::PI * k as f64).sqrt())
    }
}
