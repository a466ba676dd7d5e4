//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the lines are visible under `cargo test`.
//! Exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use rand::Rng;
use sawsis::asymptotics::real::{real, real_from_ratio, sqrt, to_f64, Real};
use sawsis::asymptotics::{
    bounds::growth_bounds, dominant_pole, residue_at_pole, variance_law_check, verify_expansions,
    ExpansionSet,
};
use sawsis::enumerate::{
    directed_closed_sum, enumerate_crossing, enumerate_directed, enumerate_nes, EnumLimits,
};
use sawsis::estimator::estimate_parallel;
use sawsis::genfunc::{directed_gf, strip_gf_multivariate, t_kk};
use sawsis::{is_trapping_step, rng, sample_untrapped, series_coeff, Direction, ModelParams};

use common::head_is_enclosed;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn c1_nes_moments() -> Outcome {
    let limits = EnumLimits::default();
    let mut pairs = 0;
    for k in 1..=4 {
        let gf = sawsis::genfunc::nes_moment_gf(k).unwrap();
        for l in 1..=6 {
            let brute = enumerate_nes(k, l, &limits).unwrap();
            if series_coeff(&gf, l).unwrap() != BigInt::from(brute.weighted_sum.clone()) {
                return (false, format!("mismatch at k={k}, l={l}"));
            }
            pairs += 1;
        }
    }
    let gf = sawsis::genfunc::nes_moment_gf(2).unwrap();
    let named = (series_coeff(&gf, 1).unwrap(), series_coeff(&gf, 2).unwrap());
    let ok = named == (BigInt::from(10), BigInt::from(96));
    (
        ok,
        format!(
            "{pairs} (k,l) pairs exact; k=2 gives {} and {}",
            named.0, named.1
        ),
    )
}

fn c2_directed() -> Outcome {
    let limits = EnumLimits::default();
    let series = directed_gf().coefficients(12);
    for (k, from_series) in series.iter().enumerate().skip(1) {
        let r = enumerate_directed(k, &limits).unwrap();
        let closed = directed_closed_sum(k);
        let central = binomial(BigUint::from(2 * k), BigUint::from(k));
        let agree = r.exhaustive
            && r.weighted_sum == closed
            && *from_series == BigInt::from(closed.clone())
            && r.count == central;
        if !agree {
            return (false, format!("disagreement at k={k}"));
        }
    }
    let k2 = directed_closed_sum(2);
    (
        k2 == BigUint::from(40u8),
        format!("k=1..12 agree; E(X_2^2) = {k2}"),
    )
}

fn c3_crossing_truth() -> Outcome {
    let limits = EnumLimits::default();
    let got: Vec<(BigUint, BigUint)> = (1..=3)
        .map(|k| {
            let r = enumerate_crossing(k, &limits).unwrap();
            (r.count, r.weighted_sum)
        })
        .collect();
    let again = enumerate_crossing(3, &limits).unwrap();
    let expected = [(2u32, 4u32), (12, 152), (184, 49_776)];
    let ok = got
        .iter()
        .zip(expected)
        .all(|((c, d), (ec, ed))| *c == BigUint::from(ec) && *d == BigUint::from(ed))
        && (again.count, again.weighted_sum) == got[2];
    (
        ok,
        format!(
            "c = {}, {}, {}; d = {}, {}, {}",
            got[0].0, got[1].0, got[2].0, got[0].1, got[1].1, got[2].1
        ),
    )
}

fn c4_unbiased() -> Outcome {
    let params = ModelParams::Crossing { k: 3 };
    let target = 184.0;
    let mut covered = 0;
    for run in 0..20u64 {
        let acc = estimate_parallel(&params, 50_000, 4_000 + run, 4).unwrap();
        let e = acc.estimate().unwrap();
        let se = e.std_error.unwrap();
        if (e.mean_f64 - target).abs() <= 3.0 * se {
            covered += 1;
        }
    }
    (covered >= 18, format!("{covered}/20 runs cover c(3) = 184"))
}

fn c5_order_of_magnitude() -> Outcome {
    let acc = estimate_parallel(&ModelParams::Crossing { k: 10 }, 10_000, 1_976, 4).unwrap();
    let e = acc.estimate().unwrap();
    let lg = e.mean_f64.log10();
    (
        (23.3..=24.7).contains(&lg),
        format!(
            "mean {:.3e}, log10 {lg:.3} (exact count 1.568e24)",
            e.mean_f64
        ),
    )
}

fn c6_asymptotics() -> Outcome {
    let rho2 = dominant_pole(2).unwrap();
    let exact: Real =
        (sqrt(&sawsis::asymptotics::real::complex(real(105), real(0))).re - real(9)) / real(12);
    let rho_err = to_f64(&(rho2 - exact)).abs();
    let alpha20 = residue_at_pole(20, &dominant_pole(20).unwrap()).unwrap();
    let alpha_err =
        to_f64(&(alpha20 - real_from_ratio(&BigRational::new(3.into(), 2.into())))).abs();

    let mut worst = (0usize, 0.0f64, 0.0f64);
    let mut residual_ok = true;
    for k in 10..=16 {
        let d = verify_expansions(k, ExpansionSet::Printed).unwrap();
        if d.rho_ratio.max(d.alpha_ratio) > worst.1.max(worst.2) {
            worst = (k, d.rho_ratio, d.alpha_ratio);
        }
        residual_ok &= d.rho_ratio < 10.0 && d.alpha_ratio < 10.0;
    }
    let ok = rho_err < 1e-20 && alpha_err < 1e-4 && residual_ok;
    (
        ok,
        format!(
            "|rho_2 err| {rho_err:.1e}, |alpha_20 - 3/2| {alpha_err:.1e}; worst residual ratio at k={}: rho {:.3e}, alpha {:.3e} (limit 10)",
            worst.0, worst.1, worst.2
        ),
    )
}

fn c7_variance() -> Outcome {
    let v = variance_law_check(10, 8).unwrap();
    (
        (0.8..=1.2).contains(&v.ratio),
        format!("ratio {:.4} at k=10, l=8", v.ratio),
    )
}

fn c8_traps() -> Outcome {
    let mut r = rng::stream(88, 0);
    let (mut checked, mut traps, mut bad) = (0, 0, 0);
    for _ in 0..10_000 {
        let n = r.random_range(1..=200);
        let s = sample_untrapped(n, &mut r).unwrap();
        let occupied: std::collections::HashSet<_> = s.walk.vertices().into_iter().collect();
        for d in Direction::ALL {
            if occupied.contains(&(s.walk.end() + d)) {
                continue;
            }
            checked += 1;
            let fast = is_trapping_step(&s.walk, d).unwrap();
            traps += usize::from(fast);
            bad += usize::from(fast != head_is_enclosed(&s.walk, d));
        }
    }
    (
        bad == 0,
        format!("{checked} candidate steps, {traps} trapping, {bad} disagreements"),
    )
}

fn c9_multivariate() -> Outcome {
    for k in 1..=6 {
        let s = strip_gf_multivariate(k).unwrap();
        if !s.matches_moment_gf().unwrap() {
            return (false, format!("specialization fails at k={k}"));
        }
        let t = t_kk(k).unwrap();
        match t.quotient_by_g {
            Some(q) if &q * &s.g == t.f => {}
            _ => return (false, format!("G_k does not divide F_k at k={k}")),
        }
    }
    (
        true,
        "specialization and divisibility hold for k=1..6".into(),
    )
}

fn c10_bounds() -> Outcome {
    let limits = EnumLimits::default();
    let reports: Vec<_> = (1..=3)
        .map(|k| enumerate_crossing(k, &limits).unwrap())
        .collect();
    let full = growth_bounds(&reports).unwrap();
    let two = growth_bounds(&reports[..2]).unwrap();
    let monotone = |v: &[f64]| v.windows(2).all(|w| w[0] <= w[1]);
    let target = 12f64.powf(1.0 / 9.0);
    let ok = monotone(&full.lambda_prefix)
        && monotone(&full.beta_prefix)
        && (two.lambda_lb - target).abs() < 1e-12;
    (
        ok,
        format!(
            "lambda_lb(k<=2) = {:.6}, beta_lb(k<=2) = {:.6}; k<=3: {:.6}, {:.6}",
            two.lambda_lb, two.beta_lb, full.lambda_lb, full.beta_lb
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact NES moments", c1_nes_moments),
        ("directed moments", c2_directed),
        ("crossing ground truth", c3_crossing_truth),
        ("estimator unbiasedness", c4_unbiased),
        ("k=10 order of magnitude", c5_order_of_magnitude),
        ("pole and residue asymptotics", c6_asymptotics),
        ("variance law", c7_variance),
        ("trap detection", c8_traps),
        ("multivariate consistency", c9_multivariate),
        ("growth bounds", c10_bounds),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {}: {name}: {detail} [{secs:.1}s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
