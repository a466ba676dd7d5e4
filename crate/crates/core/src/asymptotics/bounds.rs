//! Lower bounds on the growth constants of crossing walks.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumerate::EnumReport;
use crate::error::{Result, SawError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub k: usize,
    #[serde(with = "crate::decimal")]
    pub c: BigUint,
    #[serde(with = "crate::decimal")]
    pub d: BigUint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub table: Vec<BoundsRow>,
    /// `max_k c(k)^(1/(k+1)^2)`
    pub lambda_lb: f64,
    /// `max_k (sqrt(2) d(k))^(1/(k+1)^2)`
    pub beta_lb: f64,
    /// `lambda_lb` over each prefix `1..=k` of the table.
    pub lambda_prefix: Vec<f64>,
    pub beta_prefix: Vec<f64>,
}

fn ln_big(v: &BigUint) -> f64 {
    // exact enough for the bit lengths enumeration can reach
    let bits = v.bits();
    if bits <= 1000 {
        num_traits::ToPrimitive::to_f64(v).map_or(f64::INFINITY, f64::ln)
    } else {
        let shift = bits - 900;
        num_traits::ToPrimitive::to_f64(&(v >> shift)).map_or(f64::INFINITY, f64::ln)
            + shift as f64 * std::f64::consts::LN_2
    }
}

/// Growth-constant lower bounds from exact `c(k) = E(X_k)` and
/// `d(k) = E(X_k^2)`, for crossing reports with `k = 1, 2, ...`.
pub fn growth_bounds(reports: &[EnumReport]) -> Result<BoundsReport> {
    if reports.is_empty() {
        return Err(SawError::EmptyTable);
    }
    let mut table: Vec<BoundsRow> = reports
        .iter()
        .map(|r| BoundsRow {
            k: r.k,
            c: r.count.clone(),
            d: r.weighted_sum.clone(),
        })
        .collect();
    table.sort_by_key(|r| r.k);
    if table.iter().enumerate().any(|(i, r)| r.k != i + 1) {
        return Err(SawError::Precondition(
            "bounds need c(k), d(k) for k = 1, 2, ... without gaps".into(),
        ));
    }
    let mut lambda_prefix = Vec::with_capacity(table.len());
    let mut beta_prefix = Vec::with_capacity(table.len());
    let (mut lam, mut beta) = (0f64, 0f64);
    for row in &table {
        let area = ((row.k + 1) * (row.k + 1)) as f64;
        lam = lam.max((ln_big(&row.c) / area).exp());
        beta = beta.max(((ln_big(&row.d) + 0.5 * std::f64::consts::LN_2) / area).exp());
        lambda_prefix.push(lam);
        beta_prefix.push(beta);
    }
    Ok(BoundsReport {
        table,
        lambda_lb: lam,
        beta_lb: beta,
        lambda_prefix,
        beta_prefix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::Model;

    fn report(k: usize, c: u64, d: u64) -> EnumReport {
        EnumReport {
            model: Model::Crossing,
            k,
            l: None,
            count: c.into(),
            weighted_sum: d.into(),
            weighted_sq_sum: None,
            exhaustive: true,
        }
    }

    #[test]
    fn small_tables() {
        let b = growth_bounds(&[report(1, 2, 4)]).unwrap();
        assert!((b.lambda_lb - 2f64.powf(0.25)).abs() < 1e-12);
        let b = growth_bounds(&[report(2, 12, 152), report(1, 2, 4)]).unwrap();
        assert!((b.lambda_lb - 12f64.powf(1.0 / 9.0)).abs() < 1e-12);
        assert!((b.beta_lb - (2f64.sqrt() * 152.0).powf(1.0 / 9.0)).abs() < 1e-12);
        assert_eq!(b.table[0].k, 1);
        assert!(growth_bounds(&[]).is_err());
        assert!(growth_bounds(&[report(2, 12, 152)]).is_err());
    }

    #[test]
    fn log_of_huge_values() {
        let v = BigUint::from(3u8).pow(2000);
        assert!((ln_big(&v) / 3f64.ln() - 2000.0).abs() < 1e-9);
    }
}
