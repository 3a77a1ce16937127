//! Closed-form critical values p_min / p_max as functions of k and the
//! branching number, and the phase-diagram table built from them.

use crate::error::{PercError, Result};
use crate::shearer::{curve_gk, p_shearer_kfuzz};
use serde::Serialize;

/// Which branch of the p_max formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// br < (k+1)/k: p_max = g_k(br).
    Gk,
    /// br ≥ (k+1)/k: p_max = p_sh of the k-fuzz of the integers.
    Shearer,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", match self {
            Regime::Gk => "gk",
            Regime::Shearer => "shearer",
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalValuePair {
    pub k: usize,
    pub br: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub regime: Regime,
}

/// p_min = br^-(k+1); p_max = g_k(br) below the corner (k+1)/k and the
/// k-fuzz p_sh above it. For k = 0 the corner is at infinity (1/0 := ∞),
/// so p_max = g_0(br) = 1/br = p_min for every branching number.
pub fn critical_values(k: usize, br: f64) -> Result<CriticalValuePair> {
    if !(br >= 1.0) {
        return Err(PercError::Domain(format!(
            "branching number must be >= 1, got {br}"
        )));
    }
    let p_min = br.powi(-(k as i32) - 1);
    let corner = if k == 0 { f64::INFINITY } else { (k as f64 + 1.0) / k as f64 };
    let (p_max, regime) = if br >= corner {
        (p_shearer_kfuzz(k), Regime::Shearer)
    } else {
        (curve_gk(k, br), Regime::Gk)
    };
    Ok(CriticalValuePair { k, br, p_min, p_max, regime })
}

/// Rows (k, br, p_min, p_max, regime) over a branching-number grid, plus the
/// corner points ((k+1)/k, p_sh) for every k ≥ 1 in the set.
pub fn figure_data(ks: &[usize], br_grid: &[f64]) -> Result<Vec<CriticalValuePair>> {
    let mut rows = Vec::with_capacity(ks.len() * (br_grid.len() + 1));
    for &k in ks {
        for &br in br_grid {
            rows.push(critical_values(k, br)?);
        }
        if k >= 1 {
            let corner = (k as f64 + 1.0) / k as f64;
            rows.push(critical_values(k, corner)?);
        }
    }
    Ok(rows)
}

/// The default grid of the phase-diagram export: br in [1, 2.5] by 0.01.
pub fn default_br_grid() -> Vec<f64> {
    (100..=250).map(|i| i as f64 / 100.0).collect()
}
