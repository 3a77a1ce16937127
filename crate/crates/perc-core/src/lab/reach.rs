//! Monte Carlo estimation of P(root ↔ level n).
//!
//! Each replica is a pure function of (seed, replica index): exploration
//! descends depth-first, samples a vertex bit only when the vertex is
//! reached through open ancestors, and exits at the first open vertex on
//! the target level. Reductions are integer sums, so results are
//! bit-identical for a fixed seed regardless of worker count.

use crate::error::{PercError, Result};
use crate::fission::{ModelKind, PercolationModel};
use crate::line::Constraint;
use crate::rng;
use crate::tree::TreeView;
use rayon::prelude::*;
use serde::Serialize;

/// 97.5% normal quantile, for 95% Wilson score intervals.
pub const WILSON_Z: f64 = 1.959963984540054;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReachEstimate {
    pub depth: u32,
    pub replicas: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
}

fn wilson(successes: u64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let ph = successes as f64 / nf;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / nf;
    let center = (ph + z2 / (2.0 * nf)) / denom;
    let half = WILSON_Z * (ph * (1.0 - ph) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Monte Carlo estimate of P(o ↔ level `depth`), with a 95% Wilson score
/// interval. Stream id = replica index.
pub fn simulate_reach(
    model: &PercolationModel,
    depth: u32,
    replicas: u64,
    seed: u64,
) -> Result<ReachEstimate> {
    if replicas == 0 {
        return Err(PercError::Invalid("at least one replica is required".into()));
    }
    if depth > model.tree().depth() {
        return Err(PercError::Invalid(format!(
            "depth {depth} exceeds truncation depth {}",
            model.tree().depth()
        )));
    }
    if let TreeView::Implicit(t) = model.tree() {
        if !t.addressable() {
            return Err(PercError::Resource(
                "truncation too large to address vertices for sampling".into(),
            ));
        }
    }
    let successes: u64 = (0..replicas)
        .into_par_iter()
        .map(|r| replica_reaches(model, depth, seed, r).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let (ci_lo, ci_hi) = wilson(successes, replicas);
    Ok(ReachEstimate {
        depth,
        replicas,
        successes,
        estimate: successes as f64 / replicas as f64,
        ci_lo,
        ci_hi,
        seed,
    })
}

/// Reach estimates for every level 0..=depth. Replicas share vertex-keyed
/// draws across depths, so the per-depth results are views of one
/// underlying realization per replica.
pub fn reach_curve(
    model: &PercolationModel,
    depth: u32,
    replicas: u64,
    seed: u64,
) -> Result<Vec<ReachEstimate>> {
    (0..=depth).map(|d| simulate_reach(model, d, replicas, seed)).collect()
}

fn replica_reaches(
    model: &PercolationModel,
    depth: u32,
    seed: u64,
    stream: u64,
) -> Result<bool> {
    if model.kind() == ModelKind::Multiplex {
        let line = model.law().sample_prefix(depth as usize + 1, seed, stream)?;
        return Ok(line.bits().iter().all(|&b| b));
    }
    match model.tree() {
        TreeView::Materialized { tree, .. } => {
            let mut stack = vec![(0usize, model.law().forward())];
            while let Some((v, mut pass)) = stack.pop() {
                let p1 = pass.prob_one();
                if !(rng::uniform(seed, stream, v as u64) < p1) {
                    continue;
                }
                if tree.level(v) == depth {
                    return Ok(true);
                }
                pass.step(Constraint::One)?;
                for &c in tree.children(v) {
                    stack.push((c as usize, pass.clone()));
                }
            }
            Ok(false)
        }
        TreeView::Implicit(t) => {
            // Entries carry (level, index within level, filter state).
            let mut stack = vec![(0u32, 0u64, model.law().forward())];
            while let Some((level, idx, mut pass)) = stack.pop() {
                let id = t.vertex_id(level, idx).expect("checked addressable");
                let p1 = pass.prob_one();
                if !(rng::uniform(seed, stream, id) < p1) {
                    continue;
                }
                if level == depth {
                    return Ok(true);
                }
                pass.step(Constraint::One)?;
                let c = t.children_at_level(level);
                for j in 0..c {
                    stack.push((level + 1, idx * c + j, pass.clone()));
                }
            }
            Ok(false)
        }
    }
}
