//! Open-cluster diameter statistics.
//!
//! Two engines share one report shape. On materialized truncations every
//! cluster of every replica is enumerated exactly (double BFS per cluster).
//! On implicit truncations — which exist because e.g. a depth-30 binary
//! tree cannot be built vertex-by-vertex — the engine grows, per replica
//! and per level, the cluster of the canonical vertex of that level, with
//! exact lazy conditional sampling. Level-homogeneous trees are
//! vertex-transitive within a level, so the canonical anchor observes the
//! same cluster law as any other vertex of its level.

use crate::error::{PercError, Result};
use crate::fission::{ModelKind, PercolationModel};
use crate::line::{Constraint, ForwardPass};
use crate::rng;
use crate::tree::{ImplicitTree, RootedTree, TreeView};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterMode {
    /// Full sample, all clusters (materialized trees).
    Exhaustive,
    /// Lazily grown clusters of one anchor per level (implicit trees).
    Anchored,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiameterStats {
    pub mode: DiameterMode,
    pub depth: u32,
    pub replicas: u64,
    pub seed: u64,
    /// Largest observed cluster diameter (in edges) over all replicas.
    pub max_diameter: u32,
    /// Per-replica maximum diameter histogram: (diameter, replica count).
    pub histogram: Vec<(u32, u64)>,
    /// Clusters whose growth hit the exploration cap (diameters reported
    /// for them are lower bounds). Zero in every bounded-diameter regime.
    pub truncated_clusters: u64,
}

/// Per-replica maximum open-cluster diameter, aggregated over replicas.
///
/// `mode = None` picks exhaustively for materialized trees and anchored
/// for implicit ones. `growth_cap` bounds per-cluster exploration in
/// anchored mode.
pub fn cluster_diameter_stats(
    model: &PercolationModel,
    depth: u32,
    replicas: u64,
    seed: u64,
    mode: Option<DiameterMode>,
    growth_cap: usize,
) -> Result<DiameterStats> {
    if replicas == 0 {
        return Err(PercError::Invalid("at least one replica is required".into()));
    }
    if depth > model.tree().depth() {
        return Err(PercError::Invalid(format!(
            "depth {depth} exceeds truncation depth {}",
            model.tree().depth()
        )));
    }
    let mode = mode.unwrap_or(match model.tree() {
        TreeView::Materialized { .. } => DiameterMode::Exhaustive,
        TreeView::Implicit(_) => DiameterMode::Anchored,
    });
    let per_replica: Vec<(u32, u64)> = match (mode, model.tree()) {
        (DiameterMode::Exhaustive, TreeView::Materialized { tree, .. }) => (0..replicas)
            .into_par_iter()
            .map(|r| exhaustive_replica(model, tree, depth, seed, r).map(|d| (d, 0)))
            .collect::<Result<_>>()?,
        (DiameterMode::Exhaustive, TreeView::Implicit(_)) => {
            return Err(PercError::Resource(
                "exhaustive cluster enumeration needs a materialized tree".into(),
            ))
        }
        (DiameterMode::Anchored, TreeView::Implicit(t)) => {
            anchored_all(model, t, depth, replicas, seed, growth_cap)?
        }
        (DiameterMode::Anchored, TreeView::Materialized { spec, .. }) => {
            let implicit = ImplicitTree::new(spec.clone(), depth)?;
            anchored_all(model, &implicit, depth, replicas, seed, growth_cap)?
        }
    };
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut truncated = 0u64;
    for &(d, t) in &per_replica {
        *histogram.entry(d).or_insert(0) += 1;
        truncated += t;
    }
    let max_diameter = per_replica.iter().map(|&(d, _)| d).max().unwrap_or(0);
    Ok(DiameterStats {
        mode,
        depth,
        replicas,
        seed,
        max_diameter,
        histogram: histogram.into_iter().collect(),
        truncated_clusters: truncated,
    })
}

fn anchored_all(
    model: &PercolationModel,
    t: &ImplicitTree,
    depth: u32,
    replicas: u64,
    seed: u64,
    growth_cap: usize,
) -> Result<Vec<(u32, u64)>> {
    if model.kind() == ModelKind::Multiplex {
        return Err(PercError::Unsupported(
            "anchored growth needs a fission model; sample the multiplex model \
             on a materialized tree instead"
                .into(),
        ));
    }
    if !t.addressable() {
        return Err(PercError::Resource(
            "truncation too large to address vertices for sampling".into(),
        ));
    }
    (0..replicas)
        .into_par_iter()
        .map(|r| anchored_replica(model, t, depth, seed, r, growth_cap))
        .collect()
}

/// Exhaustive engine: full sample, union of clusters via double BFS.
fn exhaustive_replica(
    model: &PercolationModel,
    tree: &RootedTree,
    depth: u32,
    seed: u64,
    stream: u64,
) -> Result<u32> {
    let sample = model.sample(seed, stream)?;
    let open =
        |v: usize| sample.bits[v] && tree.level(v) <= depth;
    let n = tree.vertex_count();
    let mut seen = vec![false; n];
    let mut best = 0u32;
    let mut component = Vec::new();
    for start in 0..n {
        if !open(start) || seen[start] {
            continue;
        }
        component.clear();
        component.push(start);
        seen[start] = true;
        let mut head = 0;
        while head < component.len() {
            let v = component[head];
            head += 1;
            let push = |w: usize, seen: &mut Vec<bool>, comp: &mut Vec<usize>| {
                if open(w) && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            };
            if let Some(p) = tree.parent(v) {
                push(p, &mut seen, &mut component);
            }
            for &c in tree.children(v) {
                push(c as usize, &mut seen, &mut component);
            }
        }
        best = best.max(component_diameter(tree, &component, &open));
    }
    Ok(best)
}

/// Diameter (in edges) of a connected open component by double BFS.
fn component_diameter(
    tree: &RootedTree,
    component: &[usize],
    open: &dyn Fn(usize) -> bool,
) -> u32 {
    let far = |from: usize| -> (usize, u32) {
        let mut dist: std::collections::HashMap<usize, u32> = std::collections::HashMap::new();
        dist.insert(from, 0);
        let mut queue = std::collections::VecDeque::from([from]);
        let mut farthest = (from, 0u32);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d > farthest.1 {
                farthest = (v, d);
            }
            let visit = |w: usize, dist: &mut std::collections::HashMap<usize, u32>,
                             queue: &mut std::collections::VecDeque<usize>| {
                if open(w) && !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            };
            if let Some(p) = tree.parent(v) {
                visit(p, &mut dist, &mut queue);
            }
            for &c in tree.children(v) {
                visit(c as usize, &mut dist, &mut queue);
            }
        }
        farthest
    };
    let (a, _) = far(component[0]);
    let (_, diameter) = far(a);
    diameter
}

/// Anchored engine: per level, grow the cluster of the canonical (index 0)
/// vertex of that level and take the max observed diameter.
fn anchored_replica(
    model: &PercolationModel,
    t: &ImplicitTree,
    depth: u32,
    seed: u64,
    stream: u64,
    growth_cap: usize,
) -> Result<(u32, u64)> {
    let law = model.law();
    // One descent along the leftmost path covers every anchor's ancestors:
    // bits and post-observation filter states per level.
    let mut path_bits = Vec::with_capacity(depth as usize + 1);
    let mut path_passes: Vec<ForwardPass<'_>> = Vec::with_capacity(depth as usize + 1);
    {
        let mut pass = law.forward();
        for level in 0..=depth {
            let id = t.vertex_id(level, 0).expect("checked addressable");
            let bit = rng::uniform(seed, stream, id) < pass.prob_one();
            pass.step(if bit { Constraint::One } else { Constraint::Zero })?;
            path_bits.push(bit);
            path_passes.push(pass.clone());
        }
    }
    let mut best = 0u32;
    let mut truncated = 0u64;
    for anchor in 0..=depth {
        if !path_bits[anchor as usize] {
            continue;
        }
        // Top of the anchor's cluster: highest open run along the path.
        let mut top = anchor;
        while top > 0 && path_bits[top as usize - 1] {
            top -= 1;
        }
        if top < anchor {
            // Same cluster as a higher anchor; already grown once.
            continue;
        }
        let top_pass = path_passes[top as usize].clone();
        let mut budget = growth_cap;
        let (_, diameter, hit_cap) =
            grow(model, t, depth, seed, stream, top, 0, top_pass, &mut budget)?;
        if hit_cap {
            truncated += 1;
        }
        best = best.max(diameter);
    }
    Ok((best, truncated))
}

/// DFS growth of the open cluster hanging at (level, idx), whose bit is
/// already known open and whose post-observation state is `pass`. Returns
/// (height, diameter) of the open subtree in edges plus a truncation flag.
#[allow(clippy::too_many_arguments)]
fn grow(
    model: &PercolationModel,
    t: &ImplicitTree,
    depth: u32,
    seed: u64,
    stream: u64,
    level: u32,
    idx: u64,
    pass: ForwardPass<'_>,
    budget: &mut usize,
) -> Result<(u32, u32, bool)> {
    if level == depth {
        return Ok((0, 0, false));
    }
    let c = t.children_at_level(level);
    let mut top1 = 0u32;
    let mut top2 = 0u32;
    let mut diameter = 0u32;
    let mut hit_cap = false;
    for j in 0..c {
        if *budget == 0 {
            hit_cap = true;
            break;
        }
        *budget -= 1;
        let child_idx = idx * c + j;
        let id = t.vertex_id(level + 1, child_idx).expect("checked addressable");
        let p1 = pass.prob_one();
        if !(rng::uniform(seed, stream, id) < p1) {
            continue;
        }
        let mut child_pass = pass.clone();
        child_pass.step(Constraint::One)?;
        let (h, d, cap) =
            grow(model, t, depth, seed, stream, level + 1, child_idx, child_pass, budget)?;
        hit_cap |= cap;
        diameter = diameter.max(d);
        let reach = h + 1;
        if reach > top1 {
            top2 = top1;
            top1 = reach;
        } else if reach > top2 {
            top2 = reach;
        }
    }
    Ok((top1, diameter.max(top1 + top2), hit_cap))
}
