//! Shared test oracles, independent of the library's computation paths.
//!
//! The line-level oracle enumerates raw driver words and applies the window
//! rules directly; the tree-level oracle enumerates full configurations
//! through the defining conditional product. Everything here is brute force
//! on purpose.

// Not every integration suite uses every oracle.
#![allow(dead_code)]

use perc_core::fission::{ModelKind, PercolationModel};
use perc_core::tree::RootedTree;

/// Exact distribution of an n-bit prefix of the zero-one-switch process:
/// drivers X_{-k}..X_{n-1} iid Bernoulli(xi),
/// Z_j = 1 - (1-X_j)·Π_{i=1..k} X_{j-i}. Enumerates all 2^(n+k) words.
pub fn zero_one_switch_distribution(k: usize, xi: f64, n: usize) -> Vec<f64> {
    let drivers = n + k;
    let mut dist = vec![0.0f64; 1 << n];
    for word in 0u64..(1 << drivers) {
        // Bit i of `word` is driver X_{i-k}.
        let x = |pos: i64| -> bool { word & (1 << (pos + k as i64)) != 0 };
        let mut prob = 1.0;
        for i in 0..drivers {
            prob *= if word & (1 << i) != 0 { xi } else { 1.0 - xi };
        }
        let mut config = 0u64;
        for j in 0..n {
            let mut window_ones = true;
            for i in 1..=k {
                window_ones &= x(j as i64 - i as i64);
            }
            let z = !(window_ones && !x(j as i64));
            if z {
                config |= 1 << j;
            }
        }
        dist[config as usize] += prob;
    }
    dist
}

/// Exact prefix distribution of the moving-product law: drivers
/// X_0..X_{n+k-1} iid Bernoulli(p_hat), Z_j = Π_{i=0..k} X_{j+i}.
pub fn moving_product_distribution(k: usize, p_hat: f64, n: usize) -> Vec<f64> {
    let drivers = n + k;
    let mut dist = vec![0.0f64; 1 << n];
    for word in 0u64..(1 << drivers) {
        let mut prob = 1.0;
        for i in 0..drivers {
            prob *= if word & (1 << i) != 0 { p_hat } else { 1.0 - p_hat };
        }
        let mut config = 0u64;
        for j in 0..n {
            let mut all = true;
            for i in 0..=k {
                all &= word & (1 << (j + i)) != 0;
            }
            if all {
                config |= 1 << j;
            }
        }
        dist[config as usize] += prob;
    }
    dist
}

/// Total-variation distance between two distributions on the same index set.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Exact probability of one full-tree configuration.
///
/// Fission models: the defining conditional product
/// Π_v P(Z_{|v|} = s_v | ancestors of v carry their configured values).
/// Multiplex: the configuration must be constant per level and carries the
/// line-law probability of its level pattern.
pub fn config_probability(model: &PercolationModel, tree: &RootedTree, bits: &[bool]) -> f64 {
    if model.kind() == ModelKind::Multiplex {
        let mut pattern = Vec::with_capacity(tree.depth() as usize + 1);
        for l in 0..=tree.depth() {
            let range = tree.level_range(l);
            let first = bits[range.start];
            if !range.clone().all(|v| bits[v] == first) {
                return 0.0;
            }
            pattern.push(first);
        }
        let mut prob = 1.0;
        for (l, &bit) in pattern.iter().enumerate() {
            let p1 = match model.law().next_bit_prob(&pattern[..l]) {
                Ok(p1) => p1,
                Err(_) => return 0.0,
            };
            prob *= if bit { p1 } else { 1.0 - p1 };
        }
        return prob;
    }
    let mut prob = 1.0;
    for v in 0..tree.vertex_count() {
        let path = tree.path_from_root(v);
        let history: Vec<bool> = path[..path.len() - 1].iter().map(|&a| bits[a]).collect();
        let p1 = match model.law().next_bit_prob(&history) {
            Ok(p1) => p1,
            Err(_) => return 0.0, // zero-probability ancestor pattern
        };
        prob *= if bits[v] { p1 } else { 1.0 - p1 };
        if prob == 0.0 {
            return 0.0;
        }
    }
    prob
}

/// Full configuration distribution (index bit v = vertex v open).
pub fn enumerate_distribution(model: &PercolationModel, tree: &RootedTree) -> Vec<f64> {
    let n = tree.vertex_count();
    assert!(n <= 20, "enumeration oracle capped at 2^20 configurations");
    (0u64..(1 << n))
        .map(|config| {
            let bits: Vec<bool> = (0..n).map(|v| config & (1 << v) != 0).collect();
            config_probability(model, tree, &bits)
        })
        .collect()
}

/// Brute-force percolation kernel κ(v,w) from the enumerated distribution.
pub fn brute_force_kernel(model: &PercolationModel, tree: &RootedTree, v: usize, w: usize) -> f64 {
    let dist = enumerate_distribution(model, tree);
    let open_to = |config: u64, target: usize| -> bool {
        tree.path_from_root(target).iter().all(|&x| config & (1 << x) != 0)
    };
    let (mut pv, mut pw, mut joint) = (0.0, 0.0, 0.0);
    for (config, prob) in dist.iter().enumerate() {
        let c = config as u64;
        let ov = open_to(c, v);
        let ow = open_to(c, w);
        if ov {
            pv += prob;
        }
        if ow {
            pw += prob;
        }
        if ov && ow {
            joint += prob;
        }
    }
    joint / (pv * pw)
}

/// Brute-force P(root ↔ level) from the enumerated distribution.
pub fn brute_force_reach(model: &PercolationModel, tree: &RootedTree, level: u32) -> f64 {
    let dist = enumerate_distribution(model, tree);
    let mut total = 0.0;
    for (config, prob) in dist.iter().enumerate() {
        if *prob == 0.0 {
            continue;
        }
        let c = config as u64;
        // DFS over open vertices looking for the target level.
        let mut stack = vec![0usize];
        let mut reached = false;
        while let Some(x) = stack.pop() {
            if c & (1 << x) == 0 {
                continue;
            }
            if tree.level(x) == level {
                reached = true;
                break;
            }
            for &ch in tree.children(x) {
                stack.push(ch as usize);
            }
        }
        if reached {
            total += prob;
        }
    }
    total
}