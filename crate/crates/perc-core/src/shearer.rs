//! Exact computations for Shearer's signed measure on small graphs and on
//! k-fuzzes of finite integer segments.
//!
//! Central objects: the critical function Ξ_G(p) = Σ_{T independent} (-q)^|T|
//! with q = 1-p, evaluated through the fundamental identity
//! Ξ_{W∪{v}} = Ξ_W - q·Ξ_{W∖N(v)}; the per-length sequence b_n = Ξ on the
//! k-fuzz of an n-point line together with its ratio sequence β_n; and the
//! root ξ of z^k(1-z) = q that governs the asymptotics.

use crate::error::{PercError, Result};
use crate::graph::FiniteGraph;
use std::collections::HashMap;

/// Default vertex cap for subset-memoized computations.
pub const DEFAULT_VERTEX_CAP: usize = 24;

/// Bisection tolerance used by every solver in this module.
pub const BISECT_TOL: f64 = 1e-12;
const BISECT_MAX_ITER: usize = 200;

/// Bisect a monotone predicate on [lo, hi]: `pred(hi)` must hold. Returns a
/// point within `BISECT_TOL` of the boundary below which the predicate
/// fails.
fn bisect<F: FnMut(f64) -> bool>(mut lo: f64, mut hi: f64, mut pred: F) -> f64 {
    debug_assert!(lo <= hi);
    for _ in 0..BISECT_MAX_ITER {
        if hi - lo <= BISECT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub(crate) struct XiEvaluator {
    masks: Vec<u64>,
    q: f64,
    memo: HashMap<u64, f64>,
}

impl XiEvaluator {
    pub(crate) fn new(g: &FiniteGraph, p: f64) -> Self {
        Self { masks: g.neighbour_masks(), q: 1.0 - p, memo: HashMap::new() }
    }

    /// Ξ on the induced subgraph selected by `mask`.
    pub(crate) fn eval(&mut self, mask: u64) -> f64 {
        if mask == 0 {
            return 1.0;
        }
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        let v = 63 - mask.leading_zeros() as u64;
        let rest = mask & !(1 << v);
        let val = self.eval(rest) - self.q * self.eval(rest & !self.masks[v as usize]);
        self.memo.insert(mask, val);
        val
    }
}

fn check_cap(g: &FiniteGraph, cap: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > cap.min(63) {
        return Err(PercError::Resource(format!(
            "graph has {n} vertices, exceeding the cap of {}",
            cap.min(63)
        )));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 0 { 0 } else { (1u64 << n) - 1 }
}

/// Ξ_G(p), the alternating sum over independent sets, via the memoized
/// fundamental identity. May be negative below the critical value.
pub fn critical_function(g: &FiniteGraph, p: f64) -> Result<f64> {
    critical_function_with_cap(g, p, DEFAULT_VERTEX_CAP)
}

/// Ξ_G(p) with an explicit vertex cap (hard upper limit 63).
pub fn critical_function_with_cap(g: &FiniteGraph, p: f64, cap: usize) -> Result<f64> {
    check_cap(g, cap)?;
    Ok(XiEvaluator::new(g, p).eval(full_mask(g.vertex_count())))
}

fn is_independent(g: &FiniteGraph, set_mask: u64) -> bool {
    let mut rest = set_mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        for &w in g.neighbours(v) {
            if set_mask & (1 << w) != 0 {
                return false;
            }
        }
    }
    true
}

/// Signed-measure value of the event {Y_B = 0, Y_{V∖B} = 1}.
///
/// Equals Ξ_G(p) for B = ∅ and vanishes whenever B is not independent. For
/// independent B it reduces to q^|B| · Ξ on the graph induced by
/// V ∖ (B ∪ N(B)).
pub fn shearer_event_prob(g: &FiniteGraph, p: f64, zeros: &[usize]) -> Result<f64> {
    check_cap(g, DEFAULT_VERTEX_CAP)?;
    let n = g.vertex_count();
    let mut b_mask = 0u64;
    for &v in zeros {
        if v >= n {
            return Err(PercError::Invalid(format!(
                "event vertex {v} not in the graph (|V| = {n})"
            )));
        }
        b_mask |= 1 << v;
    }
    if !is_independent(g, b_mask) {
        return Ok(0.0);
    }
    let masks = g.neighbour_masks();
    let mut forbidden = b_mask;
    let mut rest = b_mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        forbidden |= masks[v];
    }
    let q = 1.0 - p;
    let free = full_mask(n) & !forbidden;
    let xi_free = XiEvaluator::new(g, p).eval(free);
    Ok(q.powi(b_mask.count_ones() as i32) * xi_free)
}

/// max{p : Ξ_G(p) ≤ 0}: the parameter where the signed measure becomes a
/// probability measure. Returns 0 for edgeless graphs.
pub fn p_shearer_graph(g: &FiniteGraph) -> Result<f64> {
    check_cap(g, DEFAULT_VERTEX_CAP)?;
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    let xi_at = |p: f64| XiEvaluator::new(g, p).eval(full_mask(g.vertex_count()));
    // Ξ is strictly decreasing in q until its first root, so scanning q
    // upward finds the bracket of the largest root in p; the grid guards
    // against re-entrant sign changes beyond it.
    let steps = 4096;
    let mut q_lo = 0.0;
    let mut q_hi = 1.0;
    for i in 1..=steps {
        let q = i as f64 / steps as f64;
        if xi_at(1.0 - q) <= 0.0 {
            q_lo = (i - 1) as f64 / steps as f64;
            q_hi = q;
            break;
        }
        if i == steps {
            return Ok(0.0);
        }
    }
    let q_root = bisect(q_lo, q_hi, |q| xi_at(1.0 - q) <= 0.0);
    Ok(1.0 - q_root)
}

/// The sequence b_n = Ξ on the k-fuzz of an n-point line, its ratios β_n and
/// their logarithms (for n far beyond f64 underflow).
#[derive(Debug, Clone)]
pub struct CriticalSeries {
    pub k: usize,
    pub p: f64,
    /// b[n-1] = b_n; raw values, may underflow to 0 for very long series.
    pub b: Vec<f64>,
    /// beta[n-1] = β_n = b_n / b_{n-1}, with β_1 = b_1.
    pub beta: Vec<f64>,
    /// log_b[n-1] = ln b_n, finite as long as the series stays positive.
    pub log_b: Vec<f64>,
    /// First 1-based index with b_n ≤ 0, if any.
    pub first_nonpositive: Option<usize>,
}

/// b_1..b_N for parameter p on the k-fuzz of the line.
///
/// b_n = 1 - n·q for n ≤ k+1 and b_n = b_{n-1} - q·b_{n-1-k} afterwards
/// (with b_0 = 1). While the series is positive it is advanced through the
/// ratio recursion β_n = 1 - q / (β_{n-1}···β_{n-k}), which stays
/// well-scaled long after the raw products underflow.
pub fn b_sequence(k: usize, p: f64, n_max: usize) -> CriticalSeries {
    let q = 1.0 - p;
    let mut b = Vec::with_capacity(n_max);
    let mut beta = Vec::with_capacity(n_max);
    let mut log_b = Vec::with_capacity(n_max);
    let mut first_nonpositive = None;
    let b_at = |b: &[f64], n: usize| if n == 0 { 1.0 } else { b[n - 1] };
    for n in 1..=n_max {
        let ratio_mode = first_nonpositive.is_none();
        let bn = if ratio_mode {
            let beta_n = if n <= k + 1 {
                (1.0 - n as f64 * q) / (1.0 - (n as f64 - 1.0) * q)
            } else {
                let mut prod = 1.0;
                for i in (n - k)..n {
                    prod *= beta[i - 1];
                }
                1.0 - q / prod
            };
            beta.push(beta_n);
            let bn = b_at(&b, n - 1) * beta_n;
            log_b.push(if n == 1 { beta_n.ln() } else { log_b[n - 2] + beta_n.ln() });
            bn
        } else {
            // Past the first sign change the ratios lose meaning; fall back
            // to the raw linear recursion.
            let bn = if n <= k + 1 {
                1.0 - n as f64 * q
            } else {
                b_at(&b, n - 1) - q * b_at(&b, n - 1 - k)
            };
            let prev = b_at(&b, n - 1);
            beta.push(if prev != 0.0 { bn / prev } else { f64::NAN });
            log_b.push(f64::NAN);
            bn
        };
        b.push(bn);
        if bn <= 0.0 && first_nonpositive.is_none() {
            first_nonpositive = Some(n);
        }
    }
    CriticalSeries { k, p, b, beta, log_b, first_nonpositive }
}

/// min p such that b_1..b_N all stay nonnegative, to `BISECT_TOL`.
pub fn p_shearer_line(k: usize, n: usize) -> f64 {
    let ok = |p: f64| {
        let s = b_sequence(k, p, n);
        s.b.iter().all(|&x| x >= 0.0)
    };
    if ok(0.0) {
        return 0.0;
    }
    bisect(0.0, 1.0, ok)
}

/// p_sh on the k-fuzz of the integers: 1 - k^k/(k+1)^(k+1), with 0^0 = 1.
pub fn p_shearer_kfuzz(k: usize) -> f64 {
    1.0 - h_k_max(k)
}

/// Maximum of h_k over [0,1]: k^k/(k+1)^(k+1), attained at k/(k+1).
fn h_k_max(k: usize) -> f64 {
    let kf = k as f64;
    if k == 0 {
        1.0
    } else {
        kf.powi(k as i32) / (kf + 1.0).powi(k as i32 + 1)
    }
}

/// h_k(z) = z^k (1-z).
pub fn curve_hk(k: usize, z: f64) -> f64 {
    z.powi(k as i32) * (1.0 - z)
}

/// g_k(y) = 1 - (y-1)/y^(k+1) on [1, ∞].
pub fn curve_gk(k: usize, y: f64) -> f64 {
    if y.is_infinite() {
        return if k == 0 { 0.0 } else { 1.0 };
    }
    1.0 - (y - 1.0) / y.powi(k as i32 + 1)
}

/// The solution of h_k(ξ) = 1-p in [k/(k+1), 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiValue {
    pub k: usize,
    pub p: f64,
    pub xi: f64,
}

/// Unique root ξ of h_k(z) = 1-p in [k/(k+1), 1], where h_k is strictly
/// decreasing. Requires p ≥ p_sh of the k-fuzz of the integers; below it the
/// equation has no root in the interval.
pub fn xi(k: usize, p: f64) -> Result<XiValue> {
    let q = 1.0 - p;
    let lo = k as f64 / (k as f64 + 1.0);
    if q > h_k_max(k) {
        return Err(PercError::Domain(format!(
            "xi needs p >= p_sh = {}, got p = {p}",
            p_shearer_kfuzz(k)
        )));
    }
    // h_k decreases from its maximum at lo to 0 at 1.
    let mut root = bisect(lo, 1.0, |z| curve_hk(k, z) <= q);
    // Newton polish to machine precision; skipped near the parabolic
    // maximum at p_sh where the derivative vanishes.
    for _ in 0..3 {
        let deriv = root.powi(k as i32 - 1) * (k as f64 - (k as f64 + 1.0) * root);
        if deriv.abs() < 1e-8 {
            break;
        }
        let next = root - (curve_hk(k, root) - q) / deriv;
        if next.is_finite() && (lo..=1.0).contains(&next) {
            root = next;
        } else {
            break;
        }
    }
    Ok(XiValue { k, p, xi: root.clamp(lo, 1.0) })
}

/// f_k(g) for g ∈ {0..k}: the two-case conditional minoration curve. For
/// k ≥ 1 it is ((g+1)ξ - g)/(gξ - (g-1)); for k = 0 it is ξ. In both cases
/// f_k(0) = ξ.
pub fn curve_fk(k: usize, xi_value: f64, g: usize) -> Result<f64> {
    if g > k {
        return Err(PercError::Domain(format!(
            "f_k is defined on g in 0..={k}, got g = {g}"
        )));
    }
    if k == 0 {
        return Ok(xi_value);
    }
    let gf = g as f64;
    Ok(((gf + 1.0) * xi_value - gf) / (gf * xi_value - (gf - 1.0)))
}

/// Lower bound f_k(g_B) on P(Y_0 = 1 | Y_B = 1) under Shearer's measure on
/// the k-fuzz of the integers, where g_B = max(0, k+1-d_B) and d_B is the
/// distance from 0 to B.
pub fn minoration_fk(k: usize, p: f64, b_set: &[i64]) -> Result<f64> {
    if b_set.contains(&0) {
        return Err(PercError::Invalid(
            "the conditioning set must not contain the origin".into(),
        ));
    }
    let xi_v = xi(k, p)?.xi;
    let d_b = b_set.iter().map(|n| n.unsigned_abs()).min().unwrap_or(u64::MAX);
    let g_b = (k as u64 + 1).saturating_sub(d_b) as usize;
    curve_fk(k, xi_v, g_b)
}

/// Ξ on G[W_big] divided by Ξ on G[W]: the conditional probability of the
/// all-ones event on W_big given all ones on W, for W ⊆ W_big. Refuses the
/// signed regime where Ξ_{G[W]} ≤ 0.
pub fn shearer_conditional(
    g: &FiniteGraph,
    p: f64,
    w_big: &[usize],
    w: &[usize],
) -> Result<f64> {
    check_cap(g, DEFAULT_VERTEX_CAP)?;
    let n = g.vertex_count();
    let mut big_mask = 0u64;
    for &v in w_big {
        if v >= n {
            return Err(PercError::Invalid(format!("vertex {v} not in the graph")));
        }
        big_mask |= 1 << v;
    }
    let mut small_mask = 0u64;
    for &v in w {
        small_mask |= 1 << v;
    }
    if small_mask & !big_mask != 0 {
        return Err(PercError::Invalid("W must be contained in W_big".into()));
    }
    let mut eval = XiEvaluator::new(g, p);
    let denom = eval.eval(small_mask);
    if denom <= 0.0 {
        return Err(PercError::Conditioning(format!(
            "Xi on the conditioning set is {denom} <= 0 at p = {p}"
        )));
    }
    Ok(eval.eval(big_mask) / denom)
}
