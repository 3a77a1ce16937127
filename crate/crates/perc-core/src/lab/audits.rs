//! Machine-checkable audits: the percolation-kernel bounds (with the
//! quasi-independence majorant) and the minimality inequalities of
//! Shearer's measure against concrete line laws.

use crate::error::{PercError, Result};
use crate::fission::{ModelSpec, PercolationModel};
use crate::graph::{k_fuzz, FiniteGraph};
use crate::line::{Constraint, LawSpec, LineLaw};
use crate::shearer::{p_shearer_kfuzz, p_shearer_line, xi, XiEvaluator};
use crate::tree::TreeView;
use serde::Serialize;

/// Relative slack admitted when comparing exact quantities.
pub const AUDIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiMode {
    /// Run the quasi-independence check when p > p_sh, else mark it
    /// inapplicable.
    Auto,
    /// Error out if the check is inapplicable (p at or below p_sh).
    Require,
    Skip,
}

/// One audited confluent configuration. `v = w` is the identity check
/// κ = 1/P(o↔u). For proper pairs the kernel bound conditions on the
/// segment from t to w, where t sits (k∨s)+1 below the confluent u, or
/// t = w when the path is shorter.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelPairCheck {
    pub u_level: u32,
    pub v_level: u32,
    pub w_level: u32,
    pub t_level: u32,
    pub kappa: f64,
    pub kernel_bound: f64,
    pub kernel_ok: bool,
    /// Short proper pairs (w within k of u) are reported but not asserted
    /// for the minimal law: its all-ones sequence is supermultiplicative
    /// there and the t = w branch of the bound provably reverses.
    pub kernel_asserted: bool,
    pub quasi_bound: Option<f64>,
    pub quasi_ok: Option<bool>,
    /// Smallest relative slack (bound/κ − 1) over the checks run here.
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub model: ModelSpec,
    pub depth: u32,
    /// ξ-based majorant constant M = ξ^(k−(k∨s)) / ((k+1)ξ − k); None when
    /// the quasi-independence check is inapplicable (p ≤ p_sh).
    pub majorant_m: Option<f64>,
    pub quasi_applicable: bool,
    pub pairs: Vec<KernelPairCheck>,
    pub skipped_zero_reach: u64,
    pub failures: u64,
    pub worst_margin: f64,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Stratified kernel audit over confluent levels 0..depth.
///
/// For every realizable (u, v, w) level triple in the strata the audit
/// computes the exact kernel κ = 1/P(o↔u), the conditional bound
/// 1/P(o↔t|t↔w), and (for p > p_sh) the quasi-independence majorant
/// M/P(o↔u), all through the law's exact forward pass.
pub fn kernel_bound_audit(
    model: &PercolationModel,
    depth: u32,
    pair_budget: usize,
    quasi: QuasiMode,
) -> Result<KernelReport> {
    if !model.is_fission() {
        return Err(PercError::Unsupported(
            "kernel audit needs a fission model (multiplex has no closed-form kernel)"
                .into(),
        ));
    }
    if depth > model.tree().depth() {
        return Err(PercError::Invalid(format!(
            "depth {depth} exceeds truncation depth {}",
            model.tree().depth()
        )));
    }
    let k = model.k();
    let p = model.marginal_p();
    let p_sh = p_shearer_kfuzz(k);
    let quasi_applicable = p > p_sh + AUDIT_TOL;
    if quasi == QuasiMode::Require && !quasi_applicable {
        return Err(PercError::Domain(format!(
            "quasi-independence audit is inapplicable at p = {p} <= p_sh = {p_sh} \
             (the majorant denominator (k+1)ξ−k vanishes at p_sh)"
        )));
    }
    let majorant_m = if quasi_applicable && quasi != QuasiMode::Skip {
        let xi_v = xi(k, p)?.xi;
        Some(1.0 / ((k as f64 + 1.0) * xi_v - k as f64))
    } else {
        None
    };
    let law = model.law();
    let seg_allones = |from: u32, to: u32| -> Result<f64> {
        let mut cs = vec![Constraint::Free; from as usize];
        cs.extend(std::iter::repeat_n(Constraint::One, (to - from) as usize + 1));
        law.constrained_prob(&cs)
    };
    let minimal_law = matches!(model.spec(), ModelSpec::Minimal { .. });

    let mut pairs = Vec::new();
    let mut skipped = 0u64;
    for u_level in 0..=depth {
        if pairs.len() >= pair_budget {
            break;
        }
        let a_u = law.allones_prob(u_level as usize + 1)?;
        if a_u <= 0.0 {
            skipped += 1;
            continue;
        }
        let kappa = 1.0 / a_u;
        // Identity configuration v = w = u.
        pairs.push(KernelPairCheck {
            u_level,
            v_level: u_level,
            w_level: u_level,
            t_level: u_level,
            kappa,
            kernel_bound: kappa,
            kernel_ok: true,
            kernel_asserted: true,
            quasi_bound: majorant_m.map(|m| m * kappa),
            quasi_ok: majorant_m.map(|m| kappa <= m * kappa * (1.0 + AUDIT_TOL)),
            margin: majorant_m.map_or(0.0, |m| m - 1.0),
        });
        if u_level == depth {
            continue;
        }
        // Proper pairs: stratify w over short, boundary and deep offsets.
        let branching = can_branch(model.tree(), u_level);
        let mut w_levels: Vec<u32> = Vec::new();
        for cand in [
            u_level + 1,
            u_level + 2,
            u_level + k as u32,
            u_level + k as u32 + 1,
            u_level + k as u32 + 2,
            depth,
        ] {
            if cand > u_level && cand <= depth && !w_levels.contains(&cand) {
                w_levels.push(cand);
            }
        }
        for w_level in w_levels {
            if pairs.len() >= pair_budget {
                break;
            }
            // v in a sibling branch when the tree branches at u, else v = u
            // (ancestor pair); the computed quantities depend only on u, w.
            let v_level = if branching { depth } else { u_level };
            let t_level = w_level.min(u_level + k as u32 + 1);
            let a_w = law.allones_prob(w_level as usize + 1)?;
            if a_w <= 0.0 {
                skipped += 1;
                continue;
            }
            let seg = seg_allones(t_level, w_level)?;
            // 1/P(o↔t | t↔w) = P(t..w all open) / P(o..w all open).
            let kernel_bound = seg / a_w;
            let kernel_ok = kappa <= kernel_bound * (1.0 + AUDIT_TOL);
            let short_pair = w_level - u_level <= k as u32;
            let kernel_asserted = !(short_pair && minimal_law);
            let quasi_bound = majorant_m.map(|m| m * kappa);
            let quasi_ok = majorant_m.map(|m| kappa <= m * kappa * (1.0 + AUDIT_TOL));
            let mut margin = f64::INFINITY;
            if kernel_asserted {
                margin = margin.min(kernel_bound / kappa - 1.0);
            }
            if let Some(qb) = quasi_bound {
                margin = margin.min(qb / kappa - 1.0);
            }
            if margin == f64::INFINITY {
                margin = kernel_bound / kappa - 1.0;
            }
            pairs.push(KernelPairCheck {
                u_level,
                v_level,
                w_level,
                t_level,
                kappa,
                kernel_bound,
                kernel_ok,
                kernel_asserted,
                quasi_bound,
                quasi_ok,
                margin,
            });
        }
    }
    let failures = pairs
        .iter()
        .filter(|c| {
            (c.kernel_asserted && !c.kernel_ok) || c.quasi_ok == Some(false)
        })
        .count() as u64;
    let worst_margin = pairs.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
    Ok(KernelReport {
        model: model.spec().clone(),
        depth,
        majorant_m,
        quasi_applicable,
        pairs,
        skipped_zero_reach: skipped,
        failures,
        worst_margin,
    })
}

/// Whether some vertex at `level` has at least two children, so that
/// sibling-branch pairs with a confluent at that level exist.
fn can_branch(tree: &TreeView, level: u32) -> bool {
    match tree {
        TreeView::Materialized { tree, .. } => {
            tree.level_range(level).any(|v| tree.children(v).len() >= 2)
        }
        TreeView::Implicit(t) => t.children_at_level(level) >= 2,
    }
}

/// Minimality audit report: exhaustive all-ones inequalities against Ξ on
/// the k-fuzz of an integer segment.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub law: LawSpec,
    pub k: usize,
    pub positions: usize,
    pub subsets_checked: u64,
    pub conditionals_checked: u64,
    pub failures: u64,
    /// min over subsets of P(Z_W = 1) − Ξ_{G[W]}(p); nonnegative (within
    /// tolerance) when the law satisfies the minimality bound.
    pub worst_slack: f64,
    /// max over subsets of |P(Z_W = 1) − Ξ_{G[W]}(p)|; ~0 iff the law is
    /// Shearer's measure itself.
    pub max_equality_gap: f64,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Exhaustively verifies, for every subset W of {0..positions-1}:
/// P(Z_W = all ones) ≥ Ξ_{G[W]}(p) with G the k-fuzz of the segment, and
/// the single-vertex conditional version wherever Ξ_{G[W]}(p) > 0.
pub fn minimality_audit(law: &LineLaw, k: usize, positions: usize) -> Result<MinimalityReport> {
    if positions == 0 || positions > 12 {
        return Err(PercError::Resource(
            "minimality audit is exhaustive; positions must lie in 1..=12".into(),
        ));
    }
    if law.k() > k {
        return Err(PercError::Domain(format!(
            "a {}-dependent law is not k-independent for k = {k}",
            law.k()
        )));
    }
    let p = law.marginal_p();
    let threshold = p_shearer_line(k, positions);
    if p < threshold - AUDIT_TOL {
        return Err(PercError::Domain(format!(
            "minimality bound needs p >= p_sh = {threshold} \
             (k-fuzz of a line of {positions} points, k = {k}), got p = {p}"
        )));
    }
    let g = k_fuzz(&FiniteGraph::path(positions), k);
    let mut xi_eval = XiEvaluator::new(&g, p);
    let n = positions;
    // All 2^n all-ones probabilities through the exact forward pass.
    let mut p_of = vec![0.0f64; 1 << n];
    for (mask, slot) in p_of.iter_mut().enumerate() {
        let cs: Vec<Constraint> = (0..n)
            .map(|i| if mask & (1 << i) != 0 { Constraint::One } else { Constraint::Free })
            .collect();
        *slot = law.constrained_prob(&cs)?;
    }
    let mut failures = 0u64;
    let mut worst_slack = f64::INFINITY;
    let mut max_gap = 0.0f64;
    let mut conditionals = 0u64;
    for mask in 0..(1u64 << n) {
        let xi_w = xi_eval.eval(mask);
        let slack = p_of[mask as usize] - xi_w;
        worst_slack = worst_slack.min(slack);
        max_gap = max_gap.max(slack.abs());
        if slack < -1e-12 {
            failures += 1;
        }
        if xi_w > 0.0 && p_of[mask as usize] > 0.0 {
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    continue;
                }
                let big = mask | (1 << v);
                let lhs = p_of[big as usize] / p_of[mask as usize];
                let rhs = xi_eval.eval(big) / xi_w;
                conditionals += 1;
                if lhs < rhs - 1e-12 {
                    failures += 1;
                }
            }
        }
    }
    Ok(MinimalityReport {
        law: law.spec().clone(),
        k,
        positions,
        subsets_checked: 1 << n,
        conditionals_checked: conditionals,
        failures,
        worst_slack,
        max_equality_gap: max_gap,
    })
}
