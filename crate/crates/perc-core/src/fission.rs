//! Tree-fission percolation models.
//!
//! Fission turns a line law Z into a site percolation on a rooted tree: each
//! vertex is opened with the exact conditional probability of the next line
//! bit given the bits along its ancestor path. Every root-down path then
//! carries the line law, disjoint subtrees are conditionally independent
//! given their ancestors, and the construction is invariant under
//! automorphisms of the rooted tree. The multiplex model is the one
//! non-fission member here: it copies a single line realization across
//! levels, which makes its elsewhere-dependence unbounded.

use crate::error::{PercError, Result};
use crate::line::{Constraint, LineLaw};
use crate::rng;
use crate::tree::TreeView;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Canonical,
    Cutup,
    Minimal,
    Multiplex,
    Iid,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModelKind::Canonical => "canonical",
            ModelKind::Cutup => "cutup",
            ModelKind::Minimal => "minimal",
            ModelKind::Multiplex => "multiplex",
            ModelKind::Iid => "iid",
        };
        write!(f, "{s}")
    }
}

/// Elsewhere-dependence range s: fission models achieve s = 0, the
/// multiplex counterexample has s unbounded in the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependence {
    Zero,
    Unbounded,
}

/// Serializable model descriptor (the CLI-facing surface).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Canonical { k: usize, p: f64 },
    Cutup { k: usize, block: usize },
    Minimal { k: usize, p: f64 },
    Multiplex { k: usize, p: f64 },
    Iid { p: f64 },
}

impl std::fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelSpec::Canonical { k, p } => write!(f, "canonical(k={k},p={p})"),
            ModelSpec::Cutup { k, block } => write!(f, "cutup(k={k},N={block})"),
            ModelSpec::Minimal { k, p } => write!(f, "minimal(k={k},p={p})"),
            ModelSpec::Multiplex { k, p } => write!(f, "multiplex(k={k},p={p})"),
            ModelSpec::Iid { p } => write!(f, "iid(p={p})"),
        }
    }
}

/// A rooted tree plus a line law plus dependence metadata.
#[derive(Debug, Clone)]
pub struct PercolationModel {
    spec: ModelSpec,
    kind: ModelKind,
    tree: TreeView,
    law: LineLaw,
    k: usize,
    s: Dependence,
}

/// One realization on a materialized truncation, breadth-first vertex order.
#[derive(Debug, Clone)]
pub struct PercolationSample {
    pub bits: Vec<bool>,
    pub seed: u64,
    pub stream: u64,
}

impl PercolationModel {
    pub fn make(spec: &ModelSpec, tree: TreeView) -> Result<Self> {
        match *spec {
            ModelSpec::Canonical { k, p } => Self::canonical(tree, k, p),
            ModelSpec::Cutup { k, block } => Self::cutup(tree, k, block),
            ModelSpec::Minimal { k, p } => Self::minimal(tree, k, p),
            ModelSpec::Multiplex { k, p } => Self::multiplex(tree, k, p),
            ModelSpec::Iid { p } => Self::iid(tree, p),
        }
    }

    /// Fission of Shearer's measure on the k-fuzz of the half line.
    pub fn canonical(tree: TreeView, k: usize, p: f64) -> Result<Self> {
        Ok(Self {
            spec: ModelSpec::Canonical { k, p },
            kind: ModelKind::Canonical,
            law: LineLaw::shearer_factor(k, p)?,
            tree,
            k,
            s: Dependence::Zero,
        })
    }

    /// Fission of independent critical truncated-Shearer blocks.
    pub fn cutup(tree: TreeView, k: usize, block: usize) -> Result<Self> {
        Ok(Self {
            spec: ModelSpec::Cutup { k, block },
            kind: ModelKind::Cutup,
            law: LineLaw::cutup(k, block)?,
            tree,
            k,
            s: Dependence::Zero,
        })
    }

    /// Fission of the moving-product law with driver p^(1/(k+1)).
    pub fn minimal(tree: TreeView, k: usize, p: f64) -> Result<Self> {
        Ok(Self {
            spec: ModelSpec::Minimal { k, p },
            kind: ModelKind::Minimal,
            law: LineLaw::minimal(k, p)?,
            tree,
            k,
            s: Dependence::Zero,
        })
    }

    /// Level-copies of one Shearer line realization; not a fission model.
    pub fn multiplex(tree: TreeView, k: usize, p: f64) -> Result<Self> {
        Ok(Self {
            spec: ModelSpec::Multiplex { k, p },
            kind: ModelKind::Multiplex,
            law: LineLaw::shearer_factor(k, p)?,
            tree,
            k,
            s: Dependence::Unbounded,
        })
    }

    pub fn iid(tree: TreeView, p: f64) -> Result<Self> {
        Ok(Self {
            spec: ModelSpec::Iid { p },
            kind: ModelKind::Iid,
            law: LineLaw::iid(p)?,
            tree,
            k: 0,
            s: Dependence::Zero,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn tree(&self) -> &TreeView {
        &self.tree
    }

    pub fn law(&self) -> &LineLaw {
        &self.law
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dependence(&self) -> Dependence {
        self.s
    }

    pub fn is_fission(&self) -> bool {
        self.kind != ModelKind::Multiplex
    }

    pub fn marginal_p(&self) -> f64 {
        self.law.marginal_p()
    }

    /// P(a fixed root-down path of n vertices is all open); includes the
    /// root in the count.
    pub fn path_allones(&self, n_vertices: usize) -> Result<f64> {
        self.law.allones_prob(n_vertices)
    }

    /// Exact probability of a bit configuration along a root-down path.
    /// Zero-probability configurations return 0.
    pub fn exact_path_prob(&self, bits: &[bool]) -> Result<f64> {
        if bits.len() > self.tree.depth() as usize + 1 {
            return Err(PercError::Invalid(format!(
                "path configuration of {} vertices exceeds depth {}",
                bits.len(),
                self.tree.depth()
            )));
        }
        let constraints: Vec<Constraint> = bits
            .iter()
            .map(|&b| if b { Constraint::One } else { Constraint::Zero })
            .collect();
        self.law.constrained_prob(&constraints)
    }

    /// One exact sample on a materialized truncation. Vertices are opened in
    /// breadth-first order with the conditional next-bit probability given
    /// the ancestor path, each decided by the counter draw for
    /// (seed, stream, vertex index).
    pub fn sample(&self, seed: u64, stream: u64) -> Result<PercolationSample> {
        let tree = self.tree.require_materialized("sampling a full realization")?;
        let n = tree.vertex_count();
        let mut bits = vec![false; n];
        if self.kind == ModelKind::Multiplex {
            let line = self.law.sample_prefix(tree.depth() as usize + 1, seed, stream)?;
            for v in 0..n {
                bits[v] = line.bits()[tree.level(v) as usize];
            }
            return Ok(PercolationSample { bits, seed, stream });
        }
        let mut passes: Vec<crate::line::ForwardPass<'_>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut pass = match tree.parent(v) {
                None => self.law.forward(),
                Some(parent) => passes[parent].clone(),
            };
            let p1 = pass.prob_one();
            let bit = rng::uniform(seed, stream, v as u64) < p1;
            bits[v] = bit;
            pass.step(if bit { Constraint::One } else { Constraint::Zero })?;
            passes.push(pass);
        }
        Ok(PercolationSample { bits, seed, stream })
    }

    /// The percolation kernel κ(v,w) for fission models:
    /// 1 / P(path to the confluent all open), exact because the two
    /// continuations are conditionally independent given that event.
    pub fn exact_kernel(&self, v: usize, w: usize) -> Result<f64> {
        if !self.is_fission() {
            return Err(PercError::Unsupported(
                "the closed-form kernel needs a fission model; \
                 compute multiplex kernels from the line law by brute force"
                    .into(),
            ));
        }
        let tree = self.tree.require_materialized("kernel by vertex pair")?;
        let (u, _) = tree.confluent(v, w)?;
        // The closed form cancels the two marginals, which must be positive
        // for the kernel to be defined at all.
        let deepest = tree.level(v).max(tree.level(w));
        if self.law.allones_prob(deepest as usize + 1)? <= 0.0 {
            return Err(PercError::Conditioning(format!(
                "kernel undefined: reaching level {deepest} has probability zero"
            )));
        }
        self.kernel_at_confluent_level(tree.level(u))
    }

    /// κ for a pair whose confluent sits at the given level.
    pub fn kernel_at_confluent_level(&self, level: u32) -> Result<f64> {
        if !self.is_fission() {
            return Err(PercError::Unsupported(
                "the closed-form kernel needs a fission model".into(),
            ));
        }
        let a = self.law.allones_prob(level as usize + 1)?;
        if a <= 0.0 {
            return Err(PercError::Conditioning(format!(
                "kernel undefined: reaching level {level} has probability zero"
            )));
        }
        Ok(1.0 / a)
    }

    /// Exact P(root connects to the given level through open vertices),
    /// including the root being open.
    ///
    /// Fission models admit a per-vertex recursion: given the ancestor path
    /// open, a vertex's child subtrees succeed independently, each opening
    /// with the conditional all-ones ratio of its level. The multiplex model
    /// reaches a level iff the shared line prefix is all ones.
    pub fn reach_probability(&self, level: u32) -> Result<f64> {
        if level > self.tree.depth() {
            return Err(PercError::Invalid(format!(
                "level {level} exceeds truncation depth {}",
                self.tree.depth()
            )));
        }
        let a: Vec<f64> = (0..=level as usize + 1)
            .map(|n| self.law.allones_prob(n))
            .collect::<Result<Vec<_>>>()?;
        if self.kind == ModelKind::Multiplex {
            return Ok(a[level as usize + 1]);
        }
        // cond[m] = P(vertex at level m open | ancestors all open).
        let cond = |m: usize| if a[m] > 0.0 { a[m + 1] / a[m] } else { 0.0 };
        match &self.tree {
            TreeView::Materialized { tree, .. } => {
                let n = tree.vertex_count();
                let mut rho = vec![0.0f64; n];
                for v in (0..n).rev() {
                    let lv = tree.level(v);
                    if lv == level {
                        rho[v] = 1.0;
                    } else if lv < level {
                        let mut fail = 1.0;
                        for &c in tree.children(v) {
                            let child_level = lv as usize + 1;
                            fail *= 1.0 - cond(child_level) * rho[c as usize];
                        }
                        rho[v] = 1.0 - fail;
                    }
                }
                Ok(a[1] * rho[0])
            }
            TreeView::Implicit(t) => {
                let mut rho = 1.0f64;
                for m in (0..level).rev() {
                    let c = t.children_at_level(m);
                    let succ = cond(m as usize + 1) * rho;
                    rho = 1.0 - (1.0 - succ).powi(c as i32);
                }
                Ok(a[1] * rho)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_tree, TreeSpec};

    fn view(spec: TreeSpec, depth: u32) -> TreeView {
        let tree = build_tree(&spec, depth).unwrap();
        TreeView::from_tree(&spec, tree)
    }

    fn binary(depth: u32) -> TreeView {
        view(TreeSpec::DAry { d: 2 }, depth)
    }

    #[test]
    fn make_model_parameter_ranges() {
        assert!(PercolationModel::canonical(binary(3), 1, 0.8).is_ok());
        assert!(matches!(
            PercolationModel::canonical(binary(3), 1, 0.7),
            Err(PercError::Domain(_))
        ));
        assert!(PercolationModel::minimal(binary(3), 2, 0.1).is_ok());
        assert!(PercolationModel::multiplex(binary(3), 1, 0.8).is_ok());
        assert!(PercolationModel::multiplex(binary(3), 1, 0.5).is_err());
        let m = PercolationModel::canonical(binary(3), 1, 0.8).unwrap();
        assert_eq!(m.dependence(), Dependence::Zero);
        let mx = PercolationModel::multiplex(binary(3), 1, 0.8).unwrap();
        assert_eq!(mx.dependence(), Dependence::Unbounded);
        assert!(!mx.is_fission());
    }

    #[test]
    fn depth_zero_sample_is_bernoulli() {
        let m = PercolationModel::iid(binary(0), 0.6).unwrap();
        let trials = 40_000u64;
        let mut open = 0u64;
        for r in 0..trials {
            if m.sample(11, r).unwrap().bits[0] {
                open += 1;
            }
        }
        let freq = open as f64 / trials as f64;
        let sigma = (0.6 * 0.4 / trials as f64).sqrt();
        assert!((freq - 0.6).abs() < 4.0 * sigma);
    }

    #[test]
    fn path_prob_examples() {
        let m = PercolationModel::canonical(binary(3), 1, 0.75).unwrap();
        let p101 = m.exact_path_prob(&[true, false, true]).unwrap();
        assert!((p101 - 0.25).abs() < 1e-13);
        let p00 = m.exact_path_prob(&[true, false, false]).unwrap();
        assert_eq!(p00, 0.0);
        let all = m.exact_path_prob(&[true, true, true]).unwrap();
        assert!((all - m.path_allones(3).unwrap()).abs() < 1e-14);
        assert!(m.exact_path_prob(&[true; 9]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let m = PercolationModel::minimal(binary(3), 1, 0.25).unwrap();
        // Confluent at the root: 1/p.
        assert!((m.exact_kernel(0, 0).unwrap() - 4.0).abs() < 1e-12);
        // Confluent at level 1 under the minimal law: 1/p̂³ = 8.
        assert!((m.exact_kernel(1, 1).unwrap() - 8.0).abs() < 1e-12);
        let c = PercolationModel::canonical(binary(3), 1, 0.75).unwrap();
        // Siblings at level 3 under a level-2 confluent: 1/b_3 = 3.2.
        assert!((c.exact_kernel(7, 8).unwrap() - 3.2).abs() < 1e-12);
        let mx = PercolationModel::multiplex(binary(3), 1, 0.8).unwrap();
        assert!(matches!(mx.exact_kernel(1, 2), Err(PercError::Unsupported(_))));
    }

    #[test]
    fn fission_paths_have_the_line_law() {
        // Chi-squared test of the marginal distribution of the bits along
        // the leftmost root-to-leaf path against the exact line law.
        let depth = 3u32;
        let m = PercolationModel::canonical(binary(depth), 1, 0.8).unwrap();
        let path: Vec<usize> = vec![0, 1, 3, 7];
        let replicas = 100_000u64;
        let mut counts = vec![0u64; 1 << (depth + 1)];
        for r in 0..replicas {
            let s = m.sample(97, r).unwrap();
            let mut idx = 0usize;
            for (i, &v) in path.iter().enumerate() {
                if s.bits[v] {
                    idx |= 1 << i;
                }
            }
            counts[idx] += 1;
        }
        let mut chi2 = 0.0;
        let mut dof = 0usize;
        for idx in 0..counts.len() {
            let bits: Vec<bool> = (0..path.len()).map(|i| idx & (1 << i) != 0).collect();
            let expect = m.exact_path_prob(&bits).unwrap() * replicas as f64;
            if expect == 0.0 {
                assert_eq!(counts[idx], 0, "impossible configuration realized");
            } else {
                chi2 += (counts[idx] as f64 - expect).powi(2) / expect;
                dof += 1;
            }
        }
        // 10 cells with positive probability; chi2 99.99% quantile ~ 33.7.
        assert!(chi2 < 34.0, "chi2 = {chi2} over {dof} cells");
    }

    #[test]
    fn sibling_subtrees_conditionally_independent() {
        // Given the ancestor values, sibling subtree events factorize.
        // (Unconditionally they need not: the subtree fields both load on
        // the root bit through the line-law conditionals.)
        let m = PercolationModel::minimal(binary(2), 1, 0.6).unwrap();
        let replicas = 120_000u64;
        let (mut root_open, mut both, mut left, mut right) = (0u64, 0u64, 0u64, 0u64);
        for r in 0..replicas {
            let s = m.sample(1234, r).unwrap();
            if !s.bits[0] {
                continue;
            }
            root_open += 1;
            let l = s.bits[1] && s.bits[3] && s.bits[4];
            let rgt = s.bits[2] && s.bits[5] && s.bits[6];
            if l {
                left += 1;
            }
            if rgt {
                right += 1;
            }
            if l && rgt {
                both += 1;
            }
        }
        let n = root_open as f64;
        let (pl, pr, pb) = (left as f64 / n, right as f64 / n, both as f64 / n);
        let cov = pb - pl * pr;
        let var = pb * (1.0 - pb) / n;
        assert!(cov.abs() < 4.0 * var.sqrt() + 1e-4, "conditional cov = {cov}");
    }

    #[test]
    fn pairs_decouple_beyond_k_under_the_confluent() {
        // Vertices in disjoint subtrees become unconditionally independent
        // as soon as one of them sits more than k levels below the
        // confluent; the line law is k-independent, so its conditional
        // there no longer depends on the ancestor values.
        let t = binary(3);
        let m = PercolationModel::canonical(t, 1, 0.75).unwrap();
        let tree = m.tree().as_materialized().unwrap();
        // v = 3 (level 2, left), w = 2 (level 1, right): confluent is the
        // root and v is 2 > k levels below it.
        let (joint, pv, pw) = exact_pair(&m, tree, 3, 2);
        assert!((joint - pv * pw).abs() < 1e-12, "{joint} vs {}", pv * pw);
        // Both children of the root are only 1 = k level below it; they
        // stay dependent (1/12 vs 1/16 at p = 3/4).
        let (joint12, p1, p2) = exact_pair(&m, tree, 1, 2);
        assert!((joint12 - 1.0 / 12.0).abs() < 1e-12);
        assert!((p1 * p2 - 1.0 / 16.0).abs() < 1e-12);
    }

    /// Exact P(Z_v = 0, Z_w = 0) and the two marginals, by enumerating the
    /// product construction over all configurations.
    fn exact_pair(
        m: &PercolationModel,
        tree: &crate::tree::RootedTree,
        v: usize,
        w: usize,
    ) -> (f64, f64, f64) {
        let n = tree.vertex_count();
        let (mut joint, mut pv, mut pw) = (0.0, 0.0, 0.0);
        for config in 0u64..(1 << n) {
            let bits: Vec<bool> = (0..n).map(|i| config & (1 << i) != 0).collect();
            let mut prob = 1.0;
            for x in 0..n {
                let path = tree.path_from_root(x);
                let history: Vec<bool> = path[..path.len() - 1]
                    .iter()
                    .map(|&a| bits[a])
                    .collect();
                let p1 = match m.law().next_bit_prob(&history) {
                    Ok(p1) => p1,
                    Err(_) => {
                        prob = 0.0;
                        break;
                    }
                };
                prob *= if bits[x] { p1 } else { 1.0 - p1 };
                if prob == 0.0 {
                    break;
                }
            }
            if !bits[v] {
                pv += prob;
            }
            if !bits[w] {
                pw += prob;
            }
            if !bits[v] && !bits[w] {
                joint += prob;
            }
        }
        (joint, pv, pw)
    }

    #[test]
    fn multiplex_levels_are_constant() {
        let t = binary(4);
        let m = PercolationModel::multiplex(t, 1, 0.8).unwrap();
        let tree = m.tree().as_materialized().unwrap();
        for r in 0..50 {
            let s = m.sample(5, r).unwrap();
            for l in 0..=tree.depth() {
                let range = tree.level_range(l);
                let first = s.bits[range.start];
                assert!(range.clone().all(|v| s.bits[v] == first));
            }
        }
    }

    #[test]
    fn reach_probability_iid_binary() {
        // Depth 2, p = 1/2: root open and at least one child chain open.
        let m = PercolationModel::iid(binary(2), 0.5).unwrap();
        let reach1 = m.reach_probability(1).unwrap();
        assert!((reach1 - 0.5 * (1.0 - 0.25)).abs() < 1e-14);
        let child_chain: f64 = 0.5 * (1.0 - 0.25); // child open and a grandchild open
        let expect2 = 0.5 * (1.0 - (1.0 - child_chain).powi(2));
        let reach2 = m.reach_probability(2).unwrap();
        assert!((reach2 - expect2).abs() < 1e-14);
        assert_eq!(m.reach_probability(0).unwrap(), 0.5);
        assert!(m.reach_probability(3).is_err());
    }

    #[test]
    fn reach_probability_matches_on_implicit_view() {
        let spec = TreeSpec::Periodic { period: 2 };
        let mat = PercolationModel::canonical(view(spec.clone(), 6), 1, 0.8).unwrap();
        let imp_tree = TreeView::Implicit(crate::tree::ImplicitTree::new(spec, 6).unwrap());
        let imp = PercolationModel::canonical(imp_tree, 1, 0.8).unwrap();
        for level in 0..=6u32 {
            let a = mat.reach_probability(level).unwrap();
            let b = imp.reach_probability(level).unwrap();
            assert!((a - b).abs() < 1e-13, "level {level}: {a} vs {b}");
        }
    }

    #[test]
    fn multiplex_reach_is_line_allones() {
        let m = PercolationModel::multiplex(binary(5), 1, 0.8).unwrap();
        for level in 0..=5u32 {
            let reach = m.reach_probability(level).unwrap();
            let allones = m.path_allones(level as usize + 1).unwrap();
            assert!((reach - allones).abs() < 1e-14);
        }
    }

    #[test]
    fn kernel_numerator_within_monte_carlo_band() {
        // P(o↔v, o↔w) = a_{|v|+1} a_{|w|+1} / a_{|u|+1}; the sampler
        // reproduces it within 4 sigma at one million replicas.
        let m = PercolationModel::canonical(binary(3), 1, 0.8).unwrap();
        let tree = m.tree().as_materialized().unwrap();
        let (v, w) = (7usize, 11usize); // level-3 leaves meeting at the root
        let (u, _) = tree.confluent(v, w).unwrap();
        assert_eq!(tree.level(u), 0);
        let a = |n: usize| m.path_allones(n).unwrap();
        let exact = a(4) * a(4) / a(1);
        let path_v = tree.path_from_root(v);
        let path_w = tree.path_from_root(w);
        let replicas = 1_000_000u64;
        let mut hits = 0u64;
        for r in 0..replicas {
            let s = m.sample(2718, r).unwrap();
            if path_v.iter().all(|&x| s.bits[x]) && path_w.iter().all(|&x| s.bits[x]) {
                hits += 1;
            }
        }
        let freq = hits as f64 / replicas as f64;
        let sigma = (exact * (1.0 - exact) / replicas as f64).sqrt();
        assert!((freq - exact).abs() < 4.0 * sigma, "{freq} vs {exact}");
        // Equivalently the kernel estimate brackets 1/a_{u+1}.
        let kappa = m.exact_kernel(v, w).unwrap();
        assert!((kappa - 1.0 / a(1)).abs() < 1e-12);
    }

    #[test]
    fn samples_deterministic_in_seed_and_stream() {
        let m = PercolationModel::cutup(binary(5), 1, 2).unwrap();
        let a = m.sample(7, 3).unwrap();
        let b = m.sample(7, 3).unwrap();
        assert_eq!(a.bits, b.bits);
        let c = m.sample(7, 4).unwrap();
        assert_ne!(a.bits, c.bits);
    }

    #[test]
    fn shearer_spacing_holds_along_paths() {
        let m = PercolationModel::canonical(binary(6), 2, 0.88).unwrap();
        let tree = m.tree().as_materialized().unwrap();
        for r in 0..200 {
            let s = m.sample(2024, r).unwrap();
            for leaf in tree.level_range(6) {
                let path = tree.path_from_root(leaf);
                let zeros: Vec<usize> = path
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| !s.bits[v])
                    .map(|(i, _)| i)
                    .collect();
                for w in zeros.windows(2) {
                    assert!(w[1] - w[0] > 2, "zeros too close along a downray");
                }
            }
        }
    }
}
