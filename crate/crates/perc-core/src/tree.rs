//! Rooted-tree truncations, tree families with known branching number,
//! cutsets and λ-flows.
//!
//! Trees are finite truncations of infinite families. Vertices are dense
//! indices in breadth-first generation order, so level membership is a
//! contiguous index range and lookups are O(1). Every structure here is
//! immutable after construction.

use crate::error::{PercError, Result};
use serde::{Deserialize, Serialize};

/// Generator of deterministic truncations of an infinite rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeSpec {
    /// Every vertex has `d` children.
    DAry { d: u32 },
    /// Vertices at depth divisible by `period` have 2 children, others 1.
    Periodic { period: u32 },
    /// Every vertex has exactly one child.
    SingleRay,
    /// Explicit child counts, one per vertex in breadth-first order.
    Explicit { child_counts: Vec<u32> },
}

impl TreeSpec {
    /// Children of a vertex at `level`, for the level-homogeneous families.
    /// `None` for explicit specs.
    pub fn children_at_level(&self, level: u32) -> Option<u64> {
        match self {
            TreeSpec::DAry { d } => Some(u64::from(*d)),
            TreeSpec::Periodic { period } => {
                Some(if level % period == 0 { 2 } else { 1 })
            }
            TreeSpec::SingleRay => Some(1),
            TreeSpec::Explicit { .. } => None,
        }
    }

    pub fn is_level_homogeneous(&self) -> bool {
        !matches!(self, TreeSpec::Explicit { .. })
    }

    /// Exact branching number of the infinite family.
    ///
    /// Closed forms: a single ray has branching number 1, the d-ary tree d,
    /// and the periodic tree 2^(1/m) because the level-n cutset sum
    /// λ^(-n)·2^(ceil(n/m)) stays bounded away from 0 exactly for
    /// λ ≤ 2^(1/m). Explicit finite specs are rejected (the branching
    /// number of a truncation is 1).
    pub fn branching_number(&self) -> Result<f64> {
        match self {
            TreeSpec::SingleRay => Ok(1.0),
            TreeSpec::DAry { d } => Ok(f64::from(*d)),
            TreeSpec::Periodic { period } => Ok(2f64.powf(1.0 / f64::from(*period))),
            TreeSpec::Explicit { .. } => Err(PercError::Unsupported(
                "branching number is closed-form only for d_ary, periodic and single_ray"
                    .into(),
            )),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            TreeSpec::DAry { d } if *d < 1 => {
                Err(PercError::Invalid("d_ary requires d >= 1".into()))
            }
            TreeSpec::Periodic { period } if *period < 1 => {
                Err(PercError::Invalid("periodic requires period >= 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeSpec::DAry { d } => write!(f, "d_ary:{d}"),
            TreeSpec::Periodic { period } => write!(f, "periodic:{period}"),
            TreeSpec::SingleRay => write!(f, "single_ray"),
            TreeSpec::Explicit { child_counts } => {
                let counts: Vec<String> =
                    child_counts.iter().map(u32::to_string).collect();
                write!(f, "explicit:{}", counts.join(","))
            }
        }
    }
}

impl std::str::FromStr for TreeSpec {
    type Err = PercError;

    /// Parses the key-value fragment used by the CLI: `d_ary:2`,
    /// `periodic:3`, `single_ray`, `explicit:2,2,0`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let parse_u32 = |a: &str| {
            a.parse::<u32>()
                .map_err(|_| PercError::Invalid(format!("bad tree parameter {a:?}")))
        };
        let spec = match (kind, args) {
            ("d_ary", Some(a)) => TreeSpec::DAry { d: parse_u32(a)? },
            ("periodic", Some(a)) => TreeSpec::Periodic { period: parse_u32(a)? },
            ("single_ray", None) => TreeSpec::SingleRay,
            ("explicit", Some(a)) => {
                let child_counts = a
                    .split(',')
                    .map(|c| parse_u32(c.trim()))
                    .collect::<Result<Vec<_>>>()?;
                TreeSpec::Explicit { child_counts }
            }
            _ => {
                return Err(PercError::Invalid(format!(
                    "unknown tree spec {s:?} (expected d_ary:D, periodic:M, single_ray or explicit:c0,c1,...)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A finite rooted tree, vertices indexed in breadth-first order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<u32>,
    children: Vec<Vec<u32>>,
    level: Vec<u32>,
    /// `level_offsets[l]..level_offsets[l+1]` are the vertices at level l.
    level_offsets: Vec<usize>,
    depth: u32,
}

/// Deterministic truncation of the infinite tree described by `spec`,
/// children in canonical generation order.
pub fn build_tree(spec: &TreeSpec, depth: u32) -> Result<RootedTree> {
    spec.validate()?;
    let mut parent = vec![0u32];
    let mut children: Vec<Vec<u32>> = vec![Vec::new()];
    let mut level = vec![0u32];
    let mut explicit_counts = match spec {
        TreeSpec::Explicit { child_counts } => Some(child_counts.iter().copied()),
        _ => None,
    };
    let mut v = 0usize;
    while v < parent.len() {
        let lv = level[v];
        if lv < depth {
            let count = match &mut explicit_counts {
                Some(iter) => u64::from(iter.next().ok_or_else(|| {
                    PercError::Invalid(
                        "explicit spec ran out of child counts before reaching the requested depth"
                            .into(),
                    )
                })?),
                None => spec.children_at_level(lv).expect("homogeneous"),
            };
            for _ in 0..count {
                let w = parent.len() as u32;
                parent.push(v as u32);
                children.push(Vec::new());
                level.push(lv + 1);
                children[v].push(w);
            }
        }
        v += 1;
    }
    if let Some(mut iter) = explicit_counts {
        if iter.next().is_some() {
            return Err(PercError::Invalid(
                "explicit spec lists more child counts than the truncation has internal vertices"
                    .into(),
            ));
        }
    }
    let actual_depth = *level.last().unwrap_or(&0);
    let mut level_offsets = vec![0usize; actual_depth as usize + 2];
    for &l in &level {
        level_offsets[l as usize + 1] += 1;
    }
    for l in 0..=actual_depth as usize {
        level_offsets[l + 1] += level_offsets[l];
    }
    Ok(RootedTree { parent, children, level, level_offsets, depth: actual_depth })
}

impl RootedTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn level(&self, v: usize) -> u32 {
        self.level[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        if v == 0 { None } else { Some(self.parent[v] as usize) }
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Vertices at level `l` as a contiguous index range.
    pub fn level_range(&self, l: u32) -> std::ops::Range<usize> {
        if l > self.depth {
            return 0..0;
        }
        self.level_offsets[l as usize]..self.level_offsets[l as usize + 1]
    }

    pub fn level_size(&self, l: u32) -> usize {
        self.level_range(l).len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(PercError::Invalid(format!(
                "vertex {v} out of range ({} vertices)",
                self.vertex_count()
            )))
        }
    }

    /// Path from the root to `v`, inclusive.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.level[v] as usize + 1);
        let mut cur = v;
        loop {
            path.push(cur);
            match self.parent(cur) {
                Some(p) => cur = p,
                None => break,
            }
        }
        path.reverse();
        path
    }

    pub fn is_ancestor_or_self(&self, a: usize, v: usize) -> bool {
        let mut cur = v;
        loop {
            if cur == a {
                return true;
            }
            match self.parent(cur) {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Deepest common ancestor of `v` and `w`, together with the geodesic
    /// from the root to it. Returns `v` itself when `v` is an ancestor of
    /// `w` (and vice versa).
    pub fn confluent(&self, v: usize, w: usize) -> Result<(usize, Vec<usize>)> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        let (mut a, mut b) = (v, w);
        while self.level[a] > self.level[b] {
            a = self.parent(a).expect("deeper vertex has a parent");
        }
        while self.level[b] > self.level[a] {
            b = self.parent(b).expect("deeper vertex has a parent");
        }
        while a != b {
            a = self.parent(a).expect("non-root mismatch");
            b = self.parent(b).expect("non-root mismatch");
        }
        Ok((a, self.path_from_root(a)))
    }
}

/// An antichain of vertices separating the root from the deepest level of
/// the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutset {
    vertices: Vec<usize>,
}

impl Cutset {
    /// Wraps a vertex set after validating both defining properties against
    /// the tree: no member is an ancestor of another, and removing the set
    /// disconnects the root from every vertex at the truncation depth.
    pub fn new(tree: &RootedTree, vertices: Vec<usize>) -> Result<Self> {
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(PercError::Invalid("cutset lists a vertex twice".into()));
        }
        for &v in &sorted {
            tree.check_vertex(v)?;
        }
        let member = {
            let mut mask = vec![false; tree.vertex_count()];
            for &v in &sorted {
                mask[v] = true;
            }
            mask
        };
        // Antichain: walking up from any member must not meet another member.
        for &v in &sorted {
            let mut cur = v;
            while let Some(p) = tree.parent(cur) {
                if member[p] {
                    return Err(PercError::Invalid(format!(
                        "cutset contains vertex {p}, an ancestor of member {v}"
                    )));
                }
                cur = p;
            }
        }
        // Separation: traversal from the root avoiding the set must not
        // reach the deepest level.
        if !member[0] {
            let mut stack = vec![0usize];
            while let Some(u) = stack.pop() {
                if tree.level(u) == tree.depth() {
                    return Err(PercError::Invalid(format!(
                        "cutset does not separate the root from level {}",
                        tree.depth()
                    )));
                }
                for &c in tree.children(u) {
                    if !member[c as usize] {
                        stack.push(c as usize);
                    }
                }
            }
        }
        Ok(Self { vertices: sorted })
    }

    /// The level-`l` cutset.
    pub fn level(tree: &RootedTree, l: u32) -> Result<Self> {
        if l > tree.depth() {
            return Err(PercError::Invalid(format!(
                "level {l} exceeds tree depth {}",
                tree.depth()
            )));
        }
        Self::new(tree, tree.level_range(l).collect())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// Σ over the cutset of λ^(-level).
pub fn cutset_sum(tree: &RootedTree, lambda: f64, cutset: &Cutset) -> f64 {
    cutset
        .vertices()
        .iter()
        .map(|&v| lambda.powi(-(tree.level(v) as i32)))
        .sum()
}

/// A λ-flow on a truncation: nonnegative, conserved at internal vertices and
/// capped by λ^(-level).
#[derive(Debug, Clone)]
pub struct FlowAssignment {
    lambda: f64,
    values: Vec<f64>,
}

impl FlowAssignment {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn root_value(&self) -> f64 {
        self.values[0]
    }
}

/// Maximal flow respecting the capacities λ^(-level): a bottom-up
/// min-aggregation (leaves get their capacity, internal vertices
/// min(capacity, sum of children)) followed by a top-down proportional
/// rescaling that restores conservation where a capacity bound cut in.
pub fn lambda_flow(tree: &RootedTree, lambda: f64) -> Result<FlowAssignment> {
    if !(lambda >= 1.0) {
        return Err(PercError::Domain(format!(
            "lambda flow requires lambda >= 1, got {lambda}"
        )));
    }
    let n = tree.vertex_count();
    let mut up = vec![0.0f64; n];
    for v in (0..n).rev() {
        let cap = lambda.powi(-(tree.level(v) as i32));
        if tree.is_leaf(v) {
            up[v] = cap;
        } else {
            let s: f64 = tree.children(v).iter().map(|&c| up[c as usize]).sum();
            up[v] = cap.min(s);
        }
    }
    let mut values = vec![0.0f64; n];
    values[0] = up[0];
    for v in 0..n {
        if values[v] <= 0.0 {
            continue;
        }
        let s: f64 = tree.children(v).iter().map(|&c| up[c as usize]).sum();
        if s <= 0.0 {
            continue;
        }
        for &c in tree.children(v) {
            values[c as usize] = values[v] * up[c as usize] / s;
        }
    }
    Ok(FlowAssignment { lambda, values })
}

/// A truncation that is either materialized or kept implicit because it is
/// too large to build vertex-by-vertex. Implicit views exist only for the
/// level-homogeneous families, where level sizes and child counts are
/// functions of the level alone.
#[derive(Debug, Clone)]
pub enum TreeView {
    Materialized { spec: TreeSpec, tree: RootedTree },
    Implicit(ImplicitTree),
}

/// Level data of a level-homogeneous truncation.
#[derive(Debug, Clone)]
pub struct ImplicitTree {
    spec: TreeSpec,
    depth: u32,
    /// Exact when the size is a power of two or below 2^53.
    level_sizes: Vec<f64>,
    /// Breadth-first index of the first vertex of each level; `None` once
    /// the counts exceed u64 (sampling is then unavailable).
    level_offsets: Option<Vec<u64>>,
}

impl ImplicitTree {
    pub fn new(spec: TreeSpec, depth: u32) -> Result<Self> {
        spec.validate()?;
        if !spec.is_level_homogeneous() {
            return Err(PercError::Unsupported(
                "implicit truncations exist only for level-homogeneous specs".into(),
            ));
        }
        let mut level_sizes = Vec::with_capacity(depth as usize + 1);
        let mut offsets: Option<Vec<u64>> = Some(vec![0]);
        let mut size = 1.0f64;
        let mut size_u: Option<u64> = Some(1);
        for l in 0..=depth {
            level_sizes.push(size);
            if let (Some(offs), Some(s)) = (&mut offsets, size_u) {
                match offs.last().unwrap().checked_add(s) {
                    Some(next) => offs.push(next),
                    None => offsets = None,
                }
            } else {
                offsets = None;
            }
            let c = spec.children_at_level(l).expect("homogeneous");
            size *= c as f64;
            size_u = size_u.and_then(|s| s.checked_mul(c));
        }
        Ok(Self { spec, depth, level_sizes, level_offsets: offsets })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn children_at_level(&self, l: u32) -> u64 {
        self.spec.children_at_level(l).expect("homogeneous")
    }

    pub fn level_size(&self, l: u32) -> f64 {
        self.level_sizes[l as usize]
    }

    /// Breadth-first index of the `i`-th vertex of level `l`, when indices
    /// fit in u64.
    pub fn vertex_id(&self, l: u32, i: u64) -> Option<u64> {
        self.level_offsets.as_ref().map(|o| o[l as usize] + i)
    }

    pub fn addressable(&self) -> bool {
        self.level_offsets.is_some()
    }
}

impl TreeView {
    /// Materializes when the truncation fits in `max_vertices` vertices,
    /// otherwise keeps an implicit view.
    pub fn build(spec: &TreeSpec, depth: u32, max_vertices: usize) -> Result<Self> {
        if spec.is_level_homogeneous() {
            let implicit = ImplicitTree::new(spec.clone(), depth)?;
            let total: f64 = implicit.level_sizes.iter().sum();
            if total <= max_vertices as f64 {
                Ok(TreeView::Materialized { spec: spec.clone(), tree: build_tree(spec, depth)? })
            } else {
                Ok(TreeView::Implicit(implicit))
            }
        } else {
            Ok(TreeView::Materialized { spec: spec.clone(), tree: build_tree(spec, depth)? })
        }
    }

    pub fn from_tree(spec: &TreeSpec, tree: RootedTree) -> Self {
        TreeView::Materialized { spec: spec.clone(), tree }
    }

    pub fn spec(&self) -> &TreeSpec {
        match self {
            TreeView::Materialized { spec, .. } => spec,
            TreeView::Implicit(t) => &t.spec,
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            TreeView::Materialized { tree, .. } => tree.depth(),
            TreeView::Implicit(t) => t.depth(),
        }
    }

    pub fn level_size_f64(&self, l: u32) -> f64 {
        match self {
            TreeView::Materialized { tree, .. } => tree.level_size(l) as f64,
            TreeView::Implicit(t) => t.level_size(l),
        }
    }

    pub fn as_materialized(&self) -> Option<&RootedTree> {
        match self {
            TreeView::Materialized { tree, .. } => Some(tree),
            TreeView::Implicit(_) => None,
        }
    }

    pub fn require_materialized(&self, what: &str) -> Result<&RootedTree> {
        self.as_materialized().ok_or_else(|| {
            PercError::Resource(format!(
                "{what} needs a materialized tree; this truncation is too large"
            ))
        })
    }
}
