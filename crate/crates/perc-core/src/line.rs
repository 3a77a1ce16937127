//! Exact, sampleable laws of {0,1}-processes on initial integer segments.
//!
//! Every kind is a windowed function of independent driver bits (or a
//! block-wise concatenation of such), which is what makes exact conditional
//! queries cheap: a forward pass over the 2^k driver-window states yields
//! P(next bit | history) in O(2^k) per position instead of inclusion-
//! exclusion over the whole past.

use crate::error::{PercError, Result};
use crate::rng;
use crate::shearer::{b_sequence, p_shearer_kfuzz, p_shearer_line, xi};
use serde::{Deserialize, Serialize};

/// A finite realization prefix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitString {
    type Err = PercError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(PercError::Invalid(format!("bad bit {c:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

/// Serializable description of a line law; the CLI-facing surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawSpec {
    /// Shearer's measure on the k-fuzz of the half line (zero-one switch
    /// over iid Bernoulli(ξ) drivers). Requires p ≥ p_sh of the k-fuzz of
    /// the integers.
    ShearerFactor { k: usize, p: f64 },
    /// Shearer's measure on the k-fuzz of a line of `len` points, built from
    /// independent Bernoulli(β_n) drivers with the switch truncated at the
    /// first k indices. Requires p ≥ p_sh of that finite line.
    ShearerTruncated { k: usize, len: usize, p: f64 },
    /// Independent length-`block` truncated-Shearer blocks, each at the
    /// critical parameter of the block line (where the all-ones block
    /// probability vanishes).
    Cutup { k: usize, block: usize },
    /// Moving product of k+1 iid Bernoulli(p^(1/(k+1))) drivers.
    Minimal { k: usize, p: f64 },
    /// iid Bernoulli(p).
    Iid { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Z = 0 iff the trailing k drivers are 1 and the new driver is 0.
    ZeroOneSwitch,
    /// Z = 1 iff the trailing k drivers and the new driver are all 1.
    ForwardProduct,
}

#[derive(Debug, Clone)]
enum Drivers {
    Const(f64),
    /// One Bernoulli parameter per position; law length-capped.
    PerPosition(Vec<f64>),
    /// Per-position parameters recycled block-wise with a state reset at
    /// each block boundary.
    Blocks(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InitState {
    /// Window drivers drawn iid from the driver parameter.
    Product,
    /// Window pinned to all ones (the truncated rule).
    AllOnes,
}

/// A validated law with its derived tables.
#[derive(Debug, Clone)]
pub struct LineLaw {
    spec: LawSpec,
    k: usize,
    marginal: f64,
    xi: Option<f64>,
    rule: Rule,
    drivers: Drivers,
    init: InitState,
    /// Maximum prefix length, for length-capped kinds.
    max_len: Option<usize>,
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(PercError::Domain(format!("{what} must lie in [0,1], got {p}")))
    }
}

impl LineLaw {
    pub fn make(spec: &LawSpec) -> Result<Self> {
        match *spec {
            LawSpec::ShearerFactor { k, p } => Self::shearer_factor(k, p),
            LawSpec::ShearerTruncated { k, len, p } => Self::shearer_truncated(k, len, p),
            LawSpec::Cutup { k, block } => Self::cutup(k, block),
            LawSpec::Minimal { k, p } => Self::minimal(k, p),
            LawSpec::Iid { p } => Self::iid(p),
        }
    }

    pub fn shearer_factor(k: usize, p: f64) -> Result<Self> {
        check_probability(p, "shearer factor parameter")?;
        let threshold = p_shearer_kfuzz(k);
        if p < threshold - 1e-12 {
            return Err(PercError::Domain(format!(
                "shearer factor law requires p >= p_sh = {threshold} \
                 (k-fuzz of the integers, k = {k}), got p = {p}"
            )));
        }
        let xi_v = xi(k, p)?.xi;
        Ok(Self {
            spec: LawSpec::ShearerFactor { k, p },
            k,
            marginal: p,
            xi: Some(xi_v),
            rule: Rule::ZeroOneSwitch,
            drivers: Drivers::Const(xi_v),
            init: InitState::Product,
            max_len: None,
        })
    }

    pub fn shearer_truncated(k: usize, len: usize, p: f64) -> Result<Self> {
        check_probability(p, "truncated shearer parameter")?;
        if len == 0 {
            return Err(PercError::Invalid("truncated shearer needs len >= 1".into()));
        }
        let threshold = p_shearer_line(k, len);
        if p < threshold - 1e-12 {
            return Err(PercError::Domain(format!(
                "truncated shearer law requires p >= p_sh = {threshold} \
                 (k-fuzz of a line of {len} points, k = {k}), got p = {p}"
            )));
        }
        let betas = clamped_betas(k, p, len);
        Ok(Self {
            spec: LawSpec::ShearerTruncated { k, len, p },
            k,
            marginal: p,
            xi: None,
            rule: Rule::ZeroOneSwitch,
            drivers: Drivers::PerPosition(betas),
            init: InitState::AllOnes,
            max_len: Some(len),
        })
    }

    /// The block law at the critical parameter of the block line; the last
    /// ratio is exactly zero there, so every block carries at least one
    /// zero almost surely.
    pub fn cutup(k: usize, block: usize) -> Result<Self> {
        if block == 0 {
            return Err(PercError::Invalid("cutup needs a block length >= 1".into()));
        }
        let p_crit = p_shearer_line(k, block);
        let mut betas = clamped_betas(k, p_crit, block);
        betas[block - 1] = 0.0;
        Ok(Self {
            spec: LawSpec::Cutup { k, block },
            k,
            marginal: p_crit,
            xi: None,
            rule: Rule::ZeroOneSwitch,
            drivers: Drivers::Blocks(betas),
            init: InitState::AllOnes,
            max_len: None,
        })
    }

    pub fn minimal(k: usize, p: f64) -> Result<Self> {
        check_probability(p, "minimal law parameter")?;
        let p_hat = p.powf(1.0 / (k as f64 + 1.0));
        Ok(Self {
            spec: LawSpec::Minimal { k, p },
            k,
            marginal: p,
            xi: None,
            rule: Rule::ForwardProduct,
            drivers: Drivers::Const(p_hat),
            init: InitState::Product,
            max_len: None,
        })
    }

    pub fn iid(p: f64) -> Result<Self> {
        check_probability(p, "iid parameter")?;
        Ok(Self {
            spec: LawSpec::Iid { p },
            k: 0,
            marginal: p,
            xi: None,
            rule: Rule::ForwardProduct,
            drivers: Drivers::Const(p),
            init: InitState::Product,
            max_len: None,
        })
    }

    pub fn spec(&self) -> &LawSpec {
        &self.spec
    }

    /// Dependence range: positions further apart than this are independent.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Exact marginal P(Z_n = 1), identical at every position.
    pub fn marginal_p(&self) -> f64 {
        self.marginal
    }

    /// ξ for the shearer-factor kind.
    pub fn xi_value(&self) -> Option<f64> {
        self.xi
    }

    /// Driver success probability for position `pos`.
    pub fn driver_prob(&self, pos: usize) -> f64 {
        match &self.drivers {
            Drivers::Const(d) => *d,
            Drivers::PerPosition(betas) => betas[pos],
            Drivers::Blocks(betas) => betas[pos % betas.len()],
        }
    }

    pub fn max_len(&self) -> Option<usize> {
        self.max_len
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if let Some(cap) = self.max_len {
            if n > cap {
                return Err(PercError::Invalid(format!(
                    "law is defined on at most {cap} positions, asked for {n}"
                )));
            }
        }
        Ok(())
    }

    fn block_len(&self) -> Option<usize> {
        match &self.drivers {
            Drivers::Blocks(betas) => Some(betas.len()),
            _ => None,
        }
    }

    /// Exact sample of (Z_0 .. Z_{n-1}), deterministic in
    /// (seed, stream, position).
    pub fn sample_prefix(&self, n: usize, seed: u64, stream: u64) -> Result<BitString> {
        self.check_len(n)?;
        let mut out = Vec::with_capacity(n);
        match self.init {
            InitState::Product => {
                // One driver per index of the (k+1)-window array.
                let mut window: Vec<bool> = (0..self.k)
                    .map(|i| rng::bernoulli(seed, stream, i as u64, self.driver_prob(0)))
                    .collect();
                for j in 0..n {
                    let x = rng::bernoulli(
                        seed,
                        stream,
                        (j + self.k) as u64,
                        self.driver_prob(j),
                    );
                    let all_ones = window.iter().all(|&b| b);
                    out.push(emit(self.rule, all_ones, x));
                    if self.k > 0 {
                        window.remove(0);
                        window.push(x);
                    }
                }
            }
            InitState::AllOnes => {
                let block = self.block_len();
                let mut window: Vec<bool> = vec![true; self.k];
                for j in 0..n {
                    if let Some(b) = block {
                        if j > 0 && j % b == 0 {
                            window.iter_mut().for_each(|w| *w = true);
                        }
                    }
                    let x = rng::bernoulli(seed, stream, j as u64, self.driver_prob(j));
                    let all_ones = window.iter().all(|&b| b);
                    out.push(emit(self.rule, all_ones, x));
                    if self.k > 0 {
                        window.remove(0);
                        window.push(x);
                    }
                }
            }
        }
        Ok(BitString(out))
    }

    /// Exact P(Z_n = 1 | Z_0..Z_{n-1} = history), n = |history|.
    pub fn next_bit_prob(&self, history: &[bool]) -> Result<f64> {
        self.check_len(history.len() + 1)?;
        let mut fwd = self.forward();
        for &bit in history {
            let step = fwd.step(if bit { Constraint::One } else { Constraint::Zero })?;
            if step <= 0.0 {
                return Err(PercError::Conditioning(
                    "history has probability zero under this law".into(),
                ));
            }
        }
        Ok(fwd.prob_one())
    }

    /// Exact P(Z_0 .. Z_{n-1} all ones), in closed form per kind.
    pub fn allones_prob(&self, n: usize) -> Result<f64> {
        self.check_len(n)?;
        if n == 0 {
            return Ok(1.0);
        }
        Ok(match &self.spec {
            LawSpec::ShearerFactor { k, p } => b_sequence(*k, *p, n).b[n - 1],
            LawSpec::ShearerTruncated { .. } | LawSpec::Cutup { .. } => {
                let betas = match &self.drivers {
                    Drivers::PerPosition(b) | Drivers::Blocks(b) => b,
                    Drivers::Const(_) => unreachable!(),
                };
                let block = betas.len();
                let mut prob = 1.0;
                for j in 0..n {
                    prob *= betas[j % block];
                    if prob == 0.0 {
                        break;
                    }
                }
                prob
            }
            LawSpec::Minimal { k, .. } => {
                let p_hat = match self.drivers {
                    Drivers::Const(d) => d,
                    _ => unreachable!(),
                };
                p_hat.powi((n + k) as i32)
            }
            LawSpec::Iid { p } => p.powi(n as i32),
        })
    }

    /// Exact probability that the prefix satisfies per-position constraints.
    pub fn constrained_prob(&self, constraints: &[Constraint]) -> Result<f64> {
        self.check_len(constraints.len())?;
        let mut fwd = self.forward();
        for &c in constraints {
            fwd.step(c)?;
            if fwd.likelihood() == 0.0 {
                return Ok(0.0);
            }
        }
        Ok(fwd.likelihood())
    }

    /// Start an exact forward pass at position 0.
    pub fn forward(&self) -> ForwardPass<'_> {
        let states = 1usize << self.k;
        let mut pi = vec![0.0; states];
        match self.init {
            InitState::AllOnes => pi[states - 1] = 1.0,
            InitState::Product => {
                let d = self.driver_prob(0);
                for (s, slot) in pi.iter_mut().enumerate() {
                    let ones = (s as u64).count_ones() as i32;
                    *slot = d.powi(ones) * (1.0 - d).powi(self.k as i32 - ones);
                }
            }
        }
        ForwardPass { law: self, pi, pos: 0, likelihood: 1.0, log_likelihood: 0.0 }
    }
}

fn clamped_betas(k: usize, p: f64, len: usize) -> Vec<f64> {
    b_sequence(k, p, len)
        .beta
        .iter()
        .map(|&b| b.clamp(0.0, 1.0))
        .collect()
}

#[inline]
fn emit(rule: Rule, window_all_ones: bool, x: bool) -> bool {
    match rule {
        Rule::ZeroOneSwitch => !(window_all_ones && !x),
        Rule::ForwardProduct => window_all_ones && x,
    }
}

/// Per-position observation for `constrained_prob` / `ForwardPass::step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Zero,
    One,
    Free,
}

/// Exact filter over the hidden driver-window state.
#[derive(Debug, Clone)]
pub struct ForwardPass<'a> {
    law: &'a LineLaw,
    /// Posterior over the 2^k window states given the observations so far.
    pi: Vec<f64>,
    pos: usize,
    likelihood: f64,
    log_likelihood: f64,
}

impl ForwardPass<'_> {
    pub fn position(&self) -> usize {
        self.pos
    }

    /// P(observations so far); may underflow for very long runs, in which
    /// case `log_likelihood` stays informative.
    pub fn likelihood(&self) -> f64 {
        self.likelihood
    }

    pub fn log_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    /// P(Z_pos = 1 | observations so far).
    pub fn prob_one(&self) -> f64 {
        let all = self.pi.len() - 1;
        let d = self.law.driver_prob(self.pos);
        let reset = self
            .law
            .block_len()
            .is_some_and(|b| self.pos > 0 && self.pos % b == 0);
        match self.law.rule {
            Rule::ZeroOneSwitch => {
                if reset {
                    d
                } else {
                    1.0 - self.pi[all] * (1.0 - d)
                }
            }
            Rule::ForwardProduct => {
                if reset {
                    d
                } else {
                    self.pi[all] * d
                }
            }
        }
    }

    /// Advance one position under an observation; returns its conditional
    /// probability. A zero return leaves the pass unusable for further
    /// conditioning (the likelihood is pinned at zero).
    pub fn step(&mut self, c: Constraint) -> Result<f64> {
        self.law.check_len(self.pos + 1)?;
        let states = self.pi.len();
        let mask = states - 1;
        if let Some(b) = self.law.block_len() {
            if self.pos > 0 && self.pos % b == 0 {
                // Blocks are independent: forget the window, pin to ones.
                self.pi.iter_mut().for_each(|m| *m = 0.0);
                self.pi[mask] = 1.0;
            }
        }
        if self.likelihood == 0.0 {
            return Ok(0.0);
        }
        let d = self.law.driver_prob(self.pos);
        let mut new_pi = vec![0.0; states];
        for (s, &mass) in self.pi.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            let all_ones = s == mask;
            for (x, w) in [(true, d), (false, 1.0 - d)] {
                if w == 0.0 {
                    continue;
                }
                let z = emit(self.law.rule, all_ones, x);
                let keep = match c {
                    Constraint::One => z,
                    Constraint::Zero => !z,
                    Constraint::Free => true,
                };
                if keep {
                    let s2 = ((s << 1) | usize::from(x)) & mask;
                    new_pi[s2] += mass * w;
                }
            }
        }
        let step_prob: f64 = new_pi.iter().sum();
        self.pos += 1;
        if step_prob <= 0.0 {
            self.pi = new_pi;
            self.likelihood = 0.0;
            self.log_likelihood = f64::NEG_INFINITY;
            return Ok(0.0);
        }
        for m in &mut new_pi {
            *m /= step_prob;
        }
        self.pi = new_pi;
        self.likelihood *= step_prob;
        self.log_likelihood += step_prob.ln();
        Ok(step_prob)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(spec: LawSpec) -> LineLaw {
        LineLaw::make(&spec).unwrap()
    }

    #[test]
    fn make_law_thresholds() {
        assert!(matches!(
            LineLaw::shearer_factor(1, 0.7),
            Err(PercError::Domain(_))
        ));
        assert!(LineLaw::shearer_factor(1, 0.75).is_ok());
        assert!(LineLaw::shearer_factor(2, p_shearer_kfuzz(2)).is_ok());
        let m = LineLaw::minimal(1, 0.25).unwrap();
        assert!((m.driver_prob(0) - 0.5).abs() < 1e-15);
        let z = LineLaw::iid(0.0).unwrap();
        assert_eq!(z.sample_prefix(5, 1, 0).unwrap().to_string(), "00000");
        assert!(LineLaw::iid(1.2).is_err());
        // Truncated law below the finite-line critical value is refused.
        assert!(LineLaw::shearer_truncated(1, 2, 0.45).is_err());
        assert!(LineLaw::shearer_truncated(1, 2, 0.6).is_ok());
    }

    #[test]
    fn empty_prefix_and_marginals() {
        for spec in [
            LawSpec::ShearerFactor { k: 1, p: 0.8 },
            LawSpec::ShearerTruncated { k: 1, len: 6, p: 0.8 },
            LawSpec::Cutup { k: 1, block: 3 },
            LawSpec::Minimal { k: 2, p: 0.4 },
            LawSpec::Iid { p: 0.37 },
        ] {
            let l = law(spec);
            assert_eq!(l.sample_prefix(0, 9, 0).unwrap().len(), 0);
            assert_eq!(l.allones_prob(0).unwrap(), 1.0);
            assert!((l.allones_prob(1).unwrap() - l.marginal_p()).abs() < 1e-12);
            // Empty history: the marginal.
            let first = l.next_bit_prob(&[]).unwrap();
            assert!(
                (first - l.marginal_p()).abs() < 1e-12,
                "{:?}: {first} vs {}",
                l.spec(),
                l.marginal_p()
            );
        }
    }

    #[test]
    fn next_bit_examples() {
        let l = law(LawSpec::ShearerFactor { k: 1, p: 0.75 });
        let after_one = l.next_bit_prob(&[true]).unwrap();
        assert!((after_one - 2.0 / 3.0).abs() < 1e-12);
        // A zero forces ones for the next k steps.
        let after_zero = l.next_bit_prob(&[true, false]).unwrap();
        assert!((after_zero - 1.0).abs() < 1e-15);
        let l2 = law(LawSpec::ShearerFactor { k: 2, p: 0.9 });
        assert_eq!(l2.next_bit_prob(&[true, false]).unwrap(), 1.0);
        assert_eq!(l2.next_bit_prob(&[false]).unwrap(), 1.0);
        // Adjacent zeros have probability zero: conditioning error.
        assert!(l.next_bit_prob(&[true, false, false]).is_err());
    }

    #[test]
    fn allones_examples() {
        let l = law(LawSpec::ShearerFactor { k: 1, p: 0.75 });
        assert!((l.allones_prob(3).unwrap() - 0.3125).abs() < 1e-13);
        let m = law(LawSpec::Minimal { k: 1, p: 0.25 });
        assert!((m.allones_prob(2).unwrap() - 0.125).abs() < 1e-13);
        let c = law(LawSpec::Cutup { k: 1, block: 2 });
        assert!((c.marginal_p() - 0.5).abs() < 1e-9);
        assert_eq!(c.allones_prob(2).unwrap(), 0.0);
        assert!(c.allones_prob(1).unwrap() > 0.0);
    }

    #[test]
    fn chain_rule_matches_allones() {
        for spec in [
            LawSpec::ShearerFactor { k: 2, p: 0.88 },
            LawSpec::Minimal { k: 1, p: 0.6 },
            LawSpec::Iid { p: 0.42 },
            LawSpec::ShearerTruncated { k: 1, len: 10, p: 0.8 },
            LawSpec::Cutup { k: 1, block: 4 },
        ] {
            let l = law(spec);
            // Stop before the all-ones event becomes impossible (a full
            // cutup block cannot be all ones).
            let n = match l.spec() {
                LawSpec::Cutup { block, .. } => block - 1,
                _ => 9,
            };
            let mut prod = 1.0;
            let mut history = Vec::new();
            for _ in 0..n {
                prod *= l.next_bit_prob(&history).unwrap();
                history.push(true);
            }
            let direct = l.allones_prob(n).unwrap();
            assert!(
                (prod - direct).abs() < 1e-12,
                "{:?}: {prod} vs {direct}",
                l.spec()
            );
        }
    }

    #[test]
    fn constrained_prob_consistency() {
        let l = law(LawSpec::ShearerFactor { k: 1, p: 0.75 });
        // P(1,0,1) on the 1-fuzz of a 3-line equals q = 0.25.
        let p101 = l
            .constrained_prob(&[Constraint::One, Constraint::Zero, Constraint::One])
            .unwrap();
        assert!((p101 - 0.25).abs() < 1e-13);
        // Impossible pattern: adjacent zeros.
        let p00 = l.constrained_prob(&[Constraint::Zero, Constraint::Zero]).unwrap();
        assert_eq!(p00, 0.0);
        // Free positions marginalize out.
        let free = l
            .constrained_prob(&[Constraint::Free, Constraint::One, Constraint::Free])
            .unwrap();
        assert!((free - l.marginal_p()).abs() < 1e-12);
    }

    #[test]
    fn cutup_block_boundary_zeros_are_independent() {
        let c = law(LawSpec::Cutup { k: 1, block: 2 });
        let q = 1.0 - c.marginal_p();
        // Adjacent zeros across the block boundary happen with probability q².
        let p = c
            .constrained_prob(&[
                Constraint::Free,
                Constraint::Zero,
                Constraint::Zero,
                Constraint::Free,
            ])
            .unwrap();
        assert!((p - q * q).abs() < 1e-10, "{p} vs {}", q * q);
        // Inside a block adjacent zeros are impossible.
        let inside = c.constrained_prob(&[Constraint::Zero, Constraint::Zero]).unwrap();
        assert_eq!(inside, 0.0);
    }

    #[test]
    fn samples_respect_zero_spacing() {
        let l = law(LawSpec::ShearerFactor { k: 2, p: 0.87 });
        for stream in 0..200 {
            let s = l.sample_prefix(60, 31, stream).unwrap();
            let zeros: Vec<usize> =
                (0..60).filter(|&i| !s.bits()[i]).collect();
            for w in zeros.windows(2) {
                assert!(w[1] - w[0] > 2, "zeros at distance <= k in {s}");
            }
        }
    }

    #[test]
    fn sample_marginal_statistics() {
        let l = law(LawSpec::ShearerFactor { k: 1, p: 0.75 });
        let n = 1_000_000u64;
        let mut ones = 0u64;
        for i in 0..n {
            if l.sample_prefix(1, 4242, i).unwrap().bits()[0] {
                ones += 1;
            }
        }
        let freq = ones as f64 / n as f64;
        let sigma = (0.75 * 0.25 / n as f64).sqrt();
        assert!((freq - 0.75).abs() < 3.0 * sigma, "freq {freq}");
    }

    #[test]
    fn sample_prefixes_agree() {
        for spec in [
            LawSpec::ShearerFactor { k: 2, p: 0.9 },
            LawSpec::Cutup { k: 1, block: 3 },
            LawSpec::Minimal { k: 1, p: 0.5 },
        ] {
            let l = law(spec);
            let long = l.sample_prefix(40, 7, 3).unwrap();
            let short = l.sample_prefix(25, 7, 3).unwrap();
            assert_eq!(&long.bits()[..25], short.bits());
        }
    }

    #[test]
    fn truncated_length_cap() {
        let l = law(LawSpec::ShearerTruncated { k: 1, len: 4, p: 0.8 });
        assert!(l.sample_prefix(4, 1, 0).is_ok());
        assert!(l.sample_prefix(5, 1, 0).is_err());
        assert!(l.allones_prob(5).is_err());
    }

    #[test]
    fn minimal_marginal_is_exact() {
        // P(Z_n = 1) = p̂^(k+1) = p at every position, checked via the pass.
        let l = law(LawSpec::Minimal { k: 2, p: 0.3 });
        for n in 0..6 {
            let mut cs = vec![Constraint::Free; n];
            cs.push(Constraint::One);
            let prob = l.constrained_prob(&cs).unwrap();
            assert!((prob - 0.3).abs() < 1e-12, "position {n}: {prob}");
        }
    }

    #[test]
    fn bits_beyond_distance_k_are_independent() {
        // Exact: P(Z_0 = 1, Z_{k+1} = 1) factorizes for every kind.
        for spec in [
            LawSpec::ShearerFactor { k: 1, p: 0.8 },
            LawSpec::ShearerFactor { k: 2, p: 0.9 },
            LawSpec::ShearerTruncated { k: 1, len: 8, p: 0.8 },
            LawSpec::Cutup { k: 1, block: 3 },
            LawSpec::Minimal { k: 2, p: 0.4 },
            LawSpec::Iid { p: 0.37 },
        ] {
            let l = law(spec);
            let k = l.k();
            let p = l.marginal_p();
            let mut cs = vec![Constraint::One];
            cs.extend(vec![Constraint::Free; k]);
            cs.push(Constraint::One);
            let joint = l.constrained_prob(&cs).unwrap();
            assert!(
                (joint - p * p).abs() < 1e-12,
                "{:?}: joint {joint} vs {}",
                l.spec(),
                p * p
            );
        }
        // Statistical: the sampler reproduces the product at one million
        // samples within 4 sigma.
        let l = law(LawSpec::ShearerFactor { k: 1, p: 0.8 });
        let n = 1_000_000u64;
        let mut both = 0u64;
        for r in 0..n {
            let s = l.sample_prefix(3, 77, r).unwrap();
            if s.bits()[0] && s.bits()[2] {
                both += 1;
            }
        }
        let expect = 0.64;
        let sigma = (expect * (1.0 - expect) / n as f64).sqrt();
        let freq = both as f64 / n as f64;
        assert!((freq - expect).abs() < 4.0 * sigma, "freq {freq}");
    }

    #[test]
    fn bitstring_roundtrip() {
        let s: BitString = "10110".parse().unwrap();
        assert_eq!(s.to_string(), "10110");
        assert!("10x1".parse::<BitString>().is_err());
    }
}
