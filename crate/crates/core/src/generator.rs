//! Seeded random instances: uniform set sizes and quotas, interval bounds
//! drawn from a fixed range, and randomly sampled forbidden pairs.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::det::components;
use crate::error::{Error, Result};
use crate::model::{CostInterval, Instance, ItemRef, ItemSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `k_pairs` distinct pairs across sets.
    Normal,
    /// `k_pairs` seed pairs, then every connected group of conflicting items
    /// is made pairwise forbidden.
    Transitive,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" => Ok(Mode::Normal),
            "transitive" => Ok(Mode::Transitive),
            _ => Err(Error::Params(format!("unknown mode {s:?}"))),
        }
    }
}

fn default_cost_range() -> (i64, i64) {
    (1, 100)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub m: usize,
    pub r: usize,
    pub p: usize,
    #[serde(rename = "k")]
    pub k_pairs: usize,
    pub mode: Mode,
    #[serde(default = "default_cost_range")]
    pub cost_range: (i64, i64),
    #[serde(default)]
    pub rng_seed: u64,
}

impl GenParams {
    pub fn new(m: usize, r: usize, p: usize, k_pairs: usize, mode: Mode, rng_seed: u64) -> Self {
        Self { m, r, p, k_pairs, mode, cost_range: default_cost_range(), rng_seed }
    }

    /// Pairs of items in different sets.
    pub fn cross_pairs(&self) -> u64 {
        let m = self.m as u64;
        let r = self.r as u64;
        m * m.saturating_sub(1) / 2 * r * r
    }

    pub fn check(&self) -> Result<()> {
        if self.m == 0 || self.r == 0 || self.p == 0 || self.p > self.r {
            return Err(Error::Params(format!("need m, r >= 1 and 1 <= p <= r, got m={} r={} p={}", self.m, self.r, self.p)));
        }
        let (lo, hi) = self.cost_range;
        if lo < 0 || lo > hi {
            return Err(Error::Params(format!("bad cost range [{lo},{hi}]")));
        }
        if self.k_pairs as u64 > self.cross_pairs() {
            return Err(Error::Params(format!("k = {} exceeds the {} available cross-set pairs", self.k_pairs, self.cross_pairs())));
        }
        Ok(())
    }
}

/// Seed of the `index`-th instance derived from a row seed (splitmix64).
pub fn instance_seed(row_seed: u64, index: u64) -> u64 {
    let mut z = row_seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Decodes the `index`-th cross-set pair in lexicographic order of flat
/// indices.
fn cross_pair(params: &GenParams, index: u64) -> (usize, usize) {
    let r = params.r as u64;
    let n = params.m as u64 * r;
    let mut rest = index;
    for a in 0..n {
        let after = n - (a / r + 1) * r;
        if rest < after {
            return (a as usize, (n - after + rest) as usize);
        }
        rest -= after;
    }
    unreachable!("pair index out of range")
}

pub fn generate_instance(params: &GenParams) -> Result<Instance> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let (lo, hi) = params.cost_range;
    let sets: Vec<ItemSet> = (0..params.m)
        .map(|_| {
            let items = (0..params.r)
                .map(|_| {
                    let a = rng.gen_range(lo..=hi);
                    let b = rng.gen_range(lo..=hi);
                    CostInterval::new(a.min(b), a.max(b))
                })
                .collect();
            ItemSet::new(params.p, items)
        })
        .collect();

    let total = params.cross_pairs();
    let picked: Vec<(usize, usize)> = if params.k_pairs == 0 {
        Vec::new()
    } else if total <= usize::MAX as u64 {
        sample(&mut rng, total as usize, params.k_pairs).into_iter().map(|i| cross_pair(params, i as u64)).collect()
    } else {
        return Err(Error::Params("instance too large".into()));
    };
    let pairs = match params.mode {
        Mode::Normal => picked,
        Mode::Transitive => clique_completion(params.m * params.r, &picked),
    };
    let flat = |j: usize| ItemRef::new(j / params.r, j % params.r);
    Instance::new(sets, pairs.into_iter().map(|(a, b)| (flat(a), flat(b))))
}

/// All pairs inside each connected component of the graph on `0..n` given by
/// `edges`, same-set pairs included.
fn clique_completion(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for g in components(n, edges.iter().copied()).iter().filter(|g| g.len() > 1) {
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                out.push((a, b));
            }
        }
    }
    out
}
