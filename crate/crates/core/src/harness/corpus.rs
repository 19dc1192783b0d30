//! Deterministic graph corpora.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, Graph};

/// Largest order accepted by exhaustive mode.
pub const EXHAUSTIVE_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusMode {
    /// Every labeled graph of each order, in ascending graph6 order.
    Exhaustive,
    /// `G(n, 1/2)` samples from a seeded generator.
    Random,
    /// Disjoint unions of two connected graphs, one per isomorphism class.
    Union,
}

impl CorpusMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CorpusMode::Exhaustive => "exhaustive",
            CorpusMode::Random => "random",
            CorpusMode::Union => "union",
        }
    }
}

impl fmt::Display for CorpusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorpusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(CorpusMode::Exhaustive),
            "random" => Ok(CorpusMode::Random),
            "union" => Ok(CorpusMode::Union),
            _ => Err(Error::Unknown { what: "corpus mode", name: s.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub mode: CorpusMode,
    /// Largest order; for union mode, the largest total order.
    pub n_max: usize,
    /// Smallest order for exhaustive and random mode; defaults to `n_max`.
    pub n_min: Option<usize>,
    /// Sample size: required for random mode, optional subsampling in union mode.
    pub count: Option<usize>,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(mode: CorpusMode, n_max: usize) -> Self {
        CorpusSpec { mode, n_max, n_min: None, count: None, seed: 0 }
    }

    pub fn orders(mut self, n_min: usize) -> Self {
        self.n_min = Some(n_min);
        self
    }

    pub fn sample(mut self, count: usize, seed: u64) -> Self {
        self.count = Some(count);
        self.seed = seed;
        self
    }

    fn order_range(&self) -> Result<std::ops::RangeInclusive<usize>> {
        let lo = self.n_min.unwrap_or(self.n_max);
        if lo > self.n_max {
            return Err(Error::Internal(format!("n_min {lo} exceeds n_max {}", self.n_max)));
        }
        Ok(lo..=self.n_max)
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub spec: CorpusSpec,
    pub graphs: Vec<Graph>,
}

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let graphs = match spec.mode {
        CorpusMode::Exhaustive => {
            if spec.n_max > EXHAUSTIVE_MAX_ORDER {
                return Err(Error::TooLarge { order: spec.n_max, max: EXHAUSTIVE_MAX_ORDER });
            }
            spec.order_range()?.flat_map(all_labeled).collect()
        }
        CorpusMode::Random => {
            let count = spec
                .count
                .ok_or_else(|| Error::Internal("random mode needs a sample count".into()))?;
            random_graphs(spec.order_range()?, count, spec.seed)?
        }
        CorpusMode::Union => union_pairs(spec)?,
    };
    Ok(Corpus { spec: spec.clone(), graphs })
}

/// Vertex pairs `(i, j)`, `i < j`, in graph6 bit order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// The graph whose graph6 bit string, read as a binary number, is `code`.
fn from_code(n: usize, pairs: &[(usize, usize)], code: u64) -> Graph {
    let p = pairs.len();
    let edges = pairs.iter().enumerate().filter(|(k, _)| code >> (p - 1 - k) & 1 == 1).map(|(_, &e)| e);
    Graph::from_edges(n, edges).expect("pairs are valid")
}

/// All labeled graphs of order `n`, ascending in graph6 order.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let ps = pairs(n);
    (0u64..1 << ps.len()).map(move |code| from_code(n, &ps, code))
}

fn random_graphs(orders: std::ops::RangeInclusive<usize>, count: usize, seed: u64) -> Result<Vec<Graph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(orders.clone());
            let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            Graph::from_edges(n, edges)
        })
        .collect()
}

/// One connected graph per isomorphism class of order `n`, each the member
/// of its class with the smallest graph6 code, in ascending code order.
pub fn connected_classes(n: usize) -> Vec<Graph> {
    let ps = pairs(n);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut reps = BTreeSet::new();
    for g in all_labeled(n).filter(Graph::is_connected) {
        let canon = perms
            .iter()
            .map(|p| ps.iter().fold(0u64, |acc, &(i, j)| acc << 1 | g.has_edge(p[i], p[j]) as u64))
            .min()
            .expect("at least one permutation");
        reps.insert(canon);
    }
    reps.into_iter().map(|code| from_code(n, &ps, code)).collect()
}

fn union_pairs(spec: &CorpusSpec) -> Result<Vec<Graph>> {
    let classes: Vec<Graph> = (1..spec.n_max).flat_map(connected_classes).collect();
    let mut all = Vec::new();
    for (a, b) in (0..classes.len()).tuple_combinations().chain((0..classes.len()).map(|i| (i, i))).sorted() {
        if classes[a].order() + classes[b].order() <= spec.n_max {
            all.push(disjoint_union(&[classes[a].clone(), classes[b].clone()])?);
        }
    }
    Ok(match spec.count {
        Some(count) if count < all.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut picked = sample(&mut rng, all.len(), count).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|i| all[i].clone()).collect()
        }
        _ => all,
    })
}
