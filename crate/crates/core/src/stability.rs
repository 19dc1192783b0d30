//! Brute-force stability numbers.
//!
//! Every search enumerates candidate deletion sets by ascending size and,
//! within one size, in lexicographic order of the sorted labels (vertex
//! labels, or edge positions in the graph's lexicographic edge list). The
//! first hit is the reported witness, so witnesses are reproducible.

use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{low_bits, EdgeSet, Graph, VertexSet};
use crate::invariants::InvariantDescriptor;
use crate::value::{ExtValue, Stability};

/// Which vertex subsets count as deletions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetRange {
    /// Every `X ⊆ V(G)`, deleting all vertices included.
    All,
    /// Only `X ⊊ V(G)`.
    Proper,
}

impl SubsetRange {
    pub fn as_str(self) -> &'static str {
        match self {
            SubsetRange::All => "all",
            SubsetRange::Proper => "proper",
        }
    }
}

impl FromStr for SubsetRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(SubsetRange::All),
            "proper" => Ok(SubsetRange::Proper),
            _ => Err(Error::Unknown { what: "policy", name: s.to_string() }),
        }
    }
}

/// What an undefined value after deletion means.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OnDomainError {
    TreatAsChanged,
    TreatAsUnchanged,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SearchPolicy {
    pub vertex_subset_range: SubsetRange,
    /// Largest allowed `2^(universe size)`.
    pub max_subset_universe: u64,
    pub on_domain_error: OnDomainError,
}

pub const DEFAULT_MAX_SUBSET_UNIVERSE: u64 = 1 << 20;

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            vertex_subset_range: SubsetRange::Proper,
            max_subset_universe: DEFAULT_MAX_SUBSET_UNIVERSE,
            on_domain_error: OnDomainError::TreatAsChanged,
        }
    }
}

impl SearchPolicy {
    pub fn with_range(self, vertex_subset_range: SubsetRange) -> Self {
        SearchPolicy { vertex_subset_range, ..self }
    }

    pub fn with_cap(self, max_subset_universe: u64) -> Self {
        assert!(max_subset_universe > 0, "cap must be positive");
        SearchPolicy { max_subset_universe, ..self }
    }

    pub(crate) fn check_universe(&self, universe: usize) -> Result<()> {
        if universe >= 64 || 1u64 << universe > self.max_subset_universe {
            return Err(Error::Budget { universe, cap: self.max_subset_universe });
        }
        Ok(())
    }

    /// Maps an evaluation outcome to "counts as a hit", applying the
    /// domain-error convention.
    fn judge(&self, outcome: Result<ExtValue>, hit: impl FnOnce(&ExtValue) -> bool) -> Result<bool> {
        match outcome {
            Ok(v) => Ok(hit(&v)),
            Err(e) if e.is_domain() => Ok(self.on_domain_error == OnDomainError::TreatAsChanged),
            Err(e) => Err(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityResult<W> {
    pub value: Stability,
    /// A minimum deletion set, in the input graph's labels. Absent when the
    /// value is infinite.
    pub witness: Option<W>,
}

impl<W> StabilityResult<W> {
    fn infinite() -> Self {
        StabilityResult { value: Stability::Infinite, witness: None }
    }
}

/// First subset of `0..universe` (as a bitmask) accepted by `hit`, in
/// (size, lexicographic) order.
pub(crate) fn first_subset<F>(universe: usize, skip_full: bool, mut hit: F) -> Result<Option<u64>>
where
    F: FnMut(u64) -> Result<bool>,
{
    let top = if skip_full { universe.saturating_sub(1) } else { universe };
    if skip_full && universe == 0 {
        return Ok(None);
    }
    for size in 0..=top {
        for combo in (0..universe).combinations(size) {
            let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            if hit(mask)? {
                return Ok(Some(mask));
            }
        }
    }
    Ok(None)
}

fn vertex_search<F>(g: &Graph, policy: &SearchPolicy, mut hit: F) -> Result<StabilityResult<VertexSet>>
where
    F: FnMut(&Graph) -> Result<bool>,
{
    policy.check_universe(g.order())?;
    let skip_full = policy.vertex_subset_range == SubsetRange::Proper;
    let full = low_bits(g.order());
    let found = first_subset(g.order(), skip_full, |x| hit(&g.induced_by_mask(full & !x)))?;
    Ok(match found {
        Some(x) => StabilityResult {
            value: Stability::Finite(x.count_ones() as usize),
            witness: Some(VertexSet::from_mask(x)),
        },
        None => StabilityResult::infinite(),
    })
}

fn edge_search<F>(g: &Graph, policy: &SearchPolicy, mut hit: F) -> Result<StabilityResult<EdgeSet>>
where
    F: FnMut(&Graph) -> Result<bool>,
{
    policy.check_universe(g.size())?;
    let full = low_bits(g.size());
    let found = first_subset(g.size(), false, |y| hit(&g.spanning_by_mask(full & !y)))?;
    Ok(match found {
        Some(y) => StabilityResult {
            value: Stability::Finite(y.count_ones() as usize),
            witness: Some(g.edges_of_mask(y)),
        },
        None => StabilityResult::infinite(),
    })
}

/// `vs_f(G)`: fewest vertices whose deletion changes `f`.
pub fn vertex_stability(
    g: &Graph,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<StabilityResult<VertexSet>> {
    let base = f.evaluate(g)?;
    vertex_search(g, policy, |h| policy.judge(f.evaluate(h), |v| *v != base))
}

/// `es_f(G)`: fewest edges whose deletion changes `f`.
pub fn edge_stability(
    g: &Graph,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<StabilityResult<EdgeSet>> {
    let base = f.evaluate(g)?;
    edge_search(g, policy, |h| policy.judge(f.evaluate(h), |v| *v != base))
}

/// Fewest vertices whose deletion drives `f` strictly below `theta`.
pub fn threshold_vertex_stability(
    g: &Graph,
    f: &InvariantDescriptor,
    theta: &ExtValue,
    policy: &SearchPolicy,
) -> Result<StabilityResult<VertexSet>> {
    vertex_search(g, policy, |h| policy.judge(f.evaluate(h), |v| v < theta))
}

/// Fewest edges whose deletion drives `f` strictly below `theta`.
pub fn threshold_edge_stability(
    g: &Graph,
    f: &InvariantDescriptor,
    theta: &ExtValue,
    policy: &SearchPolicy,
) -> Result<StabilityResult<EdgeSet>> {
    edge_search(g, policy, |h| policy.judge(f.evaluate(h), |v| v < theta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Covering {
    /// `β'_f(G)`.
    pub size: usize,
    /// A minimum covering set.
    pub cover: EdgeSet,
    /// Number of nonempty spanning subgraphs with `f(H) = f(G)`.
    pub family_size: usize,
}

/// `β'_f(G)`: the fewest edges meeting every nonempty spanning subgraph `H`
/// with `f(H) = f(G)`. Zero when there is no such subgraph.
pub fn covering_number(g: &Graph, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<Covering> {
    let m = g.size();
    policy.check_universe(m)?;
    let base = f.evaluate(g)?;
    let mut family = Vec::new();
    for keep in 1..=low_bits(m) {
        // an undefined value is never equal to a defined one
        if matches!(f.evaluate(&g.spanning_by_mask(keep)), Ok(v) if v == base) {
            family.push(keep);
        }
    }
    let family_size = family.len();

    // hitting the inclusion-minimal members hits all of them
    family.sort_by_key(|s| (s.count_ones(), *s));
    let mut minimal: Vec<u64> = Vec::new();
    for s in family {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }

    let cover = first_subset(m, false, |y| Ok(minimal.iter().all(|&s| s & y != 0)))?
        .expect("the full edge set meets every nonempty member");
    Ok(Covering { size: cover.count_ones() as usize, cover: g.edges_of_mask(cover), family_size })
}
