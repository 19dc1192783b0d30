//! Graph invariants together with the algebraic metadata the stability
//! formulas depend on.
//!
//! Multiplicative invariants satisfy `f(H1 ⊔ H2) = f(H1) f(H2)` and take the
//! value 1 on the null graph; mining invariants satisfy
//! `f(H1 ⊔ H2) = min(f(H1), f(H2))` and take `+inf` on the null graph.

pub mod coloring;
pub mod counting;
pub mod structure;

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{low_bits, Graph};
use crate::value::ExtValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvariantId {
    MinDegree,
    MaxDegree,
    Girth,
    MinComponentOrder,
    Chromatic,
    EdgeChromatic,
    TotalChromatic,
    ClassTotal,
    ClassEdge,
    IndependentSets,
    SpanningForests,
    Matchings,
    PerfectMatchings,
}

impl InvariantId {
    pub const ALL: [InvariantId; 13] = [
        InvariantId::MinDegree,
        InvariantId::MaxDegree,
        InvariantId::Girth,
        InvariantId::MinComponentOrder,
        InvariantId::Chromatic,
        InvariantId::EdgeChromatic,
        InvariantId::TotalChromatic,
        InvariantId::ClassTotal,
        InvariantId::ClassEdge,
        InvariantId::IndependentSets,
        InvariantId::SpanningForests,
        InvariantId::Matchings,
        InvariantId::PerfectMatchings,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InvariantId::MinDegree => "min_degree",
            InvariantId::MaxDegree => "max_degree",
            InvariantId::Girth => "girth",
            InvariantId::MinComponentOrder => "min_component_order",
            InvariantId::Chromatic => "chromatic",
            InvariantId::EdgeChromatic => "edge_chromatic",
            InvariantId::TotalChromatic => "total_chromatic",
            InvariantId::ClassTotal => "class_total",
            InvariantId::ClassEdge => "class_edge",
            InvariantId::IndependentSets => "independent_sets",
            InvariantId::SpanningForests => "spanning_forests",
            InvariantId::Matchings => "matchings",
            InvariantId::PerfectMatchings => "perfect_matchings",
        }
    }

    pub fn descriptor(self) -> &'static InvariantDescriptor {
        &REGISTRY[self as usize]
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvariantId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InvariantId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Unknown { what: "invariant", name: s.to_string() })
    }
}

impl Serialize for InvariantId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Direction of monotonicity.
///
/// Under vertex deletion, `Increasing` means `f(G) >= f(H)` for every induced
/// subgraph `H`; under edge deletion it means `f(G) >= f(H)` for every
/// spanning subgraph `H`. `Decreasing` reverses the inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    None,
}

impl Monotonicity {
    fn holds(self, whole: &ExtValue, part: &ExtValue) -> bool {
        match self {
            Monotonicity::Increasing => whole >= part,
            Monotonicity::Decreasing => whole <= part,
            Monotonicity::None => true,
        }
    }
}

pub type Evaluator = fn(&Graph) -> Result<ExtValue>;

pub struct InvariantDescriptor {
    pub id: InvariantId,
    pub evaluate: Evaluator,
    pub multiplicative: bool,
    pub mining: bool,
    /// Proven behavior under taking induced subgraphs.
    pub monotone_induced: Monotonicity,
    /// Proven behavior under taking spanning subgraphs.
    pub monotone_spanning: Monotonicity,
    /// `None` where the invariant is undefined.
    pub value_on_k1: Option<ExtValue>,
    pub value_on_null: Option<ExtValue>,
    pub can_be_zero: bool,
}

impl InvariantDescriptor {
    pub fn evaluate(&self, g: &Graph) -> Result<ExtValue> {
        (self.evaluate)(g)
    }

    pub fn name(&self) -> &'static str {
        self.id.as_str()
    }
}

impl fmt::Debug for InvariantDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvariantDescriptor")
            .field("id", &self.id)
            .field("multiplicative", &self.multiplicative)
            .field("mining", &self.mining)
            .field("monotone_induced", &self.monotone_induced)
            .field("monotone_spanning", &self.monotone_spanning)
            .finish_non_exhaustive()
    }
}

fn count(n: usize) -> ExtValue {
    ExtValue::from_u64(n as u64)
}

fn or_infinite(n: Option<usize>) -> ExtValue {
    n.map_or(ExtValue::Infinite, count)
}

pub fn eval_min_degree(g: &Graph) -> Result<ExtValue> {
    Ok(or_infinite(structure::min_degree(g)))
}

pub fn eval_max_degree(g: &Graph) -> Result<ExtValue> {
    Ok(count(structure::max_degree(g)))
}

pub fn eval_girth(g: &Graph) -> Result<ExtValue> {
    Ok(or_infinite(structure::girth(g)))
}

pub fn eval_min_component_order(g: &Graph) -> Result<ExtValue> {
    Ok(or_infinite(structure::min_component_order(g)))
}

pub fn eval_chromatic(g: &Graph) -> Result<ExtValue> {
    Ok(count(coloring::chromatic_number(g)))
}

pub fn eval_edge_chromatic(g: &Graph) -> Result<ExtValue> {
    coloring::edge_chromatic_number(g).map(count)
}

pub fn eval_total_chromatic(g: &Graph) -> Result<ExtValue> {
    Ok(count(coloring::total_chromatic_number(g)))
}

/// `χ''(G) - Δ(G)`, defined only when `G` has an edge.
pub fn eval_class(g: &Graph) -> Result<ExtValue> {
    if g.is_edgeless() {
        return Err(Error::Domain { invariant: "class_total", reason: "graph has no edges" });
    }
    Ok(count(coloring::total_chromatic_number(g) - structure::max_degree(g)))
}

/// `χ'(G) - Δ(G) + 1`, defined only when `G` has an edge.
pub fn eval_class_prime(g: &Graph) -> Result<ExtValue> {
    if g.is_edgeless() {
        return Err(Error::Domain { invariant: "class_edge", reason: "graph has no edges" });
    }
    Ok(count(coloring::edge_chromatic_number(g)? + 1 - structure::max_degree(g)))
}

pub fn count_independent_sets(g: &Graph) -> Result<ExtValue> {
    Ok(ExtValue::from_biguint(counting::independent_sets(g)))
}

pub fn count_spanning_forests(g: &Graph) -> Result<ExtValue> {
    Ok(ExtValue::from_biguint(counting::spanning_forests(g)))
}

pub fn count_matchings(g: &Graph) -> Result<ExtValue> {
    Ok(ExtValue::from_biguint(counting::matchings(g)))
}

pub fn count_perfect_matchings(g: &Graph) -> Result<ExtValue> {
    Ok(ExtValue::from_biguint(counting::perfect_matchings(g)))
}

static REGISTRY: LazyLock<Vec<InvariantDescriptor>> = LazyLock::new(|| {
    use Monotonicity::{Decreasing, Increasing, None as NotMonotone};
    let v = |n: u64| Some(ExtValue::from_u64(n));
    let inf = Some(ExtValue::Infinite);
    let d = |id, evaluate: Evaluator, multiplicative, mining, induced, spanning, k1, null, can_be_zero| {
        InvariantDescriptor {
            id,
            evaluate,
            multiplicative,
            mining,
            monotone_induced: induced,
            monotone_spanning: spanning,
            value_on_k1: k1,
            value_on_null: null,
            can_be_zero,
        }
    };
    // order must follow InvariantId discriminants
    vec![
        d(InvariantId::MinDegree, eval_min_degree, false, true, NotMonotone, Increasing, v(0), inf.clone(), true),
        d(InvariantId::MaxDegree, eval_max_degree, false, false, Increasing, Increasing, v(0), v(0), true),
        d(InvariantId::Girth, eval_girth, false, true, Decreasing, Decreasing, inf.clone(), inf.clone(), false),
        d(InvariantId::MinComponentOrder, eval_min_component_order, false, true, NotMonotone, Increasing, v(1), inf, false),
        d(InvariantId::Chromatic, eval_chromatic, false, false, Increasing, Increasing, v(1), v(0), true),
        d(InvariantId::EdgeChromatic, eval_edge_chromatic, false, false, Increasing, Increasing, v(0), v(0), true),
        d(InvariantId::TotalChromatic, eval_total_chromatic, false, false, Increasing, Increasing, v(1), v(0), true),
        d(InvariantId::ClassTotal, eval_class, false, false, NotMonotone, NotMonotone, None, None, false),
        d(InvariantId::ClassEdge, eval_class_prime, false, false, NotMonotone, NotMonotone, None, None, false),
        d(InvariantId::IndependentSets, count_independent_sets, true, false, Increasing, Decreasing, v(2), v(1), false),
        d(InvariantId::SpanningForests, count_spanning_forests, true, false, Increasing, Increasing, v(1), v(1), false),
        d(InvariantId::Matchings, count_matchings, true, false, Increasing, Increasing, v(1), v(1), false),
        d(InvariantId::PerfectMatchings, count_perfect_matchings, true, false, NotMonotone, Increasing, v(0), v(1), true),
    ]
});

/// All descriptors, in [`InvariantId::ALL`] order.
pub fn registry() -> &'static [InvariantDescriptor] {
    &REGISTRY
}

pub fn evaluate(inv: &InvariantDescriptor, g: &Graph) -> Result<ExtValue> {
    inv.evaluate(g)
}

fn subset_cap_check(universe: usize, cap: u64) -> Result<()> {
    if universe >= 64 || 1u64 << universe > cap {
        return Err(Error::Budget { universe, cap });
    }
    Ok(())
}

/// Whether `g` and every nonempty induced subgraph of `g` satisfy the
/// monotonicity inequality. Subgraphs where the invariant is undefined are
/// skipped.
pub fn check_monotone_on_instance(
    inv: &InvariantDescriptor,
    g: &Graph,
    direction: Monotonicity,
    cap: u64,
) -> Result<bool> {
    subset_cap_check(g.order(), cap)?;
    let whole = inv.evaluate(g)?;
    for keep in 1..=low_bits(g.order()) {
        match inv.evaluate(&g.induced_by_mask(keep)) {
            Ok(part) if !direction.holds(&whole, &part) => return Ok(false),
            Ok(_) => {}
            Err(e) if e.is_domain() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Spanning-subgraph analogue of [`check_monotone_on_instance`]: every edge
/// subset of `g`, the empty one included.
pub fn check_spanning_monotone_on_instance(
    inv: &InvariantDescriptor,
    g: &Graph,
    direction: Monotonicity,
    cap: u64,
) -> Result<bool> {
    subset_cap_check(g.size(), cap)?;
    let whole = inv.evaluate(g)?;
    for keep in 0..=low_bits(g.size()) {
        match inv.evaluate(&g.spanning_by_mask(keep)) {
            Ok(part) if !direction.holds(&whole, &part) => return Ok(false),
            Ok(_) => {}
            Err(e) if e.is_domain() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    const CAP: u64 = 1 << 20;

    fn eval(id: InvariantId, g: &Graph) -> ExtValue {
        id.descriptor().evaluate(g).unwrap()
    }

    #[test]
    fn registry_is_consistent() {
        for (i, d) in registry().iter().enumerate() {
            assert_eq!(d.id as usize, i);
            assert!(!(d.multiplicative && d.mining), "{}", d.name());
            if d.multiplicative {
                assert_eq!(d.value_on_null, Some(ExtValue::one()), "{}", d.name());
            }
            if d.mining {
                assert_eq!(d.value_on_null, Some(ExtValue::Infinite), "{}", d.name());
            }
            assert_eq!(d.id.as_str().parse::<InvariantId>().unwrap(), d.id);
        }
        assert!("nope".parse::<InvariantId>().is_err());
    }

    #[test]
    fn recorded_special_values_match_evaluation() {
        for d in registry() {
            match &d.value_on_k1 {
                Some(v) => assert_eq!(&d.evaluate(&Graph::empty(1)).unwrap(), v, "{}", d.name()),
                None => assert!(d.evaluate(&Graph::empty(1)).unwrap_err().is_domain()),
            }
            match &d.value_on_null {
                Some(v) => assert_eq!(&d.evaluate(&Graph::null()).unwrap(), v, "{}", d.name()),
                None => assert!(d.evaluate(&Graph::null()).unwrap_err().is_domain()),
            }
        }
    }

    #[test]
    fn evaluate_dispatch_examples() {
        use InvariantId::*;
        assert_eq!(eval(MinDegree, &Graph::cycle(4)), 2.into());
        assert_eq!(eval(Girth, &Graph::path(4)), ExtValue::Infinite);
        let k3k3 = disjoint_union(&[Graph::complete(3), Graph::complete(3)]).unwrap();
        assert_eq!(eval(IndependentSets, &k3k3), 16.into());
        assert_eq!(eval(MinComponentOrder, &Graph::complete(3)), 3.into());
        let k2k2 = disjoint_union(&[Graph::complete(2), Graph::complete(2)]).unwrap();
        assert_eq!(eval(MinComponentOrder, &k2k2), 2.into());
    }

    #[test]
    fn class_values() {
        use InvariantId::*;
        assert_eq!(eval(ClassTotal, &Graph::complete(2)), 2.into());
        assert_eq!(eval(ClassTotal, &Graph::cycle(6)), 1.into());
        assert!(ClassTotal.descriptor().evaluate(&Graph::empty(1)).unwrap_err().is_domain());
        assert_eq!(eval(ClassEdge, &Graph::cycle(4)), 1.into());
        assert_eq!(eval(ClassEdge, &Graph::complete(3)), 2.into());
        assert_eq!(eval(ClassEdge, &Graph::complete(2)), 1.into());
        assert!(ClassEdge.descriptor().evaluate(&Graph::null()).unwrap_err().is_domain());
    }

    #[test]
    fn instance_monotonicity_examples() {
        use InvariantId::*;
        let girth = Girth.descriptor();
        for g in [Graph::cycle(5), Graph::complete(4), Graph::path(3)] {
            assert!(check_monotone_on_instance(girth, &g, Monotonicity::Decreasing, CAP).unwrap());
        }
        let k1k3 = disjoint_union(&[Graph::empty(1), Graph::complete(3)]).unwrap();
        assert!(!check_monotone_on_instance(MinDegree.descriptor(), &k1k3, Monotonicity::Increasing, CAP).unwrap());
        for d in registry() {
            if d.value_on_k1.is_none() {
                continue;
            }
            for dir in [Monotonicity::Increasing, Monotonicity::Decreasing] {
                assert!(check_monotone_on_instance(d, &Graph::empty(1), dir, CAP).unwrap());
            }
        }
        let big = Graph::empty(21);
        assert!(check_monotone_on_instance(girth, &big, Monotonicity::Decreasing, CAP).unwrap_err().is_budget());
    }
}
