//! Stability numbers of disjoint unions from per-component data.
//!
//! Each formula takes a presentation `G = H_1 ⊔ .. ⊔ H_k`, checks its
//! hypotheses, and assembles the value from brute-force stability numbers of
//! the components. The brute force on `G` itself is left to the caller, who
//! compares it against [`UnionFormulaResult::value`].
//!
//! Index sets follow one convention throughout: `I` depends on the formula
//! (components with value 0, or components attaining `f(G)`), and `J` is the
//! set of components whose own stability number is infinite. Empty minima
//! are infinite; empty sums are zero.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{ComponentSplit, Graph};
use crate::invariants::{check_monotone_on_instance, check_spanning_monotone_on_instance, InvariantDescriptor};
use crate::invariants::Monotonicity;
use crate::stability::{
    edge_stability, threshold_edge_stability, threshold_vertex_stability, vertex_stability, SearchPolicy,
};
use crate::theorem::{Side, TheoremTag};
use crate::value::{ExtValue, Stability};

/// What one component contributed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub order: usize,
    pub size: usize,
    pub value: ExtValue,
    /// `vs_f(H_i)` or `es_f(H_i)`, depending on the formula.
    pub stability: Stability,
    /// Deletions driving `f(H_i)` below `f(G)`, where the formula uses them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Stability>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionFormulaResult {
    pub tag: TheoremTag,
    /// The formula's value; present only when every hypothesis holds.
    pub value: Option<Stability>,
    /// The formula's value whenever the invariant has the right algebraic
    /// type, even if an instance-level hypothesis fails.
    pub unchecked_value: Option<Stability>,
    pub hypotheses_satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub case_taken: Option<&'static str>,
    pub components: Vec<ComponentRecord>,
}

impl UnionFormulaResult {
    fn rejected(tag: TheoremTag, reason: impl Into<String>) -> Self {
        UnionFormulaResult {
            tag,
            value: None,
            unchecked_value: None,
            hypotheses_satisfied: false,
            reason: Some(reason.into()),
            case_taken: None,
            components: Vec::new(),
        }
    }
}

/// Per-component values, computed once per formula.
struct Parts {
    parent: Graph,
    parent_value: ExtValue,
    records: Vec<ComponentRecord>,
}

impl Parts {
    fn collect(split: &ComponentSplit, f: &InvariantDescriptor, side: Side, policy: &SearchPolicy) -> Result<Self> {
        let parent = split.union()?;
        let parent_value = f.evaluate(&parent)?;
        let mut records = Vec::with_capacity(split.len());
        for h in &split.parts {
            let stability = match side {
                Side::Vertex => vertex_stability(h, f, policy)?.value,
                Side::Edge => edge_stability(h, f, policy)?.value,
            };
            records.push(ComponentRecord {
                order: h.order(),
                size: h.size(),
                value: f.evaluate(h)?,
                stability,
                threshold: None,
            });
        }
        Ok(Parts { parent, parent_value, records })
    }

    /// Fills in threshold stabilities below `f(G)` for the selected components.
    fn add_thresholds(
        &mut self,
        split: &ComponentSplit,
        f: &InvariantDescriptor,
        side: Side,
        policy: &SearchPolicy,
        wanted: impl Fn(usize) -> bool,
    ) -> Result<()> {
        for (i, h) in split.parts.iter().enumerate() {
            if wanted(i) {
                let t = match side {
                    Side::Vertex => threshold_vertex_stability(h, f, &self.parent_value, policy)?.value,
                    Side::Edge => threshold_edge_stability(h, f, &self.parent_value, policy)?.value,
                };
                self.records[i].threshold = Some(t);
            }
        }
        Ok(())
    }

    fn indices(&self, pred: impl Fn(&ComponentRecord) -> bool) -> Vec<bool> {
        self.records.iter().map(pred).collect()
    }

    fn attaining(&self) -> Vec<bool> {
        self.indices(|r| r.value == self.parent_value)
    }

    fn unstable(&self) -> Vec<bool> {
        self.indices(|r| r.stability.is_infinite())
    }

    fn threshold(&self, i: usize) -> Stability {
        self.records[i].threshold.expect("threshold computed for this component")
    }

    fn finish(
        self,
        tag: TheoremTag,
        gate: std::result::Result<(), String>,
        case: &'static str,
        value: Stability,
    ) -> UnionFormulaResult {
        let ok = gate.is_ok();
        UnionFormulaResult {
            tag,
            value: ok.then_some(value),
            unchecked_value: Some(value),
            hypotheses_satisfied: ok,
            reason: gate.err(),
            case_taken: Some(case),
            components: self.records,
        }
    }
}

fn monotone_gate(
    f: &InvariantDescriptor,
    parent: &Graph,
    side: Side,
    direction: Monotonicity,
    policy: &SearchPolicy,
) -> Result<std::result::Result<(), String>> {
    let holds = match side {
        Side::Vertex => check_monotone_on_instance(f, parent, direction, policy.max_subset_universe)?,
        Side::Edge => check_spanning_monotone_on_instance(f, parent, direction, policy.max_subset_universe)?,
    };
    let kind = match side {
        Side::Vertex => "induced",
        Side::Edge => "spanning",
    };
    Ok(if holds {
        Ok(())
    } else {
        Err(format!("{} is not {kind}-monotone {direction:?} on this graph", f.name()).to_lowercase())
    })
}

fn order_or_stability(r: &ComponentRecord) -> Stability {
    r.stability.min(Stability::Finite(r.order))
}

/// Multiplicative `f` with no component value in `{0, 1}`: the minimum over
/// components of `min(vs_f(H_j), |V(H_j)|)`.
pub fn vs_union_multiplicative_nonzero_nonone(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    let tag = TheoremTag::Th4;
    if !f.multiplicative {
        return Ok(UnionFormulaResult::rejected(tag, "invariant is not multiplicative"));
    }
    let parts = Parts::collect(split, f, Side::Vertex, policy)?;
    let gate = if parts.records.iter().any(|r| r.value.is_zero() || r.value.is_one()) {
        Err("a component has value 0 or 1".to_string())
    } else {
        Ok(())
    };
    let value = Stability::min_of(parts.records.iter().map(order_or_stability));
    Ok(parts.finish(tag, gate, "min", value))
}

/// Any multiplicative `f`, with `I` the zero-valued components. Cases are
/// tried in order: `J` is everything, `I` is nonempty, otherwise.
pub fn vs_union_multiplicative_general(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    let tag = TheoremTag::Th5;
    if !f.multiplicative {
        return Ok(UnionFormulaResult::rejected(tag, "invariant is not multiplicative"));
    }
    let parts = Parts::collect(split, f, Side::Vertex, policy)?;
    let zero = parts.indices(|r| r.value.is_zero());
    let j = parts.unstable();
    let (case, value) = if j.iter().all(|&b| b) {
        ("j_full", Stability::Infinite)
    } else if zero.iter().any(|&b| b) {
        let sum = parts.records.iter().zip(&zero).filter(|(_, &z)| z).map(|(r, _)| order_or_stability(r));
        ("i_nonempty", Stability::sum_of(sum))
    } else {
        let stable = parts.records.iter().zip(&j).filter(|(_, &u)| !u).map(|(r, _)| r.stability);
        let removable = parts
            .records
            .iter()
            .zip(&j)
            .filter(|(r, &u)| u && !r.value.is_one())
            .map(|(r, _)| Stability::Finite(r.order));
        ("otherwise", Stability::min_of(stable.chain(removable)))
    };
    Ok(parts.finish(tag, Ok(()), case, value))
}

/// Mining `f`, increasing on the instance, with `I` the components attaining
/// `f(G)`.
pub fn vs_union_mining_increasing(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    mining_increasing(TheoremTag::Th6, Side::Vertex, split, f, policy)
}

/// Edge analogue of [`vs_union_mining_increasing`].
pub fn es_union_mining_increasing(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    mining_increasing(TheoremTag::Th116, Side::Edge, split, f, policy)
}

fn mining_increasing(
    tag: TheoremTag,
    side: Side,
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    if !f.mining {
        return Ok(UnionFormulaResult::rejected(tag, "invariant is not mining"));
    }
    let mut parts = Parts::collect(split, f, side, policy)?;
    let gate = monotone_gate(f, &parts.parent, side, Monotonicity::Increasing, policy)?;
    let i = parts.attaining();
    let j = parts.unstable();
    parts.add_thresholds(split, f, side, policy, |t| !i[t])?;

    let k = parts.records.len();
    let outside: Vec<usize> = (0..k).filter(|&t| !i[t] && !j[t]).collect();
    let (case, value) = if j.iter().all(|&b| b) {
        ("j_full", Stability::Infinite)
    } else if i == j {
        let thresholds = (0..k).filter(|&t| !i[t]).map(|t| parts.threshold(t));
        let value = match side {
            // deleting every attaining component outright
            Side::Vertex => {
                let whole = Stability::sum_of((0..k).filter(|&t| i[t]).map(|t| Stability::Finite(parts.records[t].order)));
                Stability::min_of(thresholds.chain(std::iter::once(whole)))
            }
            Side::Edge => Stability::min_of(thresholds),
        };
        ("i_equals_j", value)
    } else {
        let own = (0..k).filter(|&t| i[t] && !j[t]).map(|t| parts.records[t].stability);
        let thresholds = outside.iter().map(|&t| parts.threshold(t));
        ("otherwise", Stability::min_of(own.chain(thresholds)))
    };
    Ok(parts.finish(tag, gate, case, value))
}

/// Mining `f`, decreasing on the instance: every attaining component must
/// move, by its own stability number or, if it has none, by deleting it.
pub fn vs_union_mining_decreasing(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    let tag = TheoremTag::Th118;
    if !f.mining {
        return Ok(UnionFormulaResult::rejected(tag, "invariant is not mining"));
    }
    let parts = Parts::collect(split, f, Side::Vertex, policy)?;
    let gate = monotone_gate(f, &parts.parent, Side::Vertex, Monotonicity::Decreasing, policy)?;
    let i = parts.attaining();
    let j = parts.unstable();
    let (case, value) = if j.iter().all(|&b| b) {
        ("j_full", Stability::Infinite)
    } else {
        let terms = parts.records.iter().enumerate().filter(|&(t, _)| i[t]).map(|(t, r)| {
            if j[t] {
                Stability::Finite(r.order)
            } else {
                r.stability
            }
        });
        ("sum", Stability::sum_of(terms))
    };
    Ok(parts.finish(tag, gate, case, value))
}

/// Multiplicative `f` with `f(G) != 0`: the cheapest component edge deletion.
pub fn es_union_multiplicative(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    let tag = TheoremTag::Th11;
    if !f.multiplicative {
        return Ok(UnionFormulaResult::rejected(tag, "invariant is not multiplicative"));
    }
    let parts = Parts::collect(split, f, Side::Edge, policy)?;
    let gate = if parts.parent_value.is_zero() { Err("f(G) is 0".to_string()) } else { Ok(()) };
    let value = Stability::min_of(parts.records.iter().map(|r| r.stability));
    let case = if value.is_infinite() { "i_empty" } else { "min" };
    Ok(parts.finish(tag, gate, case, value))
}

/// Mining `f`, decreasing on the instance: every attaining component must
/// lose edges, and one that cannot pins the value at infinity.
pub fn es_union_mining_decreasing(
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<UnionFormulaResult> {
    let tag = TheoremTag::Th12;
    if !f.mining {
        return Ok(UnionFormulaResult::rejected(tag, "invariant is not mining"));
    }
    let parts = Parts::collect(split, f, Side::Edge, policy)?;
    let gate = monotone_gate(f, &parts.parent, Side::Edge, Monotonicity::Decreasing, policy)?;
    let i = parts.attaining();
    let j = parts.unstable();
    let (case, value) = if i.iter().zip(&j).any(|(&a, &b)| a && b) {
        ("i_meets_j", Stability::Infinite)
    } else {
        let terms = parts.records.iter().zip(&i).filter(|(_, &a)| a).map(|(r, _)| r.stability);
        ("sum", Stability::sum_of(terms))
    };
    Ok(parts.finish(tag, gate, case, value))
}

/// Dispatches a union-formula tag; `None` for tags that are not formulas.
pub fn union_formula(
    tag: TheoremTag,
    split: &ComponentSplit,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Option<Result<UnionFormulaResult>> {
    let run = match tag {
        TheoremTag::Th4 => vs_union_multiplicative_nonzero_nonone,
        TheoremTag::Th5 => vs_union_multiplicative_general,
        TheoremTag::Th6 => vs_union_mining_increasing,
        TheoremTag::Th118 => vs_union_mining_decreasing,
        TheoremTag::Th11 => es_union_multiplicative,
        TheoremTag::Th12 => es_union_mining_decreasing,
        TheoremTag::Th116 => es_union_mining_increasing,
        _ => return None,
    };
    Some(run(split, f, policy))
}
