//! Upper bounds, lower bounds and exact relations for stability numbers.
//!
//! Every calculator returns a [`BoundReport`] saying whether its hypotheses
//! hold on the instance and, if so, the bound. A report never contains the
//! stability number it bounds; compare with [`BoundReport::holds`].

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{low_bits, Edge, EdgeSet, Graph, VertexSet};
use crate::invariants::{structure, InvariantDescriptor, InvariantId, Monotonicity};
use crate::stability::{covering_number, edge_stability, first_subset, vertex_stability, SearchPolicy};
use crate::theorem::TheoremTag;
use crate::value::{ExtValue, Stability};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
    Relation,
}

/// How the bounded stability number must compare with the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub tag: TheoremTag,
    pub kind: BoundKind,
    pub comparison: Comparison,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Present iff applicable.
    pub bound: Option<ExtValue>,
    /// The auxiliary objects and intermediate values used.
    pub params: Value,
    /// Set when `χ''(G) > Δ(G) + 2` on the instance.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub conjecture_counterexample: bool,
}

impl BoundReport {
    fn new(tag: TheoremTag, kind: BoundKind) -> Self {
        let comparison = match kind {
            BoundKind::Upper => Comparison::AtMost,
            BoundKind::Lower => Comparison::AtLeast,
            BoundKind::Relation => Comparison::Equal,
        };
        BoundReport {
            tag,
            kind,
            comparison,
            applicable: false,
            reason: None,
            bound: None,
            params: json!({}),
            conjecture_counterexample: false,
        }
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.applicable = false;
        self.bound = None;
        self.reason = Some(reason.into());
        self
    }

    fn with_bound(mut self, bound: impl Into<ExtValue>) -> Self {
        self.applicable = true;
        self.bound = Some(bound.into());
        self
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params[key] = serde_json::to_value(value).expect("parameters serialize");
        self
    }

    /// Whether `actual` satisfies the bound; `None` when not applicable.
    pub fn holds(&self, actual: Stability) -> Option<bool> {
        if self.conjecture_counterexample {
            return Some(false);
        }
        let bound = self.bound.as_ref()?;
        let actual = ExtValue::from(actual);
        Some(match self.comparison {
            Comparison::AtMost => actual <= *bound,
            Comparison::AtLeast => actual >= *bound,
            Comparison::Equal => actual == *bound,
        })
    }
}

/// Splits undefined-invariant errors off as a skip reason.
fn defined<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) if e.is_domain() => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

macro_rules! or_skip {
    ($report:expr, $r:expr) => {
        match defined($r)? {
            Ok(v) => v,
            Err(reason) => return Ok($report.skip(reason)),
        }
    };
}

fn vs(g: &Graph, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<Stability> {
    Ok(vertex_stability(g, f, policy)?.value)
}

fn es(g: &Graph, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<Stability> {
    Ok(edge_stability(g, f, policy)?.value)
}

fn proper(g: &Graph, x: VertexSet) -> Result<bool> {
    if !x.is_subset(g.vertices()) {
        let label = x.difference(g.vertices()).iter().next().unwrap_or(0);
        return Err(Error::InvalidVertex { label, order: g.order() });
    }
    Ok(x != g.vertices())
}

/// `vs_f(G) <= |X| + vs_f(G - X)`.
pub fn ub_vs_lemma1(g: &Graph, x: VertexSet, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Lemma1, BoundKind::Upper).param("x", x);
    if !proper(g, x)? {
        return Ok(r.skip("X must be a proper subset of V(G)"));
    }
    or_skip!(r, f.evaluate(g));
    let rest = or_skip!(r, vs(&g.delete_vertices(x)?, f, policy));
    Ok(r.param("vs_rest", rest).with_bound(rest.plus(x.len())))
}

/// `vs_f(G) <= |N(V(H)) \ V(H)| + vs_f(H)` for `H` induced on `h_vertices`,
/// when `f` is multiplicative and never zero.
pub fn ub_vs_induced_multiplicative(
    g: &Graph,
    h_vertices: VertexSet,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th1, BoundKind::Upper).param("h", h_vertices);
    if !f.multiplicative || f.can_be_zero {
        return Ok(r.skip("needs a multiplicative invariant that is never 0"));
    }
    let h = g.induced_subgraph(h_vertices)?;
    let boundary = g.open_neighborhood(h_vertices)?.difference(h_vertices);
    let vs_h = vs(&h, f, policy)?;
    Ok(r.param("x", boundary).param("vs_h", vs_h).with_bound(vs_h.plus(boundary.len())))
}

/// `vs_f(G) <= δ(G) + 1` for non-complete `G`, when `f` is multiplicative,
/// never zero, and `f(K1) != 1`.
pub fn ub_vs_min_degree(g: &Graph, f: &InvariantDescriptor) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th2, BoundKind::Upper);
    if !f.multiplicative || f.can_be_zero || f.value_on_k1.as_ref().is_none_or(ExtValue::is_one) {
        return Ok(r.skip("needs a multiplicative invariant, never 0, with f(K1) != 1"));
    }
    if g.is_null() || g.is_complete() {
        return Ok(r.skip("graph is complete"));
    }
    let delta = structure::min_degree(g).expect("nonnull graph");
    Ok(r.param("min_degree", delta).with_bound(Stability::Finite(delta + 1)))
}

/// For mining `f`: if `G - X` splits into `H ⊔ H'` with `f(H) < f(H')`, then
/// `vs_f(G) <= vs_f(H) + |X|`. `H` gathers every component of `G - X` of
/// least value.
pub fn ub_vs_mining_split(g: &Graph, x: VertexSet, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th3, BoundKind::Upper).param("x", x);
    if !f.mining {
        return Ok(r.skip("invariant is not mining"));
    }
    if !proper(g, x)? {
        return Ok(r.skip("X must be a proper subset of V(G)"));
    }
    let rest_mask = g.vertices().difference(x).mask();
    let rest = g.induced_by_mask(rest_mask);
    // component masks of `rest`, lifted back to labels of `g`
    let lift: Vec<usize> = VertexSet::from_mask(rest_mask).iter().collect();
    let comps: Vec<(VertexSet, ExtValue)> = rest
        .component_masks()
        .into_iter()
        .map(|m| {
            let lifted = VertexSet::from_mask(m).iter().map(|v| lift[v]).collect::<VertexSet>();
            let value = f.evaluate(&rest.induced_by_mask(m));
            value.map(|v| (lifted, v))
        })
        .collect::<Result<_>>()?;
    let Some(least) = comps.iter().map(|(_, v)| v).min().cloned() else {
        return Ok(r.skip("G - X is null"));
    };
    let h: VertexSet = comps.iter().filter(|(_, v)| *v == least).flat_map(|(s, _)| s.iter()).collect();
    if comps.iter().all(|(_, v)| *v == least) {
        return Ok(r.skip("no split of G - X with f(H) < f(H')"));
    }
    let vs_h = vs(&g.induced_subgraph(h)?, f, policy)?;
    Ok(r.param("h", h).param("vs_h", vs_h).with_bound(vs_h.plus(x.len())))
}

/// `es_f(G) <= |Y| + es_f(G - Y)`.
pub fn ub_es_lemma2(g: &Graph, y: &EdgeSet, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Lemma2, BoundKind::Upper).param("y", y);
    let rest = g.delete_edges(y)?;
    or_skip!(r, f.evaluate(g));
    let es_rest = or_skip!(r, es(&rest, f, policy));
    Ok(r.param("es_rest", es_rest).with_bound(es_rest.plus(y.len())))
}

/// `es_f(G) <= 1 + |E(G)| - |E(H)|` for a spanning subgraph `H` with
/// `es_f(H) = 1`.
pub fn ub_es_spanning(g: &Graph, h_edges: &EdgeSet, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Lemma3, BoundKind::Upper).param("h", h_edges);
    let h = g.spanning_subgraph(h_edges)?;
    or_skip!(r, f.evaluate(g));
    let es_h = or_skip!(r, es(&h, f, policy));
    if es_h != Stability::Finite(1) {
        return Ok(r.param("es_h", es_h).skip("es_f(H) != 1"));
    }
    Ok(r.with_bound(Stability::Finite(1 + g.size() - h_edges.len())))
}

/// `es_f(G) <= d(u)` for multiplicative `f` when deleting `u` moves `f` in a
/// direction compatible with `f(K1)`.
pub fn ub_es_vertex_incident(g: &Graph, u: usize, f: &InvariantDescriptor) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th7, BoundKind::Upper).param("u", u);
    if u >= g.order() {
        return Err(Error::InvalidVertex { label: u, order: g.order() });
    }
    if !f.multiplicative {
        return Ok(r.skip("invariant is not multiplicative"));
    }
    let Some(k1) = f.value_on_k1.as_ref() else {
        return Ok(r.skip("f(K1) undefined"));
    };
    let whole = f.evaluate(g)?;
    let minus = f.evaluate(&g.delete_vertices([u].into_iter().collect())?)?;
    let one = ExtValue::one();
    let ok = (minus > whole && *k1 >= one)
        || (minus == whole && !whole.is_zero() && *k1 != one)
        || (minus < whole && *k1 <= one);
    if !ok {
        return Ok(r.skip("no case of the vertex condition holds"));
    }
    Ok(r.with_bound(Stability::Finite(g.degree(u))))
}

/// `es_f(G) <= min { d(x) + d(y) - 1 : xy ∈ E(G), f(G - {x, y}) != 0 }` for
/// multiplicative `f` with `f(K2) != f(2K1)`.
pub fn ub_es_edge_pair(g: &Graph, f: &InvariantDescriptor) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th8, BoundKind::Upper);
    if !f.multiplicative {
        return Ok(r.skip("invariant is not multiplicative"));
    }
    if f.evaluate(&Graph::complete(2))? == f.evaluate(&Graph::empty(2))? {
        return Ok(r.skip("f(K2) = f(2K1)"));
    }
    let mut best: Option<(usize, Edge)> = None;
    for &e in g.edges() {
        let rest = g.delete_vertices([e.u(), e.v()].into_iter().collect())?;
        if f.evaluate(&rest)?.is_zero() {
            continue;
        }
        let d = g.degree(e.u()) + g.degree(e.v()) - 1;
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, e));
        }
    }
    match best {
        Some((d, e)) => Ok(r.param("edge", e).with_bound(Stability::Finite(d))),
        None => Ok(r.skip("no edge xy with f(G - {x, y}) != 0")),
    }
}

fn subgraph_bound(
    r: BoundReport,
    g: &Graph,
    h_vertices: VertexSet,
    h: &Graph,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<BoundReport> {
    let es_h = es(h, f, policy)?;
    let boundary = g.boundary_edges(h_vertices)?.len();
    Ok(r.param("es_h", es_h).param("boundary", boundary).with_bound(es_h.plus(boundary)))
}

/// `es_f(G) <= es_f(H) + |E(V(H), V(G) \ V(H))|` for `H` induced on
/// `h_vertices`, when `f` is multiplicative and `f(G - V(H)) != 0`.
pub fn ub_es_subgraph_multiplicative(
    g: &Graph,
    h_vertices: VertexSet,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th9, BoundKind::Upper).param("h", h_vertices);
    if !f.multiplicative {
        return Ok(r.skip("invariant is not multiplicative"));
    }
    let h = g.induced_subgraph(h_vertices)?;
    if f.evaluate(&g.delete_vertices(h_vertices)?)?.is_zero() {
        return Ok(r.skip("f(G - V(H)) = 0"));
    }
    subgraph_bound(r, g, h_vertices, &h, f, policy)
}

/// The same bound for mining `f` when `f(H) < f(G - V(H))`.
pub fn ub_es_subgraph_mining(
    g: &Graph,
    h_vertices: VertexSet,
    f: &InvariantDescriptor,
    policy: &SearchPolicy,
) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th10, BoundKind::Upper).param("h", h_vertices);
    if !f.mining {
        return Ok(r.skip("invariant is not mining"));
    }
    let h = g.induced_subgraph(h_vertices)?;
    if f.evaluate(&h)? >= f.evaluate(&g.delete_vertices(h_vertices)?)? {
        return Ok(r.skip("f(H) >= f(G - V(H))"));
    }
    subgraph_bound(r, g, h_vertices, &h, f, policy)
}

/// Lower bounds from a family of spanning subgraphs `H_1..H_t`, each with
/// `f(H_i) = f(G)`. With `l` the largest number of members sharing an edge
/// and `m` the number of edges in two or more members,
/// `es_f(G) >= Σ es_f(H_i) / l` and `es_f(G) >= Σ es_f(H_i) - m(l - 1)`.
/// The reported bound is the larger of the two, kept exact.
pub fn lb_es_family(g: &Graph, family: &[EdgeSet], f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<BoundReport> {
    let r = BoundReport::new(TheoremTag::Th13, BoundKind::Lower).param("family", family);
    if f.monotone_spanning == Monotonicity::None {
        return Ok(r.skip("invariant is not monotone under spanning subgraphs"));
    }
    if family.is_empty() {
        return Ok(r.skip("family is empty"));
    }
    let whole = or_skip!(r, f.evaluate(g));
    let mut members = Vec::with_capacity(family.len());
    for y in family {
        if y.is_empty() {
            return Ok(r.skip("family has an empty member"));
        }
        members.push(g.edge_mask(y)?);
    }

    let mut sum = Stability::Finite(0);
    let mut per_member = Vec::with_capacity(family.len());
    for &mask in &members {
        let h = g.spanning_by_mask(mask);
        if f.evaluate(&h)? != whole {
            return Ok(r.skip("a member has a different value"));
        }
        let e = es(&h, f, policy)?;
        per_member.push(e);
        sum = sum.add(e);
    }

    let counts: Vec<usize> = (0..g.size()).map(|i| members.iter().filter(|&&s| s >> i & 1 == 1).count()).collect();
    let l = counts.iter().copied().max().unwrap_or(0);
    let m = counts.iter().filter(|&&c| c >= 2).count();
    let r = r.param("es_members", &per_member).param("t", family.len()).param("m", m).param("l", l);

    let Some(total) = sum.finite() else {
        return Ok(r.param("by_ratio", ExtValue::Infinite).param("by_overlap", ExtValue::Infinite).with_bound(ExtValue::Infinite));
    };
    let by_ratio = BigRational::new(BigInt::from(total), BigInt::from(l));
    let by_overlap = total as i64 - (m * (l - 1)) as i64;
    let floor = BigRational::from_integer(BigInt::from(by_overlap.max(0)));
    let bound = ExtValue::Finite(by_ratio.clone().max(floor));
    Ok(r.param("by_ratio", ExtValue::Finite(by_ratio)).param("by_overlap", by_overlap).with_bound(bound))
}

/// Inclusion-minimal edge sets of spanning subgraphs with `f(H) = f(G)`,
/// plus `E(G)` itself, in (size, lexicographic) order.
pub fn family_pool(g: &Graph, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<Vec<EdgeSet>> {
    policy.check_universe(g.size())?;
    let whole = f.evaluate(g)?;
    let mut attaining: Vec<u64> = (1..=low_bits(g.size()))
        .filter(|&keep| matches!(f.evaluate(&g.spanning_by_mask(keep)), Ok(v) if v == whole))
        .collect();
    attaining.sort_by_key(|s| (s.count_ones(), *s));
    let mut minimal: Vec<u64> = Vec::new();
    for s in attaining {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let full = low_bits(g.size());
    if g.size() > 0 && !minimal.contains(&full) {
        minimal.push(full);
    }
    Ok(minimal.into_iter().map(|s| g.edges_of_mask(s)).collect())
}

/// `es_f(G) = β'_f(G)` whenever `es_f(G)` is finite, for `f` monotone under
/// spanning subgraphs.
pub fn relation_covering(g: &Graph, f: &InvariantDescriptor, policy: &SearchPolicy) -> Result<BoundReport> {
    let mut r = BoundReport::new(TheoremTag::Lemma4, BoundKind::Relation);
    if f.monotone_spanning == Monotonicity::None {
        return Ok(r.skip("invariant is not monotone under spanning subgraphs"));
    }
    let e = or_skip!(r, es(g, f, policy));
    if e.is_infinite() {
        return Ok(r.skip("es_f(G) is infinite"));
    }
    let c = covering_number(g, f, policy)?;
    r = r.param("es", e).param("cover", &c.cover).param("family_size", c.family_size);
    Ok(r.with_bound(Stability::Finite(c.size)))
}

/// Stability numbers used by the chromatic relations.
fn chromatic_relation(
    g: &Graph,
    policy: &SearchPolicy,
    chi: InvariantId,
    class: InvariantId,
    tags: [TheoremTag; 2],
) -> Result<BoundReport> {
    let r = BoundReport::new(tags[0], BoundKind::Lower);
    if g.is_edgeless() {
        return Ok(r.skip("graph has no edges"));
    }
    let delta = structure::max_degree(g);
    let chi_value = chi.descriptor().evaluate(g)?;
    let excess = chi_value
        .as_rational()
        .and_then(|q| q.to_integer().try_into().ok())
        .map(|c: usize| c - delta)
        .expect("chromatic numbers are finite integers");
    // total colorings use at least Δ+1 colors, edge colorings at least Δ
    let low = if chi == InvariantId::TotalChromatic { 1 } else { 0 };
    let vs_delta = vs(g, InvariantId::MaxDegree.descriptor(), policy)?;
    let vs_chi = vs(g, chi.descriptor(), policy)?;
    let base = |tag| {
        BoundReport::new(tag, BoundKind::Lower)
            .param("chi", &chi_value)
            .param("max_degree", delta)
            .param("vs_max_degree", vs_delta)
            .param("vs_chi", vs_chi)
    };
    if excess == low {
        return Ok(base(tags[0]).with_bound(vs_delta));
    }
    let vs_class = vs(g, class.descriptor(), policy)?;
    let mut r = base(tags[1]).param("vs_class", vs_class);
    r.kind = BoundKind::Relation;
    r.comparison = Comparison::Equal;
    if excess > low + 1 {
        r.applicable = true;
        r.conjecture_counterexample = true;
        r.reason = Some("color count exceeds the conjectured maximum".into());
        return Ok(r);
    }
    Ok(r.with_bound(vs_delta.min(vs_class)))
}

/// `vs_{χ''} >= vs_Δ` when `χ'' = Δ + 1`, and `vs_{χ''} = min(vs_Δ, vs_class)`
/// when `χ'' = Δ + 2`. Reports `χ'' > Δ + 2` as a counterexample.
pub fn relation_total_chromatic(g: &Graph, policy: &SearchPolicy) -> Result<BoundReport> {
    chromatic_relation(g, policy, InvariantId::TotalChromatic, InvariantId::ClassTotal, [TheoremTag::Prop1, TheoremTag::Prop2])
}

/// `vs_{χ'} >= vs_Δ` when `χ' = Δ`, and `vs_{χ'} = min(vs_Δ, vs_{class'})`
/// when `χ' = Δ + 1`.
pub fn relation_edge_chromatic(g: &Graph, policy: &SearchPolicy) -> Result<BoundReport> {
    chromatic_relation(g, policy, InvariantId::EdgeChromatic, InvariantId::ClassEdge, [TheoremTag::Prop3, TheoremTag::Prop4])
}

/// The relation report for one proposition tag; not applicable when the
/// graph falls under the sibling proposition.
pub fn relation_for_tag(tag: TheoremTag, g: &Graph, policy: &SearchPolicy) -> Result<BoundReport> {
    let r = match tag {
        TheoremTag::Prop1 | TheoremTag::Prop2 => relation_total_chromatic(g, policy)?,
        TheoremTag::Prop3 | TheoremTag::Prop4 => relation_edge_chromatic(g, policy)?,
        _ => return Err(Error::Internal(format!("{tag} is not a chromatic relation"))),
    };
    if r.tag == tag || !r.applicable {
        let mut r = r;
        r.tag = tag;
        return Ok(r);
    }
    let mut other = BoundReport::new(tag, r.kind).skip(format!("instance falls under {}", r.tag));
    other.params = r.params;
    Ok(other)
}

/// Families of up to `t_max` members drawn with repetition from `pool`, as
/// index multisets in lexicographic order.
pub fn family_multisets(pool_len: usize, t_max: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=t_max).flat_map(|t| (0..pool_len).combinations_with_replacement(t)).collect()
}

/// Subsets of a `universe`-element set in (size, lexicographic) order, as
/// bitmasks; used to enumerate bound parameters.
pub fn subsets_in_order(universe: usize, policy: &SearchPolicy) -> Result<Vec<u64>> {
    policy.check_universe(universe)?;
    let mut out = Vec::with_capacity(1 << universe);
    first_subset(universe, false, |m| {
        out.push(m);
        Ok(false)
    })?;
    Ok(out)
}
