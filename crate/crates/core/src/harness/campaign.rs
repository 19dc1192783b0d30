//! Checks formulas and bounds against brute force over a corpus.
//!
//! Each (graph, invariant, tag) triple yields exactly one [`TheoremReport`].
//! Hypothesis gates run first; the brute-force oracle is computed only for
//! triples where some formula or bound applies, and at most once per
//! (graph, invariant, side).

use std::cell::OnceCell;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundReport, Comparison};
use crate::codec::graph6_string;
use crate::decomposition::union_formula;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::invariants::{InvariantDescriptor, InvariantId};
use crate::stability::{edge_stability, vertex_stability, SearchPolicy, StabilityResult, SubsetRange};
use crate::theorem::{Side, TheoremTag};
use crate::value::Stability;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Violated,
    NotApplicable,
    BudgetSkipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub tag: TheoremTag,
    pub graph6: String,
    pub invariant: InvariantId,
    pub policy: SubsetRange,
    pub verdict: Verdict,
    pub hypotheses_satisfied: bool,
    /// Formula value (a stability number) or tightest bound (a value).
    pub formula: Option<Value>,
    pub oracle: Option<Stability>,
    /// Reproduction data: parameters, component data and the oracle's
    /// deletion set.
    pub witness: Value,
    pub case: Option<String>,
    /// Number of applicable parameter choices checked.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub invariants: Vec<InvariantId>,
    pub tags: Vec<TheoremTag>,
    pub policy: SearchPolicy,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
    /// Largest family size enumerated for the family lower bound.
    pub family_size: usize,
}

impl CampaignConfig {
    pub fn new(invariants: Vec<InvariantId>, tags: Vec<TheoremTag>) -> Self {
        CampaignConfig { invariants, tags, policy: SearchPolicy::default(), jobs: 0, family_size: 3 }
    }
}

/// Runs every (graph, invariant, tag) triple, in corpus × invariant × tag
/// order regardless of the worker count.
pub fn run_campaign(graphs: &[Graph], config: &CampaignConfig) -> Result<Vec<TheoremReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let per_graph: Vec<Result<Vec<TheoremReport>>> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let mut out = Vec::with_capacity(config.invariants.len() * config.tags.len());
                for &id in &config.invariants {
                    let inst = Instance::new(g, id.descriptor(), config);
                    for &tag in &config.tags {
                        out.push(inst.report(tag)?);
                    }
                }
                Ok(out)
            })
            .collect()
    });
    let mut reports = Vec::new();
    for r in per_graph {
        reports.extend(r?);
    }
    Ok(reports)
}

/// Replays one triple, as recorded in a report.
pub fn run_instance(g: &Graph, id: InvariantId, tag: TheoremTag, config: &CampaignConfig) -> Result<TheoremReport> {
    Instance::new(g, id.descriptor(), config).report(tag)
}

/// One graph and invariant, with lazily computed oracles.
struct Instance<'a> {
    g: &'a Graph,
    f: &'a InvariantDescriptor,
    config: &'a CampaignConfig,
    vertex: OnceCell<Result<StabilityResult<VertexSet>>>,
    edge: OnceCell<Result<StabilityResult<EdgeSet>>>,
}

/// Oracle value with its witness as JSON.
type Oracle = (Stability, Value);

impl<'a> Instance<'a> {
    fn new(g: &'a Graph, f: &'a InvariantDescriptor, config: &'a CampaignConfig) -> Self {
        Instance { g, f, config, vertex: OnceCell::new(), edge: OnceCell::new() }
    }

    fn policy(&self) -> &SearchPolicy {
        &self.config.policy
    }

    fn oracle(&self, side: Side) -> Result<Oracle> {
        fn unpack<W: Serialize>(r: &Result<StabilityResult<W>>) -> Result<Oracle> {
            match r {
                Ok(s) => Ok((s.value, json!(s.witness))),
                Err(e) => Err(e.clone()),
            }
        }
        match side {
            Side::Vertex => unpack(self.vertex.get_or_init(|| vertex_stability(self.g, self.f, self.policy()))),
            Side::Edge => unpack(self.edge.get_or_init(|| edge_stability(self.g, self.f, self.policy()))),
        }
    }

    fn blank(&self, tag: TheoremTag, verdict: Verdict) -> TheoremReport {
        TheoremReport {
            tag,
            graph6: graph6_string(self.g),
            invariant: self.f.id,
            policy: self.policy().vertex_subset_range,
            verdict,
            hypotheses_satisfied: false,
            formula: None,
            oracle: None,
            witness: Value::Null,
            case: None,
            checks: 0,
            reason: None,
        }
    }

    fn report(&self, tag: TheoremTag) -> Result<TheoremReport> {
        let outcome = match self.f.evaluate(self.g) {
            Err(e) if e.is_domain() => Err(e),
            Err(e) => return Err(e),
            Ok(_) if tag.is_union_formula() => self.union_report(tag),
            Ok(_) => self.bound_report(tag),
        };
        match outcome {
            Ok(r) => Ok(r),
            Err(e @ Error::Budget { .. }) => {
                let mut r = self.blank(tag, Verdict::BudgetSkipped);
                r.reason = Some(e.to_string());
                Ok(r)
            }
            Err(e) if e.is_domain() => {
                let mut r = self.blank(tag, Verdict::NotApplicable);
                r.reason = Some(e.to_string());
                Ok(r)
            }
            Err(e) => Err(e),
        }
    }

    fn union_report(&self, tag: TheoremTag) -> Result<TheoremReport> {
        let mut r = self.blank(tag, Verdict::NotApplicable);
        if self.g.is_null() {
            r.reason = Some("null graph has no components".into());
            return Ok(r);
        }
        let split = self.g.components();
        let u = union_formula(tag, &split, self.f, self.policy()).expect("union formula tag")?;
        r.case = u.case_taken.map(str::to_string);
        r.witness = json!({ "components": u.components, "unchecked_value": u.unchecked_value });
        let Some(value) = u.value else {
            r.reason = u.reason;
            return Ok(r);
        };
        let (oracle, oracle_witness) = self.oracle(tag.side())?;
        r.hypotheses_satisfied = true;
        r.formula = Some(json!(value));
        r.oracle = Some(oracle);
        r.witness["oracle_witness"] = oracle_witness;
        r.checks = 1;
        r.verdict = if value == oracle { Verdict::Confirmed } else { Verdict::Violated };
        Ok(r)
    }

    /// Every parameter choice for a bound or relation tag.
    fn candidates(&self, tag: TheoremTag) -> Result<Vec<BoundReport>> {
        let (g, f, p) = (self.g, self.f, self.policy());
        let n = g.order();
        let vertex_sets = || -> Result<Vec<VertexSet>> {
            Ok(bounds::subsets_in_order(n, p)?.into_iter().map(VertexSet::from_mask).collect())
        };
        let edge_sets = || -> Result<Vec<EdgeSet>> {
            Ok(bounds::subsets_in_order(g.size(), p)?.into_iter().map(|m| g.edges_of_mask(m)).collect())
        };
        let full = g.vertices();
        Ok(match tag {
            TheoremTag::Lemma1 => {
                vertex_sets()?.into_iter().filter(|&x| x != full).map(|x| bounds::ub_vs_lemma1(g, x, f, p)).collect::<Result<_>>()?
            }
            TheoremTag::Th1 => vertex_sets()?
                .into_iter()
                .filter(|h| !h.is_empty())
                .map(|h| bounds::ub_vs_induced_multiplicative(g, h, f, p))
                .collect::<Result<_>>()?,
            TheoremTag::Th2 => vec![bounds::ub_vs_min_degree(g, f)?],
            TheoremTag::Th3 => vertex_sets()?
                .into_iter()
                .filter(|&x| x != full)
                .map(|x| bounds::ub_vs_mining_split(g, x, f, p))
                .collect::<Result<_>>()?,
            TheoremTag::Lemma2 => edge_sets()?.iter().map(|y| bounds::ub_es_lemma2(g, y, f, p)).collect::<Result<_>>()?,
            TheoremTag::Lemma3 => edge_sets()?.iter().map(|h| bounds::ub_es_spanning(g, h, f, p)).collect::<Result<_>>()?,
            TheoremTag::Th7 => (0..n).map(|u| bounds::ub_es_vertex_incident(g, u, f)).collect::<Result<_>>()?,
            TheoremTag::Th8 => vec![bounds::ub_es_edge_pair(g, f)?],
            TheoremTag::Th9 => vertex_sets()?
                .into_iter()
                .filter(|h| !h.is_empty())
                .map(|h| bounds::ub_es_subgraph_multiplicative(g, h, f, p))
                .collect::<Result<_>>()?,
            TheoremTag::Th10 => vertex_sets()?
                .into_iter()
                .filter(|h| !h.is_empty())
                .map(|h| bounds::ub_es_subgraph_mining(g, h, f, p))
                .collect::<Result<_>>()?,
            TheoremTag::Th13 => {
                let probe = bounds::lb_es_family(g, &[g.edge_set()], f, p)?;
                if !probe.applicable && g.size() > 0 {
                    return Ok(vec![probe]);
                }
                let pool = bounds::family_pool(g, f, p)?;
                bounds::family_multisets(pool.len(), self.config.family_size)
                    .into_iter()
                    .map(|idx| {
                        let family: Vec<EdgeSet> = idx.iter().map(|&i| pool[i].clone()).collect();
                        bounds::lb_es_family(g, &family, f, p)
                    })
                    .collect::<Result<_>>()?
            }
            TheoremTag::Lemma4 => vec![bounds::relation_covering(g, f, p)?],
            TheoremTag::Prop1 | TheoremTag::Prop2 | TheoremTag::Prop3 | TheoremTag::Prop4 => {
                vec![bounds::relation_for_tag(tag, g, p)?]
            }
            _ => unreachable!("union formulas handled separately"),
        })
    }

    fn bound_report(&self, tag: TheoremTag) -> Result<TheoremReport> {
        let mut r = self.blank(tag, Verdict::NotApplicable);
        if let Some(wanted) = relation_subject(tag) {
            if self.f.id != wanted {
                r.reason = Some(format!("relation concerns {wanted}"));
                return Ok(r);
            }
        }
        let candidates = self.candidates(tag)?;
        let applicable: Vec<&BoundReport> = candidates.iter().filter(|b| b.applicable).collect();
        if applicable.is_empty() {
            r.reason = Some(match candidates.as_slice() {
                [] => "no parameter choices".to_string(),
                [only] => only.reason.clone().unwrap_or_default(),
                _ => "no parameter choice satisfies the hypotheses".to_string(),
            });
            return Ok(r);
        }
        let (oracle, oracle_witness) = self.oracle(tag.side())?;
        r.hypotheses_satisfied = true;
        r.oracle = Some(oracle);
        r.checks = applicable.len();

        let failing = applicable.iter().find(|b| b.holds(oracle) == Some(false));
        let shown = match failing {
            Some(b) => b,
            None => tightest(&applicable),
        };
        r.verdict = if failing.is_some() { Verdict::Violated } else { Verdict::Confirmed };
        r.formula = shown.bound.as_ref().map(|b| json!(b));
        r.case = Some(format!("{:?}", shown.comparison).to_lowercase());
        if shown.conjecture_counterexample {
            r.reason = shown.reason.clone();
        }
        r.witness = json!({ "params": shown.params, "oracle_witness": oracle_witness });
        Ok(r)
    }
}

/// The invariant a chromatic relation tag is about.
fn relation_subject(tag: TheoremTag) -> Option<InvariantId> {
    match tag {
        TheoremTag::Prop1 | TheoremTag::Prop2 => Some(InvariantId::TotalChromatic),
        TheoremTag::Prop3 | TheoremTag::Prop4 => Some(InvariantId::EdgeChromatic),
        _ => None,
    }
}

/// The smallest upper bound, the largest lower bound, or the first relation.
fn tightest<'b>(applicable: &[&'b BoundReport]) -> &'b BoundReport {
    let first = applicable[0];
    let pick = |better: fn(&BoundReport, &BoundReport) -> bool| {
        applicable.iter().copied().fold(first, |best, b| if better(b, best) { b } else { best })
    };
    match first.comparison {
        Comparison::AtMost => pick(|b, best| b.bound < best.bound),
        Comparison::AtLeast => pick(|b, best| b.bound > best.bound),
        Comparison::Equal => first,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::corpus::{generate_corpus, CorpusMode, CorpusSpec};

    fn run(graphs: &[Graph], ids: &[InvariantId], tags: &[TheoremTag]) -> Vec<TheoremReport> {
        run_campaign(graphs, &CampaignConfig::new(ids.to_vec(), tags.to_vec())).unwrap()
    }

    #[test]
    fn girth_edge_sum_has_no_violations_up_to_four_vertices() {
        let graphs = generate_corpus(&CorpusSpec::new(CorpusMode::Exhaustive, 4).orders(1)).unwrap().graphs;
        let reports = run(&graphs, &[InvariantId::Girth], &[TheoremTag::Th12]);
        assert_eq!(reports.len(), graphs.len());
        assert!(reports.iter().all(|r| r.verdict != Verdict::Violated));
        assert!(reports.iter().any(|r| r.verdict == Verdict::Confirmed));
    }

    #[test]
    fn lemma1_on_k2_checks_every_proper_subset() {
        let reports = run(&[Graph::complete(2)], &[InvariantId::IndependentSets], &[TheoremTag::Lemma1]);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Confirmed);
        assert_eq!(reports[0].checks, 3);
    }

    #[test]
    fn empty_corpus_gives_no_reports() {
        assert!(run(&[], &[InvariantId::Girth], &TheoremTag::ALL).is_empty());
    }

    #[test]
    fn reports_follow_graph_invariant_tag_order() {
        let graphs = [Graph::path(3), Graph::cycle(3)];
        let ids = [InvariantId::Girth, InvariantId::MaxDegree];
        let tags = [TheoremTag::Lemma2, TheoremTag::Th12];
        let reports = run(&graphs, &ids, &tags);
        let keys: Vec<(String, InvariantId, TheoremTag)> =
            reports.iter().map(|r| (r.graph6.clone(), r.invariant, r.tag)).collect();
        let mut expected = Vec::new();
        for g in &graphs {
            for &id in &ids {
                for &tag in &tags {
                    expected.push((graph6_string(g), id, tag));
                }
            }
        }
        assert_eq!(keys, expected);
    }

    #[test]
    fn budget_overruns_are_recorded() {
        let mut config = CampaignConfig::new(vec![InvariantId::Girth], vec![TheoremTag::Lemma2]);
        config.policy = config.policy.with_cap(1 << 2);
        let reports = run_campaign(&[Graph::complete(4)], &config).unwrap();
        assert_eq!(reports[0].verdict, Verdict::BudgetSkipped);
    }

    #[test]
    fn undefined_invariant_is_not_applicable() {
        let reports = run(&[Graph::empty(2)], &[InvariantId::ClassTotal], &[TheoremTag::Lemma1, TheoremTag::Th5]);
        assert!(reports.iter().all(|r| r.verdict == Verdict::NotApplicable));
    }
}
