//! Campaign report assembly and JSON encoding.

use std::collections::BTreeMap;

use serde::Serialize;

use super::campaign::{TheoremReport, Verdict};
use super::corpus::CorpusSpec;
use crate::invariants::InvariantId;
use crate::stability::SearchPolicy;
use crate::theorem::TheoremTag;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub confirmed: usize,
    pub violated: usize,
    pub not_applicable: usize,
    pub budget_skipped: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Confirmed => self.confirmed += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
            Verdict::BudgetSkipped => self.budget_skipped += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.confirmed + self.violated + self.not_applicable + self.budget_skipped
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignSummary {
    /// Keyed by tag name, in tag order.
    pub per_tag: BTreeMap<TheoremTag, VerdictCounts>,
    pub instances: usize,
    /// Every violated report, in report order.
    pub findings: Vec<TheoremReport>,
    /// Only recorded on request, so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl CampaignSummary {
    pub fn from_reports(reports: &[TheoremReport]) -> Self {
        let mut per_tag: BTreeMap<TheoremTag, VerdictCounts> = BTreeMap::new();
        for r in reports {
            per_tag.entry(r.tag).or_default().add(r.verdict);
        }
        CampaignSummary {
            per_tag,
            instances: reports.len(),
            findings: reports.iter().filter(|r| r.verdict == Verdict::Violated).cloned().collect(),
            wall_time_ms: None,
        }
    }

    pub fn violations(&self) -> usize {
        self.findings.len()
    }

    pub fn counts(&self, tag: TheoremTag) -> VerdictCounts {
        self.per_tag.get(&tag).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignInfo {
    pub corpus: CorpusSpec,
    pub graphs: usize,
    pub invariants: Vec<InvariantId>,
    pub theorems: Vec<TheoremTag>,
    pub policy: SearchPolicy,
    pub family_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub campaign: CampaignInfo,
    pub reports: Vec<TheoremReport>,
    pub summary: CampaignSummary,
}

impl CampaignReport {
    pub fn new(campaign: CampaignInfo, reports: Vec<TheoremReport>) -> Self {
        let summary = CampaignSummary::from_reports(&reports);
        CampaignReport { schema_version: SCHEMA_VERSION, campaign, reports, summary }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
