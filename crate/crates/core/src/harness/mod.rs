//! Corpus generation and verification campaigns.

pub mod campaign;
pub mod corpus;
pub mod report;

pub use campaign::{run_campaign, run_instance, CampaignConfig, TheoremReport, Verdict};
pub use corpus::{generate_corpus, Corpus, CorpusMode, CorpusSpec};
pub use report::{CampaignInfo, CampaignReport, CampaignSummary, VerdictCounts};
