use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_claims, ClaimId, ClaimOutcome, Status};
use crate::error::{Error, Result};
use crate::graph::{canonical_key, serialize_graph6, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub graph6: String,
    /// Hex of the canonical key.
    pub key: String,
    pub outcomes: Vec<ClaimOutcome>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub graphs: usize,
    pub holds: usize,
    pub fails: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub reports: Vec<ClaimReport>,
    pub summary: SweepSummary,
}

impl SweepReport {
    /// `(graph6, outcome)` for every failing claim.
    pub fn failures(&self) -> Vec<(&str, &ClaimOutcome)> {
        self.reports
            .iter()
            .flat_map(|r| {
                r.outcomes
                    .iter()
                    .filter(|o| o.status == Status::Fails)
                    .map(|o| (r.graph6.as_str(), o))
            })
            .collect()
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn report(g: &Graph, claims: &[ClaimId]) -> Result<ClaimReport> {
    Ok(ClaimReport {
        graph6: serialize_graph6(g),
        key: hex(&canonical_key(g)),
        outcomes: check_claims(g, claims)?,
    })
}

/// Checks `claims` on every graph. Reports come back sorted by canonical
/// key whatever the worker count; `threads = None` or `Some(1)` runs on the
/// calling thread.
pub fn sweep(corpus: &[Graph], claims: &[ClaimId], threads: Option<usize>) -> Result<SweepReport> {
    let mut reports = match threads {
        None | Some(0) | Some(1) => corpus
            .iter()
            .map(|g| report(g, claims))
            .collect::<Result<Vec<_>>>()?,
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
            pool.install(|| {
                corpus
                    .par_iter()
                    .map(|g| report(g, claims))
                    .collect::<Result<Vec<_>>>()
            })?
        }
    };
    reports.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.graph6.cmp(&b.graph6)));
    let mut summary = SweepSummary {
        graphs: reports.len(),
        ..SweepSummary::default()
    };
    for o in reports.iter().flat_map(|r| &r.outcomes) {
        match o.status {
            Status::Holds => summary.holds += 1,
            Status::Fails => summary.fails += 1,
            Status::NotApplicable => summary.not_applicable += 1,
        }
    }
    Ok(SweepReport { reports, summary })
}
