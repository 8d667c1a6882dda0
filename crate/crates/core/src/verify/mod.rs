//! The verification suite: every identity the library is expected to
//! reproduce, run as independent items and reported as pass, fail or
//! discrepancy.

mod items;
mod properties;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use items::{
    BETA_GAMMA_TOL, BETA_QUAD_TOL, HIGH_PREC, HIGH_PREC_TOL_LOG2, MZV_REL_TOL, SERIES_WEIGHT,
};
pub use properties::{PROPERTY_SAMPLES, PROPERTY_WEIGHT, RATEXPR_SIZE, RATEXPR_WEIGHT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The computed value differs from a printed one while the library's
    /// own computation paths agree.
    Discrepancy,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        })
    }
}

/// One line of the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub identity_id: String,
    pub paper_ref: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub prec_bits: usize,
    pub err: f64,
    pub max_weight: usize,
    pub jobs: usize,
    /// Glob patterns on identity ids; empty means everything.
    pub filter: Vec<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            prec_bits: 256,
            err: 1e-10,
            max_weight: 8,
            jobs: 1,
            filter: Vec::new(),
        }
    }
}

pub(crate) struct Outcome {
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub bound: String,
    pub note: Option<String>,
}

impl Outcome {
    pub fn new(
        ok: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        bound: impl Into<String>,
    ) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            lhs: lhs.into(),
            rhs: rhs.into(),
            bound: bound.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn error(e: Error) -> Self {
        Outcome::new(false, format!("error: {e}"), "", "")
    }
}

type Runner = Box<dyn Fn(&VerifyConfig) -> Outcome + Send + Sync>;

/// A verification item.
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub paper_ref: &'static str,
    run: Runner,
}

impl Check {
    pub(crate) fn new(
        id: impl Into<String>,
        criterion: u8,
        paper_ref: &'static str,
        run: impl Fn(&VerifyConfig) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Check {
            id: id.into(),
            criterion,
            paper_ref,
            run: Box::new(move |cfg| run(cfg).unwrap_or_else(Outcome::error)),
        }
    }

    pub fn run(&self, cfg: &VerifyConfig) -> Entry {
        let o = (self.run)(cfg);
        Entry {
            identity_id: self.id.clone(),
            paper_ref: self.paper_ref.to_string(),
            status: o.status,
            lhs: o.lhs,
            rhs: o.rhs,
            bound: o.bound,
            note: o.note,
        }
    }
}

/// Every item, ordered by identity id.
pub fn checks() -> Vec<Check> {
    let mut v = items::all();
    v.extend(properties::all());
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

fn compile_filter(filter: &[String]) -> Result<Vec<glob::Pattern>> {
    filter
        .iter()
        .map(|p| {
            glob::Pattern::new(p).map_err(|e| Error::InvalidArgument(format!("filter {p}: {e}")))
        })
        .collect()
}

/// Items whose id matches one of the patterns (all items for no patterns).
pub fn select(filter: &[String]) -> Result<Vec<Check>> {
    let pats = compile_filter(filter)?;
    Ok(checks()
        .into_iter()
        .filter(|c| pats.is_empty() || pats.iter().any(|p| p.matches(&c.id)))
        .collect())
}

/// Runs the selected items on up to `cfg.jobs` threads; the report is
/// sorted by identity id.
pub fn run(cfg: &VerifyConfig) -> Result<Vec<Entry>> {
    let selected = select(&cfg.filter)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut entries: Vec<Entry> =
        pool.install(|| selected.par_iter().map(|c| c.run(cfg)).collect());
    entries.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
    Ok(entries)
}

/// True unless some entry failed; discrepancies do not count as failures.
pub fn all_passed(entries: &[Entry]) -> bool {
    entries.iter().all(|e| e.status != Status::Fail)
}
