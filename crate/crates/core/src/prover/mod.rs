//! Three-valued discharge of proof obligations.
//!
//! `decide` runs, in order: the context simplifier, a refutation search
//! over linear arithmetic with case splits on enumerated identifiers, and a
//! bounded enumeration for counterexamples. `Valid` comes only from the
//! first two, or from an enumeration whose domains all come from the
//! formula itself. Everything else that finds no counterexample is
//! `Unknown`.

mod enumerate;
mod refute;
mod smtlib;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::frontend::Signature;
use crate::logic::{fold, simplify, LogicError, Pred, Valuation};
use crate::oblige::ProofObligation;
use enumerate::Outcome;

pub use smtlib::render as render_smtlib;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProverConfig {
    /// Candidate values per constant.
    pub constant_bounds: BTreeMap<String, Vec<i64>>,
    /// Inclusive interval per variable.
    pub variable_bounds: BTreeMap<String, (i64, i64)>,
    pub time_budget: Duration,
    /// Obligations left `Unknown` are written here as SMT-LIB files.
    pub external_export_dir: Option<PathBuf>,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            constant_bounds: BTreeMap::new(),
            variable_bounds: BTreeMap::new(),
            time_budget: Duration::from_secs(2),
            external_export_dir: None,
        }
    }
}

impl ProverConfig {
    /// Enumeration over configured bounds is requested as soon as one bound
    /// is given; from then on a missing bound is an error.
    pub fn enumeration_enabled(&self) -> bool {
        !self.constant_bounds.is_empty() || !self.variable_bounds.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Valid,
    Invalid,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Simplifier,
    Enumeration,
    External,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Simplifier => "simplifier",
            Method::Enumeration => "enumeration",
            Method::External => "external",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofResult {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `Invalid`.
    pub counterexample: Option<Valuation>,
    pub method: Method,
}

impl ProofResult {
    fn valid(method: Method) -> Self {
        ProofResult {
            verdict: Verdict::Valid,
            counterexample: None,
            method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Valuation),
    Unsat,
    Unknown,
}

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("no bound for `{0}` (add --bound {0}=lo..hi)")]
    MissingBound(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

enum Settled {
    Unsat(Method),
    Sat(Valuation),
    Open,
}

/// A prover for the obligations of one machine.
#[derive(Debug, Clone)]
pub struct Prover {
    sig: Signature,
    cfg: ProverConfig,
}

impl Prover {
    pub fn new(sig: Signature, cfg: ProverConfig) -> Self {
        Prover { sig, cfg }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn config(&self) -> &ProverConfig {
        &self.cfg
    }

    pub fn decide(&self, po: &ProofObligation) -> Result<ProofResult, ProverError> {
        let deadline = Instant::now() + self.cfg.time_budget;
        let goal = simplify(&po.goal, &po.hypothesis);
        if goal == Pred::True || fold(&po.hypothesis) == Pred::False {
            return Ok(ProofResult::valid(Method::Simplifier));
        }
        let mut names = po.hypothesis.free_idents();
        names.extend(po.goal.free_idents());
        let f = po.hypothesis.clone().and(goal.not());
        let result = match self.settle(&f, &names, deadline)? {
            Settled::Unsat(m) => ProofResult::valid(m),
            Settled::Sat(cex) => ProofResult {
                verdict: Verdict::Invalid,
                counterexample: Some(cex),
                method: Method::Enumeration,
            },
            Settled::Open => {
                let method = match &self.cfg.external_export_dir {
                    Some(dir) => {
                        self.export(po, dir)?;
                        Method::External
                    }
                    None => Method::Enumeration,
                };
                ProofResult {
                    verdict: Verdict::Unknown,
                    counterexample: None,
                    method,
                }
            }
        };
        Ok(result)
    }

    pub fn check_sat(&self, p: &Pred) -> Result<SatResult, ProverError> {
        let deadline = Instant::now() + self.cfg.time_budget;
        if fold(p) == Pred::False {
            return Ok(SatResult::Unsat);
        }
        Ok(match self.settle(p, &p.free_idents(), deadline)? {
            Settled::Unsat(_) => SatResult::Unsat,
            Settled::Sat(w) => SatResult::Sat(w),
            Settled::Open => SatResult::Unknown,
        })
    }

    fn settle(
        &self,
        f: &Pred,
        names: &std::collections::BTreeSet<String>,
        deadline: Instant,
    ) -> Result<Settled, ProverError> {
        if refute::refutes(f, &self.sig, deadline) {
            return Ok(Settled::Unsat(Method::Simplifier));
        }
        Ok(
            match enumerate::search(f, names, &self.sig, &self.cfg, deadline)? {
                Outcome::Found(v) => Settled::Sat(v),
                Outcome::Exhausted {
                    bound_independent: true,
                } => Settled::Unsat(Method::Enumeration),
                Outcome::Exhausted { .. } | Outcome::Unknown => Settled::Open,
            },
        )
    }

    /// Writes `<dir>/<po.id>.smt2`.
    pub fn export(&self, po: &ProofObligation, dir: &Path) -> Result<PathBuf, ProverError> {
        export_obligation(po, &self.sig, dir)
    }
}

pub fn export_obligation(
    po: &ProofObligation,
    sig: &Signature,
    dir: &Path,
) -> Result<PathBuf, ProverError> {
    let path = dir.join(format!("{}.smt2", po.id));
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, render_smtlib(po, sig)))
        .map_err(|source| ProverError::Io {
            path: path.clone(),
            source,
        })?;
    Ok(path)
}
