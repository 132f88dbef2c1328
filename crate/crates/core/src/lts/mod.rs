//! Symbolic labeled transition systems: assembly from prover verdicts,
//! hierarchy under refinement, and the intermediate, DOT and AUT formats.

mod aut;
mod build;
mod dot;
mod intermediate;
mod refined;

use std::fmt::{self, Write};

use thiserror::Error;

use crate::exec::Exec;
use crate::logic::{LogicError, Pred, Valuation};
use crate::oblige::ProofObligation;
use crate::prover::{ProofResult, ProverError, Verdict};

pub use aut::{emit_aut, AutError};
pub use build::build;
pub use dot::emit_dot;
pub use intermediate::{emit_intermediate, parse_intermediate, FormatError};
pub use refined::build_refined;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Abstract,
    Concrete,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateNode {
    pub name: String,
    pub predicate: Pred,
    pub parent: Option<String>,
    pub level: Level,
    /// Proven unsatisfiable under the properties and invariant.
    pub empty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Proven,
    /// Kept because some classifying obligation stayed unknown.
    Default,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub src: String,
    pub event: String,
    pub condition: Pred,
    /// Rendered `[]`; the condition is then `TRUE`.
    pub reduced: bool,
    pub provenance: Provenance,
    pub dst: String,
}

impl Transition {
    /// `event [cond]`, or `event []` when reduced.
    pub fn label(&self) -> String {
        if self.reduced {
            format!("{} []", self.event)
        } else {
            format!("{} [{}]", self.event, self.condition)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialArrow {
    pub state: String,
    pub condition: Pred,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicLts {
    pub name: String,
    pub states: Vec<StateNode>,
    pub initial: Vec<InitialArrow>,
    pub transitions: Vec<Transition>,
}

impl SymbolicLts {
    pub fn state(&self, name: &str) -> Option<&StateNode> {
        self.states.iter().find(|s| s.name == name)
    }

    pub fn is_hierarchical(&self) -> bool {
        self.states.iter().any(|s| s.parent.is_some())
    }

    /// States of the level transitions are drawn at.
    pub fn concrete_states(&self) -> impl Iterator<Item = &StateNode> {
        self.states.iter().filter(|s| s.level == Level::Concrete)
    }

    pub fn default_transitions(&self) -> impl Iterator<Item = &Transition> {
        self.transitions
            .iter()
            .filter(|t| t.provenance == Provenance::Default)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Build even when the cover obligation is not proven.
    pub allow_uncovered: bool,
    pub exec: Exec,
}

#[derive(Debug, Clone)]
pub struct PoRecord {
    pub po: ProofObligation,
    pub result: ProofResult,
}

/// Every obligation discharged during a build, with warnings.
#[derive(Debug, Clone, Default)]
pub struct BuildReport {
    pub obligations: Vec<PoRecord>,
    pub warnings: Vec<String>,
}

impl BuildReport {
    fn record(&mut self, po: ProofObligation, result: ProofResult) {
        self.obligations.push(PoRecord { po, result });
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.obligations
            .iter()
            .filter(|r| r.result.verdict == verdict)
            .count()
    }

    /// One line per obligation (`id kind verdict method [counterexample]`),
    /// then one `WARN` line per warning.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.obligations {
            let _ = write!(
                out,
                "{} {} {} {}",
                r.po.id, r.po.kind, r.result.verdict, r.result.method
            );
            if let Some(cex) = &r.result.counterexample {
                let _ = write!(out, " {cex}");
            }
            out.push('\n');
        }
        for w in &self.warnings {
            let _ = writeln!(out, "WARN {w}");
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum LtsError {
    #[error("cover obligation not proven{}", cover_detail(.counterexample))]
    CoverFailed { counterexample: Option<Valuation> },
    #[error(
        "abstract states `{0}` and `{1}` are not proven disjoint; placement needs disjoint states"
    )]
    AbstractOverlap(String, String),
    #[error("concrete state `{0}` is not proven to lie in any abstract state")]
    NoParent(String),
    #[error("concrete state `{state}` lies in several abstract states: {}", .candidates.join(", "))]
    AmbiguousParent {
        state: String,
        candidates: Vec<String>,
    },
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

fn cover_detail(cex: &Option<Valuation>) -> String {
    match cex {
        Some(v) => format!(": no state holds at {v}"),
        None => String::new(),
    }
}

impl fmt::Display for SymbolicLts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_intermediate(self))
    }
}
