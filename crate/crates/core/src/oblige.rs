//! Proof obligations defining the symbolic transition system.
//!
//! Every obligation reads `hypothesis |- goal`. Questions of satisfiability
//! ("can the event lead from `Si` to `Sj`?") are phrased as absence claims:
//! the obligation states that no valuation satisfies the formula, so a
//! `Valid` verdict means "impossible" and a counterexample is a witness.

use std::fmt;

use crate::frontend::{Event, MachineModel, StateDecl};
use crate::logic::{wp, LogicError, Pred};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PoKind {
    /// `props & I |- P_0 or ... or P_n`
    Cover,
    /// `props & I & P_i |- not(P_j)`
    Disjoint,
    /// `props & I & P_i |- G`
    EnabledAlways,
    /// `props & I & P_i |- not(G)`
    EnabledNever,
    /// `props & I & P_i & G |- not(wp(S, P_j))`
    ReachExists,
    /// `props & I & P_i & G |- wp(S, P_j)`
    ReachTotal,
    /// `props |- not(wp(INIT, P_j))`
    InitReach,
    /// `props & I & R_k |- P_A` (refinement only)
    Placement,
}

impl PoKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PoKind::Cover => "cover",
            PoKind::Disjoint => "disjoint",
            PoKind::EnabledAlways => "enabled_always",
            PoKind::EnabledNever => "enabled_never",
            PoKind::ReachExists => "reach_exists",
            PoKind::ReachTotal => "reach_total",
            PoKind::InitReach => "init_reach",
            PoKind::Placement => "placement",
        }
    }

    /// Kinds whose `Valid` verdict means "no such valuation exists".
    pub fn is_absence_claim(self) -> bool {
        matches!(
            self,
            PoKind::Disjoint | PoKind::ReachExists | PoKind::InitReach
        )
    }
}

impl fmt::Display for PoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subject {
    pub state: String,
    pub event: Option<String>,
    pub target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofObligation {
    pub id: String,
    pub kind: PoKind,
    pub hypothesis: Pred,
    pub goal: Pred,
    pub subject: Subject,
}

impl fmt::Display for ProofObligation {
    /// `PO <id> <kind> HYP <pred> GOAL <pred>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PO {} {} HYP {} GOAL {}",
            self.id, self.kind, self.hypothesis, self.goal
        )
    }
}

fn state_hypothesis(m: &MachineModel, state: &StateDecl) -> Pred {
    m.context().and_nontrivial(state.pred.clone())
}

pub fn cover_obligation(m: &MachineModel) -> ProofObligation {
    ProofObligation {
        id: "cover".into(),
        kind: PoKind::Cover,
        hypothesis: m.context(),
        goal: Pred::disjunction(m.states.iter().map(|s| s.pred.clone())),
        subject: Subject::default(),
    }
}

/// One obligation per pair `i < j`.
pub fn disjointness_obligations(m: &MachineModel) -> Vec<ProofObligation> {
    let mut out = Vec::new();
    for (i, a) in m.states.iter().enumerate() {
        for b in &m.states[i + 1..] {
            out.push(ProofObligation {
                id: format!("disjoint.{}.{}", a.name, b.name),
                kind: PoKind::Disjoint,
                hypothesis: state_hypothesis(m, a),
                goal: b.pred.clone().not(),
                subject: Subject {
                    state: a.name.clone(),
                    event: None,
                    target: Some(b.name.clone()),
                },
            });
        }
    }
    out
}

/// `(PO_always, PO_never)`
pub fn enabledness_pair(
    state: &StateDecl,
    e: &Event,
    m: &MachineModel,
) -> (ProofObligation, ProofObligation) {
    let hypothesis = state_hypothesis(m, state);
    let subject = Subject {
        state: state.name.clone(),
        event: Some(e.name.clone()),
        target: None,
    };
    let always = ProofObligation {
        id: format!("enabled_always.{}.{}", state.name, e.name),
        kind: PoKind::EnabledAlways,
        hypothesis: hypothesis.clone(),
        goal: e.guard.clone(),
        subject: subject.clone(),
    };
    let never = ProofObligation {
        id: format!("enabled_never.{}.{}", state.name, e.name),
        kind: PoKind::EnabledNever,
        hypothesis,
        goal: e.guard.clone().not(),
        subject,
    };
    (always, never)
}

/// Reachability obligations for `src --e--> dst`.
#[derive(Debug, Clone)]
pub struct ReachObligations {
    pub exists: ProofObligation,
    pub total: ProofObligation,
    /// `wp(action, P_dst)`
    pub wp: Pred,
}

pub fn reach_obligations(
    src: &StateDecl,
    e: &Event,
    dst: &StateDecl,
    m: &MachineModel,
) -> Result<ReachObligations, LogicError> {
    let w = wp(&e.action, &dst.pred)?;
    let hypothesis = state_hypothesis(m, src).and_nontrivial(e.guard.clone());
    let subject = Subject {
        state: src.name.clone(),
        event: Some(e.name.clone()),
        target: Some(dst.name.clone()),
    };
    let suffix = format!("{}.{}.{}", src.name, e.name, dst.name);
    Ok(ReachObligations {
        exists: ProofObligation {
            id: format!("reach_exists.{suffix}"),
            kind: PoKind::ReachExists,
            hypothesis: hypothesis.clone(),
            goal: w.clone().not(),
            subject: subject.clone(),
        },
        total: ProofObligation {
            id: format!("reach_total.{suffix}"),
            kind: PoKind::ReachTotal,
            hypothesis,
            goal: w.clone(),
            subject,
        },
        wp: w,
    })
}

/// One obligation per state, paired with `wp(INITIALISATION, P_j)`.
pub fn init_obligations(m: &MachineModel) -> Result<Vec<(ProofObligation, Pred)>, LogicError> {
    m.states
        .iter()
        .map(|s| {
            let w = wp(&m.initialisation, &s.pred)?;
            let po = ProofObligation {
                id: format!("init_reach.{}", s.name),
                kind: PoKind::InitReach,
                hypothesis: m.properties.clone(),
                goal: w.clone().not(),
                subject: Subject {
                    state: s.name.clone(),
                    event: None,
                    target: None,
                },
            };
            Ok((po, w))
        })
        .collect()
}

/// Candidate placements of one concrete state, one per abstract state.
/// `context` is the concrete properties and (elaborated) invariant.
pub fn placement_obligations(
    concrete_state: &StateDecl,
    abstract_states: &[StateDecl],
    context: &Pred,
) -> Vec<ProofObligation> {
    abstract_states
        .iter()
        .map(|a| ProofObligation {
            id: format!("placement.{}.{}", concrete_state.name, a.name),
            kind: PoKind::Placement,
            hypothesis: context.clone().and_nontrivial(concrete_state.pred.clone()),
            goal: a.pred.clone(),
            subject: Subject {
                state: concrete_state.name.clone(),
                event: None,
                target: Some(a.name.clone()),
            },
        })
        .collect()
}

/// Every obligation of a flat machine, without pruning by verdicts.
pub fn all_obligations(m: &MachineModel) -> Result<Vec<ProofObligation>, LogicError> {
    let mut out = vec![cover_obligation(m)];
    out.extend(disjointness_obligations(m));
    out.extend(init_obligations(m)?.into_iter().map(|(po, _)| po));
    for src in &m.states {
        for e in &m.events {
            let (always, never) = enabledness_pair(src, e, m);
            out.push(always);
            out.push(never);
            for dst in &m.states {
                let r = reach_obligations(src, e, dst, m)?;
                out.push(r.exists);
                out.push(r.total);
            }
        }
    }
    Ok(out)
}
