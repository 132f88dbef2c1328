use super::{
    BuildOptions, BuildReport, InitialArrow, Level, LtsError, PoRecord, Provenance, StateNode,
    SymbolicLts, Transition,
};
use crate::frontend::MachineModel;
use crate::logic::{simplify, Pred};
use crate::oblige::{
    cover_obligation, disjointness_obligations, enabledness_pair, init_obligations,
    reach_obligations,
};
use crate::prover::{ProofResult, Prover, SatResult, Verdict};

/// Symbolic LTS of a flat machine (or of the concrete level of an
/// elaborated refinement).
pub fn build(
    m: &MachineModel,
    prover: &Prover,
    opts: BuildOptions,
) -> Result<(SymbolicLts, BuildReport), LtsError> {
    let mut report = BuildReport::default();

    let cover = cover_obligation(m);
    let result = prover.decide(&cover)?;
    if result.verdict != Verdict::Valid {
        if !opts.allow_uncovered {
            return Err(LtsError::CoverFailed {
                counterexample: result.counterexample,
            });
        }
        report.warnings.push(format!(
            "cover obligation is {}; states may miss valuations",
            result.verdict
        ));
    }
    report.record(cover, result);

    let disjoint = disjointness_obligations(m);
    let results = opts.exec.map(&disjoint, |po| prover.decide(po));
    for (po, r) in disjoint.into_iter().zip(results) {
        let r = r?;
        if r.verdict != Verdict::Valid {
            let target = po.subject.target.as_deref().unwrap_or_default();
            let mut w = format!("states {} and {} may overlap", po.subject.state, target);
            if let Some(v) = &r.counterexample {
                w.push_str(&format!(" (both hold at {v})"));
            }
            report.warnings.push(w);
        }
        report.record(po, r);
    }

    let context = m.context();
    let emptiness = opts.exec.map(&m.states, |s| {
        prover.check_sat(&context.clone().and_nontrivial(s.pred.clone()))
    });
    let mut states = Vec::new();
    for (s, sat) in m.states.iter().zip(emptiness) {
        let empty = sat? == SatResult::Unsat;
        if empty {
            report
                .warnings
                .push(format!("state {} is empty under the invariant", s.name));
        }
        states.push(StateNode {
            name: s.name.clone(),
            predicate: s.pred.clone(),
            parent: None,
            level: Level::Concrete,
            empty,
        });
    }

    let inits = init_obligations(m)?;
    let results = opts.exec.map(&inits, |(po, _)| prover.decide(po));
    let mut initial = Vec::new();
    for ((po, w), r) in inits.into_iter().zip(results) {
        let r = r?;
        let condition = simplify(&w, &m.properties);
        if r.verdict != Verdict::Valid && condition != Pred::False {
            initial.push(InitialArrow {
                state: po.subject.state.clone(),
                condition,
            });
        }
        report.record(po, r);
    }

    let pairs: Vec<(usize, usize)> = (0..m.states.len())
        .flat_map(|i| (0..m.events.len()).map(move |k| (i, k)))
        .collect();
    let outcomes = opts.exec.map(&pairs, |&(i, k)| classify(m, prover, i, k));
    let mut transitions = Vec::new();
    for outcome in outcomes {
        let (records, ts) = outcome?;
        report.obligations.extend(records);
        transitions.extend(ts);
    }

    let lts = SymbolicLts {
        name: m.name.clone(),
        states,
        initial,
        transitions,
    };
    Ok((lts, report))
}

type PairOutcome = (Vec<PoRecord>, Vec<Transition>);

/// Enabledness of event `k` in state `i`, then its targets.
fn classify(
    m: &MachineModel,
    prover: &Prover,
    i: usize,
    k: usize,
) -> Result<PairOutcome, LtsError> {
    let (src, e) = (&m.states[i], &m.events[k]);
    let mut records = Vec::new();
    let mut record = |po, result: &ProofResult| {
        records.push(PoRecord {
            po,
            result: result.clone(),
        })
    };

    let (always, never) = enabledness_pair(src, e, m);
    let ra = prover.decide(&always)?;
    let rn = prover.decide(&never)?;
    record(always, &ra);
    record(never, &rn);
    if rn.verdict == Verdict::Valid {
        return Ok((records, Vec::new()));
    }
    let undetermined = ra.verdict != Verdict::Valid
        && (ra.verdict == Verdict::Unknown || rn.verdict == Verdict::Unknown);

    let state_hyp = m.context().and_nontrivial(src.pred.clone());
    let mut transitions = Vec::new();
    for dst in &m.states {
        let reach = reach_obligations(src, e, dst, m)?;
        let re = prover.decide(&reach.exists)?;
        record(reach.exists, &re);
        if re.verdict == Verdict::Valid {
            continue;
        }
        let condition = simplify(
            &e.guard.clone().and_nontrivial(reach.wp.clone()),
            &state_hyp,
        );
        if condition == Pred::False {
            continue;
        }
        let rt = prover.decide(&reach.total)?;
        record(reach.total, &rt);
        let reduced = ra.verdict == Verdict::Valid && rt.verdict == Verdict::Valid;
        let default =
            undetermined || re.verdict == Verdict::Unknown || rt.verdict == Verdict::Unknown;
        transitions.push(Transition {
            src: src.name.clone(),
            event: e.name.clone(),
            condition: if reduced { Pred::True } else { condition },
            reduced,
            provenance: if default {
                Provenance::Default
            } else {
                Provenance::Proven
            },
            dst: dst.name.clone(),
        });
    }
    Ok((records, transitions))
}
