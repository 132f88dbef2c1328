use super::{build, BuildOptions, BuildReport, Level, LtsError, StateNode, SymbolicLts};
use crate::frontend::{RefinementLink, StateDecl};
use crate::oblige::{disjointness_obligations, placement_obligations};
use crate::prover::{Prover, Verdict};

/// Two-level LTS of a refinement: the abstract states of `abstract_lts`
/// (renamed `<abstract-name>.<state>`) with the concrete states of the
/// refinement nested under them. Transitions are those of the concrete
/// level.
pub fn build_refined(
    link: &RefinementLink,
    abstract_lts: &SymbolicLts,
    prover: &Prover,
    opts: BuildOptions,
) -> Result<(SymbolicLts, BuildReport), LtsError> {
    let mut report = BuildReport::default();
    let abstract_states: Vec<StateDecl> = abstract_lts
        .concrete_states()
        .map(|s| StateDecl {
            name: s.name.clone(),
            pred: s.predicate.clone(),
        })
        .collect();

    let mut abstract_model = link.abstract_model.clone();
    abstract_model.states = abstract_states.clone();
    let disjoint = disjointness_obligations(&abstract_model);
    let results = opts.exec.map(&disjoint, |po| prover.decide(po));
    for (po, r) in disjoint.into_iter().zip(results) {
        let r = r?;
        if r.verdict != Verdict::Valid {
            return Err(LtsError::AbstractOverlap(
                po.subject.state.clone(),
                po.subject.target.clone().unwrap_or_default(),
            ));
        }
        report.record(po, r);
    }

    let (concrete, concrete_report) = build(&link.concrete, prover, opts)?;

    let context = link.concrete.context();
    let placements = opts.exec.map(&link.concrete.states, |s| {
        placement_obligations(s, &abstract_states, &context)
            .into_iter()
            .map(|po| prover.decide(&po).map(|r| (po, r)))
            .collect::<Result<Vec<_>, _>>()
    });
    let qualify = |name: &str| format!("{}.{}", abstract_lts.name, name);
    let mut parents = Vec::new();
    for (s, placed) in link.concrete.states.iter().zip(placements) {
        let mut candidates = Vec::new();
        for (po, r) in placed? {
            if r.verdict == Verdict::Valid {
                candidates.push(po.subject.target.clone().unwrap_or_default());
            }
            report.record(po, r);
        }
        match candidates.len() {
            0 => return Err(LtsError::NoParent(s.name.clone())),
            1 => parents.push(candidates.remove(0)),
            _ => {
                return Err(LtsError::AmbiguousParent {
                    state: s.name.clone(),
                    candidates: candidates.iter().map(|c| qualify(c)).collect(),
                })
            }
        }
    }

    report.obligations.extend(concrete_report.obligations);
    report.warnings.extend(concrete_report.warnings);

    let parent_of = |name: &str| {
        link.concrete
            .states
            .iter()
            .position(|s| s.name == name)
            .map(|i| parents[i].as_str())
    };
    for t in &concrete.transitions {
        let (Some(a), Some(b)) = (parent_of(&t.src), parent_of(&t.dst)) else {
            continue;
        };
        let matched = abstract_lts
            .transitions
            .iter()
            .any(|u| u.src == a && u.event == t.event && u.dst == b);
        if !matched {
            report.warnings.push(format!(
                "{} --{}--> {} has no abstract counterpart {} --{}--> {}",
                t.src,
                t.event,
                t.dst,
                qualify(a),
                t.event,
                qualify(b)
            ));
        }
    }

    let mut states: Vec<StateNode> = abstract_lts
        .concrete_states()
        .map(|s| StateNode {
            name: qualify(&s.name),
            predicate: s.predicate.clone(),
            parent: None,
            level: Level::Abstract,
            empty: s.empty,
        })
        .collect();
    for (node, parent) in concrete.states.into_iter().zip(&parents) {
        states.push(StateNode {
            parent: Some(qualify(parent)),
            ..node
        });
    }
    let lts = SymbolicLts {
        name: link.concrete.name.clone(),
        states,
        initial: concrete.initial,
        transitions: concrete.transitions,
    };
    Ok((lts, report))
}
