//! Parsing and well-formedness checking of machines and refinements.

mod check;
mod error;
mod lexer;
mod model;
mod parser;

use std::collections::BTreeSet;

pub use check::resolve_elements;
pub use error::{FrontendError, Pos};
pub use model::{EnumSet, Event, MachineKind, MachineModel, Signature, Sort, SourceMap, StateDecl};
pub use parser::parse_predicate;

use crate::logic::Pred;

/// Parses a machine or refinement.
///
/// A machine is fully checked. A refinement may use constants, sets and
/// elements of its abstraction, so only the checks that need no outside
/// scope run here; [`resolve_refinement`] completes them.
pub fn parse(source: &str) -> Result<MachineModel, FrontendError> {
    let mut m = parser::parse_raw(source)?;
    check::resolve_model(&mut m);
    match m.kind {
        MachineKind::Machine => check::check_full(&m)?,
        MachineKind::Refinement => check::check_local(&m)?,
    }
    Ok(m)
}

/// A refinement linked to its abstraction.
#[derive(Debug, Clone)]
pub struct RefinementLink {
    pub abstract_model: MachineModel,
    /// The refinement, elaborated to be self-contained: sets, constants and
    /// properties of the abstraction are inherited and its invariant is
    /// `abstract invariant & gluing invariant`.
    pub concrete: MachineModel,
    /// The refinement's own INVARIANT clause.
    pub gluing: Pred,
}

pub fn resolve_refinement(
    concrete: &MachineModel,
    abstract_model: &MachineModel,
) -> Result<RefinementLink, FrontendError> {
    let refines = match (&concrete.kind, &concrete.refines) {
        (MachineKind::Refinement, Some(r)) => r,
        _ => {
            return Err(FrontendError::UnsupportedRefinement(format!(
                "`{}` is not a refinement",
                concrete.name
            )))
        }
    };
    if *refines != abstract_model.name {
        return Err(FrontendError::NameMismatch {
            concrete: concrete.name.clone(),
            expected: refines.clone(),
            found: abstract_model.name.clone(),
        });
    }

    let ours: BTreeSet<&String> = concrete.events.iter().map(|e| &e.name).collect();
    let theirs: BTreeSet<&String> = abstract_model.events.iter().map(|e| &e.name).collect();
    if ours != theirs {
        return Err(FrontendError::EventSetMismatch {
            missing: theirs.difference(&ours).map(|s| s.to_string()).collect(),
            extra: ours.difference(&theirs).map(|s| s.to_string()).collect(),
        });
    }
    if let Some(dropped) = abstract_model
        .variables
        .iter()
        .find(|v| !concrete.variables.contains(v))
    {
        return Err(FrontendError::UnsupportedRefinement(format!(
            "abstract variable `{dropped}` is not kept by `{}`",
            concrete.name
        )));
    }

    let mut elaborated = concrete.clone();
    elaborated.sets = abstract_model
        .sets
        .iter()
        .chain(&concrete.sets)
        .cloned()
        .collect();
    elaborated.constants = abstract_model
        .constants
        .iter()
        .chain(&concrete.constants)
        .cloned()
        .collect();
    elaborated.properties = model::and_nontrivial(
        abstract_model.properties.clone(),
        concrete.properties.clone(),
    );
    check::resolve_model(&mut elaborated);
    let gluing = elaborated.invariant.clone();
    elaborated.invariant = model::and_nontrivial(abstract_model.invariant.clone(), gluing.clone());
    for (name, pos) in &abstract_model.source_map.idents {
        elaborated
            .source_map
            .idents
            .entry(name.clone())
            .or_insert(*pos);
    }
    check::check_full(&elaborated)?;

    Ok(RefinementLink {
        abstract_model: abstract_model.clone(),
        concrete: elaborated,
        gluing,
    })
}
