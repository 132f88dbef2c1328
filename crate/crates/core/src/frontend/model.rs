use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::error::Pos;
use crate::logic::{Pred, Subst, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MachineKind {
    Machine,
    Refinement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSet {
    pub name: String,
    pub elements: Vec<String>,
}

/// One symbolic state: a disjunct of the ASSERTIONS clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDecl {
    pub name: String,
    pub pred: Pred,
}

/// `name = SELECT guard THEN action END`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub name: String,
    pub guard: Pred,
    pub action: Subst,
}

impl Event {
    pub fn body(&self) -> Subst {
        Subst::Select(self.guard.clone(), Box::new(self.action.clone()))
    }
}

/// Where clauses and identifiers first appear in the source.
#[derive(Debug, Clone, Default)]
pub struct SourceMap {
    pub clauses: BTreeMap<String, Pos>,
    pub idents: BTreeMap<String, Pos>,
}

#[derive(Debug, Clone)]
pub struct MachineModel {
    pub name: String,
    pub kind: MachineKind,
    pub refines: Option<String>,
    pub sets: Vec<EnumSet>,
    pub constants: Vec<String>,
    pub properties: Pred,
    pub variables: Vec<String>,
    pub invariant: Pred,
    pub states: Vec<StateDecl>,
    pub initialisation: Subst,
    pub events: Vec<Event>,
    pub source_map: SourceMap,
}

impl PartialEq for MachineModel {
    /// Structural equality; source positions are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.kind == other.kind
            && self.refines == other.refines
            && self.sets == other.sets
            && self.constants == other.constants
            && self.properties == other.properties
            && self.variables == other.variables
            && self.invariant == other.invariant
            && self.states == other.states
            && self.initialisation == other.initialisation
            && self.events == other.events
    }
}

impl MachineModel {
    pub fn event(&self, name: &str) -> Option<&Event> {
        self.events.iter().find(|e| e.name == name)
    }

    pub fn state(&self, name: &str) -> Option<&StateDecl> {
        self.states.iter().find(|s| s.name == name)
    }

    /// `properties & invariant`
    pub fn context(&self) -> Pred {
        and_nontrivial(self.properties.clone(), self.invariant.clone())
    }

    pub fn signature(&self) -> Signature {
        Signature::infer(self)
    }

    pub fn pos_of(&self, ident: &str) -> Pos {
        self.source_map
            .idents
            .get(ident)
            .copied()
            .unwrap_or_default()
    }
}

/// Conjunction that drops a `TRUE` operand.
pub(crate) fn and_nontrivial(a: Pred, b: Pred) -> Pred {
    a.and_nontrivial(b)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Int,
    Enum(String),
}

/// Declared identifiers with their sorts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub sets: Vec<EnumSet>,
    pub constants: Vec<String>,
    pub variables: Vec<String>,
    pub sorts: BTreeMap<String, Sort>,
}

impl Signature {
    /// Sorts come from membership tests `x : S` in the properties (for
    /// constants) and the invariant (for variables); everything else is an
    /// integer.
    pub fn infer(m: &MachineModel) -> Signature {
        let mut sorts = BTreeMap::new();
        let typed = |p: &Pred, names: &[String], sorts: &mut BTreeMap<String, Sort>| {
            let mut found = BTreeMap::new();
            collect_set_memberships(p, &mut found);
            for n in names {
                let s = found
                    .get(n)
                    .map(|set: &String| Sort::Enum(set.clone()))
                    .unwrap_or(Sort::Int);
                sorts.insert(n.clone(), s);
            }
        };
        typed(&m.properties, &m.constants, &mut sorts);
        typed(&m.invariant, &m.variables, &mut sorts);
        Signature {
            sets: m.sets.clone(),
            constants: m.constants.clone(),
            variables: m.variables.clone(),
            sorts,
        }
    }

    pub fn set(&self, name: &str) -> Option<&EnumSet> {
        self.sets.iter().find(|s| s.name == name)
    }

    pub fn set_of_element(&self, elem: &str) -> Option<&EnumSet> {
        self.sets
            .iter()
            .find(|s| s.elements.iter().any(|e| e == elem))
    }

    pub fn elements(&self) -> BTreeSet<String> {
        self.sets
            .iter()
            .flat_map(|s| s.elements.iter().cloned())
            .collect()
    }

    pub fn sort_of(&self, ident: &str) -> Option<&Sort> {
        self.sorts.get(ident)
    }

    /// Constants then variables, in declaration order.
    pub fn identifiers(&self) -> impl Iterator<Item = &String> {
        self.constants.iter().chain(self.variables.iter())
    }

    pub fn is_constant(&self, ident: &str) -> bool {
        self.constants.iter().any(|c| c == ident)
    }

    /// Finite domain of an enumerated identifier.
    pub fn enum_domain(&self, ident: &str) -> Option<Vec<Value>> {
        match self.sort_of(ident)? {
            Sort::Enum(set) => Some(
                self.set(set)?
                    .elements
                    .iter()
                    .map(|e| Value::Elem(e.clone()))
                    .collect(),
            ),
            Sort::Int => None,
        }
    }
}

fn collect_set_memberships(p: &Pred, out: &mut BTreeMap<String, String>) {
    use crate::logic::{Domain, Expr};
    match p {
        Pred::In(Expr::Ident(x), Domain::Set(s)) => {
            out.entry(x.clone()).or_insert_with(|| s.clone());
        }
        Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
            collect_set_memberships(a, out);
            collect_set_memberships(b, out);
        }
        Pred::Not(a) => collect_set_memberships(a, out),
        _ => {}
    }
}

impl fmt::Display for MachineModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MachineKind::Machine => writeln!(f, "MACHINE {}", self.name)?,
            MachineKind::Refinement => {
                writeln!(f, "REFINEMENT {}", self.name)?;
                if let Some(r) = &self.refines {
                    writeln!(f, "REFINES {r}")?;
                }
            }
        }
        if !self.sets.is_empty() {
            writeln!(f, "SETS")?;
            for (i, s) in self.sets.iter().enumerate() {
                let sep = if i + 1 < self.sets.len() { ";" } else { "" };
                writeln!(f, "  {} = {{{}}}{sep}", s.name, s.elements.join(", "))?;
            }
        }
        if !self.constants.is_empty() {
            writeln!(f, "CONSTANTS {}", self.constants.join(", "))?;
        }
        if self.properties != Pred::True {
            writeln!(f, "PROPERTIES\n  {}", self.properties)?;
        }
        writeln!(f, "VARIABLES {}", self.variables.join(", "))?;
        writeln!(f, "INVARIANT\n  {}", self.invariant)?;
        writeln!(f, "ASSERTIONS")?;
        for (i, s) in self.states.iter().enumerate() {
            let sep = if i + 1 < self.states.len() { " or" } else { "" };
            if s.name == format!("S{i}") {
                writeln!(f, "  ({}){sep}", s.pred)?;
            } else {
                writeln!(f, "  {}@({}){sep}", s.name, s.pred)?;
            }
        }
        writeln!(f, "INITIALISATION\n  {}", self.initialisation)?;
        writeln!(f, "OPERATIONS")?;
        for (i, e) in self.events.iter().enumerate() {
            let sep = if i + 1 < self.events.len() { ";" } else { "" };
            writeln!(
                f,
                "  {} = SELECT {} THEN {} END{sep}",
                e.name, e.guard, e.action
            )?;
        }
        writeln!(f, "END")
    }
}
