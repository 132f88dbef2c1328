//! Well-formedness: identifier resolution, sorts, and the structural rules on
//! parallel substitutions.

use std::collections::BTreeSet;

use super::error::FrontendError;
use super::model::{MachineModel, Signature, Sort};
use crate::logic::{Domain, Expr, Pred, Subst};

fn resolve_expr(e: &Expr, elements: &BTreeSet<String>) -> Expr {
    match e {
        Expr::Ident(x) if elements.contains(x) => Expr::Elem(x.clone()),
        Expr::Add(a, b) => resolve_expr(a, elements) + resolve_expr(b, elements),
        Expr::Sub(a, b) => resolve_expr(a, elements) - resolve_expr(b, elements),
        other => other.clone(),
    }
}

/// Rewrites identifiers naming set elements into element literals.
pub fn resolve_elements(p: &Pred, elements: &BTreeSet<String>) -> Pred {
    let r = |q: &Pred| resolve_elements(q, elements);
    match p {
        Pred::True | Pred::False => p.clone(),
        Pred::Cmp(op, a, b) => Pred::Cmp(*op, resolve_expr(a, elements), resolve_expr(b, elements)),
        Pred::In(e, d) => Pred::In(
            resolve_expr(e, elements),
            match d {
                Domain::Interval(lo, hi) => {
                    Domain::Interval(resolve_expr(lo, elements), resolve_expr(hi, elements))
                }
                other => other.clone(),
            },
        ),
        Pred::And(a, b) => r(a).and(r(b)),
        Pred::Or(a, b) => r(a).or(r(b)),
        Pred::Implies(a, b) => r(a).implies(r(b)),
        Pred::Not(a) => r(a).not(),
    }
}

pub(crate) fn resolve_subst(s: &Subst, elements: &BTreeSet<String>) -> Subst {
    match s {
        Subst::Skip => Subst::Skip,
        Subst::Assign(x, e) => Subst::Assign(x.clone(), resolve_expr(e, elements)),
        Subst::Parallel(bs) => {
            Subst::Parallel(bs.iter().map(|b| resolve_subst(b, elements)).collect())
        }
        Subst::If {
            cond,
            then,
            otherwise,
        } => Subst::If {
            cond: resolve_elements(cond, elements),
            then: Box::new(resolve_subst(then, elements)),
            otherwise: otherwise
                .as_ref()
                .map(|o| Box::new(resolve_subst(o, elements))),
        },
        Subst::Select(g, body) => Subst::Select(
            resolve_elements(g, elements),
            Box::new(resolve_subst(body, elements)),
        ),
    }
}

pub(crate) fn resolve_model(m: &mut MachineModel) {
    let elements: BTreeSet<String> = m
        .sets
        .iter()
        .flat_map(|s| s.elements.iter().cloned())
        .collect();
    m.properties = resolve_elements(&m.properties, &elements);
    m.invariant = resolve_elements(&m.invariant, &elements);
    for s in &mut m.states {
        s.pred = resolve_elements(&s.pred, &elements);
    }
    m.initialisation = resolve_subst(&m.initialisation, &elements);
    for e in &mut m.events {
        e.guard = resolve_elements(&e.guard, &elements);
        e.action = resolve_subst(&e.action, &elements);
    }
}

fn check_distinct<'a>(names: impl IntoIterator<Item = &'a String>) -> Result<(), FrontendError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(FrontendError::DuplicateIdentifier(n.clone()));
        }
    }
    Ok(())
}

fn check_parallel(s: &Subst, event: &str) -> Result<(), FrontendError> {
    match s {
        Subst::Skip | Subst::Assign(..) => Ok(()),
        Subst::Parallel(branches) => {
            let writes: Vec<_> = branches.iter().map(Subst::written).collect();
            let reads: Vec<_> = branches.iter().map(Subst::read).collect();
            for i in 0..branches.len() {
                for j in 0..branches.len() {
                    if i == j {
                        continue;
                    }
                    if i < j {
                        if let Some(v) = writes[i].intersection(&writes[j]).next() {
                            return Err(FrontendError::ParallelWriteConflict {
                                variable: v.clone(),
                                event: event.to_string(),
                            });
                        }
                    }
                    if let Some(v) = reads[i].intersection(&writes[j]).next() {
                        return Err(FrontendError::ParallelReadConflict {
                            variable: v.clone(),
                            event: event.to_string(),
                        });
                    }
                }
            }
            branches.iter().try_for_each(|b| check_parallel(b, event))
        }
        Subst::If {
            then, otherwise, ..
        } => {
            check_parallel(then, event)?;
            otherwise
                .as_ref()
                .map_or(Ok(()), |o| check_parallel(o, event))
        }
        Subst::Select(_, body) => check_parallel(body, event),
    }
}

fn check_assignments(s: &Subst, variables: &[String], event: &str) -> Result<(), FrontendError> {
    for x in s.written() {
        if !variables.contains(&x) {
            return Err(FrontendError::InvalidAssignment {
                name: x,
                event: event.to_string(),
            });
        }
    }
    Ok(())
}

/// Checks that only need the text of one component (used on refinements
/// before they are linked to their abstraction).
pub(crate) fn check_local(m: &MachineModel) -> Result<(), FrontendError> {
    check_distinct(
        m.sets
            .iter()
            .flat_map(|s| std::iter::once(&s.name).chain(s.elements.iter()))
            .chain(&m.constants)
            .chain(&m.variables),
    )?;
    check_distinct(m.events.iter().map(|e| &e.name))?;
    check_distinct(m.states.iter().map(|s| &s.name))?;
    if m.states.is_empty() {
        return Err(FrontendError::MissingAssertions);
    }
    check_assignments(&m.initialisation, &m.variables, "INITIALISATION")?;
    check_parallel(&m.initialisation, "INITIALISATION")?;
    for e in &m.events {
        check_assignments(&e.action, &m.variables, &e.name)?;
        check_parallel(&e.action, &e.name)?;
    }
    Ok(())
}

/// All well-formedness rules for a self-contained model.
pub(crate) fn check_full(m: &MachineModel) -> Result<(), FrontendError> {
    check_local(m)?;
    let constants: BTreeSet<&String> = m.constants.iter().collect();
    let state_scope: BTreeSet<&String> = m.constants.iter().chain(&m.variables).collect();

    let mut unbound = BTreeSet::new();
    let declared_set = |s: &str| m.sets.iter().any(|d| d.name == s);
    let scan = |p: &Pred, scope: &BTreeSet<&String>, unbound: &mut BTreeSet<String>| {
        unbound.extend(p.free_idents().into_iter().filter(|x| !scope.contains(x)));
        collect_set_names(p, &mut |s| {
            if !declared_set(s) {
                unbound.insert(s.to_string());
            }
        });
    };
    scan(&m.properties, &constants, &mut unbound);
    scan(&m.invariant, &state_scope, &mut unbound);
    for s in &m.states {
        scan(&s.pred, &state_scope, &mut unbound);
    }
    for e in &m.events {
        scan(&e.guard, &state_scope, &mut unbound);
    }
    for s in std::iter::once(&m.initialisation).chain(m.events.iter().map(|e| &e.action)) {
        unbound.extend(s.read().into_iter().filter(|x| !state_scope.contains(x)));
        for_each_pred(s, &mut |p| scan(p, &state_scope, &mut unbound));
    }
    if let Some(name) = unbound.into_iter().min_by_key(|n| (m.pos_of(n), n.clone())) {
        return Err(FrontendError::UnboundIdentifier {
            pos: m.pos_of(&name),
            name,
        });
    }

    let sig = m.signature();
    let sorts = SortChecker { sig: &sig };
    sorts.pred(&m.properties)?;
    sorts.pred(&m.invariant)?;
    for s in &m.states {
        sorts.pred(&s.pred)?;
    }
    sorts.subst(&m.initialisation)?;
    for e in &m.events {
        sorts.pred(&e.guard)?;
        sorts.subst(&e.action)?;
    }
    Ok(())
}

fn collect_set_names(p: &Pred, f: &mut impl FnMut(&str)) {
    match p {
        Pred::In(_, Domain::Set(s)) => f(s),
        Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
            collect_set_names(a, f);
            collect_set_names(b, f);
        }
        Pred::Not(a) => collect_set_names(a, f),
        _ => {}
    }
}

fn for_each_pred(s: &Subst, f: &mut impl FnMut(&Pred)) {
    match s {
        Subst::Skip | Subst::Assign(..) => {}
        Subst::Parallel(bs) => bs.iter().for_each(|b| for_each_pred(b, f)),
        Subst::If {
            cond,
            then,
            otherwise,
        } => {
            f(cond);
            for_each_pred(then, f);
            if let Some(o) = otherwise {
                for_each_pred(o, f);
            }
        }
        Subst::Select(g, body) => {
            f(g);
            for_each_pred(body, f);
        }
    }
}

struct SortChecker<'a> {
    sig: &'a Signature,
}

impl SortChecker<'_> {
    fn expr(&self, e: &Expr) -> Result<Sort, FrontendError> {
        match e {
            Expr::Int(_) => Ok(Sort::Int),
            Expr::Elem(x) => self
                .sig
                .set_of_element(x)
                .map(|s| Sort::Enum(s.name.clone()))
                .ok_or_else(|| FrontendError::SortMismatch(format!("unknown element `{x}`"))),
            Expr::Ident(x) => Ok(self.sig.sort_of(x).cloned().unwrap_or(Sort::Int)),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                for side in [a, b] {
                    if self.expr(side)? != Sort::Int {
                        return Err(FrontendError::SortMismatch(format!(
                            "`{side}` is not an integer in `{e}`"
                        )));
                    }
                }
                Ok(Sort::Int)
            }
        }
    }

    fn int(&self, e: &Expr, ctx: &Pred) -> Result<(), FrontendError> {
        if self.expr(e)? == Sort::Int {
            Ok(())
        } else {
            Err(FrontendError::SortMismatch(format!(
                "`{e}` must be an integer in `{ctx}`"
            )))
        }
    }

    fn pred(&self, p: &Pred) -> Result<(), FrontendError> {
        match p {
            Pred::True | Pred::False => Ok(()),
            Pred::Cmp(op, a, b) => {
                let (sa, sb) = (self.expr(a)?, self.expr(b)?);
                if sa != sb {
                    return Err(FrontendError::SortMismatch(format!(
                        "operands of `{p}` have different sorts"
                    )));
                }
                if op.is_ordering() && sa != Sort::Int {
                    return Err(FrontendError::SortMismatch(format!(
                        "`{p}` orders enumerated values"
                    )));
                }
                Ok(())
            }
            Pred::In(e, Domain::Interval(lo, hi)) => {
                self.int(e, p)?;
                self.int(lo, p)?;
                self.int(hi, p)
            }
            Pred::In(e, Domain::Nat) => self.int(e, p),
            Pred::In(e, Domain::Set(s)) => {
                if self.expr(e)? == Sort::Enum(s.clone()) {
                    Ok(())
                } else {
                    Err(FrontendError::SortMismatch(format!(
                        "`{e}` is not an element of {s} in `{p}`"
                    )))
                }
            }
            Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
                self.pred(a)?;
                self.pred(b)
            }
            Pred::Not(a) => self.pred(a),
        }
    }

    fn subst(&self, s: &Subst) -> Result<(), FrontendError> {
        match s {
            Subst::Skip => Ok(()),
            Subst::Assign(x, e) => {
                let target = self.sig.sort_of(x).cloned().unwrap_or(Sort::Int);
                if self.expr(e)? == target {
                    Ok(())
                } else {
                    Err(FrontendError::SortMismatch(format!(
                        "`{x} := {e}` assigns a value of the wrong sort"
                    )))
                }
            }
            Subst::Parallel(bs) => bs.iter().try_for_each(|b| self.subst(b)),
            Subst::If {
                cond,
                then,
                otherwise,
            } => {
                self.pred(cond)?;
                self.subst(then)?;
                otherwise.as_ref().map_or(Ok(()), |o| self.subst(o))
            }
            Subst::Select(g, body) => {
                self.pred(g)?;
                self.subst(body)
            }
        }
    }
}
