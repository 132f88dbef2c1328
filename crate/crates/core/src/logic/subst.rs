//! Simultaneous replacement of free identifiers.

use std::collections::BTreeMap;

use super::ast::{Domain, Expr, Pred};
use super::error::LogicError;

pub type Bindings = BTreeMap<String, Expr>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Hint {
    Int,
    Enum,
}

fn hint(e: &Expr) -> Option<Hint> {
    match e {
        Expr::Int(_) | Expr::Add(..) | Expr::Sub(..) => Some(Hint::Int),
        Expr::Elem(_) => Some(Hint::Enum),
        Expr::Ident(_) => None,
    }
}

fn check_expr(e: &Expr) -> Result<(), LogicError> {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            for side in [a, b] {
                if hint(side) == Some(Hint::Enum) {
                    return Err(LogicError::SortMismatch(format!(
                        "enumerated value `{side}` used in arithmetic `{e}`"
                    )));
                }
                check_expr(side)?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Syntactic sort check over literals; identifiers are trusted.
pub(crate) fn check_sorts(p: &Pred) -> Result<(), LogicError> {
    match p {
        Pred::True | Pred::False => Ok(()),
        Pred::Cmp(op, a, b) => {
            check_expr(a)?;
            check_expr(b)?;
            match (hint(a), hint(b)) {
                (Some(x), Some(y)) if x != y => Err(LogicError::SortMismatch(format!(
                    "`{p}` compares an integer with an enumerated value"
                ))),
                (Some(Hint::Enum), _) | (_, Some(Hint::Enum)) if op.is_ordering() => Err(
                    LogicError::SortMismatch(format!("`{p}` orders enumerated values")),
                ),
                _ => Ok(()),
            }
        }
        Pred::In(e, d) => {
            check_expr(e)?;
            match (hint(e), d) {
                (Some(Hint::Enum), Domain::Interval(..) | Domain::Nat)
                | (Some(Hint::Int), Domain::Set(_)) => Err(LogicError::SortMismatch(format!(
                    "`{p}` tests membership across sorts"
                ))),
                _ => {
                    if let Domain::Interval(lo, hi) = d {
                        check_expr(lo)?;
                        check_expr(hi)?;
                    }
                    Ok(())
                }
            }
        }
        Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
            check_sorts(a)?;
            check_sorts(b)
        }
        Pred::Not(a) => check_sorts(a),
    }
}

pub fn substitute_expr(e: &Expr, bindings: &Bindings) -> Expr {
    match e {
        Expr::Ident(x) => bindings.get(x).cloned().unwrap_or_else(|| e.clone()),
        Expr::Int(_) | Expr::Elem(_) => e.clone(),
        Expr::Add(a, b) => substitute_expr(a, bindings) + substitute_expr(b, bindings),
        Expr::Sub(a, b) => substitute_expr(a, bindings) - substitute_expr(b, bindings),
    }
}

/// Replaces free identifiers without re-checking sorts. Callers inside the
/// crate use this when the bindings are known to be well-sorted.
pub(crate) fn substitute_unchecked(p: &Pred, bindings: &Bindings) -> Pred {
    if bindings.is_empty() {
        return p.clone();
    }
    let s = |q: &Pred| substitute_unchecked(q, bindings);
    match p {
        Pred::True | Pred::False => p.clone(),
        Pred::Cmp(op, a, b) => Pred::Cmp(
            *op,
            substitute_expr(a, bindings),
            substitute_expr(b, bindings),
        ),
        Pred::In(e, d) => {
            let d = match d {
                Domain::Interval(lo, hi) => {
                    Domain::Interval(substitute_expr(lo, bindings), substitute_expr(hi, bindings))
                }
                other => other.clone(),
            };
            Pred::In(substitute_expr(e, bindings), d)
        }
        Pred::And(a, b) => s(a).and(s(b)),
        Pred::Or(a, b) => s(a).or(s(b)),
        Pred::Implies(a, b) => s(a).implies(s(b)),
        Pred::Not(a) => s(a).not(),
    }
}

/// Simultaneous substitution `p[bindings]`. The fragment is quantifier-free,
/// so capture cannot occur.
pub fn substitute(p: &Pred, bindings: &Bindings) -> Result<Pred, LogicError> {
    let out = substitute_unchecked(p, bindings);
    check_sorts(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ast::CmpOp;

    fn id(s: &str) -> Expr {
        Expr::ident(s)
    }

    fn bind(pairs: &[(&str, Expr)]) -> Bindings {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn replaces_identifier_by_literal() {
        let p = Pred::eq(id("cc"), Expr::Int(1));
        let out = substitute(&p, &bind(&[("cc", Expr::Int(0))])).unwrap();
        assert_eq!(out, Pred::eq(Expr::Int(0), Expr::Int(1)));
    }

    #[test]
    fn replaces_inside_arithmetic() {
        let p = Pred::cmp(CmpOp::Lt, id("NbVoit"), id("NbPlaces"));
        let out = substitute(&p, &bind(&[("NbVoit", id("NbVoit") + Expr::Int(1))])).unwrap();
        assert_eq!(out.to_string(), "NbVoit+1<NbPlaces");
    }

    #[test]
    fn replacement_is_simultaneous() {
        let p = Pred::eq(id("x"), id("y"));
        let swap = bind(&[("x", id("y")), ("y", id("x"))]);
        let out = substitute(&p, &swap).unwrap();
        assert_eq!(out, Pred::eq(id("y"), id("x")));
        assert_eq!(substitute(&out, &swap).unwrap(), p);
    }

    #[test]
    fn rejects_int_for_enum() {
        let p = Pred::eq(id("feu"), Expr::elem("vert"));
        let err = substitute(&p, &bind(&[("feu", Expr::Int(3))])).unwrap_err();
        assert!(matches!(err, LogicError::SortMismatch(_)));
    }
}
