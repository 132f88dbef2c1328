//! Concrete semantics: truth of predicates and execution of substitutions
//! under a valuation.

use super::ast::{Domain, Expr, Pred, Subst, Valuation, Value};
use super::error::LogicError;

pub fn eval_expr(e: &Expr, v: &Valuation) -> Result<Value, LogicError> {
    match e {
        Expr::Int(n) => Ok(Value::Int(*n)),
        Expr::Elem(x) => Ok(Value::Elem(x.clone())),
        Expr::Ident(x) => v
            .get(x)
            .cloned()
            .ok_or_else(|| LogicError::IncompleteValuation(x.clone())),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, b) = (eval_int(a, v)?, eval_int(b, v)?);
            let r = if matches!(e, Expr::Add(..)) {
                a.checked_add(b)
            } else {
                a.checked_sub(b)
            };
            r.map(Value::Int)
                .ok_or_else(|| LogicError::Overflow(e.to_string()))
        }
    }
}

fn eval_int(e: &Expr, v: &Valuation) -> Result<i64, LogicError> {
    match eval_expr(e, v)? {
        Value::Int(n) => Ok(n),
        Value::Elem(x) => Err(LogicError::SortMismatch(format!(
            "`{e}` evaluates to enumerated value {x} where an integer is required"
        ))),
    }
}

/// Classical truth value of `p` under `v`.
///
/// Membership in a named set is decided by sort: any enumerated value
/// satisfies `x : S` (well-sortedness is established by the frontend).
pub fn evaluate(p: &Pred, v: &Valuation) -> Result<bool, LogicError> {
    Ok(match p {
        Pred::True => true,
        Pred::False => false,
        Pred::Cmp(op, a, b) => {
            let (a, b) = (eval_expr(a, v)?, eval_expr(b, v)?);
            match (&a, &b) {
                (Value::Int(x), Value::Int(y)) => op.holds(x, y),
                (Value::Elem(_), Value::Elem(_)) if !op.is_ordering() => op.holds(&a, &b),
                _ => {
                    return Err(LogicError::SortMismatch(format!(
                        "cannot compare {a} and {b} in `{p}`"
                    )))
                }
            }
        }
        Pred::In(e, d) => {
            let x = eval_expr(e, v)?;
            match (d, x) {
                (Domain::Interval(lo, hi), Value::Int(n)) => {
                    eval_int(lo, v)? <= n && n <= eval_int(hi, v)?
                }
                (Domain::Nat, Value::Int(n)) => n >= 0,
                (Domain::Set(_), Value::Elem(_)) => true,
                (_, x) => {
                    return Err(LogicError::SortMismatch(format!(
                        "{x} cannot be tested against {d}"
                    )))
                }
            }
        }
        Pred::And(a, b) => evaluate(a, v)? && evaluate(b, v)?,
        Pred::Or(a, b) => evaluate(a, v)? || evaluate(b, v)?,
        Pred::Implies(a, b) => !evaluate(a, v)? || evaluate(b, v)?,
        Pred::Not(a) => !evaluate(a, v)?,
    })
}

/// Runs `s` from `v`. `Ok(None)` means a SELECT guard blocked execution.
pub fn exec(s: &Subst, v: &Valuation) -> Result<Option<Valuation>, LogicError> {
    let Some(updates) = effects(s, v)? else {
        return Ok(None);
    };
    let mut next = v.clone();
    for (x, val) in updates {
        next.set(x, val);
    }
    Ok(Some(next))
}

/// Assignments performed by `s`, every right-hand side read in the pre-state.
fn effects(s: &Subst, v: &Valuation) -> Result<Option<Vec<(String, Value)>>, LogicError> {
    match s {
        Subst::Skip => Ok(Some(Vec::new())),
        Subst::Assign(x, e) => Ok(Some(vec![(x.clone(), eval_expr(e, v)?)])),
        Subst::Parallel(branches) => {
            let mut all = Vec::new();
            for b in branches {
                match effects(b, v)? {
                    Some(mut u) => all.append(&mut u),
                    None => return Ok(None),
                }
            }
            Ok(Some(all))
        }
        Subst::If {
            cond,
            then,
            otherwise,
        } => {
            if evaluate(cond, v)? {
                effects(then, v)
            } else if let Some(o) = otherwise {
                effects(o, v)
            } else {
                Ok(Some(Vec::new()))
            }
        }
        Subst::Select(g, body) => {
            if evaluate(g, v)? {
                effects(body, v)
            } else {
                Ok(None)
            }
        }
    }
}
