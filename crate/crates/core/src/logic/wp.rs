//! Weakest preconditions of the deterministic generalized substitutions.
//!
//! | substitution                 | wp(S, P)                                  |
//! |------------------------------|-------------------------------------------|
//! | `skip`                       | `P`                                       |
//! | `x := E`                     | `P[E/x]`                                  |
//! | `x1 := E1 || ... || xn := En`| `P[E1/x1, ..., En/xn]`                    |
//! | `IF c THEN S END`            | `(c => wp(S,P)) & (not(c) => P)`          |
//! | `IF c THEN S ELSE T END`     | `(c => wp(S,P)) & (not(c) => wp(T,P))`    |
//! | `SELECT G THEN S END`        | `G => wp(S,P)`                            |
//!
//! A parallel composition containing anything other than assignments is
//! computed as `wp(S1, wp(S2, ... wp(Sn, P)))`. This is exact only because
//! the frontend rejects parallel branches that read a variable written by a
//! sibling branch.

use super::ast::{Pred, Subst};
use super::error::LogicError;
use super::subst::{substitute, Bindings};

pub fn wp(s: &Subst, post: &Pred) -> Result<Pred, LogicError> {
    match s {
        Subst::Skip => Ok(post.clone()),
        Subst::Assign(x, e) => {
            let mut b = Bindings::new();
            b.insert(x.clone(), e.clone());
            substitute(post, &b)
        }
        Subst::Parallel(branches) => {
            if let Some(bindings) = as_simultaneous(branches) {
                return substitute(post, &bindings);
            }
            branches
                .iter()
                .rev()
                .try_fold(post.clone(), |acc, branch| wp(branch, &acc))
        }
        Subst::If {
            cond,
            then,
            otherwise,
        } => {
            let when_true = cond.clone().implies(wp(then, post)?);
            let else_post = match otherwise {
                Some(o) => wp(o, post)?,
                None => post.clone(),
            };
            Ok(when_true.and(cond.clone().not().implies(else_post)))
        }
        Subst::Select(guard, body) => Ok(guard.clone().implies(wp(body, post)?)),
    }
}

fn as_simultaneous(branches: &[Subst]) -> Option<Bindings> {
    let mut b = Bindings::new();
    for branch in branches {
        match branch {
            Subst::Assign(x, e) => {
                b.insert(x.clone(), e.clone());
            }
            Subst::Skip => {}
            _ => return None,
        }
    }
    Some(b)
}
