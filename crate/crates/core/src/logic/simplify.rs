//! Context-aware simplification.
//!
//! `simplify(p, ctx)` returns `p'` with `ctx & p <=> ctx & p'`. It folds
//! constants, propagates literal bindings found in the context
//! (`cc=0`), drops atoms the context decides (syntactically or through
//! linear reasoning), and tightens `a/=b` to `a<b` or `a>b` when the
//! context orders the two sides. Rewriting is iterated to a fixpoint so
//! the result is idempotent.

use std::collections::{btree_map::Entry, BTreeSet};

use super::ast::{CmpOp, Domain, Expr, Pred};
use super::linear::{atom_constraints, difference, refute, Constraint, Refutation};
use super::subst::{substitute_expr, substitute_unchecked, Bindings};

const MAX_ROUNDS: usize = 16;

pub fn simplify(p: &Pred, context: &Pred) -> Pred {
    let ctx = Context::new(context.conjuncts().into_iter().cloned().collect());
    let ctx = if ctx.inconsistent {
        Context::empty()
    } else {
        ctx
    };
    let mut current = p.clone();
    for _ in 0..MAX_ROUNDS {
        let next = rewrite(&current, &ctx);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

/// Local folding only (no context).
pub fn fold(p: &Pred) -> Pred {
    simplify(p, &Pred::True)
}

#[derive(Debug, Clone, Default)]
struct Context {
    source: Vec<Pred>,
    bindings: Bindings,
    atoms: BTreeSet<Pred>,
    facts: Vec<Constraint>,
    inconsistent: bool,
}

fn binding_of(p: &Pred) -> Option<(String, Expr)> {
    match p {
        Pred::Cmp(CmpOp::Eq, Expr::Ident(x), lit) | Pred::Cmp(CmpOp::Eq, lit, Expr::Ident(x))
            if lit.is_literal() =>
        {
            Some((x.clone(), lit.clone()))
        }
        _ => None,
    }
}

fn is_atom(p: &Pred) -> bool {
    matches!(p, Pred::Cmp(..) | Pred::In(..))
        || matches!(p, Pred::Not(q) if matches!(**q, Pred::In(..)))
}

impl Context {
    fn empty() -> Self {
        Self::default()
    }

    fn new(source: Vec<Pred>) -> Self {
        let empty = Context::empty();
        let mut bindings = Bindings::new();
        loop {
            let mut ctx = Context {
                source: Vec::new(),
                bindings: bindings.clone(),
                ..Context::default()
            };
            let mut grew = false;
            for c in &source {
                let folded = rewrite(&substitute_unchecked(c, &bindings), &empty);
                for k in folded.conjuncts() {
                    match k {
                        Pred::True => {}
                        Pred::False => ctx.inconsistent = true,
                        _ => {
                            if let Some((x, lit)) = binding_of(k) {
                                if let Entry::Vacant(slot) = bindings.entry(x) {
                                    slot.insert(lit);
                                    grew = true;
                                }
                            }
                            if is_atom(k) {
                                ctx.atoms.insert(k.clone());
                                if let Some(cs) = atom_constraints(k) {
                                    ctx.facts.extend(cs);
                                }
                            }
                        }
                    }
                }
            }
            if !grew || ctx.inconsistent {
                if !ctx.inconsistent
                    && !ctx.facts.is_empty()
                    && refute(ctx.facts.iter().cloned()) == Refutation::Unsat
                {
                    ctx.inconsistent = true;
                }
                ctx.source = source;
                return ctx;
            }
        }
    }

    fn extend(&self, p: &Pred) -> Self {
        let mut source = self.source.clone();
        source.extend(p.conjuncts().into_iter().cloned());
        Context::new(source)
    }

    fn proves_all(&self, cs: &[Constraint]) -> bool {
        !self.facts.is_empty()
            && cs.iter().all(|c| {
                c.complement().is_some_and(|neg| {
                    refute(self.facts.iter().cloned().chain([neg])) == Refutation::Unsat
                })
            })
    }

    fn refutes(&self, cs: &[Constraint]) -> bool {
        !self.facts.is_empty()
            && refute(self.facts.iter().cloned().chain(cs.iter().cloned())) == Refutation::Unsat
    }
}

fn fold_expr(e: &Expr) -> Expr {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, b) = (fold_expr(a), fold_expr(b));
            let add = matches!(e, Expr::Add(..));
            match (&a, &b) {
                (Expr::Int(x), Expr::Int(y)) => {
                    let r = if add {
                        x.checked_add(*y)
                    } else {
                        x.checked_sub(*y)
                    };
                    if let Some(r) = r {
                        return Expr::Int(r);
                    }
                }
                (_, Expr::Int(0)) => return a,
                (Expr::Int(0), _) if add => return b,
                _ => {}
            }
            if add {
                a + b
            } else {
                a - b
            }
        }
        _ => e.clone(),
    }
}

fn truth(b: bool) -> Pred {
    if b {
        Pred::True
    } else {
        Pred::False
    }
}

/// Context-free decision of an atom, if its value is fixed.
fn decide_atom(p: &Pred) -> Option<bool> {
    match p {
        Pred::Cmp(op, a, b) => {
            if let (Some(x), Some(y)) = (a.as_value(), b.as_value()) {
                return match (&x, &y) {
                    (super::ast::Value::Int(m), super::ast::Value::Int(n)) => Some(op.holds(m, n)),
                    _ if !op.is_ordering() => Some(op.holds(&x, &y)),
                    _ => None,
                };
            }
            if let Some(d) = difference(a, b) {
                if d.is_constant() {
                    return Some(op.holds(&d.constant, &0));
                }
            }
            if a == b {
                return Some(matches!(op, CmpOp::Eq | CmpOp::Le | CmpOp::Ge));
            }
            None
        }
        Pred::In(Expr::Int(n), Domain::Nat) => Some(*n >= 0),
        Pred::In(e, Domain::Interval(lo, hi)) => {
            let low = difference(e, lo).filter(|d| d.is_constant())?;
            let high = difference(hi, e).filter(|d| d.is_constant())?;
            Some(low.constant >= 0 && high.constant >= 0)
        }
        Pred::In(Expr::Elem(_), Domain::Set(_)) => Some(true),
        _ => None,
    }
}

fn negate(p: Pred) -> Pred {
    match p {
        Pred::True => Pred::False,
        Pred::False => Pred::True,
        Pred::Cmp(op, a, b) => Pred::Cmp(op.negate(), a, b),
        Pred::Not(q) => *q,
        other => other.not(),
    }
}

fn rewrite_atom(p: &Pred, ctx: &Context) -> Pred {
    let p = match p {
        Pred::Cmp(op, a, b) => Pred::Cmp(
            *op,
            fold_expr(&substitute_expr(a, &ctx.bindings)),
            fold_expr(&substitute_expr(b, &ctx.bindings)),
        ),
        Pred::In(e, d) => {
            let d = match d {
                Domain::Interval(lo, hi) => Domain::Interval(
                    fold_expr(&substitute_expr(lo, &ctx.bindings)),
                    fold_expr(&substitute_expr(hi, &ctx.bindings)),
                ),
                other => other.clone(),
            };
            Pred::In(fold_expr(&substitute_expr(e, &ctx.bindings)), d)
        }
        other => other.clone(),
    };
    if let Some(b) = decide_atom(&p) {
        return truth(b);
    }
    if ctx.atoms.contains(&p) {
        return Pred::True;
    }
    if ctx.atoms.contains(&negate(p.clone())) {
        return Pred::False;
    }
    if let Pred::Cmp(CmpOp::Ne, a, b) = &p {
        let eq = Pred::Cmp(CmpOp::Eq, a.clone(), b.clone());
        if let Some(cs) = atom_constraints(&eq) {
            if ctx.refutes(&cs) {
                return Pred::True;
            }
            let lt = atom_constraints(&Pred::Cmp(CmpOp::Lt, a.clone(), b.clone()));
            let gt = atom_constraints(&Pred::Cmp(CmpOp::Gt, a.clone(), b.clone()));
            if let (Some(lt), Some(gt)) = (lt, gt) {
                match (ctx.refutes(&lt), ctx.refutes(&gt)) {
                    (true, true) => return Pred::False,
                    (true, false) => return Pred::Cmp(CmpOp::Gt, a.clone(), b.clone()),
                    (false, true) => return Pred::Cmp(CmpOp::Lt, a.clone(), b.clone()),
                    (false, false) => {}
                }
            }
        }
        return p;
    }
    if let Some(cs) = atom_constraints(&p) {
        if ctx.proves_all(&cs) {
            return Pred::True;
        }
        if ctx.refutes(&cs) {
            return Pred::False;
        }
        // a>=b where the context gives a<=b
        if let Pred::Cmp(op @ (CmpOp::Le | CmpOp::Ge), a, b) = &p {
            let strict = if *op == CmpOp::Le {
                CmpOp::Lt
            } else {
                CmpOp::Gt
            };
            if let Some(s) = atom_constraints(&Pred::Cmp(strict, a.clone(), b.clone())) {
                if ctx.refutes(&s) {
                    return Pred::Cmp(CmpOp::Eq, a.clone(), b.clone());
                }
            }
        }
    }
    p
}

fn rewrite(p: &Pred, ctx: &Context) -> Pred {
    match p {
        Pred::True | Pred::False => p.clone(),
        Pred::Cmp(..) | Pred::In(..) => rewrite_atom(p, ctx),
        Pred::Not(q) => {
            let r = rewrite(q, ctx);
            let n = negate(r);
            // a freshly negated comparison may be decidable in context
            if matches!(n, Pred::Cmp(..)) {
                rewrite_atom(&n, ctx)
            } else {
                n
            }
        }
        Pred::And(a, b) => {
            let ra = rewrite(a, ctx);
            match ra {
                Pred::False => Pred::False,
                Pred::True => rewrite(b, ctx),
                _ => {
                    let inner = ctx.extend(&ra);
                    if inner.inconsistent {
                        return Pred::False;
                    }
                    match rewrite(b, &inner) {
                        Pred::False => Pred::False,
                        Pred::True => ra,
                        rb => ra.and(rb),
                    }
                }
            }
        }
        Pred::Or(a, b) => {
            let ra = rewrite(a, ctx);
            match ra {
                Pred::True => Pred::True,
                Pred::False => rewrite(b, ctx),
                _ => match rewrite(b, ctx) {
                    Pred::True => Pred::True,
                    Pred::False => ra,
                    rb if rb == ra => ra,
                    rb => ra.or(rb),
                },
            }
        }
        Pred::Implies(a, b) => {
            let ra = rewrite(a, ctx);
            match ra {
                Pred::False => Pred::True,
                Pred::True => rewrite(b, ctx),
                _ => {
                    let inner = ctx.extend(&ra);
                    if inner.inconsistent {
                        return Pred::True;
                    }
                    match rewrite(b, &inner) {
                        Pred::True => Pred::True,
                        Pred::False => rewrite(&Pred::Not(Box::new(ra)), ctx),
                        rb => ra.implies(rb),
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> Expr {
        Expr::ident(s)
    }

    fn lt(a: Expr, b: Expr) -> Pred {
        Pred::cmp(CmpOp::Lt, a, b)
    }

    fn parking_invariant() -> Pred {
        Pred::conjunction([
            Pred::In(id("NbVoit"), Domain::Interval(Expr::Int(0), id("NbPlaces"))),
            Pred::In(id("cc"), Domain::Interval(Expr::Int(-1), Expr::Int(1))),
            Pred::eq(id("cc"), Expr::Int(-1)).implies(lt(id("NbVoit"), id("NbPlaces"))),
            Pred::eq(id("cc"), Expr::Int(1)).implies(Pred::cmp(
                CmpOp::Gt,
                id("NbVoit"),
                Expr::Int(0),
            )),
        ])
    }

    #[test]
    fn constant_folding() {
        let p = Pred::eq(Expr::Int(1), Expr::Int(1)).and(lt(id("NbVoit"), id("NbPlaces")));
        assert_eq!(simplify(&p, &Pred::True), lt(id("NbVoit"), id("NbPlaces")));
    }

    #[test]
    fn context_absorption() {
        let ctx = Pred::eq(id("cc"), Expr::Int(0)).and(parking_invariant());
        assert_eq!(
            simplify(&Pred::eq(id("cc"), Expr::Int(0)), &ctx),
            Pred::True
        );
    }

    #[test]
    fn interval_reasoning() {
        let p = Pred::In(
            id("NbVoit") + Expr::Int(1),
            Domain::Interval(Expr::Int(0), id("NbPlaces")),
        );
        let ctx = Pred::In(id("NbVoit"), Domain::Interval(Expr::Int(0), id("NbPlaces")))
            .and(lt(id("NbVoit"), id("NbPlaces")));
        assert_eq!(simplify(&p, &ctx), Pred::True);
    }

    #[test]
    fn disequality_tightened_by_upper_bound() {
        let p = Pred::eq(id("NbVoit"), id("NbPlaces")).not();
        assert_eq!(
            simplify(&p, &parking_invariant()),
            lt(id("NbVoit"), id("NbPlaces"))
        );
    }

    #[test]
    fn non_strict_order_tightened_to_equality() {
        let p = Pred::cmp(CmpOp::Ge, id("NbVoit"), id("NbPlaces"));
        assert_eq!(
            simplify(&p, &parking_invariant()),
            Pred::eq(id("NbVoit"), id("NbPlaces"))
        );
    }

    #[test]
    fn implication_with_false_conclusion_negates() {
        let c = Pred::eq(id("NbVoit"), id("NbPlaces"));
        let p = c
            .clone()
            .implies(Pred::eq(Expr::Int(0), Expr::Int(0)).and(Pred::True))
            .and(
                c.clone()
                    .not()
                    .implies(Pred::eq(Expr::elem("vert"), Expr::elem("rouge"))),
            );
        assert_eq!(simplify(&p, &Pred::True), c);
    }

    #[test]
    fn conflicting_bindings_make_conjunction_false() {
        let p = Pred::eq(id("cc"), Expr::Int(0)).and(Pred::eq(id("cc"), Expr::Int(1)));
        assert_eq!(simplify(&p, &Pred::True), Pred::False);
    }

    #[test]
    fn idempotent_on_mixed_formula() {
        let p = lt(id("NbVoit"), id("NbPlaces"))
            .and(Pred::eq(id("cc"), Expr::Int(0)))
            .or(Pred::eq(id("NbVoit"), id("NbPlaces")).not());
        let ctx = parking_invariant();
        let once = simplify(&p, &ctx);
        assert_eq!(simplify(&once, &ctx), once);
    }
}
