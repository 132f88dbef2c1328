//! Unsatisfiability proofs by case analysis and linear arithmetic.
//!
//! Enumerated identifiers are split over their sets and literal bindings
//! (`x = 3` as a top-level conjunct) are propagated. The remainder is put in
//! negation normal form and searched depth-first: every disjunction is a
//! branch, every branch ends in a Fourier-Motzkin check, and disequalities
//! are split into `<` and `>` only when the linear part is feasible. Atoms
//! outside linear arithmetic are dropped, which weakens the formula and
//! keeps every `true` answer a proof.

use std::time::Instant;

use crate::frontend::Signature;
use crate::logic::linear::{atom_constraints, difference, refute, Constraint, LinExpr, Refutation};
use crate::logic::subst::substitute_unchecked;
use crate::logic::{fold, Bindings, CmpOp, Domain, Expr, Pred};

const NODE_BUDGET: usize = 50_000;
const MAX_SPLITS: usize = 256;

/// `true` only if `f` has been proven unsatisfiable.
pub(crate) fn refutes(f: &Pred, sig: &Signature, deadline: Instant) -> bool {
    let mut search = Search {
        nodes: 0,
        splits: 0,
        deadline,
    };
    search.split_enums(fold(f), sig)
}

struct Search {
    nodes: usize,
    splits: usize,
    deadline: Instant,
}

impl Search {
    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > NODE_BUDGET || Instant::now() > self.deadline
    }

    fn split_enums(&mut self, f: Pred, sig: &Signature) -> bool {
        let f = propagate(f);
        match f {
            Pred::False => return true,
            Pred::True => return false,
            _ => {}
        }
        let target = f
            .free_idents()
            .into_iter()
            .find_map(|x| sig.enum_domain(&x).map(|d| (x, d)));
        let Some((x, values)) = target else {
            return self.refuted(vec![nnf(&f, true)], Vec::new(), Vec::new());
        };
        self.splits += 1;
        if self.splits > MAX_SPLITS {
            return false;
        }
        values.into_iter().all(|value| {
            let b: Bindings = [(x.clone(), Expr::from(value))].into_iter().collect();
            self.split_enums(fold(&substitute_unchecked(&f, &b)), sig)
        })
    }

    fn refuted(
        &mut self,
        mut todo: Vec<Pred>,
        mut cons: Vec<Constraint>,
        mut nes: Vec<LinExpr>,
    ) -> bool {
        if self.out_of_budget() {
            return false;
        }
        let mut ors = Vec::new();
        while let Some(p) = todo.pop() {
            match p {
                Pred::True => {}
                Pred::False => return true,
                Pred::And(a, b) => {
                    todo.push(*a);
                    todo.push(*b);
                }
                Pred::Or(..) => ors.push(p),
                atom => match atom_constraints(&atom) {
                    Some(cs) => cons.extend(cs),
                    None => {
                        if let Pred::Cmp(CmpOp::Ne, a, b) = &atom {
                            if let Some(d) = difference(a, b) {
                                nes.push(d);
                            }
                        }
                    }
                },
            }
        }
        match refute(cons.iter().cloned()) {
            Refutation::Unsat => return true,
            Refutation::GaveUp => return false,
            Refutation::Feasible => {}
        }
        if let Some(Pred::Or(a, b)) = ors.pop() {
            return [*a, *b].into_iter().all(|side| {
                let mut t = ors.clone();
                t.push(side);
                self.refuted(t, cons.clone(), nes.clone())
            });
        }
        if let Some(d) = nes.pop() {
            // d /= 0  <=>  d + 1 <= 0  or  -d + 1 <= 0
            let Some(above) = Constraint(d.clone()).complement() else {
                return false;
            };
            let mut below = d;
            below.constant += 1;
            return [Constraint(below), above].into_iter().all(|c| {
                let mut cs = cons.clone();
                cs.push(c);
                self.refuted(Vec::new(), cs, nes.clone())
            });
        }
        false
    }
}

/// Substitutes top-level literal bindings into the rest of the formula
/// until nothing changes.
fn propagate(mut f: Pred) -> Pred {
    for _ in 0..16 {
        let mut bindings = Bindings::new();
        for c in f.conjuncts() {
            if let Pred::Cmp(CmpOp::Eq, Expr::Ident(x), lit)
            | Pred::Cmp(CmpOp::Eq, lit, Expr::Ident(x)) = c
            {
                if lit.is_literal() {
                    bindings.entry(x.clone()).or_insert_with(|| lit.clone());
                }
            }
        }
        if bindings.is_empty() {
            return f;
        }
        let kept = Pred::conjunction(
            bindings
                .iter()
                .map(|(x, v)| Pred::eq(Expr::ident(x.clone()), v.clone())),
        );
        let rest = fold(&substitute_unchecked(&f, &bindings));
        // a binding contradicted by another one folds the rest to FALSE
        let next = fold(&kept.and(rest));
        if next == f {
            return f;
        }
        f = next;
    }
    f
}

/// Negation normal form; `positive = false` negates `p`.
fn nnf(p: &Pred, positive: bool) -> Pred {
    match (p, positive) {
        (Pred::True, true) | (Pred::False, false) => Pred::True,
        (Pred::True, false) | (Pred::False, true) => Pred::False,
        (Pred::Not(q), _) => nnf(q, !positive),
        (Pred::And(a, b), true) => nnf(a, true).and(nnf(b, true)),
        (Pred::And(a, b), false) => nnf(a, false).or(nnf(b, false)),
        (Pred::Or(a, b), true) => nnf(a, true).or(nnf(b, true)),
        (Pred::Or(a, b), false) => nnf(a, false).and(nnf(b, false)),
        (Pred::Implies(a, b), true) => nnf(a, false).or(nnf(b, true)),
        (Pred::Implies(a, b), false) => nnf(a, true).and(nnf(b, false)),
        (Pred::Cmp(op, a, b), _) => {
            let op = if positive { *op } else { op.negate() };
            Pred::Cmp(op, a.clone(), b.clone())
        }
        (Pred::In(..), true) => p.clone(),
        (Pred::In(e, Domain::Interval(lo, hi)), false) => Pred::cmp(
            CmpOp::Lt,
            e.clone(),
            lo.clone(),
        )
        .or(Pred::cmp(CmpOp::Gt, e.clone(), hi.clone())),
        (Pred::In(e, Domain::Nat), false) => Pred::cmp(CmpOp::Lt, e.clone(), Expr::Int(0)),
        // well-sorted membership in an enumerated set always holds
        (Pred::In(_, Domain::Set(_)), false) => Pred::False,
    }
}
