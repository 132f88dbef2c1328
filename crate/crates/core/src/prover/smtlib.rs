//! SMT-LIB 2 rendering of obligations (QF_LIA).
//!
//! Enumerated sets become bounded integers: each element is replaced by its
//! index in the set and each enumerated identifier gets a range assertion.
//! The assertion is `hypothesis & not(goal)`, so `unsat` means the
//! obligation holds.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::frontend::{Signature, Sort};
use crate::logic::{CmpOp, Domain, Expr, Pred};
use crate::oblige::ProofObligation;

pub fn render(po: &ProofObligation, sig: &Signature) -> String {
    let mut idents = po.hypothesis.free_idents();
    idents.extend(po.goal.free_idents());

    let mut used_sets = BTreeSet::new();
    for x in &idents {
        if let Some(Sort::Enum(s)) = sig.sort_of(x) {
            used_sets.insert(s.clone());
        }
    }
    let mut elems = BTreeSet::new();
    collect_elems(&po.hypothesis, &mut elems);
    collect_elems(&po.goal, &mut elems);
    for e in &elems {
        if let Some(s) = sig.set_of_element(e) {
            used_sets.insert(s.name.clone());
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "; {} ({})", po.id, po.kind);
    for s in sig.sets.iter().filter(|s| used_sets.contains(&s.name)) {
        let codes: Vec<String> = s
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{e}={i}"))
            .collect();
        let _ = writeln!(out, "; enum {}: {}", s.name, codes.join(", "));
    }
    out.push_str("(set-logic QF_LIA)\n");
    for x in &idents {
        let _ = writeln!(out, "(declare-fun {x} () Int)");
    }
    for x in &idents {
        if let Some(Sort::Enum(s)) = sig.sort_of(x) {
            if let Some(set) = sig.set(s) {
                let _ = writeln!(
                    out,
                    "(assert (and (<= 0 {x}) (<= {x} {})))",
                    set.elements.len() - 1
                );
            }
        }
    }
    let negated_goal = format!("(not {})", pred(&po.goal, sig));
    if po.hypothesis == Pred::True {
        let _ = writeln!(out, "(assert {negated_goal})");
    } else {
        let _ = writeln!(
            out,
            "(assert (and {} {negated_goal}))",
            pred(&po.hypothesis, sig)
        );
    }
    out.push_str("(check-sat)\n");
    out
}

fn collect_elems(p: &Pred, out: &mut BTreeSet<String>) {
    for e in p.exprs() {
        collect_expr_elems(e, out);
    }
}

fn collect_expr_elems(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Elem(x) => {
            out.insert(x.clone());
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            collect_expr_elems(a, out);
            collect_expr_elems(b, out);
        }
        Expr::Int(_) | Expr::Ident(_) => {}
    }
}

fn expr(e: &Expr, sig: &Signature) -> String {
    match e {
        Expr::Int(n) if *n < 0 => format!("(- {})", n.unsigned_abs()),
        Expr::Int(n) => n.to_string(),
        Expr::Ident(x) => x.clone(),
        Expr::Elem(x) => sig
            .set_of_element(x)
            .and_then(|s| s.elements.iter().position(|y| y == x))
            .unwrap_or(0)
            .to_string(),
        Expr::Add(a, b) => format!("(+ {} {})", expr(a, sig), expr(b, sig)),
        Expr::Sub(a, b) => format!("(- {} {})", expr(a, sig), expr(b, sig)),
    }
}

fn pred(p: &Pred, sig: &Signature) -> String {
    match p {
        Pred::True => "true".into(),
        Pred::False => "false".into(),
        Pred::Cmp(op, a, b) => {
            let (a, b) = (expr(a, sig), expr(b, sig));
            match op {
                CmpOp::Eq => format!("(= {a} {b})"),
                CmpOp::Ne => format!("(not (= {a} {b}))"),
                CmpOp::Lt => format!("(< {a} {b})"),
                CmpOp::Le => format!("(<= {a} {b})"),
                CmpOp::Gt => format!("(> {a} {b})"),
                CmpOp::Ge => format!("(>= {a} {b})"),
            }
        }
        Pred::In(e, Domain::Interval(lo, hi)) => {
            let e = expr(e, sig);
            format!(
                "(and (<= {} {e}) (<= {e} {}))",
                expr(lo, sig),
                expr(hi, sig)
            )
        }
        Pred::In(e, Domain::Nat) => format!("(<= 0 {})", expr(e, sig)),
        Pred::In(e, Domain::Set(s)) => {
            let n = sig.set(s).map_or(1, |s| s.elements.len());
            let e = expr(e, sig);
            format!("(and (<= 0 {e}) (<= {e} {}))", n - 1)
        }
        Pred::And(a, b) => format!("(and {} {})", pred(a, sig), pred(b, sig)),
        Pred::Or(a, b) => format!("(or {} {})", pred(a, sig), pred(b, sig)),
        Pred::Implies(a, b) => format!("(=> {} {})", pred(a, sig), pred(b, sig)),
        Pred::Not(a) => format!("(not {})", pred(a, sig)),
    }
}
