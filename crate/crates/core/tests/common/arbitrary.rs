//! Random terms over three integer variables with small domains.
#![allow(dead_code)]

use ltsgen_core::logic::{CmpOp, Domain, Expr, Pred, Subst, Valuation, Value};
use proptest::prelude::*;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn expr_over(vars: Vec<&'static str>) -> BoxedStrategy<Expr> {
    let leaf = prop_oneof![
        (0i64..4).prop_map(Expr::Int),
        prop::sample::select(vars).prop_map(Expr::ident),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner).prop_map(|(a, b)| a - b),
        ]
    })
    .boxed()
}

pub fn expr() -> BoxedStrategy<Expr> {
    expr_over(VARS.to_vec())
}

fn op() -> impl Strategy<Value = CmpOp> {
    prop::sample::select(vec![
        CmpOp::Eq,
        CmpOp::Ne,
        CmpOp::Lt,
        CmpOp::Le,
        CmpOp::Gt,
        CmpOp::Ge,
    ])
}

pub fn pred_over(vars: Vec<&'static str>) -> BoxedStrategy<Pred> {
    let e = expr_over(vars);
    let leaf = prop_oneof![
        1 => Just(Pred::True),
        1 => Just(Pred::False),
        6 => (op(), e.clone(), e.clone()).prop_map(|(o, a, b)| Pred::cmp(o, a, b)),
        2 => (e.clone(), e.clone(), e.clone()).prop_map(|(x, lo, hi)| Pred::In(x, Domain::Interval(lo, hi))),
        1 => e.prop_map(|x| Pred::In(x, Domain::Nat)),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            inner.prop_map(Pred::not),
        ]
    })
    .boxed()
}

pub fn pred() -> BoxedStrategy<Pred> {
    pred_over(VARS.to_vec())
}

/// Assignment to `var`, possibly guarded by an IF, reading only `reads`.
fn branch(var: &'static str, reads: Vec<&'static str>) -> BoxedStrategy<Subst> {
    let assign = expr_over(reads.clone()).prop_map(move |e| Subst::assign(var, e));
    prop_oneof![
        2 => assign.clone(),
        1 => (pred_over(reads), assign.clone(), prop::option::of(assign)).prop_map(|(c, t, o)| Subst::If {
            cond: c,
            then: Box::new(t),
            otherwise: o.map(Box::new),
        }),
    ]
    .boxed()
}

/// Parallel composition writing a subset of the variables; each branch
/// reads its own variable and the unwritten ones, never a sibling's.
fn parallel() -> BoxedStrategy<Subst> {
    prop::sample::subsequence(VARS.to_vec(), 1..=3)
        .prop_flat_map(|written| {
            let branches: Vec<_> = written
                .iter()
                .map(|&v| {
                    let reads: Vec<&'static str> = VARS
                        .iter()
                        .copied()
                        .filter(|r| *r == v || !written.contains(r))
                        .collect();
                    branch(v, reads)
                })
                .collect();
            branches
        })
        .prop_map(Subst::Parallel)
        .boxed()
}

/// Substitutions satisfying the frontend's parallel rules, with an
/// optional outer SELECT.
pub fn subst() -> BoxedStrategy<Subst> {
    let body = prop_oneof![
        1 => Just(Subst::Skip),
        2 => (prop::sample::select(VARS.to_vec()), expr()).prop_map(|(v, e)| Subst::assign(v, e)),
        3 => parallel(),
        2 => (pred(), parallel(), prop::option::of(parallel())).prop_map(|(c, t, o)| Subst::If {
            cond: c,
            then: Box::new(t),
            otherwise: o.map(Box::new),
        }),
    ];
    (prop::option::of(pred()), body)
        .prop_map(|(g, s)| match g {
            Some(g) => Subst::Select(g, Box::new(s)),
            None => s,
        })
        .boxed()
}

pub fn valuation() -> BoxedStrategy<Valuation> {
    (0i64..4, 0i64..4, 0i64..4)
        .prop_map(|(x, y, z)| {
            Valuation::new()
                .with("x", Value::Int(x))
                .with("y", Value::Int(y))
                .with("z", Value::Int(z))
        })
        .boxed()
}

/// `evaluate(wp(s,p), v) == evaluate(p, exec(s,v))` whenever `s` is not
/// blocked at `v`.
pub fn wp_exec_coherent(s: &Subst, p: &Pred, v: &Valuation) -> Result<(), String> {
    use ltsgen_core::logic::{evaluate, exec, wp};
    let Some(after) = exec(s, v).map_err(|e| e.to_string())? else {
        return Ok(());
    };
    let w = wp(s, p).map_err(|e| e.to_string())?;
    let before = evaluate(&w, v).map_err(|e| e.to_string())?;
    let expected = evaluate(p, &after).map_err(|e| e.to_string())?;
    if before == expected {
        Ok(())
    } else {
        Err(format!(
            "wp({s}, {p}) = {w} is {before} at {v}, but {p} is {expected} at {after}"
        ))
    }
}
