//! Linear integer constraints and a Fourier-Motzkin refuter.
//!
//! Every constraint is kept as `sum(c_i * x_i) + k <= 0` over the integers.
//! Elimination works on the rational shadow after gcd tightening, so an
//! `Unsat` answer is a proof for the integers as well; a `Feasible` answer
//! is not a model.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{CmpOp, Domain, Expr, Pred};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinExpr {
    pub coeffs: BTreeMap<String, i128>,
    pub constant: i128,
}

impl LinExpr {
    fn constant(k: i128) -> Self {
        LinExpr {
            coeffs: BTreeMap::new(),
            constant: k,
        }
    }

    fn var(x: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(x.to_string(), 1);
        LinExpr {
            coeffs,
            constant: 0,
        }
    }

    fn scaled_add(mut self, other: &LinExpr, factor: i128) -> Option<Self> {
        for (x, c) in &other.coeffs {
            let slot = self.coeffs.entry(x.clone()).or_insert(0);
            *slot = slot.checked_add(c.checked_mul(factor)?)?;
            if *slot == 0 {
                self.coeffs.remove(x);
            }
        }
        self.constant = self
            .constant
            .checked_add(other.constant.checked_mul(factor)?)?;
        Some(self)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self - other`
    pub fn minus(&self, other: &LinExpr) -> Option<LinExpr> {
        self.clone().scaled_add(other, -1)
    }

    fn shifted(mut self, k: i128) -> Option<Self> {
        self.constant = self.constant.checked_add(k)?;
        Some(self)
    }

    fn negated(&self) -> Option<Self> {
        LinExpr::default().scaled_add(self, -1)
    }
}

/// Linear form of an integer expression. `None` for enumerated literals
/// (identifiers are always treated as integer unknowns).
pub fn linearize(e: &Expr) -> Option<LinExpr> {
    match e {
        Expr::Int(n) => Some(LinExpr::constant(i128::from(*n))),
        Expr::Ident(x) => Some(LinExpr::var(x)),
        Expr::Elem(_) => None,
        Expr::Add(a, b) => linearize(a)?.scaled_add(&linearize(b)?, 1),
        Expr::Sub(a, b) => linearize(a)?.scaled_add(&linearize(b)?, -1),
    }
}

/// `lhs - rhs` when both sides are linear.
pub fn difference(a: &Expr, b: &Expr) -> Option<LinExpr> {
    linearize(a)?.minus(&linearize(b)?)
}

/// `form <= 0`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint(pub LinExpr);

impl Constraint {
    /// The integer complement: `not(form <= 0)` is `-form + 1 <= 0`.
    pub fn complement(&self) -> Option<Constraint> {
        Some(Constraint(self.0.negated()?.shifted(1)?))
    }
}

/// Conjunction of constraints equivalent to an atomic predicate, or `None`
/// when the atom is not linear or is a disequality.
pub fn atom_constraints(p: &Pred) -> Option<Vec<Constraint>> {
    match p {
        Pred::Cmp(op, a, b) => {
            let d = difference(a, b)?;
            let c = match op {
                CmpOp::Le => vec![d],
                CmpOp::Lt => vec![d.shifted(1)?],
                CmpOp::Ge => vec![d.negated()?],
                CmpOp::Gt => vec![d.negated()?.shifted(1)?],
                CmpOp::Eq => vec![d.negated()?, d],
                CmpOp::Ne => return None,
            };
            Some(c.into_iter().map(Constraint).collect())
        }
        Pred::In(e, Domain::Interval(lo, hi)) => Some(vec![
            Constraint(difference(lo, e)?),
            Constraint(difference(e, hi)?),
        ]),
        Pred::In(e, Domain::Nat) => Some(vec![Constraint(linearize(e)?.negated()?)]),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refutation {
    Unsat,
    Feasible,
    GaveUp,
}

const MAX_CONSTRAINTS: usize = 4000;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Tightened form; `Err(true)` when trivially false, `Err(false)` when
/// trivially true.
fn normalize(c: Constraint) -> Result<Constraint, bool> {
    let LinExpr { coeffs, constant } = c.0;
    if coeffs.is_empty() {
        return Err(constant > 0);
    }
    let g = coeffs.values().fold(0, |acc, &x| gcd(acc, x));
    if g <= 1 {
        return Ok(Constraint(LinExpr { coeffs, constant }));
    }
    let coeffs = coeffs.into_iter().map(|(x, a)| (x, a / g)).collect();
    // sum(a x) <= -k  ==>  sum(a/g x) <= floor(-k/g)  ==>  k' = ceil(k/g)
    let constant = constant.div_euclid(g) + i128::from(constant.rem_euclid(g) != 0);
    Ok(Constraint(LinExpr { coeffs, constant }))
}

/// Decides whether the conjunction of `constraints` has no integer solution.
pub fn refute(constraints: impl IntoIterator<Item = Constraint>) -> Refutation {
    let mut set = BTreeSet::new();
    for c in constraints {
        match normalize(c) {
            Ok(c) => {
                set.insert(c);
            }
            Err(true) => return Refutation::Unsat,
            Err(false) => {}
        }
    }
    loop {
        let mut vars: BTreeMap<&String, (usize, usize)> = BTreeMap::new();
        for c in &set {
            for (x, a) in &c.0.coeffs {
                let e = vars.entry(x).or_default();
                if *a > 0 {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        let Some(pivot) = vars
            .iter()
            .min_by_key(|(_, (p, n))| p * n)
            .map(|(x, _)| (*x).clone())
        else {
            return Refutation::Feasible;
        };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for c in set {
            match c.0.coeffs.get(&pivot).copied() {
                Some(a) if a > 0 => pos.push((a, c)),
                Some(a) => neg.push((-a, c)),
                None => {
                    rest.insert(c);
                }
            }
        }
        for (a, p) in &pos {
            for (b, n) in &neg {
                let Some(combined) = LinExpr::default()
                    .scaled_add(&p.0, *b)
                    .and_then(|l| l.scaled_add(&n.0, *a))
                else {
                    return Refutation::GaveUp;
                };
                match normalize(Constraint(combined)) {
                    Ok(c) => {
                        rest.insert(c);
                    }
                    Err(true) => return Refutation::Unsat,
                    Err(false) => {}
                }
                if rest.len() > MAX_CONSTRAINTS {
                    return Refutation::GaveUp;
                }
            }
        }
        set = rest;
    }
}
