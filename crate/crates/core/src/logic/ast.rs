//! Term language shared by every stage: integer/enumerated expressions,
//! quantifier-free predicates and generalized substitutions.

use std::collections::{BTreeMap, BTreeSet};
use std::{fmt, ops};

/// Integer or enumerated-set expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Int(i64),
    /// Variable or constant.
    Ident(String),
    /// Element of an enumerated set.
    Elem(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn negate(self) -> CmpOp {
        match self {
            CmpOp::Eq => CmpOp::Ne,
            CmpOp::Ne => CmpOp::Eq,
            CmpOp::Lt => CmpOp::Ge,
            CmpOp::Le => CmpOp::Gt,
            CmpOp::Gt => CmpOp::Le,
            CmpOp::Ge => CmpOp::Lt,
        }
    }

    /// Operator obtained by swapping the operands.
    pub fn flip(self) -> CmpOp {
        match self {
            CmpOp::Eq | CmpOp::Ne => self,
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Ge => CmpOp::Le,
        }
    }

    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            CmpOp::Eq => lhs == rhs,
            CmpOp::Ne => lhs != rhs,
            CmpOp::Lt => lhs < rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Gt => lhs > rhs,
            CmpOp::Ge => lhs >= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "/=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }

    pub fn is_ordering(self) -> bool {
        !matches!(self, CmpOp::Eq | CmpOp::Ne)
    }
}

/// Right-hand side of a membership test.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Interval(Expr, Expr),
    Nat,
    /// Named enumerated set.
    Set(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    True,
    False,
    Cmp(CmpOp, Expr, Expr),
    In(Expr, Domain),
    And(Box<Pred>, Box<Pred>),
    Or(Box<Pred>, Box<Pred>),
    Not(Box<Pred>),
    Implies(Box<Pred>, Box<Pred>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subst {
    Skip,
    Assign(String, Expr),
    Parallel(Vec<Subst>),
    If {
        cond: Pred,
        then: Box<Subst>,
        otherwise: Option<Box<Subst>>,
    },
    Select(Pred, Box<Subst>),
}

/// Value taken by an identifier under a valuation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Elem(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Elem(e) => f.write_str(e),
        }
    }
}

impl From<Value> for Expr {
    fn from(v: Value) -> Expr {
        match v {
            Value::Int(n) => Expr::Int(n),
            Value::Elem(e) => Expr::Elem(e),
        }
    }
}

/// Total map from identifiers to values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(BTreeMap<String, Value>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.0.get(name)
    }

    pub fn set(&mut self, name: impl Into<String>, value: Value) {
        self.0.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: Value) -> Self {
        self.set(name, value);
        self
    }

    pub fn remove(&mut self, name: &str) -> Option<Value> {
        self.0.remove(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Value)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Restriction to the given identifiers, in the order given.
    pub fn project<'a>(
        &'a self,
        names: &'a [String],
    ) -> impl Iterator<Item = (&'a str, &'a Value)> {
        names
            .iter()
            .filter_map(move |n| self.0.get(n).map(|v| (n.as_str(), v)))
    }
}

impl FromIterator<(String, Value)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, Value)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}

// Smart constructors. These do not simplify; they only save boxing noise.
impl ops::Add for Expr {
    type Output = Expr;

    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;

    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Expr {
    pub fn ident(name: impl Into<String>) -> Expr {
        Expr::Ident(name.into())
    }

    pub fn elem(name: impl Into<String>) -> Expr {
        Expr::Elem(name.into())
    }

    pub fn free_idents(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) | Expr::Elem(_) => {}
            Expr::Ident(x) => {
                out.insert(x.clone());
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.free_idents(out);
                b.free_idents(out);
            }
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Expr::Int(_) | Expr::Elem(_))
    }

    pub fn as_value(&self) -> Option<Value> {
        match self {
            Expr::Int(n) => Some(Value::Int(*n)),
            Expr::Elem(e) => Some(Value::Elem(e.clone())),
            _ => None,
        }
    }
}

impl Pred {
    pub fn cmp(op: CmpOp, lhs: Expr, rhs: Expr) -> Pred {
        Pred::Cmp(op, lhs, rhs)
    }

    pub fn eq(lhs: Expr, rhs: Expr) -> Pred {
        Pred::Cmp(CmpOp::Eq, lhs, rhs)
    }

    pub fn and(self, rhs: Pred) -> Pred {
        Pred::And(Box::new(self), Box::new(rhs))
    }

    /// Conjunction that drops a `TRUE` operand.
    pub fn and_nontrivial(self, rhs: Pred) -> Pred {
        match (self, rhs) {
            (Pred::True, x) | (x, Pred::True) => x,
            (a, b) => a.and(b),
        }
    }

    pub fn or(self, rhs: Pred) -> Pred {
        Pred::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Pred) -> Pred {
        Pred::Implies(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Pred {
        Pred::Not(Box::new(self))
    }

    /// Left-nested conjunction of `parts`; `TRUE` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Pred>) -> Pred {
        parts
            .into_iter()
            .reduce(|acc, p| acc.and(p))
            .unwrap_or(Pred::True)
    }

    /// Left-nested disjunction of `parts`; `FALSE` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Pred>) -> Pred {
        parts
            .into_iter()
            .reduce(|acc, p| acc.or(p))
            .unwrap_or(Pred::False)
    }

    /// Top-level conjuncts, left to right.
    pub fn conjuncts(&self) -> Vec<&Pred> {
        let mut out = Vec::new();
        fn walk<'a>(p: &'a Pred, out: &mut Vec<&'a Pred>) {
            match p {
                Pred::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Top-level disjuncts, left to right.
    pub fn disjuncts(&self) -> Vec<&Pred> {
        let mut out = Vec::new();
        fn walk<'a>(p: &'a Pred, out: &mut Vec<&'a Pred>) {
            match p {
                Pred::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn free_idents(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_idents(&mut out);
        out
    }

    pub fn collect_idents(&self, out: &mut BTreeSet<String>) {
        match self {
            Pred::True | Pred::False => {}
            Pred::Cmp(_, a, b) => {
                a.free_idents(out);
                b.free_idents(out);
            }
            Pred::In(e, d) => {
                e.free_idents(out);
                if let Domain::Interval(lo, hi) = d {
                    lo.free_idents(out);
                    hi.free_idents(out);
                }
            }
            Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
            Pred::Not(a) => a.collect_idents(out),
        }
    }

    /// Every expression occurring in the predicate, outermost first.
    pub fn exprs(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        fn walk<'a>(p: &'a Pred, out: &mut Vec<&'a Expr>) {
            match p {
                Pred::True | Pred::False => {}
                Pred::Cmp(_, a, b) => {
                    out.push(a);
                    out.push(b);
                }
                Pred::In(e, d) => {
                    out.push(e);
                    if let Domain::Interval(lo, hi) = d {
                        out.push(lo);
                        out.push(hi);
                    }
                }
                Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Pred::Not(a) => walk(a, out),
            }
        }
        walk(self, &mut out);
        out
    }
}

impl Subst {
    pub fn assign(var: impl Into<String>, e: Expr) -> Subst {
        Subst::Assign(var.into(), e)
    }

    /// Variables written anywhere in the substitution.
    pub fn written(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_written(&mut out);
        out
    }

    fn collect_written(&self, out: &mut BTreeSet<String>) {
        match self {
            Subst::Skip => {}
            Subst::Assign(x, _) => {
                out.insert(x.clone());
            }
            Subst::Parallel(branches) => branches.iter().for_each(|b| b.collect_written(out)),
            Subst::If {
                then, otherwise, ..
            } => {
                then.collect_written(out);
                if let Some(o) = otherwise {
                    o.collect_written(out);
                }
            }
            Subst::Select(_, body) => body.collect_written(out),
        }
    }

    /// Identifiers read by guards, conditions and right-hand sides.
    pub fn read(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_read(&mut out);
        out
    }

    fn collect_read(&self, out: &mut BTreeSet<String>) {
        match self {
            Subst::Skip => {}
            Subst::Assign(_, e) => e.free_idents(out),
            Subst::Parallel(branches) => branches.iter().for_each(|b| b.collect_read(out)),
            Subst::If {
                cond,
                then,
                otherwise,
            } => {
                cond.collect_idents(out);
                then.collect_read(out);
                if let Some(o) = otherwise {
                    o.collect_read(out);
                }
            }
            Subst::Select(g, body) => {
                g.collect_idents(out);
                body.collect_read(out);
            }
        }
    }

    pub fn contains_select(&self) -> bool {
        match self {
            Subst::Select(..) => true,
            Subst::Skip | Subst::Assign(..) => false,
            Subst::Parallel(bs) => bs.iter().any(Subst::contains_select),
            Subst::If {
                then, otherwise, ..
            } => then.contains_select() || otherwise.as_ref().is_some_and(|o| o.contains_select()),
        }
    }
}
