//! ASCII rendering in the same concrete syntax the frontend parses.
//!
//! Parentheses are emitted only where precedence or associativity requires
//! them, so `parse(print(p)) == p` holds structurally.

use std::fmt;

use super::ast::{Domain, Expr, Pred, Subst};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(x) | Expr::Elem(x) => f.write_str(x),
            Expr::Add(a, b) => write_binary(f, a, "+", b),
            Expr::Sub(a, b) => write_binary(f, a, "-", b),
        }
    }
}

fn write_binary(f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr) -> fmt::Result {
    write!(f, "{a}{op}")?;
    if matches!(b, Expr::Add(..) | Expr::Sub(..)) {
        write!(f, "({b})")
    } else {
        write!(f, "{b}")
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Interval(lo, hi) => write!(f, "{lo}..{hi}"),
            Domain::Nat => f.write_str("NAT"),
            Domain::Set(s) => f.write_str(s),
        }
    }
}

fn precedence(p: &Pred) -> u8 {
    match p {
        Pred::Implies(..) => 1,
        Pred::Or(..) => 2,
        Pred::And(..) => 3,
        _ => 4,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, p: &Pred, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pred::True => f.write_str("TRUE"),
            Pred::False => f.write_str("FALSE"),
            Pred::Cmp(op, a, b) => write!(f, "{a}{}{b}", op.symbol()),
            Pred::In(e, d) => write!(f, "{e} : {d}"),
            Pred::Not(p) => write!(f, "not({p})"),
            Pred::And(a, b) | Pred::Or(a, b) | Pred::Implies(a, b) => {
                let prec = precedence(self);
                let op = match self {
                    Pred::And(..) => " & ",
                    Pred::Or(..) => " or ",
                    _ => " => ",
                };
                // all three connectives associate to the left
                write_operand(f, a, precedence(a) < prec)?;
                f.write_str(op)?;
                write_operand(f, b, precedence(b) <= prec)
            }
        }
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subst::Skip => f.write_str("skip"),
            Subst::Assign(x, e) => write!(f, "{x} := {e}"),
            Subst::Parallel(branches) => {
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" || ")?;
                    }
                    write!(f, "{b}")?;
                }
                Ok(())
            }
            Subst::If {
                cond,
                then,
                otherwise: None,
            } => write!(f, "IF {cond} THEN {then} END"),
            Subst::If {
                cond,
                then,
                otherwise: Some(o),
            } => write!(f, "IF {cond} THEN {then} ELSE {o} END"),
            Subst::Select(g, body) => write!(f, "SELECT {g} THEN {body} END"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ast::CmpOp;

    fn id(s: &str) -> Expr {
        Expr::ident(s)
    }

    #[test]
    fn comparisons_print_compactly() {
        let p = Pred::cmp(CmpOp::Lt, id("NbVoit"), id("NbPlaces"));
        assert_eq!(p.to_string(), "NbVoit<NbPlaces");
        assert_eq!(Pred::eq(id("cc"), Expr::Int(-1)).to_string(), "cc=-1");
    }

    #[test]
    fn nesting_gets_parentheses() {
        let a = Pred::eq(id("a"), Expr::Int(0));
        let b = Pred::eq(id("b"), Expr::Int(0));
        let c = Pred::eq(id("c"), Expr::Int(0));
        assert_eq!(
            a.clone().and(b.clone()).and(c.clone()).to_string(),
            "a=0 & b=0 & c=0"
        );
        assert_eq!(
            a.clone().and(b.clone().and(c.clone())).to_string(),
            "a=0 & (b=0 & c=0)"
        );
        assert_eq!(
            a.clone().or(b.clone()).and(c.clone()).to_string(),
            "(a=0 or b=0) & c=0"
        );
        assert_eq!(
            a.clone().and(b.clone()).implies(c).to_string(),
            "a=0 & b=0 => c=0"
        );
        assert_eq!(a.not().to_string(), "not(a=0)");
        let e = id("x") - (id("y") + Expr::Int(1));
        assert_eq!(e.to_string(), "x-(y+1)");
    }

    #[test]
    fn substitutions() {
        let s = Subst::Parallel(vec![
            Subst::If {
                cond: Pred::eq(id("NbVoit"), id("NbPlaces")),
                then: Box::new(Subst::assign("feu", Expr::elem("rouge"))),
                otherwise: None,
            },
            Subst::assign("cc", Expr::Int(0)),
        ]);
        assert_eq!(
            s.to_string(),
            "IF NbVoit=NbPlaces THEN feu := rouge END || cc := 0"
        );
    }
}
