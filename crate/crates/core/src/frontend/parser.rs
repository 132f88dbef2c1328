//! Recursive-descent parser for the ASCII B subset.
//!
//! Operator precedence, loosest first: `=>`, `or`, `&`; all three associate
//! to the left. `not` takes a parenthesized argument.

use std::collections::BTreeMap;

use super::error::{FrontendError, Pos};
use super::lexer::{tokenize, Tok, Token};
use super::model::{EnumSet, Event, MachineKind, MachineModel, SourceMap, StateDecl};
use crate::logic::{CmpOp, Domain, Expr, Pred, Subst};

const KEYWORDS: &[&str] = &[
    "MACHINE",
    "REFINEMENT",
    "REFINES",
    "SETS",
    "CONSTANTS",
    "PROPERTIES",
    "VARIABLES",
    "INVARIANT",
    "ASSERTIONS",
    "INITIALISATION",
    "OPERATIONS",
    "END",
    "SELECT",
    "THEN",
    "IF",
    "ELSE",
    "TRUE",
    "FALSE",
    "NAT",
    "skip",
    "or",
    "not",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    idents: BTreeMap<String, Pos>,
    clauses: BTreeMap<String, Pos>,
}

type PResult<T> = Result<T, FrontendError>;

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            i: 0,
            idents: BTreeMap::new(),
            clauses: BTreeMap::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(FrontendError::Syntax {
            pos: self.pos(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        })
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn at_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Tok::Sym(s) if *s == sym)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            let pos = self.pos();
            self.clauses.entry(kw.to_string()).or_insert(pos);
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        if self.at_sym(sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn expect_sym(&mut self, sym: &str) -> PResult<()> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            self.error(&format!("`{sym}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                let pos = self.pos();
                self.idents.entry(s.clone()).or_insert(pos);
                self.bump();
                Ok(s)
            }
            _ => self.error("identifier"),
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.ident()?];
        while self.eat_sym(",") {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn machine(&mut self) -> PResult<MachineModel> {
        let kind = if self.eat_kw("MACHINE") {
            MachineKind::Machine
        } else if self.eat_kw("REFINEMENT") {
            MachineKind::Refinement
        } else {
            return self.error("`MACHINE` or `REFINEMENT`");
        };
        let name = self.ident()?;
        let refines = if kind == MachineKind::Refinement {
            self.expect_kw("REFINES")?;
            Some(self.ident()?)
        } else {
            None
        };

        let mut sets = Vec::new();
        if self.eat_kw("SETS") {
            loop {
                let set = self.ident()?;
                self.expect_sym("=")?;
                self.expect_sym("{")?;
                let elements = self.ident_list()?;
                self.expect_sym("}")?;
                sets.push(EnumSet {
                    name: set,
                    elements,
                });
                if !self.eat_sym(";") {
                    break;
                }
            }
        }
        let constants = if self.eat_kw("CONSTANTS") {
            self.ident_list()?
        } else {
            Vec::new()
        };
        let properties = if self.eat_kw("PROPERTIES") {
            self.pred()?
        } else {
            Pred::True
        };
        self.expect_kw("VARIABLES")?;
        let variables = self.ident_list()?;
        self.expect_kw("INVARIANT")?;
        let invariant = self.pred()?;
        if !self.at_kw("ASSERTIONS") && self.at_kw("INITIALISATION") {
            return Err(FrontendError::MissingAssertions);
        }
        self.expect_kw("ASSERTIONS")?;
        let states = self.states()?;
        self.expect_kw("INITIALISATION")?;
        let initialisation = self.subst()?;
        self.expect_kw("OPERATIONS")?;
        let mut events = Vec::new();
        if !self.at_kw("END") {
            loop {
                events.push(self.event()?);
                if !self.eat_sym(";") {
                    break;
                }
            }
        }
        self.expect_kw("END")?;
        if *self.peek() != Tok::Eof {
            return self.error("end of input");
        }
        Ok(MachineModel {
            name,
            kind,
            refines,
            sets,
            constants,
            properties,
            variables,
            invariant,
            states,
            initialisation,
            events,
            source_map: SourceMap {
                clauses: std::mem::take(&mut self.clauses),
                idents: std::mem::take(&mut self.idents),
            },
        })
    }

    fn states(&mut self) -> PResult<Vec<StateDecl>> {
        let mut out = Vec::new();
        loop {
            let label = if matches!(self.peek_at(1), Tok::Sym("@")) {
                let l = self.ident()?;
                self.bump();
                Some(l)
            } else {
                None
            };
            self.expect_sym("(")?;
            let pred = self.pred()?;
            self.expect_sym(")")?;
            let name = label.unwrap_or_else(|| format!("S{}", out.len()));
            out.push(StateDecl { name, pred });
            if !self.eat_kw("or") {
                break;
            }
        }
        Ok(out)
    }

    fn event(&mut self) -> PResult<Event> {
        let name = self.ident()?;
        self.expect_sym("=")?;
        self.expect_kw("SELECT")?;
        let guard = self.pred()?;
        self.expect_kw("THEN")?;
        let action = self.subst()?;
        self.expect_kw("END")?;
        Ok(Event {
            name,
            guard,
            action,
        })
    }

    fn subst(&mut self) -> PResult<Subst> {
        let mut branches = vec![self.subst_atom()?];
        while self.eat_sym("||") {
            branches.push(self.subst_atom()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Subst::Parallel(branches)
        })
    }

    fn subst_atom(&mut self) -> PResult<Subst> {
        if self.eat_kw("skip") {
            return Ok(Subst::Skip);
        }
        if self.eat_kw("IF") {
            let cond = self.pred()?;
            self.expect_kw("THEN")?;
            let then = Box::new(self.subst()?);
            let otherwise = if self.eat_kw("ELSE") {
                Some(Box::new(self.subst()?))
            } else {
                None
            };
            self.expect_kw("END")?;
            return Ok(Subst::If {
                cond,
                then,
                otherwise,
            });
        }
        if matches!(self.peek(), Tok::Ident(s) if !is_keyword(s)) {
            let x = self.ident()?;
            self.expect_sym(":=")?;
            let e = self.expr()?;
            return Ok(Subst::Assign(x, e));
        }
        self.error("substitution (`skip`, `IF`, or assignment)")
    }

    fn pred(&mut self) -> PResult<Pred> {
        let mut lhs = self.disjunction()?;
        while self.eat_sym("=>") {
            lhs = lhs.implies(self.disjunction()?);
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Pred> {
        let mut lhs = self.conjunction()?;
        while self.eat_kw("or") {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Pred> {
        let mut lhs = self.unary()?;
        while self.eat_sym("&") {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Pred> {
        if self.eat_kw("not") {
            self.expect_sym("(")?;
            let p = self.pred()?;
            self.expect_sym(")")?;
            return Ok(p.not());
        }
        if self.eat_kw("TRUE") {
            return Ok(Pred::True);
        }
        if self.eat_kw("FALSE") {
            return Ok(Pred::False);
        }
        if self.at_sym("(") {
            // `(` opens either a predicate or an arithmetic operand
            let save = (self.i, self.idents.clone());
            self.bump();
            if let Ok(p) = self.pred() {
                if self.eat_sym(")") && !self.at_expr_continuation() {
                    return Ok(p);
                }
            }
            self.i = save.0;
            self.idents = save.1;
        }
        self.atom()
    }

    fn at_expr_continuation(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Sym("=" | "/=" | "<" | "<=" | ">" | ">=" | ":" | "+" | "-")
        )
    }

    fn atom(&mut self) -> PResult<Pred> {
        let lhs = self.expr()?;
        let op = match self.peek() {
            Tok::Sym("=") => CmpOp::Eq,
            Tok::Sym("/=") => CmpOp::Ne,
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym("<=") => CmpOp::Le,
            Tok::Sym(">") => CmpOp::Gt,
            Tok::Sym(">=") => CmpOp::Ge,
            Tok::Sym(":") => {
                self.bump();
                return Ok(Pred::In(lhs, self.domain()?));
            }
            _ => return self.error("comparison or `:`"),
        };
        self.bump();
        let rhs = self.expr()?;
        Ok(Pred::Cmp(op, lhs, rhs))
    }

    fn domain(&mut self) -> PResult<Domain> {
        if self.eat_kw("NAT") {
            return Ok(Domain::Nat);
        }
        let lo = self.expr()?;
        if self.eat_sym("..") {
            return Ok(Domain::Interval(lo, self.expr()?));
        }
        match lo {
            Expr::Ident(set) => Ok(Domain::Set(set)),
            _ => self.error("`..`"),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = lhs + self.term()?;
            } else if self.eat_sym("-") {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym("-") => {
                if let Tok::Int(n) = *self.peek_at(1) {
                    self.bump();
                    self.bump();
                    Ok(Expr::Int(-n))
                } else {
                    self.bump();
                    self.error("integer literal after unary `-`")
                }
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Tok::Ident(s) if !is_keyword(&s) => Ok(Expr::Ident(self.ident()?)),
            _ => self.error("expression"),
        }
    }
}

/// Parses a machine or refinement without semantic checks.
pub(crate) fn parse_raw(src: &str) -> Result<MachineModel, FrontendError> {
    Parser::new(src)?.machine()
}

/// Parses a standalone predicate. Set elements come back as identifiers;
/// see [`super::resolve_elements`].
pub fn parse_predicate(src: &str) -> Result<Pred, FrontendError> {
    let mut p = Parser::new(src)?;
    let pred = p.pred()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of predicate");
    }
    Ok(pred)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parenthesized_arithmetic_is_not_a_predicate() {
        let p = parse_predicate("(a+b)-1 < c & (x = 1)").unwrap();
        assert_eq!(p.to_string(), "a+b-1<c & x=1");
    }

    #[test]
    fn precedence() {
        let p = parse_predicate("a = 1 & b = 2 or c = 3 => d = 4").unwrap();
        let expected = parse_predicate("((a = 1 & b = 2) or c = 3) => d = 4").unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn membership_forms() {
        assert_eq!(
            parse_predicate("cc : -1..1").unwrap(),
            Pred::In(
                Expr::ident("cc"),
                Domain::Interval(Expr::Int(-1), Expr::Int(1))
            )
        );
        assert_eq!(
            parse_predicate("n : NAT").unwrap(),
            Pred::In(Expr::ident("n"), Domain::Nat)
        );
        assert_eq!(
            parse_predicate("feu : Couleur_feu").unwrap(),
            Pred::In(Expr::ident("feu"), Domain::Set("Couleur_feu".into()))
        );
    }

    #[test]
    fn nat_outside_membership_is_rejected() {
        assert!(parse_predicate("NAT = 1").is_err());
    }

    #[test]
    fn trailing_garbage() {
        let err = parse_predicate("x = 1 )").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 1, col: 7 }));
    }
}
