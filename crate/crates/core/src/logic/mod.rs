//! Predicates, expressions and substitutions, with their weakest-precondition
//! calculus, simplifier and concrete semantics.

pub mod ast;
mod error;
pub mod eval;
pub mod linear;
mod print;
pub mod simplify;
pub mod subst;
pub mod wp;

pub use ast::{CmpOp, Domain, Expr, Pred, Subst, Valuation, Value};
pub use error::LogicError;
pub use eval::{eval_expr, evaluate, exec};
pub use simplify::{fold, simplify};
pub use subst::{substitute, Bindings};
pub use wp::wp;
