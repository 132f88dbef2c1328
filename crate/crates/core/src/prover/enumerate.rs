//! Bounded enumeration of valuations.
//!
//! Identifiers are assigned constants first, then variables, each over a
//! finite domain taken from the formula itself (a top-level `x : lo..hi`,
//! `x = e` or `x : SET` conjunct evaluable under the values chosen so far,
//! or the sort of an enumerated identifier) or from the configured bounds.
//! A search that only used domains of the first kind and found nothing is
//! a proof of unsatisfiability; anything involving configured bounds is not.

use std::collections::BTreeSet;
use std::time::Instant;

use super::{ProverConfig, ProverError};
use crate::frontend::Signature;
use crate::logic::{eval_expr, evaluate, CmpOp, Domain, Expr, Pred, Valuation, Value};

const MAX_DOMAIN: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(Valuation),
    /// No valuation satisfies the formula within the domains searched.
    Exhausted {
        bound_independent: bool,
    },
    /// Out of time, or some identifier has no finite domain and no bound
    /// was requested.
    Unknown,
}

struct Search<'a> {
    sig: &'a Signature,
    cfg: &'a ProverConfig,
    formula: &'a Pred,
    conjuncts: Vec<(&'a Pred, BTreeSet<String>)>,
    deadline: Instant,
    independent: bool,
}

/// Searches for a valuation of `names` (which must include every free
/// identifier of `f`) satisfying `f`.
pub(crate) fn search(
    f: &Pred,
    names: &BTreeSet<String>,
    sig: &Signature,
    cfg: &ProverConfig,
    deadline: Instant,
) -> Result<Outcome, ProverError> {
    let mut order: Vec<String> = sig
        .identifiers()
        .filter(|x| names.contains(*x))
        .cloned()
        .collect();
    let undeclared: Vec<String> = names
        .iter()
        .filter(|x| !order.contains(x))
        .cloned()
        .collect();
    order.extend(undeclared);
    let conjuncts = f
        .conjuncts()
        .into_iter()
        .map(|c| (c, c.free_idents()))
        .collect();
    let mut s = Search {
        sig,
        cfg,
        formula: f,
        conjuncts,
        deadline,
        independent: true,
    };
    match s.extend(&Valuation::new(), &order)? {
        Some(Some(v)) => Ok(Outcome::Found(v)),
        Some(None) => Ok(Outcome::Exhausted {
            bound_independent: s.independent,
        }),
        None => Ok(Outcome::Unknown),
    }
}

impl Search<'_> {
    /// `None` when the search had to stop, `Some(None)` when exhausted.
    fn extend(
        &mut self,
        v: &Valuation,
        rest: &[String],
    ) -> Result<Option<Option<Valuation>>, ProverError> {
        if Instant::now() > self.deadline {
            return Ok(None);
        }
        if rest.is_empty() {
            return Ok(Some(match evaluate(self.formula, v) {
                Ok(true) => Some(v.clone()),
                Ok(false) => None,
                Err(_) => {
                    self.independent = false;
                    None
                }
            }));
        }
        let mut chosen = None;
        for (i, x) in rest.iter().enumerate() {
            if let Some(d) = self.domain(x, v) {
                chosen = Some((i, d));
                break;
            }
        }
        let Some((i, (values, independent))) = chosen else {
            return if self.cfg.enumeration_enabled() {
                Err(ProverError::MissingBound(rest[0].clone()))
            } else {
                Ok(None)
            };
        };
        self.independent &= independent;
        let x = &rest[i];
        let remaining: Vec<String> = rest.iter().filter(|y| *y != x).cloned().collect();
        for value in values {
            let next = v.clone().with(x.clone(), value);
            if self.pruned(&next, x) {
                continue;
            }
            match self.extend(&next, &remaining)? {
                Some(None) => {}
                other => return Ok(other),
            }
        }
        Ok(Some(None))
    }

    /// Some conjunct mentioning `x` and fully assigned is false.
    fn pruned(&mut self, v: &Valuation, x: &str) -> bool {
        self.conjuncts.iter().any(|(c, idents)| {
            idents.contains(x)
                && idents.iter().all(|y| v.get(y).is_some())
                && !matches!(evaluate(c, v), Ok(true))
        })
    }

    /// Candidate values for `x` and whether they are independent of the
    /// configured bounds.
    fn domain(&self, x: &str, v: &Valuation) -> Option<(Vec<Value>, bool)> {
        if let Some(d) = self.sig.enum_domain(x) {
            return Some((d, true));
        }
        let own = self.formula_range(x, v);
        let configured = self.configured(x);
        match (own, configured) {
            (Some((lo, hi)), Some(cfg)) => {
                let inside: Vec<i64> = cfg
                    .iter()
                    .copied()
                    .filter(|n| (lo..=hi).contains(n))
                    .collect();
                let covers = (lo..=hi).all(|n| inside.contains(&n));
                Some((inside.into_iter().map(Value::Int).collect(), covers))
            }
            (Some((lo, hi)), None) => Some(((lo..=hi).map(Value::Int).collect(), true)),
            (None, Some(cfg)) => Some((cfg.into_iter().map(Value::Int).collect(), false)),
            (None, None) => {
                let set = self.conjuncts.iter().find_map(|(c, _)| match c {
                    Pred::In(Expr::Ident(y), Domain::Set(s)) if y == x => Some(s),
                    _ => None,
                })?;
                let elements = &self.sig.set(set)?.elements;
                Some((
                    elements.iter().map(|e| Value::Elem(e.clone())).collect(),
                    true,
                ))
            }
        }
    }

    fn configured(&self, x: &str) -> Option<Vec<i64>> {
        if let Some(c) = self.cfg.constant_bounds.get(x) {
            return Some(c.clone());
        }
        self.cfg
            .variable_bounds
            .get(x)
            .map(|&(lo, hi)| (lo..=hi).collect())
    }

    /// Intersection of the ranges imposed on `x` by top-level conjuncts.
    fn formula_range(&self, x: &str, v: &Valuation) -> Option<(i64, i64)> {
        let int = |e: &Expr| match eval_expr(e, v) {
            Ok(Value::Int(n)) => Some(n),
            _ => None,
        };
        let mut range: Option<(i64, i64)> = None;
        let mut meet = |lo: i64, hi: i64| {
            range = Some(match range {
                Some((a, b)) => (a.max(lo), b.min(hi)),
                None => (lo, hi),
            });
        };
        for (c, _) in &self.conjuncts {
            match c {
                Pred::In(Expr::Ident(y), Domain::Interval(lo, hi)) if y == x => {
                    if let (Some(lo), Some(hi)) = (int(lo), int(hi)) {
                        meet(lo, hi);
                    }
                }
                Pred::Cmp(CmpOp::Eq, Expr::Ident(y), e)
                | Pred::Cmp(CmpOp::Eq, e, Expr::Ident(y))
                    if y == x =>
                {
                    if let Some(n) = int(e) {
                        meet(n, n);
                    }
                }
                _ => {}
            }
        }
        let (lo, hi) = range?;
        (hi.saturating_sub(lo) < MAX_DOMAIN).then_some((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_predicate;
    use std::time::Duration;

    fn run(src: &str, cfg: &ProverConfig) -> Result<Outcome, ProverError> {
        let p = parse_predicate(src).unwrap();
        let later = Instant::now() + Duration::from_secs(5);
        search(&p, &p.free_idents(), &Signature::default(), cfg, later)
    }

    #[test]
    fn finds_witness_in_formula_ranges() {
        let out = run("x : 0..3 & y : 0..x & y > 2", &ProverConfig::default()).unwrap();
        let Outcome::Found(v) = out else {
            panic!("{out:?}")
        };
        assert_eq!(v.to_string(), "{x=3, y=3}");
    }

    #[test]
    fn exhaustion_is_independent_only_without_bounds() {
        let free = run("x : 0..3 & x > 5", &ProverConfig::default()).unwrap();
        assert_eq!(
            free,
            Outcome::Exhausted {
                bound_independent: true
            }
        );
        let mut cfg = ProverConfig::default();
        cfg.constant_bounds.insert("n".into(), vec![1, 2]);
        let bounded = run("n > 0 & x : 0..n & x > 5", &cfg).unwrap();
        assert_eq!(
            bounded,
            Outcome::Exhausted {
                bound_independent: false
            }
        );
    }

    #[test]
    fn missing_domain() {
        assert_eq!(
            run("x > 5", &ProverConfig::default()).unwrap(),
            Outcome::Unknown
        );
        let mut cfg = ProverConfig::default();
        cfg.constant_bounds.insert("n".into(), vec![1]);
        assert!(matches!(
            run("x > n", &cfg),
            Err(ProverError::MissingBound(x)) if x == "x"
        ));
    }
}
