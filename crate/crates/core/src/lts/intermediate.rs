//! Line-oriented text format:
//!
//! ```text
//! LTS <machine-name>
//! STATE <name> [PARENT <name>] PRED <predicate> [EMPTY]
//! INIT <state-name> COND <predicate>
//! TRANS <src> <event> COND <predicate> [REDUCED] [DEFAULT] -> <dst>
//! ```

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use super::{InitialArrow, Level, Provenance, StateNode, SymbolicLts, Transition};
use crate::frontend::{parse_predicate, resolve_elements, Signature};
use crate::logic::Pred;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

pub fn emit_intermediate(l: &SymbolicLts) -> String {
    let mut out = format!("LTS {}\n", l.name);
    for s in &l.states {
        out.push_str("STATE ");
        out.push_str(&s.name);
        if let Some(p) = &s.parent {
            let _ = write!(out, " PARENT {p}");
        }
        let _ = write!(out, " PRED {}", s.predicate);
        if s.empty {
            out.push_str(" EMPTY");
        }
        out.push('\n');
    }
    for i in &l.initial {
        let _ = writeln!(out, "INIT {} COND {}", i.state, i.condition);
    }
    for t in &l.transitions {
        let _ = write!(out, "TRANS {} {} COND {}", t.src, t.event, t.condition);
        if t.reduced {
            out.push_str(" REDUCED");
        }
        if t.provenance == Provenance::Default {
            out.push_str(" DEFAULT");
        }
        let _ = writeln!(out, " -> {}", t.dst);
    }
    out
}

/// Parses the intermediate format. Set elements in predicates are
/// recognized through `sig`.
pub fn parse_intermediate(text: &str, sig: &Signature) -> Result<SymbolicLts, FormatError> {
    let elements = sig.elements();
    let mut lts: Option<SymbolicLts> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let n = i + 1;
        let err = |message: String| FormatError { line: n, message };
        let pred = |src: &str| {
            parse_predicate(src)
                .map(|p| resolve_elements(&p, &elements))
                .map_err(|e| err(format!("bad predicate `{src}`: {e}")))
        };
        let (keyword, rest) = line.split_once(' ').unwrap_or((line, ""));
        let Some(l) = lts.as_mut() else {
            if keyword != "LTS" || rest.is_empty() {
                return Err(err("expected `LTS <name>`".into()));
            }
            lts = Some(SymbolicLts {
                name: rest.to_string(),
                ..SymbolicLts::default()
            });
            continue;
        };
        match keyword {
            "STATE" => {
                let (name, mut rest) =
                    word(rest).ok_or_else(|| err("missing state name".into()))?;
                let mut parent = None;
                if let Some(after) = rest.strip_prefix("PARENT ") {
                    let (p, r) = word(after).ok_or_else(|| err("missing parent name".into()))?;
                    parent = Some(p.to_string());
                    rest = r;
                }
                let body = rest
                    .strip_prefix("PRED ")
                    .ok_or_else(|| err("expected `PRED`".into()))?;
                let (body, empty) = strip_flag(body, "EMPTY");
                l.states.push(StateNode {
                    name: name.to_string(),
                    predicate: pred(body)?,
                    parent,
                    level: Level::Concrete,
                    empty,
                });
            }
            "INIT" => {
                let (state, rest) = word(rest).ok_or_else(|| err("missing state name".into()))?;
                let body = rest
                    .strip_prefix("COND ")
                    .ok_or_else(|| err("expected `COND`".into()))?;
                l.initial.push(InitialArrow {
                    state: state.to_string(),
                    condition: pred(body)?,
                });
            }
            "TRANS" => {
                let (left, dst) = rest
                    .rsplit_once(" -> ")
                    .ok_or_else(|| err("expected `-> <dst>`".into()))?;
                let (src, r) = word(left).ok_or_else(|| err("missing source".into()))?;
                let (event, r) = word(r).ok_or_else(|| err("missing event".into()))?;
                let body = r
                    .strip_prefix("COND ")
                    .ok_or_else(|| err("expected `COND`".into()))?;
                let (body, default) = strip_flag(body, "DEFAULT");
                let (body, reduced) = strip_flag(body, "REDUCED");
                let condition = pred(body)?;
                if reduced && condition != Pred::True {
                    return Err(err("a REDUCED transition must have condition TRUE".into()));
                }
                l.transitions.push(Transition {
                    src: src.to_string(),
                    event: event.to_string(),
                    condition,
                    reduced,
                    provenance: if default {
                        Provenance::Default
                    } else {
                        Provenance::Proven
                    },
                    dst: dst.trim().to_string(),
                });
            }
            other => return Err(err(format!("unknown record `{other}`"))),
        }
    }
    let mut lts = lts.ok_or(FormatError {
        line: 1,
        message: "empty input".into(),
    })?;
    validate(&lts)?;
    if lts.is_hierarchical() {
        for s in &mut lts.states {
            if s.parent.is_none() {
                s.level = Level::Abstract;
            }
        }
    }
    Ok(lts)
}

fn word(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    if s.is_empty() {
        return None;
    }
    Some(s.split_once(' ').unwrap_or((s, "")))
}

fn strip_flag<'a>(s: &'a str, flag: &str) -> (&'a str, bool) {
    match s.strip_suffix(flag) {
        Some(rest) if rest.ends_with(' ') => (rest.trim_end(), true),
        _ => (s, false),
    }
}

fn validate(l: &SymbolicLts) -> Result<(), FormatError> {
    let fail = |message: String| Err(FormatError { line: 0, message });
    let mut names = BTreeSet::new();
    for s in &l.states {
        if !names.insert(s.name.as_str()) {
            return fail(format!("duplicate state `{}`", s.name));
        }
    }
    for s in &l.states {
        if let Some(p) = &s.parent {
            match l.state(p) {
                Some(parent) if parent.parent.is_none() => {}
                Some(_) => return fail(format!("parent `{p}` of `{}` is itself nested", s.name)),
                None => return fail(format!("unknown parent `{p}` of `{}`", s.name)),
            }
        }
    }
    for i in &l.initial {
        if !names.contains(i.state.as_str()) {
            return fail(format!("unknown initial state `{}`", i.state));
        }
    }
    for t in &l.transitions {
        for s in [&t.src, &t.dst] {
            if !names.contains(s.as_str()) {
                return fail(format!("transition on unknown state `{s}`"));
            }
        }
    }
    Ok(())
}
