use std::fmt::Write;

use thiserror::Error;

use super::SymbolicLts;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("AUT allows one initial state but {} are initial: {}", .0.len(), .0.join(", "))]
    MultipleInitial(Vec<String>),
}

/// Aldebaran rendering over the concrete level, states numbered in
/// declaration order. With several initial states the first is the root
/// when `allow_multiple_initial` is set; an LTS without initial state is
/// rooted at state 0.
pub fn emit_aut(l: &SymbolicLts, allow_multiple_initial: bool) -> Result<String, AutError> {
    let states: Vec<&str> = l.concrete_states().map(|s| s.name.as_str()).collect();
    let index = |name: &str| states.iter().position(|s| *s == name);
    if l.initial.len() > 1 && !allow_multiple_initial {
        return Err(AutError::MultipleInitial(
            l.initial.iter().map(|i| i.state.clone()).collect(),
        ));
    }
    let root = l.initial.first().and_then(|i| index(&i.state)).unwrap_or(0);
    let edges: Vec<_> = l
        .transitions
        .iter()
        .filter_map(|t| Some((index(&t.src)?, t.label(), index(&t.dst)?)))
        .collect();
    let mut out = format!("des ({root}, {}, {})\n", edges.len(), states.len());
    for (src, label, dst) in edges {
        let _ = writeln!(out, "({src}, \"{}\", {dst})", label.replace('"', "\\\""));
    }
    Ok(out)
}
