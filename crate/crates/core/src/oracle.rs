//! Explicit-state ground truth: breadth-first exploration of an
//! instantiation and conformance of a symbolic LTS against it.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::exec::Exec;
use crate::frontend::MachineModel;
use crate::logic::{evaluate, exec, LogicError, Valuation};
use crate::lts::SymbolicLts;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitLts {
    /// BFS order from the initial valuation, which is node 0. Each node
    /// carries the constants as well as the variables.
    pub nodes: Vec<Valuation>,
    /// `(source index, event, target index)`
    pub edges: Vec<(usize, String, usize)>,
}

impl ExplicitLts {
    pub fn initial(&self) -> &Valuation {
        &self.nodes[0]
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("more than {0} reachable states")]
    StateLimitExceeded(usize),
    #[error("invariant violated at {valuation}{}", after_event(.event))]
    InvariantViolation {
        valuation: Valuation,
        event: Option<String>,
    },
    #[error("constants {0} violate the properties")]
    PropertiesViolated(Valuation),
    #[error("initialisation is blocked")]
    InitialisationBlocked,
    #[error("{} symbolic states hold at {valuation}: {}", .states.len(), .states.join(", "))]
    MapNotUnique {
        valuation: Valuation,
        states: Vec<String>,
    },
    #[error(transparent)]
    Logic(#[from] LogicError),
}

fn after_event(e: &Option<String>) -> String {
    match e {
        Some(e) => format!(" after `{e}`"),
        None => " after initialisation".into(),
    }
}

pub fn explore(
    m: &MachineModel,
    constants: &Valuation,
    max_states: usize,
) -> Result<ExplicitLts, OracleError> {
    if !evaluate(&m.properties, constants)? {
        return Err(OracleError::PropertiesViolated(constants.clone()));
    }
    let init = exec(&m.initialisation, constants)?.ok_or(OracleError::InitialisationBlocked)?;
    let mut x = ExplicitLts {
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    let mut index: HashMap<Valuation, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let mut admit = |v: Valuation,
                     event: Option<&str>,
                     x: &mut ExplicitLts,
                     queue: &mut VecDeque<usize>|
     -> Result<usize, OracleError> {
        if let Some(&i) = index.get(&v) {
            return Ok(i);
        }
        if !evaluate(&m.invariant, &v)? {
            return Err(OracleError::InvariantViolation {
                valuation: v,
                event: event.map(str::to_string),
            });
        }
        if x.nodes.len() >= max_states {
            return Err(OracleError::StateLimitExceeded(max_states));
        }
        let i = x.nodes.len();
        index.insert(v.clone(), i);
        x.nodes.push(v);
        queue.push_back(i);
        Ok(i)
    };

    admit(init, None, &mut x, &mut queue)?;
    while let Some(i) = queue.pop_front() {
        for e in &m.events {
            let v = x.nodes[i].clone();
            if !evaluate(&e.guard, &v)? {
                continue;
            }
            let Some(next) = exec(&e.action, &v)? else {
                continue;
            };
            let j = admit(next, Some(&e.name), &mut x, &mut queue)?;
            x.edges.push((i, e.name.clone(), j));
        }
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    /// `CHECK <kind> <PASS|FAIL|WARN> <detail>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {} {}", self.kind, self.status, self.detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConformanceReport {
    pub checks: Vec<Check>,
    /// Indices into the symbolic transitions witnessed by some edge.
    pub witnessed: BTreeSet<usize>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for ConformanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The unique concrete-level symbolic state holding at `v`.
pub fn state_of(s: &SymbolicLts, v: &Valuation) -> Result<String, OracleError> {
    let mut holding = Vec::new();
    for st in s.concrete_states() {
        if evaluate(&st.predicate, v)? {
            holding.push(st.name.clone());
        }
    }
    if holding.len() == 1 {
        Ok(holding.remove(0))
    } else {
        Err(OracleError::MapNotUnique {
            valuation: v.clone(),
            states: holding,
        })
    }
}

/// Checks `s` against `x`, explored from an instantiation of the machine
/// `s` was built from: every
/// explicit edge must be matched by a symbolic transition whose condition
/// holds, the initial valuation must lie in an initial state, and every
/// symbolic transition not witnessed here is listed as a warning.
pub fn conformance(
    x: &ExplicitLts,
    s: &SymbolicLts,
    mode: Exec,
) -> Result<ConformanceReport, OracleError> {
    let q = x
        .nodes
        .iter()
        .map(|v| state_of(s, v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = ConformanceReport::default();

    let matched = mode.map(
        &x.edges,
        |(i, e, j)| -> Result<Option<usize>, OracleError> {
            let v = &x.nodes[*i];
            for (k, t) in s.transitions.iter().enumerate() {
                if t.src == q[*i] && t.event == *e && t.dst == q[*j] && evaluate(&t.condition, v)? {
                    return Ok(Some(k));
                }
            }
            Ok(None)
        },
    );
    let mut unsound = 0;
    for ((i, e, j), found) in x.edges.iter().zip(matched) {
        match found? {
            Some(k) => {
                report.witnessed.insert(k);
            }
            None => {
                unsound += 1;
                report.checks.push(Check {
                    kind: "soundness",
                    status: Status::Fail,
                    detail: format!(
                        "{} --{e}--> {} has no symbolic transition {} --{e}--> {} enabled at {}",
                        x.nodes[*i], x.nodes[*j], q[*i], q[*j], x.nodes[*i]
                    ),
                });
            }
        }
    }
    if unsound == 0 {
        report.checks.push(Check {
            kind: "soundness",
            status: Status::Pass,
            detail: format!("{} edges over {} states", x.edges.len(), x.nodes.len()),
        });
    }

    let init = &q[0];
    let initial_ok = s
        .initial
        .iter()
        .filter(|a| &a.state == init)
        .map(|a| evaluate(&a.condition, x.initial()))
        .collect::<Result<Vec<_>, _>>()?
        .contains(&true);
    report.checks.push(Check {
        kind: "initial",
        status: if initial_ok {
            Status::Pass
        } else {
            Status::Fail
        },
        detail: format!("{} lies in {init}", x.initial()),
    });

    for (k, t) in s.transitions.iter().enumerate() {
        if !report.witnessed.contains(&k) {
            report.checks.push(Check {
                kind: "coverage",
                status: Status::Warn,
                detail: format!("{} --{}--> {} not witnessed", t.src, t.label(), t.dst),
            });
        }
    }

    let mut has_successor = vec![false; x.nodes.len()];
    for (i, _, _) in &x.edges {
        has_successor[*i] = true;
    }
    for (i, live) in has_successor.iter().enumerate() {
        if !live {
            report.checks.push(Check {
                kind: "deadlock",
                status: Status::Warn,
                detail: format!("no event enabled at {} (state {})", x.nodes[i], q[i]),
            });
        }
    }
    Ok(report)
}
