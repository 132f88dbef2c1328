//! Independent check of prover verdicts by brute force over the parking
//! models at NbPlaces <= 3.
#![allow(dead_code)]

use ltsgen_core::frontend::MachineModel;
use ltsgen_core::logic::{evaluate, Valuation, Value};
use ltsgen_core::lts::BuildReport;
use ltsgen_core::prover::Verdict;

/// Every valuation with NbPlaces in 1..3 and the variables in a range
/// wider than the invariant allows.
pub fn universe(m: &MachineModel) -> Vec<Valuation> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for voit in -1..=4 {
            for cc in -2..=2 {
                let v = Valuation::new()
                    .with("NbPlaces", Value::Int(n))
                    .with("NbVoit", Value::Int(voit))
                    .with("cc", Value::Int(cc));
                if m.variables.iter().any(|x| x == "feu") {
                    for feu in ["vert", "rouge"] {
                        out.push(v.clone().with("feu", Value::Elem(feu.into())));
                    }
                } else {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Number of verdicts checked, or the first one that does not hold up.
pub fn check_report(m: &MachineModel, report: &BuildReport) -> Result<usize, String> {
    let all = universe(m);
    let holds = |p, v: &Valuation| evaluate(p, v).map_err(|e| e.to_string());
    let mut checked = 0;
    for r in &report.obligations {
        match r.result.verdict {
            Verdict::Valid => {
                if r.result.counterexample.is_some() {
                    return Err(format!("{} is valid with a counterexample", r.po.id));
                }
                for v in &all {
                    if holds(&r.po.hypothesis, v)? && !holds(&r.po.goal, v)? {
                        return Err(format!("{} is valid but fails at {v}", r.po.id));
                    }
                }
                checked += 1;
            }
            Verdict::Invalid => {
                let Some(cex) = &r.result.counterexample else {
                    return Err(format!("{} is invalid without a counterexample", r.po.id));
                };
                if !holds(&r.po.hypothesis, cex)? || holds(&r.po.goal, cex)? {
                    return Err(format!(
                        "{} counterexample {cex} does not refute it",
                        r.po.id
                    ));
                }
                checked += 1;
            }
            Verdict::Unknown => {}
        }
    }
    Ok(checked)
}
