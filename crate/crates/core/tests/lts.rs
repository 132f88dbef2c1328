mod common;

use common::{parking, parking_lts, parking_r1, parking_r1_lts, places, PARKING};
use ltsgen_core::exec::Exec;
use ltsgen_core::frontend;
use ltsgen_core::logic::Pred;
use ltsgen_core::lts::{
    self, emit_aut, emit_dot, emit_intermediate, parse_intermediate, AutError, BuildOptions, Level,
    LtsError, Provenance, SymbolicLts,
};
use ltsgen_core::prover::{Prover, ProverConfig, Verdict};

fn edges(l: &SymbolicLts) -> Vec<String> {
    l.transitions
        .iter()
        .map(|t| format!("{} {} {}", t.src, t.label(), t.dst))
        .collect()
}

#[test]
fn parking_states_and_transitions() {
    let (l, report) = parking_lts(&places(&[1, 2, 3]));
    assert_eq!(l.states.len(), 3);
    assert_eq!(l.initial.len(), 1);
    assert_eq!(l.initial[0].state, "S1");
    assert_eq!(
        edges(&l),
        [
            "S0 controler_sortie [] S1",
            "S1 entrer [NbVoit<NbPlaces] S2",
            "S1 sortir [NbVoit>0] S0",
            "S2 controler_entree [] S1",
        ]
    );
    assert!(l
        .transitions
        .iter()
        .all(|t| t.provenance == Provenance::Proven));
    assert!(report.warnings.is_empty());
    assert_eq!(report.count(Verdict::Unknown), 0);
}

#[test]
fn enabledness_examples() {
    let (_, report) = parking_lts(&places(&[1, 2, 3]));
    let verdict = |id: &str| {
        report
            .obligations
            .iter()
            .find(|r| r.po.id == id)
            .unwrap_or_else(|| panic!("no {id}"))
            .result
            .verdict
    };
    assert_eq!(
        verdict("enabled_always.S2.controler_entree"),
        Verdict::Valid
    );
    assert_eq!(verdict("enabled_always.S1.entrer"), Verdict::Invalid);
    assert_eq!(verdict("enabled_never.S1.entrer"), Verdict::Invalid);
    assert_eq!(verdict("enabled_never.S2.sortir"), Verdict::Valid);
    assert_eq!(verdict("reach_exists.S1.entrer.S1"), Verdict::Valid);
    assert_eq!(
        verdict("reach_total.S0.controler_sortie.S1"),
        Verdict::Valid
    );
    // Never pairs get no reach obligations
    assert!(report
        .obligations
        .iter()
        .all(|r| !r.po.id.starts_with("reach_exists.S2.sortir.")));
}

#[test]
fn parking_formats() {
    let (l, _) = parking_lts(&places(&[1, 2, 3]));
    let text = emit_intermediate(&l);
    assert_eq!(text.lines().filter(|s| s.starts_with("STATE ")).count(), 3);
    assert_eq!(text.lines().filter(|s| s.starts_with("INIT ")).count(), 1);
    assert_eq!(text.lines().filter(|s| s.starts_with("TRANS ")).count(), 4);

    let dot = emit_dot(&l);
    assert_eq!(dot.matches("[label=\"S").count(), 3);
    assert_eq!(dot.matches("__init -> ").count(), 1);
    assert_eq!(dot.matches("\" -> \"").count(), 4);
    assert!(dot.contains("\"S1\" -> \"S2\" [label=\"entrer [NbVoit<NbPlaces]\"]"));

    let aut = emit_aut(&l, false).unwrap();
    assert!(aut.starts_with("des (1, 4, 3)\n"));
    assert!(aut.contains("(1, \"entrer [NbVoit<NbPlaces]\", 2)"));
    assert!(aut.contains("(2, \"controler_entree []\", 1)"));
}

#[test]
fn intermediate_round_trip() {
    let (flat, _) = parking_lts(&places(&[1, 2, 3]));
    let sig = parking().signature();
    assert_eq!(
        parse_intermediate(&emit_intermediate(&flat), &sig).unwrap(),
        flat
    );

    let (refined, _) = parking_r1_lts(&places(&[1, 2, 3]));
    let sig = parking_r1().concrete.signature();
    let back = parse_intermediate(&emit_intermediate(&refined), &sig).unwrap();
    assert_eq!(back, refined);

    let empty = SymbolicLts {
        name: "void".into(),
        ..SymbolicLts::default()
    };
    assert_eq!(emit_intermediate(&empty), "LTS void\n");
    assert_eq!(parse_intermediate("LTS void\n", &sig).unwrap(), empty);
}

#[test]
fn intermediate_rejects_bad_input() {
    let sig = parking().signature();
    for bad in [
        "",
        "STATE S0 PRED TRUE",
        "LTS x\nSTATE S0 PRED cc=\n",
        "LTS x\nSTATE S0 PRED TRUE\nTRANS S0 e COND TRUE -> S9\n",
        "LTS x\nSTATE S0 PRED TRUE\nSTATE S0 PRED TRUE\n",
        "LTS x\nSTATE S0 PRED TRUE\nTRANS S0 e COND cc=0 REDUCED -> S0\n",
        "LTS x\nBOGUS\n",
    ] {
        assert!(parse_intermediate(bad, &sig).is_err(), "accepted {bad:?}");
    }
}

#[test]
fn refined_hierarchy() {
    let (l, report) = parking_r1_lts(&places(&[1, 2, 3]));
    let parents: Vec<_> = l
        .concrete_states()
        .map(|s| (s.predicate.to_string(), s.parent.clone().unwrap()))
        .collect();
    assert_eq!(
        parents,
        [
            ("cc=0 & feu=vert".to_string(), "parking.S1".to_string()),
            ("cc=0 & feu=rouge".into(), "parking.S1".into()),
            ("cc=1 & feu=vert".into(), "parking.S2".into()),
            ("cc=-1 & feu=vert".into(), "parking.S0".into()),
            ("cc=-1 & feu=rouge".into(), "parking.S0".into()),
        ]
    );
    assert_eq!(
        l.states
            .iter()
            .filter(|s| s.level == Level::Abstract)
            .count(),
        3
    );

    let entrer: Vec<_> = l
        .transitions
        .iter()
        .filter(|t| t.event == "entrer")
        .collect();
    assert_eq!(entrer.len(), 1);
    assert_eq!(entrer[0].src, "S0");

    let split: Vec<_> = l
        .transitions
        .iter()
        .filter(|t| t.event == "controler_entree")
        .map(|t| (t.dst.as_str(), t.condition.to_string()))
        .collect();
    assert_eq!(
        split,
        [
            ("S0", "NbVoit<NbPlaces".to_string()),
            ("S1", "NbVoit=NbPlaces".to_string())
        ]
    );
    assert!(report.warnings.is_empty(), "{:?}", report.warnings);

    let dot = emit_dot(&l);
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    let aut = emit_aut(&l, false).unwrap();
    assert!(aut.starts_with("des (0, 7, 5)\n"));
}

#[test]
fn degenerate_single_state() {
    let src = "MACHINE one VARIABLES x INVARIANT x : 0..1 ASSERTIONS (TRUE) \
               INITIALISATION x := 0 OPERATIONS tick = SELECT TRUE THEN skip END END";
    let m = frontend::parse(src).unwrap();
    let p = Prover::new(m.signature(), ProverConfig::default());
    let (l, _) = lts::build(&m, &p, BuildOptions::default()).unwrap();
    assert_eq!(l.states.len(), 1);
    assert_eq!(edges(&l), ["S0 tick [] S0"]);
    assert_eq!(l.transitions[0].provenance, Provenance::Proven);

    let quiet = "MACHINE one VARIABLES x INVARIANT x : 0..1 ASSERTIONS (TRUE) \
                 INITIALISATION x := 0 OPERATIONS END";
    let m = frontend::parse(quiet).unwrap();
    let (l, _) = lts::build(&m, &p, BuildOptions::default()).unwrap();
    assert_eq!(emit_aut(&l, false).unwrap(), "des (0, 0, 1)\n");
}

#[test]
fn withheld_bounds_give_default_transitions() {
    let (l, report) = parking_lts(&ProverConfig::default());
    assert_eq!(l.transitions.len(), 4);
    assert!(l
        .transitions
        .iter()
        .all(|t| t.provenance == Provenance::Default));
    assert!(report.count(Verdict::Unknown) > 0);
    assert!(emit_dot(&l).contains("style=dashed"));
    assert!(emit_intermediate(&l).contains(" DEFAULT -> "));
}

#[test]
fn reduced_iff_both_proofs_valid() {
    let (l, report) = parking_r1_lts(&places(&[1, 2, 3]));
    let verdict = |id: String| {
        report
            .obligations
            .iter()
            .find(|r| r.po.id == id)
            .map(|r| r.result.verdict)
    };
    for t in &l.transitions {
        let always = verdict(format!("enabled_always.{}.{}", t.src, t.event));
        let total = verdict(format!("reach_total.{}.{}.{}", t.src, t.event, t.dst));
        let both = always == Some(Verdict::Valid) && total == Some(Verdict::Valid);
        assert_eq!(t.reduced, both, "{t:?}");
        if t.reduced {
            assert_eq!(t.condition, Pred::True);
        }
    }
}

#[test]
fn cover_failure_reports_missing_value() {
    let m = frontend::parse(&PARKING.replace(" or (cc = 1)", "")).unwrap();
    let p = Prover::new(m.signature(), places(&[1, 2, 3]));
    match lts::build(&m, &p, BuildOptions::default()) {
        Err(LtsError::CoverFailed {
            counterexample: Some(v),
        }) => assert_eq!(v.get("cc").unwrap().to_string(), "1"),
        other => panic!("{other:?}"),
    }
    let opts = BuildOptions {
        allow_uncovered: true,
        ..BuildOptions::default()
    };
    let (l, report) = lts::build(&m, &p, opts).unwrap();
    assert_eq!(l.states.len(), 2);
    assert!(!report.warnings.is_empty());
}

#[test]
fn overlapping_states_warn() {
    let m = frontend::parse(&PARKING.replace(
        "(cc = -1) or (cc = 0) or (cc = 1)",
        "(cc = 0) or (NbVoit = 0) or (TRUE)",
    ))
    .unwrap();
    let p = Prover::new(m.signature(), places(&[1, 2]));
    let (_, report) = lts::build(&m, &p, BuildOptions::default()).unwrap();
    assert!(report
        .warnings
        .iter()
        .any(|w| w.starts_with("states S0 and S1 may overlap")));
}

#[test]
fn empty_states_are_flagged() {
    let m = frontend::parse(&PARKING.replace("(cc = 1)", "(cc = 1) or (cc = 7)")).unwrap();
    let p = Prover::new(m.signature(), places(&[1, 2]));
    let (l, _) = lts::build(&m, &p, BuildOptions::default()).unwrap();
    assert!(l.states[3].empty);
    assert!(emit_intermediate(&l).contains("STATE S3 PRED cc=7 EMPTY\n"));
    assert!(emit_dot(&l).contains("fillcolor=lightgrey"));
}

#[test]
fn multiple_initial_states_need_a_flag() {
    let m = frontend::parse(
        &PARKING.replace("(cc = 0)", "(cc = 0 & NbVoit = 0) or (cc = 0 & NbVoit > 0)"),
    )
    .unwrap();
    let p = Prover::new(m.signature(), places(&[1, 2]));
    let (mut l, _) = lts::build(&m, &p, BuildOptions::default()).unwrap();
    l.initial.push(l.initial[0].clone());
    l.initial[1].state = "S2".into();
    assert!(matches!(
        emit_aut(&l, false),
        Err(AutError::MultipleInitial(_))
    ));
    assert!(emit_aut(&l, true).unwrap().starts_with("des (1, "));
}

#[test]
fn placement_errors() {
    let link = parking_r1();
    let (abs, _) = parking_lts(&places(&[1, 2]));
    let p = Prover::new(link.concrete.signature(), places(&[1, 2]));

    let mut wide = link.clone();
    wide.concrete.states[0].pred = Pred::True;
    assert!(matches!(
        lts::build_refined(&wide, &abs, &p, BuildOptions { allow_uncovered: true, ..Default::default() }),
        Err(LtsError::NoParent(s)) if s == "S0"
    ));

    let mut doubled = abs.clone();
    doubled.states[0].predicate = frontend::parse_predicate("cc <= 0").unwrap();
    assert!(matches!(
        lts::build_refined(&link, &doubled, &p, BuildOptions::default()),
        Err(LtsError::AbstractOverlap(..))
    ));
}

#[test]
fn sequential_and_parallel_agree() {
    let m = parking();
    let p = Prover::new(m.signature(), places(&[1, 2, 3]));
    let run = |exec| {
        let opts = BuildOptions {
            exec,
            ..BuildOptions::default()
        };
        let (l, r) = lts::build(&m, &p, opts).unwrap();
        (emit_intermediate(&l), r.render())
    };
    assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
}
