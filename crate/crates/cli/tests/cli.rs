use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
}

fn ltsgen(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltsgen"))
        .args(args)
        .current_dir(cwd)
        .env_remove("GENESYS_TIME_BUDGET_MS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_selected_formats() {
    let dir = tempfile::tempdir().unwrap();
    let mch = corpus("parking.mch");
    let o = ltsgen(
        &[
            "generate",
            p(&mch),
            "--bound",
            "NbPlaces=1..3",
            "--format",
            "dot,inter",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut files: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    assert_eq!(files, ["parking.dot", "parking.lts", "parking.po.txt"]);
    let report = fs::read_to_string(dir.path().join("parking.po.txt")).unwrap();
    assert!(report.starts_with("cover cover valid simplifier\n"));
    assert!(report.lines().all(|l| l.split(' ').count() >= 4));
    assert!(!report.contains(" unknown "));
}

#[test]
fn refine_writes_clustered_dot() {
    let dir = tempfile::tempdir().unwrap();
    let o = ltsgen(
        &[
            "refine",
            p(&corpus("parking_r1.ref")),
            "--abstract",
            p(&corpus("parking.mch")),
            "--format",
            "dot",
            "--bound",
            "NbPlaces=1..3",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = fs::read_to_string(dir.path().join("parking_r1.dot")).unwrap();
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    let report = fs::read_to_string(dir.path().join("parking_r1.po.txt")).unwrap();
    assert!(report.contains("parking.cover cover valid"));
    assert!(report.contains("\nplacement.S2.S2 placement valid"));
}

#[test]
fn conform_prints_pass_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = ltsgen(
        &[
            "conform",
            p(&corpus("parking.mch")),
            "--instantiate",
            "NbPlaces=1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("CHECK soundness PASS 4 edges over 4 states"));
    assert!(out.contains("CHECK coverage PASS all 4 transitions witnessed"));
    assert!(out.ends_with("RESULT PASS\n"));
}

#[test]
fn conform_rejects_a_strengthened_condition() {
    let dir = tempfile::tempdir().unwrap();
    let golden = include_str!("golden/parking.lts");
    let edited = golden.replace("entrer COND NbVoit<NbPlaces", "entrer COND FALSE");
    assert_ne!(edited, golden);
    fs::write(dir.path().join("edited.lts"), edited).unwrap();
    let o = ltsgen(
        &[
            "conform",
            p(&corpus("parking.mch")),
            "--instantiate",
            "NbPlaces=1..2",
            "--lts",
            "edited.lts",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stdout(&o).contains("CHECK soundness FAIL"));
    assert!(stdout(&o).ends_with("RESULT FAIL\n"));
}

#[test]
fn conform_reports_overlapping_states() {
    let dir = tempfile::tempdir().unwrap();
    let golden = include_str!("golden/parking.lts");
    fs::write(
        dir.path().join("bad.lts"),
        golden.replace("PRED cc=-1", "PRED cc<=0"),
    )
    .unwrap();
    let o = ltsgen(
        &[
            "conform",
            p(&corpus("parking.mch")),
            "--instantiate",
            "NbPlaces=1",
            "--lts",
            "bad.lts",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn strict_lists_default_transitions() {
    let dir = tempfile::tempdir().unwrap();
    let o = ltsgen(
        &["generate", p(&corpus("parking.mch")), "--strict"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("strict: 4 transitions kept by default"));
    assert!(out.contains("  S1 --entrer [NbVoit<NbPlaces]--> S2"));
    assert!(dir.path().join("parking.po.txt").exists());

    let o = ltsgen(
        &[
            "generate",
            p(&corpus("parking.mch")),
            "--strict",
            "--bound",
            "NbPlaces=1..3",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn exit_codes_for_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = ltsgen(&["generate", "missing.mch"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("missing.mch"));

    fs::write(
        dir.path().join("broken.mch"),
        "MACHINE m\nVARIABLES x\nINVARIANT x :\nEND\n",
    )
    .unwrap();
    let o = ltsgen(&["generate", "broken.mch"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("broken.mch: 4:1: syntax error"),
        "{}",
        stderr(&o)
    );

    let o = ltsgen(&["generate", p(&corpus("parking_r1.ref"))], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--abstract"));

    let o = ltsgen(
        &["generate", p(&corpus("parking.mch")), "--bound", "x=1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));

    let o = ltsgen(
        &["generate", p(&corpus("parking.mch")), "--format", "svg"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));

    let o = ltsgen(&["conform", p(&corpus("parking.mch"))], dir.path());
    assert_eq!(o.status.code(), Some(1));

    let blocked = dir.path().join("file");
    fs::write(&blocked, "").unwrap();
    let o = ltsgen(
        &[
            "generate",
            p(&corpus("parking.mch")),
            "--out",
            p(&blocked.join("sub")),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn uncovered_machine() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(corpus("parking.mch")).unwrap();
    let cut = text.replace("(cc = -1) or (cc = 0) or (cc = 1)", "(cc = -1) or (cc = 0)");
    fs::write(dir.path().join("cut.mch"), cut).unwrap();
    let o = ltsgen(
        &["generate", "cut.mch", "--bound", "NbPlaces=1..3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cc=1"), "{}", stderr(&o));
    let o = ltsgen(
        &[
            "generate",
            "cut.mch",
            "--bound",
            "NbPlaces=1..3",
            "--allow-uncovered",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = fs::read_to_string(dir.path().join("parking.po.txt")).unwrap();
    assert!(report.starts_with("cover cover invalid enumeration"));
}

#[test]
fn export_po_writes_smtlib() {
    let dir = tempfile::tempdir().unwrap();
    let o = ltsgen(
        &["export-po", p(&corpus("parking.mch")), "--out", "pos"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let pos = dir.path().join("pos");
    let listing = fs::read_to_string(pos.join("parking.po.txt")).unwrap();
    let n = listing.lines().count();
    assert_eq!(n, 1 + 3 + 3 + 2 * 3 * 4 + 2 * 3 * 4 * 3);
    let smt = fs::read_dir(&pos)
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "smt2")
        })
        .count();
    assert_eq!(smt, n);
    let cover = fs::read_to_string(pos.join("cover.smt2")).unwrap();
    assert!(cover.contains("(set-logic QF_LIA)"));
}

#[test]
fn time_budget_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ltsgen"))
        .args(["generate", p(&corpus("parking.mch"))])
        .current_dir(dir.path())
        .env("GENESYS_TIME_BUDGET_MS", "soon")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_ltsgen"))
        .args([
            "generate",
            p(&corpus("parking.mch")),
            "--bound",
            "NbPlaces=1..3",
        ])
        .current_dir(dir.path())
        .env("GENESYS_TIME_BUDGET_MS", "5000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sequential_matches_parallel() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |seq: bool| {
        let mut v = vec![
            "refine".to_string(),
            p(&corpus("parking_r1.ref")).to_string(),
            "--abstract".into(),
            p(&corpus("parking.mch")).to_string(),
            "--bound".into(),
            "NbPlaces=1..3".into(),
        ];
        if seq {
            v.push("--sequential".into());
        }
        v
    };
    let run = |dir: &Path, seq: bool| {
        let a = args(seq);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(ltsgen(&refs, dir).status.code(), Some(0));
    };
    run(a.path(), true);
    run(b.path(), false);
    for f in [
        "parking_r1.lts",
        "parking_r1.dot",
        "parking_r1.aut",
        "parking_r1.po.txt",
    ] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}
