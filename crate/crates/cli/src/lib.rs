//! Driver for the `ltsgen` command: reads machines and refinements,
//! builds symbolic transition systems and writes them out, checks them
//! against explicit exploration, and exports proof obligations.

mod config;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use ltsgen_core::frontend::{self, FrontendError, MachineKind, MachineModel, RefinementLink};
use ltsgen_core::logic::{Valuation, Value};
use ltsgen_core::lts::{
    self, emit_aut, emit_dot, emit_intermediate, parse_intermediate, AutError, BuildOptions,
    BuildReport, FormatError, LtsError, SymbolicLts,
};
use ltsgen_core::oblige::all_obligations;
use ltsgen_core::oracle::{conformance, explore, Check, OracleError, Status};
use ltsgen_core::prover::{export_obligation, Prover, ProverConfig, ProverError};

pub use config::{Command, Format, Range, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC: i32 = 1;
pub const EXIT_CONFORMANCE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", .path.display())]
    Frontend {
        path: PathBuf,
        source: FrontendError,
    },
    #[error("{}: line {}: {}", .path.display(), .source.line, .source.message)]
    Format { path: PathBuf, source: FormatError },
    #[error("{}: {source}", .path.display())]
    Lts { path: PathBuf, source: LtsError },
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("{instance}: {source}")]
    Oracle {
        instance: String,
        source: OracleError,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Prover(ProverError::Io { .. }) => EXIT_IO,
            CliError::Oracle {
                source: OracleError::MapNotUnique { .. },
                ..
            } => EXIT_CONFORMANCE,
            _ => EXIT_SPEC,
        }
    }
}

/// Runs one command, printing results to stdout and errors to stderr.
pub fn run(cfg: &RunConfig) -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cfg, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command, writing the report to `out`. Returns the exit code of
/// a completed run; failures that stop the run are errors.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    cfg.validate().map_err(CliError::Usage)?;
    let mut buf = String::new();
    let code = match cfg.command {
        Command::Generate => generate(cfg, &mut buf),
        Command::Refine => refine(cfg, &mut buf),
        Command::Conform => conform(cfg, &mut buf),
        Command::ExportPo => export_po(cfg, &mut buf),
    };
    out.write_all(buf.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    code
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: PathBuf, text: &str, log: &mut String) -> Result<(), CliError> {
    fs::write(&path, text).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let _ = writeln!(log, "wrote {}", path.display());
    Ok(())
}

fn parse_file(path: &Path) -> Result<MachineModel, CliError> {
    frontend::parse(&read(path)?).map_err(|source| CliError::Frontend {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_machine(path: &Path) -> Result<MachineModel, CliError> {
    let m = parse_file(path)?;
    if m.kind != MachineKind::Machine {
        return Err(CliError::Usage(format!(
            "{}: `{}` is a refinement; give its abstraction with --abstract",
            path.display(),
            m.name
        )));
    }
    Ok(m)
}

enum Loaded {
    Flat(Box<MachineModel>),
    Refined(Box<RefinementLink>),
}

impl Loaded {
    /// The self-contained machine whose behaviour is described.
    fn model(&self) -> &MachineModel {
        match self {
            Loaded::Flat(m) => m,
            Loaded::Refined(link) => &link.concrete,
        }
    }
}

fn load(cfg: &RunConfig) -> Result<Loaded, CliError> {
    let Some(abs_path) = &cfg.abstract_path else {
        return parse_machine(&cfg.input).map(|m| Loaded::Flat(Box::new(m)));
    };
    let abstract_model = parse_machine(abs_path)?;
    let concrete = parse_file(&cfg.input)?;
    let link = frontend::resolve_refinement(&concrete, &abstract_model).map_err(|source| {
        CliError::Frontend {
            path: cfg.input.clone(),
            source,
        }
    })?;
    Ok(Loaded::Refined(Box::new(link)))
}

/// Prover configuration from `--bound` (or, when none is given, the
/// instantiated values) resolved against the machine's identifiers.
fn prover_config(cfg: &RunConfig, m: &MachineModel) -> Result<ProverConfig, CliError> {
    let mut pc = ProverConfig::default();
    if let Some(t) = cfg.time_budget {
        pc.time_budget = t;
    }
    let ranges = if cfg.bounds.is_empty() {
        &cfg.instantiations
    } else {
        &cfg.bounds
    };
    for r in ranges {
        if m.constants.contains(&r.name) {
            pc.constant_bounds
                .insert(r.name.clone(), r.values().collect());
        } else if m.variables.contains(&r.name) {
            pc.variable_bounds.insert(r.name.clone(), (r.lo, r.hi));
        } else {
            return Err(CliError::Usage(format!(
                "`{}` is neither a constant nor a variable of `{}`",
                r.name, m.name
            )));
        }
    }
    Ok(pc)
}

fn build_options(cfg: &RunConfig) -> BuildOptions {
    BuildOptions {
        allow_uncovered: cfg.allow_uncovered,
        exec: cfg.exec,
    }
}

fn build_flat(
    cfg: &RunConfig,
    m: &MachineModel,
    path: &Path,
) -> Result<(SymbolicLts, BuildReport), CliError> {
    let prover = Prover::new(m.signature(), prover_config(cfg, m)?);
    lts::build(m, &prover, build_options(cfg)).map_err(|source| CliError::Lts {
        path: path.to_path_buf(),
        source,
    })
}

/// The refined LTS and one report: the abstract level's obligations
/// (prefixed by the abstract machine's name) then the concrete ones.
fn build_link(
    cfg: &RunConfig,
    link: &RefinementLink,
) -> Result<(SymbolicLts, BuildReport), CliError> {
    let abs_path = cfg.abstract_path.as_deref().unwrap_or(&cfg.input);
    let (abs, abs_report) = build_flat(cfg, &link.abstract_model, abs_path)?;
    let prover = Prover::new(
        link.concrete.signature(),
        prover_config(cfg, &link.concrete)?,
    );
    let (l, report) =
        lts::build_refined(link, &abs, &prover, build_options(cfg)).map_err(|source| {
            CliError::Lts {
                path: cfg.input.clone(),
                source,
            }
        })?;
    let mut merged = abs_report;
    let prefix = &link.abstract_model.name;
    for r in &mut merged.obligations {
        r.po.id = format!("{prefix}.{}", r.po.id);
    }
    for w in &mut merged.warnings {
        *w = format!("{prefix}: {w}");
    }
    merged.obligations.extend(report.obligations);
    merged.warnings.extend(report.warnings);
    Ok((l, merged))
}

fn generate(cfg: &RunConfig, log: &mut String) -> Result<i32, CliError> {
    let m = parse_machine(&cfg.input)?;
    let built = build_flat(cfg, &m, &cfg.input)?;
    emit(cfg, built, log)
}

fn refine(cfg: &RunConfig, log: &mut String) -> Result<i32, CliError> {
    let Loaded::Refined(link) = load(cfg)? else {
        unreachable!("validated: refine has --abstract")
    };
    let built = build_link(cfg, &link)?;
    emit(cfg, built, log)
}

/// Writes the PO report, then the requested formats.
fn emit(
    cfg: &RunConfig,
    (l, report): (SymbolicLts, BuildReport),
    log: &mut String,
) -> Result<i32, CliError> {
    let dir = &cfg.out_dir;
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    write_file(
        dir.join(format!("{}.po.txt", l.name)),
        &report.render(),
        log,
    )?;
    for f in &cfg.formats {
        let text = match f {
            Format::Inter => emit_intermediate(&l),
            Format::Dot => emit_dot(&l),
            Format::Aut => emit_aut(&l, cfg.allow_multiple_initial)?,
        };
        write_file(
            dir.join(format!("{}.{}", l.name, f.extension())),
            &text,
            log,
        )?;
    }
    let _ = writeln!(
        log,
        "{} states, {} transitions; obligations: {} valid, {} invalid, {} unknown",
        l.concrete_states().count(),
        l.transitions.len(),
        report.count(ltsgen_core::prover::Verdict::Valid),
        report.count(ltsgen_core::prover::Verdict::Invalid),
        report.count(ltsgen_core::prover::Verdict::Unknown),
    );
    for w in &report.warnings {
        let _ = writeln!(log, "warning: {w}");
    }
    let defaults: Vec<_> = l.default_transitions().collect();
    if cfg.strict && !defaults.is_empty() {
        let _ = writeln!(
            log,
            "strict: {} transitions kept by default:",
            defaults.len()
        );
        for t in defaults {
            let _ = writeln!(log, "  {} --{}--> {}", t.src, t.label(), t.dst);
        }
        return Ok(EXIT_SPEC);
    }
    Ok(EXIT_OK)
}

/// Every combination of the instantiated values, in the order given.
fn instances(cfg: &RunConfig, m: &MachineModel) -> Result<Vec<Valuation>, CliError> {
    for c in &m.constants {
        if !cfg.instantiations.iter().any(|r| &r.name == c) {
            return Err(CliError::Usage(format!(
                "constant `{c}` needs --instantiate"
            )));
        }
    }
    let mut out = vec![Valuation::new()];
    for r in &cfg.instantiations {
        if !m.constants.contains(&r.name) {
            return Err(CliError::Usage(format!(
                "`{}` is not a constant of `{}`",
                r.name, m.name
            )));
        }
        out = out
            .into_iter()
            .flat_map(|v| {
                r.values()
                    .map(move |n| v.clone().with(r.name.clone(), Value::Int(n)))
            })
            .collect();
    }
    Ok(out)
}

fn conform(cfg: &RunConfig, log: &mut String) -> Result<i32, CliError> {
    let loaded = load(cfg)?;
    let m = loaded.model();
    let l = match &cfg.lts_path {
        Some(p) => {
            parse_intermediate(&read(p)?, &m.signature()).map_err(|source| CliError::Format {
                path: p.clone(),
                source,
            })?
        }
        None => match &loaded {
            Loaded::Flat(m) => build_flat(cfg, m, &cfg.input)?.0,
            Loaded::Refined(link) => build_link(cfg, link)?.0,
        },
    };

    let mut witnessed = BTreeSet::new();
    let mut failed = false;
    for v in instances(cfg, m)? {
        let instance = v.to_string();
        let oracle = |source| CliError::Oracle {
            instance: instance.clone(),
            source,
        };
        let x = explore(m, &v, cfg.max_states).map_err(oracle)?;
        let report = conformance(&x, &l, cfg.exec).map_err(oracle)?;
        let _ = writeln!(log, "INSTANCE {instance}");
        for c in report.checks.iter().filter(|c| c.kind != "coverage") {
            let _ = writeln!(log, "{c}");
        }
        failed |= !report.passed();
        witnessed.extend(report.witnessed);
    }

    let missed: Vec<_> = (0..l.transitions.len())
        .filter(|k| !witnessed.contains(k))
        .collect();
    let coverage: Vec<Check> = if missed.is_empty() {
        vec![Check {
            kind: "coverage",
            status: Status::Pass,
            detail: format!("all {} transitions witnessed", l.transitions.len()),
        }]
    } else {
        missed
            .into_iter()
            .map(|k| {
                let t = &l.transitions[k];
                Check {
                    kind: "coverage",
                    status: Status::Warn,
                    detail: format!("{} --{}--> {} not witnessed", t.src, t.label(), t.dst),
                }
            })
            .collect()
    };
    let _ = writeln!(log, "SUMMARY");
    for c in coverage {
        let _ = writeln!(log, "{c}");
    }
    let _ = writeln!(log, "RESULT {}", if failed { "FAIL" } else { "PASS" });
    Ok(if failed { EXIT_CONFORMANCE } else { EXIT_OK })
}

fn export_po(cfg: &RunConfig, log: &mut String) -> Result<i32, CliError> {
    let loaded = load(cfg)?;
    let m = loaded.model();
    let pos = all_obligations(m).map_err(|e| CliError::Lts {
        path: cfg.input.clone(),
        source: e.into(),
    })?;
    let dir = &cfg.out_dir;
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let sig = m.signature();
    let mut listing = String::new();
    for po in &pos {
        export_obligation(po, &sig, dir)?;
        let _ = writeln!(listing, "{po}");
    }
    write_file(dir.join(format!("{}.po.txt", m.name)), &listing, log)?;
    let _ = writeln!(
        log,
        "exported {} obligations to {}",
        pos.len(),
        dir.display()
    );
    Ok(EXIT_OK)
}
