use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use ltsgen_core::exec::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Generate,
    Refine,
    Conform,
    ExportPo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Format {
    Inter,
    Dot,
    Aut,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Inter, Format::Dot, Format::Aut];

    pub fn extension(self) -> &'static str {
        match self {
            Format::Inter => "lts",
            Format::Dot => "dot",
            Format::Aut => "aut",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inter" => Ok(Format::Inter),
            "dot" => Ok(Format::Dot),
            "aut" => Ok(Format::Aut),
            _ => Err(format!("unknown format `{s}` (expected inter, dot or aut)")),
        }
    }
}

/// `NAME=v` or `NAME=lo..hi`, inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rhs) = s
            .split_once('=')
            .ok_or_else(|| format!("`{s}`: expected NAME=v or NAME=lo..hi"))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(format!("`{s}`: bad identifier `{name}`"));
        }
        let int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{s}`: `{t}` is not an integer"))
        };
        let (lo, hi) = match rhs.split_once("..") {
            Some((lo, hi)) => (int(lo)?, int(hi)?),
            None => {
                let v = int(rhs)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("`{s}`: empty range"));
        }
        Ok(Range {
            name: name.to_string(),
            lo,
            hi,
        })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}={}", self.name, self.lo)
        } else {
            write!(f, "{}={}..{}", self.name, self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    /// The abstract machine of a refinement.
    pub abstract_path: Option<PathBuf>,
    /// A prebuilt intermediate file to check instead of building one.
    pub lts_path: Option<PathBuf>,
    pub bounds: Vec<Range>,
    pub instantiations: Vec<Range>,
    pub out_dir: PathBuf,
    pub formats: BTreeSet<Format>,
    /// Fail when some transition carries default provenance.
    pub strict: bool,
    pub allow_uncovered: bool,
    pub allow_multiple_initial: bool,
    pub max_states: usize,
    pub time_budget: Option<Duration>,
    pub exec: Exec,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: input.into(),
            abstract_path: None,
            lts_path: None,
            bounds: Vec::new(),
            instantiations: Vec::new(),
            out_dir: PathBuf::from("."),
            formats: Format::ALL.into_iter().collect(),
            strict: false,
            allow_uncovered: false,
            allow_multiple_initial: false,
            max_states: 100_000,
            time_budget: None,
            exec: Exec::default(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.command == Command::Refine && self.abstract_path.is_none() {
            return Err("refine needs --abstract".into());
        }
        if matches!(self.command, Command::Generate | Command::Refine) && self.formats.is_empty() {
            return Err("no output format selected".into());
        }
        if self.command == Command::Conform && self.instantiations.is_empty() {
            return Err("conform needs at least one --instantiate".into());
        }
        let mut seen = BTreeSet::new();
        for r in &self.bounds {
            if !seen.insert(&r.name) {
                return Err(format!("`{}` is bounded twice", r.name));
            }
        }
        let mut seen = BTreeSet::new();
        for r in &self.instantiations {
            if !seen.insert(&r.name) {
                return Err(format!("`{}` is instantiated twice", r.name));
            }
        }
        Ok(())
    }
}
