//! Experiment configuration.
//!
//! ```text
//! [grid]
//! dim = 2
//! n = 128
//! box_length = 20
//! far_field_density = 1
//!
//! [preset]
//! name = gaussian-bump
//! amplitude = 0.5
//! width = 1
//!
//! [solver]
//! gamma = 2
//! dt = 0.01
//! t_end = 1
//! formulation = effective
//!
//! [probes]
//! names = energy.total, density.min
//!
//! [audits]
//! names = energy_decay, bd_identity
//!
//! [output]
//! directory = runs/bump
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nsk_core::probes::PROBE_EXAMPLES;
use nsk_core::solver::{Formulation, Preset, SolverConfig, PRESET_NAMES};
use nsk_core::{Grid, Probe};

use crate::error::ConfigError;
use crate::ini::{Document, Entry, Section};

/// Environment variable holding the root for relative output directories.
pub const OUTPUT_ROOT_VAR: &str = "NSK_LAB_OUTPUT_ROOT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuditKind {
    EnergyDecay,
    Mass,
    BdIdentity,
    Jungel,
    PiEquivalence,
    Regions,
    LogLaw,
    ReverseHolder,
    Certificate,
    GrowthLaw,
    Sobolev,
    InverseDensity,
    Interpolation,
}

impl AuditKind {
    pub const ALL: [AuditKind; 13] = [
        AuditKind::EnergyDecay,
        AuditKind::Mass,
        AuditKind::BdIdentity,
        AuditKind::Jungel,
        AuditKind::PiEquivalence,
        AuditKind::Regions,
        AuditKind::LogLaw,
        AuditKind::ReverseHolder,
        AuditKind::Certificate,
        AuditKind::GrowthLaw,
        AuditKind::Sobolev,
        AuditKind::InverseDensity,
        AuditKind::Interpolation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AuditKind::EnergyDecay => "energy_decay",
            AuditKind::Mass => "mass",
            AuditKind::BdIdentity => "bd_identity",
            AuditKind::Jungel => "jungel",
            AuditKind::PiEquivalence => "pi_equivalence",
            AuditKind::Regions => "regions",
            AuditKind::LogLaw => "log_law",
            AuditKind::ReverseHolder => "reverse_holder",
            AuditKind::Certificate => "certificate",
            AuditKind::GrowthLaw => "growth_law",
            AuditKind::Sobolev => "sobolev",
            AuditKind::InverseDensity => "inverse_density",
            AuditKind::Interpolation => "interpolation",
        }
    }
}

impl fmt::Display for AuditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AuditKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        AuditKind::ALL.into_iter().find(|a| a.name() == s).ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub n: usize,
    pub box_length: f64,
    pub far_field_density: f64,
    pub preset: Preset,
    pub solver: SolverConfig,
    pub probes: Vec<Probe>,
    pub audits: Vec<AuditKind>,
    /// Output directory as written in the file.
    pub output: PathBuf,
    pub snapshots: bool,
    pub seed: u64,
    /// Soft findings recorded in the manifest.
    pub warnings: Vec<String>,
    /// Exact source text, hashed into the manifest.
    pub source: String,
}

impl ExperimentConfig {
    pub fn grid(&self) -> nsk_core::Result<Grid> {
        Grid::new(self.dim, self.n, self.box_length, self.far_field_density)
    }

    /// Output directory with relative paths placed under `root`.
    pub fn output_dir_in(&self, root: &Path) -> PathBuf {
        if self.output.is_absolute() {
            self.output.clone()
        } else {
            root.join(&self.output)
        }
    }

    /// Output directory resolved against the output-root environment variable.
    pub fn output_dir(&self) -> PathBuf {
        self.output_dir_in(&output_root())
    }
}

/// Root for relative output directories, from the environment or the working directory.
pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Closest candidate by normalised Levenshtein similarity, if reasonably close.
pub fn nearest<'a>(name: &str, candidates: impl IntoIterator<Item = &'a str>) -> Option<String> {
    candidates
        .into_iter()
        .map(|c| (strsim::normalized_levenshtein(name, c), c))
        .filter(|(score, _)| *score >= 0.5)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| c.to_string())
}

const SCHEMA: [(&str, &[&str]); 7] = [
    ("grid", &["dim", "n", "box_length", "far_field_density"]),
    ("preset", &["name", "amplitude", "width", "center", "modes"]),
    (
        "solver",
        &[
            "gamma",
            "dt",
            "t_end",
            "formulation",
            "dealias",
            "state_stride",
            "cfl",
        ],
    ),
    ("probes", &["names"]),
    ("audits", &["names"]),
    ("output", &["directory", "snapshots"]),
    ("run", &["seed"]),
];

struct Reader<'a> {
    doc: &'a Document,
}

impl<'a> Reader<'a> {
    fn section(&self, name: &str) -> Option<&'a Section> {
        self.doc.section(name)
    }

    fn entry(&self, section: &str, key: &str) -> Option<&'a Entry> {
        self.section(section).and_then(|s| s.get(key))
    }

    fn required(&self, section: &str, key: &str) -> Result<&'a Entry, ConfigError> {
        self.entry(section, key)
            .ok_or_else(|| ConfigError::Missing {
                section: section.into(),
                key: key.into(),
            })
    }

    fn value<T: FromStr>(&self, e: &Entry, what: &str) -> Result<T, ConfigError> {
        e.value.parse::<T>().map_err(|_| ConfigError::Invalid {
            line: e.line,
            key: e.key.clone(),
            message: format!("expected {what}, found {:?}", e.value),
        })
    }

    fn required_value<T: FromStr>(
        &self,
        section: &str,
        key: &str,
        what: &str,
    ) -> Result<T, ConfigError> {
        let e = self.required(section, key)?;
        self.value(e, what)
    }

    fn optional_value<T: FromStr>(
        &self,
        section: &str,
        key: &str,
        what: &str,
        default: T,
    ) -> Result<T, ConfigError> {
        match self.entry(section, key) {
            Some(e) => self.value(e, what),
            None => Ok(default),
        }
    }

    fn list(&self, section: &str) -> Vec<(String, usize)> {
        match self.entry(section, "names") {
            Some(e) => e
                .value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| (s.to_string(), e.line))
                .collect(),
            None => Vec::new(),
        }
    }
}

fn invalid(e: &Entry, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        line: e.line,
        key: e.key.clone(),
        message: message.into(),
    }
}

fn check_schema(doc: &Document) -> Result<(), ConfigError> {
    for s in &doc.sections {
        let keys = SCHEMA
            .iter()
            .find(|(name, _)| *name == s.name)
            .map(|(_, k)| *k)
            .ok_or_else(|| ConfigError::UnknownSection {
                line: s.line,
                name: s.name.clone(),
            })?;
        for e in &s.entries {
            if !keys.contains(&e.key.as_str()) {
                return Err(ConfigError::UnknownKey {
                    line: e.line,
                    section: s.name.clone(),
                    key: e.key.clone(),
                    suggestion: nearest(&e.key, keys.iter().copied()),
                });
            }
        }
    }
    Ok(())
}

fn parse_preset(r: &Reader, dim: usize, seed: u64) -> Result<Preset, ConfigError> {
    let name_entry = r.required("preset", "name")?;
    let allowed: &[&str] = match name_entry.value.as_str() {
        "constant" => &["name"],
        "gaussian-bump" => &["name", "amplitude", "width", "center"],
        "random-large" => &["name", "amplitude", "modes"],
        other => {
            return Err(invalid(
                name_entry,
                format!(
                    "unknown preset {other:?}{}",
                    nearest(other, PRESET_NAMES)
                        .map(|s| format!(" (did you mean {s:?}?)"))
                        .unwrap_or_default()
                ),
            ))
        }
    };
    let section = r.section("preset").expect("name entry exists");
    for e in &section.entries {
        if !allowed.contains(&e.key.as_str()) {
            return Err(invalid(
                e,
                format!("not a parameter of preset {:?}", name_entry.value),
            ));
        }
    }
    Ok(match name_entry.value.as_str() {
        "constant" => Preset::Constant,
        "gaussian-bump" => {
            let center = match r.entry("preset", "center") {
                Some(e) => {
                    let c: Vec<f64> = e
                        .value
                        .split(',')
                        .map(|x| x.trim().parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| invalid(e, "expected comma-separated reals"))?;
                    if c.len() != dim {
                        return Err(invalid(
                            e,
                            format!("expected {dim} coordinates, found {}", c.len()),
                        ));
                    }
                    Some(c)
                }
                None => None,
            };
            Preset::GaussianBump {
                amplitude: r.required_value("preset", "amplitude", "a real number")?,
                width: r.required_value("preset", "width", "a real number")?,
                center,
            }
        }
        _ => Preset::RandomLarge {
            amplitude: r.required_value("preset", "amplitude", "a real number")?,
            seed,
            modes: r.optional_value("preset", "modes", "a positive integer", 8usize)?,
        },
    })
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let doc = Document::parse(text)?;
    check_schema(&doc)?;
    let r = Reader { doc: &doc };

    let dim: usize = r.required_value("grid", "dim", "2 or 3")?;
    let n: usize = r.required_value("grid", "n", "a positive integer")?;
    let box_length: f64 = r.required_value("grid", "box_length", "a real number")?;
    let far_field_density: f64 = r.required_value("grid", "far_field_density", "a real number")?;
    if let Err(e) = Grid::new(dim, n, box_length, far_field_density) {
        let entry = match e {
            nsk_core::Error::UnsupportedDimension(_) => r.required("grid", "dim")?,
            nsk_core::Error::InvalidResolution(_) => r.required("grid", "n")?,
            nsk_core::Error::NonPositiveBoxLength(_) => r.required("grid", "box_length")?,
            _ => r.required("grid", "far_field_density")?,
        };
        return Err(invalid(entry, e.to_string()));
    }

    let seed: u64 = r.optional_value("run", "seed", "an unsigned integer", 0)?;
    let preset = parse_preset(&r, dim, seed)?;

    let gamma: f64 = r.required_value("solver", "gamma", "a real number")?;
    let dt: f64 = r.required_value("solver", "dt", "a real number")?;
    let t_end: f64 = r.required_value("solver", "t_end", "a real number")?;
    let formulation = match r.entry("solver", "formulation") {
        Some(e) => e
            .value
            .parse::<Formulation>()
            .map_err(|err| invalid(e, err.to_string()))?,
        None => Formulation::Effective,
    };
    let mut solver = SolverConfig::new(gamma, dt, t_end, formulation);
    solver.dealias = r.optional_value("solver", "dealias", "true or false", true)?;
    solver.state_stride =
        r.optional_value("solver", "state_stride", "a positive integer", 1usize)?;
    solver.cfl = r.optional_value("solver", "cfl", "a real number", solver.cfl)?;
    let warnings = solver.validate(dim).map_err(|e| {
        let key = match &e {
            nsk_core::Error::InvalidArgument(m) if m.starts_with("dt") => "dt",
            nsk_core::Error::InvalidArgument(m) if m.starts_with("t_end") => "t_end",
            nsk_core::Error::InvalidArgument(m) if m.starts_with("state") => "state_stride",
            nsk_core::Error::InvalidArgument(m) if m.starts_with("cfl") => "cfl",
            _ => "gamma",
        };
        match r.entry("solver", key) {
            Some(entry) => invalid(entry, e.to_string()),
            None => ConfigError::Missing {
                section: "solver".into(),
                key: key.into(),
            },
        }
    })?;

    let mut probes = Vec::new();
    for (name, line) in r.list("probes") {
        match Probe::parse(&name) {
            Ok(p) => probes.push(p),
            Err(_) => {
                return Err(ConfigError::UnknownProbe {
                    line,
                    suggestion: nearest(&name, PROBE_EXAMPLES),
                    name,
                })
            }
        }
    }
    let mut audits = Vec::new();
    for (name, line) in r.list("audits") {
        match name.parse::<AuditKind>() {
            Ok(a) if !audits.contains(&a) => audits.push(a),
            Ok(_) => {}
            Err(()) => {
                return Err(ConfigError::UnknownAudit {
                    line,
                    suggestion: nearest(&name, AuditKind::ALL.iter().map(|a| a.name())),
                    name,
                })
            }
        }
    }

    let output: PathBuf = PathBuf::from(&r.required("output", "directory")?.value);
    if output.as_os_str().is_empty() {
        return Err(invalid(r.required("output", "directory")?, "empty path"));
    }
    let snapshots = r.optional_value("output", "snapshots", "true or false", true)?;

    Ok(ExperimentConfig {
        dim,
        n,
        box_length,
        far_field_density,
        preset,
        solver,
        probes,
        audits,
        output,
        snapshots,
        seed,
        warnings,
        source: text.to_string(),
    })
}
