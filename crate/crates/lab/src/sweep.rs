//! Independent experiments run concurrently.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Component, Path, PathBuf};

use rayon::prelude::*;

use crate::config::{parse_config, ExperimentConfig};
use crate::error::LabError;
use crate::experiment::{run_experiment_in, RunManifest};

fn normalise(p: &Path) -> PathBuf {
    let mut out = PathBuf::new();
    for c in p.components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir => {
                out.pop();
            }
            other => out.push(other),
        }
    }
    out
}

/// Runs every configuration with outputs under `root`.
///
/// Duplicate output directories are rejected before anything runs; afterwards each
/// run's outcome is reported independently.
pub fn sweep(
    configs: &[ExperimentConfig],
    root: &Path,
) -> Result<Vec<Result<RunManifest, LabError>>, LabError> {
    let dirs: Vec<PathBuf> = configs
        .iter()
        .map(|c| normalise(&c.output_dir_in(root)))
        .collect();
    let mut seen = BTreeSet::new();
    for d in &dirs {
        if !seen.insert(d.clone()) {
            return Err(LabError::DuplicateOutput(d.clone()));
        }
    }
    Ok(configs
        .par_iter()
        .zip(dirs.par_iter())
        .map(|(c, d)| run_experiment_in(c, d))
        .collect())
}

/// Parses every `*.ini` file of `dir`, in name order.
pub fn load_configs(dir: &Path) -> Result<Vec<(PathBuf, ExperimentConfig)>, LabError> {
    let entries = fs::read_dir(dir).map_err(|e| LabError::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ini"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|e| LabError::io(&p, e))?;
            let cfg = parse_config(&text).map_err(|source| LabError::Config {
                path: p.clone(),
                source,
            })?;
            Ok((p, cfg))
        })
        .collect()
}
