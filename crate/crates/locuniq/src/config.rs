//! JSON run configuration. Command-line flags take precedence over file values.

use std::path::Path;

use locuniq_core::ExperimentConfig;
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_SEED: u64 = 0;

/// Keys accepted in a config file. Scalars and lists may both be given; `mc` uses
/// the scalars, `sweep` uses the lists (a scalar counts as a one-element list).
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<OneOrMany<usize>>,
    pub delta: Option<OneOrMany<f64>>,
    pub epsilon: Option<OneOrMany<f64>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub events: Option<bool>,
    pub statements: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            Self::One(v) => vec![v.clone()],
            Self::Many(v) => v.clone(),
        }
    }

    fn single(&self, key: &str) -> Result<T, CliError> {
        match self {
            Self::One(v) => Ok(v.clone()),
            Self::Many(v) if v.len() == 1 => Ok(v[0].clone()),
            Self::Many(_) => Err(CliError::Usage(format!("config key `{key}` must be a single value here"))),
        }
    }
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }
}

/// Flag values for one experiment, before merging with a file.
#[derive(Debug, Clone, Default)]
pub struct McOverrides {
    pub n: Option<usize>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub events: bool,
    pub statements: bool,
}

pub fn resolve_mc(flags: &McOverrides, file: &FileConfig) -> Result<ExperimentConfig, CliError> {
    let n = match (flags.n, &file.n) {
        (Some(v), _) => v,
        (None, Some(v)) => v.single("n")?,
        (None, None) => return Err(CliError::Usage("missing --n".into())),
    };
    let delta = match (flags.delta, &file.delta) {
        (Some(v), _) => v,
        (None, Some(v)) => v.single("delta")?,
        (None, None) => return Err(CliError::Usage("missing --delta".into())),
    };
    let epsilon = match (flags.epsilon, &file.epsilon) {
        (Some(v), _) => v,
        (None, Some(v)) => v.single("epsilon")?,
        (None, None) => DEFAULT_EPSILON,
    };
    let trials = flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    Ok(ExperimentConfig::new(n, delta, epsilon, trials, seed)
        .with_events(flags.events || file.events.unwrap_or(false))
        .with_statements(flags.statements || file.statements.unwrap_or(false)))
}

#[derive(Debug, Clone, Default)]
pub struct SweepOverrides {
    pub n: Vec<usize>,
    pub delta: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub events: bool,
    pub statements: bool,
}

/// Expands the grid in the order `n`, then `epsilon`, then `delta`.
pub fn resolve_sweep(flags: &SweepOverrides, file: &FileConfig) -> Result<Vec<ExperimentConfig>, CliError> {
    fn pick<T: Clone>(flag: &[T], file: &Option<OneOrMany<T>>) -> Vec<T> {
        if flag.is_empty() {
            file.as_ref().map(OneOrMany::to_vec).unwrap_or_default()
        } else {
            flag.to_vec()
        }
    }
    let ns = pick(&flags.n, &file.n);
    let deltas = pick(&flags.delta, &file.delta);
    let mut epsilons = pick(&flags.epsilon, &file.epsilon);
    if ns.is_empty() {
        return Err(CliError::Usage("sweep needs at least one n".into()));
    }
    if deltas.is_empty() {
        return Err(CliError::Usage("sweep needs at least one delta".into()));
    }
    if epsilons.is_empty() {
        epsilons.push(DEFAULT_EPSILON);
    }
    let trials = flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let events = flags.events || file.events.unwrap_or(false);
    let statements = flags.statements || file.statements.unwrap_or(false);
    let mut out = Vec::with_capacity(ns.len() * deltas.len() * epsilons.len());
    for &n in &ns {
        for &eps in &epsilons {
            for &d in &deltas {
                out.push(
                    ExperimentConfig::new(n, d, eps, trials, seed).with_events(events).with_statements(statements),
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = FileConfig::parse(r#"{"n": 50, "delta": 0.2, "trials": 7, "seed": 3}"#).unwrap();
        let flags = McOverrides { seed: Some(9), ..Default::default() };
        let c = resolve_mc(&flags, &file).unwrap();
        assert_eq!((c.n, c.delta, c.trials, c.seed, c.epsilon), (50, 0.2, 7, 9, DEFAULT_EPSILON));
    }

    #[test]
    fn missing_required_key() {
        let err = resolve_mc(&McOverrides::default(), &FileConfig::default()).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(FileConfig::parse(r#"{"n": 5, "typo": 1}"#).is_err());
    }

    #[test]
    fn sweep_grid_order() {
        let file = FileConfig::parse(r#"{"n": [10, 20], "delta": [0.1, 0.2, 0.3], "epsilon": 0.2}"#).unwrap();
        let grid = resolve_sweep(&SweepOverrides::default(), &file).unwrap();
        assert_eq!(grid.len(), 6);
        assert_eq!((grid[0].n, grid[0].delta), (10, 0.1));
        assert_eq!((grid[2].n, grid[2].delta), (10, 0.3));
        assert_eq!((grid[3].n, grid[3].delta), (20, 0.1));
        let flags = SweepOverrides { delta: vec![0.5], ..Default::default() };
        assert_eq!(resolve_sweep(&flags, &file).unwrap().len(), 2);
    }

    #[test]
    fn list_where_scalar_needed() {
        let file = FileConfig::parse(r#"{"n": [10, 20], "delta": 0.1}"#).unwrap();
        assert!(resolve_mc(&McOverrides::default(), &file).is_err());
    }
}
