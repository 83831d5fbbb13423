//! Run configuration: a TOML file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;
use vacuum_kinetics::Tolerances;

use crate::error::ConfigError;
use crate::grid::{self, Axis};
use crate::scenarios::Scenario;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scenario: Option<String>,
    out: Option<PathBuf>,
    format: Option<String>,
    jobs: Option<usize>,
    allow_flagged: Option<bool>,
    timestamp: Option<bool>,
    tolerances: Option<FileTolerances>,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTolerances {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    epsilon_regulator: Option<f64>,
    richardson_levels: Option<usize>,
    max_evaluations: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
}

/// Everything a sweep needs, after defaults and overrides are resolved.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    /// One axis per scenario parameter, in the scenario's order.
    pub axes: Vec<Axis>,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: Option<usize>,
    pub allow_flagged: bool,
    pub timestamp: bool,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub scenario: Option<String>,
    pub config: Option<PathBuf>,
    pub params: Vec<String>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub allow_flagged: bool,
    pub no_timestamp: bool,
}

fn line_of(source: &str, key: &str) -> Option<usize> {
    source.lines().position(|l| {
        let l = l.trim_start();
        l.strip_prefix(key)
            .is_some_and(|rest| rest.trim_start().starts_with('='))
    })
    .map(|i| i + 1)
}

fn value_to_spec(name: &str, v: &toml::Value) -> Result<Vec<f64>, ConfigError> {
    let number = |v: &toml::Value| -> Result<f64, ConfigError> {
        match v {
            toml::Value::Float(x) => Ok(*x),
            toml::Value::Integer(i) => Ok(*i as f64),
            other => Err(ConfigError::field(name, format!("expected a number, found {}", other.type_str()))),
        }
    };
    match v {
        toml::Value::String(s) => grid::parse_values(name, s),
        toml::Value::Array(items) => {
            let values = items.iter().map(number).collect::<Result<Vec<_>, _>>()?;
            if values.is_empty() {
                return Err(ConfigError::field(name, "empty value list"));
            }
            Ok(values)
        }
        other => Ok(vec![number(other)?]),
    }
}

fn parse_format(s: &str) -> Result<Format, ConfigError> {
    match s {
        "csv" => Ok(Format::Csv),
        other => Err(ConfigError::Invalid(format!("unsupported output format '{other}' (only csv)"))),
    }
}

impl RunConfig {
    pub fn resolve(o: &Overrides) -> Result<RunConfig, ConfigError> {
        let (file, source, path) = match &o.config {
            Some(path) => {
                let source = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                let file: FileConfig = toml::from_str(&source).map_err(|e| ConfigError::File {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                (file, source, path.display().to_string())
            }
            None => (FileConfig::default(), String::new(), String::new()),
        };
        let in_file = |name: &str, e: ConfigError| -> ConfigError {
            match line_of(&source, name) {
                Some(line) => ConfigError::File {
                    path: path.clone(),
                    message: format!("line {line}: {e}"),
                },
                None => e,
            }
        };

        let scenario_name = o
            .scenario
            .clone()
            .or(file.scenario.clone())
            .ok_or_else(|| ConfigError::Invalid("no scenario given".into()))?;
        let scenario = Scenario::parse(&scenario_name).ok_or_else(|| {
            ConfigError::Invalid(format!(
                "unknown scenario '{scenario_name}' (expected one of {})",
                Scenario::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
            ))
        })?;

        let mut values: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        for (name, v) in &file.params {
            let parsed = value_to_spec(name, v).map_err(|e| in_file(name, e))?;
            values.insert(name.clone(), parsed);
        }
        for p in &o.params {
            let (name, spec) = p
                .split_once('=')
                .ok_or_else(|| ConfigError::Invalid(format!("--param '{p}' must look like name=value")))?;
            values.insert(name.trim().to_string(), grid::parse_values(name.trim(), spec)?);
        }
        let known = scenario.params();
        if let Some(unknown) = values.keys().find(|k| !known.iter().any(|p| p.name == k.as_str())) {
            let e = ConfigError::field(
                unknown,
                format!(
                    "not a parameter of {} (expected {})",
                    scenario.name(),
                    known.iter().map(|p| p.name).collect::<Vec<_>>().join(", ")
                ),
            );
            return Err(if o.params.iter().any(|p| p.starts_with(unknown.as_str())) { e } else { in_file(unknown, e) });
        }
        let mut axes = Vec::with_capacity(known.len());
        for def in known {
            let v = match (values.remove(def.name), def.default) {
                (Some(v), _) => v,
                (None, Some(d)) => vec![d],
                (None, None) => {
                    return Err(ConfigError::field(def.name, format!("required by {}", scenario.name())));
                }
            };
            axes.push(Axis {
                name: def.name.to_string(),
                values: v,
            });
        }

        let mut tolerances = Tolerances::default();
        if let Some(t) = &file.tolerances {
            tolerances = Tolerances::new(
                t.rel_tol.unwrap_or(tolerances.rel_tol),
                t.abs_tol.unwrap_or(tolerances.abs_tol),
                t.epsilon_regulator.unwrap_or(tolerances.epsilon_regulator),
                t.richardson_levels.unwrap_or(tolerances.richardson_levels),
            )
            .map_err(|e| ConfigError::Invalid(format!("tolerances: {e}")))?;
            if let Some(m) = t.max_evaluations {
                tolerances.max_evaluations = m;
            }
        }

        let format = parse_format(o.format.as_deref().or(file.format.as_deref()).unwrap_or("csv"))?;
        let jobs = o.jobs.or(file.jobs);
        if jobs == Some(0) {
            return Err(ConfigError::Invalid("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            scenario,
            axes,
            tolerances,
            out: o.out.clone().or(file.out),
            format,
            jobs,
            allow_flagged: o.allow_flagged || file.allow_flagged.unwrap_or(false),
            timestamp: !o.no_timestamp && file.timestamp.unwrap_or(true),
        })
    }
}
