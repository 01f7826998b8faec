//! Run configuration from flags and an optional JSON file; flags win.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sunbose_core::{IrrepLabel, DEFAULT_SECTOR_CAP};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse config {path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] sunbose_core::Error),
}

/// Every field optional: the shape of both the config file and the flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PartialConfig {
    pub n: Option<usize>,
    pub c: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub sector_cap: Option<usize>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: shown.clone(), source })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Parse { path: shown, source })
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overridden_by(mut self, flags: PartialConfig) -> Self {
        self.n = flags.n.or(self.n);
        self.c = flags.c.or(self.c);
        self.seed = flags.seed.or(self.seed);
        self.samples = flags.samples.or(self.samples);
        self.sector_cap = flags.sector_cap.or(self.sector_cap);
        self.tolerances.extend(flags.tolerances);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub n: usize,
    pub c: Vec<u32>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub sector_cap: usize,
}

impl RunConfig {
    /// Validates a merged config. `c` defaults to the trivial label.
    pub fn resolve(p: PartialConfig) -> Result<Self, ConfigError> {
        let n = p.n.ok_or_else(|| ConfigError::Invalid("missing --n".into()))?;
        if n < 2 {
            return Err(sunbose_core::Error::GroupRankTooSmall { n }.into());
        }
        let c = p.c.unwrap_or_else(|| vec![0; n - 1]);
        IrrepLabel::new(n, c.clone())?;
        if let Some((name, v)) = p.tolerances.iter().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(ConfigError::Invalid(format!("tolerance {name} = {v} must be finite and nonnegative")));
        }
        Ok(Self {
            n,
            c,
            seed: p.seed.unwrap_or(0),
            samples: p.samples,
            tolerances: p.tolerances,
            sector_cap: p.sector_cap.unwrap_or(DEFAULT_SECTOR_CAP),
        })
    }

    pub fn label(&self) -> IrrepLabel {
        IrrepLabel::new(self.n, self.c.clone()).expect("validated in resolve")
    }

    /// Overridden tolerance or `default`.
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// Rejects tolerance names the command does not use.
    pub fn check_tolerance_names(&self, known: &[&str]) -> Result<(), ConfigError> {
        match self.tolerances.keys().find(|k| !known.contains(&k.as_str())) {
            Some(bad) => Err(ConfigError::Invalid(format!(
                "unknown tolerance '{bad}' (known: {})",
                known.join(", ")
            ))),
            None => Ok(()),
        }
    }
}

/// Parses `name=value`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad tolerance value '{value}': {e}"))?;
    Ok((name.trim().to_string(), value))
}

/// Parses a comma list such as `1,0,2`.
pub fn parse_label(s: &str) -> Result<Vec<u32>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("bad label entry '{x}': {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = PartialConfig {
            n: Some(3),
            c: Some(vec![1, 1]),
            seed: Some(5),
            tolerances: [("closure".to_string(), 1e-9)].into(),
            ..Default::default()
        };
        let flags = PartialConfig {
            seed: Some(7),
            tolerances: [("jacobi".to_string(), 1e-8)].into(),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(file.overridden_by(flags)).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.c, vec![1, 1]);
        assert_eq!(cfg.tol("closure", 0.0), 1e-9);
        assert_eq!(cfg.tol("jacobi", 0.0), 1e-8);
        assert_eq!(cfg.tol("other", 0.5), 0.5);
    }

    #[test]
    fn validation() {
        let p = |n, c: Option<Vec<u32>>| PartialConfig { n, c, ..Default::default() };
        assert!(RunConfig::resolve(p(None, None)).is_err());
        let e = RunConfig::resolve(p(Some(1), None)).unwrap_err();
        assert!(e.to_string().contains("group rank too small"));
        assert!(RunConfig::resolve(p(Some(3), Some(vec![1]))).is_err());
        assert_eq!(RunConfig::resolve(p(Some(3), None)).unwrap().c, vec![0, 0]);
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_tolerance("closure=1e-9").unwrap(), ("closure".into(), 1e-9));
        assert!(parse_tolerance("closure").is_err());
        assert_eq!(parse_label("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert!(parse_label("1,-1").is_err());
    }
}
