//! Engine limits from an optional TOML file.
//!
//! Lookup: an explicit path, else `$LADDERLAB_CONFIG`, else built-in
//! defaults. Command-line flags are applied on top by the caller.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ramsey::{EngineLimits, DEFAULT_NODE_BUDGET};
use crate::setlang::DEFAULT_WINDOW_CAP;

pub const CONFIG_ENV: &str = "LADDERLAB_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub window_cap: usize,
    pub node_budget: u64,
    pub workers: usize,
    pub time_limit_ms: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            window_cap: DEFAULT_WINDOW_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            time_limit_ms: None,
        }
    }
}

/// Every key is optional; unknown keys are errors.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLimits {
    window_cap: Option<usize>,
    node_budget: Option<u64>,
    workers: Option<usize>,
    time_limit_ms: Option<u64>,
}

impl Limits {
    /// Parses config text over the defaults.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: FileLimits = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |s| {
                text[..s.start.min(text.len())].matches('\n').count() + 1
            });
            Error::Config {
                line,
                message: e.message().trim().to_string(),
            }
        })?;
        let mut limits = Limits::default();
        if let Some(v) = file.window_cap {
            limits.window_cap = v;
        }
        if let Some(v) = file.node_budget {
            limits.node_budget = v;
        }
        if let Some(v) = file.workers {
            if v == 0 {
                return Err(Error::Config {
                    line: key_line(text, "workers"),
                    message: "key `workers` must be at least 1".into(),
                });
            }
            limits.workers = v;
        }
        limits.time_limit_ms = file.time_limit_ms;
        Ok(limits)
    }

    /// Loads `path`, else the file named by the environment variable, else
    /// the defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let chosen: Option<PathBuf> = match path {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        };
        match chosen {
            Some(p) => Limits::from_toml(&std::fs::read_to_string(&p)?),
            None => Ok(Limits::default()),
        }
    }

    pub fn engine(&self) -> EngineLimits {
        EngineLimits {
            node_budget: self.node_budget,
            time_limit: self.time_limit_ms.map(Duration::from_millis),
            workers: self.workers,
            ..EngineLimits::default()
        }
    }
}

fn key_line(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| l.trim_start().starts_with(key))
        .map_or(1, |i| i + 1)
}
