//! Run configuration: global flags, optional TOML config file, environment
//! defaults. Precedence is flags > config file > environment > built-ins.

use std::path::{Path, PathBuf};

use gedlab::GedError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Schubert,
    Localization,
    Both,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "schubert" => Ok(Method::Schubert),
            "localization" => Ok(Method::Localization),
            "both" => Ok(Method::Both),
            other => Err(format!(
                "unknown method '{other}' (expected schubert, localization or both)"
            )),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Schubert => "schubert",
            Method::Localization => "localization",
            Method::Both => "both",
        }
    }

    pub fn uses_localization(&self) -> bool {
        matches!(self, Method::Localization | Method::Both)
    }

    pub fn uses_schubert(&self) -> bool {
        matches!(self, Method::Schubert | Method::Both)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format '{other}' (expected table, json or csv)"
            )),
        }
    }
}

/// Desk-scale guards: refuse work whose base exceeds these.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_fixed_points: u64,
    pub max_dim_b: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_fixed_points: 2_000_000,
            max_dim_b: 48,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub method: Method,
    pub format: Format,
    pub lr_cache: Option<PathBuf>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub budget: Budget,
    pub output: Option<PathBuf>,
}

/// Keys accepted in the TOML config file; same vocabulary as the flags.
#[derive(Debug, Default)]
pub struct FileConfig {
    pub method: Option<String>,
    pub format: Option<String>,
    pub lr_cache: Option<String>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub max_points: Option<u64>,
    pub max_dim_b: Option<u32>,
}

pub fn load_file_config(path: &Path) -> Result<FileConfig, GedError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GedError::invalid(format!("cannot read config {}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| GedError::invalid(format!("bad config {}: {e}", path.display())))?;
    let mut out = FileConfig::default();
    for (key, value) in table {
        match key.as_str() {
            "method" => out.method = value.as_str().map(str::to_string),
            "format" => out.format = value.as_str().map(str::to_string),
            "lr_cache" => out.lr_cache = value.as_str().map(str::to_string),
            "seed" => out.seed = value.as_integer().map(|v| v as u64),
            "workers" => out.workers = value.as_integer().map(|v| v as usize),
            "max_points" => out.max_points = value.as_integer().map(|v| v as u64),
            "max_dim_b" => out.max_dim_b = value.as_integer().map(|v| v as u32),
            other => {
                return Err(GedError::invalid(format!(
                    "unknown config key '{other}' in {}",
                    path.display()
                )))
            }
        }
    }
    Ok(out)
}

/// Inclusive range in the `a..b` syntax; a bare integer means `a..a`.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("expected an integer, got '{t}'"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let lo = parse_one(a)?;
        let hi = parse_one(b)?;
        if hi < lo {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok((lo, hi))
    } else {
        let v = parse_one(s)?;
        Ok((v, v))
    }
}

/// Comma-separated support list, e.g. `1,2`.
pub fn parse_support(s: &str) -> Result<Vec<u32>, String> {
    if s.trim().is_empty() {
        return Err("support must be a nonempty comma-separated list".into());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad support entry '{t}'"))
        })
        .collect()
}
