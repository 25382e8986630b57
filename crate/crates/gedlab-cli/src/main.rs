//! Batch CLI for the gedlab engine: exact gED and Chern-Mather degree
//! computations for determinantal varieties and polynomial neural layers,
//! with dual-path verification, stability probes, and an LR-coefficient
//! cache.
//!
//! Exit codes: 0 success, 2 usage error, 3 mathematical inconsistency
//! (path disagreement or a non-integer where an integer is required),
//! 4 budget breach.

mod config;
mod lrcache;
mod output;
mod selftest;

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use gedlab::chowring::ProductCtx;
use gedlab::ged::{ged_det, ged_neuro, GedResult, SupportSpec};
use gedlab::localization::{count_fixed_points, ged_det_localized, WeightSpec};
use gedlab::stability::{fit_polynomial, stability_in_n, verify_monomial_reduction};
use gedlab::GedError;

use config::{load_file_config, parse_range, parse_support, Budget, Format, Method, RunConfig};
use output::{
    render_fit, render_ged, render_reduction, render_selftest, render_stability, to_canonical_json,
    PathInfo, Rendered,
};

#[derive(Clone, Debug)]
struct RangeArg(u64, u64);

fn range_arg(s: &str) -> Result<RangeArg, String> {
    parse_range(s).map(|(a, b)| RangeArg(a, b))
}

#[derive(Clone, Debug)]
struct SupportArg(Vec<u32>);

fn support_arg(s: &str) -> Result<SupportArg, String> {
    parse_support(s).map(SupportArg)
}

#[derive(Parser, Debug)]
#[command(
    name = "gedlab",
    version,
    about = "Exact generic ED degrees of determinantal neurovarieties, twice"
)]
struct Cli {
    /// Evaluation path: schubert, localization, or both (compared exactly)
    #[arg(long, global = true, value_parser = Method::parse)]
    method: Option<Method>,

    /// Output format: table, json, or csv
    #[arg(long, global = true, value_parser = Format::parse)]
    format: Option<Format>,

    /// LR coefficient cache file (default from GEDLAB_LR_CACHE)
    #[arg(long, global = true)]
    lr_cache: Option<PathBuf>,

    /// Seed for the randomized localization weights; echoed in the output
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for grid and fixed-point sweeps
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Optional TOML config file (same keys as the flags; flags win)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Budget: refuse runs with more torus fixed points than this
    #[arg(long, global = true)]
    max_points: Option<u64>,

    /// Budget: refuse runs whose Grassmannian base dimension exceeds this
    #[arg(long, global = true)]
    max_dim_b: Option<u32>,

    /// Also write the rendered output to this file
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// gED of the variety of rank <= RANK matrices of size ROWS x COLS
    Det {
        #[arg(long)]
        rows: u64,
        #[arg(long)]
        cols: u64,
        #[arg(long)]
        rank: u64,
    },
    /// gED of the neurovariety with input dim N, output dim M, activation
    /// support SUPPORT and width WIDTH
    Neuro {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = support_arg)]
        support: SupportArg,
        #[arg(long)]
        width: u64,
    },
    /// Fit a bivariate polynomial to gED over a grid and detect stability
    Fit {
        #[arg(long, value_parser = support_arg)]
        support: SupportArg,
        #[arg(long)]
        width: u64,
        /// inclusive input-dimension range, e.g. 2..10
        #[arg(long, value_parser = range_arg)]
        n: RangeArg,
        /// inclusive output-dimension range, e.g. 2..8
        #[arg(long, value_parser = range_arg)]
        m: RangeArg,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Compare gED for support S against the monomial support {deg S}
    VerifyMonomial {
        #[arg(long, value_parser = support_arg)]
        support: SupportArg,
        #[arg(long)]
        width: u64,
        #[arg(long, value_parser = range_arg)]
        n: RangeArg,
        #[arg(long, value_parser = range_arg)]
        m: RangeArg,
    },
    /// Tabulate gED across the row dimension N at fixed cols and rank
    StabilityInN {
        #[arg(long)]
        cols: u64,
        #[arg(long)]
        rank: u64,
        /// inclusive range of N, e.g. 2..8
        #[arg(long, value_parser = range_arg)]
        rows: RangeArg,
    },
    /// Run the built-in verification battery
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &GedError) -> u8 {
    match err {
        GedError::InvalidInput(_) => 2,
        GedError::NonIntegerValue { .. } | GedError::Inconsistency(_) => 3,
        GedError::Budget(_) => 4,
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, GedError> {
    let file = match &cli.config {
        Some(path) => load_file_config(path)?,
        None => Default::default(),
    };
    let method = match (&cli.method, &file.method) {
        (Some(m), _) => *m,
        (None, Some(s)) => Method::parse(s).map_err(GedError::InvalidInput)?,
        _ => Method::Both,
    };
    let format = match (&cli.format, &file.format) {
        (Some(f), _) => *f,
        (None, Some(s)) => Format::parse(s).map_err(GedError::InvalidInput)?,
        _ => Format::Table,
    };
    let lr_cache = cli
        .lr_cache
        .clone()
        .or_else(|| file.lr_cache.as_ref().map(PathBuf::from))
        .or_else(|| std::env::var_os("GEDLAB_LR_CACHE").map(PathBuf::from));
    let budget = Budget {
        max_fixed_points: cli
            .max_points
            .or(file.max_points)
            .unwrap_or(Budget::default().max_fixed_points),
        max_dim_b: cli
            .max_dim_b
            .or(file.max_dim_b)
            .unwrap_or(Budget::default().max_dim_b),
    };
    Ok(RunConfig {
        method,
        format,
        lr_cache,
        seed: cli.seed.or(file.seed),
        workers: cli.workers.or(file.workers),
        budget,
        output: cli.output.clone(),
    })
}

/// Desk-scale guard: `dim B` and, when the localization path will run, the
/// number of fixed points.
fn check_budget(
    n: u64,
    m: u64,
    k: u64,
    cfg: &RunConfig,
    with_localization: bool,
) -> Result<(), GedError> {
    if k == 0 || k > n.min(m) {
        return Err(GedError::invalid(format!(
            "rank exceeds min(rows, cols): rank {k}, rows {n}, cols {m}"
        )));
    }
    let dim_b = (k as u128) * ((n - k) as u128) + (k as u128) * ((m - k) as u128);
    if dim_b > cfg.budget.max_dim_b as u128 {
        return Err(GedError::Budget(format!(
            "base dimension {dim_b} exceeds --max-dim-b {}",
            cfg.budget.max_dim_b
        )));
    }
    if with_localization {
        let points = count_fixed_points(&ProductCtx::new(n as u32, m as u32, k as u32)?);
        if points > BigInt::from(cfg.budget.max_fixed_points) {
            return Err(GedError::Budget(format!(
                "{points} torus fixed points exceed --max-points {}",
                cfg.budget.max_fixed_points
            )));
        }
    }
    Ok(())
}

/// Evaluates through the configured path(s); with `both`, the two results
/// must agree exactly, else the run fails with a diagnostic.
fn evaluate(n: u64, m: u64, k: u64, cfg: &RunConfig) -> Result<(GedResult, PathInfo), GedError> {
    let schubert = if cfg.method.uses_schubert() {
        Some((*ged_det(n, m, k)?).clone())
    } else {
        None
    };
    let localized = if cfg.method.uses_localization() {
        let ws = match cfg.seed {
            Some(seed) => WeightSpec::randomized(n as u32, m as u32, seed),
            None => WeightSpec::standard(n as u32, m as u32),
        };
        Some(ged_det_localized(n, m, k, &ws)?)
    } else {
        None
    };
    match (schubert, localized) {
        (Some(s), Some(l)) => {
            if !s.same_core(&l) {
                let mut diag = String::from("per-j comparison (schubert vs localization):\n");
                for (j, (a, b)) in s.cm_degrees.iter().zip(&l.cm_degrees).enumerate() {
                    if a != b {
                        diag.push_str(&format!("  A_{j}: {a} vs {b}\n"));
                    }
                }
                return Err(GedError::Inconsistency(format!(
                    "evaluation paths disagree at ({n}, {m}, {k})\n{diag}"
                )));
            }
            Ok((
                s,
                PathInfo {
                    method: cfg.method.as_str(),
                    paths_agree: Some(true),
                    seed: cfg.seed,
                },
            ))
        }
        (Some(s), None) => Ok((
            s,
            PathInfo {
                method: cfg.method.as_str(),
                paths_agree: None,
                seed: None,
            },
        )),
        (None, Some(l)) => Ok((
            l,
            PathInfo {
                method: cfg.method.as_str(),
                paths_agree: None,
                seed: cfg.seed,
            },
        )),
        (None, None) => unreachable!("method always selects at least one path"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, GedError> {
    let cfg = resolve_config(&cli)?;
    if let Some(workers) = cfg.workers {
        // best effort; a pool may already exist in tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let loaded: Option<HashSet<String>> = cfg
        .lr_cache
        .as_ref()
        .map(|p| lrcache::load(p).unwrap_or_default());

    let (rendered, failures) = dispatch(&cli.command, &cfg)?;

    let text = match cfg.format {
        Format::Table => rendered.table.clone(),
        Format::Json => format!("{}\n", to_canonical_json(&rendered.json)),
        Format::Csv => rendered.csv.clone(),
    };
    print!("{text}");
    if let Some(path) = &cfg.output {
        std::fs::write(path, &text)
            .map_err(|e| GedError::invalid(format!("cannot write {}: {e}", path.display())))?;
    }

    if let (Some(path), Some(already)) = (&cfg.lr_cache, &loaded) {
        lrcache::append_new(path, already)
            .map_err(|e| GedError::invalid(format!("cannot update LR cache: {e}")))?;
    }

    if failures {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

/// Runs one subcommand; the bool reports selftest failures.
fn dispatch(command: &Command, cfg: &RunConfig) -> Result<(Rendered, bool), GedError> {
    match command {
        Command::Det { rows, cols, rank } => {
            check_budget(*rows, *cols, *rank, cfg, cfg.method.uses_localization())?;
            let (result, path) = evaluate(*rows, *cols, *rank, cfg)?;
            Ok((render_ged("det", &result, &path), false))
        }
        Command::Neuro {
            n,
            m,
            support,
            width,
        } => {
            let spec = SupportSpec::new(support.0.clone())?;
            let n_s = spec.dim_v(*n);
            let n_s: u64 = u64::try_from(&n_s)
                .map_err(|_| GedError::Budget(format!("resolved N_S = {n_s} is out of range")))?;
            check_budget(n_s, *m, *width, cfg, cfg.method.uses_localization())?;
            let (core, path) = evaluate(n_s, *m, *width, cfg)?;
            let mut result = core;
            result.neuro = Some(gedlab::ged::NeuroMeta {
                input_dim: *n,
                support: spec.to_vec(),
            });
            Ok((render_ged("neuro", &result, &path), false))
        }
        Command::Fit {
            support,
            width,
            n,
            m,
            max_degree,
        } => {
            let spec = SupportSpec::new(support.0.clone())?;
            let n_s_hi = spec.dim_v(n.1);
            let n_s_hi: u64 = u64::try_from(&n_s_hi).map_err(|_| {
                GedError::Budget(format!("resolved N_S = {n_s_hi} is out of range"))
            })?;
            check_budget(n_s_hi, m.1, *width, cfg, false)?;
            let report = fit_polynomial(&spec, *width, (n.0, n.1), (m.0, m.1), *max_degree)?;
            // the grid is cached by the fit; re-read it for the report body
            let mut grid = Vec::new();
            for nn in n.0..=n.1 {
                for mm in m.0..=m.1 {
                    grid.push((nn, mm, ged_neuro(nn, mm, &spec, *width)?.ged));
                }
            }
            Ok((render_fit(&report, &grid), false))
        }
        Command::VerifyMonomial {
            support,
            width,
            n,
            m,
        } => {
            let spec = SupportSpec::new(support.0.clone())?;
            let n_s_hi = spec.dim_v(n.1);
            let n_s_hi: u64 = u64::try_from(&n_s_hi).map_err(|_| {
                GedError::Budget(format!("resolved N_S = {n_s_hi} is out of range"))
            })?;
            check_budget(n_s_hi, m.1, *width, cfg, false)?;
            let report = verify_monomial_reduction(&spec, *width, (n.0, n.1), (m.0, m.1))?;
            Ok((render_reduction(&report), false))
        }
        Command::StabilityInN { cols, rank, rows } => {
            check_budget(rows.1, *cols, *rank, cfg, false)?;
            let table = stability_in_n(*cols, *rank, (rows.0, rows.1))?;
            Ok((render_stability(&table), false))
        }
        Command::Selftest => {
            let checks = selftest::run();
            let any_fail = checks.iter().any(|(_, ok)| !ok);
            Ok((render_selftest(&checks), any_fail))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_for_det_is_canonical() {
        let r = ged_det(2, 2, 1).unwrap();
        let rendered = render_ged(
            "det",
            &r,
            &PathInfo {
                method: "both",
                paths_agree: Some(true),
                seed: None,
            },
        );
        let text = to_canonical_json(&rendered.json);
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_canonical_json(&reparsed), text);
        assert_eq!(reparsed["ged"], json!("6"));
        assert_eq!(reparsed["cm_degrees"], json!(["4", "4", "2"]));
    }
}
