use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::potts::{embed_qutrit_to_spins, symmetric_ground_state_with, EigenSolver, PottsSpec};
use crate::error::{Error, Result};
use crate::lattice::{compute_lattice, gamma_folded, summarize, DEFAULT_GAP_THRESHOLD};
use crate::witness::{verdict, WitnessOptions, GROUND_STATE_TOL};

/// Sites the lattice is computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    /// `L = 2N` spin-½ sites after the triplet embedding.
    #[default]
    Qubit,
    /// `N` qutrit sites.
    Qutrit,
}

fn default_coupling() -> f64 {
    1.0
}
fn default_gap() -> f64 {
    DEFAULT_GAP_THRESHOLD
}
fn default_tol() -> f64 {
    GROUND_STATE_TOL
}
fn default_true() -> bool {
    true
}

/// Sweep over chain lengths and fields. Sizes are spin-chain lengths
/// `L = 2N`. Fields come from `h_values` or from `h_steps` evenly spaced
/// points in `[h_min, h_max]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub h_values: Option<Vec<f64>>,
    #[serde(default)]
    pub h_min: Option<f64>,
    #[serde(default)]
    pub h_max: Option<f64>,
    #[serde(default)]
    pub h_steps: Option<usize>,
    #[serde(rename = "J", alias = "coupling", default = "default_coupling")]
    pub coupling: f64,
    #[serde(default = "default_gap")]
    pub gap_threshold: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default = "default_true")]
    pub fold: bool,
    #[serde(default)]
    pub granularity: Granularity,
}

impl SweepConfig {
    pub fn new(sizes: Vec<usize>, h_values: Vec<f64>) -> Self {
        Self {
            sizes,
            h_values: Some(h_values),
            h_min: None,
            h_max: None,
            h_steps: None,
            coupling: 1.0,
            gap_threshold: DEFAULT_GAP_THRESHOLD,
            tol: GROUND_STATE_TOL,
            seed: 0,
            out: None,
            fold: true,
            granularity: Granularity::Qubit,
        }
    }

    /// Parse JSON (text starting with `{`) or TOML key-value text.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Config(format!("sweep config: {e}")))?
        } else {
            toml::from_str(text).map_err(|e| Error::Config(format!("sweep config: {e}")))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn h_grid(&self) -> Result<Vec<f64>> {
        match (&self.h_values, self.h_min, self.h_max, self.h_steps) {
            (Some(v), None, None, None) => Ok(v.clone()),
            (None, Some(a), Some(b), Some(n)) if n >= 1 => Ok(if n == 1 {
                vec![a]
            } else {
                (0..n)
                    .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
                    .collect()
            }),
            _ => Err(Error::Config(
                "give either h_values or all of h_min, h_max, h_steps".into(),
            )),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::Config("no sizes given".into()));
        }
        if let Some(&l) = self.sizes.iter().find(|&&l| l < 4 || l % 2 == 1) {
            return Err(Error::Config(format!("size {l} is not an even length ≥ 4")));
        }
        if [self.gap_threshold, self.tol]
            .iter()
            .any(|v| v.is_nan() || *v <= 0.0)
        {
            return Err(Error::Config(
                "gap threshold and tolerance must be positive".into(),
            ));
        }
        let grid = self.h_grid()?;
        if grid.is_empty() {
            return Err(Error::Config("empty field grid".into()));
        }
        if let Some(h) = grid
            .iter()
            .chain([&self.coupling])
            .find(|v| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::Config(format!(
                "fields and coupling must be finite and nonnegative, got {h}"
            )));
        }
        Ok(())
    }
}

/// One sweep point. Failed points keep their coordinates and carry the error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub len: usize,
    pub h: f64,
    pub gamma: f64,
    pub gamma_folded: Option<f64>,
    pub omega: f64,
    pub localized: bool,
    pub long_range_witnessed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Ground state → (embedding) → lattice → summary → fold → verdict.
pub fn sweep_point(cfg: &SweepConfig, len: usize, h: f64, seed: u64) -> Result<SweepRow> {
    let spec = PottsSpec::new(len / 2, cfg.coupling, h)?;
    let gs = symmetric_ground_state_with(&spec, EigenSolver::Auto, seed)?;
    let state = match cfg.granularity {
        Granularity::Qubit => embed_qutrit_to_spins(&gs.state)?,
        Granularity::Qutrit => gs.state,
    };
    let lat = compute_lattice(&state)?;
    let mut summary = summarize(&lat, cfg.gap_threshold);
    if cfg.fold {
        summary = summary.with_gamma_folded(gamma_folded(&state, cfg.gap_threshold)?);
    }
    let v = verdict(
        &lat,
        &summary,
        &WitnessOptions {
            tol: cfg.tol,
            require_origin: false,
        },
    )?;
    Ok(SweepRow {
        len,
        h,
        gamma: summary.gamma,
        gamma_folded: summary.gamma_folded,
        omega: summary.omega,
        localized: summary.localized,
        long_range_witnessed: v.long_range_witnessed,
        error: None,
    })
}

/// All points of the sweep, evaluated in parallel, in (size, field) order.
pub fn potts_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let grid = cfg.h_grid()?;
    let points: Vec<(usize, f64)> = cfg
        .sizes
        .iter()
        .flat_map(|&l| grid.iter().map(move |&h| (l, h)))
        .collect();
    Ok(points
        .par_iter()
        .enumerate()
        .map(|(k, &(len, h))| {
            sweep_point(cfg, len, h, cfg.seed.wrapping_add(k as u64)).unwrap_or_else(|e| SweepRow {
                len,
                h,
                gamma: f64::NAN,
                gamma_folded: None,
                omega: f64::NAN,
                localized: false,
                long_range_witnessed: false,
                error: Some(e.to_string()),
            })
        })
        .collect())
}

/// CSV with columns `L,h,gamma,gamma_folded,omega,localized,long_range_witnessed`.
/// A missing folded value is an empty field; failed points print `NaN`.
pub fn write_sweep_csv(rows: &[SweepRow], mut out: impl Write) -> Result<()> {
    writeln!(
        out,
        "L,h,gamma,gamma_folded,omega,localized,long_range_witnessed"
    )?;
    for r in rows {
        let gf = r.gamma_folded.map(|g| g.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.len, r.h, r.gamma, gf, r.omega, r.localized, r.long_range_witnessed
        )?;
    }
    Ok(())
}
