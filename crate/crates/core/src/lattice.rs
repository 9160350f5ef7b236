//! The information lattice of a pure state, its per-scale summaries, and the
//! folding procedure.
//!
//! A lattice site `(n, l)` is the interval of `l + 1` sites centered at `n`.
//! With `I(A) = Σ_{j∈A} log₂ d_j − S(A)` the local information is
//!
//! ```text
//! i_n^l = I(C_n^l) − I(C_{n−½}^{l−1}) − I(C_{n+½}^{l−1}) + I(C_n^{l−2})
//! ```
//!
//! with `I ≡ 0` at negative scales. Values are stored by `(l, left)` where
//! `left = n − l/2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::SupportInterval;
use crate::state::PureState;

/// Default threshold (bits) below which a scale counts as empty.
pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-3;
/// Magnitudes below this are stored as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct InfoLattice {
    dims: Vec<usize>,
    /// `values[l][left]`
    values: Vec<Vec<f64>>,
}

impl InfoLattice {
    /// Combine interval informations into local informations. `info` is
    /// called once per interval.
    pub fn from_information<F>(dims: Vec<usize>, info: F) -> Result<Self>
    where
        F: Fn(SupportInterval) -> Result<f64>,
    {
        let len = dims.len();
        let table = (0..len)
            .map(|l| {
                (0..len - l)
                    .map(|left| info(SupportInterval::with_scale(left, l)))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_table(dims, &table))
    }

    /// Same as [`Self::from_information`] with intervals evaluated in
    /// parallel. Results do not depend on scheduling.
    pub fn from_information_par<F>(dims: Vec<usize>, info: F) -> Result<Self>
    where
        F: Fn(SupportInterval) -> Result<f64> + Sync,
    {
        let len = dims.len();
        let intervals: Vec<SupportInterval> = (0..len)
            .flat_map(|l| (0..len - l).map(move |left| SupportInterval::with_scale(left, l)))
            .collect();
        let flat = intervals
            .par_iter()
            .map(|&iv| info(iv))
            .collect::<Result<Vec<f64>>>()?;
        let mut table = Vec::with_capacity(len);
        let mut at = 0;
        for l in 0..len {
            table.push(flat[at..at + len - l].to_vec());
            at += len - l;
        }
        Ok(Self::from_table(dims, &table))
    }

    fn from_table(dims: Vec<usize>, info: &[Vec<f64>]) -> Self {
        let len = dims.len();
        let get = |l: isize, left: usize| -> f64 {
            if l < 0 {
                0.0
            } else {
                info[l as usize][left]
            }
        };
        let values = (0..len)
            .map(|l| {
                (0..len - l)
                    .map(|left| {
                        let li = l as isize;
                        let v = get(li, left) - get(li - 1, left) - get(li - 1, left + 1)
                            + get(li - 2, left + 1);
                        if v.abs() < ZERO_CLAMP {
                            0.0
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        Self { dims, values }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Value at scale `l` for the interval starting at `left`.
    pub fn get(&self, l: usize, left: usize) -> Option<f64> {
        self.values.get(l)?.get(left).copied()
    }

    /// Value at center `n` (a half-integer) and scale `l`.
    pub fn at(&self, n: f64, l: usize) -> Option<f64> {
        let left = n - l as f64 / 2.0;
        if left < 0.0 || left.fract() != 0.0 {
            return None;
        }
        self.get(l, left as usize)
    }

    /// All sites as `(n, l, i)`, scale by scale, left to right.
    pub fn sites(&self) -> impl Iterator<Item = (f64, usize, f64)> + '_ {
        self.values.iter().enumerate().flat_map(|(l, row)| {
            row.iter()
                .enumerate()
                .map(move |(left, &v)| (left as f64 + l as f64 / 2.0, l, v))
        })
    }

    /// `I^l = Σ_n i_n^l` for `l = 0 … L−1`.
    pub fn info_per_scale(&self) -> Vec<f64> {
        self.values.iter().map(|row| row.iter().sum()).collect()
    }

    /// Sum of all local information.
    pub fn total(&self) -> f64 {
        self.values.iter().flatten().sum()
    }

    pub fn max_local_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(1)
    }

    /// Lattice with `n → L − 1 − n`.
    pub fn reflected(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().rev().copied().collect())
            .collect();
        let dims = self.dims.iter().rev().copied().collect();
        Self { dims, values }
    }
}

/// `I(A)` in bits for a contiguous interval of a pure state.
pub fn interval_information(state: &PureState, interval: SupportInterval) -> Result<f64> {
    Ok(state.log_dim(interval) - state.entropy(interval)?)
}

/// Lattice of a pure state from subsystem entropies.
pub fn compute_lattice(state: &PureState) -> Result<InfoLattice> {
    InfoLattice::from_information(state.dims().to_vec(), |iv| interval_information(state, iv))
}

/// [`compute_lattice`] with intervals evaluated on the rayon pool.
pub fn compute_lattice_par(state: &PureState) -> Result<InfoLattice> {
    InfoLattice::from_information_par(state.dims().to_vec(), |iv| interval_information(state, iv))
}

/// A run of consecutive scales with `I^l` below the gap threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub start: usize,
    pub end: usize,
    /// Largest `I^l` inside the run.
    pub max_info: f64,
}

impl Gap {
    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSummary {
    #[serde(rename = "L")]
    pub len: usize,
    pub info_per_scale: Vec<f64>,
    /// Information at scales `l < ⌊L/2⌋`.
    pub omega: f64,
    /// Information at scales `l ≥ ⌊L/2⌋`.
    pub gamma: f64,
    /// Widest run of near-empty scales above scale 0, lowest first on ties.
    pub gap: Option<Gap>,
    pub localized: bool,
    /// Information above the widest gap when that gap is bounded above.
    pub gamma_above_gap: Option<f64>,
    pub gamma_folded: Option<f64>,
    /// `Γ − Γ_folded`.
    pub gamma_edge_estimate: Option<f64>,
    pub gap_threshold: f64,
}

impl LatticeSummary {
    pub fn with_gamma_folded(mut self, gamma_folded: f64) -> Self {
        self.gamma_folded = Some(gamma_folded);
        self.gamma_edge_estimate = Some(self.gamma - gamma_folded);
        self
    }

    /// Total information `Σ_l I^l`.
    pub fn total(&self) -> f64 {
        self.info_per_scale.iter().sum()
    }
}

/// Per-scale information, `Ω`, `Γ`, and gap detection.
///
/// A state counts as localized when some run of at least two near-empty
/// scales has information-carrying scales on both sides, or when `Γ` itself
/// is below the threshold.
pub fn summarize(lat: &InfoLattice, gap_threshold: f64) -> LatticeSummary {
    let len = lat.len();
    let per_scale = lat.info_per_scale();
    let cut = len / 2;
    let omega = per_scale[..cut].iter().sum();
    let gamma = per_scale[cut..].iter().sum();

    let mut runs: Vec<Gap> = Vec::new();
    let mut l = 0;
    while l < len {
        if per_scale[l] < gap_threshold {
            let start = l;
            while l < len && per_scale[l] < gap_threshold {
                l += 1;
            }
            let max_info = per_scale[start..l].iter().copied().fold(f64::MIN, f64::max);
            runs.push(Gap {
                start,
                end: l - 1,
                max_info,
            });
        } else {
            l += 1;
        }
    }
    let interior = |g: &Gap| g.start > 0 && g.end + 1 < len;
    let gap = runs
        .iter()
        .copied()
        .filter(|g| g.start > 0)
        .reduce(|best, g| if g.width() > best.width() { g } else { best });
    let localized = runs.iter().any(|g| interior(g) && g.width() >= 2) || gamma < gap_threshold;
    let gamma_above_gap = gap
        .filter(|g| g.end + 1 < len)
        .map(|g| per_scale[g.end + 1..].iter().sum());

    LatticeSummary {
        len,
        info_per_scale: per_scale,
        omega,
        gamma,
        gap,
        localized,
        gamma_above_gap,
        gamma_folded: None,
        gamma_edge_estimate: None,
        gap_threshold,
    }
}

/// Fold the chain: site `n` and `L − 1 − n` merge into one site of dimension
/// `d_n · d_{L−1−n}`, the left original site being the more significant
/// factor. For odd `L` the middle site becomes the last folded site.
pub fn fold(state: &PureState) -> Result<PureState> {
    let len = state.len();
    if len < 2 {
        return Err(Error::InvalidArgument(format!(
            "cannot fold a chain of {len} site(s)"
        )));
    }
    let half = len / 2;
    let mut order = Vec::with_capacity(len);
    let mut groups = Vec::with_capacity(half + 1);
    for n in 0..half {
        order.push(n);
        order.push(len - 1 - n);
        groups.push(2);
    }
    if len % 2 == 1 {
        order.push(half);
        groups.push(1);
    }
    state.permute_sites(&order)?.merge_sites(&groups)
}

/// `Γ` of the folded chain.
pub fn gamma_folded(state: &PureState, gap_threshold: f64) -> Result<f64> {
    let folded = fold(state)?;
    Ok(summarize(&compute_lattice(&folded)?, gap_threshold).gamma)
}
