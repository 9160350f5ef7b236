use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::eigen::{lanczos_lowest, lowest_dense, LanczosOptions};
use crate::error::{Error, Result};
use crate::rng;
use crate::state::PureState;
use crate::C64;

/// Open three-state Potts chain
/// `H = −J/3 Σ_i (Z_i† Z_{i+1} + Z_i Z_{i+1}†) − h Σ_i (X_i + X_i†)`
/// with clock `Z = diag(1, ω, ω²)` and shift `X|k⟩ = |k+1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PottsSpec {
    pub sites: usize,
    pub coupling: f64,
    pub field: f64,
}

impl PottsSpec {
    pub fn new(sites: usize, coupling: f64, field: f64) -> Result<Self> {
        let s = Self {
            sites,
            coupling,
            field,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(Error::InvalidArgument(format!(
                "Potts chain needs 2+ sites, got {}",
                self.sites
            )));
        }
        for (name, v) in [("J", self.coupling), ("h", self.field)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        3usize.pow(self.sites as u32)
    }
}

/// Real sparse matrix in compressed-row form.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseMatrix {
    fn from_rows(rows: Vec<BTreeMap<usize, f64>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = vec![0];
        let (mut cols, mut vals) = (Vec::new(), Vec::new());
        for row in rows {
            for (c, v) in row {
                if v != 0.0 {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// `y = A x`
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (r, out) in y.iter_mut().enumerate() {
            let span = self.row_ptr[r]..self.row_ptr[r + 1];
            *out = self.cols[span.clone()]
                .iter()
                .zip(&self.vals[span])
                .map(|(&c, v)| v * x[c])
                .sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k])] += self.vals[k];
            }
        }
        m
    }

    /// Largest `|A_rc − A_cr|`.
    pub fn asymmetry(&self) -> f64 {
        let d = self.to_dense();
        (&d - d.transpose()).amax()
    }
}

fn digits(mut index: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for slot in d.iter_mut().rev() {
        *slot = index % 3;
        index /= 3;
    }
    d
}

fn index_of(digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * 3 + d)
}

/// `H|s⟩` for basis state `s`, as `(target, coefficient)` pairs.
fn row_entries(spec: &PottsSpec, s: &[usize], mut emit: impl FnMut(&[usize], f64)) {
    let bond: f64 = s
        .windows(2)
        .map(|w| if w[0] == w[1] { 2.0 } else { -1.0 })
        .sum();
    emit(s, -spec.coupling / 3.0 * bond);
    if spec.field != 0.0 {
        let mut t = s.to_vec();
        for i in 0..s.len() {
            for shift in [1, 2] {
                t[i] = (s[i] + shift) % 3;
                emit(&t, -spec.field);
            }
            t[i] = s[i];
        }
    }
}

/// The Hamiltonian on the full `3^N` space. Site 0 is the most significant
/// digit of the basis index.
pub fn potts_hamiltonian(spec: &PottsSpec) -> Result<SparseMatrix> {
    spec.validate()?;
    let n = spec.sites;
    let rows = (0..spec.dim())
        .map(|r| {
            let mut row = BTreeMap::new();
            row_entries(spec, &digits(r, n), |t, v| {
                *row.entry(index_of(t)).or_insert(0.0) += v
            });
            row
        })
        .collect();
    Ok(SparseMatrix::from_rows(rows))
}

/// `∏_i X_i` applied to a qutrit state.
pub fn z3_shift(state: &PureState) -> Result<PureState> {
    if state.dims().iter().any(|&d| d != 3) {
        return Err(Error::InvalidArgument(
            "shift symmetry acts on qutrit chains".into(),
        ));
    }
    let n = state.len();
    let mut amps = vec![C64::new(0.0, 0.0); state.amplitudes().len()];
    for (k, a) in state.amplitudes().iter().enumerate() {
        let shifted: Vec<usize> = digits(k, n).iter().map(|d| (d + 1) % 3).collect();
        amps[index_of(&shifted)] = *a;
    }
    PureState::new(state.dims().to_vec(), amps)
}

/// Hamiltonian restricted to the `∏X = 1` sector in the orbit basis
/// `(|s⟩ + |s+1⟩ + |s+2⟩)/√3`, with representatives `s` having digit 0 on
/// site 0. Every orbit has exactly three elements.
fn sector_hamiltonian(spec: &PottsSpec) -> SparseMatrix {
    let n = spec.sites;
    let reps = 3usize.pow(n as u32 - 1);
    let rows = (0..reps)
        .map(|r| {
            let mut row = BTreeMap::new();
            row_entries(spec, &digits(r, n), |t, v| {
                let rep: Vec<usize> = t.iter().map(|d| (d + 3 - t[0]) % 3).collect();
                *row.entry(index_of(&rep)).or_insert(0.0) += v;
            });
            row
        })
        .collect();
    SparseMatrix::from_rows(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EigenSolver {
    /// Dense for chains of up to six sites, Lanczos beyond.
    #[default]
    Auto,
    Dense,
    Lanczos,
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: PureState,
    /// `‖Hψ − Eψ‖` on the full space.
    pub residual: f64,
}

/// Residual bound accepted for a returned ground state.
pub const GROUND_STATE_RESIDUAL: f64 = 1e-9;

pub fn symmetric_ground_state(spec: &PottsSpec) -> Result<GroundState> {
    symmetric_ground_state_with(spec, EigenSolver::Auto, 0)
}

/// Lowest eigenvector of `H` within the `∏X = 1` sector. `seed` only picks
/// the Lanczos start vector.
pub fn symmetric_ground_state_with(
    spec: &PottsSpec,
    solver: EigenSolver,
    seed: u64,
) -> Result<GroundState> {
    spec.validate()?;
    let n = spec.sites;
    let sector = sector_hamiltonian(spec);
    let dense = match solver {
        EigenSolver::Auto => n <= 6,
        EigenSolver::Dense => true,
        EigenSolver::Lanczos => false,
    };
    let lanczos = || {
        let mut g = rng::from_seed(seed);
        lanczos_lowest(
            sector.dim(),
            |x, y| sector.apply(x, y),
            &LanczosOptions::default(),
            &mut g,
        )
    };
    let pair = if dense {
        lowest_dense(&sector.to_dense()).or_else(|_| lanczos())?
    } else {
        lanczos()?
    };
    let mut full = vec![0.0; spec.dim()];
    let w = 1.0 / 3f64.sqrt();
    for (r, &c) in pair.vector.iter().enumerate() {
        let d = digits(r, n);
        for shift in 0..3 {
            let t: Vec<usize> = d.iter().map(|x| (x + shift) % 3).collect();
            full[index_of(&t)] = c * w;
        }
    }
    let h = potts_hamiltonian(spec)?;
    let mut hv = vec![0.0; full.len()];
    h.apply(&full, &mut hv);
    let residual = hv
        .iter()
        .zip(&full)
        .map(|(a, b)| (a - pair.value * b).powi(2))
        .sum::<f64>()
        .sqrt();
    if residual > GROUND_STATE_RESIDUAL {
        return Err(Error::NoConvergence(residual));
    }
    let amps = full.into_iter().map(|x| C64::new(x, 0.0)).collect();
    let state = PureState::normalized(vec![3; n], amps)?;
    Ok(GroundState {
        energy: pair.value,
        state,
        residual,
    })
}

/// Per-site isometry `|0⟩ → |00⟩`, `|1⟩ → (|01⟩ + |10⟩)/√2`, `|2⟩ → |11⟩`
/// into the triplet space of a spin pair.
fn triplet_isometry() -> DMatrix<C64> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = DMatrix::zeros(4, 3);
    v[(0, 0)] = C64::new(1.0, 0.0);
    v[(1, 1)] = C64::new(r, 0.0);
    v[(2, 1)] = C64::new(r, 0.0);
    v[(3, 2)] = C64::new(1.0, 0.0);
    v
}

/// Embed a qutrit chain of `N` sites into a `2N`-site qubit chain.
pub fn embed_qutrit_to_spins(state: &PureState) -> Result<PureState> {
    if state.dims().iter().any(|&d| d != 3) {
        return Err(Error::InvalidArgument(
            "embedding expects a qutrit chain".into(),
        ));
    }
    let v = triplet_isometry();
    let mut s = state.clone();
    for site in 0..state.len() {
        s = s.map_site(site, &v)?;
    }
    s.split_sites(&vec![vec![2, 2]; state.len()])
}
