//! Dense pure states on qudit chains.
//!
//! Site 0 is the most significant tensor factor: the amplitude of
//! `|s_0 s_1 … s_{L-1}⟩` sits at index `Σ s_j · Π_{k>j} d_k`. Sites may have
//! different local dimensions (folding an odd chain produces one), but most
//! constructors take a uniform dimension.

use nalgebra::{DMatrix, DVector};

use crate::circuit::{t_matrix, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, SupportInterval};
use crate::stabilizer::StabilizerTableau;
use crate::C64;

/// Norm tolerance for state validation.
pub const NORM_TOL: f64 = 1e-10;
/// Default cap on the side of an explicit reduced density matrix.
pub const DEFAULT_RDM_CAP: usize = 4096;
/// Largest chain accepted by [`statevector_from_tableau`] by default.
pub const DEFAULT_TABLEAU_DENSE_CAP: usize = 20;

const EIG_CLAMP: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        s[j] = s[j + 1] * dims[j + 1];
    }
    s
}

impl PureState {
    /// Wrap amplitudes; the vector must have unit norm within [`NORM_TOL`].
    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        if let Some(k) = amps
            .iter()
            .position(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::InvalidArgument(format!(
                "amplitude {k} is not finite"
            )));
        }
        let s = Self::unchecked(dims, amps)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(s)
    }

    /// Wrap and rescale amplitudes to unit norm.
    pub fn normalized(dims: Vec<usize>, mut amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::new(dims, amps)
    }

    fn unchecked(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument(format!(
                "invalid local dimensions {dims:?}"
            )));
        }
        let size = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidArgument("Hilbert space too large".into()))?;
        if amps.len() != size {
            return Err(Error::Dimension {
                expected: size,
                got: amps.len(),
            });
        }
        Ok(Self { dims, amps })
    }

    /// Computational basis state `|digits⟩`.
    pub fn product(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() {
            return Err(Error::Dimension {
                expected: dims.len(),
                got: digits.len(),
            });
        }
        let st = strides(&dims);
        let mut index = 0;
        for (j, (&s, &d)) in digits.iter().zip(&dims).enumerate() {
            if s >= d {
                return Err(Error::IndexOutOfRange { index: s, len: d });
            }
            index += s * st[j];
        }
        let size: usize = dims.iter().product();
        let mut amps = vec![C64::new(0.0, 0.0); size];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// `|0…0⟩` on `len` sites of dimension `d`.
    pub fn zero(len: usize, d: usize) -> Result<Self> {
        Self::product(vec![d; len], &vec![0; len])
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

    /// The common local dimension, if uniform.
    pub fn local_dim(&self) -> Option<usize> {
        let d = self.dims[0];
        self.dims.iter().all(|&x| x == d).then_some(d)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dims != other.dims {
            return Err(Error::Dimension {
                expected: self.amps.len(),
                got: other.amps.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `Σ log₂ d_j` over the given sites.
    pub fn log_dim(&self, interval: SupportInterval) -> f64 {
        self.dims[interval.left..=interval.right]
            .iter()
            .map(|&d| (d as f64).log2())
            .sum()
    }

    fn check_sites(&self, sites: &[usize]) -> Result<()> {
        for (k, &s) in sites.iter().enumerate() {
            if s >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    len: self.len(),
                });
            }
            if sites[..k].contains(&s) {
                return Err(Error::InvalidArgument(format!("site {s} repeated")));
            }
        }
        Ok(())
    }

    /// Apply `u` (side `d^k`) to the `k` contiguous sites starting at `q`.
    pub fn apply_unitary(&self, q: usize, u: &DMatrix<C64>) -> Result<Self> {
        let side = u.nrows();
        let mut k = 0;
        let mut acc = 1;
        while acc < side && q + k < self.len() {
            acc *= self.dims[q + k];
            k += 1;
        }
        if acc != side || k == 0 {
            return Err(Error::Dimension {
                expected: acc,
                got: side,
            });
        }
        let sites: Vec<usize> = (q..q + k).collect();
        self.apply_on_sites(&sites, u)
    }

    /// Apply `u` to an arbitrary ordered list of distinct sites; the first
    /// listed site is the most significant factor of `u`.
    pub fn apply_on_sites(&self, sites: &[usize], u: &DMatrix<C64>) -> Result<Self> {
        self.check_sites(sites)?;
        let side: usize = sites.iter().map(|&s| self.dims[s]).product();
        if u.nrows() != side || u.ncols() != side {
            return Err(Error::Dimension {
                expected: side,
                got: u.nrows(),
            });
        }
        let dev = (u.adjoint() * u - DMatrix::<C64>::identity(side, side)).camax();
        if dev > NORM_TOL {
            return Err(Error::NonUnitary(dev));
        }
        let mut out = self.clone();
        out.apply_unchecked(sites, u);
        Ok(out)
    }

    fn apply_unchecked(&mut self, sites: &[usize], u: &DMatrix<C64>) {
        let st = strides(&self.dims);
        let sub_dims: Vec<usize> = sites.iter().map(|&s| self.dims[s]).collect();
        let side: usize = sub_dims.iter().product();
        // offset of each local basis state
        let offsets: Vec<usize> = (0..side)
            .map(|mut k| {
                let mut off = 0;
                for (j, &s) in sites.iter().enumerate().rev() {
                    off += (k % sub_dims[j]) * st[s];
                    k /= sub_dims[j];
                }
                off
            })
            .collect();
        let mut buf = vec![C64::new(0.0, 0.0); side];
        for base in 0..self.amps.len() {
            if sites
                .iter()
                .any(|&s| !(base / st[s]).is_multiple_of(self.dims[s]))
            {
                continue;
            }
            for (b, &o) in buf.iter_mut().zip(&offsets) {
                *b = self.amps[base + o];
            }
            for (r, &o) in offsets.iter().enumerate() {
                self.amps[base + o] = (0..side).map(|c| u[(r, c)] * buf[c]).sum();
            }
        }
    }

    /// Run a circuit on a qubit chain.
    pub fn apply_circuit(&self, circuit: &Circuit) -> Result<Self> {
        if self.dims.iter().any(|&d| d != 2) || circuit.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: circuit.len(),
            });
        }
        let mut out = self.clone();
        for gate in circuit.gates() {
            match *gate {
                Gate::T(q) => out.apply_unchecked(&[q], &t_matrix(false)),
                Gate::Tdg(q) => out.apply_unchecked(&[q], &t_matrix(true)),
                _ => {
                    for g in gate.clifford_word().expect("Clifford gate") {
                        out.apply_unchecked(&g.qubits(), &g.matrix());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `p|ψ⟩` for a Pauli string on a qubit chain.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        if self.dims.iter().any(|&d| d != 2) || p.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: p.len(),
            });
        }
        let n = self.len();
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        let mut ys = 0u32;
        for s in 0..n {
            let bit = 1usize << (n - 1 - s);
            if p.x(s) {
                xmask |= bit;
            }
            if p.z(s) {
                zmask |= bit;
            }
            if p.x(s) && p.z(s) {
                ys += 1;
            }
        }
        // letters = i^{#Y} X^x Z^z
        let scalar = C64::i().powu((p.phase() as u32 + ys) % 4);
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (k, a) in self.amps.iter().enumerate() {
            let sign = if (zmask & k).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            amps[k ^ xmask] = a * scalar * sign;
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps,
        })
    }

    /// Apply a `d_out × d_in` isometry to one site, changing its dimension.
    pub fn map_site(&self, site: usize, v: &DMatrix<C64>) -> Result<Self> {
        self.check_sites(&[site])?;
        if v.ncols() != self.dims[site] {
            return Err(Error::Dimension {
                expected: self.dims[site],
                got: v.ncols(),
            });
        }
        let dev = (v.adjoint() * v - DMatrix::<C64>::identity(v.ncols(), v.ncols())).camax();
        if dev > NORM_TOL {
            return Err(Error::NonUnitary(dev));
        }
        let left: usize = self.dims[..site].iter().product();
        let right: usize = self.dims[site + 1..].iter().product();
        let (din, dout) = (v.ncols(), v.nrows());
        let mut amps = vec![C64::new(0.0, 0.0); left * dout * right];
        for a in 0..left {
            for b in 0..right {
                for o in 0..dout {
                    amps[(a * dout + o) * right + b] = (0..din)
                        .map(|i| v[(o, i)] * self.amps[(a * din + i) * right + b])
                        .sum();
                }
            }
        }
        let mut dims = self.dims.clone();
        dims[site] = dout;
        Self::new(dims, amps)
    }

    /// Reorder sites: new site `k` is old site `order[k]`.
    pub fn permute_sites(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: order.len(),
            });
        }
        self.check_sites(order)?;
        let new_dims: Vec<usize> = order.iter().map(|&o| self.dims[o]).collect();
        let old_st = strides(&self.dims);
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        let mut digits = vec![0usize; self.len()];
        for slot in amps.iter_mut() {
            let old: usize = digits.iter().zip(order).map(|(&s, &o)| s * old_st[o]).sum();
            *slot = self.amps[old];
            for j in (0..digits.len()).rev() {
                digits[j] += 1;
                if digits[j] < new_dims[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        Ok(Self {
            dims: new_dims,
            amps,
        })
    }

    /// Merge consecutive runs of sites into single sites (`groups` lists the
    /// run lengths). Amplitudes are unchanged.
    pub fn merge_sites(&self, groups: &[usize]) -> Result<Self> {
        if groups.iter().sum::<usize>() != self.len() || groups.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "bad site grouping {groups:?}"
            )));
        }
        let mut dims = Vec::with_capacity(groups.len());
        let mut at = 0;
        for &g in groups {
            dims.push(self.dims[at..at + g].iter().product());
            at += g;
        }
        Ok(Self {
            dims,
            amps: self.amps.clone(),
        })
    }

    /// Split every site into factors given per site (the product of each
    /// list must equal that site's dimension). Amplitudes are unchanged.
    pub fn split_sites(&self, factors: &[Vec<usize>]) -> Result<Self> {
        if factors.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: factors.len(),
            });
        }
        let mut dims = Vec::new();
        for (f, &d) in factors.iter().zip(&self.dims) {
            if f.iter().product::<usize>() != d {
                return Err(Error::InvalidArgument(format!(
                    "factors {f:?} do not multiply to {d}"
                )));
            }
            dims.extend_from_slice(f);
        }
        Self::unchecked(dims, self.amps.clone())
    }

    /// Mirror image: site `j` goes to `L − 1 − j`.
    pub fn reflected(&self) -> Self {
        let order: Vec<usize> = (0..self.len()).rev().collect();
        self.permute_sites(&order).expect("valid permutation")
    }

    /// `(A, M, B)`: dimensions left of, inside, and right of the interval.
    fn split_dims(&self, interval: SupportInterval) -> (usize, usize, usize) {
        let a = self.dims[..interval.left].iter().product();
        let m = self.dims[interval.left..=interval.right].iter().product();
        let b = self.dims[interval.right + 1..].iter().product();
        (a, m, b)
    }

    fn check_interval(&self, interval: SupportInterval) -> Result<()> {
        if interval.right >= self.len() || interval.left > interval.right {
            return Err(Error::IndexOutOfRange {
                index: interval.right,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Reduced density matrix of `interval`, refusing sides above `cap`.
    pub fn reduced_density_capped(
        &self,
        interval: SupportInterval,
        cap: usize,
    ) -> Result<ReducedDensityMatrix> {
        self.check_interval(interval)?;
        let (a, m, b) = self.split_dims(interval);
        if m > cap {
            return Err(Error::MemoryCap { side: m, cap });
        }
        let psi = DMatrix::from_fn(m, a * b, |row, col| {
            let (ai, bi) = (col / b, col % b);
            self.amps[(ai * m + row) * b + bi]
        });
        let rho = &psi * psi.adjoint();
        let matrix = (&rho + rho.adjoint()).scale(0.5);
        Ok(ReducedDensityMatrix {
            interval,
            dims: self.dims[interval.left..=interval.right].to_vec(),
            matrix,
        })
    }

    /// Reduced density matrix with the default cap.
    pub fn reduced_density(&self, interval: SupportInterval) -> Result<ReducedDensityMatrix> {
        self.reduced_density_capped(interval, DEFAULT_RDM_CAP)
    }

    /// Von Neumann entropy (bits) of `interval` from the Schmidt values of
    /// the bipartition, falling back to the spectrum of the smaller Gram
    /// matrix when the decomposition fails validation.
    pub fn entropy(&self, interval: SupportInterval) -> Result<f64> {
        self.check_interval(interval)?;
        let (a, m, b) = self.split_dims(interval);
        let psi = DMatrix::from_fn(m, a * b, |row, col| {
            let (ai, bi) = (col / b, col % b);
            self.amps[(ai * m + row) * b + bi]
        });
        let schmidt: Vec<f64> = psi
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .map(|s| s * s)
            .collect();
        if spectrum_is_consistent(&schmidt, 1.0, None) {
            return entropy_of_eigenvalues(schmidt);
        }
        let gram = if m <= a * b {
            &psi * psi.adjoint()
        } else {
            psi.adjoint() * &psi
        };
        entropy_of_eigenvalues(hermitian_spectrum(&(&gram + gram.adjoint()).scale(0.5))?)
    }
}

const SPECTRUM_TOL: f64 = 1e-8;

/// Finite values whose sum matches `trace` and, when given, whose sum of
/// squares matches the squared Frobenius norm.
fn spectrum_is_consistent(eigs: &[f64], trace: f64, frob2: Option<f64>) -> bool {
    let sum: f64 = eigs.iter().sum();
    let sq: f64 = eigs.iter().map(|e| e * e).sum();
    eigs.iter().all(|e| e.is_finite())
        && (sum - trace).abs() <= SPECTRUM_TOL * trace.abs().max(1.0)
        && frob2.is_none_or(|f| (sq - f).abs() <= SPECTRUM_TOL * f.max(1.0))
}

/// Eigenvalues of a Hermitian matrix. The symmetric QR solver can return
/// non-finite values on very sparse inputs; such results are replaced by
/// singular values, which coincide with the eigenvalues of a positive
/// semidefinite matrix.
pub fn hermitian_spectrum(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let trace = m.trace().re;
    let frob2 = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    if spectrum_is_consistent(&eigs, trace, Some(frob2)) {
        return Ok(eigs);
    }
    let sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    if spectrum_is_consistent(&sv, trace, Some(frob2)) {
        return Ok(sv);
    }
    Err(Error::Internal(
        "Hermitian eigendecomposition failed validation".into(),
    ))
}

/// Density matrix of a contiguous subsystem.
#[derive(Clone, Debug)]
pub struct ReducedDensityMatrix {
    pub interval: SupportInterval,
    pub dims: Vec<usize>,
    pub matrix: DMatrix<C64>,
}

impl ReducedDensityMatrix {
    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut e = hermitian_spectrum(&self.matrix)?;
        e.sort_by(f64::total_cmp);
        Ok(e)
    }

    pub fn von_neumann_entropy(&self) -> Result<f64> {
        von_neumann_entropy(self)
    }
}

/// `−Σ λ log₂ λ` with `0 log 0 = 0`. Slightly negative eigenvalues are
/// clamped to zero; anything below `−1e−9` is reported as corruption.
pub fn entropy_of_eigenvalues(eigs: impl IntoIterator<Item = f64>) -> Result<f64> {
    let mut s = 0.0;
    for l in eigs {
        if !l.is_finite() {
            return Err(Error::Internal(format!("non-finite eigenvalue {l}")));
        }
        if l < -EIG_CLAMP {
            return Err(Error::CorruptedInput(l));
        }
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy(rdm: &ReducedDensityMatrix) -> Result<f64> {
    entropy_of_eigenvalues(hermitian_spectrum(&rdm.matrix)?)
}

/// Solve `A k = c` over GF(2) for a bit vector `k`; rows of `A` are masks.
fn solve_gf2(rows: &[(usize, bool)], nbits: usize) -> Option<usize> {
    let mut rows: Vec<(usize, bool)> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for bit in (0..nbits).rev() {
        let mask = 1usize << bit;
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0 & mask != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0 & mask != 0 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        pivots.push(bit);
        r += 1;
    }
    if rows[r..].iter().any(|&(m, c)| m == 0 && c) {
        return None;
    }
    let mut k = 0usize;
    for (row, &bit) in rows.iter().zip(&pivots) {
        if row.1 {
            k |= 1 << bit;
        }
    }
    Some(k)
}

/// The statevector stabilized by every generator of `t`, up to global phase.
pub fn statevector_from_tableau(t: &StabilizerTableau) -> Result<PureState> {
    statevector_from_tableau_capped(t, DEFAULT_TABLEAU_DENSE_CAP)
}

pub fn statevector_from_tableau_capped(t: &StabilizerTableau, max_len: usize) -> Result<PureState> {
    let n = t.len();
    if n > max_len {
        return Err(Error::MemoryCap {
            side: n,
            cap: max_len,
        });
    }
    // Z-type elements ±Z^v fix the parities v·k of every basis state in the
    // support; any solution k has nonzero overlap with the state.
    let mut rows = t.generators().to_vec();
    let x_cols: Vec<usize> = (0..n).map(|s| 2 * s).collect();
    let z_cols: Vec<usize> = (0..n).map(|s| 2 * s + 1).collect();
    let order: Vec<usize> = x_cols.iter().chain(&z_cols).copied().collect();
    let pivots = crate::pauli::eliminate(&mut rows, &order);
    let n_x = pivots.iter().filter(|c| *c % 2 == 0).count();
    let constraints: Vec<(usize, bool)> = rows[n_x..]
        .iter()
        .map(|g| {
            let mask = (0..n)
                .filter(|&s| g.z(s))
                .map(|s| 1usize << (n - 1 - s))
                .fold(0, |a, b| a | b);
            (mask, g.phase() == 2)
        })
        .collect();
    let k = solve_gf2(&constraints, n)
        .ok_or_else(|| Error::InconsistentTableau("Z-type stabilizers are contradictory".into()))?;
    let size = 1usize << n;
    let mut amps = vec![C64::new(0.0, 0.0); size];
    amps[k] = C64::new(1.0, 0.0);
    let mut psi = PureState {
        dims: vec![2; n],
        amps,
    };
    for g in t.generators() {
        let gpsi = psi.apply_pauli(g)?;
        for (a, b) in psi.amps.iter_mut().zip(gpsi.amps) {
            *a = (*a + b) * 0.5;
        }
    }
    let psi = PureState::normalized(vec![2; n], psi.amps)?;
    for g in t.generators() {
        let gpsi = psi.apply_pauli(g)?;
        let dev = psi
            .amps
            .iter()
            .zip(&gpsi.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if dev > NORM_TOL {
            return Err(Error::InconsistentTableau(format!(
                "{g} does not stabilize the state ({dev:.2e})"
            )));
        }
    }
    Ok(psi)
}

/// Haar-random pure state on the given dimensions.
pub fn haar_random(dims: Vec<usize>, rng: &mut crate::rng::Rng) -> Result<PureState> {
    use rand_distr::{Distribution, StandardNormal};
    let size: usize = dims.iter().product();
    let amps = (0..size)
        .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    PureState::normalized(dims, amps)
}

/// Haar-random `n × n` unitary via QR of a complex Gaussian matrix.
pub fn haar_unitary(n: usize, rng: &mut crate::rng::Rng) -> DMatrix<C64> {
    use rand_distr::{Distribution, StandardNormal};
    let g = DMatrix::from_fn(n, n, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DVector::from_fn(n, |i, _| {
        let d = r[(i, i)];
        if d.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            d / d.norm()
        }
    });
    let mut u = q;
    for (j, ph) in phases.iter().enumerate() {
        for i in 0..n {
            u[(i, j)] *= *ph;
        }
    }
    u
}
