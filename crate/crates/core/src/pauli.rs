//! Pauli strings in the symplectic representation and Gaussian elimination
//! over GF(2).
//!
//! A [`PauliString`] on `L` sites stores one X bit and one Z bit per site,
//! packed into 64-bit words, plus a phase exponent `k` so that the operator is
//! `i^k σ_0 ⊗ … ⊗ σ_{L-1}` with `σ ∈ {I, X, Y, Z}` selected by `(x, z)`:
//! `(0,0) = I`, `(1,0) = X`, `(1,1) = Y`, `(0,1) = Z`. Hermitian strings
//! therefore carry an exponent of 0 or 2.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS).max(1)
}

/// Single-site Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' | '_' | '.' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Inclusive interval `[left, right]` of chain sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportInterval {
    pub left: usize,
    pub right: usize,
}

impl SupportInterval {
    /// Interval on a chain of `len` sites; fails unless `left <= right < len`.
    pub fn new(left: usize, right: usize, len: usize) -> Result<Self> {
        if right >= len {
            return Err(Error::IndexOutOfRange { index: right, len });
        }
        if left > right {
            return Err(Error::InvalidArgument(format!(
                "interval left {left} exceeds right {right}"
            )));
        }
        Ok(Self { left, right })
    }

    /// Interval of the given scale (diameter) starting at `left`.
    pub fn with_scale(left: usize, scale: usize) -> Self {
        Self {
            left,
            right: left + scale,
        }
    }

    /// Scale `l = right - left`.
    pub fn diameter(&self) -> usize {
        self.right - self.left
    }

    /// Number of sites, `l + 1`.
    pub fn len(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Center `n = (left + right) / 2`, a half-integer.
    pub fn center(&self) -> f64 {
        (self.left + self.right) as f64 / 2.0
    }

    pub fn contains(&self, site: usize) -> bool {
        self.left <= site && site <= self.right
    }

    pub fn contains_interval(&self, other: &SupportInterval) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

impl fmt::Display for SupportInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.left, self.right)
    }
}

/// A Pauli string with exact phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    len: usize,
    xs: Vec<u64>,
    zs: Vec<u64>,
    phase: u8,
}

impl PauliString {
    /// The identity on `len` sites.
    pub fn identity(len: usize) -> Self {
        let words = words_for(len);
        Self {
            len,
            xs: vec![0; words],
            zs: vec![0; words],
            phase: 0,
        }
    }

    /// A single-site Pauli embedded in a chain of `len` sites.
    pub fn single(len: usize, site: usize, pauli: Pauli) -> Result<Self> {
        let mut p = Self::identity(len);
        if site >= len {
            return Err(Error::IndexOutOfRange { index: site, len });
        }
        p.set(site, pauli);
        Ok(p)
    }

    /// Build from letters with phase exponent 0.
    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut p = Self::identity(paulis.len());
        for (site, &pauli) in paulis.iter().enumerate() {
            p.set(site, pauli);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Phase exponent `k` of `i^k`, in `0..4`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.set_phase(phase);
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) & 3;
        self
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    pub fn x(&self, site: usize) -> bool {
        self.xs[site / WORD_BITS] >> (site % WORD_BITS) & 1 == 1
    }

    pub fn z(&self, site: usize) -> bool {
        self.zs[site / WORD_BITS] >> (site % WORD_BITS) & 1 == 1
    }

    pub fn get(&self, site: usize) -> Pauli {
        Pauli::from_bits(self.x(site), self.z(site))
    }

    pub fn set_x(&mut self, site: usize, value: bool) {
        let mask = 1u64 << (site % WORD_BITS);
        let w = &mut self.xs[site / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn set_z(&mut self, site: usize, value: bool) {
        let mask = 1u64 << (site % WORD_BITS);
        let w = &mut self.zs[site / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn set(&mut self, site: usize, pauli: Pauli) {
        let (x, z) = pauli.bits();
        self.set_x(site, x);
        self.set_z(site, z);
    }

    /// True when every site carries the identity (phase is ignored).
    pub fn is_identity(&self) -> bool {
        self.xs.iter().chain(self.zs.iter()).all(|&w| w == 0)
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.xs
            .iter()
            .zip(&self.zs)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Bit of symplectic column `col`: column `2s` is the X bit of site `s`,
    /// column `2s + 1` its Z bit.
    pub fn column(&self, col: usize) -> bool {
        if col.is_multiple_of(2) {
            self.x(col / 2)
        } else {
            self.z(col / 2)
        }
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Dimension {
                expected: self.len,
                got: other.len,
            });
        }
        Ok(())
    }

    /// Exact product `self · rhs`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.check_len(rhs)?;
        let mut out = self.clone();
        out.mul_assign_right(rhs);
        Ok(out)
    }

    /// `self ← self · rhs`. Lengths must agree.
    pub(crate) fn mul_assign_right(&mut self, rhs: &Self) {
        debug_assert_eq!(self.len, rhs.len);
        // Two-bit counters per bit position accumulate the i^±1 factors of
        // the single-site products.
        let mut cnt1 = 0u64;
        let mut cnt2 = 0u64;
        for w in 0..self.xs.len() {
            let (x1, z1) = (self.xs[w], self.zs[w]);
            let (x2, z2) = (rhs.xs[w], rhs.zs[w]);
            let nx = x1 ^ x2;
            let nz = z1 ^ z2;
            let x1z2 = x1 & z2;
            let anti = (x2 & z1) ^ x1z2;
            cnt2 ^= (cnt1 ^ nx ^ nz ^ x1z2) & anti;
            cnt1 ^= anti;
            self.xs[w] = nx;
            self.zs[w] = nz;
        }
        let log_i = cnt1.count_ones() + 2 * cnt2.count_ones();
        self.phase = ((self.phase as u32 + rhs.phase as u32 + log_i) & 3) as u8;
    }

    /// Symplectic inner product mod 2 (0 when the strings commute).
    fn symplectic(&self, other: &Self) -> u32 {
        self.xs
            .iter()
            .zip(&self.zs)
            .zip(other.xs.iter().zip(&other.zs))
            .map(|((x1, z1), (x2, z2))| ((x1 & z2) ^ (z1 & x2)).count_ones())
            .sum::<u32>()
            & 1
    }

    /// True iff the two strings commute.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.symplectic(other) == 0)
    }

    /// Smallest interval containing every non-identity site, or `None` for
    /// the identity.
    pub fn minimal_support(&self) -> Option<SupportInterval> {
        let mut left = None;
        let mut right = None;
        for (w, (x, z)) in self.xs.iter().zip(&self.zs).enumerate() {
            let m = x | z;
            if m == 0 {
                continue;
            }
            if left.is_none() {
                left = Some(w * WORD_BITS + m.trailing_zeros() as usize);
            }
            right = Some(w * WORD_BITS + (WORD_BITS - 1 - m.leading_zeros() as usize));
        }
        Some(SupportInterval {
            left: left?,
            right: right?,
        })
    }

    /// True when all non-identity sites lie inside `interval`.
    pub fn supported_in(&self, interval: &SupportInterval) -> bool {
        match self.minimal_support() {
            None => true,
            Some(s) => interval.contains_interval(&s),
        }
    }

    /// Letters on the given sites, as a new string with phase 0.
    pub fn restricted(&self, sites: &[usize]) -> PauliString {
        let mut p = PauliString::identity(sites.len());
        for (k, &s) in sites.iter().enumerate() {
            p.set(k, self.get(s));
        }
        p
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match (self.phase, f.sign_plus()) {
            (0, true) => "+",
            (0, false) => "",
            (1, _) => "+i",
            (2, _) => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for s in 0..self.len {
            write!(f, "{}", self.get(s).letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let paulis = body
            .chars()
            .map(|c| {
                Pauli::from_letter(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("invalid Pauli letter {c:?} in {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if paulis.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: format!("empty Pauli string {s:?}"),
            });
        }
        Ok(PauliString::from_paulis(&paulis).with_phase(phase))
    }
}

/// Gaussian elimination of `rows` over the phaseless symplectic space,
/// processing columns in `order`. Rows are replaced by products so phases
/// stay exact. On return the first `k` rows are the pivot rows (in pivot
/// order) and the returned vector lists their pivot columns; the remaining
/// rows are identity up to phase on every column in `order`.
pub(crate) fn eliminate(rows: &mut [PauliString], order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].column(col)) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let (before, pivot) = head.split_at_mut(r);
        let pivot = &pivot[0];
        for row in before.iter_mut().chain(tail.iter_mut()) {
            if row.column(col) {
                row.mul_assign_right(pivot);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Default column order: site 0 X, site 0 Z, site 1 X, ...
pub(crate) fn natural_order(len: usize) -> Vec<usize> {
    (0..2 * len).collect()
}

/// Reduce a list of strings to an independent generating set of their span.
///
/// Independence is decided on the phaseless bits; the returned basis strings
/// are exact products of the inputs, so they carry correct phases. Empty input
/// gives rank 0.
pub fn row_reduce(generators: &[PauliString]) -> Result<(Vec<PauliString>, usize)> {
    let Some(first) = generators.first() else {
        return Ok((Vec::new(), 0));
    };
    for g in generators {
        first.check_len(g)?;
    }
    let mut rows = generators.to_vec();
    let pivots = eliminate(&mut rows, &natural_order(first.len()));
    let rank = pivots.len();
    rows.truncate(rank);
    Ok((rows, rank))
}

/// GF(2) rank of a set of strings.
pub fn rank(generators: &[PauliString]) -> Result<usize> {
    row_reduce(generators).map(|(_, r)| r)
}
