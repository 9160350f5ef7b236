//! Stabilizer tableaux: Clifford evolution, subgroup restriction to
//! intervals, the exact integer information lattice and maximally local
//! generating sets.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, CliffordGate, Gate};
use crate::error::{Error, Result};
use crate::lattice::InfoLattice;
use crate::pauli::{self, PauliString, SupportInterval};

/// `L` independent, commuting, Hermitian generators of a stabilizer group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    len: usize,
    generators: Vec<PauliString>,
}

/// A generator of a maximally local generating set, with the lattice site
/// `(n, l)` of the interval at which it was admitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlgsEntry {
    pub generator: PauliString,
    pub interval: SupportInterval,
}

impl MlgsEntry {
    pub fn center(&self) -> f64 {
        self.interval.center()
    }

    pub fn scale(&self) -> usize {
        self.interval.diameter()
    }
}

impl StabilizerTableau {
    /// The `|0…0⟩` state, stabilized by `Z_0, …, Z_{L-1}`.
    pub fn new(len: usize) -> Self {
        let generators = (0..len)
            .map(|s| {
                let mut p = PauliString::identity(len);
                p.set_z(s, true);
                p
            })
            .collect();
        Self { len, generators }
    }

    /// Validate and wrap a generator list.
    pub fn from_generators(generators: Vec<PauliString>) -> Result<Self> {
        let len = generators.first().map(PauliString::len).unwrap_or(0);
        if generators.len() != len || len == 0 {
            return Err(Error::InconsistentTableau(format!(
                "need exactly one generator per site, got {} on {} sites",
                generators.len(),
                len
            )));
        }
        for g in &generators {
            if g.len() != len {
                return Err(Error::Dimension {
                    expected: len,
                    got: g.len(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::InconsistentTableau(format!("{g} is not Hermitian")));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes(b)? {
                    return Err(Error::InconsistentTableau(format!(
                        "{a} and {b} anticommute"
                    )));
                }
            }
        }
        if pauli::rank(&generators)? != len {
            return Err(Error::InconsistentTableau(
                "generators are not independent".into(),
            ));
        }
        Ok(Self { len, generators })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// Conjugate every generator by `gate`.
    pub fn apply(&mut self, gate: CliffordGate) -> Result<()> {
        gate.validate(self.len)?;
        for g in &mut self.generators {
            gate.conjugate(g);
        }
        Ok(())
    }

    pub fn applied(mut self, gate: CliffordGate) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    /// Run a Clifford-only circuit; T gates are rejected.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.len() != self.len {
            return Err(Error::Dimension {
                expected: self.len,
                got: circuit.len(),
            });
        }
        for gate in circuit.gates() {
            let word = gate.clifford_word().ok_or_else(|| {
                Error::Config(format!(
                    "non-Clifford gate `{gate}` in a stabilizer circuit"
                ))
            })?;
            for g in word {
                self.apply(g)?;
            }
        }
        Ok(())
    }

    /// Tableau of `circuit` applied to `|0…0⟩`.
    pub fn from_circuit(circuit: &Circuit) -> Result<Self> {
        let mut t = Self::new(circuit.len());
        t.apply_circuit(circuit)?;
        Ok(t)
    }

    /// True iff `p` (with its phase) is an element of the stabilizer group.
    pub fn contains(&self, p: &PauliString) -> Result<bool> {
        if p.len() != self.len {
            return Err(Error::Dimension {
                expected: self.len,
                got: p.len(),
            });
        }
        let mut rows = self.generators.clone();
        let pivots = pauli::eliminate(&mut rows, &pauli::natural_order(self.len));
        let mut t = p.clone();
        for (row, &col) in rows.iter().zip(&pivots) {
            if t.column(col) {
                t.mul_assign_right(row);
            }
        }
        Ok(t.is_identity() && t.phase() == 0)
    }

    /// Generators of the subgroup of elements acting as identity outside
    /// `interval`, and its rank.
    ///
    /// Columns outside the interval are eliminated first (leftmost exterior
    /// site first, X before Z); rows left without an exterior pivot are
    /// supported inside the interval and generate the subgroup.
    pub fn restrict_subgroup(
        &self,
        interval: SupportInterval,
    ) -> Result<(Vec<PauliString>, usize)> {
        if interval.right >= self.len {
            return Err(Error::IndexOutOfRange {
                index: interval.right,
                len: self.len,
            });
        }
        let exterior: Vec<usize> = (0..self.len)
            .filter(|s| !interval.contains(*s))
            .flat_map(|s| [2 * s, 2 * s + 1])
            .collect();
        let interior = (interval.left..=interval.right).flat_map(|s| [2 * s, 2 * s + 1]);
        let order: Vec<usize> = exterior.iter().copied().chain(interior).collect();
        let mut rows = self.generators.clone();
        let pivots = pauli::eliminate(&mut rows, &order);
        let n_exterior = pivots.iter().filter(|c| exterior.contains(c)).count();
        let sub: Vec<PauliString> = rows
            .drain(n_exterior..)
            .filter(|r| !r.is_identity())
            .collect();
        let rank = sub.len();
        Ok((sub, rank))
    }

    /// Rank of the interval subgroup.
    pub fn subgroup_rank(&self, interval: SupportInterval) -> Result<usize> {
        self.restrict_subgroup(interval).map(|(_, r)| r)
    }

    /// Entanglement entropy of `interval` in bits, `|A| − rank(G_A)`.
    pub fn stabilizer_entropy(&self, interval: SupportInterval) -> Result<f64> {
        let rank = self.subgroup_rank(interval)?;
        Ok((interval.len() - rank) as f64)
    }

    /// Exact lattice from subgroup ranks:
    /// `i = |G_n^l| − |G_{n−½}^{l−1}| − |G_{n+½}^{l−1}| + |G_n^{l−2}|`.
    pub fn integer_info_lattice(&self) -> Result<InfoLattice> {
        InfoLattice::from_information(vec![2; self.len], |iv| {
            self.subgroup_rank(iv).map(|r| r as f64)
        })
    }

    /// Maximally local generating set: scales are scanned upward from 0,
    /// intervals left to right, and subgroup generators are admitted in
    /// row-reduced order whenever they are independent of everything admitted
    /// so far.
    pub fn maximally_local_generating_set(&self) -> Result<Vec<MlgsEntry>> {
        // Echelon basis of admitted strings; each row is reduced against the
        // earlier ones and keyed by its pivot column.
        let mut echelon: Vec<(usize, PauliString)> = Vec::new();
        let mut entries = Vec::with_capacity(self.len);
        for scale in 0..self.len {
            for left in 0..self.len - scale {
                let interval = SupportInterval::with_scale(left, scale);
                let (sub, _) = self.restrict_subgroup(interval)?;
                for g in sub {
                    let mut t = g.clone();
                    for (col, row) in &echelon {
                        if t.column(*col) {
                            t.mul_assign_right(row);
                        }
                    }
                    let Some(col) = (0..2 * self.len).find(|&c| t.column(c)) else {
                        continue;
                    };
                    echelon.push((col, t));
                    entries.push(MlgsEntry {
                        generator: g,
                        interval,
                    });
                    if entries.len() == self.len {
                        return Ok(entries);
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "maximally local generating set has only {} of {} generators",
            entries.len(),
            self.len
        )))
    }

    /// All `2^L` group elements; only sensible for small `L`.
    pub fn group_elements(&self) -> Vec<PauliString> {
        let mut out = vec![PauliString::identity(self.len)];
        for g in &self.generators {
            let extra: Vec<PauliString> = out
                .iter()
                .map(|e| e.multiply(g).expect("same length"))
                .collect();
            out.extend(extra);
        }
        out
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{g:+}")?;
        }
        Ok(())
    }
}

/// One signed Pauli string per line; `#` starts a comment.
impl FromStr for StabilizerTableau {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p: PauliString = line.parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    line: lineno + 1,
                    message,
                },
                other => other,
            })?;
            gens.push(p);
        }
        Self::from_generators(gens)
    }
}

/// Tableau of a circuit containing only Clifford gates; errors name the
/// first offending gate.
pub fn tableau_from_gates(len: usize, gates: &[Gate]) -> Result<StabilizerTableau> {
    let mut c = Circuit::new(len);
    for g in gates {
        c.push(*g)?;
    }
    StabilizerTableau::from_circuit(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random_clifford_circuit;
    use crate::models::{reference_tableau, ReferenceState};
    use CliffordGate::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn ghz4() -> StabilizerTableau {
        reference_tableau(ReferenceState::Ghz, 4).unwrap()
    }

    #[test]
    fn hadamard_maps_z_to_x() {
        let t = StabilizerTableau::new(4).applied(H(0)).unwrap();
        assert_eq!(t.generators()[0], p("XIII"));
    }

    #[test]
    fn phase_gate_maps_x_to_y() {
        let t = StabilizerTableau::new(4)
            .applied(H(0))
            .unwrap()
            .applied(S(0))
            .unwrap();
        assert_eq!(t.generators()[0], p("YIII"));
    }

    #[test]
    fn ghz_circuit_generates_the_printed_group() {
        let t = StabilizerTableau::new(4)
            .applied(H(0))
            .and_then(|t| t.applied(Cnot(0, 1)))
            .and_then(|t| t.applied(Cnot(1, 2)))
            .and_then(|t| t.applied(Cnot(2, 3)))
            .unwrap();
        let printed = [
            "ZZII", "ZIZI", "ZIIZ", "IZZI", "IZIZ", "IIZZ", "ZZZZ", "XXXX", "-XXYY", "-XYXY",
            "-XYYX", "-YXXY", "-YXYX", "-YYXX", "YYYY",
        ];
        for s in printed {
            assert!(t.contains(&p(s)).unwrap(), "{s}");
        }
        assert!(!t.contains(&p("-ZZII")).unwrap());
        assert!(!t.contains(&p("XXYY")).unwrap());
        assert!(!t.contains(&p("ZIII")).unwrap());
    }

    #[test]
    fn index_out_of_range() {
        let mut t = StabilizerTableau::new(2);
        assert!(t.apply(H(2)).is_err());
        assert!(t.apply(Cnot(1, 1)).is_err());
    }

    #[test]
    fn restriction_ranks() {
        let t = ghz4();
        let (gens, r) = t
            .restrict_subgroup(SupportInterval::new(0, 1, 4).unwrap())
            .unwrap();
        assert_eq!(r, 1);
        assert_eq!(gens[0], p("ZZII"));
        assert_eq!(
            t.subgroup_rank(SupportInterval::new(0, 2, 4).unwrap())
                .unwrap(),
            2
        );
        let prod = StabilizerTableau::new(6);
        for (a, b) in [(0, 0), (1, 3), (0, 5)] {
            let iv = SupportInterval::new(a, b, 6).unwrap();
            assert_eq!(prod.subgroup_rank(iv).unwrap(), b - a + 1);
        }
    }

    #[test]
    fn entropies() {
        let t = ghz4();
        let e = |a, b| {
            t.stabilizer_entropy(SupportInterval::new(a, b, 4).unwrap())
                .unwrap()
        };
        assert_eq!(e(0, 1), 1.0);
        assert_eq!(e(0, 2), 1.0);
        assert_eq!(e(0, 3), 0.0);
    }

    #[test]
    fn neel_lattice_and_mlgs() {
        let t = reference_tableau(ReferenceState::Neel, 4).unwrap();
        let lat = t.integer_info_lattice().unwrap();
        for (n, l, v) in lat.sites() {
            assert_eq!(v, if l == 0 { 1.0 } else { 0.0 }, "({n},{l})");
        }
        let m = t.maximally_local_generating_set().unwrap();
        let got: Vec<String> = m.iter().map(|e| e.generator.to_string()).collect();
        assert_eq!(got, ["ZIII", "-IZII", "IIZI", "-IIIZ"]);
        assert!(m.iter().all(|e| e.scale() == 0));
    }

    #[test]
    fn ghz_lattice_and_mlgs() {
        let t = ghz4();
        let lat = t.integer_info_lattice().unwrap();
        for (n, l, v) in lat.sites() {
            let want = if l == 1 || (l == 3 && n == 1.5) {
                1.0
            } else {
                0.0
            };
            assert_eq!(v, want, "({n},{l})");
        }
        let m = t.maximally_local_generating_set().unwrap();
        let bonds: Vec<String> = m[..3].iter().map(|e| e.generator.to_string()).collect();
        assert_eq!(bonds, ["ZZII", "IZZI", "IIZZ"]);
        assert_eq!(m[3].scale(), 3);
        assert!(t.contains(&m[3].generator).unwrap());
    }

    #[test]
    fn bell_lattice_and_mlgs() {
        let t = reference_tableau(ReferenceState::CentralBell, 4).unwrap();
        let lat = t.integer_info_lattice().unwrap();
        assert_eq!(lat.at(0.0, 0), Some(1.0));
        assert_eq!(lat.at(3.0, 0), Some(1.0));
        assert_eq!(lat.at(1.5, 1), Some(2.0));
        assert_eq!(lat.total(), 4.0);
        let m = t.maximally_local_generating_set().unwrap();
        assert_eq!(m[0].generator, p("ZIII"));
        assert_eq!(m[1].generator, p("-IIIZ"));
        let allowed = [p("IXXI"), p("IYYI"), p("-IZZI")];
        for e in &m[2..] {
            assert_eq!(e.interval, SupportInterval::new(1, 2, 4).unwrap());
            assert!(allowed.contains(&e.generator), "{}", e.generator);
        }
    }

    #[test]
    fn mlgs_multiplicities_match_lattice_on_random_circuits() {
        for seed in 0..20 {
            let c = random_clifford_circuit(8, 3, seed).unwrap();
            let t = StabilizerTableau::from_circuit(&c).unwrap();
            let lat = t.integer_info_lattice().unwrap();
            let m = t.maximally_local_generating_set().unwrap();
            for e in &m {
                assert_eq!(e.generator.minimal_support(), Some(e.interval));
            }
            for (n, l, v) in lat.sites() {
                let count = m
                    .iter()
                    .filter(|e| e.center() == n && e.scale() == l)
                    .count();
                assert_eq!(count as f64, v, "seed {seed} site ({n},{l})");
            }
        }
    }

    #[test]
    fn tableau_text_roundtrip_and_validation() {
        let t = ghz4();
        let back: StabilizerTableau = t.to_string().parse().unwrap();
        assert_eq!(back, t);
        assert!("XI\nZI\n".parse::<StabilizerTableau>().is_err());
        assert!("ZI\nZI\n".parse::<StabilizerTableau>().is_err());
        assert!("+iZI\nIZ\n".parse::<StabilizerTableau>().is_err());
    }

    #[test]
    fn non_clifford_circuit_is_rejected() {
        let err = tableau_from_gates(2, &[Gate::T(0)]).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }
}
