//! Gates, circuits and the line-oriented circuit file format.
//!
//! ```text
//! # comment
//! QUBITS 4
//! H 0
//! CNOT 0 1
//! LAYER
//! T 3
//! ```
//!
//! Recognized gate lines: `H q`, `S q`, `SDG q`, `X q`, `Y q`, `Z q`,
//! `CNOT c t` (alias `CX`), `CZ a b`, `T q`, `TDG q`, `C2 a b index` (element
//! `index` of the enumerated two-qubit Clifford group) and `LAYER` (a layer
//! boundary marker with no action). Random directives need a seed:
//! `RCLIFF a b` (uniform two-qubit Clifford), `RLAYER` (a brickwork layer of
//! uniform two-qubit Cliffords, alternating pair offset), `RT` (T on a uniform
//! random qubit) and `TDOPED blocks layers t_gates` (a T-doped Clifford
//! circuit over the whole chain).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng as _;

use crate::clifford2;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::rng::{self, Rng};
use crate::C64;

/// Elementary Clifford gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl CliffordGate {
    pub fn qubits(&self) -> Vec<usize> {
        use CliffordGate::*;
        match *self {
            H(q) | S(q) | Sdg(q) | X(q) | Y(q) | Z(q) => vec![q],
            Cnot(a, b) | Cz(a, b) => vec![a, b],
        }
    }

    /// Same gate with qubits relabelled through `map`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Self {
        use CliffordGate::*;
        match *self {
            H(q) => H(map(q)),
            S(q) => S(map(q)),
            Sdg(q) => Sdg(map(q)),
            X(q) => X(map(q)),
            Y(q) => Y(map(q)),
            Z(q) => Z(map(q)),
            Cnot(a, b) => Cnot(map(a), map(b)),
            Cz(a, b) => Cz(map(a), map(b)),
        }
    }

    pub(crate) fn validate(&self, len: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= len {
                return Err(Error::IndexOutOfRange { index: q, len });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument(format!(
                "two-qubit gate on repeated qubit {}",
                qs[0]
            )));
        }
        Ok(())
    }

    /// `p ← U p U†`. Indices must be valid.
    pub fn conjugate(&self, p: &mut PauliString) {
        use CliffordGate::*;
        let flip = |p: &mut PauliString, cond: bool| {
            if cond {
                p.set_phase(p.phase() + 2);
            }
        };
        match *self {
            H(q) => {
                let (x, z) = (p.x(q), p.z(q));
                flip(p, x && z);
                p.set_x(q, z);
                p.set_z(q, x);
            }
            S(q) => {
                let (x, z) = (p.x(q), p.z(q));
                flip(p, x && z);
                p.set_z(q, z ^ x);
            }
            Sdg(q) => {
                let (x, z) = (p.x(q), p.z(q));
                flip(p, x && !z);
                p.set_z(q, z ^ x);
            }
            X(q) => {
                let z = p.z(q);
                flip(p, z);
            }
            Y(q) => {
                let (x, z) = (p.x(q), p.z(q));
                flip(p, x ^ z);
            }
            Z(q) => {
                let x = p.x(q);
                flip(p, x);
            }
            Cnot(c, t) => {
                let (xc, zc, xt, zt) = (p.x(c), p.z(c), p.x(t), p.z(t));
                flip(p, xc && zt && !(xt ^ zc));
                p.set_x(t, xt ^ xc);
                p.set_z(c, zc ^ zt);
            }
            Cz(a, b) => {
                H(b).conjugate(p);
                Cnot(a, b).conjugate(p);
                H(b).conjugate(p);
            }
        }
    }

    /// Dense matrix on the gate's qubits, in the order of [`Self::qubits`].
    pub fn matrix(&self) -> DMatrix<C64> {
        use CliffordGate::*;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| C64::new(re, im);
        let m2 = |a: [C64; 4]| DMatrix::from_row_slice(2, 2, &a);
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        match *self {
            H(_) => m2([c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)]),
            S(_) => m2([l, o, o, c(0.0, 1.0)]),
            Sdg(_) => m2([l, o, o, c(0.0, -1.0)]),
            X(_) => m2([o, l, l, o]),
            Y(_) => m2([o, c(0.0, -1.0), c(0.0, 1.0), o]),
            Z(_) => m2([l, o, o, c(-1.0, 0.0)]),
            Cnot(_, _) => {
                let mut m = DMatrix::zeros(4, 4);
                m[(0, 0)] = l;
                m[(1, 1)] = l;
                m[(2, 3)] = l;
                m[(3, 2)] = l;
                m
            }
            Cz(_, _) => {
                let mut m = DMatrix::identity(4, 4);
                m[(3, 3)] = c(-1.0, 0.0);
                m
            }
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CliffordGate::*;
        match *self {
            H(q) => write!(f, "H {q}"),
            S(q) => write!(f, "S {q}"),
            Sdg(q) => write!(f, "SDG {q}"),
            X(q) => write!(f, "X {q}"),
            Y(q) => write!(f, "Y {q}"),
            Z(q) => write!(f, "Z {q}"),
            Cnot(a, b) => write!(f, "CNOT {a} {b}"),
            Cz(a, b) => write!(f, "CZ {a} {b}"),
        }
    }
}

/// `diag(1, e^{±iπ/4})`.
pub fn t_matrix(dagger: bool) -> DMatrix<C64> {
    let angle = if dagger { -1.0 } else { 1.0 } * std::f64::consts::FRAC_PI_4;
    DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::from_polar(1.0, angle),
        ],
    )
}

/// A gate of a concrete (fully instantiated) circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Clifford(CliffordGate),
    /// Element `index` of [`clifford2::group`] acting on qubits `(a, b)`.
    Clifford2 {
        a: usize,
        b: usize,
        index: usize,
    },
    T(usize),
    Tdg(usize),
    /// Layer boundary marker; no action.
    Layer,
}

impl Gate {
    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    fn validate(&self, len: usize) -> Result<()> {
        match *self {
            Gate::Clifford(g) => g.validate(len),
            Gate::Clifford2 { a, b, index } => {
                if index >= clifford2::ORDER {
                    return Err(Error::InvalidArgument(format!(
                        "two-qubit Clifford index {index} out of range"
                    )));
                }
                CliffordGate::Cnot(a, b).validate(len)
            }
            Gate::T(q) | Gate::Tdg(q) => CliffordGate::H(q).validate(len),
            Gate::Layer => Ok(()),
        }
    }

    /// Elementary Clifford gates this gate expands to; `None` for T gates.
    pub fn clifford_word(&self) -> Option<Vec<CliffordGate>> {
        match *self {
            Gate::Clifford(g) => Some(vec![g]),
            Gate::Clifford2 { a, b, index } => Some(
                clifford2::group()[index]
                    .word()
                    .iter()
                    .map(|g| g.remapped(|q| if q == 0 { a } else { b }))
                    .collect(),
            ),
            Gate::Layer => Some(Vec::new()),
            Gate::T(_) | Gate::Tdg(_) => None,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Clifford(g) => write!(f, "{g}"),
            Gate::Clifford2 { a, b, index } => write!(f, "C2 {a} {b} {index}"),
            Gate::T(q) => write!(f, "T {q}"),
            Gate::Tdg(q) => write!(f, "TDG {q}"),
            Gate::Layer => write!(f, "LAYER"),
        }
    }
}

/// An instantiated gate sequence on `len` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    len: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            gates: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.gates.iter().all(|g| *g == Gate::Layer)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.len)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.len != self.len {
            return Err(Error::Dimension {
                expected: self.len,
                got: other.len,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(Gate::is_clifford)
    }

    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_clifford()).count()
    }

    /// Append one brickwork layer of uniformly random two-qubit Cliffords.
    /// Layer `parity` 0 couples (0,1),(2,3),…; parity 1 couples (1,2),(3,4),….
    pub fn push_random_brick_layer(&mut self, parity: usize, rng: &mut Rng) {
        let mut a = parity % 2;
        while a + 1 < self.len {
            let index = clifford2::sample_index(rng);
            self.gates.push(Gate::Clifford2 { a, b: a + 1, index });
            a += 2;
        }
        self.gates.push(Gate::Layer);
    }

    /// Gates in circuit-file syntax, one per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("QUBITS {}\n", self.len);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Brickwork circuit of `layers` layers of uniformly random two-qubit
/// Cliffords with open boundaries. The first layer couples (0,1),(2,3),….
pub fn random_clifford_circuit(len: usize, layers: usize, seed: u64) -> Result<Circuit> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 qubits, got {len}"
        )));
    }
    let mut rng = rng::from_seed(seed);
    let mut c = Circuit::new(len);
    for layer in 0..layers {
        c.push_random_brick_layer(layer, &mut rng);
    }
    Ok(c)
}

/// One parsed line of a circuit file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Gate(Gate),
    RandomClifford2 {
        a: usize,
        b: usize,
    },
    RandomLayer,
    RandomT,
    TDoped {
        blocks: usize,
        layers: usize,
        t_gates: usize,
    },
}

impl Instruction {
    fn is_random(&self) -> bool {
        !matches!(self, Instruction::Gate(_))
    }
}

/// A parsed circuit file, possibly containing random directives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitFile {
    /// Qubit count from a `QUBITS` line, if present.
    pub qubits: Option<usize>,
    pub instructions: Vec<Instruction>,
}

impl CircuitFile {
    pub fn is_random(&self) -> bool {
        self.instructions.iter().any(Instruction::is_random)
    }

    /// Largest qubit index referenced, plus one.
    fn min_len(&self) -> usize {
        self.instructions
            .iter()
            .filter_map(|ins| match ins {
                Instruction::Gate(Gate::Clifford(g)) => g.qubits().into_iter().max(),
                Instruction::Gate(Gate::Clifford2 { a, b, .. })
                | Instruction::RandomClifford2 { a, b } => Some(*a.max(b)),
                Instruction::Gate(Gate::T(q)) | Instruction::Gate(Gate::Tdg(q)) => Some(*q),
                _ => None,
            })
            .map(|m| m + 1)
            .max()
            .unwrap_or(0)
    }

    /// Resolve the qubit count from the file and an optional override.
    pub fn resolve_len(&self, len: Option<usize>) -> Result<usize> {
        let n = match (self.qubits, len) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Config(format!(
                    "circuit declares {a} qubits but {b} were requested"
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => self.min_len(),
        };
        if n == 0 {
            return Err(Error::Config("circuit has no qubits".into()));
        }
        Ok(n)
    }

    /// Expand random directives with `seed`; a seed is required iff the file
    /// has random directives.
    pub fn instantiate(&self, len: Option<usize>, seed: Option<u64>) -> Result<Circuit> {
        let len = self.resolve_len(len)?;
        let mut rng = match (self.is_random(), seed) {
            (true, None) => {
                return Err(Error::Config(
                    "circuit has random directives but no seed was given".into(),
                ))
            }
            (_, s) => rng::from_seed(s.unwrap_or(0)),
        };
        let mut c = Circuit::new(len);
        let mut layer_parity = 0;
        for ins in &self.instructions {
            match *ins {
                Instruction::Gate(g) => c.push(g)?,
                Instruction::RandomClifford2 { a, b } => {
                    let index = clifford2::sample_index(&mut rng);
                    c.push(Gate::Clifford2 { a, b, index })?;
                }
                Instruction::RandomLayer => {
                    if len < 2 {
                        return Err(Error::Config("RLAYER needs at least 2 qubits".into()));
                    }
                    c.push_random_brick_layer(layer_parity, &mut rng);
                    layer_parity += 1;
                }
                Instruction::RandomT => {
                    let q = rng.random_range(0..len);
                    c.push(Gate::T(q))?;
                }
                Instruction::TDoped {
                    blocks,
                    layers,
                    t_gates,
                } => {
                    let spec = crate::models::TDopedSpec {
                        len,
                        blocks,
                        clifford_layers_per_block: layers,
                        t_gates_per_block: t_gates,
                        seed: rng.random(),
                        layout: crate::models::BlockLayout::Spatial,
                    };
                    c.extend(&crate::models::t_doped_circuit(&spec)?)?;
                }
            }
        }
        Ok(c)
    }
}

impl FromStr for CircuitFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut qubits = None;
        let mut instructions = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let mut tok = line.split_whitespace();
            let op = tok.next().unwrap().to_ascii_uppercase();
            let args: Vec<usize> = tok
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| perr(format!("bad integer {t:?}")))
                })
                .collect::<Result<_>>()?;
            let want = |n: usize| -> Result<()> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(perr(format!(
                        "{op} takes {n} argument(s), got {}",
                        args.len()
                    )))
                }
            };
            use CliffordGate as C;
            let ins = match op.as_str() {
                "QUBITS" => {
                    want(1)?;
                    qubits = Some(args[0]);
                    continue;
                }
                "H" | "S" | "SDG" | "X" | "Y" | "Z" | "T" | "TDG" => {
                    want(1)?;
                    let q = args[0];
                    Instruction::Gate(match op.as_str() {
                        "H" => Gate::Clifford(C::H(q)),
                        "S" => Gate::Clifford(C::S(q)),
                        "SDG" => Gate::Clifford(C::Sdg(q)),
                        "X" => Gate::Clifford(C::X(q)),
                        "Y" => Gate::Clifford(C::Y(q)),
                        "Z" => Gate::Clifford(C::Z(q)),
                        "T" => Gate::T(q),
                        _ => Gate::Tdg(q),
                    })
                }
                "CNOT" | "CX" | "CZ" => {
                    want(2)?;
                    if args[0] == args[1] {
                        return Err(perr(format!("{op} control equals target")));
                    }
                    Instruction::Gate(Gate::Clifford(if op == "CZ" {
                        C::Cz(args[0], args[1])
                    } else {
                        C::Cnot(args[0], args[1])
                    }))
                }
                "C2" => {
                    want(3)?;
                    if args[2] >= clifford2::ORDER || args[0] == args[1] {
                        return Err(perr(format!("invalid C2 arguments {args:?}")));
                    }
                    Instruction::Gate(Gate::Clifford2 {
                        a: args[0],
                        b: args[1],
                        index: args[2],
                    })
                }
                "LAYER" => {
                    want(0)?;
                    Instruction::Gate(Gate::Layer)
                }
                "RCLIFF" => {
                    want(2)?;
                    if args[0] == args[1] {
                        return Err(perr("RCLIFF on repeated qubit".into()));
                    }
                    Instruction::RandomClifford2 {
                        a: args[0],
                        b: args[1],
                    }
                }
                "RLAYER" => {
                    want(0)?;
                    Instruction::RandomLayer
                }
                "RT" => {
                    want(0)?;
                    Instruction::RandomT
                }
                "TDOPED" => {
                    want(3)?;
                    Instruction::TDoped {
                        blocks: args[0],
                        layers: args[1],
                        t_gates: args[2],
                    }
                }
                other => return Err(perr(format!("unknown instruction {other:?}"))),
            };
            instructions.push(ins);
        }
        Ok(CircuitFile {
            qubits,
            instructions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;

    fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
        a.kronecker(b)
    }

    fn pauli_matrix(p: Pauli) -> DMatrix<C64> {
        match p {
            Pauli::I => DMatrix::identity(2, 2),
            Pauli::X => CliffordGate::X(0).matrix(),
            Pauli::Y => CliffordGate::Y(0).matrix(),
            Pauli::Z => CliffordGate::Z(0).matrix(),
        }
    }

    fn dense(p: &PauliString) -> DMatrix<C64> {
        let mut m = DMatrix::identity(1, 1);
        for s in 0..p.len() {
            m = kron(&m, &pauli_matrix(p.get(s)));
        }
        m * C64::i().powu(p.phase() as u32)
    }

    fn embed2(g: &CliffordGate) -> DMatrix<C64> {
        // Two-qubit matrix on sites (0, 1) regardless of gate orientation.
        match *g {
            CliffordGate::Cnot(0, 1) | CliffordGate::Cz(0, 1) | CliffordGate::Cz(1, 0) => {
                g.matrix()
            }
            CliffordGate::Cnot(1, 0) => {
                let h = CliffordGate::H(0).matrix();
                let hh = kron(&h, &h);
                &hh * CliffordGate::Cnot(0, 1).matrix() * &hh
            }
            _ => {
                let q = g.qubits()[0];
                let id = DMatrix::identity(2, 2);
                if q == 0 {
                    kron(&g.matrix(), &id)
                } else {
                    kron(&id, &g.matrix())
                }
            }
        }
    }

    #[test]
    fn conjugation_matches_dense_matrices() {
        use CliffordGate::*;
        let gates = [
            H(0),
            H(1),
            S(0),
            S(1),
            Sdg(0),
            Sdg(1),
            X(0),
            Y(1),
            Z(0),
            Cnot(0, 1),
            Cnot(1, 0),
            Cz(0, 1),
            Cz(1, 0),
        ];
        let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for g in gates {
            let u = embed2(&g);
            for &a in &letters {
                for &b in &letters {
                    let p = PauliString::from_paulis(&[a, b]);
                    let mut q = p.clone();
                    g.conjugate(&mut q);
                    let lhs = &u * dense(&p) * u.adjoint();
                    assert!((lhs - dense(&q)).norm() < 1e-12, "{g} on {p} gave {q}");
                }
            }
        }
    }

    #[test]
    fn parse_circuit_file() {
        let text = "# ghz\nQUBITS 4\nH 0\nCNOT 0 1\ncx 1 2\nLAYER\nCNOT 2 3\nT 3\n";
        let f: CircuitFile = text.parse().unwrap();
        assert!(!f.is_random());
        let c = f.instantiate(None, None).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.t_count(), 1);
        assert!(!c.is_clifford());
        let again: CircuitFile = c.to_text().parse().unwrap();
        assert_eq!(again.instantiate(None, None).unwrap(), c);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "H 0\nFOO 1\n".parse::<CircuitFile>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!("CNOT 1 1".parse::<CircuitFile>().is_err());
        assert!("H".parse::<CircuitFile>().is_err());
        assert!("H x".parse::<CircuitFile>().is_err());
    }

    #[test]
    fn random_directives_need_a_seed() {
        let f: CircuitFile = "QUBITS 4\nRLAYER\nRT\n".parse().unwrap();
        assert!(matches!(f.instantiate(None, None), Err(Error::Config(_))));
        let a = f.instantiate(None, Some(3)).unwrap();
        let b = f.instantiate(None, Some(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_range_gate_rejected() {
        let f: CircuitFile = "QUBITS 2\nH 5\n".parse().unwrap();
        assert!(f.instantiate(None, None).is_err());
    }

    #[test]
    fn zero_layer_random_circuit_is_empty() {
        let c = random_clifford_circuit(6, 0, 1).unwrap();
        assert!(c.is_empty());
        assert!(random_clifford_circuit(1, 2, 1).is_err());
    }

    #[test]
    fn brickwork_pairs() {
        let c = random_clifford_circuit(5, 2, 9).unwrap();
        let pairs: Vec<(usize, usize)> = c
            .gates()
            .iter()
            .filter_map(|g| match g {
                Gate::Clifford2 { a, b, .. } => Some((*a, *b)),
                _ => None,
            })
            .collect();
        assert_eq!(pairs, vec![(0, 1), (2, 3), (1, 2), (3, 4)]);
    }
}
