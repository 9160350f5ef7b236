//! The two-qubit Clifford group, enumerated once.
//!
//! Elements are identified (modulo global phase) by the signed images of
//! `XI, ZI, IX, IZ` under conjugation. A breadth-first search over words in
//! `{H₀, H₁, S₀, S₁, CNOT₀₁}` visits every element exactly once and records a
//! shortest word for it, so each element can be applied to a tableau and to a
//! dense state through the same elementary gates. The search order is fixed,
//! so element indices are stable and uniform sampling reduces to drawing an
//! index in `0..ORDER`.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use rand::Rng as _;

use crate::circuit::CliffordGate;
use crate::pauli::PauliString;
use crate::rng::Rng;

/// Order of the two-qubit Clifford group modulo phases: 720 symplectic
/// matrices times 16 sign patterns.
pub const ORDER: usize = 11520;

/// One group element.
#[derive(Clone, Debug)]
pub struct TwoQubitClifford {
    word: Vec<CliffordGate>,
    images: [PauliString; 4],
}

impl TwoQubitClifford {
    /// Gate word on local qubits 0 and 1, applied left to right.
    pub fn word(&self) -> &[CliffordGate] {
        &self.word
    }

    /// Images of `XI, ZI, IX, IZ`.
    pub fn images(&self) -> &[PauliString; 4] {
        &self.images
    }
}

fn basis() -> [PauliString; 4] {
    ["XI", "ZI", "IX", "IZ"].map(|s| s.parse().expect("static Pauli"))
}

fn enumerate() -> Vec<TwoQubitClifford> {
    use CliffordGate::*;
    let generators = [H(0), H(1), S(0), S(1), Cnot(0, 1)];
    let start = TwoQubitClifford {
        word: Vec::new(),
        images: basis(),
    };
    let mut seen: HashMap<[PauliString; 4], usize> = HashMap::new();
    seen.insert(start.images.clone(), 0);
    let mut out = vec![start];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let mut images = out[i].images.clone();
            for p in images.iter_mut() {
                g.conjugate(p);
            }
            if seen.contains_key(&images) {
                continue;
            }
            let mut word = out[i].word.clone();
            word.push(g);
            seen.insert(images.clone(), out.len());
            queue.push_back(out.len());
            out.push(TwoQubitClifford { word, images });
        }
    }
    out
}

/// All `ORDER` elements in a fixed order; index 0 is the identity.
pub fn group() -> &'static [TwoQubitClifford] {
    static GROUP: OnceLock<Vec<TwoQubitClifford>> = OnceLock::new();
    GROUP.get_or_init(enumerate)
}

/// Uniform random element index.
pub fn sample_index(rng: &mut Rng) -> usize {
    rng.random_range(0..ORDER)
}
