use rand::seq::index::sample;

use crate::circuit::{Circuit, Gate};
use crate::clifford2;
use crate::error::{Error, Result};
use crate::rng::{self, Rng};
use crate::state::PureState;

/// How the blocks of a T-doped circuit are arranged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BlockLayout {
    /// The chain is cut into `blocks` contiguous segments, each evolved by
    /// its own brickwork. No gate crosses a segment boundary.
    #[default]
    Spatial,
    /// Blocks follow each other in time on the whole chain.
    Sequential,
}

/// Brickwork Clifford layers with T gates inserted between layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TDopedSpec {
    pub len: usize,
    pub blocks: usize,
    pub clifford_layers_per_block: usize,
    pub t_gates_per_block: usize,
    pub seed: u64,
    pub layout: BlockLayout,
}

impl TDopedSpec {
    /// `(first qubit, qubit count)` of each block's region.
    fn regions(&self) -> Vec<(usize, usize)> {
        match self.layout {
            BlockLayout::Sequential => vec![(0, self.len); self.blocks],
            BlockLayout::Spatial => {
                let (base, extra) = (self.len / self.blocks, self.len % self.blocks);
                let mut start = 0;
                (0..self.blocks)
                    .map(|b| {
                        let size = base + usize::from(b < extra);
                        start += size;
                        (start - size, size)
                    })
                    .collect()
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.blocks == 0 || self.clifford_layers_per_block == 0 {
            return Err(Error::InvalidArgument(
                "need at least one block and one layer".into(),
            ));
        }
        for (_, size) in self.regions() {
            if size < 2 {
                return Err(Error::InvalidArgument(format!(
                    "{} qubits cannot hold {} blocks of at least 2 qubits",
                    self.len, self.blocks
                )));
            }
            let slots = size * (self.clifford_layers_per_block - 1);
            if self.t_gates_per_block > slots {
                return Err(Error::InvalidArgument(format!(
                    "{} T gates exceed the {slots} (qubit, slot) pairs of a block",
                    self.t_gates_per_block
                )));
            }
        }
        Ok(())
    }
}

fn push_layer(
    c: &mut Circuit,
    start: usize,
    size: usize,
    parity: usize,
    rng: &mut Rng,
) -> Result<()> {
    let mut a = parity % 2;
    while a + 1 < size {
        let index = clifford2::sample_index(rng);
        c.push(Gate::Clifford2 {
            a: start + a,
            b: start + a + 1,
            index,
        })?;
        a += 2;
    }
    Ok(())
}

/// Build the circuit for `spec`. T gates occupy `(qubit, slot)` pairs drawn
/// without replacement per block, where slot `k` sits between Clifford
/// layers `k` and `k + 1`.
pub fn t_doped_circuit(spec: &TDopedSpec) -> Result<Circuit> {
    spec.validate()?;
    let layers = spec.clifford_layers_per_block;
    let mut c = Circuit::new(spec.len);
    let mut parity = 0;
    for (b, (start, size)) in spec.regions().into_iter().enumerate() {
        let mut rng = rng::stream(spec.seed, b as u64);
        let mut slots: Vec<(usize, usize)> =
            sample(&mut rng, size * (layers - 1), spec.t_gates_per_block)
                .into_iter()
                .map(|k| (k / size, start + k % size))
                .collect();
        slots.sort_unstable();
        if spec.layout == BlockLayout::Spatial {
            parity = 0;
        }
        for layer in 0..layers {
            push_layer(&mut c, start, size, parity, &mut rng)?;
            parity += 1;
            for &(_, q) in slots.iter().filter(|(slot, _)| *slot == layer) {
                c.push(Gate::T(q))?;
            }
        }
        c.push(Gate::Layer)?;
    }
    Ok(c)
}

/// `|0…0⟩` evolved through [`t_doped_circuit`].
pub fn t_doped_state(spec: &TDopedSpec) -> Result<PureState> {
    PureState::zero(spec.len, 2)?.apply_circuit(&t_doped_circuit(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(seed: u64) -> TDopedSpec {
        TDopedSpec {
            len: 10,
            blocks: 3,
            clifford_layers_per_block: 10,
            t_gates_per_block: 5,
            seed,
            layout: BlockLayout::Spatial,
        }
    }

    #[test]
    fn spatial_regions_tile_the_chain() {
        assert_eq!(spec(0).regions(), [(0, 4), (4, 3), (7, 3)]);
    }

    #[test]
    fn t_count_and_placement() {
        let c = t_doped_circuit(&spec(3)).unwrap();
        assert_eq!(c.t_count(), 15);
        // no T before the first or after the last layer of its block
        let gates = c.gates();
        let first_t = gates.iter().position(|g| matches!(g, Gate::T(_))).unwrap();
        assert!(gates[..first_t]
            .iter()
            .any(|g| matches!(g, Gate::Clifford2 { .. })));
    }

    #[test]
    fn gates_stay_inside_blocks() {
        let c = t_doped_circuit(&spec(5)).unwrap();
        for g in c.gates() {
            if let Gate::Clifford2 { a, b, .. } = *g {
                assert!(!(a == 3 && b == 4) && !(a == 6 && b == 7));
            }
        }
    }

    #[test]
    fn deterministic_under_seed() {
        assert_eq!(
            t_doped_circuit(&spec(11)).unwrap(),
            t_doped_circuit(&spec(11)).unwrap()
        );
        assert_ne!(
            t_doped_circuit(&spec(11)).unwrap(),
            t_doped_circuit(&spec(12)).unwrap()
        );
    }

    #[test]
    fn without_t_gates_the_circuit_is_clifford() {
        let s = TDopedSpec {
            t_gates_per_block: 0,
            ..spec(1)
        };
        assert!(t_doped_circuit(&s).unwrap().is_clifford());
    }

    #[test]
    fn invalid_specs() {
        assert!(t_doped_circuit(&TDopedSpec {
            blocks: 6,
            ..spec(0)
        })
        .is_err());
        assert!(t_doped_circuit(&TDopedSpec {
            t_gates_per_block: 28,
            ..spec(0)
        })
        .is_err());
        assert!(t_doped_circuit(&TDopedSpec {
            clifford_layers_per_block: 0,
            ..spec(0)
        })
        .is_err());
    }

    #[test]
    fn sequential_layout_spans_the_chain() {
        let s = TDopedSpec {
            layout: BlockLayout::Sequential,
            ..spec(2)
        };
        let c = t_doped_circuit(&s).unwrap();
        assert_eq!(c.t_count(), 15);
        let pairs = c
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::Clifford2 { .. }))
            .count();
        // 30 layers alternating 5 and 4 pairs
        assert_eq!(pairs, 15 * 5 + 15 * 4);
    }
}
