//! State factories: small reference states, T-doped Clifford circuits and the
//! three-state Potts chain.

mod potts;
mod reference;
mod sweep;
mod tdoped;

pub use potts::{
    embed_qutrit_to_spins, potts_hamiltonian, symmetric_ground_state, symmetric_ground_state_with,
    z3_shift, EigenSolver, GroundState, PottsSpec, SparseMatrix,
};
pub use reference::{cat_state, reference_state, reference_tableau, ReferenceState};
pub use sweep::{potts_sweep, sweep_point, write_sweep_csv, Granularity, SweepConfig, SweepRow};
pub use tdoped::{t_doped_circuit, t_doped_state, BlockLayout, TDopedSpec};
