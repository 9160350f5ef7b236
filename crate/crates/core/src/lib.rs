//! Information lattices of pure states on qudit chains.
//!
//! The local information `i_n^l` decomposes the total information of a state
//! over subsystem centers `n` and scales `l`. For stabilizer states every
//! value is an integer, so any noninteger value flags nonstabilizerness; in
//! states with an information gap, a noninteger amount of large-scale
//! information `Γ` flags nonstabilizerness that no shallow circuit can remove.
//!
//! The crate has two independent routes to the lattice:
//!
//! * [`stabilizer`]: exact subgroup ranks of a stabilizer tableau, giving
//!   integer lattices and maximally local generating sets;
//! * [`state`] + [`lattice`]: dense statevectors, subsystem von Neumann
//!   entropies, and the lattice of an arbitrary pure state.
//!
//! [`witness`] turns lattices into verdicts, and [`models`] builds the
//! reference states, T-doped Clifford circuits and the spin-1/2 three-state
//! Potts model ground states used throughout the examples.

pub mod circuit;
pub mod cli;
pub mod clifford2;
pub mod eigen;
pub mod error;
pub mod io;
pub mod lattice;
pub mod models;
pub mod pauli;
pub mod report;
pub mod rng;
pub mod stabilizer;
pub mod state;
pub mod witness;

pub use error::{Error, Result};
pub use lattice::{compute_lattice, fold, gamma_folded, summarize, InfoLattice, LatticeSummary};
pub use pauli::{PauliString, SupportInterval};
pub use stabilizer::StabilizerTableau;
pub use state::PureState;
pub use witness::LatticeVerdict;

/// Complex scalar used throughout the dense engine.
pub type C64 = num_complex::Complex64;
