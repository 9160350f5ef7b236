//! Reads a circuit file, expands its random directives with a seed, and
//! reports the lattice of the resulting state.
//!
//! `cargo run --example circuit_file -- crates/core/data/tdoped.cfg 7`

use std::path::PathBuf;

use infolattice::circuit::CircuitFile;
use infolattice::lattice::{compute_lattice, summarize, DEFAULT_GAP_THRESHOLD};
use infolattice::report::render_triangle;
use infolattice::witness::{verdict, WitnessOptions};
use infolattice::PureState;

fn main() -> infolattice::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/tdoped.cfg"));
    let seed: u64 = args.next().map_or(7, |a| a.parse().expect("seed"));
    let file: CircuitFile = std::fs::read_to_string(&path)?.parse()?;
    let circuit = file.instantiate(None, Some(seed))?;
    println!(
        "{}: {} qubits, {} gates, {} T",
        path.display(),
        circuit.len(),
        circuit.gates().len(),
        circuit.t_count()
    );
    let state = PureState::zero(circuit.len(), 2)?.apply_circuit(&circuit)?;
    let lat = compute_lattice(&state)?;
    print!("{}", render_triangle(&lat, 1e-6));
    let sum = summarize(&lat, DEFAULT_GAP_THRESHOLD);
    println!("{}", verdict(&lat, &sum, &WitnessOptions::default())?);
    Ok(())
}
