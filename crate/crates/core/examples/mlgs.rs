//! Maximally local generating sets. Each generator is annotated with the
//! center and scale of its support; the annotations count the lattice.
//!
//! `cargo run --example mlgs -- 10 3` prints the set for a 10-qubit random
//! Clifford state with seed 3.

use infolattice::circuit::random_clifford_circuit;
use infolattice::models::{reference_tableau, ReferenceState};
use infolattice::report::{render_mlgs, render_triangle};
use infolattice::StabilizerTableau;

fn show(name: &str, t: &StabilizerTableau) -> infolattice::Result<()> {
    println!("== {name}");
    print!("{}", render_mlgs(&t.maximally_local_generating_set()?));
    print!("{}", render_triangle(&t.integer_info_lattice()?, 1e-6));
    println!();
    Ok(())
}

fn main() -> infolattice::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer argument"));
    let len = args.next().unwrap_or(8) as usize;
    let seed = args.next().unwrap_or(1);
    show("neel", &reference_tableau(ReferenceState::Neel, 4)?)?;
    show("ghz", &reference_tableau(ReferenceState::Ghz, 4)?)?;
    let c = random_clifford_circuit(len, 2, seed)?;
    show(
        &format!("random Clifford, L={len}, 2 layers, seed {seed}"),
        &StabilizerTableau::from_circuit(&c)?,
    )
}
