//! Lattices of the four-qubit Néel, central-Bell and GHZ states, computed from
//! subsystem entropies and from stabilizer subgroup ranks.

use infolattice::lattice::{compute_lattice, summarize, DEFAULT_GAP_THRESHOLD};
use infolattice::models::{reference_state, reference_tableau, ReferenceState};
use infolattice::report::{render_summary, render_triangle};

fn main() -> infolattice::Result<()> {
    for which in [
        ReferenceState::Neel,
        ReferenceState::CentralBell,
        ReferenceState::Ghz,
    ] {
        let dense = compute_lattice(&reference_state(which, 4)?)?;
        let ranks = reference_tableau(which, 4)?.integer_info_lattice()?;
        let agree = dense
            .sites()
            .zip(ranks.sites())
            .all(|(a, b)| (a.2 - b.2).abs() < 1e-10);
        println!("== {which} (routes agree: {agree})");
        print!("{}", render_triangle(&dense, 1e-6));
        print!(
            "{}",
            render_summary(&summarize(&dense, DEFAULT_GAP_THRESHOLD))
        );
        println!();
    }
    Ok(())
}
