//! q-fold cat states carry log₂ q bits at the largest scale. Only a noninteger
//! amount witnesses long-range nonstabilizerness.

use infolattice::lattice::{compute_lattice, summarize, DEFAULT_GAP_THRESHOLD};
use infolattice::models::{cat_state, embed_qutrit_to_spins};
use infolattice::witness::{verdict, WitnessOptions};

fn main() -> infolattice::Result<()> {
    let cases = [
        ("q=2 on 8 qubits", cat_state(8, 2, 2)?),
        ("q=3 on 6 qutrits", cat_state(6, 3, 3)?),
        (
            "q=3 embedded in 12 qubits",
            embed_qutrit_to_spins(&cat_state(6, 3, 3)?)?,
        ),
        ("q=4 on 6 ququarts", cat_state(6, 4, 4)?),
        ("q=3 on 6 ququarts", cat_state(6, 4, 3)?),
    ];
    for (name, s) in cases {
        let lat = compute_lattice(&s)?;
        let sum = summarize(&lat, DEFAULT_GAP_THRESHOLD);
        println!(
            "{name:<26} {}",
            verdict(&lat, &sum, &WitnessOptions::default())?
        );
    }
    Ok(())
}
