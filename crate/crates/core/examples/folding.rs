//! Folding pairs site n with site L−1−n. Correlations between the two edges
//! become local on the folded chain, while global correlations stay global.

use infolattice::lattice::{compute_lattice, fold, gamma_folded, summarize, DEFAULT_GAP_THRESHOLD};
use infolattice::models::cat_state;
use infolattice::report::render_triangle;
use infolattice::{PureState, C64};

/// Bell pair between the two end qubits, |0⟩ in between.
fn edge_pair(len: usize) -> infolattice::Result<PureState> {
    let mut amps = vec![C64::new(0.0, 0.0); 1 << len];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = C64::new(r, 0.0);
    amps[(1 << (len - 1)) | 1] = C64::new(r, 0.0);
    PureState::new(vec![2; len], amps)
}

fn main() -> infolattice::Result<()> {
    let cases = [
        ("edge-to-edge Bell pair", edge_pair(10)?),
        ("GHZ", cat_state(10, 2, 2)?),
    ];
    for (name, s) in cases {
        let lat = compute_lattice(&s)?;
        let sum = summarize(&lat, DEFAULT_GAP_THRESHOLD);
        let folded = compute_lattice(&fold(&s)?)?;
        println!(
            "== {name}: gamma = {:.6}, gamma_folded = {:.6}",
            sum.gamma,
            gamma_folded(&s, DEFAULT_GAP_THRESHOLD)?
        );
        println!("original");
        print!("{}", render_triangle(&lat, 1e-6));
        println!(
            "folded (dims {:?}), total {:.6} -> {:.6}",
            folded.dims(),
            lat.total(),
            folded.total()
        );
        print!("{}", render_triangle(&folded, 1e-6));
        println!();
    }
    Ok(())
}
