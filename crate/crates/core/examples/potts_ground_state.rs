//! Symmetric ground state of the three-state Potts chain, embedded into spin
//! pairs, and its lattice verdict.
//!
//! `cargo run --release --example potts_ground_state -- 12 0.1` uses L = 12
//! spins (six qutrits) and field h = 0.1.

use infolattice::lattice::{compute_lattice, gamma_folded, summarize, DEFAULT_GAP_THRESHOLD};
use infolattice::models::{embed_qutrit_to_spins, symmetric_ground_state, PottsSpec};
use infolattice::report::{render_summary, render_triangle};
use infolattice::witness::{verdict, WitnessOptions, GROUND_STATE_TOL};

fn main() -> infolattice::Result<()> {
    let mut args = std::env::args().skip(1);
    let len: usize = args.next().map_or(12, |a| a.parse().expect("L"));
    let h: f64 = args.next().map_or(0.0, |a| a.parse().expect("h"));
    let gs = symmetric_ground_state(&PottsSpec::new(len / 2, 1.0, h)?)?;
    println!(
        "L = {len}, h = {h}: energy {:.10}, residual {:.1e}",
        gs.energy, gs.residual
    );
    let spins = embed_qutrit_to_spins(&gs.state)?;
    let lat = compute_lattice(&spins)?;
    let sum = summarize(&lat, DEFAULT_GAP_THRESHOLD)
        .with_gamma_folded(gamma_folded(&spins, DEFAULT_GAP_THRESHOLD)?);
    print!("{}", render_triangle(&lat, GROUND_STATE_TOL));
    print!("{}", render_summary(&sum));
    println!(
        "{}",
        verdict(
            &lat,
            &sum,
            &WitnessOptions {
                tol: GROUND_STATE_TOL,
                require_origin: false
            }
        )?
    );
    Ok(())
}
