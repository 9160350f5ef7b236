//! Random Clifford circuits produce stabilizer states whose dense lattices are
//! integer-valued and match the rank lattices.

use infolattice::circuit::random_clifford_circuit;
use infolattice::lattice::compute_lattice;
use infolattice::state::statevector_from_tableau;
use infolattice::StabilizerTableau;

fn main() -> infolattice::Result<()> {
    println!("L  layers  seed  max|i-round(i)|  max|dense-rank|  total");
    for seed in 0..12u64 {
        let len = [6, 8, 10, 12][(seed % 4) as usize];
        let layers = 1 + (seed as usize * 7) % 20;
        let t = StabilizerTableau::from_circuit(&random_clifford_circuit(len, layers, seed)?)?;
        let ranks = t.integer_info_lattice()?;
        let dense = compute_lattice(&statevector_from_tableau(&t)?)?;
        let dev = dense
            .sites()
            .map(|(_, _, v)| (v - v.round()).abs())
            .fold(0.0, f64::max);
        let diff = dense
            .sites()
            .zip(ranks.sites())
            .map(|(a, b)| (a.2 - b.2).abs())
            .fold(0.0, f64::max);
        println!(
            "{len:<2} {layers:>6} {seed:>5}  {dev:>15.1e}  {diff:>15.1e}  {:.6}",
            dense.total()
        );
    }
    Ok(())
}
