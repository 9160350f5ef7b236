//! Large-scale information across the Potts transition for L = 8, 10, 12.
//! Writes the sweep table as CSV to stdout.

use infolattice::models::{potts_sweep, write_sweep_csv, SweepConfig};

fn main() -> infolattice::Result<()> {
    let cfg = SweepConfig::parse("sizes = [8, 10, 12]\nh_min = 0.0\nh_max = 0.8\nh_steps = 17\n")?;
    let rows = potts_sweep(&cfg)?;
    write_sweep_csv(&rows, std::io::stdout().lock())
}
