use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::stabilizer::StabilizerTableau;
use crate::state::PureState;
use crate::C64;

/// Named small states with known lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceState {
    /// `|0101…⟩`
    Neel,
    /// `|0⟩ ⊗ (|10⟩ + |01⟩)/√2 ⊗ |1⟩`, four qubits only.
    CentralBell,
    /// `(|0…0⟩ + |1…1⟩)/√2`
    Ghz,
}

impl FromStr for ReferenceState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "neel" => Ok(Self::Neel),
            "bell" | "central-bell" => Ok(Self::CentralBell),
            "ghz" => Ok(Self::Ghz),
            other => Err(Error::Config(format!("unknown reference state {other:?}"))),
        }
    }
}

impl fmt::Display for ReferenceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Neel => "neel",
            Self::CentralBell => "bell",
            Self::Ghz => "ghz",
        })
    }
}

fn check_len(which: ReferenceState, len: usize) -> Result<()> {
    let ok = match which {
        ReferenceState::Neel => len >= 1,
        ReferenceState::CentralBell => len == 4,
        ReferenceState::Ghz => len >= 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{which} state is not defined on {len} sites"
        )))
    }
}

/// Dense amplitudes of a reference state.
pub fn reference_state(which: ReferenceState, len: usize) -> Result<PureState> {
    check_len(which, len)?;
    match which {
        ReferenceState::Neel => {
            let digits: Vec<usize> = (0..len).map(|j| j % 2).collect();
            PureState::product(vec![2; len], &digits)
        }
        ReferenceState::CentralBell => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut amps = vec![C64::new(0.0, 0.0); 16];
            amps[0b0101] = C64::new(r, 0.0);
            amps[0b0011] = C64::new(r, 0.0);
            PureState::new(vec![2; 4], amps)
        }
        ReferenceState::Ghz => cat_state(len, 2, 2),
    }
}

/// Stabilizer generators of a reference state.
pub fn reference_tableau(which: ReferenceState, len: usize) -> Result<StabilizerTableau> {
    check_len(which, len)?;
    let z = |site: usize| PauliString::single(len, site, Pauli::Z);
    let generators = match which {
        ReferenceState::Neel => (0..len)
            .map(|j| z(j).map(|p| if j % 2 == 1 { p.negated() } else { p }))
            .collect::<Result<Vec<_>>>()?,
        ReferenceState::CentralBell => ["ZIII", "-IIIZ", "IXXI", "-IZZI"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<_>>>()?,
        ReferenceState::Ghz => {
            let mut gens = vec![PauliString::from_paulis(&vec![Pauli::X; len])];
            for j in 0..len - 1 {
                gens.push(z(j)?.multiply(&z(j + 1)?)?);
            }
            gens
        }
    };
    StabilizerTableau::from_generators(generators)
}

/// `(Σ_{k<q} |k k … k⟩)/√q` on `len` sites of dimension `d ≥ q`.
pub fn cat_state(len: usize, d: usize, q: usize) -> Result<PureState> {
    if len == 0 || q == 0 || q > d {
        return Err(Error::InvalidArgument(format!(
            "cat state needs 1 ≤ q ≤ d, got q={q}, d={d}"
        )));
    }
    let size = d
        .checked_pow(len as u32)
        .ok_or_else(|| Error::InvalidArgument("Hilbert space too large".into()))?;
    // |k…k⟩ has index k·(1 + d + d² + …)
    let repunit = (0..len).fold(0usize, |acc, _| acc * d + 1);
    let mut amps = vec![C64::new(0.0, 0.0); size];
    let a = C64::new(1.0 / (q as f64).sqrt(), 0.0);
    for k in 0..q {
        amps[k * repunit] = a;
    }
    PureState::new(vec![d; len], amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::statevector_from_tableau;

    fn overlap(a: &PureState, b: &PureState) -> f64 {
        a.inner(b).unwrap().norm()
    }

    #[test]
    fn tableaus_match_dense_states() {
        for (which, len) in [
            (ReferenceState::Neel, 4),
            (ReferenceState::Neel, 7),
            (ReferenceState::CentralBell, 4),
            (ReferenceState::Ghz, 4),
            (ReferenceState::Ghz, 10),
        ] {
            let dense = reference_state(which, len).unwrap();
            let from_t = statevector_from_tableau(&reference_tableau(which, len).unwrap()).unwrap();
            assert!(
                (overlap(&dense, &from_t) - 1.0).abs() < 1e-12,
                "{which} {len}"
            );
        }
    }

    #[test]
    fn unsupported_lengths() {
        assert!(reference_state(ReferenceState::CentralBell, 6).is_err());
        assert!(reference_state(ReferenceState::Ghz, 1).is_err());
        assert!(cat_state(3, 2, 3).is_err());
    }

    #[test]
    fn names_round_trip() {
        for w in [
            ReferenceState::Neel,
            ReferenceState::CentralBell,
            ReferenceState::Ghz,
        ] {
            assert_eq!(w.to_string().parse::<ReferenceState>().unwrap(), w);
        }
        assert!("w".parse::<ReferenceState>().is_err());
    }

    #[test]
    fn ghz_amplitudes() {
        let g = reference_state(ReferenceState::Ghz, 10).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.amplitudes()[0].re - r).abs() < 1e-15);
        assert!((g.amplitudes()[1023].re - r).abs() < 1e-15);
    }

    #[test]
    fn qutrit_cat_indices() {
        let c = cat_state(3, 3, 3).unwrap();
        let nz: Vec<usize> = (0..27)
            .filter(|&i| c.amplitudes()[i].norm() > 0.0)
            .collect();
        assert_eq!(nz, [0, 13, 26]);
    }
}
