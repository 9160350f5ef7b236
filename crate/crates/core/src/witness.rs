//! Verdicts derived from a lattice: nonstabilizerness from noninteger sites,
//! long-range nonstabilizerness from a noninteger `Γ` in localized states.
//!
//! Both tests are one-sided. Integer values never certify the absence of
//! nonstabilizerness, and an unlocalized state yields no long-range verdict.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{InfoLattice, LatticeSummary};

/// Default tolerance for exactly computed states.
pub const EXACT_TOL: f64 = 1e-6;
/// Default tolerance for iteratively converged ground states.
pub const GROUND_STATE_TOL: f64 = 1e-5;

fn integer_deviation(v: f64) -> f64 {
    (v - v.round()).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonstabilizernessWitness {
    pub detected: bool,
    pub max_deviation: f64,
    /// `(n, l)` of the largest deviation.
    pub site: Option<(f64, usize)>,
}

/// Flags any site farther than `tol` from an integer.
pub fn witness_nonstabilizerness(lat: &InfoLattice, tol: f64) -> NonstabilizernessWitness {
    let mut max_deviation = 0.0;
    let mut site = None;
    for (n, l, v) in lat.sites() {
        let dev = integer_deviation(v);
        if site.is_none() || dev > max_deviation {
            max_deviation = dev;
            site = Some((n, l));
        }
    }
    NonstabilizernessWitness {
        detected: max_deviation > tol,
        max_deviation,
        site,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Global,
    EdgeToEdge,
    Mixed,
    NotApplicable,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Global => "global",
            Origin::EdgeToEdge => "edge_to_edge",
            Origin::Mixed => "mixed",
            Origin::NotApplicable => "not_applicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessOptions {
    pub tol: f64,
    /// Fail instead of abstaining when `Γ_folded` is missing.
    pub require_origin: bool,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            tol: EXACT_TOL,
            require_origin: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeVerdict {
    pub has_nonstabilizerness: bool,
    pub max_noninteger_deviation: f64,
    pub localized: bool,
    pub gamma: f64,
    pub gamma_is_integer: bool,
    pub long_range_witnessed: bool,
    pub origin: Origin,
    pub tol: f64,
    pub gap_threshold: f64,
}

fn classify_origin(gamma: f64, gamma_folded: f64, tol: f64) -> Origin {
    if gamma <= tol || gamma_folded > gamma + tol {
        Origin::NotApplicable
    } else if (gamma_folded - gamma).abs() <= tol {
        Origin::Global
    } else if gamma_folded <= tol {
        Origin::EdgeToEdge
    } else {
        Origin::Mixed
    }
}

/// Long-range verdict from a summary and the site-wise witness.
pub fn witness_long_range(
    summary: &LatticeSummary,
    local: &NonstabilizernessWitness,
    opts: &WitnessOptions,
) -> Result<LatticeVerdict> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Config(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let tol = opts.tol;
    let gamma = summary.gamma;
    let gamma_is_integer = integer_deviation(gamma) <= tol;
    let long_range_witnessed = summary.localized && !gamma_is_integer;
    let origin = match summary.gamma_folded {
        None if opts.require_origin => {
            return Err(Error::Config(
                "origin requested but the folded Γ was not computed".into(),
            ))
        }
        None => Origin::NotApplicable,
        Some(_) if !summary.localized => Origin::NotApplicable,
        Some(gf) => classify_origin(gamma, gf, tol),
    };
    Ok(LatticeVerdict {
        has_nonstabilizerness: local.detected || long_range_witnessed,
        max_noninteger_deviation: local.max_deviation,
        localized: summary.localized,
        gamma,
        gamma_is_integer,
        long_range_witnessed,
        origin,
        tol,
        gap_threshold: summary.gap_threshold,
    })
}

/// Both witnesses in one call.
pub fn verdict(
    lat: &InfoLattice,
    summary: &LatticeSummary,
    opts: &WitnessOptions,
) -> Result<LatticeVerdict> {
    witness_long_range(summary, &witness_nonstabilizerness(lat, opts.tol), opts)
}

impl fmt::Display for LatticeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let long_range = if self.long_range_witnessed {
            "witnessed"
        } else if self.localized {
            "not witnessed"
        } else {
            "abstained (not localized)"
        };
        write!(
            f,
            "nonstabilizerness: {} (max deviation {:.3e}); Γ = {:.6}{}; long-range: {}; origin: {}",
            if self.has_nonstabilizerness {
                "yes"
            } else {
                "not detected"
            },
            self.max_noninteger_deviation,
            self.gamma,
            if self.gamma_is_integer {
                " (integer)"
            } else {
                ""
            },
            long_range,
            self.origin,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{compute_lattice, gamma_folded, summarize, DEFAULT_GAP_THRESHOLD};
    use crate::models::cat_state;
    use crate::state::PureState;
    use crate::C64;

    fn summary_with(gamma: f64, localized: bool, folded: Option<f64>) -> LatticeSummary {
        LatticeSummary {
            len: 8,
            info_per_scale: vec![],
            omega: 8.0 - gamma,
            gamma,
            gap: None,
            localized,
            gamma_above_gap: None,
            gamma_folded: folded,
            gamma_edge_estimate: folded.map(|f| gamma - f),
            gap_threshold: DEFAULT_GAP_THRESHOLD,
        }
    }

    fn quiet() -> NonstabilizernessWitness {
        NonstabilizernessWitness {
            detected: false,
            max_deviation: 0.0,
            site: None,
        }
    }

    #[test]
    fn rotated_schmidt_pair_is_flagged() {
        // cos(π/8)|00⟩ + sin(π/8)|11⟩: each qubit carries 1 − H₂(sin²(π/8))
        let (c, s) = (
            std::f64::consts::FRAC_PI_8.cos(),
            std::f64::consts::FRAC_PI_8.sin(),
        );
        let zero = C64::new(0.0, 0.0);
        let st = PureState::new(
            vec![2, 2],
            vec![C64::new(c, 0.0), zero, zero, C64::new(s, 0.0)],
        )
        .unwrap();
        let w = witness_nonstabilizerness(&compute_lattice(&st).unwrap(), EXACT_TOL);
        let p = s * s;
        let h2 = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        let i = 1.0 - h2;
        assert!(w.detected);
        assert!((w.max_deviation - (i - i.round()).abs()).abs() < 1e-12);
        assert_eq!(w.site, Some((0.0, 0)));
    }

    #[test]
    fn product_states_are_not_flagged() {
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let st = PureState::new(vec![2], vec![C64::new(c, 0.0), C64::new(s, 0.0)]).unwrap();
        let w = witness_nonstabilizerness(&compute_lattice(&st).unwrap(), EXACT_TOL);
        assert!(!w.detected && w.max_deviation < 1e-12);
    }

    #[test]
    fn ghz_is_localized_but_not_witnessed() {
        let s = cat_state(8, 2, 2).unwrap();
        let lat = compute_lattice(&s).unwrap();
        let sum = summarize(&lat, DEFAULT_GAP_THRESHOLD)
            .with_gamma_folded(gamma_folded(&s, DEFAULT_GAP_THRESHOLD).unwrap());
        let v = verdict(&lat, &sum, &WitnessOptions::default()).unwrap();
        assert!(v.localized && v.gamma_is_integer);
        assert!(!v.long_range_witnessed && !v.has_nonstabilizerness);
        assert_eq!(v.origin, Origin::Global);
    }

    #[test]
    fn noninteger_gamma_forces_nonstabilizerness() {
        let v = witness_long_range(
            &summary_with(0.5, true, Some(0.5)),
            &quiet(),
            &WitnessOptions::default(),
        )
        .unwrap();
        assert!(v.long_range_witnessed && v.has_nonstabilizerness);
        assert_eq!(v.origin, Origin::Global);
    }

    #[test]
    fn abstains_when_not_localized() {
        let v = witness_long_range(
            &summary_with(0.5, false, Some(0.5)),
            &quiet(),
            &WitnessOptions::default(),
        )
        .unwrap();
        assert!(!v.long_range_witnessed);
        assert_eq!(v.origin, Origin::NotApplicable);
    }

    #[test]
    fn origin_classes() {
        let tol = 1e-6;
        assert_eq!(classify_origin(2.0, 0.0, tol), Origin::EdgeToEdge);
        assert_eq!(classify_origin(2.0, 1.0, tol), Origin::Mixed);
        assert_eq!(classify_origin(1.5, 1.5, tol), Origin::Global);
        assert_eq!(classify_origin(0.0, 0.0, tol), Origin::NotApplicable);
        assert_eq!(classify_origin(1.0, 1.5, tol), Origin::NotApplicable);
    }

    #[test]
    fn missing_fold_is_a_config_error_only_when_required() {
        let sum = summary_with(0.5, true, None);
        let strict = WitnessOptions {
            require_origin: true,
            ..Default::default()
        };
        assert!(witness_long_range(&sum, &quiet(), &strict)
            .unwrap_err()
            .is_config());
        let v = witness_long_range(&sum, &quiet(), &WitnessOptions::default()).unwrap();
        assert_eq!(v.origin, Origin::NotApplicable);
        let bad = WitnessOptions {
            tol: 0.0,
            ..Default::default()
        };
        assert!(witness_long_range(&sum, &quiet(), &bad).is_err());
    }

    #[test]
    fn raising_tolerance_never_creates_a_witness() {
        for gamma in [0.3, 0.999, 1.0000001, 1.58, 2.0] {
            let sum = summary_with(gamma, true, Some(gamma));
            let mut prev = true;
            for tol in [1e-9, 1e-6, 1e-3, 0.1, 0.5] {
                let opts = WitnessOptions {
                    tol,
                    require_origin: false,
                };
                let w = witness_long_range(&sum, &quiet(), &opts)
                    .unwrap()
                    .long_range_witnessed;
                assert!(prev || !w);
                prev = w;
            }
        }
    }
}
