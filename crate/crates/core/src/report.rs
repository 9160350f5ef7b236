//! Serialized and rendered forms of lattices, summaries and verdicts.

use serde::{Deserialize, Serialize};

use crate::lattice::{Gap, InfoLattice, LatticeSummary};
use crate::stabilizer::MlgsEntry;
use crate::witness::LatticeVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteValue {
    pub n: f64,
    pub l: usize,
    pub i: f64,
}

/// The JSON lattice dump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeReport {
    #[serde(rename = "L")]
    pub len: usize,
    pub dims: Vec<usize>,
    pub lattice: Vec<SiteValue>,
    pub info_per_scale: Vec<f64>,
    pub omega: f64,
    pub gamma: f64,
    pub gamma_folded: Option<f64>,
    pub gap: Option<Gap>,
    pub verdict: Option<LatticeVerdict>,
}

impl LatticeReport {
    pub fn new(
        lat: &InfoLattice,
        summary: &LatticeSummary,
        verdict: Option<LatticeVerdict>,
    ) -> Self {
        Self {
            len: lat.len(),
            dims: lat.dims().to_vec(),
            lattice: lat.sites().map(|(n, l, i)| SiteValue { n, l, i }).collect(),
            info_per_scale: summary.info_per_scale.clone(),
            omega: summary.omega,
            gamma: summary.gamma,
            gamma_folded: summary.gamma_folded,
            gap: summary.gap,
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `n,l,i` rows.
pub fn lattice_csv(lat: &InfoLattice) -> String {
    let mut out = String::from("n,l,i\n");
    for (n, l, i) in lat.sites() {
        out.push_str(&format!("{n},{l},{i}\n"));
    }
    out
}

/// `l,info` rows followed by the aggregate lines.
pub fn summary_csv(summary: &LatticeSummary) -> String {
    let mut out = String::from("l,info\n");
    for (l, v) in summary.info_per_scale.iter().enumerate() {
        out.push_str(&format!("{l},{v}\n"));
    }
    out
}

const CELL: usize = 8;

fn cell(v: f64, tol: f64) -> String {
    if (v - v.round()).abs() <= tol {
        let k = v.round() as i64;
        if k == 0 {
            "·".into()
        } else {
            format!("({k})")
        }
    } else {
        format!("{v:.3}")
    }
}

/// Triangle with the largest scale on top. Integer sites are shown in
/// parentheses, zeros as dots, other values with three decimals.
pub fn render_triangle(lat: &InfoLattice, tol: f64) -> String {
    let len = lat.len();
    let width = CELL * len;
    let mut out = String::new();
    for l in (0..len).rev() {
        let mut row = vec![' '; width + CELL];
        for left in 0..len - l {
            let v = lat.get(l, left).expect("site in range");
            let text: Vec<char> = cell(v, tol).chars().collect();
            // center of site n sits at column CELL·n + CELL/2
            let center = CELL * left + CELL * l / 2 + CELL / 2;
            let start = center.saturating_sub(text.len() / 2);
            for (k, c) in text.into_iter().enumerate() {
                row[start + k] = c;
            }
        }
        let line: String = row.into_iter().collect();
        out.push_str(&format!("l={l:<3}|{}\n", line.trim_end()));
    }
    out
}

/// Per-scale table plus aggregates.
pub fn render_summary(summary: &LatticeSummary) -> String {
    let mut out = String::from("scale  information\n");
    for (l, v) in summary.info_per_scale.iter().enumerate() {
        out.push_str(&format!("{l:>5}  {v:.6}\n"));
    }
    out.push_str(&format!(
        "omega = {:.6}\ngamma = {:.6}\n",
        summary.omega, summary.gamma
    ));
    if let Some(gf) = summary.gamma_folded {
        out.push_str(&format!("gamma_folded = {gf:.6}\n"));
    }
    match summary.gap {
        Some(g) => out.push_str(&format!(
            "gap = scales {}..={} (max {:.3e})\n",
            g.start, g.end, g.max_info
        )),
        None => out.push_str("gap = none\n"),
    }
    out.push_str(&format!("localized = {}\n", summary.localized));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MlgsRecord {
    pub generator: String,
    pub n: f64,
    pub l: usize,
}

pub fn mlgs_records(set: &[MlgsEntry]) -> Vec<MlgsRecord> {
    set.iter()
        .map(|e| MlgsRecord {
            generator: format!("{:+}", e.generator),
            n: e.center(),
            l: e.scale(),
        })
        .collect()
}

pub fn render_mlgs(set: &[MlgsEntry]) -> String {
    mlgs_records(set)
        .iter()
        .map(|r| format!("{}  n={} l={}\n", r.generator, r.n, r.l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{compute_lattice, summarize};
    use crate::models::{reference_state, ReferenceState};

    #[test]
    fn ghz_triangle() {
        let lat = compute_lattice(&reference_state(ReferenceState::Ghz, 4).unwrap()).unwrap();
        let t = render_triangle(&lat, 1e-6);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("l=3") && lines[0].contains("(1)"));
        assert_eq!(lines[2].matches("(1)").count(), 3);
        assert_eq!(lines[3].matches('·').count(), 4);
    }

    #[test]
    fn noninteger_cells_show_decimals() {
        assert_eq!(cell(0.5, 1e-6), "0.500");
        assert_eq!(cell(2.0 + 1e-9, 1e-6), "(2)");
    }

    #[test]
    fn json_schema_fields() {
        let lat = compute_lattice(&reference_state(ReferenceState::Neel, 4).unwrap()).unwrap();
        let sum = summarize(&lat, 1e-3);
        let v: serde_json::Value =
            serde_json::from_str(&LatticeReport::new(&lat, &sum, None).to_json()).unwrap();
        for key in [
            "L",
            "dims",
            "lattice",
            "info_per_scale",
            "omega",
            "gamma",
            "gamma_folded",
            "gap",
            "verdict",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["lattice"].as_array().unwrap().len(), 10);
        assert_eq!(v["lattice"][0]["i"], 1.0);
    }
}
