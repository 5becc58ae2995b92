//! Machine-readable reports.
//!
//! Key names and nesting are part of the interface; every number is an exact
//! integer.

use std::fmt::Write as _;

use ngap_core::gaps::{brimkov_from_census, formula_from_census};
use ngap_core::{classify_cell, gap_hubs, CellCensus, DigitalObject, HubClass, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub i: usize,
    pub c: u64,
    pub c_star: u64,
    pub c_prime: u64,
    pub beta: u64,
}

/// `g_{n-2}` by inspection and by both closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapCounts {
    pub dimension: usize,
    pub oracle: i64,
    pub formula: i64,
    pub brimkov: i64,
}

impl GapCounts {
    pub fn agree(&self) -> bool {
        self.oracle == self.formula && self.formula == self.brimkov
    }
}

/// Number of `(n-2)`-cells in each configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub simple: u64,
    pub facet_pair_block: u64,
    pub gap_tandem: u64,
    pub l_block: u64,
    pub full_block: u64,
}

impl Histogram {
    pub fn get(&self, class: HubClass) -> u64 {
        match class {
            HubClass::Simple => self.simple,
            HubClass::FacetPairBlock => self.facet_pair_block,
            HubClass::GapTandem => self.gap_tandem,
            HubClass::LBlock => self.l_block,
            HubClass::FullBlock => self.full_block,
        }
    }

    fn bump(&mut self, class: HubClass) {
        *match class {
            HubClass::Simple => &mut self.simple,
            HubClass::FacetPairBlock => &mut self.facet_pair_block,
            HubClass::GapTandem => &mut self.gap_tandem,
            HubClass::LBlock => &mut self.l_block,
            HubClass::FullBlock => &mut self.full_block,
        } += 1;
    }

    pub fn total(&self) -> u64 {
        HubClass::ALL.iter().map(|&c| self.get(c)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub voxels: usize,
    pub census: Vec<CensusRow>,
    /// `None` when `n < 2`.
    pub gaps: Option<GapCounts>,
    /// True iff the three gap counts coincide (vacuously true when `n < 2`).
    pub agreement: bool,
    /// Hubs in doubled coordinates, lexicographic order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hubs: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Histogram>,
}

pub fn census_rows(cen: &CellCensus) -> Vec<CensusRow> {
    (0..=cen.n())
        .map(|i| CensusRow {
            i,
            c: cen.c(i),
            c_star: cen.c_star(i),
            c_prime: cen.c_prime(i),
            beta: cen.beta(i),
        })
        .collect()
}

/// Builds the gap report of `d` against an already computed census.
pub fn build(d: &DigitalObject, cen: &CellCensus, with_hubs: bool) -> Result<Report> {
    let n = d.n();
    let (gaps, hubs) = if n >= 2 {
        let hubs = gap_hubs(d, n - 2)?;
        let counts = GapCounts {
            dimension: n - 2,
            oracle: hubs.len() as i64,
            formula: formula_from_census(cen)?,
            brimkov: brimkov_from_census(cen)?,
        };
        let listed = hubs.iter().map(|h| h.coords().to_vec()).collect();
        (Some(counts), Some(listed))
    } else {
        (None, Some(Vec::new()))
    };
    Ok(Report {
        n,
        voxels: d.len(),
        census: census_rows(cen),
        agreement: gaps.as_ref().map_or(true, GapCounts::agree),
        gaps,
        hubs: hubs.filter(|_| with_hubs),
        classification: None,
    })
}

/// Classifies every `(n-2)`-cell listed in the census. Requires `n >= 2`.
pub fn classify_all(d: &DigitalObject, cen: &CellCensus) -> Result<Histogram> {
    let mut h = Histogram::default();
    for (e, _) in cen.cells(d.n() - 2) {
        h.bump(classify_cell(d, e)?.class);
    }
    Ok(h)
}

fn fmt_cell(coords: &[i64]) -> String {
    let parts: Vec<String> = coords.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}, voxels = {}", self.n, self.voxels);
        let _ = writeln!(
            out,
            "{:>3} {:>10} {:>10} {:>10} {:>10}",
            "i", "c", "c*", "c'", "beta"
        );
        for r in &self.census {
            let _ = writeln!(
                out,
                "{:>3} {:>10} {:>10} {:>10} {:>10}",
                r.i, r.c, r.c_star, r.c_prime, r.beta
            );
        }
        match &self.gaps {
            Some(g) => {
                let _ = writeln!(
                    out,
                    "g_{}: oracle {}, formula {}, brimkov {} ({})",
                    g.dimension,
                    g.oracle,
                    g.formula,
                    g.brimkov,
                    if self.agreement { "agree" } else { "DISAGREE" }
                );
            }
            None => out.push_str("gaps: undefined for n < 2\n"),
        }
        if let Some(hubs) = &self.hubs {
            let _ = writeln!(out, "hubs: {}", hubs.len());
            for h in hubs {
                let _ = writeln!(out, "  {}", fmt_cell(h));
            }
        }
        if let Some(h) = &self.classification {
            out.push_str(&histogram_text(h));
        }
        out
    }
}

pub fn histogram_text(h: &Histogram) -> String {
    let mut out = String::new();
    for class in HubClass::ALL {
        let _ = writeln!(out, "{:<17} {}", class.name(), h.get(class));
    }
    let _ = writeln!(out, "{:<17} {}", "total", h.total());
    out
}
