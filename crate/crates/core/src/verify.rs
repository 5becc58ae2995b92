//! Executable identity checks over a single object.
//!
//! Each check recomputes one counting identity from enumerated cells and
//! compares it with the census. A failing check names the identity and, when
//! one exists, the first offending cell.

use std::collections::HashSet;

use crate::cell::{self, Cell};
use crate::combinatorics::{c_bounding, incidence_sum_check};
use crate::error::Result;
use crate::gaps::{self, HubClass};
use crate::object::{self, CellCensus, DigitalObject};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<IdentityOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityOutcome> + '_ {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    fn record(&mut self, name: &'static str, failure: Option<String>) {
        self.outcomes.push(IdentityOutcome {
            name,
            passed: failure.is_none(),
            detail: failure.unwrap_or_default(),
        });
    }
}

/// Names of the checks, in the order they are reported.
pub const IDENTITIES: &[&str] = &[
    "census_partition",
    "facet_count_lemma",
    "free_face_closure",
    "border_sum",
    "classification_totality",
    "detector_equivalence",
    "degree_dichotomy",
    "hub_nub_cardinality",
    "proof_replay",
    "gap_agreement",
];

/// Runs every identity against a freshly computed census.
pub fn verify_object(d: &DigitalObject) -> Result<VerifyReport> {
    verify_with_census(d, &object::census(d))
}

/// Runs every identity, taking census counts from `cen`.
pub fn verify_with_census(d: &DigitalObject, cen: &CellCensus) -> Result<VerifyReport> {
    let n = d.n();
    let mut report = VerifyReport::default();

    report.record("census_partition", census_partition(cen));

    let lhs = cen.c(n - 1) as i128;
    let rhs = 2 * n as i128 * cen.c(n) as i128 - cen.c_prime(n - 1) as i128;
    report.record(
        "facet_count_lemma",
        (lhs != rhs).then(|| format!("c_(n-1) = {lhs}, 2n c_n - c'_(n-1) = {rhs}")),
    );

    let free_sets: Vec<HashSet<&Cell>> = (0..n).map(|i| cen.free_cells(i).collect()).collect();
    report.record("free_face_closure", free_face_closure(cen, &free_sets));
    report.record("border_sum", border_sum(d, cen)?);

    if n < 2 {
        return Ok(report);
    }
    let g_dim = n - 2;

    let mut failure = None;
    let mut histogram = [0u64; 5];
    for (e, free) in cen.cells(g_dim) {
        let cls = gaps::classify_cell(d, e)?;
        histogram[cls.class as usize] += 1;
        if (cls.class == HubClass::FullBlock) == *free && failure.is_none() {
            failure = Some(format!("{e}: class {} but free = {free}", cls.class));
        }
    }
    let total: u64 = histogram.iter().sum();
    if failure.is_none() && total != cen.c(g_dim) {
        failure = Some(format!("{total} classified, c_(n-2) = {}", cen.c(g_dim)));
    }
    report.record("classification_totality", failure);

    let mut failure = None;
    for (e, _) in cen.cells(g_dim) {
        let by_block = gaps::is_gap(d, e, g_dim)?;
        let by_adjacency = gaps::is_gap_by_adjacency(d, e)?;
        if by_block != by_adjacency {
            failure = Some(format!(
                "{e}: tandem test {by_block}, adjacency test {by_adjacency}"
            ));
            break;
        }
    }
    report.record("detector_equivalence", failure);

    let (hubs, nubs) = gaps::hub_nub_partition(d)?;
    let mut failure = None;
    let mut degree_sum: u64 = 0;
    for (set, expected) in [(&hubs, 4), (&nubs, 2)] {
        for e in set {
            let b = object::b_boundary(d, e, n - 1)?;
            degree_sum += b;
            if b != expected && failure.is_none() {
                failure = Some(format!("{e}: b_(n-1) = {b}, expected {expected}"));
            }
        }
    }
    report.record("degree_dichotomy", failure);

    let g = hubs.len() as i128;
    let c_star_g = cen.c_star(g_dim) as i128;
    report.record(
        "hub_nub_cardinality",
        (nubs.len() as i128 != c_star_g - g)
            .then(|| format!("|H| = {g}, |N| = {}, c*_(n-2) = {c_star_g}", nubs.len())),
    );

    let two_m_cstar = 2 * (n as i128 - 1) * cen.c_star(n - 1) as i128;
    let by_classes = 4 * g + 2 * (c_star_g - g);
    let sum = degree_sum as i128;
    report.record(
        "proof_replay",
        (sum != two_m_cstar || sum != by_classes).then(|| {
            format!("sum b = {sum}, 2(n-1)c*_(n-1) = {two_m_cstar}, 4g + 2(c* - g) = {by_classes}")
        }),
    );

    let oracle = gaps::gap_hubs(d, g_dim)?.len() as i64;
    let formula = gaps::formula_from_census(cen)?;
    let brimkov = gaps::brimkov_from_census(cen)?;
    report.record(
        "gap_agreement",
        (oracle != formula || oracle != brimkov)
            .then(|| format!("oracle {oracle}, formula {formula}, brimkov {brimkov}")),
    );

    Ok(report)
}

fn census_partition(cen: &CellCensus) -> Option<String> {
    let n = cen.n();
    for i in 0..=n {
        let k = cen.counts(i);
        let listed = cen.cells(i).len() as u64;
        let listed_free = cen.cells(i).iter().filter(|(_, f)| *f).count() as u64;
        if k.total != k.free + k.non_free {
            return Some(format!(
                "i = {i}: c = {} != c* + c' = {} + {}",
                k.total, k.free, k.non_free
            ));
        }
        if k.total != listed || k.free != listed_free {
            return Some(format!(
                "i = {i}: counts (c = {}, c* = {}) disagree with enumeration ({listed}, {listed_free})",
                k.total, k.free
            ));
        }
        if i == n && k.free != 0 {
            return Some(format!("c*_n = {}", k.free));
        }
    }
    None
}

fn free_face_closure(cen: &CellCensus, free_sets: &[HashSet<&Cell>]) -> Option<String> {
    for j in 1..cen.n() {
        for f in cen.free_cells(j) {
            for e in cell::closure(f) {
                let i = e.dimension();
                if i < j && !free_sets[i].contains(&e) {
                    return Some(format!("{e} bounds the free cell {f} but is not free"));
                }
            }
        }
    }
    None
}

fn border_sum(d: &DigitalObject, cen: &CellCensus) -> Result<Option<String>> {
    let n = d.n();
    for j in 1..n {
        let free_j: Vec<&Cell> = cen.free_cells(j).collect();
        for i in 0..j {
            let point_degrees = cen
                .free_cells(i)
                .map(|e| object::b_boundary(d, e, j))
                .collect::<Result<Vec<u64>>>()?;
            let block_degrees: Vec<u64> = free_j
                .iter()
                .map(|f| {
                    cell::faces(f, i)
                        .map(|fs| fs.iter().filter(|e| cen_is_free(cen, e)).count() as u64)
                })
                .collect::<Result<_>>()?;
            let lhs: u64 = point_degrees.iter().sum();
            let rhs = c_bounding(i, j)? as u128 * cen.c_star(j) as u128;
            if !incidence_sum_check(&point_degrees, &block_degrees) || u128::from(lhs) != rhs {
                return Ok(Some(format!(
                    "i = {i}, j = {j}: sum b_j = {lhs}, c_(i->j) c*_j = {rhs} ({} free j-cells)",
                    free_j.len()
                )));
            }
        }
    }
    Ok(None)
}

fn cen_is_free(cen: &CellCensus, e: &Cell) -> bool {
    let i = e.dimension();
    cen.cells(i)
        .binary_search_by(|(c, _)| c.cmp(e))
        .map(|k| cen.cells(i)[k].1)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::object::DimCounts;

    #[test]
    fn all_identities_hold_on_small_objects() {
        let shapes: &[&[&[i64]]] = &[
            &[&[0, 0, 0]],
            &[&[0, 0, 0], &[1, 1, 0]],
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]],
            &[&[0, 0, 0], &[1, 1, 1], &[2, 0, 1]],
        ];
        for centers in shapes {
            let d = DigitalObject::from_centers(3, centers.iter().copied()).unwrap();
            let report = verify_object(&d).unwrap();
            assert!(
                report.passed(),
                "{:?}",
                report.failures().collect::<Vec<_>>()
            );
            let names: Vec<_> = report.outcomes.iter().map(|o| o.name).collect();
            assert_eq!(names, IDENTITIES);
        }
    }

    #[test]
    fn one_dimensional_objects_skip_gap_checks() {
        let d = DigitalObject::from_centers(1, [[0i64], [1], [3]]).unwrap();
        let report = verify_object(&d).unwrap();
        assert!(report.passed());
        assert_eq!(report.outcomes.len(), 4);
    }

    #[test]
    fn corrupted_census_is_caught() {
        let d = DigitalObject::from_centers(3, [[0i64, 0, 0], [1, 1, 0]]).unwrap();
        let mut cen = object::census(&d);
        let k = cen.counts(2);
        cen.inject_fault(
            2,
            DimCounts {
                total: k.total,
                free: k.free - 1,
                non_free: k.non_free + 1,
            },
        );
        let report = verify_with_census(&d, &cen).unwrap();
        let failed: Vec<_> = report.failures().map(|o| o.name).collect();
        assert!(failed.contains(&"census_partition"));
        assert!(failed.contains(&"gap_agreement"));
    }
}
