//! Gap detection and counting.
//!
//! An `i`-cell `e` of `D` is an `i`-hub when `D ∩ B_i(e)` is exactly a pair
//! of strictly `i`-adjacent voxels meeting in `e` (an `i`-tandem). Free
//! `(n-2)`-cells that are not hubs are nubs.
//!
//! The number of `(n-2)`-gaps is computed three ways:
//!
//! - [`count_gaps_oracle`]: inspect every `(n-2)`-cell;
//! - [`count_gaps_formula`]: `(n-1) c*_{n-1} - c*_{n-2}`;
//! - [`count_gaps_brimkov`]: `-2n(n-1) c_n + 2(n-1) c_{n-1} - c_{n-2} + β_{n-2}`.
//!
//! Only the oracle handles `i < n-2`; no closed form is known there.

use std::fmt;

use crate::cell::{self, same_n, Cell};
use crate::error::{Error, Result};
use crate::object::{self, CellCensus, DigitalObject};

/// Configuration of the voxels of `D` around an `(n-2)`-cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HubClass {
    /// One voxel; the cell is simple.
    Simple,
    /// Two face-adjacent voxels forming an `(n-1)`-block.
    FacetPairBlock,
    /// Two strictly `(n-2)`-adjacent voxels meeting in the cell: a hub.
    GapTandem,
    /// Three voxels.
    LBlock,
    /// All four voxels; the cell is not free.
    FullBlock,
}

impl HubClass {
    pub const ALL: [HubClass; 5] = [
        HubClass::Simple,
        HubClass::FacetPairBlock,
        HubClass::GapTandem,
        HubClass::LBlock,
        HubClass::FullBlock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HubClass::Simple => "simple",
            HubClass::FacetPairBlock => "facet_pair_block",
            HubClass::GapTandem => "gap_tandem",
            HubClass::LBlock => "l_block",
            HubClass::FullBlock => "full_block",
        }
    }
}

impl fmt::Display for HubClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A [`HubClass`] together with the witness voxels `D ∩ B_{n-2}(e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: HubClass,
    pub witnesses: Vec<Cell>,
}

fn require_gap_dims(d: &DigitalObject) -> Result<()> {
    if d.n() < 2 {
        return Err(Error::IndexOutOfRange {
            index: d.n(),
            min: 2,
            max: usize::MAX,
        });
    }
    Ok(())
}

fn require_cell_of_dim(d: &DigitalObject, e: &Cell, i: usize) -> Result<()> {
    same_n(d.n(), e.ambient_dim())?;
    if e.dimension() != i {
        return Err(Error::IndexOutOfRange {
            index: e.dimension(),
            min: i,
            max: i,
        });
    }
    if !d.has_cell(e) {
        return Err(Error::NotACellOfObject(e.to_string()));
    }
    Ok(())
}

fn present_in_block(d: &DigitalObject, e: &Cell) -> Vec<Cell> {
    cell::block(e)
        .into_iter()
        .filter(|v| d.contains(v))
        .collect()
}

/// Classifies an `(n-2)`-cell of `D` by the voxels of `D` around it.
pub fn classify_cell(d: &DigitalObject, e: &Cell) -> Result<Classification> {
    require_gap_dims(d)?;
    let n = d.n();
    require_cell_of_dim(d, e, n - 2)?;
    let witnesses = present_in_block(d, e);
    let class = match witnesses.len() {
        1 => HubClass::Simple,
        2 => {
            let adj = cell::adjacency(&witnesses[0], &witnesses[1])?;
            if adj.is_strictly(n - 1) {
                HubClass::FacetPairBlock
            } else if adj.is_strictly(n - 2)
                && cell::meet(&witnesses[0], &witnesses[1])?.as_ref() == Some(e)
            {
                HubClass::GapTandem
            } else {
                return Err(Error::Inconsistent(format!(
                    "voxel pair around {e} is neither facet- nor hub-adjacent"
                )));
            }
        }
        3 => HubClass::LBlock,
        4 => HubClass::FullBlock,
        k => {
            return Err(Error::Inconsistent(format!(
                "{k} voxels of D around the (n-2)-cell {e}"
            )))
        }
    };
    Ok(Classification { class, witnesses })
}

/// Whether `D` has an `i`-gap over the `i`-cell `e` (`0 <= i <= n-2`).
pub fn is_gap(d: &DigitalObject, e: &Cell, i: usize) -> Result<bool> {
    require_gap_dims(d)?;
    if i > d.n() - 2 {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: d.n() - 2,
        });
    }
    require_cell_of_dim(d, e, i)?;
    let present = present_in_block(d, e);
    if present.len() != 2 {
        return Ok(false);
    }
    let adj = cell::adjacency(&present[0], &present[1])?;
    Ok(adj.is_strictly(i) && cell::meet(&present[0], &present[1])?.as_ref() == Some(e))
}

/// `(n-2)`-gap test through adjacency neighborhoods.
///
/// Looks for voxels `v1, v2 ∈ D` bounded by `e`, strictly `(n-2)`-adjacent,
/// with no voxel of `D` face-adjacent to both.
pub fn is_gap_by_adjacency(d: &DigitalObject, e: &Cell) -> Result<bool> {
    require_gap_dims(d)?;
    let n = d.n();
    require_cell_of_dim(d, e, n - 2)?;
    let around: Vec<Cell> = cell::cofaces(e, n)?
        .into_iter()
        .filter(|v| d.contains(v))
        .collect();
    for (a, v1) in around.iter().enumerate() {
        for v2 in &around[a + 1..] {
            let adj = cell::adjacency(v1, v2)?;
            if !(adj.is_adjacent(n - 2) && !adj.is_adjacent(n - 1)) {
                continue;
            }
            let n1 = cell::neighborhood(v1, n - 1)?;
            let n2 = cell::neighborhood(v2, n - 1)?;
            let common_in_d = n1
                .iter()
                .any(|u| d.contains(u) && n2.binary_search(u).is_ok());
            if !common_in_d {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Gap census for one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    /// Gap dimension.
    pub i: usize,
    /// Hubs in lexicographic order.
    pub hubs: Vec<Cell>,
    /// `g_i`, found by inspection.
    pub count: u64,
    /// `(n-1) c*_{n-1} - c*_{n-2}`, when `i = n-2`.
    pub formula: Option<i64>,
    /// `-2n(n-1) c_n + 2(n-1) c_{n-1} - c_{n-2} + β_{n-2}`, when `i = n-2`.
    pub brimkov: Option<i64>,
}

impl GapReport {
    /// All available counts coincide.
    pub fn agrees(&self) -> bool {
        let g = self.count as i64;
        self.formula.map_or(true, |f| f == g) && self.brimkov.map_or(true, |b| b == g)
    }
}

/// Inspects every `i`-cell of `D` and returns the hubs, sorted.
pub fn gap_hubs(d: &DigitalObject, i: usize) -> Result<Vec<Cell>> {
    require_gap_dims(d)?;
    if i > d.n() - 2 {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: d.n() - 2,
        });
    }
    let mut hubs = Vec::new();
    for e in object::cells(d, i)? {
        if is_gap(d, &e, i)? {
            hubs.push(e);
        }
    }
    Ok(hubs)
}

/// Counts `i`-gaps by inspection; for `i = n-2` also evaluates both closed forms.
pub fn count_gaps_oracle(d: &DigitalObject, i: usize) -> Result<GapReport> {
    let hubs = gap_hubs(d, i)?;
    let (formula, brimkov) = if i == d.n() - 2 {
        let cen = object::census(d);
        (
            Some(formula_from_census(&cen)?),
            Some(brimkov_from_census(&cen)?),
        )
    } else {
        (None, None)
    };
    Ok(GapReport {
        i,
        count: hubs.len() as u64,
        hubs,
        formula,
        brimkov,
    })
}

fn signed(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("gap formula"))
}

fn census_gap_dims(cen: &CellCensus) -> Result<usize> {
    if cen.n() < 2 {
        return Err(Error::IndexOutOfRange {
            index: cen.n(),
            min: 2,
            max: usize::MAX,
        });
    }
    Ok(cen.n())
}

/// `(n-1) c*_{n-1} - c*_{n-2}` from a census.
pub fn formula_from_census(cen: &CellCensus) -> Result<i64> {
    let n = census_gap_dims(cen)?;
    let m = (n - 1) as i64;
    m.checked_mul(signed(cen.c_star(n - 1))?)
        .and_then(|x| x.checked_sub(signed(cen.c_star(n - 2)).ok()?))
        .ok_or(Error::Overflow("gap formula"))
}

/// `-2n(n-1) c_n + 2(n-1) c_{n-1} - c_{n-2} + β_{n-2}` from a census.
pub fn brimkov_from_census(cen: &CellCensus) -> Result<i64> {
    let n = census_gap_dims(cen)?;
    let (ni, mi) = (n as i128, (n - 1) as i128);
    let value = -2 * ni * mi * i128::from(cen.c(n)) + 2 * mi * i128::from(cen.c(n - 1))
        - i128::from(cen.c(n - 2))
        + i128::from(cen.beta(n - 2));
    i64::try_from(value).map_err(|_| Error::Overflow("gap formula"))
}

/// `g_{n-2}` from free-cell counts.
pub fn count_gaps_formula(d: &DigitalObject) -> Result<i64> {
    require_gap_dims(d)?;
    formula_from_census(&object::census(d))
}

/// `g_{n-2}` from total counts and the number of `(n-2)`-blocks inside `D`.
pub fn count_gaps_brimkov(d: &DigitalObject) -> Result<i64> {
    require_gap_dims(d)?;
    brimkov_from_census(&object::census(d))
}

/// Splits `bd_{n-2}(D)` into hubs and nubs, both sorted.
pub fn hub_nub_partition(d: &DigitalObject) -> Result<(Vec<Cell>, Vec<Cell>)> {
    require_gap_dims(d)?;
    let n = d.n();
    let mut hubs = Vec::new();
    let mut nubs = Vec::new();
    for e in object::border(d, n - 2)? {
        if is_gap(d, &e, n - 2)? {
            hubs.push(e);
        } else {
            nubs.push(e);
        }
    }
    Ok((hubs, nubs))
}
