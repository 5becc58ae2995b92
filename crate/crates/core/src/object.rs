//! Digital `n`-objects: finite sets of voxels, their cells, free cells and borders.

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexSet;

use crate::cell::{self, same_n, Cell};
use crate::error::{Error, Result};

/// A finite set of voxels of `C_n`.
///
/// Voxels are kept in lexicographic order; membership is a hash lookup.
#[derive(Clone, PartialEq, Eq)]
pub struct DigitalObject {
    n: usize,
    voxels: IndexSet<Cell>,
}

impl DigitalObject {
    /// The empty object in `C_n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            n,
            voxels: IndexSet::new(),
        })
    }

    /// Builds an object from voxel cells. Duplicates are rejected.
    pub fn from_voxels(n: usize, voxels: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut object = Self::empty(n)?;
        for v in voxels {
            same_n(n, v.ambient_dim())?;
            if !v.is_voxel() {
                return Err(Error::NotAVoxel(v.dimension()));
            }
            if object.voxels.contains(&v) {
                return Err(Error::DuplicateVoxel(v.to_string()));
            }
            object.voxels.insert(v);
        }
        object.voxels.sort_unstable();
        Ok(object)
    }

    /// Builds an object from integer voxel centers.
    pub fn from_centers<C: AsRef<[i64]>>(
        n: usize,
        centers: impl IntoIterator<Item = C>,
    ) -> Result<Self> {
        let voxels = centers
            .into_iter()
            .map(|c| {
                let c = c.as_ref();
                same_n(n, c.len())?;
                Cell::voxel(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_voxels(n, voxels)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.voxels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.voxels.is_empty()
    }

    /// Voxels in lexicographic order.
    pub fn voxels(&self) -> impl ExactSizeIterator<Item = &Cell> + '_ {
        self.voxels.iter()
    }

    /// Integer voxel centers in lexicographic order.
    pub fn centers(&self) -> Vec<Vec<i64>> {
        self.voxels
            .iter()
            .map(|v| v.voxel_center().expect("objects only hold voxels"))
            .collect()
    }

    #[inline]
    pub fn contains(&self, voxel: &Cell) -> bool {
        self.voxels.contains(voxel)
    }

    /// Number of voxels of `block(e)` that belong to the object.
    pub fn block_occupancy(&self, e: &Cell) -> usize {
        cell::block(e).iter().filter(|v| self.contains(v)).count()
    }

    /// `e` is a face of some voxel of the object.
    pub fn has_cell(&self, e: &Cell) -> bool {
        e.ambient_dim() == self.n && cell::block(e).iter().any(|v| self.contains(v))
    }

    /// The object shifted by an integer vector.
    pub fn translated(&self, offset: &[i64]) -> Result<Self> {
        same_n(self.n, offset.len())?;
        let centers = self
            .centers()
            .into_iter()
            .map(|c| c.iter().zip(offset).map(|(a, b)| a + b).collect::<Vec<_>>());
        Self::from_centers(self.n, centers)
    }

    /// The object with axes reordered: axis `k` of the result is axis `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        same_n(self.n, perm.len())?;
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidShape(format!(
                    "{perm:?} is not a permutation of 0..{}",
                    self.n
                )));
            }
        }
        let centers = self
            .centers()
            .into_iter()
            .map(|c| perm.iter().map(|&p| c[p]).collect::<Vec<_>>());
        Self::from_centers(self.n, centers)
    }
}

impl fmt::Debug for DigitalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitalObject")
            .field("n", &self.n)
            .field("centers", &self.centers())
            .finish()
    }
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i > max {
        Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max,
        })
    } else {
        Ok(())
    }
}

fn require_cell_of(d: &DigitalObject, e: &Cell) -> Result<()> {
    same_n(d.n(), e.ambient_dim())?;
    if d.has_cell(e) {
        Ok(())
    } else {
        Err(Error::NotACellOfObject(e.to_string()))
    }
}

/// All `i`-cells of the object, sorted.
pub fn cells(d: &DigitalObject, i: usize) -> Result<Vec<Cell>> {
    check_index(i, d.n())?;
    let mut set = HashSet::new();
    for v in d.voxels() {
        set.extend(cell::faces(v, i)?);
    }
    let mut out: Vec<Cell> = set.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// A cell `e` of `D` with `dim e < n` is free when its block is not inside `D`.
pub fn is_free(d: &DigitalObject, e: &Cell) -> Result<bool> {
    require_cell_of(d, e)?;
    check_index(e.dimension(), d.n() - 1)?;
    Ok(cell::block(e).iter().any(|v| !d.contains(v)))
}

/// `bd_i(D)`: the `i`-cells whose block meets both `D` and its complement, sorted.
pub fn border(d: &DigitalObject, i: usize) -> Result<Vec<Cell>> {
    if d.n() == 0 || i + 1 > d.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: d.n() - 1,
        });
    }
    let full = 1usize << (d.n() - i);
    Ok(cells(d, i)?
        .into_iter()
        .filter(|e| d.block_occupancy(e) < full)
        .collect())
}

/// `b_j(e, D)`: number of `j`-cells of `bd(D)` bounded by `e`.
pub fn b_boundary(d: &DigitalObject, e: &Cell, j: usize) -> Result<u64> {
    require_cell_of(d, e)?;
    let n = d.n();
    if j <= e.dimension() || j >= n {
        return Err(Error::IndexOutOfRange {
            index: j,
            min: e.dimension() + 1,
            max: n - 1,
        });
    }
    let full = 1usize << (n - j);
    let count = cell::cofaces(e, j)?
        .iter()
        .filter(|f| {
            let k = d.block_occupancy(f);
            k > 0 && k < full
        })
        .count() as u64;
    if count > 0 && d.block_occupancy(e) == 1usize << (n - e.dimension()) {
        return Err(Error::Inconsistent(format!(
            "non-free cell {e} bounds {count} free {j}-cells"
        )));
    }
    Ok(count)
}

/// Total, free and non-free counts for one dimension.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DimCounts {
    pub total: u64,
    pub free: u64,
    pub non_free: u64,
}

/// Per-dimension cell counts of an object together with the enumerated cells.
///
/// For `i = n` every voxel is recorded as non-free; freeness is only
/// defined below the top dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCensus {
    n: usize,
    cells: Vec<Vec<(Cell, bool)>>,
    counts: Vec<DimCounts>,
}

impl CellCensus {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Counts for dimension `i`. Panics if `i > n`.
    pub fn counts(&self, i: usize) -> DimCounts {
        self.counts[i]
    }

    /// `c_i`
    pub fn c(&self, i: usize) -> u64 {
        self.counts[i].total
    }

    /// `c*_i`
    pub fn c_star(&self, i: usize) -> u64 {
        self.counts[i].free
    }

    /// `c'_i`
    pub fn c_prime(&self, i: usize) -> u64 {
        self.counts[i].non_free
    }

    /// `β_i`, the number of `i`-blocks contained in the object; equal to `c'_i`.
    pub fn beta(&self, i: usize) -> u64 {
        self.c_prime(i)
    }

    /// The `i`-cells with their freeness flag, sorted.
    pub fn cells(&self, i: usize) -> &[(Cell, bool)] {
        &self.cells[i]
    }

    /// The free `i`-cells, sorted.
    pub fn free_cells(&self, i: usize) -> impl Iterator<Item = &Cell> + '_ {
        self.cells[i].iter().filter(|(_, f)| *f).map(|(c, _)| c)
    }

    /// Overwrites the stored counts of dimension `i` without touching the
    /// enumerated cells. Fault-injection hook for exercising the verifier.
    #[doc(hidden)]
    pub fn inject_fault(&mut self, i: usize, counts: DimCounts) {
        self.counts[i] = counts;
    }
}

/// Enumerates every cell of the object once and classifies it.
///
/// A cell's occupancy (voxels of `D` containing it) is accumulated while
/// walking voxel closures; the cell is free when the occupancy is below the
/// block size `2^(n-i)`.
pub fn census(d: &DigitalObject) -> CellCensus {
    let n = d.n();
    let mut occupancy: Vec<HashMap<Cell, u32>> = vec![HashMap::new(); n + 1];
    for v in d.voxels() {
        for f in cell::closure(v) {
            *occupancy[f.dimension()].entry(f).or_insert(0) += 1;
        }
    }
    let mut cells = Vec::with_capacity(n + 1);
    let mut counts = Vec::with_capacity(n + 1);
    for (i, layer) in occupancy.into_iter().enumerate() {
        let full = 1u32 << (n - i);
        let mut classified: Vec<(Cell, bool)> = layer
            .into_iter()
            .map(|(e, k)| (e, i < n && k < full))
            .collect();
        classified.sort_unstable();
        let total = classified.len() as u64;
        let free = classified.iter().filter(|(_, f)| *f).count() as u64;
        counts.push(DimCounts {
            total,
            free,
            non_free: total - free,
        });
        cells.push(classified);
    }
    CellCensus { n, cells, counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(n: usize, centers: &[&[i64]]) -> DigitalObject {
        DigitalObject::from_centers(n, centers.iter().copied()).unwrap()
    }

    fn c(coords: &[i64]) -> Cell {
        Cell::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(DigitalObject::empty(0), Err(Error::ZeroDimension));
        assert!(matches!(
            DigitalObject::from_centers(2, [[0i64, 0], [0, 0]]),
            Err(Error::DuplicateVoxel(_))
        ));
        assert!(matches!(
            DigitalObject::from_centers(2, [vec![0i64, 0, 0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            DigitalObject::from_voxels(2, [c(&[1, 0])]),
            Err(Error::NotAVoxel(1))
        );
    }

    #[test]
    fn voxels_are_sorted() {
        let d = obj(2, &[&[3, 0], &[-1, 2], &[0, 0]]);
        assert_eq!(d.centers(), vec![vec![-1, 2], vec![0, 0], vec![3, 0]]);
    }

    #[test]
    fn cells_examples() {
        assert_eq!(cells(&obj(3, &[&[0, 0, 0]]), 1).unwrap().len(), 12);
        assert!(cells(&DigitalObject::empty(3).unwrap(), 1)
            .unwrap()
            .is_empty());
        assert_eq!(
            cells(&obj(3, &[&[0, 0, 0], &[1, 1, 0]]), 1).unwrap().len(),
            23
        );
        assert!(cells(&obj(3, &[&[0, 0, 0]]), 4).is_err());
    }

    #[test]
    fn freeness_examples() {
        let single = obj(3, &[&[0, 0, 0]]);
        for i in 0..3 {
            for e in cells(&single, i).unwrap() {
                assert!(is_free(&single, &e).unwrap());
            }
        }
        let domino = obj(3, &[&[0, 0, 0], &[1, 0, 0]]);
        assert!(!is_free(&domino, &c(&[1, 0, 0])).unwrap());
        let square = obj(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(!is_free(&square, &c(&[1, 1])).unwrap());
        assert!(is_free(&square, &c(&[-1, -1])).unwrap());
        assert!(matches!(
            is_free(&single, &c(&[3, 0, 0])),
            Err(Error::NotACellOfObject(_))
        ));
        assert!(is_free(&single, &c(&[0, 0, 0])).is_err());
    }

    #[test]
    fn border_examples() {
        assert_eq!(border(&obj(3, &[&[0, 0, 0]]), 2).unwrap().len(), 6);
        let domino = obj(3, &[&[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(border(&domino, 2).unwrap().len(), 10);
        let l_block = obj(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(border(&l_block, 2).unwrap().len(), 14);
        assert!(border(&domino, 3).is_err());
        // 0-cells are classifiable
        let square = obj(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(border(&square, 0).unwrap().len(), 8);
    }

    #[test]
    fn census_examples() {
        let single = census(&obj(3, &[&[0, 0, 0]]));
        let totals: Vec<u64> = (0..=3).map(|i| single.c(i)).collect();
        assert_eq!(totals, vec![8, 12, 6, 1]);
        let free: Vec<u64> = (0..=3).map(|i| single.c_star(i)).collect();
        assert_eq!(free, vec![8, 12, 6, 0]);
        assert_eq!(single.c_prime(2), 0);
        assert_eq!(single.c_prime(3), 1);

        let domino = census(&obj(3, &[&[0, 0, 0], &[1, 0, 0]]));
        assert_eq!(domino.c(2), 11);
        assert_eq!(domino.c_prime(2), 1);
        assert_eq!(domino.c_star(2), 10);

        let empty = census(&DigitalObject::empty(3).unwrap());
        for i in 0..=3 {
            assert_eq!(empty.counts(i), DimCounts::default());
        }
    }

    #[test]
    fn census_cells_agree_with_cells() {
        let d = obj(3, &[&[0, 0, 0], &[1, 1, 0], &[2, 1, 1]]);
        let cen = census(&d);
        for i in 0..=3 {
            let listed: Vec<Cell> = cen.cells(i).iter().map(|(c, _)| c.clone()).collect();
            assert_eq!(listed, cells(&d, i).unwrap());
        }
        for i in 0..3 {
            let free: Vec<Cell> = cen.free_cells(i).cloned().collect();
            assert_eq!(free, border(&d, i).unwrap());
        }
    }

    #[test]
    fn b_boundary_examples() {
        let diagonal = obj(3, &[&[0, 0, 0], &[1, 1, 0]]);
        assert_eq!(b_boundary(&diagonal, &c(&[1, 1, 0]), 2).unwrap(), 4);
        let single = obj(3, &[&[0, 0, 0]]);
        for e in cells(&single, 1).unwrap() {
            assert_eq!(b_boundary(&single, &e, 2).unwrap(), 2);
        }
        let square = obj(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(b_boundary(&square, &c(&[1, 1]), 1).unwrap(), 0);
        assert!(b_boundary(&single, &c(&[1, 1, 0]), 1).is_err());
        assert!(b_boundary(&single, &c(&[1, 1, 0]), 3).is_err());
    }

    #[test]
    fn translation_and_permutation() {
        let d = obj(3, &[&[0, 0, 0], &[1, 1, 0]]);
        let t = d.translated(&[5, -3, 2]).unwrap();
        assert_eq!(t.centers(), vec![vec![5, -3, 2], vec![6, -2, 2]]);
        let p = d.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.centers(), vec![vec![0, 0, 0], vec![0, 1, 1]]);
        assert!(d.permuted(&[0, 0, 1]).is_err());
    }
}
