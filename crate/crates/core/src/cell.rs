//! Cells of the cubical grid `C_n` in doubled coordinates.
//!
//! A cell is stored as twice its center. Along an axis where the doubled
//! coordinate is even the cell extends over `[c/2 - 1/2, c/2 + 1/2]`; where
//! it is odd the cell is flat at `c/2`. The dimension of a cell is therefore
//! the number of even components, and a voxel (an `n`-cell) has every
//! component even.
//!
//! ```text
//!  n = 2, doubled coordinates
//!
//!   (-1, 1) ---- (0, 1) ---- (1, 1)
//!      |                        |
//!   (-1, 0)      (0, 0)      (1, 0)
//!      |                        |
//!   (-1,-1) ---- (0,-1) ---- (1,-1)
//! ```
//!
//! The encoding is canonical: two `Cell` values compare equal exactly when
//! they denote the same point set, so cells can be hashed and ordered
//! component-wise. Ordering is lexicographic on the coordinates.
//!
//! [`DualCell`] reuses the same vector on the half-shifted lattice, where
//! the roles of odd and even components swap.

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible absolute value of a doubled coordinate.
pub const COORD_LIMIT: i64 = 1 << 60;

/// Largest admissible absolute value of a voxel center given in `Z^n`.
///
/// Keeps every face and coface of every cell of an object inside
/// [`COORD_LIMIT`].
pub const CENTER_LIMIT: i64 = 1 << 58;

#[inline]
fn is_even(c: i64) -> bool {
    c & 1 == 0
}

/// An `i`-cell of `C_n`, encoded by its doubled center.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    coords: Box<[i64]>,
}

impl Cell {
    /// Builds a cell from doubled coordinates.
    pub fn new(coords: impl Into<Vec<i64>>) -> Result<Self> {
        let coords = coords.into();
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(&value) = coords
            .iter()
            .find(|c| c.unsigned_abs() > COORD_LIMIT as u64)
        {
            return Err(Error::CoordinateOutOfRange {
                value,
                limit: COORD_LIMIT,
            });
        }
        Ok(Self::from_raw(coords))
    }

    /// Builds the voxel centered at the integer point `center`.
    pub fn voxel(center: &[i64]) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(&value) = center
            .iter()
            .find(|c| c.unsigned_abs() > CENTER_LIMIT as u64)
        {
            return Err(Error::CoordinateOutOfRange {
                value,
                limit: CENTER_LIMIT,
            });
        }
        Ok(Self::from_raw(center.iter().map(|c| 2 * c).collect()))
    }

    pub(crate) fn from_raw(coords: Vec<i64>) -> Self {
        debug_assert!(!coords.is_empty());
        Self {
            coords: coords.into_boxed_slice(),
        }
    }

    /// Ambient dimension `n`.
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Number of axes along which the cell extends.
    #[inline]
    pub fn dimension(&self) -> usize {
        self.coords.iter().filter(|&&c| is_even(c)).count()
    }

    #[inline]
    pub fn is_voxel(&self) -> bool {
        self.coords.iter().all(|&c| is_even(c))
    }

    #[inline]
    pub fn extends_along(&self, axis: usize) -> bool {
        is_even(self.coords[axis])
    }

    /// Integer center of a voxel, `None` for lower-dimensional cells.
    pub fn voxel_center(&self) -> Option<Vec<i64>> {
        self.is_voxel()
            .then(|| self.coords.iter().map(|c| c / 2).collect())
    }

    /// One `(x, θ)` product representative of this cell.
    ///
    /// `x` is an integer point and `θ ∈ {-1, 0, 1}^n` a direction with
    /// `cnt = x + θ/2`. The representative is not unique; flat axes are
    /// reported with `θ_j = +1` and `x_j` rounded down. Display only.
    pub fn representative(&self) -> (Vec<i64>, Vec<i8>) {
        self.coords
            .iter()
            .map(|&c| {
                if is_even(c) {
                    (c / 2, 0)
                } else {
                    (c.div_euclid(2), 1)
                }
            })
            .unzip()
    }

    /// Closed interval covered along `axis`, in doubled units.
    pub fn interval(&self, axis: usize) -> (i64, i64) {
        let c = self.coords[axis];
        if is_even(c) {
            (c - 1, c + 1)
        } else {
            (c, c)
        }
    }

    fn check_same_n(&self, other: &Cell) -> Result<()> {
        same_n(self.ambient_dim(), other.ambient_dim())
    }

    /// Point-set containment `other ⊆ self`, assuming equal `n`.
    fn contains_unchecked(&self, other: &Cell) -> bool {
        self.coords.iter().zip(other.coords.iter()).all(|(&f, &e)| {
            if is_even(f) {
                (e - f).abs() <= 1
            } else {
                e == f
            }
        })
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cell{}", self)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, coords: &[i64]) -> fmt::Result {
    f.write_str("(")?;
    for (k, c) in coords.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

pub(crate) fn same_n(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `a ⊆ b` or `b ⊆ a` as point sets.
pub fn incident(a: &Cell, b: &Cell) -> Result<bool> {
    a.check_same_n(b)?;
    Ok(a.contains_unchecked(b) || b.contains_unchecked(a))
}

/// The bounding relation `e < f`: incident and of strictly smaller dimension.
pub fn bounds(e: &Cell, f: &Cell) -> Result<bool> {
    e.check_same_n(f)?;
    Ok(e.dimension() < f.dimension() && f.contains_unchecked(e))
}

/// Collects every cell obtained from `base` by offsetting exactly `count` of
/// the listed axes by `±step`.
fn offset_choices(base: &[i64], axes: &[usize], count: usize, step: i64) -> Vec<Cell> {
    fn rec(axes: &[usize], remaining: usize, step: i64, cur: &mut Vec<i64>, out: &mut Vec<Cell>) {
        if remaining == 0 {
            out.push(Cell::from_raw(cur.clone()));
            return;
        }
        if axes.len() < remaining {
            return;
        }
        let (&axis, rest) = axes.split_first().expect("non-empty");
        rec(rest, remaining, step, cur, out);
        for delta in [-step, step] {
            cur[axis] += delta;
            rec(rest, remaining - 1, step, cur, out);
            cur[axis] -= delta;
        }
    }

    let mut out = Vec::new();
    let mut cur = base.to_vec();
    rec(axes, count, step, &mut cur, &mut out);
    out.sort_unstable();
    out
}

/// All `i`-cells contained in `f` (the `i`-faces of `f`; `{f}` when `i = dim f`).
///
/// Sorted lexicographically; `2^(j-i) * C(j, i)` cells for `j = dim f`.
pub fn faces(f: &Cell, i: usize) -> Result<Vec<Cell>> {
    let j = f.dimension();
    if i > j {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: j,
        });
    }
    let axes: Vec<usize> = (0..f.ambient_dim())
        .filter(|&a| f.extends_along(a))
        .collect();
    Ok(offset_choices(f.coords(), &axes, j - i, 1))
}

/// All `j`-cells of `C_n` containing `e` (the `j`-flower of `e`; `{e}` when `j = dim e`).
///
/// Sorted lexicographically; `2^(j-i) * C(n-i, j-i)` cells for `i = dim e`.
pub fn cofaces(e: &Cell, j: usize) -> Result<Vec<Cell>> {
    let i = e.dimension();
    let n = e.ambient_dim();
    if j < i || j > n {
        return Err(Error::IndexOutOfRange {
            index: j,
            min: i,
            max: n,
        });
    }
    let axes: Vec<usize> = (0..n).filter(|&a| !e.extends_along(a)).collect();
    Ok(offset_choices(e.coords(), &axes, j - i, 1))
}

/// The voxels of `C_n` containing `e`; `2^(n - dim e)` of them.
pub fn block(e: &Cell) -> Vec<Cell> {
    cofaces(e, e.ambient_dim()).expect("n is always a valid coface dimension")
}

/// Every face of `f` of every dimension, `f` included. Sorted.
pub fn closure(f: &Cell) -> Vec<Cell> {
    let axes: Vec<usize> = (0..f.ambient_dim())
        .filter(|&a| f.extends_along(a))
        .collect();
    let mut out = Vec::new();
    let mut cur = f.coords().to_vec();
    fn rec(axes: &[usize], cur: &mut Vec<i64>, out: &mut Vec<Cell>) {
        match axes.split_first() {
            None => out.push(Cell::from_raw(cur.clone())),
            Some((&axis, rest)) => {
                for delta in [-1, 0, 1] {
                    cur[axis] += delta;
                    rec(rest, cur, out);
                    cur[axis] -= delta;
                }
            }
        }
    }
    rec(&axes, &mut cur, &mut out);
    out.sort_unstable();
    out
}

/// Point-set intersection of two cells, which is either empty or a single cell.
pub fn meet(a: &Cell, b: &Cell) -> Result<Option<Cell>> {
    a.check_same_n(b)?;
    let mut coords = Vec::with_capacity(a.ambient_dim());
    for axis in 0..a.ambient_dim() {
        let (alo, ahi) = a.interval(axis);
        let (blo, bhi) = b.interval(axis);
        let (lo, hi) = (alo.max(blo), ahi.min(bhi));
        if lo > hi {
            return Ok(None);
        }
        coords.push(if lo == hi { lo } else { lo + 1 });
    }
    Ok(Some(Cell::from_raw(coords)))
}

/// How two distinct voxels touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adjacency {
    /// Dimension of `v1 ∩ v2`, or `None` when the voxels are disjoint.
    pub shared: Option<usize>,
    /// The intersection is a single cell of dimension `shared`.
    pub strict: bool,
}

impl Adjacency {
    /// `i`-adjacent: the voxels share at least an `i`-cell.
    pub fn is_adjacent(&self, i: usize) -> bool {
        self.shared.is_some_and(|d| d >= i)
    }

    /// Strictly `i`-adjacent: `i`-adjacent and not `(i+1)`-adjacent.
    pub fn is_strictly(&self, i: usize) -> bool {
        self.strict && self.shared == Some(i)
    }
}

fn require_voxel(v: &Cell) -> Result<()> {
    if v.is_voxel() {
        Ok(())
    } else {
        Err(Error::NotAVoxel(v.dimension()))
    }
}

/// Adjacency of two distinct voxels.
pub fn adjacency(v1: &Cell, v2: &Cell) -> Result<Adjacency> {
    v1.check_same_n(v2)?;
    require_voxel(v1)?;
    require_voxel(v2)?;
    if v1 == v2 {
        return Err(Error::EqualVoxels);
    }
    let shared = meet(v1, v2)?.map(|c| c.dimension());
    Ok(Adjacency {
        shared,
        strict: shared.is_some(),
    })
}

/// `A_i(v)`: every voxel of `C_n` that is `i`-adjacent to `v`. Sorted.
pub fn neighborhood(v: &Cell, i: usize) -> Result<Vec<Cell>> {
    require_voxel(v)?;
    let n = v.ambient_dim();
    if i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: n - 1,
        });
    }
    let axes: Vec<usize> = (0..n).collect();
    let mut out: Vec<Cell> = (1..=n - i)
        .flat_map(|k| offset_choices(v.coords(), &axes, k, 2))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `A_i(v) ∩ voxels`, scanning the given voxel collection.
pub fn adjacent_within<'a>(
    v: &Cell,
    i: usize,
    voxels: impl IntoIterator<Item = &'a Cell>,
) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for u in voxels {
        if u == v {
            continue;
        }
        if adjacency(v, u)?.is_adjacent(i) {
            out.push(u.clone());
        }
    }
    Ok(out)
}

/// A cell of the half-shifted dual lattice.
///
/// Same doubled vector as its primal cell; odd components extend and even
/// components are flat.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualCell {
    coords: Box<[i64]>,
}

impl DualCell {
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.coords.iter().filter(|&&c| !is_even(c)).count()
    }

    /// The primal cell this dual was taken from.
    pub fn primal(&self) -> Cell {
        Cell::from_raw(self.coords.to_vec())
    }

    fn contains_unchecked(&self, other: &DualCell) -> bool {
        self.coords.iter().zip(other.coords.iter()).all(|(&f, &e)| {
            if is_even(f) {
                e == f
            } else {
                (e - f).abs() <= 1
            }
        })
    }

    /// Bounding relation on the dual lattice: `self ⊆ other` with smaller dimension.
    pub fn bounds(&self, other: &DualCell) -> Result<bool> {
        same_n(self.ambient_dim(), other.ambient_dim())?;
        Ok(self.dimension() < other.dimension() && other.contains_unchecked(self))
    }
}

impl fmt::Debug for DualCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("DualCell")?;
        write_tuple(f, &self.coords)
    }
}

impl fmt::Display for DualCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

/// The dual map: same center, complementary extension axes.
pub fn dual(e: &Cell) -> DualCell {
    DualCell {
        coords: e.coords.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(coords: &[i64]) -> Cell {
        Cell::new(coords.to_vec()).unwrap()
    }

    /// Explicit interval containment in doubled units, independent of parity rules.
    fn contains_by_intervals(big: &Cell, small: &Cell) -> bool {
        (0..big.ambient_dim()).all(|a| {
            let (blo, bhi) = big.interval(a);
            let (slo, shi) = small.interval(a);
            blo <= slo && shi <= bhi
        })
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(c(&[0, 0, 0]).dimension(), 3);
        assert_eq!(c(&[1, 1, 1]).dimension(), 0);
        assert_eq!(c(&[1, 0]).dimension(), 1);
        assert_eq!(c(&[-1, -2, 3]).dimension(), 1);
    }

    #[test]
    fn construction_limits() {
        assert_eq!(Cell::new(Vec::new()), Err(Error::ZeroDimension));
        assert!(Cell::new(vec![COORD_LIMIT]).is_ok());
        assert!(matches!(
            Cell::new(vec![COORD_LIMIT + 1]),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            Cell::new(vec![i64::MIN]),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert!(Cell::voxel(&[CENTER_LIMIT + 1]).is_err());
        assert_eq!(Cell::voxel(&[1, -2]).unwrap().coords(), &[2, -4]);
    }

    #[test]
    fn incidence_examples() {
        assert!(incident(&c(&[1, 1, 0]), &c(&[0, 0, 0])).unwrap());
        // the edge lies on the face x = 1/2 shared by voxels (0,0,0) and (2,0,0)
        assert!(incident(&c(&[1, 1, 0]), &c(&[2, 0, 0])).unwrap());
        assert!(!incident(&c(&[1, 1, 0]), &c(&[4, 0, 0])).unwrap());
        assert!(!incident(&c(&[1, 1, 0]), &c(&[2, 2, 2])).unwrap());
        let x = c(&[3, -2, 5]);
        assert!(incident(&x, &x).unwrap());
        assert_eq!(
            incident(&c(&[0, 0]), &c(&[0, 0, 0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn incidence_matches_interval_oracle() {
        // every cell pair in the closure of a 2x2x2 voxel neighborhood
        let mut cells: Vec<Cell> = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cells.extend(closure(&Cell::voxel(&[x, y, z]).unwrap()));
                }
            }
        }
        cells.sort();
        cells.dedup();
        assert_eq!(cells.len(), 125);
        for a in &cells {
            for b in &cells {
                let oracle = contains_by_intervals(a, b) || contains_by_intervals(b, a);
                assert_eq!(incident(a, b).unwrap(), oracle, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn bounding_examples() {
        let voxel = c(&[0, 0, 0]);
        assert!(bounds(&c(&[1, 1, 1]), &voxel).unwrap());
        assert!(!bounds(&voxel, &voxel).unwrap());
        assert!(!bounds(&voxel, &c(&[2, 0, 0])).unwrap());
        // (1,1,0) is one of the four edges of the face (2,1,0)
        assert!(bounds(&c(&[1, 1, 0]), &c(&[2, 1, 0])).unwrap());
        assert!(!bounds(&c(&[1, 1, 0]), &c(&[2, 3, 0])).unwrap());
        assert!(!bounds(&c(&[2, 1, 0]), &c(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn faces_of_a_cube() {
        let voxel = c(&[0, 0, 0]);
        let vertices = faces(&voxel, 0).unwrap();
        assert_eq!(vertices.len(), 8);
        assert!(vertices
            .iter()
            .all(|v| v.coords().iter().all(|x| x.abs() == 1)));
        assert_eq!(faces(&voxel, 1).unwrap().len(), 12);
        assert_eq!(faces(&voxel, 3).unwrap(), vec![voxel.clone()]);
        assert!(matches!(
            faces(&c(&[1, 0, 0]), 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn cofaces_examples() {
        assert_eq!(cofaces(&c(&[1, 1, 0]), 2).unwrap().len(), 4);
        assert_eq!(cofaces(&c(&[1, 1]), 2).unwrap().len(), 4);
        let e = c(&[1, 0, 1]);
        assert_eq!(cofaces(&e, 1).unwrap(), vec![e.clone()]);
        assert!(cofaces(&e, 0).is_err());
        assert!(cofaces(&e, 4).is_err());
    }

    #[test]
    fn block_sizes() {
        assert_eq!(block(&c(&[1, 1, 0])).len(), 4);
        assert_eq!(block(&c(&[1, 0, 0])).len(), 2);
        assert_eq!(block(&c(&[0, 0, 0])), vec![c(&[0, 0, 0])]);
        assert_eq!(block(&c(&[1, 1, 1])).len(), 8);
    }

    #[test]
    fn closure_counts() {
        assert_eq!(closure(&c(&[0, 0, 0])).len(), 27);
        assert_eq!(closure(&c(&[0, 1])).len(), 3);
    }

    #[test]
    fn duality_examples() {
        assert_eq!(dual(&c(&[1, 1])).dimension(), 2);
        assert_eq!(dual(&c(&[0, 0, 0])).dimension(), 0);
        assert_eq!(dual(&c(&[1, 0, 1])).dimension(), 2);
        let e = c(&[1, 0, 1]);
        assert_eq!(dual(&e).primal(), e);
    }

    #[test]
    fn adjacency_examples() {
        let o = c(&[0, 0, 0]);
        let face = adjacency(&o, &c(&[2, 0, 0])).unwrap();
        assert_eq!(face.shared, Some(2));
        assert!(face.is_strictly(2) && face.is_adjacent(1) && face.is_adjacent(0));
        let edge = adjacency(&o, &c(&[2, 2, 0])).unwrap();
        assert!(edge.is_strictly(1) && !edge.is_adjacent(2));
        let far = adjacency(&o, &c(&[4, 0, 0])).unwrap();
        assert_eq!(far.shared, None);
        assert!(!far.is_adjacent(0));
        assert_eq!(adjacency(&o, &o), Err(Error::EqualVoxels));
        assert_eq!(adjacency(&o, &c(&[1, 0, 0])), Err(Error::NotAVoxel(2)));
    }

    #[test]
    fn meet_of_diagonal_voxels_is_their_shared_edge() {
        let m = meet(&c(&[0, 0, 0]), &c(&[2, 2, 0])).unwrap().unwrap();
        assert_eq!(m, c(&[1, 1, 0]));
    }

    #[test]
    fn neighborhoods_on_the_lattice() {
        let o = c(&[0, 0, 0]);
        assert_eq!(neighborhood(&o, 2).unwrap().len(), 6);
        assert_eq!(neighborhood(&o, 1).unwrap().len(), 18);
        assert_eq!(neighborhood(&o, 0).unwrap().len(), 26);
        assert!(neighborhood(&o, 3).is_err());
        for u in neighborhood(&o, 1).unwrap() {
            assert!(adjacency(&o, &u).unwrap().is_adjacent(1));
        }
    }

    #[test]
    fn representative_recovers_center() {
        let e = c(&[3, -2, -1]);
        let (x, theta) = e.representative();
        for a in 0..3 {
            assert_eq!(2 * x[a] + i64::from(theta[a]), e.coords()[a]);
        }
        assert_eq!(theta.iter().filter(|t| **t == 0).count(), e.dimension());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = vec![c(&[1, 0]), c(&[0, 1]), c(&[-1, 5])];
        v.sort();
        assert_eq!(v, vec![c(&[-1, 5]), c(&[0, 1]), c(&[1, 0])]);
    }
}
