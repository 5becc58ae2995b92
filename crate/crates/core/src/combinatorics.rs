//! Closed-form cell counts for the cubical grid and the incidence-structure
//! double-counting identity.
//!
//! All functions are exact over `u64`; overflow and inexact division are
//! reported as errors rather than wrapped or truncated. Dimensions are capped
//! at [`MAX_DIMENSION`].

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the counting functions.
pub const MAX_DIMENSION: usize = 32;

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIMENSION {
        Err(Error::DimensionTooLarge {
            n,
            max: MAX_DIMENSION,
        })
    } else {
        Ok(())
    }
}

fn check_pair(i: usize, j: usize) -> Result<()> {
    if i >= j {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: j.saturating_sub(1),
        });
    }
    Ok(())
}

fn check_triple(i: usize, j: usize, n: usize) -> Result<()> {
    check_dim(n)?;
    check_pair(i, j)?;
    if j > n {
        return Err(Error::IndexOutOfRange {
            index: j,
            min: i + 1,
            max: n,
        });
    }
    Ok(())
}

/// `C(n, k)` by the multiplicative scheme, `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for step in 1..=k {
        // acc * (n - k + step) = C(n - k + step, step) * step, so the division is exact
        let next = u128::from(acc) * u128::from(n - k + step) / u128::from(step);
        acc = u64::try_from(next).map_err(|_| Error::Overflow("binomial"))?;
    }
    Ok(acc)
}

fn pow2(e: usize) -> Result<u64> {
    if e < 64 {
        Ok(1 << e)
    } else {
        Err(Error::Overflow("power of two"))
    }
}

fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn exact_div(num: u64, den: u64, what: &'static str) -> Result<u64> {
    if den == 0 || num % den != 0 {
        return Err(Error::InexactDivision(what));
    }
    Ok(num / den)
}

/// Number of `i`-faces of a `j`-cube, `i <= j`.
fn face_count(i: usize, j: usize) -> Result<u64> {
    mul(pow2(j - i)?, binomial(j as u64, i as u64)?, "face count")
}

/// `c_{i→j} = 2^(j-i) * C(j, i)`: the `i`-cells bounding one `j`-cell.
pub fn c_bounding(i: usize, j: usize) -> Result<u64> {
    check_dim(j)?;
    check_pair(i, j)?;
    face_count(i, j)
}

/// `c_{i←j} = 2^(j-i) * C(n-i, j-i)`: the `j`-cells of `C_n` bounded by one `i`-cell.
pub fn c_bounded(i: usize, j: usize, n: usize) -> Result<u64> {
    check_triple(i, j, n)?;
    mul(
        pow2(j - i)?,
        binomial((n - i) as u64, (j - i) as u64)?,
        "c_bounded",
    )
}

/// `C(n-i, j-i)`: the `j`-cells of a single voxel that one of its `i`-cells bounds.
pub fn b_in_voxel(i: usize, j: usize, n: usize) -> Result<u64> {
    check_triple(i, j, n)?;
    binomial((n - i) as u64, (j - i) as u64)
}

/// `i`-cells of the `(n-1)`-block (two face-adjacent voxels): `(3n+i)/(2n) * c_{i→n}`.
pub fn block_cell_count(i: usize, n: usize) -> Result<u64> {
    check_dim(n)?;
    if n == 0 || i > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: n,
        });
    }
    let num = mul((3 * n + i) as u64, face_count(i, n)?, "block_cell_count")?;
    exact_div(num, 2 * n as u64, "block_cell_count")
}

/// `i`-cells of an L-block (three voxels around an `(n-2)`-cell): `(2n+i)/n * c_{i→n}`.
pub fn lblock_cell_count(i: usize, n: usize) -> Result<u64> {
    check_dim(n)?;
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            index: n,
            min: 2,
            max: MAX_DIMENSION,
        });
    }
    if i > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: n,
        });
    }
    let num = mul((2 * n + i) as u64, face_count(i, n)?, "lblock_cell_count")?;
    exact_div(num, n as u64, "lblock_cell_count")
}

/// Free `(n-1)`-cells of the `(n-1)`-block: `2(2n-1)`.
pub fn block_free_facets(n: usize) -> Result<u64> {
    check_dim(n)?;
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(2 * (2 * n as u64 - 1))
}

/// Free `(n-1)`-cells of an L-block: `2(3n-2)`.
pub fn lblock_free_facets(n: usize) -> Result<u64> {
    check_dim(n)?;
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            index: n,
            min: 2,
            max: MAX_DIMENSION,
        });
    }
    Ok(2 * (3 * n as u64 - 2))
}

/// Point and block degrees of the incidence structure `(points, blocks, rel)`.
pub fn incidence_degrees<P, B>(
    points: &[P],
    blocks: &[B],
    rel: impl Fn(&P, &B) -> bool,
) -> (Vec<u64>, Vec<u64>) {
    let mut point_degrees = vec![0u64; points.len()];
    let mut block_degrees = vec![0u64; blocks.len()];
    for (pi, p) in points.iter().enumerate() {
        for (bi, b) in blocks.iter().enumerate() {
            if rel(p, b) {
                point_degrees[pi] += 1;
                block_degrees[bi] += 1;
            }
        }
    }
    (point_degrees, block_degrees)
}

/// `Σ r_p = Σ k_B`.
pub fn incidence_sum_check(point_degrees: &[u64], block_degrees: &[u64]) -> bool {
    let sum = |d: &[u64]| d.iter().map(|&x| u128::from(x)).sum::<u128>();
    sum(point_degrees) == sum(block_degrees)
}
