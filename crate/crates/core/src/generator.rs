//! Named shapes and seeded random objects.
//!
//! Random objects use ChaCha8 (`rand_chacha` 0.3) seeded with
//! `seed_from_u64`. Cells of the extent box are visited in lexicographic
//! order and each draws one `u64`; the voxel is kept when the top 53 bits,
//! read as a fraction of `2^53`, fall below the density. The algorithm is
//! frozen: fixtures record [`RNG_NAME`] and depend on it bit-for-bit.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::object::DigitalObject;

/// Identifier of the frozen random-object algorithm, recorded in generated files.
pub const RNG_NAME: &str = "chacha8-rand_chacha-0.3/v1";

/// Largest box volume accepted by [`enumerate_all_objects`].
pub const ENUMERATION_VOLUME_CAP: u64 = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// The voxel at the origin.
    Single,
    /// Every voxel of `[0, e_0) × … × [0, e_{n-1})`.
    Box { extents: Vec<u32> },
    /// Two voxels meeting in an `(n-2)`-cell: the origin and `(1, 1, 0, …)`.
    DiagonalPair,
    /// An `(n-2)`-block minus the voxel `(1, 1, 0, …)`.
    LBlock,
    /// Two face-adjacent voxels: the origin and `(1, 0, …)`.
    FacetBlock,
    /// Voxels of the extent box whose coordinate sum is even.
    Checkerboard { extents: Vec<u32> },
    /// Each voxel of the extent box kept with probability `density`.
    Random {
        extents: Vec<u32>,
        density: f64,
        seed: u64,
    },
}

impl Shape {
    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Single => "single",
            Shape::Box { .. } => "box",
            Shape::DiagonalPair => "diagonal_pair",
            Shape::LBlock => "l_block",
            Shape::FacetBlock => "facet_block",
            Shape::Checkerboard { .. } => "checkerboard",
            Shape::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    pub n: usize,
    pub shape: Shape,
}

impl ShapeSpec {
    pub fn new(n: usize, shape: Shape) -> Self {
        Self { n, shape }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::ZeroDimension);
        }
        let check_extents = |extents: &[u32]| {
            if extents.len() != self.n {
                return Err(Error::InvalidShape(format!(
                    "{} extents given for n = {}",
                    extents.len(),
                    self.n
                )));
            }
            if extents.contains(&0) {
                return Err(Error::InvalidShape("extents must be positive".into()));
            }
            Ok(())
        };
        match &self.shape {
            Shape::Single | Shape::FacetBlock => Ok(()),
            Shape::DiagonalPair | Shape::LBlock if self.n < 2 => Err(Error::InvalidShape(format!(
                "{} needs n >= 2",
                self.shape.kind()
            ))),
            Shape::DiagonalPair | Shape::LBlock => Ok(()),
            Shape::Box { extents } | Shape::Checkerboard { extents } => check_extents(extents),
            Shape::Random {
                extents, density, ..
            } => {
                check_extents(extents)?;
                if !(0.0..=1.0).contains(density) {
                    return Err(Error::InvalidShape(format!(
                        "density {density} outside [0, 1]"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Points of the extent box in lexicographic order.
fn box_points(extents: &[u32]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let volume: u64 = extents.iter().map(|&e| u64::from(e)).product();
    (0..volume).map(move |mut k| {
        let mut p = vec![0i64; extents.len()];
        for (axis, &e) in extents.iter().enumerate().rev() {
            p[axis] = (k % u64::from(e)) as i64;
            k /= u64::from(e);
        }
        p
    })
}

fn unit(n: usize, axes: &[usize]) -> Vec<i64> {
    let mut p = vec![0; n];
    for &a in axes {
        p[a] = 1;
    }
    p
}

/// Builds the object described by `spec`. Pure in `spec`.
pub fn generate(spec: &ShapeSpec) -> Result<DigitalObject> {
    spec.validate()?;
    let n = spec.n;
    let centers: Vec<Vec<i64>> = match &spec.shape {
        Shape::Single => vec![unit(n, &[])],
        Shape::FacetBlock => vec![unit(n, &[]), unit(n, &[0])],
        Shape::DiagonalPair => vec![unit(n, &[]), unit(n, &[0, 1])],
        Shape::LBlock => vec![unit(n, &[]), unit(n, &[0]), unit(n, &[1])],
        Shape::Box { extents } => box_points(extents).collect(),
        Shape::Checkerboard { extents } => box_points(extents)
            .filter(|p| p.iter().sum::<i64>() % 2 == 0)
            .collect(),
        Shape::Random {
            extents,
            density,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            box_points(extents)
                .filter(|_| {
                    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                    u < *density
                })
                .collect()
        }
    };
    DigitalObject::from_centers(n, centers)
}

/// Every subset of the extent box, in increasing bitmask order.
///
/// Bit `k` of the mask selects the `k`-th box point in lexicographic order.
pub fn enumerate_all_objects(
    n: usize,
    extents: &[u32],
) -> Result<impl Iterator<Item = DigitalObject>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if extents.len() != n || extents.contains(&0) {
        return Err(Error::InvalidShape(format!(
            "extents {extents:?} invalid for n = {n}"
        )));
    }
    let volume = extents
        .iter()
        .try_fold(1u64, |acc, &e| acc.checked_mul(u64::from(e)))
        .unwrap_or(u64::MAX);
    if volume > ENUMERATION_VOLUME_CAP {
        return Err(Error::VolumeTooLarge {
            volume,
            cap: ENUMERATION_VOLUME_CAP,
        });
    }
    let points: Vec<Vec<i64>> = box_points(extents).collect();
    Ok((0u64..1 << volume).map(move |mask| {
        let chosen = points
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, p)| p);
        DigitalObject::from_centers(n, chosen).expect("box points are distinct")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_shapes() {
        let single = generate(&ShapeSpec::new(3, Shape::Single)).unwrap();
        assert_eq!(single.centers(), vec![vec![0, 0, 0]]);
        let pair = generate(&ShapeSpec::new(3, Shape::DiagonalPair)).unwrap();
        assert_eq!(pair.centers(), vec![vec![0, 0, 0], vec![1, 1, 0]]);
        let l = generate(&ShapeSpec::new(3, Shape::LBlock)).unwrap();
        assert_eq!(l.len(), 3);
        let facet = generate(&ShapeSpec::new(1, Shape::FacetBlock)).unwrap();
        assert_eq!(facet.centers(), vec![vec![0], vec![1]]);
        let b = generate(&ShapeSpec::new(
            2,
            Shape::Box {
                extents: vec![2, 2],
            },
        ))
        .unwrap();
        assert_eq!(b.len(), 4);
        let cb = generate(&ShapeSpec::new(
            2,
            Shape::Checkerboard {
                extents: vec![3, 3],
            },
        ))
        .unwrap();
        assert_eq!(cb.len(), 5);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&ShapeSpec::new(1, Shape::DiagonalPair)).is_err());
        assert!(generate(&ShapeSpec::new(0, Shape::Single)).is_err());
        assert!(generate(&ShapeSpec::new(2, Shape::Box { extents: vec![2] })).is_err());
        assert!(generate(&ShapeSpec::new(
            2,
            Shape::Box {
                extents: vec![2, 0]
            }
        ))
        .is_err());
        let bad_density = Shape::Random {
            extents: vec![2, 2],
            density: 1.5,
            seed: 1,
        };
        assert!(generate(&ShapeSpec::new(2, bad_density)).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let spec = ShapeSpec::new(
            2,
            Shape::Random {
                extents: vec![4, 4],
                density: 0.5,
                seed: 42,
            },
        );
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.centers(), golden_random_4x4_seed42());
    }

    // recorded from the first run of the frozen algorithm
    fn golden_random_4x4_seed42() -> Vec<Vec<i64>> {
        GOLDEN_4X4_SEED42.iter().map(|p| p.to_vec()).collect()
    }

    const GOLDEN_4X4_SEED42: &[[i64; 2]] = &[[0, 2], [1, 0], [1, 1], [1, 2], [2, 1], [3, 3]];

    #[test]
    fn random_density_extremes() {
        let full = Shape::Random {
            extents: vec![3, 3],
            density: 1.0,
            seed: 9,
        };
        assert_eq!(generate(&ShapeSpec::new(2, full)).unwrap().len(), 9);
        let none = Shape::Random {
            extents: vec![3, 3],
            density: 0.0,
            seed: 9,
        };
        assert!(generate(&ShapeSpec::new(2, none)).unwrap().is_empty());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all_objects(2, &[2, 2]).unwrap().count(), 16);
        assert_eq!(enumerate_all_objects(2, &[1, 1]).unwrap().count(), 2);
        assert_eq!(enumerate_all_objects(3, &[2, 2, 2]).unwrap().count(), 256);
        assert!(matches!(
            enumerate_all_objects(2, &[5, 5]),
            Err(Error::VolumeTooLarge { volume: 25, .. })
        ));
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let all: Vec<_> = enumerate_all_objects(2, &[2, 2]).unwrap().collect();
        for (a, x) in all.iter().enumerate() {
            for y in &all[a + 1..] {
                assert_ne!(x, y);
            }
        }
        assert!(all[0].is_empty());
        assert_eq!(all[15].len(), 4);
    }
}
