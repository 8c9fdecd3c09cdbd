//! Seed-deterministic instance generators. Every instance satisfies the
//! preconditions of its target pipeline by construction: color classes and
//! quantitative sets get a scaled cross-polytope planted around the center
//! so the unit ball is certifiably inside, and half-space families always
//! include a bounding box around an interior origin.

use crate::core::{HalfSpace, Point};
use crate::error::{Error, Result};
use crate::oracle::Instance;
use crate::rng::SplitMix64;
use crate::scalar::Scalar;
use crate::tverberg::{
    colorful_instance_size, quantitative_instance_size, QuantSet, TverbergVariant,
};

/// Scaled cross-polytope `{±s e_j}` around `center`; `s` in quarter steps
/// chosen large enough that the hull contains `B_1(center)` for this
/// dimension (`s >= sqrt(d)`).
fn cross_polytope_points(dim: usize, center: &Point, rng: &mut SplitMix64) -> Vec<Point> {
    let base_quarters: i64 = match dim {
        1 | 2 => 6, // 3/2 >= sqrt(2)
        _ => 7,     // 7/4 >= sqrt(3)
    };
    let s = Scalar::ratio(base_quarters + rng.int_in(0, 6), 4);
    let mut pts = Vec::with_capacity(2 * dim);
    for j in 0..dim {
        for sign in [1i64, -1] {
            let mut p = Point::origin(dim);
            p.0[j] = &s * &Scalar::from_int(sign);
            pts.push(center.add(&p));
        }
    }
    pts
}

fn noise_point(dim: usize, center: &Point, spread: i64, rng: &mut SplitMix64) -> Point {
    let mut p = Point::origin(dim);
    for c in p.0.iter_mut() {
        *c = Scalar::from_int(rng.int_in(-spread, spread));
    }
    center.add(&p)
}

/// Color classes for the Steinitz pipelines, each certified to contain
/// `B_1(0)` by the planted cross-polytope, padded with a little noise.
pub fn colored_ball_classes(dim: usize, classes: usize, seed: u64) -> Result<Instance> {
    if dim == 0 || classes == 0 {
        return Err(Error::PreconditionFailed(
            "dimension and class count must be positive".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let origin = Point::origin(dim);
    let classes = (0..classes)
        .map(|_| {
            let mut class = cross_polytope_points(dim, &origin, &mut rng);
            for _ in 0..rng.int_in(0, 2) {
                class.push(noise_point(dim, &origin, 4, &mut rng));
            }
            class
        })
        .collect();
    Ok(Instance::Colored {
        family: crate::core::ColoredFamily::new(dim, classes)?,
        target: None,
    })
}

/// A nonempty bounded half-space family: a box with seeded side offsets
/// around the origin, then random extra half-spaces that keep the origin
/// strictly inside.
pub fn halfspace_family(dim: usize, members: usize, seed: u64) -> Result<Instance> {
    if dim == 0 {
        return Err(Error::PreconditionFailed("dimension must be positive".into()));
    }
    if members < 2 * dim {
        return Err(Error::PreconditionFailed(format!(
            "need at least {} members for a bounded intersection",
            2 * dim
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut halfspaces = Vec::with_capacity(members);
    for j in 0..dim {
        for sign in [1i64, -1] {
            let mut a = vec![Scalar::zero(); dim];
            a[j] = Scalar::from_int(sign);
            halfspaces.push(HalfSpace::new(a, Scalar::from_int(rng.int_in(3, 8)))?);
        }
    }
    while halfspaces.len() < members {
        let a: Vec<Scalar> =
            (0..dim).map(|_| Scalar::from_int(rng.int_in(-4, 4))).collect();
        if a.iter().all(|c| c.is_zero()) {
            continue;
        }
        halfspaces.push(HalfSpace::new(a, Scalar::from_int(rng.int_in(1, 8)))?);
    }
    Ok(Instance::Halfspaces { dim, halfspaces })
}

/// Distinct integer centers with no repeats; in the plane also no three
/// collinear, so downstream partitions see general position.
pub fn general_position_centers(
    dim: usize,
    count: usize,
    spread: i64,
    rng: &mut SplitMix64,
) -> Vec<Point> {
    let mut centers: Vec<Point> = Vec::with_capacity(count);
    while centers.len() < count {
        let c = noise_point(dim, &Point::origin(dim), spread, rng);
        if centers.contains(&c) {
            continue;
        }
        if dim == 2 {
            let collinear = centers.iter().enumerate().any(|(i, p)| {
                centers[..i].iter().any(|q| {
                    let u = p.sub(q);
                    let v = c.sub(q);
                    (&(&u.0[0] * &v.0[1]) - &(&u.0[1] * &v.0[0])).is_zero()
                })
            });
            if collinear {
                continue;
            }
        }
        centers.push(c);
    }
    centers
}

fn quant_set(dim: usize, center: Point, rng: &mut SplitMix64) -> QuantSet {
    let mut points = cross_polytope_points(dim, &center, rng);
    for _ in 0..rng.int_in(0, 2) {
        points.push(noise_point(dim, &center, 5, rng));
    }
    QuantSet { center, points }
}

/// Quantitative Tverberg instance of exactly the size the pipeline demands,
/// with general-position centers and a unit ball planted in every set.
pub fn tverberg_quant(
    dim: usize,
    parts: usize,
    variant: &TverbergVariant,
    seed: u64,
) -> Result<Instance> {
    if dim == 0 || parts == 0 {
        return Err(Error::PreconditionFailed(
            "dimension and part count must be positive".into(),
        ));
    }
    let n = quantitative_instance_size(dim, parts, variant)?;
    let mut rng = SplitMix64::new(seed);
    let centers = general_position_centers(dim, n, 50, &mut rng);
    let sets = centers.into_iter().map(|c| quant_set(dim, c, &mut rng)).collect();
    Ok(Instance::QuantSets { dim, parts, sets })
}

/// Colorful quantitative Tverberg instance: `d + 1` classes of the exact
/// per-class size, all centers jointly in general position.
pub fn tverberg_colorful(
    dim: usize,
    parts: usize,
    variant: &TverbergVariant,
    seed: u64,
) -> Result<Instance> {
    if dim == 0 || parts == 0 {
        return Err(Error::PreconditionFailed(
            "dimension and part count must be positive".into(),
        ));
    }
    let n = colorful_instance_size(dim, parts, variant)?;
    let mut rng = SplitMix64::new(seed);
    let mut centers = general_position_centers(dim, n * (dim + 1), 50, &mut rng);
    let mut classes = Vec::with_capacity(dim + 1);
    for _ in 0..=dim {
        let class: Vec<QuantSet> =
            centers.drain(..n).map(|c| quant_set(dim, c, &mut rng)).collect();
        classes.push(class);
    }
    Ok(Instance::ColorfulQuantSets { dim, parts, classes })
}
