//! Hull enumeration by exhaustive subset search.
//!
//! Everything here targets desk-scale inputs (dimension at most ~3, tens of
//! points), where enumerating d-subsets is cheap and keeps the code easy to
//! audit. Facets come from supporting hyperplanes through d points, vertices
//! of an H-polytope from d-subsets of active constraints, and volumes from a
//! fan triangulation anchored at the lexicographically smallest vertex.

use itertools::Itertools;

use crate::core::{HPolytope, HalfSpace, Point};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::linalg::{det, kernel_vector, rank, solve_consistent};
use super::lp;

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<Scalar>> = rest.iter().map(|p| p.sub(p0).0).collect();
            rank(&diffs)
        }
    }
}

/// Indices of the extreme points of `points`: those not in the convex hull
/// of the remaining ones. Robust to degenerate (lower-dimensional) inputs.
pub fn extreme_points(points: &[Point]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let others: Vec<Point> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            !lp::in_convex_hull(&others, &points[i])
        })
        .collect()
}

/// Facet half-spaces of `conv(points)` for a full-dimensional point set,
/// deduplicated via canonical form and sorted deterministically.
pub fn facets(dim: usize, points: &[Point]) -> Result<Vec<HalfSpace>> {
    if affine_rank(points) != dim {
        return Err(Error::PreconditionFailed(
            "facet enumeration needs a full-dimensional point set".into(),
        ));
    }
    let mut out: Vec<HalfSpace> = Vec::new();
    for subset in (0..points.len()).combinations(dim) {
        let p0 = &points[subset[0]];
        let diffs: Vec<Vec<Scalar>> = subset[1..]
            .iter()
            .map(|&i| points[i].sub(p0).0)
            .collect();
        if rank(&diffs) + 1 != dim {
            continue; // affinely dependent: hyperplane not determined
        }
        let Some(normal) = kernel_vector(&pad_rows(diffs, dim)) else {
            continue;
        };
        let n = Point(normal);
        let b = n.dot(p0);
        let mut below = false;
        let mut above = false;
        for p in points {
            let v = n.dot(p);
            if v < b {
                below = true;
            } else if v > b {
                above = true;
            }
        }
        let h = match (below, above) {
            (_, false) => HalfSpace { a: n.0, b },
            (false, true) => HalfSpace { a: n.0.iter().map(|c| -c).collect(), b: -&b },
            (true, true) => continue, // not supporting
        };
        let h = h.canonical();
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out.sort_by(|x, y| x.a.cmp(&y.a).then_with(|| x.b.cmp(&y.b)));
    Ok(out)
}

fn pad_rows(mut rows: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        rows.push(vec![Scalar::zero(); cols]);
    }
    rows
}

/// Vertices of an H-polytope: feasible intersections of d linearly
/// independent constraints, deduplicated and sorted.
pub fn vertices_of(poly: &HPolytope) -> Result<Vec<Point>> {
    let d = poly.dim;
    let mut out: Vec<Point> = Vec::new();
    for subset in (0..poly.halfspaces.len()).combinations(d) {
        let mat: Vec<Vec<Scalar>> = subset
            .iter()
            .map(|&i| poly.halfspaces[i].a.clone())
            .collect();
        if det(&mat).is_zero() {
            continue;
        }
        let rhs: Vec<Scalar> = subset.iter().map(|&i| poly.halfspaces[i].b.clone()).collect();
        let x = solve_consistent(&mat, &rhs)
            .ok_or_else(|| Error::Internal("nonsingular system failed to solve".into()))?;
        let x = Point(x);
        if poly.contains(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// Triangulation of `conv(points)` into simplices given as index lists of
/// `dim + 1` points each. Requires a full-dimensional point set.
pub fn triangulate(dim: usize, points: &[Point]) -> Result<Vec<Vec<usize>>> {
    if dim == 1 {
        let lo = (0..points.len()).min_by_key(|&i| points[i].clone()).unwrap();
        let hi = (0..points.len()).max_by_key(|&i| points[i].clone()).unwrap();
        return Ok(vec![vec![lo, hi]]);
    }
    let hull_facets = facets(dim, points)?;
    let apex = (0..points.len()).min_by_key(|&i| points[i].clone()).unwrap();
    let mut simplices = Vec::new();
    for f in &hull_facets {
        if f.eval(&points[apex]).is_zero() {
            continue; // fan from the apex skips incident facets
        }
        let on_facet: Vec<usize> = (0..points.len())
            .filter(|&i| f.eval(&points[i]).is_zero())
            .collect();
        // Project the facet into R^{dim-1} by dropping a coordinate where
        // the normal is nonzero; this is an affine bijection on the facet's
        // hyperplane, so triangulations transfer back.
        let drop = f.a.iter().position(|c| !c.is_zero()).unwrap();
        let projected: Vec<Point> = on_facet
            .iter()
            .map(|&i| {
                Point(
                    points[i]
                        .0
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != drop)
                        .map(|(_, c)| c.clone())
                        .collect(),
                )
            })
            .collect();
        for sub in triangulate(dim - 1, &projected)? {
            let mut simplex: Vec<usize> = sub.iter().map(|&k| on_facet[k]).collect();
            simplex.push(apex);
            simplices.push(simplex);
        }
    }
    Ok(simplices)
}

/// Exact volume of `conv(points)`. Zero for lower-dimensional sets.
pub fn volume(dim: usize, points: &[Point]) -> Result<Scalar> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if affine_rank(points) < dim {
        return Ok(Scalar::zero());
    }
    let mut total = Scalar::zero();
    let mut factorial = Scalar::one();
    for k in 1..=dim {
        factorial = &factorial * &Scalar::from_int(k as i64);
    }
    for simplex in triangulate(dim, points)? {
        let base = &points[simplex[dim]];
        let mat: Vec<Vec<Scalar>> = simplex[..dim]
            .iter()
            .map(|&i| points[i].sub(base).0)
            .collect();
        total = &total + &det(&mat).abs();
    }
    Ok(&total / &factorial)
}

/// Exact volume of a bounded H-polytope.
pub fn volume_h(poly: &HPolytope) -> Result<Scalar> {
    let verts = vertices_of(poly)?;
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    volume(poly.dim, &verts)
}

/// Squared diameter of a point set.
pub fn diameter_sq(points: &[Point]) -> Result<Scalar> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let mut best = Scalar::zero();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = points[i].sub(&points[j]).norm_sq();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// Exact test for `B_radius(center) subset of the intersection of facets`,
/// with no square roots: for each `a . x <= b` we need `b - a . center >= 0`
/// and `(b - a . center)^2 >= radius^2 * |a|^2`.
pub fn ball_in_halfspaces(facets: &[HalfSpace], center: &Point, radius: &Scalar) -> bool {
    if radius.is_negative() {
        return false;
    }
    let r_sq = radius * radius;
    facets.iter().all(|h| {
        let slack = &h.b - &center.dot_slice(&h.a);
        if slack.is_negative() {
            return false;
        }
        let a_sq: Scalar = h.a.iter().map(|c| c * c).sum();
        &slack * &slack >= &r_sq * &a_sq
    })
}

/// Exact test for `B_radius(center) subset of conv(points)` for a
/// full-dimensional point set.
pub fn ball_in_hull(dim: usize, points: &[Point], center: &Point, radius: &Scalar) -> Result<bool> {
    let fs = facets(dim, points)?;
    Ok(ball_in_halfspaces(&fs, center, radius))
}

/// Largest exact inscribed-ball radius squared around `center`, i.e. the
/// minimum of `(b - a . center)^2 / |a|^2` over the facets. Returns `None`
/// if the center violates some facet.
pub fn inradius_sq_at(facets: &[HalfSpace], center: &Point) -> Option<Scalar> {
    let mut best: Option<Scalar> = None;
    for h in facets {
        let slack = &h.b - &center.dot_slice(&h.a);
        if slack.is_negative() {
            return None;
        }
        let a_sq: Scalar = h.a.iter().map(|c| c * c).sum();
        let v = &(&slack * &slack) / &a_sq;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&v| s(v)).collect())
    }

    fn square() -> Vec<Point> {
        vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])]
    }

    fn cube() -> Vec<Point> {
        (0..8)
            .map(|k| pt(&[k & 1, (k >> 1) & 1, (k >> 2) & 1]))
            .collect()
    }

    #[test]
    fn square_facets_and_rank() {
        assert_eq!(affine_rank(&square()), 2);
        let fs = facets(2, &square()).unwrap();
        assert_eq!(fs.len(), 4);
        for f in &fs {
            assert!(square().iter().all(|p| f.contains(p)));
        }
        // Interior point strictly satisfies everything.
        let c = Point(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
        assert!(fs.iter().all(|f| f.eval(&c).is_negative()));
    }

    #[test]
    fn extreme_point_filter() {
        let mut pts = square();
        pts.push(Point(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]));
        pts.push(Point(vec![Scalar::ratio(1, 2), Scalar::zero()])); // edge midpoint
        assert_eq!(extreme_points(&pts), vec![0, 1, 2, 3]);
    }

    #[test]
    fn h_to_v_roundtrip() {
        let fs = facets(2, &square()).unwrap();
        let poly = HPolytope::new(2, fs).unwrap();
        let verts = vertices_of(&poly).unwrap();
        let mut expected = square();
        expected.sort();
        assert_eq!(verts, expected);
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(2, &square()).unwrap(), s(1));
        assert_eq!(volume(3, &cube()).unwrap(), s(1));
        let tetra = vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        assert_eq!(volume(3, &tetra).unwrap(), Scalar::ratio(1, 6));
        // Interior points do not change the volume.
        let mut fat = cube();
        fat.push(Point(vec![Scalar::ratio(1, 3); 3]));
        assert_eq!(volume(3, &fat).unwrap(), s(1));
        // Degenerate: a segment in the plane has zero area.
        assert_eq!(volume(2, &[pt(&[0, 0]), pt(&[2, 2])]).unwrap(), s(0));
    }

    #[test]
    fn volume_of_h_polytope() {
        let fs = facets(3, &cube()).unwrap();
        let poly = HPolytope::new(3, fs).unwrap();
        assert_eq!(volume_h(&poly).unwrap(), s(1));
    }

    #[test]
    fn diameter() {
        assert_eq!(diameter_sq(&square()).unwrap(), s(2));
        assert_eq!(diameter_sq(&cube()).unwrap(), s(3));
    }

    #[test]
    fn ball_containment() {
        let c = Point(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
        assert!(ball_in_hull(2, &square(), &c, &Scalar::ratio(1, 2)).unwrap());
        assert!(!ball_in_hull(2, &square(), &c, &Scalar::ratio(501, 1000)).unwrap());
        // Off-center ball.
        let c = Point(vec![Scalar::ratio(1, 4), Scalar::ratio(1, 2)]);
        assert!(ball_in_hull(2, &square(), &c, &Scalar::ratio(1, 4)).unwrap());
        assert!(!ball_in_hull(2, &square(), &c, &Scalar::ratio(3, 10)).unwrap());
        let fs = facets(2, &square()).unwrap();
        assert_eq!(inradius_sq_at(&fs, &c).unwrap(), Scalar::ratio(1, 16));
        assert!(inradius_sq_at(&fs, &pt(&[5, 5])).is_none());
    }
}
