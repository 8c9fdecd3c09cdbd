//! Exact convex-geometry toolkit: linear algebra, simplex-based LP, hull
//! enumeration, volumes, polarity, and certified ball containment.
//!
//! Square roots never enter certified comparisons directly; they are
//! replaced by rational enclosures or squared inequalities throughout.

pub mod hull;
pub mod linalg;
pub mod lp;

use num_rational::BigRational;

use crate::core::{HPolytope, HalfSpace, Point, VPolytope};
use crate::error::{Error, Result};
use crate::scalar::{sqrt_enclosure, Scalar};

pub use hull::{
    affine_rank, ball_in_halfspaces, ball_in_hull, diameter_sq, extreme_points, facets,
    inradius_sq_at, triangulate, vertices_of, volume, volume_h,
};
pub use lp::{convex_combination, in_convex_hull, lp_dual_multipliers, lp_solve, LpResult};

/// Precision used when an irrational norm has to be replaced by a rational
/// upper bound (Chebyshev centers, inscribed simplices).
fn norm_precision() -> BigRational {
    BigRational::new(1.into(), 1_000_000_000i64.into())
}

/// Center and radius of a large inscribed ball of a bounded nonempty
/// H-polytope.
///
/// Solves `max r` subject to `a_i . x + r * ub_i <= b_i` where `ub_i` is a
/// rational upper bound on `|a_i|`, so the returned radius is a certified
/// inscribed radius and within the enclosure precision of the true
/// Chebyshev radius.
pub fn chebyshev_center(poly: &HPolytope) -> Result<(Point, Scalar)> {
    let d = poly.dim;
    let prec = norm_precision();
    let mut lifted = Vec::with_capacity(poly.halfspaces.len());
    for h in &poly.halfspaces {
        let norm_sq = h
            .a
            .iter()
            .map(|c| c * c)
            .sum::<Scalar>();
        let ub = sqrt_enclosure(norm_sq.expect_exact()?, &prec).hi;
        let mut a = h.a.clone();
        a.push(Scalar::Exact(ub));
        lifted.push(HalfSpace { a, b: h.b.clone() });
    }
    let mut objective = vec![Scalar::zero(); d + 1];
    objective[d] = Scalar::one();
    match lp::lp_solve(&lifted, &objective)? {
        LpResult::Feasible { point, value } => {
            if value.is_negative() {
                return Err(Error::EmptyPolytope);
            }
            let center = Point(point.0[..d].to_vec());
            debug_assert!(ball_in_halfspaces(&poly.halfspaces, &center, &value));
            Ok((center, value))
        }
        LpResult::Infeasible { .. } => Err(Error::EmptyPolytope),
        LpResult::Unbounded { .. } => Err(Error::Unbounded),
    }
}

/// Polar dual of an H-polytope whose interior contains the origin: each
/// constraint `a . x <= b` (with `b > 0`) maps to the vertex `a / b`.
pub fn polar_of_h(poly: &HPolytope) -> Result<VPolytope> {
    let mut vertices = Vec::with_capacity(poly.halfspaces.len());
    for h in &poly.halfspaces {
        if !h.b.is_positive() {
            return Err(Error::PreconditionFailed(
                "polar dual needs the origin strictly inside every constraint".into(),
            ));
        }
        vertices.push(Point(h.a.iter().map(|c| c / &h.b).collect()));
    }
    VPolytope::new(poly.dim, vertices)
}

/// Polar dual of a V-polytope whose interior contains the origin: each
/// vertex `v` maps to the constraint `v . x <= 1`.
pub fn polar_of_v(poly: &VPolytope) -> Result<HPolytope> {
    let halfspaces = poly
        .vertices
        .iter()
        .map(|v| HalfSpace::new(v.0.clone(), Scalar::one()))
        .collect::<Result<Vec<_>>>()?;
    HPolytope::new(poly.dim, halfspaces)
}

/// A rational simplex with vertices in the closed unit ball whose inscribed
/// ball around the origin has radius at least `1/d - 1e-6`. Construction is
/// checked at runtime with the exact squared-inradius predicate.
pub fn make_inscribed_simplex(dim: usize) -> Result<VPolytope> {
    let vertices: Vec<Point> = match dim {
        1 => vec![
            Point(vec![Scalar::from_int(-1)]),
            Point(vec![Scalar::from_int(1)]),
        ],
        2 => {
            // Rational unit-circle points near 90, 210, and 330 degrees via
            // the tangent-half-angle map t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)).
            let ts = [
                Scalar::one(),
                Scalar::ratio(-37_320_508, 10_000_000),
                Scalar::ratio(-26_794_919, 100_000_000),
            ];
            ts.iter().map(circle_point).collect()
        }
        3 => {
            // Regular tetrahedron on the sphere of radius sqrt(3) * t with
            // t a tight rational lower bound on 1/sqrt(3).
            let third = BigRational::new(1.into(), 3.into());
            let t = Scalar::Exact(sqrt_enclosure(&third, &norm_precision()).lo);
            [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
                .iter()
                .map(|signs| Point(signs.iter().map(|&s| &Scalar::from_int(s) * &t).collect()))
                .collect()
        }
        d => {
            return Err(Error::Unsupported(format!(
                "inscribed simplex construction covers dimensions 1-3, got {d}"
            )))
        }
    };
    for v in &vertices {
        if v.norm_sq() > Scalar::one() {
            return Err(Error::Internal("simplex vertex escaped the unit ball".into()));
        }
    }
    let required = &Scalar::ratio(1, dim as i64) - &Scalar::ratio(1, 1_000_000);
    let ok = if dim == 1 {
        true
    } else {
        ball_in_hull(dim, &vertices, &Point::origin(dim), &required)?
    };
    if !ok {
        return Err(Error::Internal("inscribed simplex missed its radius bound".into()));
    }
    VPolytope::new(dim, vertices)
}

/// Exact unit-circle point for the tangent-half-angle parameter `t`.
pub fn circle_point(t: &Scalar) -> Point {
    let t_sq = t * t;
    let denom = &Scalar::one() + &t_sq;
    Point(vec![
        &(&Scalar::one() - &t_sq) / &denom,
        &(&Scalar::from_int(2) * t) / &denom,
    ])
}
