//! Per-instance polytope approximation of convex bodies.
//!
//! Supported bodies are disks/balls (d <= 2 exactly, with certified
//! trigonometric scans for the minimal vertex/facet count), convex polygons
//! (exact dynamic programming for inscribed approximations, facet
//! coarsening for circumscribed ones), and 3D polytopes via the trivial
//! self-approximation. Vertex placement may use floating point to pick a
//! rational parameter, but every emitted polytope is certified by exact
//! rational containment and volume checks afterward.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::convexops::{self, hull};
use crate::core::{Ball, HPolytope, HalfSpace, Point, VPolytope};
use crate::error::{Error, Result};
use crate::scalar::{
    cos_enclosure, pi_enclosure, sin_enclosure, tan_enclosure, Enclosure, Scalar,
};

/// A convex body accepted by the approximation operations.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(tag = "body", rename_all = "kebab-case")]
pub enum Body {
    Ball(Ball),
    VPolytope(VPolytope),
    HPolytope(HPolytope),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Ball(b) => b.center.dim(),
            Body::VPolytope(p) => p.dim,
            Body::HPolytope(p) => p.dim,
        }
    }
}

/// Flavor of approximation requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxKind {
    InscribedVolume,
    CircumscribedVolume,
    SandwichBms,
    CircumscribedDiameter,
}

// ---------------------------------------------------------------------------
// Certified scan helpers
// ---------------------------------------------------------------------------

fn prec_at(level: u32) -> BigRational {
    BigRational::new(1.into(), num_bigint::BigInt::from(10u32).pow(12 + 12 * level))
}

/// Enclosure of `sin` over a thin interval inside `[0, 2]`, padded by the
/// interval width (|sin'| <= 1).
fn sin_of(e: &Enclosure, prec: &BigRational) -> Enclosure {
    let base = sin_enclosure(&e.lo, prec);
    let w = &e.hi - &e.lo;
    Enclosure { lo: &base.lo - &w, hi: &base.hi + &w }
}

fn cos_of(e: &Enclosure, prec: &BigRational) -> Enclosure {
    let base = cos_enclosure(&e.lo, prec);
    let w = &e.hi - &e.lo;
    Enclosure { lo: &base.lo - &w, hi: &base.hi + &w }
}

/// Enclosure of `tan` over a thin interval below pi/2, by monotonicity.
fn tan_of(e: &Enclosure, prec: &BigRational) -> Enclosure {
    Enclosure { lo: tan_enclosure(&e.lo, prec).lo, hi: tan_enclosure(&e.hi, prec).hi }
}

/// Decides `lhs >= rhs` for two quantities only known by enclosures,
/// refining the precision closure until the enclosures separate.
fn certified_ge(mut build: impl FnMut(&BigRational) -> (Enclosure, Enclosure)) -> Result<bool> {
    for level in 0..5 {
        let prec = prec_at(level);
        let (lhs, rhs) = build(&prec);
        if lhs.lo >= rhs.hi {
            return Ok(true);
        }
        if lhs.hi < rhs.lo {
            return Ok(false);
        }
    }
    Err(Error::Internal(
        "enclosure comparison failed to separate; values may coincide".into(),
    ))
}

fn ratio_u(n: usize, d: usize) -> BigRational {
    BigRational::new((n as i64).into(), (d as i64).into())
}

/// Smallest `k >= 3` with inscribed regular k-gon area `(k/2) sin(2 pi/k)`
/// at least `(1 - eps) pi`.
pub fn disk_inscribed_k(eps: &BigRational, budget: Option<usize>) -> Result<usize> {
    disk_scan(budget, |k| {
        certified_ge(|prec| {
            let pi = pi_enclosure(prec);
            // sin(2 pi / 3) = sin(pi / 3) keeps the series in its domain.
            let angle = if k == 3 { pi.scale(&ratio_u(1, 3)) } else { pi.scale(&ratio_u(2, k)) };
            let lhs = sin_of(&angle, prec).scale(&ratio_u(k, 2));
            let rhs = pi.scale(&(BigRational::one() - eps));
            (lhs, rhs)
        })
    })
}

/// Smallest `k >= 3` with circumscribed tangent k-gon area `k tan(pi/k)` at
/// most `(1 + eps) pi`.
pub fn disk_circumscribed_k(eps: &BigRational, budget: Option<usize>) -> Result<usize> {
    disk_scan(budget, |k| {
        certified_ge(|prec| {
            let pi = pi_enclosure(prec);
            let angle = pi.scale(&ratio_u(1, k));
            let lhs = pi.scale(&(BigRational::one() + eps));
            let rhs = tan_of(&angle, prec).scale(&ratio_u(k, 1));
            (lhs, rhs)
        })
    })
}

/// Smallest `k >= 3` with `sec(pi/k) <= 1 + eps`, i.e.
/// `(1 + eps) cos(pi/k) >= 1`.
pub fn disk_sandwich_k(eps: &BigRational, budget: Option<usize>) -> Result<usize> {
    disk_scan(budget, |k| {
        certified_ge(|prec| {
            let pi = pi_enclosure(prec);
            let angle = pi.scale(&ratio_u(1, k));
            let lhs = cos_of(&angle, prec).scale(&(BigRational::one() + eps));
            (lhs, Enclosure::point(BigRational::one()))
        })
    })
}

/// Smallest even `k >= 4` with `sec(pi/k) <= 1 + eps`; a tangent k-gon with
/// antipodal contact points then has diameter `2 sec(pi/k)`.
pub fn disk_diameter_k(eps: &BigRational, budget: Option<usize>) -> Result<usize> {
    let mut k = 4;
    loop {
        if budget.is_some_and(|b| k > b) {
            return Err(Error::BudgetExceeded(format!(
                "diameter scan passed the facet budget at k = {k}"
            )));
        }
        let ok = certified_ge(|prec| {
            let pi = pi_enclosure(prec);
            let angle = pi.scale(&ratio_u(1, k));
            let lhs = cos_of(&angle, prec).scale(&(BigRational::one() + eps));
            (lhs, Enclosure::point(BigRational::one()))
        })?;
        if ok {
            return Ok(k);
        }
        k += 2;
    }
}

fn disk_scan(budget: Option<usize>, mut pred: impl FnMut(usize) -> Result<bool>) -> Result<usize> {
    let mut k = 3;
    loop {
        if budget.is_some_and(|b| k > b) {
            return Err(Error::BudgetExceeded(format!(
                "disk scan passed the vertex budget at k = {k}"
            )));
        }
        if pred(k)? {
            return Ok(k);
        }
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// Rational circle geometry
// ---------------------------------------------------------------------------

/// A rational point exactly on the unit circle near the given angle. The
/// tangent-half-angle parameter is picked in floating point; exactness of
/// the resulting point is unconditional.
pub fn unit_point_near_angle(theta: f64) -> Point {
    let t = (theta / 2.0).tan();
    let tr = BigRational::from_float(t).unwrap_or_else(BigRational::zero);
    convexops::circle_point(&Scalar::Exact(tr))
}

fn disk_vertices(ball: &Ball, k: usize, phase: f64) -> Vec<Point> {
    (0..k)
        .map(|j| {
            let theta = phase + 2.0 * std::f64::consts::PI * (j as f64) / (k as f64);
            ball.center.add(&unit_point_near_angle(theta).scale(&ball.radius))
        })
        .collect()
}

/// Enclosure of the disk area `pi r^2`.
fn disk_area(ball: &Ball, prec: &BigRational) -> Result<Enclosure> {
    let r = ball.radius.expect_exact()?;
    Ok(pi_enclosure(prec).scale(&(r * r)))
}

// ---------------------------------------------------------------------------
// 2D ordering helpers
// ---------------------------------------------------------------------------

fn cross(o: &Point, a: &Point, b: &Point) -> Scalar {
    let (ax, ay) = (&a.0[0] - &o.0[0], &a.0[1] - &o.0[1]);
    let (bx, by) = (&b.0[0] - &o.0[0], &b.0[1] - &o.0[1]);
    &(&ax * &by) - &(&ay * &bx)
}

/// Total order by angle from the positive x-axis, for nonzero 2D vectors.
fn angle_cmp(a: &[Scalar], b: &[Scalar]) -> Ordering {
    let half = |v: &[Scalar]| -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cr = &(&a[0] * &b[1]) - &(&a[1] * &b[0]);
        if cr.is_positive() {
            Ordering::Less
        } else if cr.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Extreme points of a planar set in counterclockwise cyclic order.
pub fn convex_cycle(points: &[Point]) -> Result<Vec<Point>> {
    let ext = convexops::extreme_points(points);
    let mut pts: Vec<Point> = ext.iter().map(|&i| points[i].clone()).collect();
    if pts.len() <= 2 {
        pts.sort();
        return Ok(pts);
    }
    let n = Scalar::from_int(pts.len() as i64);
    let centroid = pts
        .iter()
        .fold(Point::origin(2), |acc, p| acc.add(p))
        .scale(&n.recip());
    pts.sort_by(|a, b| angle_cmp(&a.sub(&centroid).0, &b.sub(&centroid).0));
    Ok(pts)
}

fn ring_area_twice(ring: &[Point]) -> Scalar {
    let mut s = Scalar::zero();
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        s = &s + &(&(&a.0[0] * &b.0[1]) - &(&a.0[1] * &b.0[0]));
    }
    s.abs()
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Inscribed approximation: `P` inside the body with
/// `vol(P) >= (1 - eps) vol(body)`, together with the achieved vertex
/// count. Minimal k for disks (certified scan) and for vertex-subset
/// polygons of convex polygons (exact DP).
pub fn inscribed_poly(body: &Body, eps: &Scalar, budget: Option<usize>) -> Result<(VPolytope, usize)> {
    let eps = eps.expect_exact()?.clone();
    if eps.is_negative() {
        return Err(Error::PreconditionFailed("epsilon must be nonnegative".into()));
    }
    match body {
        Body::Ball(ball) if ball.center.dim() == 2 => {
            if eps.is_zero() || eps >= BigRational::one() {
                return Err(Error::PreconditionFailed(
                    "disk approximation needs epsilon in (0, 1)".into(),
                ));
            }
            let k = disk_inscribed_k(&eps, budget)?;
            let verts = disk_vertices(ball, k, 0.0);
            let area = &ring_area_twice(&verts) / &Scalar::from_int(2);
            let target = disk_area(ball, &prec_at(0))?.scale(&(BigRational::one() - &eps));
            if area.expect_exact()? < &target.hi {
                return Err(Error::Internal(
                    "rational perturbation broke the inscribed area certificate".into(),
                ));
            }
            Ok((VPolytope::new(2, verts)?, k))
        }
        Body::Ball(_) => Err(Error::Unsupported(
            "inscribed approximation of balls is implemented in dimension 2".into(),
        )),
        Body::VPolytope(p) if p.dim == 2 => {
            let ring = convex_cycle(&p.vertices)?;
            if ring.len() < 3 {
                return Err(Error::PreconditionFailed("body has zero volume".into()));
            }
            if eps.is_zero() {
                let k = ring.len();
                return Ok((VPolytope::new(2, ring)?, k));
            }
            let (sel, k) = max_area_subpolygon(&ring, &eps, budget)?;
            Ok((VPolytope::new(2, sel)?, k))
        }
        Body::VPolytope(p) => {
            // Trivial self-approximation in other dimensions.
            let k = p.vertices.len();
            Ok((p.clone(), k))
        }
        Body::HPolytope(p) => {
            let verts = hull::vertices_of(p)?;
            if verts.is_empty() {
                return Err(Error::EmptyPolytope);
            }
            inscribed_poly(&Body::VPolytope(VPolytope::new(p.dim, verts)?), &Scalar::Exact(eps), budget)
        }
    }
}

/// Smallest vertex-subset polygon meeting the `(1 - eps)` area target, by
/// dynamic programming over the cyclic vertex order (the maximum-area
/// inscribed k-gon of a convex polygon uses only its vertices).
fn max_area_subpolygon(
    ring: &[Point],
    eps: &BigRational,
    budget: Option<usize>,
) -> Result<(Vec<Point>, usize)> {
    let v = ring.len();
    let total = ring_area_twice(ring);
    let target = &total * &Scalar::Exact(BigRational::one() - eps);
    let kmax = budget.unwrap_or(v).min(v);
    for k in 3..=kmax {
        let mut best: Option<(Scalar, Vec<usize>)> = None;
        for start in 0..v {
            // dp[j][c]: best doubled area of a fan from `start` through c
            // chosen vertices ending at j (indices strictly increasing).
            let mut dp: Vec<Vec<Option<(Scalar, usize)>>> = vec![vec![None; k + 1]; v];
            for j in (start + 1)..v {
                dp[j][2] = Some((Scalar::zero(), usize::MAX));
            }
            for c in 3..=k {
                for j in (start + 1)..v {
                    for p in (start + 1)..j {
                        if let Some((a, _)) = &dp[p][c - 1] {
                            let cand = a + &cross(&ring[start], &ring[p], &ring[j]);
                            if dp[j][c].as_ref().is_none_or(|(b, _)| cand > *b) {
                                dp[j][c] = Some((cand, p));
                            }
                        }
                    }
                }
            }
            for j in (start + 1)..v {
                if let Some((a, _)) = &dp[j][k] {
                    if best.as_ref().is_none_or(|(b, _)| *a > *b) {
                        let mut path = vec![j];
                        let mut c = k;
                        let mut cur = j;
                        while c > 2 {
                            let (_, prev) = dp[cur][c].clone().unwrap();
                            path.push(prev);
                            cur = prev;
                            c -= 1;
                        }
                        path.push(start);
                        path.reverse();
                        best = Some((a.clone(), path));
                    }
                }
            }
        }
        if let Some((area2, path)) = best {
            if area2 >= target {
                let sel: Vec<Point> = path.iter().map(|&i| ring[i].clone()).collect();
                debug_assert_eq!(ring_area_twice(&sel), area2);
                return Ok((sel, k));
            }
        }
    }
    if budget.is_some_and(|b| b < v) {
        Err(Error::BudgetExceeded(format!(
            "no vertex-subset polygon with at most {kmax} vertices reaches the area target"
        )))
    } else {
        Err(Error::Internal("full vertex set missed its own area".into()))
    }
}

/// Circumscribed approximation: `P` containing the body with
/// `vol(P) <= (1 + eps) vol(body)` and the achieved facet count. Minimal k
/// for disks; facet coarsening (no minimality claim) for polygons.
pub fn circumscribed_poly(
    body: &Body,
    eps: &Scalar,
    budget: Option<usize>,
) -> Result<(HPolytope, usize)> {
    let eps = eps.expect_exact()?.clone();
    if eps.is_negative() {
        return Err(Error::PreconditionFailed("epsilon must be nonnegative".into()));
    }
    match body {
        Body::Ball(ball) if ball.center.dim() == 2 => {
            if eps.is_zero() {
                return Err(Error::PreconditionFailed(
                    "no polytope circumscribes a disk with epsilon = 0".into(),
                ));
            }
            let k = disk_circumscribed_k(&eps, budget)?;
            let hs = disk_tangents(ball, k, 0.0)?;
            let poly = HPolytope::new(2, hs)?;
            let area = hull::volume_h(&poly)?;
            let limit = disk_area(ball, &prec_at(0))?.scale(&(BigRational::one() + &eps));
            if area.expect_exact()? > &limit.lo {
                return Err(Error::Internal(
                    "rational perturbation broke the circumscribed area certificate".into(),
                ));
            }
            Ok((poly, k))
        }
        Body::Ball(_) => Err(Error::Unsupported(
            "circumscribed approximation of balls is implemented in dimension 2".into(),
        )),
        Body::VPolytope(p) if p.dim == 2 => {
            let hs = hull::facets(2, &p.vertices)?;
            circumscribed_poly(&Body::HPolytope(HPolytope::new(2, hs)?), &Scalar::Exact(eps), budget)
        }
        Body::VPolytope(p) => {
            let hs = hull::facets(p.dim, &p.vertices)?;
            let k = hs.len();
            Ok((HPolytope::new(p.dim, hs)?, k))
        }
        Body::HPolytope(p) if p.dim == 2 => coarsen_facets(p, &eps, budget),
        Body::HPolytope(p) => {
            let k = p.halfspaces.len();
            Ok((p.clone(), k))
        }
    }
}

/// Tangent half-spaces of a disk at k rational unit directions. Tangency is
/// exact because the contact directions are exactly on the unit circle.
fn disk_tangents(ball: &Ball, k: usize, phase: f64) -> Result<Vec<HalfSpace>> {
    (0..k)
        .map(|j| {
            let theta = phase + 2.0 * std::f64::consts::PI * (j as f64) / (k as f64);
            let u = unit_point_near_angle(theta);
            let b = &u.dot(&ball.center) + &ball.radius;
            HalfSpace::new(u.0, b)
        })
        .collect()
}

/// Facet coarsening for convex polygons: keep an evenly spread cyclic
/// subset of the original facets, growing k until the exact clipped area is
/// within `(1 + eps)` of the body's. The achieved k is a witness, not a
/// claimed minimum.
fn coarsen_facets(p: &HPolytope, eps: &BigRational, budget: Option<usize>) -> Result<(HPolytope, usize)> {
    let verts = hull::vertices_of(p)?;
    if verts.len() < 3 {
        return Err(Error::PreconditionFailed("body has zero volume".into()));
    }
    let area_k = convexops::volume(2, &verts)?;
    // Active, deduplicated facets in angular order.
    let mut hs: Vec<HalfSpace> = hull::facets(2, &verts)?;
    hs.sort_by(|a, b| angle_cmp(&a.a, &b.a));
    let n = hs.len();
    if eps.is_zero() {
        return Ok((HPolytope::new(2, hs)?, n));
    }
    let limit = &area_k * &Scalar::Exact(BigRational::one() + eps);
    let kmax = budget.unwrap_or(n).min(n);
    for k in 3..=kmax {
        for offset in 0..n {
            let idx: Vec<usize> =
                (0..k).map(|j| (offset + j * n / k) % n).collect();
            let mut uniq = idx.clone();
            uniq.dedup();
            if uniq.len() < k || !bounded_fan(&hs, &uniq) {
                continue;
            }
            let sub: Vec<HalfSpace> = uniq.iter().map(|&i| hs[i].clone()).collect();
            let poly = HPolytope::new(2, sub)?;
            let area = hull::volume_h(&poly)?;
            if area <= limit {
                return Ok((poly, k));
            }
        }
    }
    if budget.is_some_and(|b| b < n) {
        Err(Error::BudgetExceeded(format!(
            "no facet subset of size at most {kmax} meets the volume target"
        )))
    } else {
        Err(Error::Internal("the full facet set missed its own volume".into()))
    }
}

/// Bounded iff consecutive normal gaps (in angular order) are all below pi.
fn bounded_fan(hs: &[HalfSpace], idx: &[usize]) -> bool {
    let k = idx.len();
    (0..k).all(|i| {
        let a = &hs[idx[i]].a;
        let b = &hs[idx[(i + 1) % k]].a;
        (&(&a[0] * &b[1]) - &(&a[1] * &b[0])).is_positive()
    })
}

/// Sandwich approximation for centrally symmetric bodies:
/// `P` inside the body with the body inside `(1 + eps) P`, both certified
/// exactly.
pub fn sandwich_bms(body: &Body, eps: &Scalar, budget: Option<usize>) -> Result<(VPolytope, usize)> {
    let eps = eps.expect_exact()?.clone();
    if eps.is_negative() {
        return Err(Error::PreconditionFailed("epsilon must be nonnegative".into()));
    }
    match body {
        Body::Ball(ball) if ball.center.dim() == 1 => {
            let r = &ball.radius;
            let lo = Point(vec![&ball.center.0[0] - r]);
            let hi = Point(vec![&ball.center.0[0] + r]);
            Ok((VPolytope::new(1, vec![lo, hi])?, 2))
        }
        Body::Ball(ball) if ball.center.dim() == 2 => {
            if eps.is_zero() {
                return Err(Error::PreconditionFailed(
                    "no polytope sandwiches a disk with epsilon = 0".into(),
                ));
            }
            let mut k = disk_sandwich_k(&eps, budget)?;
            loop {
                if budget.is_some_and(|b| k > b) {
                    return Err(Error::BudgetExceeded(
                        "sandwich construction passed the vertex budget".into(),
                    ));
                }
                let verts = disk_vertices(ball, k, 0.0);
                if sandwich_holds(ball, &verts, &eps)? {
                    return Ok((VPolytope::new(2, verts)?, k));
                }
                // The rational perturbation ate the secant margin; a finer
                // polygon always recovers it.
                k += 1;
            }
        }
        Body::Ball(_) => Err(Error::Unsupported(
            "sandwich approximation of balls is implemented in dimensions 1-2".into(),
        )),
        Body::VPolytope(p) => {
            let ring = if p.dim == 2 { convex_cycle(&p.vertices)? } else { p.vertices.clone() };
            if !centrally_symmetric(&ring) {
                return Err(Error::PreconditionFailed(
                    "sandwich approximation needs a centrally symmetric body".into(),
                ));
            }
            let k = ring.len();
            Ok((VPolytope::new(p.dim, ring)?, k))
        }
        Body::HPolytope(p) => {
            let verts = hull::vertices_of(p)?;
            sandwich_bms(&Body::VPolytope(VPolytope::new(p.dim, verts)?), &Scalar::Exact(eps), budget)
        }
    }
}

/// `ball inside (1 + eps) * P` relative to the center, checked facet-wise
/// without square roots: `(1 + eps) (b - a.c) >= r |a|` squared.
fn sandwich_holds(ball: &Ball, verts: &[Point], eps: &BigRational) -> Result<bool> {
    let facets = hull::facets(2, verts)?;
    let r = ball.radius.expect_exact()?;
    let scale = BigRational::one() + eps;
    let bound = Scalar::Exact(&(r * r) / &(&scale * &scale));
    for f in &facets {
        let slack = -&f.eval(&ball.center);
        if slack.is_negative() {
            return Ok(false);
        }
        let a_sq: Scalar = f.a.iter().map(|c| c * c).sum();
        if &slack * &slack < &bound * &a_sq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symmetric about the centroid of the vertex set.
fn centrally_symmetric(verts: &[Point]) -> bool {
    if verts.is_empty() {
        return false;
    }
    let d = verts[0].dim();
    let n = Scalar::from_int(verts.len() as i64);
    let c = verts
        .iter()
        .fold(Point::origin(d), |acc, p| acc.add(p))
        .scale(&n.recip());
    verts.iter().all(|v| {
        let mirror = c.scale(&Scalar::from_int(2)).sub(v);
        verts.contains(&mirror)
    })
}

/// Diameter approximation: `P` containing the body with
/// `diam(P) <= (1 + eps) diam(body)`, certified by the exact squared
/// diameter of `P`'s vertices.
pub fn diameter_poly(body: &Body, eps: &Scalar, budget: Option<usize>) -> Result<(HPolytope, usize)> {
    let eps = eps.expect_exact()?.clone();
    if eps.is_negative() {
        return Err(Error::PreconditionFailed("epsilon must be nonnegative".into()));
    }
    match body {
        Body::Ball(ball) if ball.center.dim() == 2 => {
            if eps.is_zero() {
                return Err(Error::PreconditionFailed(
                    "no polytope circumscribes a disk with epsilon = 0".into(),
                ));
            }
            let mut k = disk_diameter_k(&eps, budget)?;
            loop {
                if budget.is_some_and(|b| k > b) {
                    return Err(Error::BudgetExceeded(
                        "diameter construction passed the facet budget".into(),
                    ));
                }
                // Exactly antipodal contact pairs: generate half the
                // directions over the upper half-circle and mirror them.
                let mut hs: Vec<HalfSpace> = (0..k / 2)
                    .map(|j| {
                        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (k as f64);
                        let u = unit_point_near_angle(theta);
                        let b = &u.dot(&ball.center) + &ball.radius;
                        HalfSpace::new(u.0, b)
                    })
                    .collect::<Result<_>>()?;
                let mirrored: Vec<HalfSpace> = hs
                    .iter()
                    .map(|h| {
                        let a: Vec<Scalar> = h.a.iter().map(|c| -c).collect();
                        let b = &a.iter().zip(&ball.center.0).map(|(x, y)| x * y).sum::<Scalar>()
                            + &ball.radius;
                        HalfSpace::new(a, b)
                    })
                    .collect::<Result<_>>()?;
                hs.extend(mirrored);
                let poly = HPolytope::new(2, hs)?;
                let verts = hull::vertices_of(&poly)?;
                let diam_sq = hull::diameter_sq(&verts)?;
                let r = ball.radius.expect_exact()?;
                let scale = BigRational::one() + &eps;
                let limit = Scalar::Exact(r * r * &scale * &scale * BigRational::from_integer(4.into()));
                if diam_sq <= limit {
                    return Ok((poly, k));
                }
                k += 2;
            }
        }
        Body::Ball(_) => Err(Error::Unsupported(
            "diameter approximation of balls is implemented in dimension 2".into(),
        )),
        Body::VPolytope(p) => {
            let hs = hull::facets(p.dim, &p.vertices)?;
            let k = hs.len();
            Ok((HPolytope::new(p.dim, hs)?, k))
        }
        Body::HPolytope(p) => {
            let k = p.halfspaces.len();
            Ok((p.clone(), k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn unit_disk() -> Body {
        Body::Ball(Ball::new(Point::origin(2), Scalar::one()).unwrap())
    }

    fn unit_square() -> VPolytope {
        VPolytope::new(
            2,
            vec![
                Point(vec![Scalar::zero(), Scalar::zero()]),
                Point(vec![Scalar::one(), Scalar::zero()]),
                Point(vec![Scalar::one(), Scalar::one()]),
                Point(vec![Scalar::zero(), Scalar::one()]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn disk_scans() {
        assert_eq!(disk_inscribed_k(&r(1, 100), None).unwrap(), 26);
        assert_eq!(disk_circumscribed_k(&r(1, 20), None).unwrap(), 9);
        assert_eq!(disk_sandwich_k(&r(1, 20), None).unwrap(), 11);
        assert_eq!(disk_diameter_k(&r(1, 10), None).unwrap(), 8);
        // Very loose tolerance: a triangle circumscribes within 11 pi.
        assert_eq!(disk_circumscribed_k(&r(10, 1), None).unwrap(), 3);
    }

    #[test]
    fn disk_inscribed_construction() {
        let (p, k) = inscribed_poly(&unit_disk(), &Scalar::ratio(1, 100), None).unwrap();
        assert_eq!(k, 26);
        assert_eq!(p.vertices.len(), 26);
        for v in &p.vertices {
            assert_eq!(v.norm_sq(), Scalar::one());
        }
    }

    #[test]
    fn disk_circumscribed_construction() {
        let (p, k) = circumscribed_poly(&unit_disk(), &Scalar::ratio(1, 20), None).unwrap();
        assert_eq!(k, 9);
        // Contains the unit ball exactly.
        assert!(hull::ball_in_halfspaces(&p.halfspaces, &Point::origin(2), &Scalar::one()));
    }

    #[test]
    fn square_inscribed_triangle() {
        let (p, k) =
            inscribed_poly(&Body::VPolytope(unit_square()), &Scalar::ratio(1, 2), None).unwrap();
        assert_eq!(k, 3);
        assert_eq!(convexops::volume(2, &p.vertices).unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn polygon_zero_eps_is_identity() {
        let (p, k) = inscribed_poly(&Body::VPolytope(unit_square()), &Scalar::zero(), None).unwrap();
        assert_eq!(k, 4);
        assert_eq!(convexops::volume(2, &p.vertices).unwrap(), Scalar::one());
    }

    #[test]
    fn sandwich_disk() {
        let (p, k) = sandwich_bms(&unit_disk(), &Scalar::ratio(1, 20), None).unwrap();
        assert_eq!(k, 11);
        // P inside the disk: all vertices on the circle.
        for v in &p.vertices {
            assert_eq!(v.norm_sq(), Scalar::one());
        }
    }

    #[test]
    fn sandwich_square_and_asymmetric_rejection() {
        let sym = VPolytope::new(
            2,
            vec![
                Point(vec![Scalar::one(), Scalar::one()]),
                Point(vec![Scalar::from_int(-1), Scalar::one()]),
                Point(vec![Scalar::from_int(-1), Scalar::from_int(-1)]),
                Point(vec![Scalar::one(), Scalar::from_int(-1)]),
            ],
        )
        .unwrap();
        let (p, k) = sandwich_bms(&Body::VPolytope(sym), &Scalar::zero(), None).unwrap();
        assert_eq!((p.vertices.len(), k), (4, 4));
        let tri = VPolytope::new(
            2,
            vec![
                Point(vec![Scalar::zero(), Scalar::zero()]),
                Point(vec![Scalar::one(), Scalar::zero()]),
                Point(vec![Scalar::zero(), Scalar::one()]),
            ],
        )
        .unwrap();
        assert!(sandwich_bms(&Body::VPolytope(tri), &Scalar::ratio(1, 10), None).is_err());
    }

    #[test]
    fn diameter_disk() {
        let (p, k) = diameter_poly(&unit_disk(), &Scalar::ratio(1, 10), None).unwrap();
        assert_eq!(k, 8);
        let verts = hull::vertices_of(&p).unwrap();
        let limit = Scalar::ratio(4 * 121, 100); // (2 * 1.1)^2
        assert!(hull::diameter_sq(&verts).unwrap() <= limit);
        assert!(hull::ball_in_halfspaces(&p.halfspaces, &Point::origin(2), &Scalar::one()));
    }

    #[test]
    fn coarsening_stays_within_budgeted_volume() {
        // Regular-ish octagon coarsened at a loose tolerance.
        let ball = Ball::new(Point::origin(2), Scalar::one()).unwrap();
        let hs = disk_tangents(&ball, 8, 0.3).unwrap();
        let body = HPolytope::new(2, hs).unwrap();
        let base = hull::volume_h(&body).unwrap();
        let (p, k) = circumscribed_poly(&Body::HPolytope(body), &Scalar::ratio(1, 2), None).unwrap();
        assert!(k < 8);
        let vol = hull::volume_h(&p).unwrap();
        assert!(vol <= &base * &Scalar::ratio(3, 2));
    }

    #[test]
    fn monotone_in_eps() {
        let grid = [r(1, 100), r(1, 50), r(1, 20), r(1, 10), r(1, 4), r(1, 2)];
        let mut last_in = usize::MAX;
        let mut last_out = usize::MAX;
        for eps in &grid {
            let kin = disk_inscribed_k(eps, None).unwrap();
            let kout = disk_circumscribed_k(eps, None).unwrap();
            assert!(kin <= last_in);
            assert!(kout <= last_out);
            last_in = kin;
            last_out = kout;
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            disk_inscribed_k(&r(1, 100), Some(10)),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            inscribed_poly(&Body::VPolytope(unit_square()), &Scalar::ratio(1, 1000), Some(3)),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
