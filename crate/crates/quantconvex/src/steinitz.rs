//! Quantitative Steinitz constructions: a rainbow selection of few points
//! whose hull still holds a ball or most of the volume of a shared body.
//!
//! Three pipelines live here. `colored_steinitz_ball` picks 2d points (one
//! per class) whose hull keeps a ball of explicitly certified radius around
//! the origin; `thrifty_steinitz_volume` keeps a `(1 - eps)` volume
//! fraction with d vertices' worth of classes per approximation vertex; and
//! `steinitz_ball_eps` keeps radius `1/(1 + eps)` using `(k-1)d + 1`
//! classes. All certificates are exact; irrational quantities only ever
//! appear as certified rational bounds.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::approx;
use crate::caratheodory::{reduce_support, very_colorful_caratheodory};
use crate::convexops::{self, hull, in_convex_hull};
use crate::core::{
    Ball, Certificate, CertKind, Claim, ColoredFamily, Point, Selected, VPolytope, Witness,
};
use crate::error::{Error, Result};
use crate::scalar::{
    default_prec, pi_enclosure, sin_enclosure, sqrt_enclosure, steinitz_radius_constant, Scalar,
};

/// How the ball selection in dimension 2 was found: the enumerated rainbow
/// cones, the chosen one, its certified incenter data, and the final
/// radius. Embedded in the certificate trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeCoverTrace {
    /// Generator point indices (one per cone-generating class) per cone.
    pub cones: Vec<Vec<usize>>,
    pub chosen: usize,
    /// Rational interior direction of the chosen cone (not normalized).
    pub incenter: Point,
    /// Certified lower bound on the incenter angle, radians.
    pub alpha: Scalar,
    /// Certified inscribed-ball radius of the final selection.
    pub radius: Scalar,
    /// Whether the constructive cone path produced the selection (`false`
    /// means the exhaustive safety net did).
    pub constructive: bool,
}

/// Exact check that the closed unit ball around the origin is inside
/// `conv(class)`.
pub fn unit_ball_contained(dim: usize, class: &[Point]) -> Result<bool> {
    if dim == 1 {
        let lo = class.iter().map(|p| p.0[0].clone()).min().unwrap();
        let hi = class.iter().map(|p| p.0[0].clone()).max().unwrap();
        return Ok(lo <= Scalar::from_int(-1) && hi >= Scalar::one());
    }
    if hull::affine_rank(class) < dim {
        return Ok(false);
    }
    hull::ball_in_hull(dim, class, &Point::origin(dim), &Scalar::one())
}

/// Certified inscribed-ball radius of `conv(points)` around the origin: a
/// rational `r` with `B_r(0)` exactly inside the hull, within the default
/// enclosure precision of the true inradius. `None` when the origin is not
/// interior.
pub fn certified_origin_radius(dim: usize, points: &[Point]) -> Result<Option<Scalar>> {
    if hull::affine_rank(points) < dim {
        return Ok(None);
    }
    let facets = hull::facets(dim, points)?;
    let Some(r_sq) = hull::inradius_sq_at(&facets, &Point::origin(dim)) else {
        return Ok(None);
    };
    if !r_sq.is_positive() {
        return Ok(None);
    }
    let r = Scalar::Exact(sqrt_enclosure(r_sq.expect_exact()?, &default_prec()).lo);
    debug_assert!(hull::ball_in_halfspaces(&facets, &Point::origin(dim), &r));
    Ok(Some(r))
}

fn check_family(family: &ColoredFamily, expected_classes: usize, what: &str) -> Result<()> {
    family.validate()?;
    if family.classes.len() != expected_classes {
        return Err(Error::PreconditionFailed(format!(
            "{what} needs {expected_classes} classes in dimension {}, got {}",
            family.dim,
            family.classes.len()
        )));
    }
    for (i, class) in family.classes.iter().enumerate() {
        if !unit_ball_contained(family.dim, class)? {
            return Err(Error::PreconditionFailed(format!(
                "class {i} does not contain the unit ball in its hull"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Lemma: 2d classes, explicit radius
// ---------------------------------------------------------------------------

/// Rainbow selection of `2d` points whose hull holds a ball of certified
/// radius at least `(pi/e^2) d^(-2d-2)` around the origin. Dimensions 1
/// and 2.
pub fn colored_steinitz_ball(family: &ColoredFamily) -> Result<Certificate> {
    let d = family.dim;
    check_family(family, 2 * d, "the colored Steinitz ball selection")?;
    match d {
        1 => colored_ball_1d(family),
        2 => colored_ball_2d(family),
        _ => Err(Error::Unsupported(
            "the colored Steinitz ball construction covers dimensions 1-2".into(),
        )),
    }
}

fn colored_ball_1d(family: &ColoredFamily) -> Result<Certificate> {
    // Pick the leftmost point of class 0 (at most -1) and the rightmost of
    // class 1 (at least 1): their hull holds the unit ball itself.
    let lo = (0..family.classes[0].len())
        .min_by_key(|&i| family.classes[0][i].0[0].clone())
        .unwrap();
    let hi = (0..family.classes[1].len())
        .max_by_key(|&i| family.classes[1][i].0[0].clone())
        .unwrap();
    let witness = Witness::Selection(vec![
        Selected { class: 0, point: lo, weight: None },
        Selected { class: 1, point: hi, weight: None },
    ]);
    let claim = Claim::Ball(Ball::new(Point::origin(1), Scalar::one())?);
    Ok(Certificate::new(CertKind::SteinitzBall, witness, claim))
}

fn cross2(u: &Point, v: &Point) -> Scalar {
    &(&u.0[0] * &v.0[1]) - &(&u.0[1] * &v.0[0])
}

fn norm_ub(p: &Point) -> Result<Scalar> {
    let sq = p.norm_sq();
    Ok(Scalar::Exact(sqrt_enclosure(sq.expect_exact()?, &default_prec()).hi))
}

fn colored_ball_2d(family: &ColoredFamily) -> Result<Certificate> {
    let d = 2usize;
    let required = Scalar::Exact(steinitz_radius_constant(d, &default_prec()).hi);

    // Shrink every class to the support of an inscribed simplex: at most
    // (d+1)^2 points per class, still holding B_rho(0) for
    // rho = 1/d - 1e-6.
    let simplex = convexops::make_inscribed_simplex(d)?;
    let rho = &Scalar::ratio(1, d as i64) - &Scalar::ratio(1, 1_000_000);
    let reduced: Vec<Vec<usize>> = family
        .classes
        .iter()
        .map(|class| reduce_support(class, &simplex.vertices))
        .collect::<Result<_>>()?;

    // Enumerate the rainbow cones from the first d classes.
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for &i in &reduced[0] {
        for &j in &reduced[1] {
            if !cross2(&family.classes[0][i], &family.classes[1][j]).is_zero() {
                cones.push(vec![i, j]);
            }
        }
    }
    if cones.is_empty() {
        return fallback_selection(family, &reduced, &required, None);
    }
    let n = cones.len();

    // Angular sweep: every elementary arc between consecutive generator
    // directions must lie inside some cone, which certifies the cover of
    // the whole circle.
    let cover_ok = sweep_cover_check(family, &cones);

    // Chosen cone: maximal certified incenter angle. The incenter proxy is
    // the exact positive combination u |v| + v |u| (norms as certified
    // upper bounds), which always lies inside the cone.
    let mut best: Option<(usize, Point, Scalar)> = None;
    for (c, gens) in cones.iter().enumerate() {
        let (u, v) = (&family.classes[0][gens[0]], &family.classes[1][gens[1]]);
        let (u, v) = if cross2(u, v).is_positive() { (u, v) } else { (v, u) };
        let a = u.scale(&norm_ub(v)?).add(&v.scale(&norm_ub(u)?));
        if a.norm_sq().is_zero() {
            continue;
        }
        let a_ub = norm_ub(&a)?;
        let alpha = [u, v]
            .iter()
            .map(|w| {
                let s = cross2(&a, w).abs();
                Ok(&s / &(&a_ub * &norm_ub(w)?))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap();
        if best.as_ref().is_none_or(|(_, _, b)| alpha > *b) {
            best = Some((c, a, alpha));
        }
    }
    let Some((chosen, a, alpha)) = best else {
        return fallback_selection(family, &reduced, &required, None);
    };

    // Certified chain: the best cone covers at least 1/n of the circle, so
    // its true incenter angle exceeds 2 pi / (d n) and our sine-based bound
    // exceeds sin(2 pi / (d n)) up to the norm-bound slack.
    let chain_ok = cover_ok && {
        let angle = pi_enclosure(&default_prec())
            .scale(&BigRational::new(2.into(), ((d * n) as i64).into()));
        let floor = sin_enclosure(&angle.lo, &default_prec())
            .scale(&BigRational::new(999_999.into(), 1_000_000.into()));
        alpha.expect_exact()? >= &floor.lo
    };

    // Opposite direction a' = -a scaled into B_rho, captured with the
    // anchor 0 from the last d classes.
    let a_ub = norm_ub(&a)?;
    let a_prime = a.scale(&(&(-&rho) / &a_ub));
    let tail_classes: Vec<Vec<Point>> = family.classes[d..].to_vec();
    let (tail_picks, _) = very_colorful_caratheodory(&tail_classes, &Point::origin(2), &a_prime)?;

    let mut picks: Vec<usize> = cones[chosen].clone();
    picks.extend(tail_picks);
    let pts: Vec<Point> = picks
        .iter()
        .enumerate()
        .map(|(c, &i)| family.classes[c][i].clone())
        .collect();
    let radius = certified_origin_radius(2, &pts)?;

    // The guaranteed chain: r >= rho tan(alpha)/2 >= rho alpha / 2, and for
    // the best cone that clears the lemma constant with a wide margin. Any
    // failed link routes to the exhaustive safety net instead of panicking.
    let constructive_ok = chain_ok
        && radius.as_ref().is_some_and(|r| {
            let floor = &(&rho * &alpha) / &Scalar::from_int(2);
            // Allow the sqrt-enclosure slack on the certified radius.
            let slack = Scalar::ratio(1, 1_000_000);
            *r >= &floor - &slack && *r >= required
        });
    if !constructive_ok {
        return fallback_selection(family, &reduced, &required, Some((cones, chosen, a, alpha)));
    }
    let radius = radius.unwrap();

    let trace = ConeCoverTrace {
        cones,
        chosen,
        incenter: a,
        alpha,
        radius: radius.clone(),
        constructive: true,
    };
    let witness = Witness::Selection(
        picks
            .iter()
            .enumerate()
            .map(|(c, &i)| Selected { class: c, point: i, weight: None })
            .collect(),
    );
    let claim = Claim::Ball(Ball::new(Point::origin(2), radius)?);
    Ok(Certificate::new(CertKind::SteinitzBall, witness, claim)
        .with_trace(serde_json::to_value(&trace).map_err(|e| Error::Internal(e.to_string()))?))
}

/// True iff every elementary arc between consecutive generator directions
/// is contained in one of the cones (exact cross-product tests).
fn sweep_cover_check(family: &ColoredFamily, cones: &[Vec<usize>]) -> bool {
    let dirs: Vec<Point> = cones
        .iter()
        .flat_map(|g| {
            [family.classes[0][g[0]].clone(), family.classes[1][g[1]].clone()]
        })
        .collect();
    let mut order: Vec<usize> = (0..dirs.len()).collect();
    order.sort_by(|&i, &j| angle_cmp2(&dirs[i], &dirs[j]));
    order.dedup_by(|&mut i, &mut j| {
        cross2(&dirs[i], &dirs[j]).is_zero() && dirs[i].dot(&dirs[j]).is_positive()
    });
    let m = order.len();
    (0..m).all(|t| {
        let p = &dirs[order[t]];
        let q = &dirs[order[(t + 1) % m]];
        cones.iter().any(|g| {
            let (u, v) = (&family.classes[0][g[0]], &family.classes[1][g[1]]);
            let (u, v) = if cross2(u, v).is_positive() { (u, v) } else { (v, u) };
            let inside = |w: &Point| !cross2(u, w).is_negative() && !cross2(w, v).is_negative();
            inside(p) && inside(q)
        })
    })
}

fn angle_cmp2(a: &Point, b: &Point) -> std::cmp::Ordering {
    let half = |p: &Point| -> u8 {
        if p.0[1].is_positive() || (p.0[1].is_zero() && p.0[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cr = cross2(a, b);
        if cr.is_positive() {
            std::cmp::Ordering::Less
        } else if cr.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    })
}

/// Exhaustive safety net: search all rainbow tuples over the reduced
/// classes for the selection with the largest certified origin radius.
fn fallback_selection(
    family: &ColoredFamily,
    reduced: &[Vec<usize>],
    required: &Scalar,
    cone_data: Option<(Vec<Vec<usize>>, usize, Point, Scalar)>,
) -> Result<Certificate> {
    let d = family.dim;
    let mut best: Option<(Vec<usize>, Scalar)> = None;
    let mut choice = vec![0usize; 2 * d];
    'outer: loop {
        let picks: Vec<usize> = (0..2 * d).map(|c| reduced[c][choice[c]]).collect();
        let pts: Vec<Point> = picks
            .iter()
            .enumerate()
            .map(|(c, &i)| family.classes[c][i].clone())
            .collect();
        if let Some(r) = certified_origin_radius(d, &pts)? {
            if best.as_ref().is_none_or(|(_, b)| r > *b) {
                best = Some((picks, r));
            }
        }
        let mut c = 0;
        loop {
            if c == 2 * d {
                break 'outer;
            }
            choice[c] += 1;
            if choice[c] < reduced[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
    let Some((picks, radius)) = best else {
        return Err(Error::Internal(
            "no rainbow selection keeps the origin interior; preconditions violated".into(),
        ));
    };
    if radius < *required {
        return Err(Error::Internal(format!(
            "best rainbow radius {radius} fell below the guaranteed bound {required}"
        )));
    }
    let trace = cone_data.map(|(cones, chosen, incenter, alpha)| ConeCoverTrace {
        cones,
        chosen,
        incenter,
        alpha,
        radius: radius.clone(),
        constructive: false,
    });
    let witness = Witness::Selection(
        picks
            .iter()
            .enumerate()
            .map(|(c, &i)| Selected { class: c, point: i, weight: None })
            .collect(),
    );
    let claim = Claim::Ball(Ball::new(Point::origin(d), radius)?);
    let cert = Certificate::new(CertKind::SteinitzBall, witness, claim);
    Ok(match trace {
        Some(t) => cert
            .with_trace(serde_json::to_value(&t).map_err(|e| Error::Internal(e.to_string()))?),
        None => cert,
    })
}

// ---------------------------------------------------------------------------
// Theorem: volume version
// ---------------------------------------------------------------------------

/// Rainbow selection whose hull keeps `(1 - eps)` of `vol(K)`, using `d`
/// classes per vertex of a `(1 - eps)`-volume inscribed polytope of `K`.
pub fn thrifty_steinitz_volume(
    family: &ColoredFamily,
    body: &VPolytope,
    eps: &Scalar,
) -> Result<Certificate> {
    family.validate()?;
    body.validate()?;
    let d = family.dim;
    if body.dim != d {
        return Err(Error::DimensionMismatch { expected: d, got: body.dim });
    }
    let vol_k = convexops::volume(d, &body.vertices)?;
    if !vol_k.is_positive() {
        return Err(Error::PreconditionFailed("the shared body has zero volume".into()));
    }
    for (i, class) in family.classes.iter().enumerate() {
        for v in &body.vertices {
            if !in_convex_hull(class, v) {
                return Err(Error::PreconditionFailed(format!(
                    "class {i} does not contain the shared body in its hull"
                )));
            }
        }
    }
    let (inscribed, k) = approx::inscribed_poly(&approx::Body::VPolytope(body.clone()), eps, None)?;
    let m = family.classes.len();
    if m < d * k {
        return Err(Error::BudgetExceeded(format!(
            "volume target needs {} classes ({} per approximation vertex), got {m}; with fewer \
             classes than vertices the volume guarantee can genuinely fail",
            d * k,
            d
        )));
    }

    // Translate an interior point of the inscribed polytope to the origin.
    let nv = Scalar::from_int(inscribed.vertices.len() as i64);
    let center = inscribed
        .vertices
        .iter()
        .fold(Point::origin(d), |acc, p| acc.add(p))
        .scale(&nv.recip());
    let shifted_classes: Vec<Vec<Point>> = family
        .classes
        .iter()
        .map(|class| class.iter().map(|p| p.sub(&center)).collect())
        .collect();

    let mut picks: Vec<usize> = Vec::with_capacity(m);
    for (j, y) in inscribed.vertices.iter().enumerate() {
        let block: Vec<Vec<Point>> = shifted_classes[j * d..(j + 1) * d].to_vec();
        let target = y.sub(&center);
        let (block_picks, _) = very_colorful_caratheodory(&block, &Point::origin(d), &target)?;
        picks.extend(block_picks);
    }
    // Extra classes contribute their first point.
    picks.extend(std::iter::repeat_n(0, m - d * k));

    let pts: Vec<Point> = picks
        .iter()
        .enumerate()
        .map(|(c, &i)| family.classes[c][i].clone())
        .collect();
    let shifted_pts: Vec<Point> = pts.iter().map(|p| p.sub(&center)).collect();
    if !in_convex_hull(&shifted_pts, &Point::origin(d)) {
        return Err(Error::Internal(
            "selection lost the anchor; the separating-hyperplane argument failed".into(),
        ));
    }
    let vol_sel = convexops::volume(d, &pts)?;
    let ratio = &vol_sel / &vol_k;
    if &ratio + eps < Scalar::one() {
        return Err(Error::Internal(format!(
            "selection volume ratio {ratio} missed the 1 - eps target"
        )));
    }
    let witness = Witness::Selection(
        picks
            .iter()
            .enumerate()
            .map(|(c, &i)| Selected { class: c, point: i, weight: None })
            .collect(),
    );
    Ok(Certificate::new(CertKind::SteinitzVolume, witness, Claim::VolumeRatio(ratio)))
}

// ---------------------------------------------------------------------------
// Theorem: radius 1/(1+eps) version
// ---------------------------------------------------------------------------

/// Rainbow selection over `(k-1)d + 1` classes whose hull keeps
/// `B_{1/(1+eps)}(0)`, where `k` is the sandwich vertex count for `eps`.
pub fn steinitz_ball_eps(family: &ColoredFamily, eps: &Scalar) -> Result<Certificate> {
    let d = family.dim;
    let eps_r = eps.expect_exact()?.clone();
    if !eps_r.is_positive() {
        return Err(Error::PreconditionFailed("epsilon must be positive".into()));
    }
    let unit = Ball::new(Point::origin(d), Scalar::one())?;
    let (_, k) = approx::sandwich_bms(&approx::Body::Ball(unit), eps, None)?;
    let needed = (k - 1) * d + 1;
    check_family(family, needed, "the epsilon-ball Steinitz selection")?;
    let inner = Scalar::Exact(BigRational::one() / (BigRational::one() + &eps_r));

    if d == 1 {
        // One forced extreme point from the last class, the matching
        // opposite extreme from the first.
        let last = family.classes.len() - 1;
        let forced = (0..family.classes[last].len())
            .max_by_key(|&i| family.classes[last][i].0[0].abs())
            .unwrap();
        let to_right = family.classes[last][forced].0[0].is_positive();
        let other = if to_right {
            (0..family.classes[0].len())
                .min_by_key(|&i| family.classes[0][i].0[0].clone())
                .unwrap()
        } else {
            (0..family.classes[0].len())
                .max_by_key(|&i| family.classes[0][i].0[0].clone())
                .unwrap()
        };
        let witness = Witness::Selection(vec![
            Selected { class: 0, point: other, weight: None },
            Selected { class: last, point: forced, weight: None },
        ]);
        let claim = Claim::Ball(Ball::new(Point::origin(1), inner)?);
        return Ok(Certificate::new(CertKind::SteinitzBall, witness, claim));
    }
    if d != 2 {
        return Err(Error::Unsupported(
            "the epsilon-ball Steinitz construction covers dimensions 1-2".into(),
        ));
    }

    // Forced last vertex: the max-norm point of the last class, scaled onto
    // (or just inside) the unit circle; at least one point has norm >= 1.
    let last = family.classes.len() - 1;
    let forced = (0..family.classes[last].len())
        .max_by_key(|&i| family.classes[last][i].norm_sq())
        .unwrap();
    let x_star = &family.classes[last][forced];
    let y_last = x_star.scale(&norm_ub(x_star)?.recip());

    // Remaining sandwich vertices on the unit circle, phased so the forced
    // vertex replaces the one at its own direction.
    let phase = {
        let x = x_star.0[0].to_f64();
        let y = x_star.0[1].to_f64();
        y.atan2(x)
    };
    let mut poly = vec![y_last.clone()];
    for j in 1..k {
        let theta = phase + 2.0 * std::f64::consts::PI * (j as f64) / (k as f64);
        poly.push(approx::unit_point_near_angle(theta));
    }
    if !hull::ball_in_hull(2, &poly, &Point::origin(2), &inner)? {
        return Err(Error::Internal(
            "perturbed sandwich polygon lost the inner ball; epsilon margin too thin".into(),
        ));
    }

    let mut picks: Vec<usize> = Vec::with_capacity(needed);
    for j in 1..k {
        let block: Vec<Vec<Point>> = family.classes[(j - 1) * d..j * d].to_vec();
        let (block_picks, _) = very_colorful_caratheodory(&block, &Point::origin(2), &poly[j])?;
        picks.extend(block_picks);
    }
    picks.push(forced);

    let pts: Vec<Point> = picks
        .iter()
        .enumerate()
        .map(|(c, &i)| {
            let class = if c < needed - 1 { c + d - d } else { last };
            family.classes[class][i].clone()
        })
        .collect();
    if !in_convex_hull(&pts, &Point::origin(2)) {
        return Err(Error::Internal(
            "selection lost the anchor; the separating-hyperplane argument failed".into(),
        ));
    }
    if !hull::ball_in_hull(2, &pts, &Point::origin(2), &inner)? {
        return Err(Error::Internal("selection hull lost the inner ball".into()));
    }
    let witness = Witness::Selection(
        picks
            .iter()
            .enumerate()
            .map(|(c, &i)| Selected {
                class: if c < needed - 1 { c } else { last },
                point: i,
                weight: None,
            })
            .collect(),
    );
    let claim = Claim::Ball(Ball::new(Point::origin(2), inner)?);
    Ok(Certificate::new(CertKind::SteinitzBall, witness, claim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::steinitz_radius_constant;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&v| s(v)).collect())
    }

    fn ratio_pt(coords: &[(i64, i64)]) -> Point {
        Point(coords.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect())
    }

    fn diamond_class() -> Vec<Point> {
        vec![
            ratio_pt(&[(3, 2), (0, 1)]),
            ratio_pt(&[(-3, 2), (0, 1)]),
            ratio_pt(&[(0, 1), (3, 2)]),
            ratio_pt(&[(0, 1), (-3, 2)]),
        ]
    }

    #[test]
    fn colored_ball_diamond() {
        let family = ColoredFamily::new(2, vec![diamond_class(); 4]).unwrap();
        let cert = colored_steinitz_ball(&family).unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!("expected ball claim") };
        let bound = Scalar::Exact(steinitz_radius_constant(2, &default_prec()).hi);
        assert!(ball.radius >= bound, "radius {} below the lemma bound", ball.radius);
        let Witness::Selection(sel) = &cert.witness else { panic!("expected selection") };
        assert_eq!(sel.len(), 4);
        // The claimed ball really is inside the selection hull.
        let pts: Vec<Point> = sel
            .iter()
            .map(|s| family.classes[s.class][s.point].clone())
            .collect();
        assert!(hull::ball_in_hull(2, &pts, &ball.center, &ball.radius).unwrap());
    }

    #[test]
    fn colored_ball_1d_example() {
        let family = ColoredFamily::new(
            1,
            vec![vec![pt(&[-1]), pt(&[5])], vec![pt(&[-5]), pt(&[1])]],
        )
        .unwrap();
        let cert = colored_steinitz_ball(&family).unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!() };
        assert_eq!(ball.radius, s(1));
        let Witness::Selection(sel) = &cert.witness else { panic!() };
        let chosen: Vec<Point> = sel
            .iter()
            .map(|s| family.classes[s.class][s.point].clone())
            .collect();
        assert_eq!(chosen, vec![pt(&[-1]), pt(&[1])]);
    }

    #[test]
    fn colored_ball_rejects_bad_class() {
        let mut classes = vec![diamond_class(); 4];
        classes[2] = vec![pt(&[1, 0]), pt(&[2, 0]), pt(&[1, 1])]; // misses the ball
        let family = ColoredFamily::new(2, classes).unwrap();
        assert!(matches!(
            colored_steinitz_ball(&family),
            Err(Error::PreconditionFailed(_))
        ));
    }

    fn square_vertices() -> Vec<Point> {
        vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])]
    }

    #[test]
    fn thrifty_square_half() {
        let body = VPolytope::new(2, square_vertices()).unwrap();
        let family = ColoredFamily::new(2, vec![square_vertices(); 6]).unwrap();
        let cert = thrifty_steinitz_volume(&family, &body, &Scalar::ratio(1, 2)).unwrap();
        let Claim::VolumeRatio(r) = &cert.claim else { panic!() };
        assert!(*r >= Scalar::ratio(1, 2));
    }

    #[test]
    fn thrifty_monochromatic_full() {
        let body = VPolytope::new(2, square_vertices()).unwrap();
        let family = ColoredFamily::new(2, vec![square_vertices(); 8]).unwrap();
        let cert = thrifty_steinitz_volume(&family, &body, &Scalar::zero()).unwrap();
        let Claim::VolumeRatio(r) = &cert.claim else { panic!() };
        assert_eq!(*r, s(1));
    }

    #[test]
    fn thrifty_budget_failure() {
        // Fewer classes than approximation vertices: the guarantee may
        // genuinely fail, so the pipeline refuses.
        let body = VPolytope::new(2, square_vertices()).unwrap();
        let family = ColoredFamily::new(2, vec![square_vertices(); 3]).unwrap();
        assert!(matches!(
            thrifty_steinitz_volume(&family, &body, &Scalar::zero()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn ball_eps_2d() {
        // eps = 1/20 needs k = 11, hence 21 classes; use a tangent polygon's
        // vertex set (hull strictly contains the unit disk) for each class.
        let disk = Ball::new(Point::origin(2), Scalar::one()).unwrap();
        let (outer, _) =
            approx::circumscribed_poly(&approx::Body::Ball(disk), &Scalar::ratio(1, 50), None)
                .unwrap();
        let class = hull::vertices_of(&outer).unwrap();
        let family = ColoredFamily::new(2, vec![class; 21]).unwrap();
        let cert = steinitz_ball_eps(&family, &Scalar::ratio(1, 20)).unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!() };
        assert_eq!(ball.radius, Scalar::ratio(20, 21));
        let Witness::Selection(sel) = &cert.witness else { panic!() };
        assert_eq!(sel.len(), 21);
        let pts: Vec<Point> = sel
            .iter()
            .map(|s| family.classes[s.class][s.point].clone())
            .collect();
        assert!(hull::ball_in_hull(2, &pts, &Point::origin(2), &ball.radius).unwrap());
    }

    #[test]
    fn ball_eps_1d() {
        let family = ColoredFamily::new(
            1,
            vec![vec![pt(&[-2]), pt(&[3])], vec![pt(&[-3]), pt(&[2])]],
        )
        .unwrap();
        let cert = steinitz_ball_eps(&family, &Scalar::ratio(1, 4)).unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!() };
        assert_eq!(ball.radius, Scalar::ratio(4, 5));
    }
}
