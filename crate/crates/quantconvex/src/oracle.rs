//! Independent verification machinery.
//!
//! Nothing here calls the simplex solver, the subset-enumeration hull code,
//! or the selection pipelines: feasibility goes through Fourier-Motzkin
//! elimination, planar hulls through Andrew's monotone chain, spatial facets
//! through cross products, and volumes through the divergence-theorem cone
//! sum. Certificate verification is built on these disjoint code paths so a
//! bug in the producers cannot silently vouch for itself.

use serde::{Deserialize, Serialize};

use crate::core::{
    Certificate, CertKind, Claim, ColoredFamily, HalfSpace, PartitionWitness, Point, Selected,
    VPolytope, Witness,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tverberg::QuantSet;

/// Fourier-Motzkin feasibility of `a . x <= b` systems.
///
/// Eliminates one variable at a time by pairing opposite-sign rows; after
/// the last variable the system is feasible iff every residual bound is
/// nonnegative. Exponential in the worst case, fine at verification scale.
pub fn fm_feasible(constraints: &[(Vec<Scalar>, Scalar)]) -> bool {
    let nvars = constraints.first().map_or(0, |(a, _)| a.len());
    let mut rows = dedup_rows(constraints.to_vec());
    let mut alive: Vec<usize> = (0..nvars).collect();
    while let Some(pick) = alive.iter().copied().min_by_key(|&v| {
        // Classic min-product ordering keeps the pairing blowup in check.
        let pos = rows.iter().filter(|(a, _)| a[v].is_positive()).count();
        let neg = rows.iter().filter(|(a, _)| a[v].is_negative()).count();
        pos * neg
    }) {
        alive.retain(|&v| v != pick);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for (a, b) in rows {
            let c = a[pick].clone();
            if c.is_positive() {
                pos.push((a, b, c));
            } else if c.is_negative() {
                neg.push((a, b, c));
            } else {
                rest.push((a, b));
            }
        }
        for (ap, bp, cp) in &pos {
            for (an, bn, cn) in &neg {
                // cp * (an row) - cn * (ap row) eliminates the picked
                // variable with a positive multiple of each side (cn < 0).
                let a: Vec<Scalar> = (0..ap.len())
                    .map(|j| &(&ap[j] * &-cn) + &(&an[j] * cp))
                    .collect();
                let b = &(bp * &-cn) + &(bn * cp);
                rest.push((a, b));
            }
        }
        rows = dedup_rows(rest);
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// Scales each row so its largest coefficient magnitude is 1 and keeps only
/// the tightest bound per coefficient vector.
fn dedup_rows(rows: Vec<(Vec<Scalar>, Scalar)>) -> Vec<(Vec<Scalar>, Scalar)> {
    let mut tight: std::collections::BTreeMap<Vec<Scalar>, Scalar> = Default::default();
    let mut trivial = Vec::new();
    for (mut a, mut b) in rows {
        match a.iter().map(|c| c.abs()).max().filter(|m| !m.is_zero()) {
            Some(m) => {
                for c in &mut a {
                    *c = &*c / &m;
                }
                b = &b / &m;
                match tight.get_mut(&a) {
                    Some(existing) => {
                        if b < *existing {
                            *existing = b;
                        }
                    }
                    None => {
                        tight.insert(a, b);
                    }
                }
            }
            None => trivial.push((a, b)),
        }
    }
    trivial.extend(tight.into_iter().map(|(a, b)| (a, b)));
    trivial
}

/// Membership `x in conv(points)` decided by eliminating the weight
/// variables with Fourier-Motzkin. Intended for small point sets.
pub fn fm_membership(points: &[Point], x: &Point) -> bool {
    let n = points.len();
    if n == 0 {
        return false;
    }
    let d = x.dim();
    let mut rows: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
    // lambda_i >= 0
    for i in 0..n {
        let mut a = vec![Scalar::zero(); n];
        a[i] = Scalar::from_int(-1);
        rows.push((a, Scalar::zero()));
    }
    // sum lambda = 1 as a pair of inequalities
    rows.push((vec![Scalar::one(); n], Scalar::one()));
    rows.push((vec![Scalar::from_int(-1); n], Scalar::from_int(-1)));
    // sum lambda_i p_i = x, coordinate-wise
    for coord in 0..d {
        let a: Vec<Scalar> = points.iter().map(|p| p.0[coord].clone()).collect();
        rows.push((a.clone(), x.0[coord].clone()));
        rows.push((a.iter().map(|c| -c).collect(), -&x.0[coord]));
    }
    fm_feasible(&rows)
}

fn cross2(o: &Point, a: &Point, b: &Point) -> Scalar {
    let (ax, ay) = (&a.0[0] - &o.0[0], &a.0[1] - &o.0[1]);
    let (bx, by) = (&b.0[0] - &o.0[0], &b.0[1] - &o.0[1]);
    &(&ax * &by) - &(&ay * &bx)
}

/// Convex hull of planar points in counterclockwise order (Andrew's
/// monotone chain), strictly convex: no collinear boundary points kept.
pub fn monotone_chain(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn cross3(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    vec![
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

/// Outward facet half-spaces of a full-dimensional 3D point set, found by
/// testing every triple's cross-product normal against all points.
pub fn facets3(points: &[Point]) -> Vec<HalfSpace> {
    let n = points.len();
    let mut out: Vec<HalfSpace> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let u = points[j].sub(&points[i]);
                let v = points[k].sub(&points[i]);
                let normal = cross3(&u.0, &v.0);
                if normal.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let np = Point(normal);
                let b = np.dot(&points[i]);
                let mut lo = false;
                let mut hi = false;
                for p in points {
                    let v = np.dot(p);
                    if v < b {
                        lo = true;
                    } else if v > b {
                        hi = true;
                    }
                }
                let h = match (lo, hi) {
                    (_, false) => HalfSpace { a: np.0, b },
                    (false, true) => {
                        HalfSpace { a: np.0.iter().map(|c| -c).collect(), b: -&b }
                    }
                    (true, true) => continue,
                };
                let h = h.canonical();
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
    }
    out.sort_by(|x, y| x.a.cmp(&y.a).then_with(|| x.b.cmp(&y.b)));
    out
}

/// Exact hull volume by a route disjoint from the triangulation code:
/// shoelace over the monotone chain in the plane, and in space the
/// divergence-theorem sum of signed origin cones over facet fans.
pub fn volume_oracle(dim: usize, points: &[Point]) -> Result<Scalar> {
    match dim {
        1 => {
            let lo = points.iter().min().ok_or(Error::EmptyPolytope)?;
            let hi = points.iter().max().ok_or(Error::EmptyPolytope)?;
            Ok(&hi.0[0] - &lo.0[0])
        }
        2 => {
            let hull = monotone_chain(points);
            if hull.len() < 3 {
                return Ok(Scalar::zero());
            }
            let mut twice = Scalar::zero();
            for i in 0..hull.len() {
                let a = &hull[i];
                let b = &hull[(i + 1) % hull.len()];
                twice = &twice + &(&(&a.0[0] * &b.0[1]) - &(&a.0[1] * &b.0[0]));
            }
            Ok(&twice.abs() / &Scalar::from_int(2))
        }
        3 => {
            let fs = facets3(points);
            // Degenerate sets: no facets (collinear) or one plane holding
            // every point (coplanar) enclose no volume.
            if fs.is_empty()
                || fs
                    .iter()
                    .any(|f| points.iter().all(|p| f.eval(p).is_zero()))
            {
                return Ok(Scalar::zero());
            }
            let mut six_vol = Scalar::zero();
            for f in &fs {
                // Project the facet onto the coordinate plane where the
                // normal is largest, hull it there, lift the cyclic order
                // back, and fan into signed origin tetrahedra.
                let on: Vec<Point> =
                    points.iter().filter(|p| f.eval(p).is_zero()).cloned().collect();
                let drop = (0..3)
                    .max_by_key(|&j| f.a[j].abs())
                    .expect("nonzero normal");
                let proj: Vec<Point> = on
                    .iter()
                    .map(|p| {
                        Point(
                            (0..3)
                                .filter(|&j| j != drop)
                                .map(|j| p.0[j].clone())
                                .collect(),
                        )
                    })
                    .collect();
                let ring2 = monotone_chain(&proj);
                if ring2.len() < 3 {
                    continue;
                }
                let ring: Vec<Point> = ring2
                    .iter()
                    .map(|q| {
                        on.iter()
                            .find(|p| {
                                let mut it = (0..3).filter(|&j| j != drop);
                                let j0 = it.next().unwrap();
                                let j1 = it.next().unwrap();
                                p.0[j0] == q.0[0] && p.0[j1] == q.0[1]
                            })
                            .expect("projected point has a source")
                            .clone()
                    })
                    .collect();
                // Orient the ring so its cross product agrees with the
                // outward normal.
                let u = ring[1].sub(&ring[0]);
                let v = ring[2].sub(&ring[0]);
                let tri_normal = Point(cross3(&u.0, &v.0));
                let outward = tri_normal.dot_slice(&f.a).is_positive();
                let signed_det = |a: &Point, b: &Point, c: &Point| {
                    let m: Vec<Vec<Scalar>> = vec![a.0.clone(), b.0.clone(), c.0.clone()];
                    crate::convexops::linalg::det(&m)
                };
                for t in 1..(ring.len() - 1) {
                    let dv = signed_det(&ring[0], &ring[t], &ring[t + 1]);
                    six_vol = if outward { &six_vol + &dv } else { &six_vol - &dv };
                }
            }
            Ok(&six_vol.abs() / &Scalar::from_int(6))
        }
        d => Err(Error::Unsupported(format!("oracle volume covers dimensions 1-3, got {d}"))),
    }
}

/// Squared diameter by direct pairwise scan.
pub fn diameter_sq_oracle(points: &[Point]) -> Result<Scalar> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let mut best = Scalar::zero();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = p.sub(q).norm_sq();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// A problem instance a certificate can be checked against. The `kind` tag
/// doubles as the on-disk JSON format for generated instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    /// Colored point classes; `target` is the membership query point for
    /// selection certificates and is ignored by the Steinitz ball check.
    Colored {
        family: ColoredFamily,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<Point>,
    },
    /// Colored point classes plus the reference body for volume claims.
    ColoredWithBody { family: ColoredFamily, body: VPolytope },
    /// One half-space family (intersection is the convex body).
    Halfspaces { dim: usize, halfspaces: Vec<HalfSpace> },
    /// Several half-space families for rainbow selections.
    HalfspaceFamilies { dim: usize, families: Vec<Vec<HalfSpace>> },
    /// Plain points, each its own singleton set, to split into `parts`.
    Points { dim: usize, parts: usize, points: Vec<Point> },
    /// Quantitative Tverberg sets to split into `parts`.
    QuantSets { dim: usize, parts: usize, sets: Vec<QuantSet> },
    /// Color classes of quantitative sets for the colorful pipeline.
    ColorfulQuantSets { dim: usize, parts: usize, classes: Vec<Vec<QuantSet>> },
}

impl Instance {
    pub fn dim(&self) -> usize {
        match self {
            Instance::Colored { family, .. } => family.dim,
            Instance::ColoredWithBody { family, .. } => family.dim,
            Instance::Halfspaces { dim, .. }
            | Instance::HalfspaceFamilies { dim, .. }
            | Instance::Points { dim, .. }
            | Instance::QuantSets { dim, .. }
            | Instance::ColorfulQuantSets { dim, .. } => *dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Instance::Colored { family, target } => {
                family.validate()?;
                if let Some(t) = target {
                    t.validate(family.dim)?;
                }
            }
            Instance::ColoredWithBody { family, body } => {
                family.validate()?;
                body.validate()?;
                if body.dim != family.dim {
                    return Err(Error::DimensionMismatch {
                        expected: family.dim,
                        got: body.dim,
                    });
                }
            }
            Instance::Halfspaces { dim, halfspaces } => {
                for h in halfspaces {
                    h.validate(*dim)?;
                }
            }
            Instance::HalfspaceFamilies { dim, families } => {
                for fam in families {
                    if fam.is_empty() {
                        return Err(Error::Parse("every family must be nonempty".into()));
                    }
                    for h in fam {
                        h.validate(*dim)?;
                    }
                }
            }
            Instance::Points { dim, parts, points } => {
                if *parts == 0 {
                    return Err(Error::Parse("part count must be >= 1".into()));
                }
                for p in points {
                    p.validate(*dim)?;
                }
            }
            Instance::QuantSets { dim, parts, sets } => {
                if *parts == 0 {
                    return Err(Error::Parse("part count must be >= 1".into()));
                }
                for s in sets {
                    s.center.validate(*dim)?;
                    if s.points.is_empty() {
                        return Err(Error::Parse("every set needs at least one point".into()));
                    }
                    for p in &s.points {
                        p.validate(*dim)?;
                    }
                }
            }
            Instance::ColorfulQuantSets { dim, parts, classes } => {
                if *parts == 0 {
                    return Err(Error::Parse("part count must be >= 1".into()));
                }
                for class in classes {
                    for s in class {
                        s.center.validate(*dim)?;
                        if s.points.is_empty() {
                            return Err(Error::Parse("every set needs at least one point".into()));
                        }
                        for p in &s.points {
                            p.validate(*dim)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Whether `B_radius(center)` lies inside `conv(points)`, decided without
/// square roots: each supporting line or plane must keep the center on the
/// inner side with squared clearance at least `radius^2`.
pub fn ball_in_hull_oracle(
    dim: usize,
    points: &[Point],
    center: &Point,
    radius: &Scalar,
) -> Result<bool> {
    if radius.is_negative() {
        return Ok(false);
    }
    if radius.is_zero() {
        return Ok(fm_membership(points, center));
    }
    match dim {
        1 => {
            let lo = points.iter().min().ok_or(Error::EmptyPolytope)?;
            let hi = points.iter().max().ok_or(Error::EmptyPolytope)?;
            Ok(&lo.0[0] <= &(&center.0[0] - radius) && &(&center.0[0] + radius) <= &hi.0[0])
        }
        2 => {
            let hull = monotone_chain(points);
            if hull.len() < 3 {
                return Ok(false);
            }
            let r2 = radius * radius;
            for i in 0..hull.len() {
                let u = &hull[i];
                let v = &hull[(i + 1) % hull.len()];
                // Signed doubled area: positive keeps the center left of the
                // directed edge, and its square against the edge length
                // squared encodes the distance bound exactly.
                let s = cross2(u, v, center);
                if s.is_negative() {
                    return Ok(false);
                }
                if &(&s * &s) < &(&r2 * &v.sub(u).norm_sq()) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        3 => {
            let fs = facets3(points);
            if fs.is_empty() || fs.iter().any(|f| points.iter().all(|p| f.eval(p).is_zero())) {
                return Ok(false);
            }
            let r2 = radius * radius;
            for f in &fs {
                let slack = -&f.eval(center);
                if slack.is_negative() {
                    return Ok(false);
                }
                let norm_sq: Scalar = f.a.iter().map(|c| c * c).sum();
                if &(&slack * &slack) < &(&r2 * &norm_sq) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        d => Err(Error::Unsupported(format!(
            "oracle ball containment covers dimensions 1-3, got {d}"
        ))),
    }
}

/// Exact shape classification of a low-dimensional H-polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HPolyShape {
    Empty,
    Unbounded,
    /// Bounded and nonempty, with every vertex listed (sorted, deduped).
    Bounded(Vec<Point>),
}

/// Classifies `{x : a_i . x <= b_i}` and enumerates its vertices when it is
/// a polytope. Independent of the simplex code: feasibility goes through
/// Fourier-Motzkin, boundedness through an exact recession-ray scan, and
/// vertices through pairwise line intersections filtered by all constraints.
pub fn hpoly_shape(dim: usize, halfspaces: &[HalfSpace]) -> Result<HPolyShape> {
    match dim {
        1 => {
            let mut lo: Option<Scalar> = None;
            let mut hi: Option<Scalar> = None;
            for h in halfspaces {
                let bound = &h.b / &h.a[0];
                if h.a[0].is_positive() {
                    hi = Some(match hi {
                        Some(v) => v.min(bound),
                        None => bound,
                    });
                } else {
                    lo = Some(match lo {
                        Some(v) => v.max(bound),
                        None => bound,
                    });
                }
            }
            match (lo, hi) {
                (Some(l), Some(h)) if l <= h => {
                    Ok(HPolyShape::Bounded(vec![Point(vec![l]), Point(vec![h])]))
                }
                (Some(_), Some(_)) => Ok(HPolyShape::Empty),
                _ => Ok(HPolyShape::Unbounded),
            }
        }
        2 => {
            if halfspaces.is_empty() {
                return Ok(HPolyShape::Unbounded);
            }
            let rows: Vec<(Vec<Scalar>, Scalar)> =
                halfspaces.iter().map(|h| (h.a.clone(), h.b.clone())).collect();
            if !fm_feasible(&rows) {
                return Ok(HPolyShape::Empty);
            }
            // A nonempty planar polyhedron is unbounded iff some nonzero
            // recession ray y has a_i . y <= 0 for all i. If that cone is
            // nontrivial it contains a ray orthogonal or opposite to one of
            // the normals, so scanning those candidates is exact.
            for h in halfspaces {
                let (a0, a1) = (&h.a[0], &h.a[1]);
                let candidates = [
                    Point(vec![-a1, a0.clone()]),
                    Point(vec![a1.clone(), -a0]),
                    Point(vec![-a0, -a1]),
                ];
                for y in &candidates {
                    if halfspaces.iter().all(|g| !y.dot_slice(&g.a).is_positive()) {
                        return Ok(HPolyShape::Unbounded);
                    }
                }
            }
            let mut verts: Vec<Point> = Vec::new();
            for i in 0..halfspaces.len() {
                for j in (i + 1)..halfspaces.len() {
                    let (p, q) = (&halfspaces[i], &halfspaces[j]);
                    let det = &(&p.a[0] * &q.a[1]) - &(&p.a[1] * &q.a[0]);
                    if det.is_zero() {
                        continue;
                    }
                    let x = &(&(&p.b * &q.a[1]) - &(&p.a[1] * &q.b)) / &det;
                    let y = &(&(&p.a[0] * &q.b) - &(&p.b * &q.a[0])) / &det;
                    let v = Point(vec![x, y]);
                    if halfspaces.iter().all(|h| h.contains(&v)) {
                        verts.push(v);
                    }
                }
            }
            verts.sort();
            verts.dedup();
            if verts.is_empty() {
                // Feasible with no recession ray must have a vertex.
                return Err(Error::Internal("bounded planar polytope without vertices".into()));
            }
            Ok(HPolyShape::Bounded(verts))
        }
        d => Err(Error::Unsupported(format!(
            "oracle H-polytope shapes cover dimensions 1-2, got {d}"
        ))),
    }
}

fn bounded_vertices(
    dim: usize,
    halfspaces: &[HalfSpace],
    what: &str,
    notes: &mut Vec<String>,
) -> Result<Option<Vec<Point>>> {
    match hpoly_shape(dim, halfspaces)? {
        HPolyShape::Bounded(v) => Ok(Some(v)),
        HPolyShape::Empty => {
            notes.push(format!("{what} is empty"));
            Ok(None)
        }
        HPolyShape::Unbounded => {
            notes.push(format!("{what} is unbounded"));
            Ok(None)
        }
    }
}

/// Outcome of a certificate check: `pass` with an empty note list, or a
/// note naming every violated condition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub notes: Vec<String>,
}

fn expect_selection<'a>(cert: &'a Certificate) -> Result<&'a [Selected]> {
    match &cert.witness {
        Witness::Selection(sel) => Ok(sel),
        _ => Err(Error::PreconditionFailed("certificate needs a selection witness".into())),
    }
}

fn expect_partition<'a>(cert: &'a Certificate) -> Result<&'a PartitionWitness> {
    match &cert.witness {
        Witness::Partition(w) => Ok(w),
        _ => Err(Error::PreconditionFailed("certificate needs a partition witness".into())),
    }
}

/// Resolves selection picks against the family; invalid indices become
/// notes and `None`.
fn selection_points(
    sel: &[Selected],
    family: &ColoredFamily,
    notes: &mut Vec<String>,
) -> Option<Vec<Point>> {
    let mut pts = Vec::with_capacity(sel.len());
    for (i, s) in sel.iter().enumerate() {
        match family.classes.get(s.class).and_then(|c| c.get(s.point)) {
            Some(p) => pts.push(p.clone()),
            None => {
                notes.push(format!("pick {i} references class {}, point {} out of range", s.class, s.point));
                return None;
            }
        }
    }
    Some(pts)
}

/// Requires the selection to use every color class exactly once.
fn check_one_per_class(sel: &[Selected], class_count: usize, notes: &mut Vec<String>) {
    let mut seen = vec![false; class_count];
    for s in sel {
        if s.class < class_count {
            if seen[s.class] {
                notes.push(format!("class {} selected more than once", s.class));
            }
            seen[s.class] = true;
        }
    }
    if sel.len() != class_count || seen.iter().any(|&b| !b) {
        notes.push(format!(
            "selection must use each of the {class_count} classes exactly once, got {} picks",
            sel.len()
        ));
    }
}

fn claim_ball<'a>(cert: &'a Certificate, notes: &mut Vec<String>) -> Option<&'a crate::core::Ball> {
    match &cert.claim {
        Claim::Ball(b) => Some(b),
        _ => {
            notes.push("claim must be a ball".into());
            None
        }
    }
}

fn claim_ratio<'a>(cert: &'a Certificate, notes: &mut Vec<String>) -> Option<&'a Scalar> {
    match &cert.claim {
        Claim::VolumeRatio(r) => Some(r),
        _ => {
            notes.push("claim must be a volume ratio".into());
            None
        }
    }
}

/// Checks a certificate against its instance with code paths disjoint from
/// every producer. Returns `Err` only when the certificate and instance
/// shapes are structurally incompatible; every value-level violation is a
/// note in the report instead.
pub fn verify(cert: &Certificate, instance: &Instance) -> Result<VerifyReport> {
    instance.validate()?;
    let dim = instance.dim();
    let mut notes: Vec<String> = Vec::new();
    match (cert.kind, instance) {
        (CertKind::CaratheodorySelection, Instance::Colored { family, target }) => {
            let target = target.as_ref().ok_or_else(|| {
                Error::PreconditionFailed("selection instance needs a target point".into())
            })?;
            let sel = expect_selection(cert)?;
            if sel.len() > dim + 1 {
                notes.push(format!(
                    "selection has {} points, above the Caratheodory bound {}",
                    sel.len(),
                    dim + 1
                ));
            }
            let mut keys: Vec<(usize, usize)> = sel.iter().map(|s| (s.class, s.point)).collect();
            keys.sort_unstable();
            keys.dedup();
            if keys.len() != sel.len() {
                notes.push("selection repeats a point".into());
            }
            if let Some(ball) = claim_ball(cert, &mut notes) {
                if !ball.radius.is_zero() {
                    notes.push("membership claim must have radius zero".into());
                }
                if &ball.center != target {
                    notes.push("claimed center differs from the instance target".into());
                }
            }
            if let Some(pts) = selection_points(sel, family, &mut notes) {
                if !fm_membership(&pts, target) {
                    notes.push("target is not in the convex hull of the selection".into());
                }
                if sel.iter().all(|s| s.weight.is_some()) {
                    let weights: Vec<Scalar> =
                        sel.iter().map(|s| s.weight.clone().unwrap()).collect();
                    if weights.iter().any(|w| w.is_negative()) {
                        notes.push("selection weight is negative".into());
                    }
                    let total: Scalar = weights.iter().cloned().sum();
                    if total != Scalar::one() {
                        notes.push("selection weights do not sum to one".into());
                    }
                    let mut combo = Point::origin(dim);
                    for (w, p) in weights.iter().zip(&pts) {
                        combo = combo.add(&p.scale(w));
                    }
                    if &combo != target {
                        notes.push("selection weights do not recombine to the target".into());
                    }
                }
            }
        }
        (CertKind::SteinitzBall, Instance::Colored { family, .. }) => {
            let sel = expect_selection(cert)?;
            check_one_per_class(sel, family.classes.len(), &mut notes);
            if let (Some(ball), Some(pts)) =
                (claim_ball(cert, &mut notes).cloned(), selection_points(sel, family, &mut notes))
            {
                if !ball_in_hull_oracle(dim, &pts, &ball.center, &ball.radius)? {
                    notes.push("claimed ball is not inside the selection hull".into());
                }
            }
        }
        (CertKind::SteinitzVolume, Instance::ColoredWithBody { family, body }) => {
            let sel = expect_selection(cert)?;
            check_one_per_class(sel, family.classes.len(), &mut notes);
            if let (Some(ratio), Some(pts)) =
                (claim_ratio(cert, &mut notes).cloned(), selection_points(sel, family, &mut notes))
            {
                let reference = volume_oracle(dim, &body.vertices)?;
                if reference.is_zero() {
                    notes.push("reference body has zero volume".into());
                } else if volume_oracle(dim, &pts)? != &ratio * &reference {
                    notes.push("claimed volume ratio does not match the selection hull".into());
                }
            }
        }
        (CertKind::HellyVolume, Instance::Halfspaces { halfspaces, .. }) => {
            let idxs = expect_subfamily(cert)?;
            check_subfamily_indices(idxs, halfspaces.len(), &mut notes);
            if let Some(ratio) = claim_ratio(cert, &mut notes).cloned() {
                let full = bounded_vertices(dim, halfspaces, "the full intersection", &mut notes)?;
                let sub: Vec<HalfSpace> = idxs
                    .iter()
                    .filter_map(|&i| halfspaces.get(i).cloned())
                    .collect();
                let part = bounded_vertices(dim, &sub, "the subfamily intersection", &mut notes)?;
                if let (Some(fv), Some(sv)) = (full, part) {
                    let v_full = volume_oracle(dim, &fv)?;
                    if v_full.is_zero() {
                        notes.push("the full intersection has zero volume".into());
                    } else if volume_oracle(dim, &sv)? != &ratio * &v_full {
                        notes.push("claimed volume ratio does not match the subfamily".into());
                    }
                }
            }
        }
        (CertKind::HellyDiameter, Instance::Halfspaces { halfspaces, .. }) => {
            let idxs = expect_subfamily(cert)?;
            check_subfamily_indices(idxs, halfspaces.len(), &mut notes);
            let ratio = match &cert.claim {
                Claim::DiameterRatioSq(r) => Some(r.clone()),
                _ => {
                    notes.push("claim must be a squared diameter ratio".into());
                    None
                }
            };
            if let Some(ratio) = ratio {
                let full = bounded_vertices(dim, halfspaces, "the full intersection", &mut notes)?;
                let sub: Vec<HalfSpace> = idxs
                    .iter()
                    .filter_map(|&i| halfspaces.get(i).cloned())
                    .collect();
                let part = bounded_vertices(dim, &sub, "the subfamily intersection", &mut notes)?;
                if let (Some(fv), Some(sv)) = (full, part) {
                    let d_full = diameter_sq_oracle(&fv)?;
                    if d_full.is_zero() {
                        notes.push("the full intersection has zero diameter".into());
                    } else if diameter_sq_oracle(&sv)? != &ratio * &d_full {
                        notes.push("claimed diameter ratio does not match the subfamily".into());
                    }
                }
            }
        }
        (CertKind::ColorfulHelly, Instance::HalfspaceFamilies { families, .. }) => {
            let choice = match &cert.witness {
                Witness::RainbowChoice(c) => c,
                _ => {
                    return Err(Error::PreconditionFailed(
                        "certificate needs a rainbow-choice witness".into(),
                    ))
                }
            };
            if choice.len() != families.len() {
                notes.push(format!(
                    "rainbow choice has {} entries for {} families",
                    choice.len(),
                    families.len()
                ));
            }
            for (i, (&c, fam)) in choice.iter().zip(families).enumerate() {
                if c >= fam.len() {
                    notes.push(format!("family {i} choice {c} is out of range"));
                }
            }
            if let Some(ratio) = claim_ratio(cert, &mut notes).cloned() {
                if notes.is_empty() {
                    let rainbow: Vec<HalfSpace> = choice
                        .iter()
                        .zip(families)
                        .map(|(&c, fam)| fam[c].clone())
                        .collect();
                    let rv =
                        bounded_vertices(dim, &rainbow, "the rainbow intersection", &mut notes)?;
                    let mut reference: Option<Scalar> = None;
                    for (i, fam) in families.iter().enumerate() {
                        match bounded_vertices(
                            dim,
                            fam,
                            &format!("family {i} intersection"),
                            &mut notes,
                        )? {
                            Some(v) => {
                                let vol = volume_oracle(dim, &v)?;
                                reference = Some(match reference {
                                    None => vol,
                                    Some(prev) => prev.max(vol),
                                });
                            }
                            None => break,
                        }
                    }
                    if let (Some(rv), Some(reference)) = (rv, reference) {
                        if reference.is_zero() {
                            notes.push("every family intersection has zero volume".into());
                        } else if volume_oracle(dim, &rv)? != &ratio * &reference {
                            notes.push(
                                "claimed volume ratio does not match the rainbow choice".into(),
                            );
                        }
                    }
                }
            }
        }
        (CertKind::Tverberg, Instance::Points { parts, points, .. }) => {
            let sets: Vec<Vec<Point>> = points.iter().map(|p| vec![p.clone()]).collect();
            verify_partition_witness(cert, dim, *parts, &sets, None, &mut notes)?;
        }
        (CertKind::Tverberg, Instance::QuantSets { parts, sets, .. }) => {
            let sets: Vec<Vec<Point>> = sets.iter().map(|s| s.points.clone()).collect();
            verify_partition_witness(cert, dim, *parts, &sets, None, &mut notes)?;
        }
        (CertKind::ColorfulTverberg, Instance::ColorfulQuantSets { parts, classes, .. }) => {
            let n = classes.first().map_or(0, |c| c.len());
            let mut sets: Vec<Vec<Point>> = Vec::new();
            for class in classes {
                if class.len() != n {
                    return Err(Error::PreconditionFailed(
                        "color classes must have equal size".into(),
                    ));
                }
                for s in class {
                    sets.push(s.points.clone());
                }
            }
            verify_partition_witness(cert, dim, *parts, &sets, Some(n), &mut notes)?;
        }
        _ => {
            return Err(Error::PreconditionFailed(format!(
                "instance shape does not fit certificate kind {:?}",
                cert.kind
            )))
        }
    }
    Ok(VerifyReport { pass: notes.is_empty(), notes })
}

fn expect_subfamily<'a>(cert: &'a Certificate) -> Result<&'a [usize]> {
    match &cert.witness {
        Witness::Subfamily(idxs) => Ok(idxs),
        _ => Err(Error::PreconditionFailed("certificate needs a subfamily witness".into())),
    }
}

fn check_subfamily_indices(idxs: &[usize], len: usize, notes: &mut Vec<String>) {
    let mut sorted = idxs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != idxs.len() {
        notes.push("subfamily repeats an index".into());
    }
    if idxs.iter().any(|&i| i >= len) {
        notes.push("subfamily index out of range".into());
    }
    if idxs.is_empty() {
        notes.push("subfamily is empty".into());
    }
}

/// Shared checks for both Tverberg kinds. `sets` is flattened; in colorful
/// mode `colorful = Some(n)` with `n` sets per class, and the flat id of
/// class `i`, set `j` is `i * n + j`, matching the `unused_sets` encoding.
fn verify_partition_witness(
    cert: &Certificate,
    dim: usize,
    m: usize,
    sets: &[Vec<Point>],
    colorful: Option<usize>,
    notes: &mut Vec<String>,
) -> Result<()> {
    let w = expect_partition(cert)?;
    let mut pick_points: Vec<Option<Point>> = Vec::with_capacity(w.picks.len());
    let mut keys: Vec<usize> = Vec::with_capacity(w.picks.len());
    for (i, pick) in w.picks.iter().enumerate() {
        let key = if let Some(n_per_class) = colorful {
            match pick.class {
                Some(c) => c * n_per_class + pick.set,
                None => {
                    notes.push(format!("pick {i} is missing its color class"));
                    pick_points.push(None);
                    continue;
                }
            }
        } else {
            if pick.class.is_some() {
                notes.push(format!("pick {i} carries a color class in a colorless instance"));
            }
            pick.set
        };
        match sets.get(key).and_then(|s| s.get(pick.point)) {
            Some(p) => {
                keys.push(key);
                pick_points.push(Some(p.clone()));
            }
            None => {
                notes.push(format!("pick {i} is out of range"));
                pick_points.push(None);
            }
        }
    }
    let mut sorted_keys = keys.clone();
    sorted_keys.sort_unstable();
    sorted_keys.dedup();
    if sorted_keys.len() != keys.len() {
        notes.push("two picks come from the same set".into());
    }
    let mut accounted = sorted_keys;
    accounted.extend(w.unused_sets.iter().copied());
    accounted.sort_unstable();
    let all: Vec<usize> = (0..sets.len()).collect();
    if accounted != all {
        notes.push("picked and unused sets do not partition the instance sets".into());
    }
    if w.parts.len() != m {
        notes.push(format!("witness has {} parts, instance wants {m}", w.parts.len()));
    }
    let mut covered = vec![false; w.picks.len()];
    for (k, part) in w.parts.iter().enumerate() {
        if part.is_empty() {
            notes.push(format!("part {k} is empty"));
        }
        for &i in part {
            match covered.get_mut(i) {
                Some(slot) if !*slot => *slot = true,
                Some(_) => notes.push(format!("pick {i} appears in more than one part")),
                None => notes.push(format!("part {k} references pick {i} out of range")),
            }
        }
    }
    if covered.iter().any(|&b| !b) {
        notes.push("some picks belong to no part".into());
    }
    let Some(ball) = claim_ball(cert, notes).cloned() else {
        return Ok(());
    };
    if ball.center != w.common {
        notes.push("claimed center differs from the witness common point".into());
    }
    for (k, part) in w.parts.iter().enumerate() {
        let pts: Vec<Point> = part
            .iter()
            .filter_map(|&i| pick_points.get(i).cloned().flatten())
            .collect();
        if pts.len() != part.len() {
            continue; // already noted above
        }
        if !ball_in_hull_oracle(dim, &pts, &ball.center, &ball.radius)? {
            notes.push(format!("part {k} hull misses the claimed ball"));
        }
    }
    Ok(())
}

/// Search problems the oracle can settle by brute force, for cross-checking
/// the producers. All feasibility goes through Fourier-Motzkin.
#[derive(Clone, Debug)]
pub enum Problem {
    /// Is the target in the hull of some rainbow selection?
    RainbowMembership { classes: Vec<Vec<Point>>, target: Point },
    /// Smallest-volume bounded intersection over all `size`-subfamilies.
    SubfamilyVolume { dim: usize, halfspaces: Vec<HalfSpace>, size: usize },
    /// Does some partition into `parts` nonempty groups have intersecting
    /// hulls?
    TverbergPartition { points: Vec<Point>, parts: usize },
    /// One point per class and part (class 0 in order): does some tuple of
    /// per-class assignments give parts with a single common point?
    ColorfulTverbergPartition { classes: Vec<Vec<Point>>, parts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Infeasible,
    /// One point index per class.
    Rainbow(Vec<usize>),
    /// Lexicographically first subfamily attaining the minimum volume.
    Subfamily { indices: Vec<usize>, volume: Scalar },
    /// Parts as point-index lists.
    Partition(Vec<Vec<usize>>),
    /// `assignment[class][part]` is the chosen set index of that class.
    ColorfulPartition(Vec<Vec<usize>>),
}

/// Whether all parts share one common point, by eliminating the point and
/// every convex weight with Fourier-Motzkin.
fn parts_share_point_fm(dim: usize, parts: &[Vec<Point>]) -> bool {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let nvars = dim + total;
    let mut rows: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
    let mut base = dim;
    for part in parts {
        for i in 0..part.len() {
            let mut a = vec![Scalar::zero(); nvars];
            a[base + i] = Scalar::from_int(-1);
            rows.push((a, Scalar::zero()));
        }
        let mut ones = vec![Scalar::zero(); nvars];
        for i in 0..part.len() {
            ones[base + i] = Scalar::one();
        }
        rows.push((ones.clone(), Scalar::one()));
        rows.push((ones.iter().map(|c| -c).collect(), Scalar::from_int(-1)));
        for coord in 0..dim {
            let mut a = vec![Scalar::zero(); nvars];
            a[coord] = Scalar::from_int(-1);
            for (i, p) in part.iter().enumerate() {
                a[base + i] = p.0[coord].clone();
            }
            rows.push((a.iter().map(|c| -c).collect(), Scalar::zero()));
            rows.push((a, Scalar::zero()));
        }
        base += part.len();
    }
    fm_feasible(&rows)
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn spend(used: &mut usize, budget: usize) -> Result<()> {
    *used += 1;
    if *used > budget {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive search exceeded its budget of {budget} candidates"
        )));
    }
    Ok(())
}

/// Brute-force settlement of a [`Problem`], spending at most `budget`
/// candidate evaluations.
pub fn exhaustive_search(problem: &Problem, budget: usize) -> Result<SearchOutcome> {
    let mut used = 0usize;
    match problem {
        Problem::RainbowMembership { classes, target } => {
            if classes.is_empty() || classes.iter().any(|c| c.is_empty()) {
                return Err(Error::PreconditionFailed("classes must be nonempty".into()));
            }
            let mut idx = vec![0usize; classes.len()];
            loop {
                spend(&mut used, budget)?;
                let pts: Vec<Point> =
                    idx.iter().zip(classes).map(|(&i, c)| c[i].clone()).collect();
                if fm_membership(&pts, target) {
                    return Ok(SearchOutcome::Rainbow(idx));
                }
                let mut pos = classes.len();
                loop {
                    if pos == 0 {
                        return Ok(SearchOutcome::Infeasible);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < classes[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        Problem::SubfamilyVolume { dim, halfspaces, size } => {
            let n = halfspaces.len();
            if *size == 0 || *size > n {
                return Err(Error::PreconditionFailed(
                    "subfamily size must be between 1 and the family size".into(),
                ));
            }
            let mut combo: Vec<usize> = (0..*size).collect();
            let mut best: Option<(Vec<usize>, Scalar)> = None;
            loop {
                spend(&mut used, budget)?;
                let sub: Vec<HalfSpace> = combo.iter().map(|&i| halfspaces[i].clone()).collect();
                if let HPolyShape::Bounded(verts) = hpoly_shape(*dim, &sub)? {
                    let vol = volume_oracle(*dim, &verts)?;
                    if best.as_ref().is_none_or(|(_, b)| &vol < b) {
                        best = Some((combo.clone(), vol));
                    }
                }
                // Advance to the next combination in lexicographic order.
                let mut i = *size;
                loop {
                    if i == 0 {
                        return Ok(match best {
                            Some((indices, volume)) => SearchOutcome::Subfamily { indices, volume },
                            None => SearchOutcome::Infeasible,
                        });
                    }
                    i -= 1;
                    if combo[i] < n - *size + i {
                        break;
                    }
                }
                combo[i] += 1;
                for j in (i + 1)..*size {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
        Problem::TverbergPartition { points, parts } => {
            if *parts == 0 || points.len() < *parts {
                return Err(Error::PreconditionFailed(
                    "need at least one point per part".into(),
                ));
            }
            let mut labels = vec![0usize; points.len()];
            match rgs_search(points, *parts, &mut labels, 1, 1, &mut used, budget)? {
                Some(groups) => Ok(SearchOutcome::Partition(groups)),
                None => Ok(SearchOutcome::Infeasible),
            }
        }
        Problem::ColorfulTverbergPartition { classes, parts } => {
            if classes.is_empty() || classes.iter().any(|c| c.len() != *parts) {
                return Err(Error::PreconditionFailed(
                    "every class needs exactly one point per part".into(),
                ));
            }
            let n = *parts;
            let k = classes.len();
            let mut perms: Vec<Vec<usize>> = vec![(0..n).collect(); k];
            loop {
                spend(&mut used, budget)?;
                let groups: Vec<Vec<Point>> = (0..n)
                    .map(|part| {
                        (0..k).map(|c| classes[c][perms[c][part]].clone()).collect()
                    })
                    .collect();
                if parts_share_point_fm(classes[0][0].dim(), &groups) {
                    return Ok(SearchOutcome::ColorfulPartition(perms));
                }
                // Class 0 stays the identity: relabeling parts is free.
                let mut c = k;
                loop {
                    if c <= 1 {
                        return Ok(SearchOutcome::Infeasible);
                    }
                    c -= 1;
                    if next_permutation(&mut perms[c]) {
                        break;
                    }
                    perms[c] = (0..n).collect();
                }
            }
        }
    }
}

/// Depth-first enumeration of canonical part labelings (restricted growth
/// strings), testing each complete `m`-part labeling for a common point.
fn rgs_search(
    points: &[Point],
    m: usize,
    labels: &mut [usize],
    depth: usize,
    max_used: usize,
    used: &mut usize,
    budget: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    if depth == points.len() {
        if max_used != m {
            return Ok(None);
        }
        spend(used, budget)?;
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (i, &l) in labels.iter().enumerate() {
            groups[l].push(i);
        }
        let parts: Vec<Vec<Point>> = groups
            .iter()
            .map(|g| g.iter().map(|&i| points[i].clone()).collect())
            .collect();
        if parts_share_point_fm(points[0].dim(), &parts) {
            return Ok(Some(groups));
        }
        return Ok(None);
    }
    let cap = (max_used + 1).min(m);
    for l in 0..cap {
        labels[depth] = l;
        let next_max = max_used.max(l + 1);
        // Prune branches that can no longer reach m labels.
        if next_max + (points.len() - depth - 1) < m {
            continue;
        }
        if let Some(found) =
            rgs_search(points, m, labels, depth + 1, next_max, used, budget)?
        {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexops;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&v| s(v)).collect())
    }

    #[test]
    fn fm_basics() {
        // x <= 1, -x <= 0 feasible; x <= 0, -x <= -1 infeasible.
        assert!(fm_feasible(&[(vec![s(1)], s(1)), (vec![s(-1)], s(0))]));
        assert!(!fm_feasible(&[(vec![s(1)], s(0)), (vec![s(-1)], s(-1))]));
    }

    #[test]
    fn fm_membership_square() {
        let square = [pt(&[0, 0]), pt(&[2, 0]), pt(&[2, 2]), pt(&[0, 2])];
        assert!(fm_membership(&square, &pt(&[1, 1])));
        assert!(fm_membership(&square, &pt(&[2, 2])));
        assert!(!fm_membership(&square, &pt(&[3, 1])));
    }

    #[test]
    fn chain_strips_interior_points() {
        let pts = vec![pt(&[0, 0]), pt(&[4, 0]), pt(&[4, 4]), pt(&[0, 4]), pt(&[2, 2]), pt(&[2, 0])];
        let hull = monotone_chain(&pts);
        assert_eq!(hull.len(), 4);
    }

    #[test]
    fn cube_volume_both_ways() {
        let cube: Vec<Point> = (0..8)
            .map(|k| pt(&[2 * (k & 1), 2 * ((k >> 1) & 1), 2 * ((k >> 2) & 1)]))
            .collect();
        assert_eq!(volume_oracle(3, &cube).unwrap(), s(8));
        assert_eq!(facets3(&cube).len(), 6);
        let tetra = vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        assert_eq!(volume_oracle(3, &tetra).unwrap(), Scalar::ratio(1, 6));
        // Shifted so the origin is outside: cone signs must still cancel.
        let shifted: Vec<Point> = cube.iter().map(|p| p.add(&pt(&[10, 10, 10]))).collect();
        assert_eq!(volume_oracle(3, &shifted).unwrap(), s(8));
    }

    fn hs(a: &[i64], b: i64) -> HalfSpace {
        HalfSpace::new(a.iter().map(|&v| s(v)).collect(), s(b)).unwrap()
    }

    fn unit_square_halfspaces() -> Vec<HalfSpace> {
        vec![hs(&[1, 0], 1), hs(&[-1, 0], 0), hs(&[0, 1], 1), hs(&[0, -1], 0)]
    }

    #[test]
    fn hpoly_shape_classification() {
        match hpoly_shape(2, &unit_square_halfspaces()).unwrap() {
            HPolyShape::Bounded(v) => {
                assert_eq!(v.len(), 4);
                assert_eq!(volume_oracle(2, &v).unwrap(), s(1));
            }
            other => panic!("expected bounded, got {other:?}"),
        }
        // Dropping one side opens the square.
        assert_eq!(
            hpoly_shape(2, &unit_square_halfspaces()[..3]).unwrap(),
            HPolyShape::Unbounded
        );
        // x <= 0 and -x <= -1 contradict.
        assert_eq!(
            hpoly_shape(2, &[hs(&[1, 0], 0), hs(&[-1, 0], -1)]).unwrap(),
            HPolyShape::Empty
        );
        assert_eq!(
            hpoly_shape(1, &[hs(&[2], 6), hs(&[-1], 1)]).unwrap(),
            HPolyShape::Bounded(vec![pt(&[-1]), pt(&[3])])
        );
        // A flat slab is still bounded with both endpoints found.
        let slab = vec![hs(&[1, 0], 0), hs(&[-1, 0], 0), hs(&[0, 1], 1), hs(&[0, -1], 0)];
        assert_eq!(
            hpoly_shape(2, &slab).unwrap(),
            HPolyShape::Bounded(vec![pt(&[0, 0]), pt(&[0, 1])])
        );
    }

    #[test]
    fn ball_in_hull_cases() {
        let square = [pt(&[-2, -2]), pt(&[2, -2]), pt(&[2, 2]), pt(&[-2, 2])];
        let o = pt(&[0, 0]);
        assert!(ball_in_hull_oracle(2, &square, &o, &s(2)).unwrap());
        assert!(!ball_in_hull_oracle(2, &square, &o, &Scalar::ratio(9, 4)).unwrap());
        assert!(!ball_in_hull_oracle(2, &square, &pt(&[1, 0]), &s(2)).unwrap());
        // Radius zero degrades to membership, even in flat hulls.
        assert!(ball_in_hull_oracle(2, &[pt(&[0, 0]), pt(&[2, 0])], &pt(&[1, 0]), &s(0)).unwrap());
        assert!(ball_in_hull_oracle(1, &[pt(&[-3]), pt(&[5])], &pt(&[0]), &s(3)).unwrap());
        assert!(!ball_in_hull_oracle(1, &[pt(&[-3]), pt(&[5])], &pt(&[0]), &s(4)).unwrap());
        let cube: Vec<Point> = (0..8)
            .map(|k| pt(&[2 * (k & 1) - 1, 2 * ((k >> 1) & 1) - 1, 2 * ((k >> 2) & 1) - 1]))
            .collect();
        assert!(ball_in_hull_oracle(3, &cube, &Point::origin(3), &s(1)).unwrap());
        assert!(!ball_in_hull_oracle(3, &cube, &Point::origin(3), &s(2)).unwrap());
    }

    fn diamond_class() -> Vec<Point> {
        vec![
            Point(vec![Scalar::ratio(3, 2), s(0)]),
            Point(vec![Scalar::ratio(-3, 2), s(0)]),
            Point(vec![s(0), Scalar::ratio(3, 2)]),
            Point(vec![s(0), Scalar::ratio(-3, 2)]),
        ]
    }

    #[test]
    fn verify_steinitz_ball_and_reject_mutation() {
        let family = ColoredFamily::new(2, vec![diamond_class(); 4]).unwrap();
        let cert = crate::steinitz::colored_steinitz_ball(&family).unwrap();
        let instance = Instance::Colored { family, target: None };
        assert!(verify(&cert, &instance).unwrap().pass);

        let mut inflated = cert.clone();
        if let Claim::Ball(b) = &mut inflated.claim {
            b.radius = s(2);
        }
        let report = verify(&inflated, &instance).unwrap();
        assert!(!report.pass);
        assert!(report.notes.iter().any(|n| n.contains("not inside")));

        let mut rewired = cert.clone();
        if let Witness::Selection(sel) = &mut rewired.witness {
            sel[1].class = sel[0].class;
        }
        assert!(!verify(&rewired, &instance).unwrap().pass);
    }

    #[test]
    fn verify_caratheodory_selection() {
        use crate::core::{Ball, Selected};
        let family = ColoredFamily::new(
            2,
            vec![vec![pt(&[0, 0])], vec![pt(&[3, 0])], vec![pt(&[0, 3])]],
        )
        .unwrap();
        let target = pt(&[1, 1]);
        let third = || Some(Scalar::ratio(1, 3));
        let cert = Certificate::new(
            CertKind::CaratheodorySelection,
            Witness::Selection(vec![
                Selected { class: 0, point: 0, weight: third() },
                Selected { class: 1, point: 0, weight: third() },
                Selected { class: 2, point: 0, weight: third() },
            ]),
            Claim::Ball(Ball::new(target.clone(), s(0)).unwrap()),
        );
        let instance = Instance::Colored { family, target: Some(target) };
        assert!(verify(&cert, &instance).unwrap().pass);

        let mut bad = cert.clone();
        if let Witness::Selection(sel) = &mut bad.witness {
            sel[0].weight = Some(Scalar::ratio(1, 2));
        }
        let report = verify(&bad, &instance).unwrap();
        assert!(!report.pass);
        assert!(report.notes.iter().any(|n| n.contains("weights")));
    }

    #[test]
    fn verify_helly_volume_subfamily() {
        let mut halfspaces = unit_square_halfspaces();
        halfspaces.push(hs(&[1, 1], 5)); // redundant
        let cert = Certificate::new(
            CertKind::HellyVolume,
            Witness::Subfamily(vec![0, 1, 2, 3]),
            Claim::VolumeRatio(s(1)),
        );
        let instance = Instance::Halfspaces { dim: 2, halfspaces };
        assert!(verify(&cert, &instance).unwrap().pass);

        let mut wrong = cert.clone();
        wrong.claim = Claim::VolumeRatio(s(2));
        assert!(!verify(&wrong, &instance).unwrap().pass);
        // Dropping a side makes the subfamily unbounded, which must fail.
        let mut open = cert;
        open.witness = Witness::Subfamily(vec![0, 1, 2]);
        let report = verify(&open, &instance).unwrap();
        assert!(!report.pass);
        assert!(report.notes.iter().any(|n| n.contains("unbounded")));
    }

    #[test]
    fn verify_classic_tverberg() {
        let pts = vec![pt(&[0, 0]), pt(&[4, 0]), pt(&[4, 4]), pt(&[0, 4])];
        let cert = crate::tverberg::classic_tverberg_certificate(&pts, 2).unwrap();
        let instance = Instance::Points { dim: 2, parts: 2, points: pts };
        assert!(verify(&cert, &instance).unwrap().pass);

        let mut moved = cert.clone();
        if let Witness::Partition(w) = &mut moved.witness {
            w.common = pt(&[4, 4]);
        }
        if let Claim::Ball(b) = &mut moved.claim {
            b.center = pt(&[4, 4]);
        }
        let report = verify(&moved, &instance).unwrap();
        assert!(!report.pass);

        let mut leaky = cert;
        if let Witness::Partition(w) = &mut leaky.witness {
            w.parts[0].pop();
        }
        assert!(!verify(&leaky, &instance).unwrap().pass);
    }

    #[test]
    fn exhaustive_rainbow_and_partitions() {
        let classes = vec![
            vec![pt(&[5, 5]), pt(&[-1, 0])],
            vec![pt(&[1, 0]), pt(&[6, 1])],
            vec![pt(&[0, 1]), pt(&[0, -1])],
        ];
        let target = pt(&[0, 0]);
        let got = exhaustive_search(
            &Problem::RainbowMembership { classes: classes.clone(), target: target.clone() },
            100,
        )
        .unwrap();
        assert_eq!(got, SearchOutcome::Rainbow(vec![1, 0, 0]));
        let far = exhaustive_search(
            &Problem::RainbowMembership { classes, target: pt(&[100, 100]) },
            100,
        )
        .unwrap();
        assert_eq!(far, SearchOutcome::Infeasible);

        // Square splits into two crossing diagonals; a triangle does not
        // split at all.
        let square = vec![pt(&[0, 0]), pt(&[4, 0]), pt(&[4, 4]), pt(&[0, 4])];
        match exhaustive_search(&Problem::TverbergPartition { points: square, parts: 2 }, 100)
            .unwrap()
        {
            SearchOutcome::Partition(groups) => assert_eq!(groups.len(), 2),
            other => panic!("expected a partition, got {other:?}"),
        }
        let triangle = vec![pt(&[0, 0]), pt(&[4, 0]), pt(&[0, 4])];
        assert_eq!(
            exhaustive_search(&Problem::TverbergPartition { points: triangle, parts: 2 }, 100)
                .unwrap(),
            SearchOutcome::Infeasible
        );
        assert!(matches!(
            exhaustive_search(
                &Problem::TverbergPartition {
                    points: vec![pt(&[0, 0]), pt(&[4, 0]), pt(&[4, 4]), pt(&[0, 4])],
                    parts: 2
                },
                0
            ),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn exhaustive_subfamily_minimum() {
        let mut halfspaces = unit_square_halfspaces();
        halfspaces.push(hs(&[1, 0], 5));
        let got = exhaustive_search(
            &Problem::SubfamilyVolume { dim: 2, halfspaces, size: 4 },
            100,
        )
        .unwrap();
        assert_eq!(
            got,
            SearchOutcome::Subfamily { indices: vec![0, 1, 2, 3], volume: s(1) }
        );
    }

    #[test]
    fn exhaustive_colorful_partition() {
        // Pairing like with like leaves the two segments disjoint; only the
        // swapped pairing gives both parts a shared stretch.
        let classes = vec![
            vec![pt(&[0, 0]), pt(&[10, 0])],
            vec![pt(&[1, 0]), pt(&[11, 0])],
        ];
        let got = exhaustive_search(
            &Problem::ColorfulTverbergPartition { classes, parts: 2 },
            100,
        )
        .unwrap();
        assert_eq!(got, SearchOutcome::ColorfulPartition(vec![vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn instance_json_roundtrip() {
        let instance = Instance::Halfspaces { dim: 2, halfspaces: unit_square_halfspaces() };
        let js = serde_json::to_string(&instance).unwrap();
        assert!(js.contains(r#""kind":"halfspaces""#));
        let back: Instance = serde_json::from_str(&js).unwrap();
        assert_eq!(back, instance);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn volume_matches_triangulation_2d(
            coords in proptest::collection::vec((-6i64..=6, -6i64..=6), 3..9),
        ) {
            let pts: Vec<Point> = coords.iter().map(|&(a, b)| pt(&[a, b])).collect();
            let independent = volume_oracle(2, &pts).unwrap();
            let reference = convexops::volume(2, &pts).unwrap();
            prop_assert_eq!(independent, reference);
        }

        #[test]
        fn membership_matches_lp(
            coords in proptest::collection::vec((-4i64..=4, -4i64..=4), 1..7),
            tx in -4i64..=4,
            ty in -4i64..=4,
        ) {
            let pts: Vec<Point> = coords.iter().map(|&(a, b)| pt(&[a, b])).collect();
            let x = pt(&[tx, ty]);
            prop_assert_eq!(fm_membership(&pts, &x), convexops::in_convex_hull(&pts, &x));
        }

        #[test]
        fn volume_matches_triangulation_3d(
            coords in proptest::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 4..8),
        ) {
            let pts: Vec<Point> = coords.iter().map(|&(a, b, c)| pt(&[a, b, c])).collect();
            let independent = volume_oracle(3, &pts).unwrap();
            let reference = convexops::volume(3, &pts).unwrap();
            prop_assert_eq!(independent, reference);
        }
    }
}
