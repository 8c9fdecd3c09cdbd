//! Tverberg partitioning: the classic partition theorem (Radon, exhaustive
//! search, and the Sarkaria tensor reduction), the quantitative pipeline
//! that turns a partition of ball centers into a certified common ball,
//! and the colorful quantitative variant with its prime-rounding
//! arithmetic.

use serde::{Deserialize, Serialize};

use crate::approx::{self, Body};
use crate::caratheodory::colorful_caratheodory;
use crate::convexops::{hull, in_convex_hull, linalg};
use crate::convexops::lp::{StandardLp, StandardOutcome};
use crate::core::{
    Ball, Certificate, CertKind, Claim, ColoredFamily, PartitionWitness, Point, SetPick, Witness,
};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;
use crate::steinitz;

/// One input set of the quantitative instances: a finite point set whose
/// hull contains the unit ball around `center`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantSet {
    pub center: Point,
    pub points: Vec<Point>,
}

/// Which radius guarantee a quantitative run targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TverbergVariant {
    /// Common ball of radius `(pi/e^2) d^(-2d-2)`.
    FixedRadius,
    /// Common ball of radius `1/(1 + eps)`.
    Eps(Scalar),
}

/// Size-formula variant, with the sandwich vertex count `n'` made explicit
/// so the arithmetic stays a pure function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeVariant {
    FixedRadius,
    Eps { n_prime: usize },
}

/// Required set count for the quantitative theorem:
/// `(2dm - 1)(d + 1) + 1`, or `(m [(n' - 1)d + 1] - 1)(d + 1) + 1` for the
/// epsilon variant.
pub fn theorem41_sizes(d: usize, m: usize, variant: SizeVariant) -> usize {
    let parts = match variant {
        SizeVariant::FixedRadius => 2 * d * m,
        SizeVariant::Eps { n_prime } => m * ((n_prime - 1) * d + 1),
    };
    (parts - 1) * (d + 1) + 1
}

/// Smallest prime `>= q` by trial division; asserts the Bertrand bound
/// `p < 2q` on the supported range.
pub fn next_prime_ceil(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::PreconditionFailed("prime rounding needs q >= 2".into()));
    }
    fn is_prime(n: u64) -> bool {
        if n < 4 {
            return n >= 2;
        }
        if n % 2 == 0 {
            return false;
        }
        let mut f = 3;
        while f * f <= n {
            if n % f == 0 {
                return false;
            }
            f += 2;
        }
        true
    }
    let mut p = q;
    while !is_prime(p) {
        p += 1;
    }
    if q <= 1_000_000 {
        assert!(p < 2 * q, "Bertrand bound violated at {q}");
    }
    Ok(p)
}

/// Required per-class set count for the colorful quantitative theorem:
/// `ceil_p(2md + 1) - 1`, or `ceil_p(m ((n'-1)d + 1) + 1) - 1`.
pub fn colorful_tverberg_size(d: usize, m: usize, variant: SizeVariant) -> Result<usize> {
    let parts = match variant {
        SizeVariant::FixedRadius => 2 * d * m,
        SizeVariant::Eps { n_prime } => m * ((n_prime - 1) * d + 1),
    };
    Ok(next_prime_ceil(parts as u64 + 1)? as usize - 1)
}

/// A point in every part hull, or `None` if the part hulls do not meet.
/// One feasibility LP: `p` free, one convex combination per part.
pub fn common_point_of_parts(dim: usize, parts: &[Vec<Point>]) -> Result<Option<Point>> {
    let nw: usize = parts.iter().map(|p| p.len()).sum();
    let ncols = 2 * dim + nw;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut offset = 2 * dim;
    for part in parts {
        if part.is_empty() {
            return Err(Error::PreconditionFailed("empty part".into()));
        }
        for c in 0..dim {
            let mut row = vec![Scalar::zero(); ncols];
            row[c] = Scalar::from_int(-1);
            row[dim + c] = Scalar::one();
            for (j, x) in part.iter().enumerate() {
                row[offset + j] = x.0[c].clone();
            }
            rows.push(row);
            rhs.push(Scalar::zero());
        }
        let mut row = vec![Scalar::zero(); ncols];
        for j in 0..part.len() {
            row[offset + j] = Scalar::one();
        }
        rows.push(row);
        rhs.push(Scalar::one());
        offset += part.len();
    }
    let lp = StandardLp { rows, rhs, cost: vec![Scalar::zero(); ncols] };
    match lp.solve() {
        StandardOutcome::Optimal { y, .. } => {
            let coords = (0..dim).map(|c| &y[c] - &y[dim + c]).collect();
            Ok(Some(Point(coords)))
        }
        StandardOutcome::Infeasible => Ok(None),
        StandardOutcome::Unbounded { .. } => {
            Err(Error::Internal("zero-cost feasibility LP reported unbounded".into()))
        }
    }
}

fn check_common(dim: usize, points: &[Point], parts: &[Vec<usize>], p: &Point) -> Result<()> {
    for part in parts {
        let pts: Vec<Point> = part.iter().map(|&i| points[i].clone()).collect();
        if !in_convex_hull(&pts, p) {
            return Err(Error::Internal("common point escaped a part hull".into()));
        }
    }
    let mut seen = vec![false; points.len()];
    for part in parts {
        for &i in part {
            if seen[i] {
                return Err(Error::Internal("partition repeats a point".into()));
            }
            seen[i] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Internal("partition misses a point".into()));
    }
    let _ = dim;
    Ok(())
}

/// Partition `points` into `m` parts whose convex hulls share a point;
/// returns the parts (index lists) and an LP-certified common point.
///
/// `m = 2` runs Radon's affine-dependence argument; larger `m` uses
/// exhaustive canonical-assignment search at desk scale and the Sarkaria
/// tensor reduction to colorful Caratheodory beyond it.
pub fn tverberg_partition(points: &[Point], m: usize) -> Result<(Vec<Vec<usize>>, Point)> {
    if m == 0 {
        return Err(Error::PreconditionFailed("need at least one part".into()));
    }
    let Some(first) = points.first() else {
        return Err(Error::PreconditionFailed("no points".into()));
    };
    let d = first.dim();
    for p in points {
        p.validate(d)?;
    }
    let needed = (d + 1) * (m - 1) + 1;
    if points.len() < needed {
        return Err(Error::PreconditionFailed(format!(
            "Tverberg with {m} parts in dimension {d} needs at least {needed} points, got {}",
            points.len()
        )));
    }
    let (parts, p) = if m == 1 {
        (vec![(0..points.len()).collect::<Vec<_>>()], points[0].clone())
    } else if m == 2 {
        radon_partition(d, points)?
    } else if canonical_partition_count(points.len(), m).is_some_and(|c| c <= 200_000) {
        exhaustive_partition(d, points, m)?
    } else {
        sarkaria_partition(d, points, m)?
    };
    check_common(d, points, &parts, &p)?;
    Ok((parts, p))
}

fn radon_partition(d: usize, points: &[Point]) -> Result<(Vec<Vec<usize>>, Point)> {
    // Affine dependence among the first d + 2 points: the positive and
    // negative supports are the Radon parts.
    let k = d + 2;
    let mut mat: Vec<Vec<Scalar>> = (0..d)
        .map(|c| (0..k).map(|i| points[i].0[c].clone()).collect())
        .collect();
    mat.push(vec![Scalar::one(); k]);
    let lambda = linalg::kernel_vector(&mat)
        .ok_or_else(|| Error::Internal("d + 2 points without affine dependence".into()))?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut rest = Vec::new();
    for (i, l) in lambda.iter().enumerate() {
        if l.is_positive() {
            pos.push(i);
        } else if l.is_negative() {
            neg.push(i);
        } else {
            rest.push(i);
        }
    }
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::Internal("one-sided affine dependence".into()));
    }
    let total: Scalar = pos
        .iter()
        .fold(Scalar::zero(), |acc, &i| &acc + &lambda[i]);
    let p = pos.iter().fold(Point::origin(d), |acc, &i| {
        acc.add(&points[i].scale(&(&lambda[i] / &total)))
    });
    // Leftover points only grow the hulls.
    pos.extend(rest);
    pos.extend(k..points.len());
    Ok((vec![pos, neg], p))
}

/// Number of canonical surjective assignments of `n` items to `m`
/// unlabeled parts (Stirling numbers, second kind), `None` on overflow.
fn canonical_partition_count(n: usize, m: usize) -> Option<u64> {
    let mut row = vec![0u64; m + 1];
    row[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; m + 1];
        for parts_used in 0..=m {
            if row[parts_used] == 0 {
                continue;
            }
            if parts_used < m {
                next[parts_used + 1] = next[parts_used + 1].checked_add(row[parts_used])?;
            }
            if parts_used > 0 {
                let grown = row[parts_used].checked_mul(parts_used as u64)?;
                next[parts_used] = next[parts_used].checked_add(grown)?;
            }
        }
        row = next;
    }
    Some(row[m])
}

fn exhaustive_partition(d: usize, points: &[Point], m: usize) -> Result<(Vec<Vec<usize>>, Point)> {
    let n = points.len();
    // Canonical surjective assignments in lexicographic order: label 0 on
    // point 0, new labels introduced in first-use order.
    let mut assign = vec![0usize; n];
    loop {
        let used = assign.iter().copied().max().unwrap() + 1;
        if used == m {
            let mut parts = vec![Vec::new(); m];
            for (i, &a) in assign.iter().enumerate() {
                parts[a].push(i);
            }
            let part_points: Vec<Vec<Point>> = parts
                .iter()
                .map(|part| part.iter().map(|&i| points[i].clone()).collect())
                .collect();
            if let Some(p) = common_point_of_parts(d, &part_points)? {
                return Ok((parts, p));
            }
        }
        // Advance: rightmost position that can grow within canonical form.
        let mut i = n;
        loop {
            if i <= 1 {
                return Err(Error::Internal(
                    "no feasible partition found; Tverberg bound violated".into(),
                ));
            }
            i -= 1;
            let prefix_max = assign[..i].iter().copied().max().unwrap();
            if assign[i] < m - 1 && assign[i] <= prefix_max {
                assign[i] += 1;
                for a in assign.iter_mut().skip(i + 1) {
                    *a = 0;
                }
                break;
            }
        }
    }
}

fn sarkaria_partition(d: usize, points: &[Point], m: usize) -> Result<(Vec<Vec<usize>>, Point)> {
    let big = (d + 1) * (m - 1);
    // Simplex directions with zero sum: e_0..e_{m-2} and their negated sum.
    let mut dirs: Vec<Vec<Scalar>> = (0..m - 1)
        .map(|j| {
            let mut v = vec![Scalar::zero(); m - 1];
            v[j] = Scalar::one();
            v
        })
        .collect();
    dirs.push(vec![Scalar::from_int(-1); m - 1]);

    // Tensor class per point: (x, 1) outer each direction.
    let classes: Vec<Vec<Point>> = points[..big + 1]
        .iter()
        .map(|x| {
            let mut lifted = x.0.clone();
            lifted.push(Scalar::one());
            dirs.iter()
                .map(|v| {
                    let coords = lifted
                        .iter()
                        .flat_map(|a| v.iter().map(move |b| a * b))
                        .collect();
                    Point(coords)
                })
                .collect()
        })
        .collect();
    let (picks, weights) = colorful_caratheodory(&classes, &Point::origin(big))?;

    let mut parts = vec![Vec::new(); m];
    for (i, &j) in picks.iter().enumerate() {
        parts[j].push(i);
    }
    // Each part carries total tensor weight 1/m, so every part is
    // nonempty and the weighted part averages coincide at the common
    // point.
    let mut sigma = Scalar::zero();
    let mut p = Point::origin(d);
    for &i in &parts[0] {
        sigma = &sigma + &weights[i];
        p = p.add(&points[i].scale(&weights[i]));
    }
    if !sigma.is_positive() {
        return Err(Error::Internal("zero-weight Sarkaria part".into()));
    }
    let p = p.scale(&sigma.recip());
    for (i, point) in points.iter().enumerate().skip(big + 1) {
        let _ = point;
        parts[0].push(i);
    }
    Ok((parts, p))
}

fn ball_in_part(dim: usize, pts: &[Point], center: &Point, r: &Scalar) -> Result<bool> {
    if dim == 1 {
        let lo = pts.iter().map(|p| p.0[0].clone()).min().unwrap();
        let hi = pts.iter().map(|p| p.0[0].clone()).max().unwrap();
        return Ok(lo <= &center.0[0] - r && hi >= &center.0[0] + r);
    }
    hull::ball_in_hull(dim, pts, center, r)
}

fn validate_quant_set(dim: usize, set: &QuantSet) -> Result<()> {
    set.center.validate(dim)?;
    if set.points.is_empty() {
        return Err(Error::PreconditionFailed("empty input set".into()));
    }
    for p in &set.points {
        p.validate(dim)?;
    }
    let shifted: Vec<Point> = set.points.iter().map(|p| p.sub(&set.center)).collect();
    if !steinitz::unit_ball_contained(dim, &shifted)? {
        return Err(Error::PreconditionFailed(
            "a set fails its unit-ball certificate".into(),
        ));
    }
    Ok(())
}

/// Number of sets [`quantitative_tverberg`] expects for this variant.
pub fn quantitative_instance_size(
    dim: usize,
    m: usize,
    variant: &TverbergVariant,
) -> Result<usize> {
    let (_, size_variant) = variant_block(dim, variant)?;
    Ok(theorem41_sizes(dim, m, size_variant))
}

/// Number of sets per color class [`colorful_quantitative_tverberg`]
/// expects for this variant.
pub fn colorful_instance_size(dim: usize, m: usize, variant: &TverbergVariant) -> Result<usize> {
    let (_, size_variant) = variant_block(dim, variant)?;
    colorful_tverberg_size(dim, m, size_variant)
}

fn variant_block(dim: usize, variant: &TverbergVariant) -> Result<(usize, SizeVariant)> {
    match variant {
        TverbergVariant::FixedRadius => Ok((2 * dim, SizeVariant::FixedRadius)),
        TverbergVariant::Eps(eps) => {
            let unit = Ball::new(Point::origin(dim), Scalar::one())?;
            let (_, n_prime) = approx::sandwich_bms(&Body::Ball(unit), eps, None)?;
            Ok(((n_prime - 1) * dim + 1, SizeVariant::Eps { n_prime }))
        }
    }
}

/// Runs the colored Steinitz engine for one block of center-parts: the
/// classes are the unions of the sets whose centers fall in each part,
/// translated by `-p`. Returns (set, point) picks and the certified
/// radius around `p`.
fn steinitz_block(
    dim: usize,
    p: &Point,
    block_parts: &[Vec<usize>],
    set_points: impl Fn(usize) -> Vec<Point>,
    variant: &TverbergVariant,
) -> Result<(Vec<(usize, usize)>, Scalar)> {
    let mut classes: Vec<Vec<Point>> = Vec::with_capacity(block_parts.len());
    let mut origins: Vec<Vec<(usize, usize)>> = Vec::with_capacity(block_parts.len());
    for part in block_parts {
        let mut class = Vec::new();
        let mut origin = Vec::new();
        for &j in part {
            for (idx, pt) in set_points(j).iter().enumerate() {
                class.push(pt.sub(p));
                origin.push((j, idx));
            }
        }
        classes.push(class);
        origins.push(origin);
    }
    let family = ColoredFamily::new(dim, classes)?;
    let cert = match variant {
        TverbergVariant::FixedRadius => steinitz::colored_steinitz_ball(&family)?,
        TverbergVariant::Eps(eps) => steinitz::steinitz_ball_eps(&family, eps)?,
    };
    let Witness::Selection(sel) = &cert.witness else {
        return Err(Error::Internal("Steinitz engine returned a non-selection witness".into()));
    };
    let Claim::Ball(ball) = &cert.claim else {
        return Err(Error::Internal("Steinitz engine returned a non-ball claim".into()));
    };
    if !ball.center.0.iter().all(|c| c.is_zero()) {
        return Err(Error::Internal("Steinitz ball not centered at the origin".into()));
    }
    let picks = sel.iter().map(|s| origins[s.class][s.point]).collect();
    Ok((picks, ball.radius.clone()))
}

/// Quantitative Tverberg: given `theorem41_sizes` many sets each holding a
/// certified unit ball, selects one point per used set and a partition into
/// `m` parts whose hulls share a certified ball of the variant's radius.
/// `block_seed` picks one of the many valid part-to-block assignments
/// (0 keeps ascending order).
pub fn quantitative_tverberg(
    dim: usize,
    m: usize,
    sets: &[QuantSet],
    variant: &TverbergVariant,
    block_seed: u64,
) -> Result<Certificate> {
    if dim == 0 || m == 0 {
        return Err(Error::PreconditionFailed("dimension and parts must be positive".into()));
    }
    let (block, size_variant) = variant_block(dim, variant)?;
    let expected = theorem41_sizes(dim, m, size_variant);
    if sets.len() != expected {
        return Err(Error::PreconditionFailed(format!(
            "instance needs exactly {expected} sets, got {}",
            sets.len()
        )));
    }
    for set in sets {
        validate_quant_set(dim, set)?;
    }
    let centers: Vec<Point> = sets.iter().map(|s| s.center.clone()).collect();
    let part_count = m * block;
    let (parts, p) = tverberg_partition(&centers, part_count)?;

    let mut order: Vec<usize> = (0..part_count).collect();
    if block_seed != 0 {
        SplitMix64::new(block_seed).shuffle(&mut order);
    }

    let mut picks: Vec<SetPick> = Vec::new();
    let mut out_parts: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut radius: Option<Scalar> = None;
    for b in 0..m {
        let block_parts: Vec<Vec<usize>> = order[b * block..(b + 1) * block]
            .iter()
            .map(|&k| parts[k].clone())
            .collect();
        let (block_picks, r) =
            steinitz_block(dim, &p, &block_parts, |j| sets[j].points.clone(), variant)?;
        let base = picks.len();
        for (set, point) in &block_picks {
            picks.push(SetPick { class: None, set: *set, point: *point });
        }
        out_parts.push((base..picks.len()).collect());
        let pts: Vec<Point> = block_picks
            .iter()
            .map(|&(j, idx)| sets[j].points[idx].clone())
            .collect();
        if !ball_in_part(dim, &pts, &p, &r)? {
            return Err(Error::Internal("block selection lost the certified ball".into()));
        }
        radius = Some(match radius {
            None => r,
            Some(prev) => prev.min(r),
        });
    }
    let radius = radius.unwrap();
    let used: std::collections::BTreeSet<usize> = picks.iter().map(|s| s.set).collect();
    let unused_sets: Vec<usize> = (0..sets.len()).filter(|i| !used.contains(i)).collect();
    let witness = Witness::Partition(PartitionWitness {
        picks,
        parts: out_parts,
        common: p.clone(),
        unused_sets,
    });
    Ok(Certificate::new(CertKind::Tverberg, witness, Claim::Ball(Ball::new(p, radius)?)))
}

/// Classic Tverberg wrapped as a certificate: every point is its own
/// singleton set and the claim is the zero-radius ball at the common point.
pub fn classic_tverberg_certificate(points: &[Point], m: usize) -> Result<Certificate> {
    let (parts, p) = tverberg_partition(points, m)?;
    let picks: Vec<SetPick> = (0..points.len())
        .map(|i| SetPick { class: None, set: i, point: 0 })
        .collect();
    let witness = Witness::Partition(PartitionWitness {
        picks,
        parts,
        common: p.clone(),
        unused_sets: vec![],
    });
    Ok(Certificate::new(CertKind::Tverberg, witness, Claim::Ball(Ball::new(p, Scalar::zero())?)))
}

/// Colorful quantitative Tverberg: `d + 1` color classes of sets, a
/// colorful partition of their ball centers (exhaustive at desk scale),
/// then block splitting and colored Steinitz as in the monochrome
/// pipeline. Each part uses at most one set per color class per
/// center-part, hence at most `block` points per color class.
pub fn colorful_quantitative_tverberg(
    dim: usize,
    m: usize,
    classes: &[Vec<QuantSet>],
    variant: &TverbergVariant,
    budget: Option<usize>,
) -> Result<Certificate> {
    if dim == 0 || m == 0 {
        return Err(Error::PreconditionFailed("dimension and parts must be positive".into()));
    }
    if classes.len() != dim + 1 {
        return Err(Error::PreconditionFailed(format!(
            "need {} color classes, got {}",
            dim + 1,
            classes.len()
        )));
    }
    let (block, size_variant) = variant_block(dim, variant)?;
    let n = colorful_tverberg_size(dim, m, size_variant)?;
    for class in classes {
        if class.len() != n {
            return Err(Error::PreconditionFailed(format!(
                "every color class needs exactly {n} sets, got {}",
                class.len()
            )));
        }
        for set in class {
            validate_quant_set(dim, set)?;
        }
    }
    let part_count = m * block;
    if n < part_count {
        return Err(Error::Internal("prime rounding produced too few parts".into()));
    }

    // Exhaustive colorful partition of the centers: part k holds center k
    // of class 0 and center sigma_i(k) of class i; enumerate the
    // permutations lexicographically. The candidate count is checked
    // against the budget up front so infeasibly large searches fail fast.
    let cap = budget.unwrap_or(10_000_000);
    let mut total: Option<u64> = Some(1);
    for _ in 1..classes.len() {
        for f in 2..=n as u64 {
            total = total.and_then(|t| t.checked_mul(f));
        }
    }
    if total.is_none_or(|t| t > cap as u64) {
        return Err(Error::BudgetExceeded(format!(
            "colorful partition search needs ({n}!)^{} candidates, above the cap {cap}",
            classes.len() - 1
        )));
    }
    let assignment = find_colorful_partition(dim, classes, n)?;
    // parts[k][i] = set index of class i in part k.
    let parts: Vec<Vec<usize>> = (0..n)
        .map(|k| (0..classes.len()).map(|i| assignment[i][k]).collect())
        .collect();
    let part_points: Vec<Vec<Point>> = parts
        .iter()
        .map(|part| {
            part.iter()
                .enumerate()
                .map(|(i, &j)| classes[i][j].center.clone())
                .collect()
        })
        .collect();
    let p = common_point_of_parts(dim, &part_points)?
        .ok_or_else(|| Error::Internal("chosen colorful partition lost its common point".into()))?;

    let mut picks: Vec<SetPick> = Vec::new();
    let mut out_parts: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut radius: Option<Scalar> = None;
    for b in 0..m {
        // Each center-part becomes one Steinitz class; encode (class, set)
        // pairs as flat ids for the block helper.
        let block_parts: Vec<Vec<usize>> = (b * block..(b + 1) * block)
            .map(|k| parts[k].iter().enumerate().map(|(i, &j)| i * n + j).collect())
            .collect();
        let (block_picks, r) = steinitz_block(
            dim,
            &p,
            &block_parts,
            |id| classes[id / n][id % n].points.clone(),
            variant,
        )?;
        let base = picks.len();
        for &(id, point) in &block_picks {
            picks.push(SetPick { class: Some(id / n), set: id % n, point });
        }
        out_parts.push((base..picks.len()).collect());
        // Multiplicity bound from the theorem statement.
        for i in 0..classes.len() {
            let count = block_picks.iter().filter(|&&(id, _)| id / n == i).count();
            if count > block {
                return Err(Error::Internal("per-class multiplicity bound violated".into()));
            }
        }
        let pts: Vec<Point> = block_picks
            .iter()
            .map(|&(id, idx)| classes[id / n][id % n].points[idx].clone())
            .collect();
        if !ball_in_part(dim, &pts, &p, &r)? {
            return Err(Error::Internal("block selection lost the certified ball".into()));
        }
        radius = Some(match radius {
            None => r,
            Some(prev) => prev.min(r),
        });
    }
    let radius = radius.unwrap();
    let used: std::collections::BTreeSet<(usize, usize)> =
        picks.iter().map(|s| (s.class.unwrap(), s.set)).collect();
    let mut unused_sets = Vec::new();
    for i in 0..classes.len() {
        for j in 0..n {
            if !used.contains(&(i, j)) {
                unused_sets.push(i * n + j);
            }
        }
    }
    let witness = Witness::Partition(PartitionWitness {
        picks,
        parts: out_parts,
        common: p.clone(),
        unused_sets,
    });
    Ok(Certificate::new(
        CertKind::ColorfulTverberg,
        witness,
        Claim::Ball(Ball::new(p, radius)?),
    ))
}

/// Lexicographically first tuple of permutations (identity on class 0)
/// whose induced parts share a common point.
fn find_colorful_partition(
    dim: usize,
    classes: &[Vec<QuantSet>],
    n: usize,
) -> Result<Vec<Vec<usize>>> {
    let k = classes.len();
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect(); k];
    loop {
        let part_points: Vec<Vec<Point>> = (0..n)
            .map(|part| {
                (0..k)
                    .map(|i| classes[i][perms[i][part]].center.clone())
                    .collect()
            })
            .collect();
        if common_point_of_parts(dim, &part_points)?.is_some() {
            return Ok(perms);
        }
        // Advance the tuple (perms[1], ..., perms[k-1]) lexicographically.
        let mut c = k;
        loop {
            if c <= 1 {
                return Err(Error::Internal(
                    "no colorful partition found; theorem hypotheses violated".into(),
                ));
            }
            c -= 1;
            if next_permutation(&mut perms[c]) {
                break;
            }
            perms[c] = (0..n).collect();
        }
    }
}

/// Standard next-permutation; `false` when wrapping from the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{default_prec, steinitz_radius_constant};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&v| s(v)).collect())
    }

    #[test]
    fn sizes_and_primes() {
        assert_eq!(theorem41_sizes(2, 2, SizeVariant::FixedRadius), 22);
        assert_eq!(theorem41_sizes(1, 1, SizeVariant::FixedRadius), 3);
        assert_eq!(theorem41_sizes(2, 2, SizeVariant::Eps { n_prime: 11 }), 124);
        assert_eq!(next_prime_ceil(7).unwrap(), 7);
        assert_eq!(next_prime_ceil(9).unwrap(), 11);
        assert_eq!(next_prime_ceil(2).unwrap(), 2);
        assert!(next_prime_ceil(1).is_err());
        assert_eq!(colorful_tverberg_size(2, 2, SizeVariant::FixedRadius).unwrap(), 10);
        assert_eq!(colorful_tverberg_size(1, 2, SizeVariant::FixedRadius).unwrap(), 4);
    }

    #[test]
    fn radon_square() {
        let pts = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])];
        let (parts, p) = tverberg_partition(&pts, 2).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(p, Point(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]));
    }

    #[test]
    fn exhaustive_line() {
        let pts: Vec<Point> = (1..=7).map(|v| pt(&[v])).collect();
        let (parts, p) = tverberg_partition(&pts, 3).unwrap();
        assert_eq!(parts.len(), 3);
        for part in &parts {
            let lo = part.iter().map(|&i| pts[i].0[0].clone()).min().unwrap();
            let hi = part.iter().map(|&i| pts[i].0[0].clone()).max().unwrap();
            assert!(lo <= p.0[0] && p.0[0] <= hi);
        }
    }

    #[test]
    fn exhaustive_plane_three_parts() {
        let pts = vec![
            pt(&[0, 0]),
            pt(&[4, 0]),
            pt(&[0, 4]),
            pt(&[4, 4]),
            pt(&[2, 1]),
            pt(&[1, 2]),
            pt(&[3, 3]),
        ];
        let (parts, _) = tverberg_partition(&pts, 3).unwrap();
        assert_eq!(parts.len(), 3);
    }

    #[test]
    fn sarkaria_many_parts() {
        // 10 = (4 - 1)(2 + 1) + 1 points, 4 parts: beyond the exhaustive
        // cap, so the tensor reduction runs.
        let pts = vec![
            pt(&[0, 0]),
            pt(&[7, 1]),
            pt(&[2, 8]),
            pt(&[-5, 3]),
            pt(&[-3, -6]),
            pt(&[4, -4]),
            pt(&[1, 2]),
            pt(&[-2, 1]),
            pt(&[3, 5]),
            pt(&[-1, -2]),
        ];
        let (parts, _) = tverberg_partition(&pts, 4).unwrap();
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|p| !p.is_empty()));
    }

    fn diamond_set(cx: i64, cy: i64) -> QuantSet {
        let center = pt(&[cx, cy]);
        let offsets = [
            Point(vec![Scalar::ratio(3, 2), s(0)]),
            Point(vec![Scalar::ratio(-3, 2), s(0)]),
            Point(vec![s(0), Scalar::ratio(3, 2)]),
            Point(vec![s(0), Scalar::ratio(-3, 2)]),
        ];
        QuantSet { points: offsets.iter().map(|o| center.add(o)).collect(), center }
    }

    fn interval_set(c: i64) -> QuantSet {
        QuantSet { center: pt(&[c]), points: vec![pt(&[c - 1]), pt(&[c + 1])] }
    }

    #[test]
    fn quantitative_intervals() {
        let sets: Vec<QuantSet> = (0..7).map(interval_set).collect();
        let cert =
            quantitative_tverberg(1, 2, &sets, &TverbergVariant::FixedRadius, 0).unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!() };
        let bound = Scalar::Exact(steinitz_radius_constant(1, &default_prec()).hi);
        assert!(ball.radius >= bound, "radius {} below r(1)", ball.radius);
        let Witness::Partition(w) = &cert.witness else { panic!() };
        assert_eq!(w.parts.len(), 2);
        assert_eq!(w.picks.len(), 4); // 2 blocks x 2d = 2
        assert!(!w.unused_sets.is_empty());
    }

    #[test]
    fn quantitative_plane_single_part() {
        // d = 2, m = 1: 10 sets, 4 center-parts, one block.
        let centers =
            [(0, 0), (7, 1), (2, 8), (-5, 3), (-3, -6), (4, -4), (1, 2), (-2, 1), (3, 5), (-1, -2)];
        let sets: Vec<QuantSet> = centers.iter().map(|&(x, y)| diamond_set(x, y)).collect();
        let cert =
            quantitative_tverberg(2, 1, &sets, &TverbergVariant::FixedRadius, 0).unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!() };
        let bound = Scalar::Exact(steinitz_radius_constant(2, &default_prec()).hi);
        assert!(ball.radius >= bound, "radius {} below r(2)", ball.radius);
    }

    #[test]
    fn block_seed_freedom() {
        let sets: Vec<QuantSet> = (0..7).map(interval_set).collect();
        for seed in [0u64, 1, 2] {
            let cert =
                quantitative_tverberg(1, 2, &sets, &TverbergVariant::FixedRadius, seed).unwrap();
            let Claim::Ball(ball) = &cert.claim else { panic!() };
            assert!(ball.radius >= Scalar::ratio(2, 5));
        }
    }

    #[test]
    fn quantitative_rejects_wrong_size() {
        let sets: Vec<QuantSet> = (0..6).map(interval_set).collect();
        assert!(matches!(
            quantitative_tverberg(1, 2, &sets, &TverbergVariant::FixedRadius, 0),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn colorful_intervals() {
        // d = 1, m = 2: two classes of four intervals each.
        let class_a: Vec<QuantSet> = [0, 3, -2, 5].iter().map(|&c| interval_set(c)).collect();
        let class_b: Vec<QuantSet> = [1, -4, 2, -1].iter().map(|&c| interval_set(c)).collect();
        let cert = colorful_quantitative_tverberg(
            1,
            2,
            &[class_a, class_b],
            &TverbergVariant::FixedRadius,
            None,
        )
        .unwrap();
        let Claim::Ball(ball) = &cert.claim else { panic!() };
        // Interval of length 2 radius >= 2 (pi/e^2) / 2.
        let bound = Scalar::Exact(steinitz_radius_constant(1, &default_prec()).hi);
        assert!(ball.radius >= bound);
        let Witness::Partition(w) = &cert.witness else { panic!() };
        for part in &w.parts {
            for i in 0..2 {
                let count = part
                    .iter()
                    .filter(|&&pi| w.picks[pi].class == Some(i))
                    .count();
                assert!(count <= 2, "class {i} multiplicity {count} above 2d");
            }
        }
    }

    #[test]
    fn colorful_plane_hits_budget() {
        let centers = [(0, 0), (7, 1), (2, 8), (-5, 3), (-3, -6), (4, -4), (1, 2), (-2, 1), (3, 5), (-1, -2)];
        let class: Vec<QuantSet> = centers.iter().map(|&(x, y)| diamond_set(x, y)).collect();
        let classes = vec![class.clone(), class.clone(), class];
        let err = colorful_quantitative_tverberg(
            2,
            2,
            &classes,
            &TverbergVariant::FixedRadius,
            None,
        );
        assert!(matches!(err, Err(Error::BudgetExceeded(_))), "got {err:?}");
    }
}
