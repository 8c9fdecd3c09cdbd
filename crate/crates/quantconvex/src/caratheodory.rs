//! Caratheodory-type selection algorithms.
//!
//! The workhorse is an exact-rational implementation of Wolfe's
//! minimum-norm-point algorithm, which terminates finitely and makes the
//! Barany-Onn colorful pivoting argument executable verbatim: the distance
//! from the target to the rainbow hull strictly decreases at every swap, so
//! the loop cannot revisit a transversal.

use crate::convexops::lp;
use crate::core::Point;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use crate::convexops::linalg::solve_consistent;

/// Convex weights supported on few points: `indices[i]` into the original
/// list carries weight `weights[i] > 0`.
#[derive(Clone, Debug)]
pub struct SparseCombination {
    pub indices: Vec<usize>,
    pub weights: Vec<Scalar>,
}

impl SparseCombination {
    pub fn combine(&self, points: &[Point]) -> Point {
        let d = points[self.indices[0]].dim();
        let mut acc = Point::origin(d);
        for (&i, w) in self.indices.iter().zip(&self.weights) {
            acc = acc.add(&points[i].scale(w));
        }
        acc
    }
}

/// Expresses `x` as a convex combination of at most `dim + 1` of the given
/// points, or fails the precondition when `x` is outside the hull. The
/// sparse support comes straight from a basic feasible solution.
pub fn caratheodory_reduce(points: &[Point], x: &Point) -> Result<SparseCombination> {
    let weights = lp::convex_combination(points, x).ok_or_else(|| {
        Error::PreconditionFailed("target point lies outside the convex hull".into())
    })?;
    let indices: Vec<usize> = (0..points.len()).filter(|&i| !weights[i].is_zero()).collect();
    let combo = SparseCombination {
        weights: indices.iter().map(|&i| weights[i].clone()).collect(),
        indices,
    };
    debug_assert!(combo.indices.len() <= x.dim() + 1);
    debug_assert_eq!(combo.combine(points), *x);
    Ok(combo)
}

/// Minimum-norm point of `conv(points)` with its convex weights, by Wolfe's
/// algorithm over exact rationals.
pub fn min_norm_point(points: &[Point]) -> Result<(Point, SparseCombination)> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let d = points[0].dim();
    let norms: Vec<Scalar> = points.iter().map(Point::norm_sq).collect();
    let start = (0..points.len()).min_by_key(|&i| norms[i].clone()).unwrap();
    let mut corral: Vec<usize> = vec![start];
    let mut weights: Vec<Scalar> = vec![Scalar::one()];
    loop {
        let y = corral
            .iter()
            .zip(&weights)
            .fold(Point::origin(d), |acc, (&i, w)| acc.add(&points[i].scale(w)));
        // Optimality: y is minimal iff y . p >= |y|^2 for every p.
        let y_sq = y.norm_sq();
        let entering = (0..points.len())
            .filter(|&j| y.dot(&points[j]) < y_sq)
            .min_by_key(|&j| y.dot(&points[j]));
        let Some(enter) = entering else {
            return Ok((y, SparseCombination { indices: corral, weights }));
        };
        debug_assert!(!corral.contains(&enter), "corral point cannot improve");
        corral.push(enter);
        weights.push(Scalar::zero());
        // Minor cycles: move toward the affine minimizer, dropping points
        // whose weight hits zero, until the minimizer is a convex one.
        loop {
            let alpha = affine_minimizer(points, &corral)?;
            if alpha.iter().all(|a| a.is_positive()) {
                weights = alpha;
                break;
            }
            let theta = corral
                .iter()
                .enumerate()
                .filter(|&(i, _)| !alpha[i].is_positive())
                .map(|(i, _)| &weights[i] / &(&weights[i] - &alpha[i]))
                .min()
                .expect("some coordinate is non-positive");
            let one_minus = &Scalar::one() - &theta;
            let mut next_corral = Vec::new();
            let mut next_weights = Vec::new();
            for i in 0..corral.len() {
                let w = &(&one_minus * &weights[i]) + &(&theta * &alpha[i]);
                if w.is_positive() {
                    next_corral.push(corral[i]);
                    next_weights.push(w);
                }
            }
            corral = next_corral;
            weights = next_weights;
        }
    }
}

/// Minimizer of the norm over the affine hull of the corral points: solve
/// the KKT system `sum alpha = 1`, `s_i . (sum_j alpha_j s_j) + mu = 0`.
fn affine_minimizer(points: &[Point], corral: &[usize]) -> Result<Vec<Scalar>> {
    let k = corral.len();
    let mut mat = Vec::with_capacity(k + 1);
    let mut row0 = vec![Scalar::one(); k];
    row0.push(Scalar::zero());
    mat.push(row0);
    for &i in corral {
        let mut row: Vec<Scalar> =
            corral.iter().map(|&j| points[i].dot(&points[j])).collect();
        row.push(Scalar::one()); // multiplier column
        mat.push(row);
    }
    let mut rhs = vec![Scalar::zero(); k + 1];
    rhs[0] = Scalar::one();
    let sol = solve_consistent(&mat, &rhs)
        .ok_or_else(|| Error::Internal("corral lost affine independence".into()))?;
    Ok(sol[..k].to_vec())
}

/// Nearest point to `x` in `conv(points)` with its convex weights.
pub fn nearest_point(points: &[Point], x: &Point) -> Result<(Point, SparseCombination)> {
    let shifted: Vec<Point> = points.iter().map(|p| p.sub(x)).collect();
    let (y, combo) = min_norm_point(&shifted)?;
    Ok((y.add(x), combo))
}

/// Colorful Caratheodory by Barany-Onn pivoting.
///
/// Needs `dim + 1` classes, each with `x` in its hull; returns one point
/// index per class together with convex weights putting `x` in the rainbow
/// hull. Weights of zero are legitimate (the point still witnesses the
/// selection).
pub fn colorful_caratheodory(classes: &[Vec<Point>], x: &Point) -> Result<(Vec<usize>, Vec<Scalar>)> {
    let d = x.dim();
    if classes.len() != d + 1 {
        return Err(Error::PreconditionFailed(format!(
            "colorful selection needs {} classes, got {}",
            d + 1,
            classes.len()
        )));
    }
    for (i, class) in classes.iter().enumerate() {
        if !lp::in_convex_hull(class, x) {
            return Err(Error::PreconditionFailed(format!(
                "class {i} does not contain the target in its hull"
            )));
        }
    }
    let mut transversal: Vec<usize> = vec![0; classes.len()];
    loop {
        let pts: Vec<Point> = transversal
            .iter()
            .enumerate()
            .map(|(c, &i)| classes[c][i].clone())
            .collect();
        let (y, combo) = nearest_point(&pts, x)?;
        if y == *x {
            let mut weights = vec![Scalar::zero(); classes.len()];
            for (&pos, w) in combo.indices.iter().zip(&combo.weights) {
                weights[pos] = w.clone();
            }
            return Ok((transversal, weights));
        }
        // A class whose current point carries no weight must exist: the
        // support of a nearest point distinct from x spans at most d points.
        let swap_class = (0..classes.len())
            .find(|c| !combo.indices.contains(c) || combo.weights[combo.indices.iter().position(|i| i == c).unwrap()].is_zero())
            .ok_or_else(|| Error::Internal("no zero-weight class at a non-optimal step".into()))?;
        let dir = x.sub(&y);
        let best = (0..classes[swap_class].len())
            .max_by_key(|&i| dir.dot(&classes[swap_class][i]))
            .unwrap();
        debug_assert_ne!(
            best, transversal[swap_class],
            "swap must change the transversal; distance would stall"
        );
        transversal[swap_class] = best;
    }
}

/// Very colorful Caratheodory: given `dim` classes each containing `x` in
/// its hull and an arbitrary anchor `q`, picks one point per class so that
/// `x` lies in the hull of the picks together with `q`.
///
/// Each class is first shrunk to the support of one representation of `x`
/// (at most `dim + 1` points, which preserves the precondition), and the
/// guaranteed rainbow tuple is then found by exhaustive search over at most
/// `(dim + 1)^dim` candidates.
pub fn very_colorful_caratheodory(
    classes: &[Vec<Point>],
    q: &Point,
    x: &Point,
) -> Result<(Vec<usize>, Vec<Scalar>)> {
    let d = x.dim();
    if classes.len() != d {
        return Err(Error::PreconditionFailed(format!(
            "very colorful selection needs {} classes, got {}",
            d,
            classes.len()
        )));
    }
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(d);
    for class in classes {
        reduced.push(caratheodory_reduce(class, x)?.indices);
    }
    let mut choice = vec![0usize; d];
    loop {
        let mut pts: Vec<Point> = (0..d)
            .map(|c| classes[c][reduced[c][choice[c]]].clone())
            .collect();
        pts.push(q.clone());
        if let Some(w) = lp::convex_combination(&pts, x) {
            let picks: Vec<usize> = (0..d).map(|c| reduced[c][choice[c]]).collect();
            return Ok((picks, w));
        }
        // Advance the mixed-radix counter over the reduced classes.
        let mut c = 0;
        loop {
            if c == d {
                return Err(Error::Internal(
                    "exhausted rainbow tuples without a selection".into(),
                ));
            }
            choice[c] += 1;
            if choice[c] < reduced[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

/// Shrinks a spanning set: given `P` with few vertices inside `conv(points)`,
/// returns index set `S` with every vertex of `P` still in `conv(S)`. The
/// size is at most `vertices * (dim + 1)`.
pub fn reduce_support(points: &[Point], hull_vertices: &[Point]) -> Result<Vec<usize>> {
    let mut keep: Vec<usize> = Vec::new();
    for v in hull_vertices {
        for i in caratheodory_reduce(points, v)?.indices {
            if !keep.contains(&i) {
                keep.push(i);
            }
        }
    }
    keep.sort_unstable();
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&v| s(v)).collect())
    }

    #[test]
    fn reduce_square_center() {
        let pts = vec![
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[2, 2]),
            pt(&[0, 2]),
            pt(&[1, 0]),
            pt(&[0, 1]),
        ];
        let x = pt(&[1, 1]);
        let c = caratheodory_reduce(&pts, &x).unwrap();
        assert!(c.indices.len() <= 3);
        assert_eq!(c.combine(&pts), x);
        assert!(caratheodory_reduce(&pts, &pt(&[5, 5])).is_err());
    }

    #[test]
    fn min_norm_on_a_segment() {
        // Nearest point to 0 on the segment (2,0)-(0,2) is (1,1).
        let (y, combo) = min_norm_point(&[pt(&[2, 0]), pt(&[0, 2])]).unwrap();
        assert_eq!(y, pt(&[1, 1]));
        assert_eq!(combo.indices.len(), 2);
        // 0 inside the hull: the minimum norm point is 0 itself.
        let (y, _) = min_norm_point(&[pt(&[2, 0]), pt(&[0, 2]), pt(&[-1, -1])]).unwrap();
        assert_eq!(y, pt(&[0, 0]));
    }

    #[test]
    fn nearest_point_shifts() {
        let square = [pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])];
        let (y, _) = nearest_point(&square, &pt(&[3, 0])).unwrap();
        assert_eq!(y, pt(&[1, 0]));
        let inside = Point(vec![Scalar::ratio(1, 3), Scalar::ratio(2, 3)]);
        let (y, combo) = nearest_point(&square, &inside).unwrap();
        assert_eq!(y, inside);
        assert_eq!(combo.combine(&square).add(&pt(&[0, 0])), y.sub(&y).add(&y));
    }

    #[test]
    fn colorful_selection_hits_target() {
        // Three classes of triangles around the origin in R^2.
        let classes = vec![
            vec![pt(&[3, 0]), pt(&[-2, 2]), pt(&[-2, -2]), pt(&[9, 9])],
            vec![pt(&[0, 3]), pt(&[-2, -1]), pt(&[2, -1])],
            vec![pt(&[-3, 0]), pt(&[2, 2]), pt(&[2, -2]), pt(&[0, 1])],
        ];
        let x = pt(&[0, 0]);
        let (picks, weights) = colorful_caratheodory(&classes, &x).unwrap();
        let total: Scalar = weights.iter().cloned().sum();
        assert_eq!(total, s(1));
        let mut acc = Point::origin(2);
        for (c, (&i, w)) in picks.iter().zip(&weights).enumerate() {
            acc = acc.add(&classes[c][i].scale(w));
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn colorful_rejects_bad_preconditions() {
        let classes = vec![
            vec![pt(&[1, 0]), pt(&[2, 0])], // hull misses the origin
            vec![pt(&[0, 1]), pt(&[0, -1])],
            vec![pt(&[1, 1]), pt(&[-1, -1])],
        ];
        assert!(colorful_caratheodory(&classes, &pt(&[0, 0])).is_err());
        assert!(colorful_caratheodory(&classes[..2].to_vec(), &pt(&[0, 0])).is_err());
    }

    #[test]
    fn very_colorful_with_anchor() {
        let classes = vec![
            vec![pt(&[2, 0]), pt(&[-2, 0]), pt(&[0, 5])],
            vec![pt(&[0, 2]), pt(&[0, -2]), pt(&[7, 0])],
        ];
        let x = pt(&[0, 0]);
        let q = pt(&[-1, -1]);
        let (picks, w) = very_colorful_caratheodory(&classes, &q, &x).unwrap();
        let mut pts: Vec<Point> = picks
            .iter()
            .enumerate()
            .map(|(c, &i)| classes[c][i].clone())
            .collect();
        pts.push(q);
        let total: Scalar = w.iter().cloned().sum();
        assert_eq!(total, s(1));
        let mut acc = Point::origin(2);
        for (p, wi) in pts.iter().zip(&w) {
            acc = acc.add(&p.scale(wi));
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn support_reduction_bound() {
        let mut cloud = Vec::new();
        for i in -3i64..=3 {
            for j in -3i64..=3 {
                cloud.push(pt(&[i, j]));
            }
        }
        let square = [pt(&[-1, -1]), pt(&[1, -1]), pt(&[1, 1]), pt(&[-1, 1])];
        let keep = reduce_support(&cloud, &square).unwrap();
        assert!(keep.len() <= 4 * 3);
        let kept: Vec<Point> = keep.iter().map(|&i| cloud[i].clone()).collect();
        for v in &square {
            assert!(lp::in_convex_hull(&kept, v));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn reduce_agrees_with_membership(
            coords in proptest::collection::vec((-5i64..=5, -5i64..=5), 3..10),
            tx in -5i64..=5,
            ty in -5i64..=5,
        ) {
            let pts: Vec<Point> = coords.iter().map(|&(a, b)| pt(&[a, b])).collect();
            let x = pt(&[tx, ty]);
            let reduced = caratheodory_reduce(&pts, &x);
            prop_assert_eq!(reduced.is_ok(), lp::in_convex_hull(&pts, &x));
            if let Ok(c) = reduced {
                prop_assert_eq!(c.combine(&pts), x);
                prop_assert!(c.indices.len() <= 3);
            }
        }

        #[test]
        fn nearest_point_is_no_farther_than_any_vertex(
            coords in proptest::collection::vec((-5i64..=5, -5i64..=5), 1..8),
            tx in -8i64..=8,
            ty in -8i64..=8,
        ) {
            let pts: Vec<Point> = coords.iter().map(|&(a, b)| pt(&[a, b])).collect();
            let x = pt(&[tx, ty]);
            let (y, combo) = nearest_point(&pts, &x).unwrap();
            prop_assert_eq!(combo.combine(&pts), y.clone());
            let dist = y.sub(&x).norm_sq();
            for p in &pts {
                prop_assert!(dist <= p.sub(&x).norm_sq());
            }
        }
    }
}
