//! Exact-rational simplex.
//!
//! The engine solves standard-form problems (min c.y, A y = b, y >= 0) with
//! Bland's pivoting rule and lexicographic index tie-breaking, which makes
//! every solve deterministic and finitely terminating. The half-space
//! interface, Farkas certificates, and convex-membership helpers are built
//! on top as separate solves, so no tableau surgery is ever needed for
//! certificates.

use crate::core::{HalfSpace, Point};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of a standard-form solve.
#[derive(Clone, Debug)]
pub enum StandardOutcome {
    Optimal { y: Vec<Scalar>, value: Scalar },
    Infeasible,
    /// Feasible point plus a recession direction with negative cost.
    Unbounded { y: Vec<Scalar>, ray: Vec<Scalar> },
}

/// min `cost . y` subject to `rows . y = rhs`, `y >= 0`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub rows: Vec<Vec<Scalar>>,
    pub rhs: Vec<Scalar>,
    pub cost: Vec<Scalar>,
}

struct Tableau {
    /// `m` rows of `n` columns plus the rhs column appended.
    rows: Vec<Vec<Scalar>>,
    /// Reduced-cost row of length `n` plus negated objective value.
    obj: Vec<Scalar>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for j in 0..=self.ncols {
            self.rows[r][j] = &self.rows[r][j] * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.ncols {
                    self.rows[i][j] = &self.rows[i][j] - &(&f * &pivot_row[j]);
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for j in 0..=self.ncols {
                self.obj[j] = &self.obj[j] - &(&f * &pivot_row[j]);
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: entering column is the lowest index with negative
    /// reduced cost; leaving row is the minimum ratio, ties broken by the
    /// lowest basic variable index. Returns the entering column on
    /// unboundedness.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Option<usize> {
        loop {
            let Some(enter) = (0..self.ncols).find(|&j| allowed(j) && self.obj[j].is_negative())
            else {
                return None; // optimal
            };
            let mut leave: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][enter].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Some(enter),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Scalar> {
        let mut y = vec![Scalar::zero(); n];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < n {
                y[bi] = self.rows[i][self.ncols].clone();
            }
        }
        y
    }
}

impl StandardLp {
    pub fn solve(&self) -> StandardOutcome {
        let m = self.rows.len();
        let n = self.cost.len();
        debug_assert!(self.rows.iter().all(|r| r.len() == n));
        debug_assert_eq!(self.rhs.len(), m);

        // Phase 1: artificial basis, flip rows so rhs >= 0.
        let ncols = n + m;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(m);
        for i in 0..m {
            let flip = self.rhs[i].is_negative();
            let mut row: Vec<Scalar> = self.rows[i]
                .iter()
                .map(|v| if flip { -v } else { v.clone() })
                .collect();
            row.extend((0..m).map(|k| {
                if k == i {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            row.push(if flip { -&self.rhs[i] } else { self.rhs[i].clone() });
            rows.push(row);
        }
        // Phase-1 reduced costs: cost 1 on artificials, reduce against the
        // artificial basis by subtracting every row.
        let mut obj = vec![Scalar::zero(); ncols + 1];
        for j in n..ncols {
            obj[j] = Scalar::one();
        }
        for row in &rows {
            for j in 0..=ncols {
                obj[j] = &obj[j] - &row[j];
            }
        }
        let mut t = Tableau { rows, obj, basis: (n..ncols).collect(), ncols };
        let unbounded = t.run(|_| true);
        debug_assert!(unbounded.is_none(), "phase 1 cannot be unbounded");
        // Phase-1 objective value is -obj[ncols].
        if t.obj[t.ncols].is_negative() {
            return StandardOutcome::Infeasible;
        }

        // Drive basic artificials out; drop redundant rows.
        let mut drop_rows = Vec::new();
        for i in 0..m {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => drop_rows.push(i),
                }
            }
        }
        for &i in drop_rows.iter().rev() {
            t.rows.remove(i);
            t.basis.remove(i);
        }
        // Remove artificial columns.
        for row in &mut t.rows {
            let rhs = row.pop().unwrap();
            row.truncate(n);
            row.push(rhs);
        }
        t.ncols = n;

        // Phase 2.
        let mut obj = vec![Scalar::zero(); n + 1];
        obj[..n].clone_from_slice(&self.cost);
        for (i, &bi) in t.basis.iter().enumerate() {
            if !obj[bi].is_zero() {
                let f = obj[bi].clone();
                let row = t.rows[i].clone();
                for j in 0..=n {
                    obj[j] = &obj[j] - &(&f * &row[j]);
                }
            }
        }
        t.obj = obj;
        match t.run(|_| true) {
            None => {
                let y = t.solution(n);
                let value = self.cost.iter().zip(&y).map(|(c, v)| c * v).sum();
                StandardOutcome::Optimal { y, value }
            }
            Some(enter) => {
                let y = t.solution(n);
                let mut ray = vec![Scalar::zero(); n];
                ray[enter] = Scalar::one();
                for (i, &bi) in t.basis.iter().enumerate() {
                    if bi < n {
                        ray[bi] = -&t.rows[i][enter];
                    }
                }
                StandardOutcome::Unbounded { y, ray }
            }
        }
    }
}

/// Result of a half-space LP solve.
#[derive(Clone, Debug)]
pub enum LpResult {
    /// Optimal witness point and objective value.
    Feasible { point: Point, value: Scalar },
    /// Farkas certificate: multipliers `y >= 0` with `sum y_i a_i = 0` and
    /// `sum y_i b_i < 0`.
    Infeasible { farkas: Vec<Scalar> },
    /// Feasible point plus a recession ray with positive objective.
    Unbounded { point: Point, ray: Point },
}

fn check_dims(constraints: &[HalfSpace], dim: usize) -> Result<()> {
    for h in constraints {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: h.dim() });
        }
    }
    Ok(())
}

/// Maximizes `objective . x` over the intersection of `constraints`.
///
/// Free variables are split into positive and negative parts; every
/// inequality gets a slack. Deterministic under Bland's rule.
pub fn lp_solve(constraints: &[HalfSpace], objective: &[Scalar]) -> Result<LpResult> {
    let d = objective.len();
    if d == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    check_dims(constraints, d)?;
    let m = constraints.len();
    // Columns: x+ (d), x- (d), slack (m).
    let n = 2 * d + m;
    let mut rows = Vec::with_capacity(m);
    for (i, h) in constraints.iter().enumerate() {
        let mut row: Vec<Scalar> = Vec::with_capacity(n);
        row.extend(h.a.iter().cloned());
        row.extend(h.a.iter().map(|v| -v));
        row.extend((0..m).map(|k| {
            if k == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }));
        rows.push(row);
    }
    let rhs: Vec<Scalar> = constraints.iter().map(|h| h.b.clone()).collect();
    let mut cost = vec![Scalar::zero(); n];
    for j in 0..d {
        cost[j] = -&objective[j];
        cost[d + j] = objective[j].clone();
    }
    let lp = StandardLp { rows, rhs, cost };
    match lp.solve() {
        StandardOutcome::Optimal { y, .. } => {
            let point = assemble_point(&y, d);
            let value = point.dot_slice(objective);
            Ok(LpResult::Feasible { point, value })
        }
        StandardOutcome::Infeasible => {
            let farkas = farkas_certificate(constraints, d)?;
            Ok(LpResult::Infeasible { farkas })
        }
        StandardOutcome::Unbounded { y, ray } => {
            Ok(LpResult::Unbounded { point: assemble_point(&y, d), ray: assemble_point(&ray, d) })
        }
    }
}

fn assemble_point(y: &[Scalar], d: usize) -> Point {
    Point((0..d).map(|j| &y[j] - &y[d + j]).collect())
}

/// Finds `y >= 0` with `sum y_i a_i = 0` and `sum y_i b_i = -1`, which
/// exists exactly when the constraint system is infeasible.
fn farkas_certificate(constraints: &[HalfSpace], d: usize) -> Result<Vec<Scalar>> {
    let m = constraints.len();
    let mut rows = Vec::with_capacity(d + 1);
    for coord in 0..d {
        rows.push(constraints.iter().map(|h| h.a[coord].clone()).collect());
    }
    rows.push(constraints.iter().map(|h| h.b.clone()).collect());
    let mut rhs = vec![Scalar::zero(); d];
    rhs.push(Scalar::from_int(-1));
    let lp = StandardLp { rows, rhs, cost: vec![Scalar::zero(); m] };
    match lp.solve() {
        StandardOutcome::Optimal { y, .. } => {
            debug_assert!(verify_farkas(constraints, &y));
            Ok(y)
        }
        _ => Err(Error::Internal("infeasible LP without a Farkas certificate".into())),
    }
}

/// Checks a Farkas certificate: `y >= 0`, `sum y_i a_i = 0`,
/// `sum y_i b_i < 0`.
pub fn verify_farkas(constraints: &[HalfSpace], y: &[Scalar]) -> bool {
    if y.len() != constraints.len() || y.iter().any(|v| v.is_negative()) {
        return false;
    }
    let d = match constraints.first() {
        Some(h) => h.dim(),
        None => return false,
    };
    for coord in 0..d {
        let s: Scalar = constraints
            .iter()
            .zip(y)
            .map(|(h, v)| &h.a[coord] * v)
            .sum();
        if !s.is_zero() {
            return false;
        }
    }
    let s: Scalar = constraints.iter().zip(y).map(|(h, v)| &h.b * v).sum();
    s.is_negative()
}

/// Convex-combination weights expressing `x` over `points`, when they
/// exist. The weights come from a basic feasible solution, so at most
/// `d + 1` of them are nonzero.
pub fn convex_combination(points: &[Point], x: &Point) -> Option<Vec<Scalar>> {
    let d = x.dim();
    let n = points.len();
    if n == 0 {
        return None;
    }
    let mut rows = Vec::with_capacity(d + 1);
    for coord in 0..d {
        rows.push(points.iter().map(|p| p.0[coord].clone()).collect());
    }
    rows.push(vec![Scalar::one(); n]);
    let mut rhs: Vec<Scalar> = x.0.to_vec();
    rhs.push(Scalar::one());
    let lp = StandardLp { rows, rhs, cost: vec![Scalar::zero(); n] };
    match lp.solve() {
        StandardOutcome::Optimal { y, .. } => Some(y),
        _ => None,
    }
}

/// Exact membership test `x in conv(points)`.
pub fn in_convex_hull(points: &[Point], x: &Point) -> bool {
    convex_combination(points, x).is_some()
}

/// Optimal dual multipliers for `max objective . x` over `constraints`,
/// assuming a finite optimum: `y >= 0`, `sum y_i a_i = objective`, value
/// `sum y_i b_i`. A basic solution, so at most `d` multipliers are nonzero.
pub fn lp_dual_multipliers(constraints: &[HalfSpace], objective: &[Scalar]) -> Result<Vec<Scalar>> {
    let d = objective.len();
    check_dims(constraints, d)?;
    let mut rows = Vec::with_capacity(d);
    for coord in 0..d {
        rows.push(constraints.iter().map(|h| h.a[coord].clone()).collect());
    }
    let rhs = objective.to_vec();
    let cost: Vec<Scalar> = constraints.iter().map(|h| h.b.clone()).collect();
    let lp = StandardLp { rows, rhs, cost };
    match lp.solve() {
        StandardOutcome::Optimal { y, .. } => Ok(y),
        StandardOutcome::Infeasible => Err(Error::Unbounded),
        StandardOutcome::Unbounded { .. } => Err(Error::EmptyPolytope),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn hs(a: &[i64], b: i64) -> HalfSpace {
        HalfSpace::new(a.iter().map(|&v| s(v)).collect(), s(b)).unwrap()
    }

    fn pt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&v| s(v)).collect())
    }

    #[test]
    fn one_var_box() {
        // max x over {x <= 1, -x <= 0}
        let r = lp_solve(&[hs(&[1], 1), hs(&[-1], 0)], &[s(1)]).unwrap();
        match r {
            LpResult::Feasible { point, value } => {
                assert_eq!(point, pt(&[1]));
                assert_eq!(value, s(1));
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn contradictory_bounds() {
        // {x >= 1, x <= 0}
        let cs = [hs(&[-1], -1), hs(&[1], 0)];
        let r = lp_solve(&cs, &[s(1)]).unwrap();
        match r {
            LpResult::Infeasible { farkas } => assert!(verify_farkas(&cs, &farkas)),
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn corner_optimum() {
        // max x+y over the unit square.
        let cs = [hs(&[1, 0], 1), hs(&[-1, 0], 0), hs(&[0, 1], 1), hs(&[0, -1], 0)];
        let r = lp_solve(&cs, &[s(1), s(1)]).unwrap();
        match r {
            LpResult::Feasible { point, value } => {
                assert_eq!(value, s(2));
                assert_eq!(point, pt(&[1, 1]));
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn unbounded_ray() {
        // max x over {y <= 1}: unbounded in x.
        let cs = [hs(&[0, 1], 1)];
        let r = lp_solve(&cs, &[s(1), s(0)]).unwrap();
        match r {
            LpResult::Unbounded { point, ray } => {
                assert!(cs[0].contains(&point));
                assert!(ray.0[0].is_positive());
                // Recession direction: a . ray <= 0 for every constraint.
                assert!(!pt(&[0, 1]).dot(&ray).is_positive());
            }
            _ => panic!("expected unbounded"),
        }
    }

    #[test]
    fn membership_and_weights() {
        let square = [pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let inside = Point(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
        let w = convex_combination(&square, &inside).unwrap();
        let total: Scalar = w.iter().cloned().sum();
        assert_eq!(total, s(1));
        for coord in 0..2 {
            let c: Scalar = square.iter().zip(&w).map(|(p, wi)| &p.0[coord] * wi).sum();
            assert_eq!(c, Scalar::ratio(1, 2));
        }
        assert!(!in_convex_hull(&square, &pt(&[2, 0])));
        // Basic solution support is at most d+1 = 3.
        assert!(w.iter().filter(|v| !v.is_zero()).count() <= 3);
    }

    #[test]
    fn dual_multipliers() {
        // max x+y over unit square: duals pick the two upper constraints.
        let cs = [hs(&[1, 0], 1), hs(&[-1, 0], 0), hs(&[0, 1], 1), hs(&[0, -1], 0)];
        let obj = [s(1), s(1)];
        let y = lp_dual_multipliers(&cs, &obj).unwrap();
        assert!(y.iter().all(|v| !v.is_negative()));
        for coord in 0..2 {
            let lhs: Scalar = cs.iter().zip(&y).map(|(h, v)| &h.a[coord] * v).sum();
            assert_eq!(lhs, obj[coord]);
        }
        let value: Scalar = cs.iter().zip(&y).map(|(h, v)| &h.b * v).sum();
        assert_eq!(value, s(2));
        assert!(y.iter().filter(|v| !v.is_zero()).count() <= 2);
    }

    #[test]
    fn determinism() {
        let cs = [hs(&[1, 1], 4), hs(&[-1, 2], 3), hs(&[0, -1], 0), hs(&[-1, 0], 0)];
        let a = format!("{:?}", lp_solve(&cs, &[s(3), s(2)]).unwrap());
        let b = format!("{:?}", lp_solve(&cs, &[s(3), s(2)]).unwrap());
        assert_eq!(a, b);
    }
}
