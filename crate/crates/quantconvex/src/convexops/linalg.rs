//! Exact Gaussian elimination helpers used across the geometry code.

use crate::scalar::Scalar;

/// Row-reduces `mat` in place and returns the pivot columns.
fn row_reduce(mat: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for j in c..cols {
            mat[r][j] = &mat[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    mat[i][j] = &mat[i][j] - &(&f * &mat[r][j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mat: &[Vec<Scalar>]) -> usize {
    let mut m = mat.to_vec();
    row_reduce(&mut m).len()
}

/// Any solution of `mat . x = rhs` (free variables set to zero), or `None`
/// if the system is inconsistent.
pub fn solve_consistent(mat: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = mat.len();
    assert_eq!(rows, rhs.len());
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = mat[0].len();
    let mut aug: Vec<Vec<Scalar>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    // Inconsistent iff some pivot landed in the augmented column.
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// A nonzero kernel vector of `mat`, or `None` when the kernel is trivial.
/// Deterministic: frees the lowest-index non-pivot column.
pub fn kernel_vector(mat: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let rows = mat.len();
    if rows == 0 {
        return None;
    }
    let cols = mat[0].len();
    let mut m = mat.to_vec();
    let pivots = row_reduce(&mut m);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Scalar::zero(); cols];
    x[free] = Scalar::one();
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = -&m[i][free];
    }
    Some(x)
}

/// Determinant of a square matrix.
pub fn det(mat: &[Vec<Scalar>]) -> Scalar {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut result = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(c, p);
            result = -result;
        }
        result = &result * &m[c][c];
        let inv = m[c][c].recip();
        for i in (c + 1)..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    m[i][j] = &m[i][j] - &(&f * &m[c][j]);
                }
            }
        }
    }
    result
}
