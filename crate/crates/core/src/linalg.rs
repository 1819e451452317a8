//! Dense exact linear algebra over Q(i): reduced row echelon form, solving,
//! nullspaces and rank. Matrices here are small (structure tables, Gram
//! levels, centraliser systems), so a plain fraction-based elimination is the
//! right tool.

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Canonical nullspace basis (one vector per free column, free coordinate 1).
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&work[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b`; `None` when inconsistent or underdetermined.
pub fn solve_unique(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    if rows == 0 {
        return None;
    }
    let cols = a[0].len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent: pivot in the augmented column
    if pivots.contains(&cols) {
        return None;
    }
    if pivots.len() != cols {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Does `v` lie in the row span of `rows`?
pub fn in_span(rows: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let base: Matrix = rows.to_vec();
    let mut extended = base.clone();
    extended.push(v.to_vec());
    rank(&base) == rank(&extended)
}
