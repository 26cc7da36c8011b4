//! Exact dense linear algebra over the rationals, used by the
//! polynomial-reconstruction routines. Plain Gauss-Jordan; matrices here are
//! at most a few hundred columns.

use crate::rational::Rational;
use num::{One, Zero};

/// Reduced row echelon form in place; returns pivot column indices.
fn rref(m: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let t = m[i][col].clone();
                for c in 0..m[i].len() {
                    let s = &m[row][c] * &t;
                    m[i][c] -= s;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of the nullspace of the matrix whose rows are `rows`.
pub fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve A x = b expecting a unique solution; None if rank-deficient or
/// inconsistent.
pub fn solve_unique(a: Vec<Vec<Rational>>, b: Vec<Rational>, ncols: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let pivots = rref(&mut aug, ncols);
    if pivots.len() != ncols {
        return None;
    }
    // inconsistent rows: 0 = nonzero
    for row in aug.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][ncols].clone();
    }
    Some(x)
}
