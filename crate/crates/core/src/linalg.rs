//! Exact Gauss-Jordan elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// One solution (free variables set to zero) and the indices of the free columns.
    Solved {
        particular: Vec<Rational>,
        free: Vec<usize>,
    },
    Inconsistent,
}

/// Solves `a * x = b` for a dense `rows x cols` matrix.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> LinearSolution {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        debug_assert!(m[i][c].is_one());
        particular[c] = m[i][cols].clone();
    }
    let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
    LinearSolution::Solved { particular, free }
}
