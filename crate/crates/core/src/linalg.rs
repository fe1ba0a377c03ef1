//! Exact Gaussian elimination.

use crate::scalar::{Field, Scalar};

/// Rank of a matrix given by rows.
pub fn rank(mut rows: Vec<Vec<Scalar>>, field: Field) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse(&rows[rank][col], field);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = &row[col] * &inv;
                for c in col..cols {
                    let delta = &factor * &pivot_row[c];
                    row[c] = &row[c] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inverse(x: &Scalar, field: Field) -> Scalar {
    match x {
        Scalar::Q(q) => Scalar::Q(q.recip()),
        Scalar::F2(_) => field.one(),
    }
}
