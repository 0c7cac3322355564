//! Smith normal form of integer matrices, exact arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form of `m`: nonnegative entries
/// `d_1 | d_2 | ...` with zeros trailing. The input is consumed as a dense
/// row-major matrix; rows of unequal length are not allowed.
#[allow(clippy::needless_range_loop)] // elimination reads one row while writing another
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let n = rows.min(cols);

    for k in 0..n {
        'pivot: loop {
            let Some((pi, pj)) = min_nonzero(&m, k) else {
                break 'pivot; // submatrix is zero
            };
            m.swap(k, pi);
            swap_cols(&mut m, k, pj);

            let mut dirty = false;
            for i in k + 1..rows {
                if !m[i][k].is_zero() {
                    let q = &m[i][k] / &m[k][k];
                    for j in k..cols {
                        let delta = &q * &m[k][j];
                        m[i][j] -= delta;
                    }
                    dirty |= !m[i][k].is_zero();
                }
            }
            if dirty {
                continue 'pivot;
            }
            for j in k + 1..cols {
                if !m[k][j].is_zero() {
                    let q = &m[k][j] / &m[k][k];
                    for i in k..rows {
                        let delta = &q * &m[i][k];
                        m[i][j] -= delta;
                    }
                    dirty |= !m[k][j].is_zero();
                }
            }
            if dirty {
                continue 'pivot;
            }
            // row k and column k are clear; force divisibility of the rest
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&m[i][j] % &m[k][k]).is_zero() {
                        for col in k..cols {
                            let add = m[i][col].clone();
                            m[k][col] += add;
                        }
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    (0..n).map(|k| m[k][k].abs()).collect()
}

fn min_nonzero(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, entry) in row.iter().enumerate().skip(k) {
            if entry.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[bi][bj].abs() <= entry.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Convenience wrapper over `i64` entries.
pub fn smith_diagonal_i64(m: &[Vec<i64>]) -> Vec<BigInt> {
    smith_diagonal(
        m.iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}
