//! Smith normal form cross-checked against the determinantal-divisor
//! oracle: the k-th divisor is the gcd of all k x k minors, and invariant
//! factors are successive quotients. Also checks invariance under row and
//! column permutations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twocover_core::snf::smith_diagonal;

fn minor_det(m: &[Vec<BigInt>], rows: &[usize], cols: &[usize]) -> BigInt {
    // cofactor expansion along the first selected row
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut det = BigInt::zero();
    let sub_rows = &rows[1..];
    for (j, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let cofactor = minor_det(m, sub_rows, &rest);
        let term = &m[rows[0]][c] * cofactor;
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..n {
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Invariant factors via gcds of all k x k minors.
fn divisor_oracle(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let n = rows.min(cols);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=n {
        let mut g = BigInt::zero();
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                g = g.gcd(&minor_det(m, &r, &c));
            }
        }
        divisors.push(g);
    }
    let mut factors = Vec::new();
    for k in 1..=n {
        if divisors[k].is_zero() {
            factors.push(BigInt::zero());
        } else {
            factors.push((&divisors[k] / &divisors[k - 1]).abs());
        }
    }
    factors
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
        .collect()
}

#[test]
fn smith_diagonal_matches_divisor_oracle_on_100_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let m = random_matrix(&mut rng);
        let diag = smith_diagonal(m.clone());
        let oracle = divisor_oracle(&m);
        assert_eq!(diag, oracle, "case {case}: {m:?}");
    }
}

#[test]
fn smith_diagonal_is_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
    for case in 0..100 {
        let m = random_matrix(&mut rng);
        let reference = smith_diagonal(m.clone());

        let mut row_order: Vec<usize> = (0..m.len()).collect();
        row_order.shuffle(&mut rng);
        let mut col_order: Vec<usize> = (0..m[0].len()).collect();
        col_order.shuffle(&mut rng);
        let permuted: Vec<Vec<BigInt>> = row_order
            .iter()
            .map(|&r| col_order.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        assert_eq!(smith_diagonal(permuted), reference, "case {case}");
    }
}

#[test]
fn divisibility_chain_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let m = random_matrix(&mut rng);
        let diag = smith_diagonal(m);
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{w:?}");
            } else {
                assert!(w[1].is_zero(), "{w:?}");
            }
        }
    }
}
