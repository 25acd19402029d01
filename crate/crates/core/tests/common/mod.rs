#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Determinant by cofactor expansion along the first row.
fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Nonzero diagonal of the Smith form from determinantal divisors:
/// `d_k = gcd of all k×k minors`, factor `k` is `d_k / d_{k-1}`.
pub fn snf_oracle(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                d = gcd(d, laplace_det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        factors.push((d / prev) as i64);
        prev = d;
    }
    factors
}

pub fn random_matrices(count: usize, size: usize, seed: u64) -> Vec<Vec<Vec<i64>>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..size).map(|_| (0..size).map(|_| rng.gen_range(-3..=3)).collect()).collect())
        .collect()
}

/// Pure-group rank table, written out branch by branch.
pub fn pure_rank(g: u32, s: u32, n: u32, k: u32) -> usize {
    let free = (n - k) as usize;
    let s = s as usize;
    if g == 3 && s == 0 {
        2 + free
    } else if g == 3 {
        1 + free + s
    } else if g == 4 && s == 0 {
        3 + free
    } else if g == 4 {
        2 + free + s
    } else if g == 5 || g == 6 {
        2 + free
    } else {
        1 + free
    }
}

/// Full-group rank table.
pub fn full_rank(g: u32, s: u32) -> usize {
    let s = s as usize;
    match (g, s) {
        (3, 0) => 4,
        (3, _) => s + 3,
        (4, 0) => 5,
        (4, _) => s + 4,
        (5 | 6, _) => 4,
        _ => 3,
    }
}
