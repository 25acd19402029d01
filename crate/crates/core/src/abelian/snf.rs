//! Smith normal form over `Z` with checked arithmetic.

use thiserror::Error;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnfError {
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("matrix rows have unequal lengths")]
    Ragged,
}

/// `left · input · right = diagonal`, with `left` and `right` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Nonzero diagonal entries, all positive, each dividing the next.
    pub factors: Vec<i64>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn shape(m: &IntMatrix) -> Result<(usize, usize), SnfError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(SnfError::Ragged);
    }
    Ok((rows, cols))
}

/// Exact product with overflow detection. `cols` is needed for empty inputs.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, cols: usize) -> Result<IntMatrix, SnfError> {
    let inner = b.len();
    let mut out = vec![vec![0i64; cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        if row.len() != inner {
            return Err(SnfError::Ragged);
        }
        for j in 0..cols {
            let mut acc = 0i64;
            for (k, &x) in row.iter().enumerate() {
                let term = x.checked_mul(b[k][j]).ok_or(SnfError::Overflow)?;
                acc = acc.checked_add(term).ok_or(SnfError::Overflow)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<i64, SnfError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(SnfError::Ragged);
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(SnfError::Overflow)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| SnfError::Overflow)
}

struct Work {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
}

fn add_mul(dst: &mut [i64], src: &[i64], q: i64) -> Result<(), SnfError> {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = q
            .checked_mul(s)
            .and_then(|x| d.checked_add(x))
            .ok_or(SnfError::Overflow)?;
    }
    Ok(())
}

impl Work {
    /// row[dst] += q * row[src]
    fn row_add(&mut self, dst: usize, src: usize, q: i64) -> Result<(), SnfError> {
        let s = self.a[src].clone();
        add_mul(&mut self.a[dst], &s, q)?;
        let s = self.left[src].clone();
        add_mul(&mut self.left[dst], &s, q)
    }

    /// col[dst] += q * col[src]
    fn col_add(&mut self, dst: usize, src: usize, q: i64) -> Result<(), SnfError> {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                row[dst] = q
                    .checked_mul(row[src])
                    .and_then(|x| row[dst].checked_add(x))
                    .ok_or(SnfError::Overflow)?;
            }
        }
        Ok(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_negate(&mut self, i: usize) -> Result<(), SnfError> {
        for m in [&mut self.a, &mut self.left] {
            for x in m[i].iter_mut() {
                *x = x.checked_neg().ok_or(SnfError::Overflow)?;
            }
        }
        Ok(())
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf, SnfError> {
    let (rows, cols) = shape(m)?;
    let mut w = Work {
        a: m.clone(),
        left: identity(rows),
        right: identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| w.a[i][j] != 0)
            .min_by_key(|&(i, j)| w.a[i][j].unsigned_abs());
        let Some((pi, pj)) = pivot else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let p = w.a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = w.a[i][t] / p;
                if q != 0 {
                    w.row_add(i, t, -q)?;
                }
                dirty |= w.a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = w.a[t][j] / p;
                if q != 0 {
                    w.col_add(j, t, -q)?;
                }
                dirty |= w.a[t][j] != 0;
            }
            if dirty {
                // a remainder is smaller than the pivot: move it into place
                let (bi, bj) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| w.a[i][j] != 0)
                    .min_by_key(|&(i, j)| w.a[i][j].unsigned_abs())
                    .expect("pivot is nonzero");
                w.row_swap(t, bi);
                w.col_swap(t, bj);
                continue;
            }
            // divisibility: fold in any row whose entries the pivot does not divide
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.row_add(t, i, 1)?,
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.row_negate(t)?;
        }
        t += 1;
    }
    let factors = (0..rows.min(cols)).map(|i| w.a[i][i]).filter(|&d| d != 0).collect();
    Ok(Snf {
        diagonal: w.a,
        left: w.left,
        right: w.right,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let s = smith_normal_form(&vec![vec![2]]).unwrap();
        assert_eq!(s.factors, vec![2]);
        let s = smith_normal_form(&vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(s.factors, vec![1]);
        assert_eq!(s.invariant_factors(), Vec::<i64>::new());
        let s = smith_normal_form(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(s.factors, vec![2, 6, 12]);
        let s = smith_normal_form(&vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(s.factors, vec![1, 6]);
    }

    #[test]
    fn transforms_reproduce_input() {
        let m = vec![vec![0, 2, -3, 1], vec![4, 0, 1, 1], vec![2, 2, 2, -2]];
        let s = smith_normal_form(&m).unwrap();
        let prod = mat_mul(&mat_mul(&s.left, &m, 4).unwrap(), &s.right, 4).unwrap();
        assert_eq!(prod, s.diagonal);
        assert_eq!(determinant(&s.left).unwrap().abs(), 1);
        assert_eq!(determinant(&s.right).unwrap().abs(), 1);
    }

    #[test]
    fn empty_and_zero_matrices() {
        let s = smith_normal_form(&vec![]).unwrap();
        assert!(s.factors.is_empty());
        let s = smith_normal_form(&vec![vec![0, 0, 0]]).unwrap();
        assert!(s.factors.is_empty());
        assert_eq!(s.right.len(), 3);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&vec![vec![2, 1], vec![7, 4]]).unwrap(), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(determinant(&vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap(), -3);
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let m = vec![vec![i64::MAX, 1], vec![1, i64::MAX]];
        assert_eq!(smith_normal_form(&m), Err(SnfError::Overflow));
        assert_eq!(mat_mul(&vec![vec![i64::MAX]], &vec![vec![2]], 1), Err(SnfError::Overflow));
        assert_eq!(smith_normal_form(&vec![vec![1, 2], vec![3]]), Err(SnfError::Ragged));
    }
}
