//! Exact linear algebra over the rationals.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

/// Rank by fraction-free (Bareiss) elimination; rows are first scaled to
/// integers. Pivots are the first nonzero entry in each column.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let (n_rows, n_cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..n_rows {
            for j in c + 1..n_cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == n_rows {
            break;
        }
    }
    r
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

pub fn mat_vec(a: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(x).fold(BigRational::zero(), |acc, (m, v)| acc + m * v)).collect()
}

/// The solution of `a x = b` if it exists and is unique.
pub fn solve_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n_cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a.iter().zip(b).map(|(row, v)| row.iter().cloned().chain([v.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..aug.len() {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                for j in c..=n_cols {
                    let v = &aug[i][j] - &factor * &aug[r][j];
                    aug[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < n_cols || aug[r..].iter().any(|row| !row[n_cols].is_zero()) {
        return None;
    }
    Some((0..n_cols).map(|i| aug[i][n_cols].clone()).collect())
}

/// Removes column `c` from every row.
pub fn drop_column(a: &[Vec<BigRational>], c: usize) -> Matrix {
    a.iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect()).collect()
}

pub fn is_nonnegative(x: &[BigRational]) -> bool {
    x.iter().all(|v| !v.is_negative())
}
