//! Exact rank over `Q`.

use num_rational::BigRational;
use num_traits::Zero;

/// Rank of a rational matrix given by rows, via fraction-exact Gaussian
/// elimination. Rows may have differing lengths; missing entries count as zero.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(cols, BigRational::zero());
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}
