//! Exact kernels of integer matrices by fraction-free row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|x| *x /= &g);
    }
}

/// Sparse row: (column, nonzero value) pairs sorted by column.
pub type SparseRow = Vec<(usize, BigInt)>;

fn primitive_sparse(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|(_, x)| *x /= &g);
    }
}

/// p·row − f·pivot, dropping cancelled entries.
fn combine(row: &SparseRow, p: &BigInt, pivot: &SparseRow, f: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, &row[i - 1].1 * p)
        } else if cj < ci {
            j += 1;
            (cj, -(&pivot[j - 1].1 * f))
        } else {
            i += 1;
            j += 1;
            (ci, &row[i - 1].1 * p - &pivot[j - 1].1 * f)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// A basis of {x : M x = 0} for a sparse matrix with `cols` columns, as
/// primitive integer vectors, one per free column of the echelon form.
///
/// Forward elimination is fraction-free; among the rows leading at the current
/// column the shortest one becomes the pivot to limit fill-in.
pub fn sparse_integer_kernel(cols: usize, rows: Vec<SparseRow>) -> Vec<Vec<BigInt>> {
    let mut active: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    for col in 0..cols {
        let leading: Vec<usize> = (0..active.len())
            .filter(|&r| active[r][0].0 == col)
            .collect();
        let Some(&best) = leading.iter().min_by_key(|&&r| active[r].len()) else {
            continue;
        };
        let pivot = active[best].clone();
        let p = pivot[0].1.clone();
        for &r in &leading {
            if r != best {
                let f = active[r][0].1.clone();
                let mut row = combine(&active[r], &p, &pivot, &f);
                primitive_sparse(&mut row);
                active[r] = row;
            }
        }
        let mut k = 0;
        active.retain(|r| {
            let keep = k != best && !r.is_empty();
            k += 1;
            keep
        });
        pivots.push((col, pivot));
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
            x[free] = BigRational::one();
            for (col, row) in pivots.iter().rev() {
                let s: BigRational = row[1..]
                    .iter()
                    .map(|(j, v)| &x[*j] * BigRational::from_integer(v.clone()))
                    .sum();
                x[*col] = -s / BigRational::from_integer(row[0].1.clone());
            }
            let lcm = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            let mut out: Vec<BigInt> = x
                .iter()
                .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            primitive(&mut out);
            out
        })
        .collect()
}

/// Dense front end to [`sparse_integer_kernel`].
pub fn integer_kernel(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let sparse = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    sparse_integer_kernel(cols, sparse)
}

/// Flip the sign so the first nonzero entry is positive.
pub fn normalize_sign(x: &mut [BigInt]) {
    if x.iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative())
    {
        x.iter_mut().for_each(|v| *v = -&*v);
    }
}
