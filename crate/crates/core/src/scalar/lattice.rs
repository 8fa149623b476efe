//! Integer lattices: echelon bases, integer kernels and coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::QMatrix;

/// Unimodular row reduction of `rows` on their first `width` entries.
/// Returns the rows with the reduced rows first; the number of nonzero
/// (on the first `width` entries) rows is the rank.
fn echelon(mut rows: Vec<Vec<BigInt>>, width: usize) -> (Vec<Vec<BigInt>>, usize) {
    let mut rank = 0;
    for col in 0..width {
        loop {
            // smallest nonzero magnitude at or below `rank` becomes pivot
            let pick = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pick else { break };
            rows.swap(rank, p);
            let mut done = true;
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[rank][col]);
                let piv = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&piv) {
                    *x -= &q * y;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rank < rows.len() && !rows[rank][col].is_zero() {
            if rows[rank][col].is_negative() {
                for x in rows[rank].iter_mut() {
                    *x = -&*x;
                }
            }
            rank += 1;
        }
    }
    (rows, rank)
}

/// A basis of the lattice spanned by the given integer rows.
pub fn lattice_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let (red, rank) = echelon(rows.to_vec(), width);
    red.into_iter().take(rank).collect()
}

/// A basis of `{x ∈ Z^cols : M x = 0}` for the integer matrix `M` (rows).
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let r = m.len();
    let aug: Vec<Vec<BigInt>> = (0..cols)
        .map(|c| {
            let mut row: Vec<BigInt> = (0..r).map(|i| m[i][c].clone()).collect();
            row.extend((0..cols).map(|k| BigInt::from(i64::from(k == c))));
            row
        })
        .collect();
    let (red, rank) = echelon(aug, r);
    red.into_iter().skip(rank).map(|row| row[r..].to_vec()).collect()
}

/// Coordinates of `v` in the basis `basis` (rows), if `v` lies in its span.
pub fn coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = v.len();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b[i].clone())).collect();
            row.push(BigRational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let (red, pivots) = QMatrix::from_rows(rows, k + 1).rref();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, k).clone();
    }
    Some(x)
}

/// gcd of the entries.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}
