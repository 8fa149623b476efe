//! Dense matrices over Q(s) and over Q, with Gauss–Jordan elimination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, Poly};
use super::value::Scalar;
use crate::error::{Error, Result};

pub type ScalarVec = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ScalarMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScalarMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns(cols: &[ScalarVec], dim: usize) -> Self {
        let mut m = ScalarMatrix::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        ScalarMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> ScalarVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> ScalarVec {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, o: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = ScalarMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * o.get(k, c));
                }
                m.set(r, c, acc);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // prefer the simplest nonzero pivot in this column
            let pick = (row..m.rows)
                .filter(|&r| !m.get(r, col).is_zero())
                .min_by_key(|&r| complexity(m.get(r, col)));
            let Some(p) = pick else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..m.cols {
                    let v = m.get(row, c) * &inv;
                    m.set(row, c, v);
                }
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&f * pv);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : Mx = 0}, one vector per free column, with a 1 in that
    /// column.
    pub fn kernel_basis(&self) -> Vec<ScalarVec> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// One solution of Mx = b, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<ScalarVec> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ScalarMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Basis (as rows) of the left annihilator of the column span:
    /// functionals φ with φ·v = 0 for every column v.
    pub fn column_annihilator(&self) -> Vec<ScalarVec> {
        self.transpose().kernel_basis()
    }

    /// Rows cleared of denominators: each row multiplied by the product of
    /// its distinct entry denominators, so every entry is a polynomial.
    pub fn clear_row_denominators(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut common = Poly::one();
                for x in row {
                    if !x.denom().is_one() {
                        let q = x.denom().clone();
                        if common.div_exact(&q).is_none() {
                            common = common.mul(&q);
                        }
                    }
                }
                row.iter()
                    .map(|x| {
                        let k = common.div_exact(x.denom()).expect("common multiple");
                        x.numer().mul(&k)
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis over Q of {x ∈ Q^cols : Mx = 0}.
    ///
    /// Each row is cleared to polynomial entries and split by monomial; a
    /// rational x annihilates the row iff it annihilates every per-monomial
    /// rational coefficient row.
    pub fn rational_solution_space(&self) -> Vec<Vec<BigRational>> {
        self.stacked_rational_rows().kernel_basis()
    }

    pub fn stacked_rational_rows(&self) -> QMatrix {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for prow in self.clear_row_denominators() {
            let mut by_mono: BTreeMap<Monomial, Vec<BigRational>> = BTreeMap::new();
            for (j, p) in prow.iter().enumerate() {
                for (m, c) in p.terms() {
                    by_mono
                        .entry(m.clone())
                        .or_insert_with(|| vec![BigRational::zero(); self.cols])[j] = c.clone();
                }
            }
            rows.extend(by_mono.into_values());
        }
        QMatrix::from_rows(rows, self.cols)
    }
}

fn complexity(x: &Scalar) -> usize {
    x.numer().num_terms() + x.denom().num_terms()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> ScalarVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> ScalarVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[Scalar], k: &Scalar) -> ScalarVec {
    a.iter().map(|x| x * k).collect()
}

pub fn rational_vec_to_scalar(v: &[BigRational]) -> ScalarVec {
    v.iter().cloned().map(Scalar::from_rational).collect()
}

/// Dense matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        QMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[Vec<i64>], cols: usize) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_canonical(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

/// Scale a rational vector to a primitive integer vector with positive
/// first nonzero entry.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::Signed;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    ints.into_iter().map(|x| x / &g * sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(i: usize) -> Scalar {
        Scalar::symbol(i)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(ScalarMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn symbolic_kernel_substitutes_to_zero() {
        let (s, t, u, v) = (sym(0), sym(1), sym(2), sym(3));
        let one = Scalar::one();
        let z = Scalar::zero();
        let m = ScalarMatrix::from_rows(vec![
            vec![one.clone(), z.clone(), -&s, -&t],
            vec![z.clone(), one.clone(), -&u, -&v],
        ])
        .unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![s.clone(), u.clone(), one.clone(), z.clone()]);
        assert_eq!(k[1], vec![t.clone(), v.clone(), z.clone(), one.clone()]);
        for x in &k {
            assert!(m.mul_vec(x).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn integer_kernel() {
        let m = ScalarMatrix::from_ints(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(m.mul_vec(x).iter().all(|e| e.is_zero()));
        }
        assert_eq!(k[0], rational_vec_to_scalar(&[q(-1), q(0), q(1), q(0)]));
    }

    fn q(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    #[test]
    fn stacking_single_symbol() {
        let s = sym(0);
        let m = ScalarMatrix::from_rows(vec![vec![s.clone(), s.clone(), Scalar::one(), Scalar::zero()]]).unwrap();
        let k = m.rational_solution_space();
        // rows (0,0,1,0) and (1,1,0,0) leave x1 = -x2 and x4 free
        assert_eq!(k.len(), 2);
        let dir = primitive_integer_vector(&k[0]);
        assert_eq!(dir, vec![1.into(), (-1).into(), 0.into(), 0.into()]);
    }

    #[test]
    fn stacking_independent_symbols_forces_zero() {
        let (s, t, u, v) = (sym(0), sym(1), sym(2), sym(3));
        let one = Scalar::one();
        let z = Scalar::zero();
        let m = ScalarMatrix::from_rows(vec![vec![s, u, one.clone(), z.clone()], vec![t, v, z, one]]).unwrap();
        assert!(m.rational_solution_space().is_empty());
    }

    #[test]
    fn stacking_rational_matrix_is_plain_kernel() {
        let m = ScalarMatrix::from_ints(&[&[1, 2, 3]]);
        assert_eq!(m.rational_solution_space().len(), 2);
    }

    #[test]
    fn stacking_clears_denominators() {
        let s = sym(0);
        let one = Scalar::one();
        // (1/s) x1 + x2 = 0 over Q forces x1 = x2 = 0
        let m = ScalarMatrix::from_rows(vec![vec![one.checked_div(&s).unwrap(), one.clone()]]).unwrap();
        assert!(m.rational_solution_space().is_empty());
        // (1/s) x1 + (1/s) x2 = 0 leaves x1 = -x2
        let m =
            ScalarMatrix::from_rows(vec![vec![one.checked_div(&s).unwrap(), one.checked_div(&s).unwrap()]]).unwrap();
        assert_eq!(m.rational_solution_space().len(), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ScalarMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[Scalar::from_int(1), Scalar::from_int(2)]).is_some());
        assert!(m.solve(&[Scalar::from_int(1), Scalar::from_int(3)]).is_none());
    }
}
