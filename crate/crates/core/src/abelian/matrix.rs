//! Dense arbitrary-precision integer matrices and Smith normal form.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(
                "matrix dimensions must be at least 1x1".into(),
            ));
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidInput(
                "matrix dimensions must be at least 1x1".into(),
            ));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let mut m = IntMatrix::new(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::new(n, n).expect("n >= 1");
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::new(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    let cur = &out[(i, j)] + prod;
                    out[(i, j)] = cur;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i * n + k].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = &val / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * a[n * n - 1].clone())
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(dst, j)] + q * &self[(src, j)];
            self[(dst, j)] = v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, dst)] + q * &self[(i, src)];
            self[(i, dst)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `l * m * r = d` with `l`, `r`
/// unimodular and `d` diagonal with a divisibility chain down the diagonal.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub l: IntMatrix,
    pub r: IntMatrix,
}

/// Diagonalizes `m` by unimodular row and column operations.
///
/// Pivots are chosen as the smallest nonzero absolute value in the working
/// submatrix, breaking ties by row then column index.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut d = m.clone();
    let mut l = IntMatrix::identity(m.rows());
    let mut r = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    for t in 0..n {
        'restart: loop {
            let Some((pi, pj)) = select_pivot(&d, t) else {
                break; // submatrix is zero
            };
            d.swap_rows(t, pi);
            l.swap_rows(t, pi);
            d.swap_cols(t, pj);
            r.swap_cols(t, pj);

            // euclidean descent: clear column t and row t
            loop {
                let mut busy = false;
                for i in t + 1..d.rows() {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row_mul(i, t, &q);
                    l.add_row_mul(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        // remainder is smaller than the pivot: promote it
                        d.swap_rows(t, i);
                        l.swap_rows(t, i);
                        busy = true;
                    }
                }
                for j in t + 1..d.cols() {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col_mul(j, t, &q);
                    r.add_col_mul(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        d.swap_cols(t, j);
                        r.swap_cols(t, j);
                        busy = true;
                    }
                }
                if !busy {
                    break;
                }
            }

            // pivot must divide every remaining entry for the chain to hold
            for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row_mul(t, i, &one);
                        l.add_row_mul(t, i, &one);
                        continue 'restart;
                    }
                }
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            l.negate_row(t);
        }
    }
    SmithNormalForm { d, l, r }
}

fn select_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best_abs.as_ref().map_or(true, |b| &a < b) {
                best_abs = Some(a);
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(mat: &IntMatrix) -> SmithNormalForm {
        let snf = smith_normal_form(mat);
        // l * m * r = d, exactly
        let lm = snf.l.mul(mat).unwrap();
        let lmr = lm.mul(&snf.r).unwrap();
        assert_eq!(lmr, snf.d);
        // unimodular transforms
        assert_eq!(snf.l.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(snf.r.determinant().unwrap().abs(), BigInt::one());
        // diagonal with divisibility chain
        let diag = snf.d.diagonal();
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {w:?}");
            } else {
                assert!(w[1].is_zero());
            }
        }
        snf
    }

    #[test]
    fn identity_stays() {
        let snf = check(&m(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        // gcd of entries 1, determinant divisor 6
        let snf = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn derived_two_by_two() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let snf = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rectangular_and_singular() {
        let snf = check(&m(&[vec![2, 4, 6]]));
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(2)]);
        let snf = check(&m(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn bareiss_determinant() {
        let a = m(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(-90));
        assert!(m(&[vec![1, 2], vec![2, 4]])
            .determinant()
            .unwrap()
            .is_zero());
    }
}
