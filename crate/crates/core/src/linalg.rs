//! Exact big-integer matrices: Bareiss determinant, Smith normal form and
//! integer row-span membership.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Order;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Append one row at the bottom.
    pub fn with_row(&self, row: &[BigInt]) -> Self {
        assert_eq!(row.len(), self.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        IntMatrix { rows: self.rows + 1, cols: self.cols, data }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// The empty matrix has determinant 1.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Comma-separated rows, one per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` nonnegative entries, each dividing the next, zeros last.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

impl SnfResult {
    /// Order of the cokernel `Z^cols / rowspan`.
    pub fn cokernel_order(&self) -> Order {
        if self.rank < self.cols {
            return Order::Infinite;
        }
        Order::Finite(self.diagonal.iter().take(self.rank).product())
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        let nz = &self.diagonal[..self.rank];
        nz.iter().all(|d| d.is_positive())
            && self.diagonal[self.rank..].iter().all(Zero::is_zero)
            && nz.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

fn smallest_pivot(a: &[Vec<BigInt>], from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(from) {
        for (j, x) in row.iter().enumerate().skip(from) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form by unimodular row and column operations.
///
/// The pivot is always the entry of smallest nonzero absolute value, found by
/// a row-major scan, so repeated runs perform identical operations.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = smallest_pivot(&a, k) else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let mut clean = true;
        let p = a[k][k].clone();
        for i in k + 1..rows {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].div_floor(&p);
            for j in k..cols {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
            clean &= a[i][k].is_zero();
        }
        for j in k + 1..cols {
            if a[k][j].is_zero() {
                continue;
            }
            let f = a[k][j].div_floor(&p);
            for row in a.iter_mut().skip(k) {
                let v = &row[j] - &f * &row[k];
                row[j] = v;
            }
            clean &= a[k][j].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            for j in k..cols {
                let v = &a[k][j] + &a[i][j];
                a[k][j] = v;
            }
            continue;
        }
        k += 1;
    }
    let diagonal: Vec<BigInt> = (0..n).map(|i| a[i][i].abs()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    SnfResult { diagonal, rank, rows, cols }
}

/// Whether `v` lies in the integer row span of `m`.
///
/// Decided by comparing invariant factors of `m` and `m` with `v` appended:
/// the spans agree exactly when rank and the product of nonzero invariant
/// factors agree.
pub fn in_row_span(m: &IntMatrix, v: &[BigInt]) -> bool {
    let a = smith_normal_form(m);
    let b = smith_normal_form(&m.with_row(v));
    let prod = |s: &SnfResult| -> BigInt { s.diagonal.iter().take(s.rank).product() };
    a.rank == b.rank && prod(&a) == prod(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(IntMatrix::zeros(0, 0).det(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[&[-3]]).det(), BigInt::from(-3));
        let m = IntMatrix::from_i64(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]);
        assert_eq!(m.det(), BigInt::from(-3));
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&IntMatrix::from_i64(&[&[5]]));
        assert_eq!(s.diagonal, big(&[5]));
        assert_eq!(s.cokernel_order(), Order::finite(5));
        let s = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, big(&[1, 6]));
        let s = smith_normal_form(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(s.cokernel_order(), Order::Infinite);
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let s = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0, 0], &[0, 4, 0], &[0, 0, 6]]));
        assert_eq!(s.diagonal, big(&[2, 2, 12]));
        assert!(s.divisibility_chain_holds());
    }

    #[test]
    fn row_span_membership() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert!(in_row_span(&m, &big(&[4, -3])));
        assert!(!in_row_span(&m, &big(&[1, 0])));
    }
}
