use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::scalar::{format_scalar, Scalar, Vector};
use crate::error::{input, Result};

/// Dense row-major matrix of exact rationals. Values are immutable in
/// practice: every operation returns a new matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(input(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(input("ragged rows"));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    /// Builds an `n x k` matrix whose columns are the given length-`n` vectors.
    pub fn from_columns(n: usize, columns: &[Vector]) -> Self {
        assert!(columns.iter().all(|c| c.len() == n), "column length mismatch");
        Matrix::from_fn(n, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Integer-valued matrix literal, handy in tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<Vector> = rows
            .iter()
            .map(|row| row.iter().map(|&x| super::scalar::int(x)).collect())
            .collect();
        Matrix::from_rows(&r).expect("rectangular literal")
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Scalar::zero() })
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

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| c * x).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let column = Matrix { rows: v.len(), cols: 1, entries: v.to_vec() };
        self.try_mul(&column).expect("shapes checked").entries
    }

    /// Checked product; the `*` operator panics on mismatch instead.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (a, da) = integer_form(&self.entries);
        let (b, db) = integer_form(&other.entries);
        let den = da * db;
        let (m, n, p) = (self.rows, self.cols, other.cols);
        let small = |v: &[BigInt]| v.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<i128>>>();
        let entries = match (small(&a), small(&b)) {
            (Some(a), Some(b)) if fits_i128(&a, &b, n) => {
                let mut acc = vec![0i128; m * p];
                for i in 0..m {
                    for k in 0..n {
                        let x = a[i * n + k];
                        if x != 0 {
                            for j in 0..p {
                                acc[i * p + j] += x * b[k * p + j];
                            }
                        }
                    }
                }
                acc.into_iter().map(|x| Scalar::new(BigInt::from(x), den.clone())).collect()
            }
            _ => {
                let mut acc = vec![BigInt::zero(); m * p];
                for i in 0..m {
                    for k in 0..n {
                        let x = &a[i * n + k];
                        if !x.is_zero() {
                            for j in 0..p {
                                let y = &b[k * p + j];
                                if !y.is_zero() {
                                    acc[i * p + j] += x * y;
                                }
                            }
                        }
                    }
                }
                acc.into_iter().map(|x| Scalar::new(x, den.clone())).collect()
            }
        };
        Ok(Matrix { rows: m, cols: p, entries })
    }

    /// Sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Assembles a matrix from a grid of blocks. Block rows must agree in
    /// height and block columns in width.
    pub fn from_blocks(grid: &[Vec<Matrix>]) -> Result<Matrix> {
        let heights: Vec<usize> = grid.iter().map(|r| r.first().map_or(0, Matrix::rows)).collect();
        let widths: Vec<usize> = grid.first().map_or(Vec::new(), |r| r.iter().map(Matrix::cols).collect());
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(input("block grid is ragged"));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(input(format!("block ({bi},{bj}) has the wrong shape")));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.entries[(r0 + i) * cols + c0 + j] = b[(i, j)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Entries as a flat vector in row-major order.
    pub fn flatten(&self) -> Vector {
        self.entries.clone()
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn set(&self, i: usize, j: usize, value: Scalar) -> Matrix {
        let mut out = self.clone();
        out.entries[i * self.cols + j] = value;
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        (0..e).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

/// Entries scaled to integers by the lcm of their denominators.
fn integer_form(entries: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let den = entries.iter().fold(BigInt::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    let ints = entries
        .iter()
        .map(|x| if den.is_one() { x.numer().clone() } else { x.numer() * (&den / x.denom()) })
        .collect();
    (ints, den)
}

/// Whether every dot product of length `n` stays inside `i128`.
fn fits_i128(a: &[i128], b: &[i128], n: usize) -> bool {
    let max = |v: &[i128]| v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    max(a)
        .checked_mul(max(b))
        .and_then(|x| x.checked_mul(n.max(1) as u128))
        .is_some_and(|x| x < (1u128 << 126))
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map_entries(|x| -x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(format_scalar).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::exactlin::scalar::{int, ratio};

    /// Entry-by-entry rational sum, the textbook definition.
    fn naive(a: &Matrix, b: &Matrix) -> Matrix {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(Scalar::zero(), |acc, k| acc + &a[(i, k)] * &b[(k, j)])
        })
    }

    fn entry() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (-9i64..9).prop_map(int),
            (-50i64..50, 1i64..12).prop_map(|(p, q)| ratio(p, q)),
            (any::<i64>(), 1i64..4).prop_map(|(p, q)| Scalar::new(BigInt::from(p) * BigInt::from(p), BigInt::from(q))),
        ]
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(entry(), rows * cols).prop_map(move |e| Matrix::from_entries(rows, cols, e).unwrap())
    }

    proptest! {
        #[test]
        fn product_matches_definition((a, b) in (1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(m, n, p)| (matrix(m, n), matrix(n, p)))) {
            prop_assert_eq!(&a * &b, naive(&a, &b));
        }
    }

    #[test]
    fn product_shapes() {
        let a = Matrix::from_i64(&[&[1, 2, 3]]);
        let b = Matrix::from_i64(&[&[1], &[0], &[-1]]);
        assert_eq!(&a * &b, Matrix::from_i64(&[&[-2]]));
        assert_eq!(&b * &a, Matrix::from_i64(&[&[1, 2, 3], &[0, 0, 0], &[-1, -2, -3]]));
        assert!(a.try_mul(&a).is_err());
        assert_eq!(&Matrix::zeros(2, 0) * &Matrix::zeros(0, 3), Matrix::zeros(2, 3));
    }
}
