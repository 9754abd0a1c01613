//! Gaussian elimination over the rationals and everything built on it:
//! solving, ranks, kernels, images, inverses and symmetric congruence.
//!
//! Pivoting is deterministic: in each column the first row (from the top of
//! the unreduced part) with a nonzero entry is chosen. Bases produced here
//! are therefore reproducible across runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{zero_vector, Scalar, Vector};
use super::subspace::Subspace;
use crate::error::{input, Result};

/// Reduced row echelon form together with the pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    // fraction-free: rows are kept as primitive integer vectors
    let mut a: Vec<Vec<BigInt>> = m.row_vectors().iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("r < rows");
        let pv = pivot_row[c].clone();
        for row in head.iter_mut().chain(below.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            // row <- (pv/g) row - (f/g) pivot_row
            let g = pv.gcd(&row[c]);
            let (s, f) = (&pv / &g, &row[c] / &g);
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if !s.is_one() {
                    *x *= &s;
                }
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        out.push(match pivots.get(i) {
            Some(&c) => row.iter().map(|x| Scalar::new(x.clone(), row[c].clone())).collect(),
            None => zero_vector(cols),
        });
    }
    Rref {
        matrix: Matrix::from_rows(&out).unwrap_or_else(|_| Matrix::zeros(rows, cols)),
        pivots,
    }
}

fn integer_row(v: &[Scalar]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    let mut row: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if !g.is_zero() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// Kernel vectors read off the reduced form: one per free column, with a 1
/// in that column and the negated pivot-row entries in the pivot columns.
fn kernel_vectors(r: &Rref, cols: usize) -> Vec<Vector> {
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vector(cols);
            v[f] = Scalar::one();
            for (row, &pc) in r.pivots.iter().enumerate() {
                v[pc] = -&r.matrix[(row, f)];
            }
            v
        })
        .collect()
}

/// A solution of `M x = b`: one particular solution (free variables set to
/// zero) and a basis of `ker M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// Solves `M x = b` exactly. `Ok(None)` means `b` is not in the image of `M`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Solution>> {
    if m.rows() != b.len() {
        return Err(input(format!(
            "right-hand side has {} entries but the matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let cols = m.cols();
    let aug = Matrix::from_fn(m.rows(), cols + 1, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let r = rref(&aug);
    if r.pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = zero_vector(cols);
    for (row, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.matrix[(row, cols)].clone();
    }
    let coeff = Rref {
        matrix: r.matrix.block(0, m.rows(), 0, cols),
        pivots: r.pivots.clone(),
    };
    Ok(Some(Solution {
        particular: x,
        kernel: kernel_vectors(&coeff, cols),
    }))
}

/// Raw kernel vectors of `M`, in free-column order.
pub fn kernel_vectors_of(m: &Matrix) -> Vec<Vector> {
    kernel_vectors(&rref(m), m.cols())
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    Subspace::span(m.cols(), &kernel_vectors_of(m))
}

/// Column space of `M`.
pub fn image_basis(m: &Matrix) -> Subspace {
    let r = rref(m);
    let cols: Vec<Vector> = r.pivots.iter().map(|&c| m.column(c)).collect();
    Subspace::span(m.rows(), &cols)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let r = rref(&aug);
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return if n == 0 { Some(Matrix::zeros(0, 0)) } else { None };
    }
    Some(r.matrix.block(0, n, n, 2 * n))
}

pub fn determinant(m: &Matrix) -> Scalar {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.row_vectors();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for j in c..n {
                let delta = &f * &pivot[j];
                row[j] -= delta;
            }
        }
    }
    det
}

/// Symmetric Gaussian congruence: returns `(D, P)` with `Pᵀ G P = D`
/// diagonal and `P` invertible. Diagonal entries are not normalised.
pub fn congruent_diagonalize(g: &Matrix) -> Result<(Matrix, Matrix)> {
    if !g.is_symmetric() {
        return Err(input("congruent diagonalisation needs a symmetric matrix"));
    }
    let n = g.rows();
    let mut a = g.row_vectors();
    // columns of p are stored as rows of pt
    let mut pt = Matrix::identity(n).row_vectors();

    // a <- Eᵀ a E for the elementary column operation "col_j += f * col_i"
    fn add_multiple(a: &mut [Vector], pt: &mut [Vector], j: usize, i: usize, f: &Scalar) {
        for row in a.iter_mut() {
            let d = f * &row[i];
            row[j] += d;
        }
        for m in [a, pt] {
            let src = m[i].clone();
            for (x, s) in m[j].iter_mut().zip(&src) {
                *x += f * s;
            }
        }
    }

    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
                pt.swap(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                add_multiple(&mut a, &mut pt, i, j, &Scalar::one());
            } else {
                continue;
            }
        }
        for j in i + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let f = -(&a[i][j] / &a[i][i]);
            add_multiple(&mut a, &mut pt, j, i, &f);
        }
    }
    let d = Matrix::from_rows(&a)?;
    let p = Matrix::from_rows(&pt)?.transpose();
    Ok((d, p))
}

/// Counts of positive, negative and zero diagonal entries after congruent
/// diagonalisation.
pub fn inertia(g: &Matrix) -> Result<(usize, usize, usize)> {
    let (d, _) = congruent_diagonalize(g)?;
    let mut counts = (0, 0, 0);
    for i in 0..d.rows() {
        match super::scalar::sign(&d[(i, i)]) {
            1 => counts.0 += 1,
            -1 => counts.1 += 1,
            _ => counts.2 += 1,
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::exactlin::scalar::{int, ratio};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let s = solve(&Matrix::identity(2), &v(&[3, 5])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[3, 5]));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_unsolvable() {
        assert_eq!(solve(&Matrix::zeros(2, 2), &v(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn solve_rank_deficient() {
        // hand reduction: [[1,2|1],[2,4|2]] -> [[1,2|1],[0,0|0]]
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let s = solve(&m, &v(&[1, 2])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[1, 0]));
        assert_eq!(s.kernel, vec![v(&[-2, 1])]);
        // substitution cross-check
        assert_eq!(m.mul_vec(&s.particular), v(&[1, 2]));
        assert_eq!(m.mul_vec(&s.kernel[0]), v(&[0, 0]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(solve(&Matrix::identity(2), &v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn ranks_of_simple_matrices() {
        assert_eq!(rank(&Matrix::zeros(3, 4)), 0);
        assert_eq!(rank(&Matrix::identity(5)), 5);
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(image_basis(&m).dim(), 2);
        assert_eq!(kernel_basis(&m).dim(), 1);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(determinant(&m), int(1));
        assert_eq!(inverse(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), None);
        assert_eq!(determinant(&Matrix::from_i64(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn diagonalize_diagonal_input() {
        let g = Matrix::diagonal(&[int(1), int(-1)]);
        let (d, p) = congruent_diagonalize(&g).unwrap();
        assert_eq!(d, g);
        assert_eq!(p, Matrix::identity(2));
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let g = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let (d, p) = congruent_diagonalize(&g).unwrap();
        assert!(d.is_diagonal());
        assert_eq!(&(&p.transpose() * &g) * &p, d);
        assert_eq!(d, Matrix::diagonal(&[int(2), ratio(-1, 2)]));
    }

    #[test]
    fn diagonalize_split_form_of_rank_two() {
        let i2 = Matrix::identity(2);
        let z = Matrix::zeros(2, 2);
        let g = Matrix::from_blocks(&[vec![z.clone(), i2.clone()], vec![i2, z]]).unwrap();
        let (d, p) = congruent_diagonalize(&g).unwrap();
        assert_eq!(&(&p.transpose() * &g) * &p, d);
        assert_eq!(inertia(&g).unwrap(), (2, 2, 0));
    }

    /// Textbook Gauss-Jordan over the rationals.
    fn naive_rref(m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut a = m.row_vectors();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            a[r] = a[r].iter().map(|x| x * &inv).collect();
            for i in 0..a.len() {
                if i != r {
                    let f = a[i][c].clone();
                    a[i] = a[i].iter().zip(&a[r]).map(|(x, y)| x - &f * y).collect();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows(&a).unwrap(), pivots)
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(
                prop_oneof![3 => Just(0i64), 4 => -6i64..6].prop_flat_map(|p| (Just(p), 1i64..5)),
                r * c,
            )
            .prop_map(move |e| Matrix::from_entries(r, c, e.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rref_matches_textbook_elimination(m in small_matrix()) {
            let (expected, pivots) = naive_rref(&m);
            let r = rref(&m);
            prop_assert_eq!(r.matrix, expected);
            prop_assert_eq!(r.pivots, pivots);
        }
    }

    #[test]
    fn diagonalize_rejects_asymmetric() {
        assert!(congruent_diagonalize(&Matrix::from_i64(&[&[0, 1], &[0, 0]])).is_err());
    }
}
