use super::kernel::{kernel_vectors_of, rank, rref, solve};
use super::matrix::Matrix;
use super::scalar::{is_zero_vector, neg, Scalar, Vector};

/// A linear subspace of `Q^n`, stored by a canonical basis: the nonzero rows
/// of the reduced row echelon form of any spanning set. Two subspaces are
/// equal exactly when their stored bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim).row_vectors(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "vector length does not match ambient dimension"
        );
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let m = Matrix::from_rows(vectors).expect("equal lengths");
        let r = rref(&m);
        let basis = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// `n x dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if is_zero_vector(v) {
            return true;
        }
        self.coordinates(v).is_some()
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim);
        solve(&self.basis_matrix(), v)
            .expect("shapes agree")
            .map(|s| s.particular)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient_dim, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let n = self.ambient_dim;
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| neg(v)))
            .collect();
        let m = Matrix::from_columns(n, &cols);
        let a = self.basis_matrix();
        let d = self.dim();
        let vecs: Vec<Vector> = kernel_vectors_of(&m)
            .into_iter()
            .map(|k| a.mul_vec(&k[..d]))
            .collect();
        Subspace::span(n, &vecs)
    }

    /// Rank of a list of vectors, a common shorthand.
    pub fn rank_of(vectors: &[Vector]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        rank(&Matrix::from_rows(vectors).expect("equal lengths"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[2, 0, 0]), v(&[3, 5, 0]), v(&[1, 1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[7, -2, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.sum(&b), Subspace::whole(3));
        assert_eq!(a.intersection(&b), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert!(a.intersection(&Subspace::zero(3)).is_zero());
    }
}
