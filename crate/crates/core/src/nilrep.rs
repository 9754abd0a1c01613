//! Faithful isometric representations of 2-step nilpotent groups.
//!
//! For a 2-step nilpotent Lie algebra `𝔤` of dimension `n`, the cotangent
//! algebra `𝔥 = 𝔤 ⊕ 𝔤*` has bracket
//!
//! ```text
//! [(X, ξ), (Y, η)] = ([X, Y], ad*(X)η - ad*(Y)ξ),   (ad*(X)η)(Z) = -η([X, Z])
//! ```
//!
//! and the invariant form `⟨(X, ξ), (Y, η)⟩ = ξ(Y) + η(X)` of signature
//! `(n, n)`. In exponential coordinates the group law of `H` is
//! `x·y = x + y + ½[x, y]`, and `g ↦ (x ↦ x·(-g))` is an isometric affine
//! action `ρ(g) = (I + ½ ad g, -g)` on `ℝ²ⁿₙ`. Lattice elements of the
//! subgroup `G ⊂ H` then give a group with abelian holonomy and transitive
//! centralizer.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{input, Result};
use crate::exactlin::scalar::{add, is_zero_vector, neg, ratio, scale, unit_vector, zero_vector};
use crate::exactlin::{Matrix, Scalar, Vector};
use crate::isogrp::{AffineIsometry, GroupPresentation};
use crate::quadspace::QuadraticSpace;

/// Structure constants `[eᵢ, eⱼ] = Σₖ c_{ij}^k e_k` of a 2-step nilpotent
/// Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilLieAlgebra {
    dim: usize,
    /// `brackets[i * dim + j]` is `[eᵢ, eⱼ]`.
    brackets: Vec<Vector>,
}

impl NilLieAlgebra {
    /// Builds the algebra from entries `(i, j, k, c)` with `i < j`, meaning
    /// `c_{ij}^k = c` (0-based indices). Fails unless the result is 2-step
    /// nilpotent.
    pub fn new(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut brackets = vec![zero_vector(dim); dim * dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= j || j >= dim || k >= dim {
                return Err(input(format!("structure constant ({i}, {j}, {k}) needs i < j < {dim} and k < {dim}")));
            }
            brackets[i * dim + j][k] += c;
            brackets[j * dim + i][k] -= c;
        }
        let algebra = NilLieAlgebra { dim, brackets };
        for i in 0..dim {
            for j in 0..dim {
                let b = algebra.basis_bracket(i, j);
                for l in 0..dim {
                    if !is_zero_vector(&algebra.bracket(b, &unit_vector(dim, l))) {
                        return Err(input(format!("not 2-step nilpotent: [[e{i}, e{j}], e{l}] ≠ 0")));
                    }
                }
            }
        }
        Ok(algebra)
    }

    pub fn abelian(dim: usize) -> Self {
        NilLieAlgebra::new(dim, &[]).expect("abelian algebras are 2-step")
    }

    /// `𝔥₃` with `[e₀, e₁] = e₂`.
    pub fn heisenberg() -> Self {
        NilLieAlgebra::new(3, &[(0, 1, 2, Scalar::one())]).expect("Heisenberg is 2-step")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i * self.dim + j]
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = &(xi * yj);
                for (o, b) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    *o += c * b;
                }
            }
        }
        out
    }
}

/// `𝔥 = 𝔤 ⊕ 𝔤*` in the basis `(e₁, …, eₙ, e₁*, …, eₙ*)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotangentAlgebra {
    base: NilLieAlgebra,
    space: Arc<QuadraticSpace>,
}

pub fn build_cotangent(g: &NilLieAlgebra) -> CotangentAlgebra {
    CotangentAlgebra {
        base: g.clone(),
        space: Arc::new(QuadraticSpace::split(g.dim())),
    }
}

impl CotangentAlgebra {
    pub fn base(&self) -> &NilLieAlgebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        2 * self.base.dim
    }

    /// The space `ℝ²ⁿ` with Gram `[[0, I], [I, 0]]`.
    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    /// `ad*(X)η` as a covector: `Z ↦ -η([X, Z])`.
    fn coadjoint(&self, x: &[Scalar], eta: &[Scalar]) -> Vector {
        let n = self.base.dim;
        (0..n)
            .map(|z| {
                let b = self.base.bracket(x, &unit_vector(n, z));
                -b.iter().zip(eta).fold(Scalar::zero(), |acc, (p, q)| acc + p * q)
            })
            .collect()
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.base.dim;
        let (x, xi) = a.split_at(n);
        let (y, eta) = b.split_at(n);
        let top = self.base.bracket(x, y);
        let bottom = add(&self.coadjoint(x, eta), &neg(&self.coadjoint(y, xi)));
        [top, bottom].concat()
    }

    /// Matrix of `ad(a) = [a, ·]`.
    pub fn ad(&self, a: &[Scalar]) -> Matrix {
        let m = self.dim();
        let cols: Vec<Vector> = (0..m).map(|j| self.bracket(a, &unit_vector(m, j))).collect();
        Matrix::from_columns(m, &cols)
    }

    pub fn form(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.space.form(a, b)
    }
}

/// Truncated group law `x·y = x + y + ½[x, y]` in exponential coordinates.
pub fn bch_multiply(h: &CotangentAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    add(&add(x, y), &scale(&ratio(1, 2), &h.bracket(x, y)))
}

/// `ρ(g) = (I + ½ ad g, -g)`, the right translation by `g⁻¹`.
pub fn represent(h: &CotangentAlgebra, g: &[Scalar]) -> Result<AffineIsometry> {
    if g.len() != h.dim() {
        return Err(input(format!("element has length {}, expected {}", g.len(), h.dim())));
    }
    AffineIsometry::new(h.space.clone(), h.ad(g).scale(&ratio(1, 2)), neg(g))
}

/// The presentation generated by `ρ(gᵢ)` for the given lattice elements in
/// exponential coordinates of `H`.
pub fn realize_group(g: &NilLieAlgebra, gens: &[Vector]) -> Result<GroupPresentation> {
    let h = build_cotangent(g);
    if gens.iter().any(|x| is_zero_vector(x)) {
        return Err(input("lattice generators must be nonzero"));
    }
    let elements = gens.iter().map(|x| represent(&h, x)).collect::<Result<Vec<_>>>()?;
    GroupPresentation::new(h.space.clone(), elements)
}

/// `(eᵢ, 0)` for `i < n`: the standard lattice of `G ⊂ H`.
pub fn base_lattice(g: &NilLieAlgebra) -> Vec<Vector> {
    (0..g.dim()).map(|i| unit_vector(2 * g.dim(), i)).collect()
}

/// `(eᵢ, 0)` and `(0, eᵢ*)`: a lattice of all of `H`.
pub fn full_lattice(g: &NilLieAlgebra) -> Vec<Vector> {
    (0..2 * g.dim()).map(|i| unit_vector(2 * g.dim(), i)).collect()
}
