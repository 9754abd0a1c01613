use std::sync::Arc;

use num_traits::Zero;

use crate::catalog::block_nilpart;
use crate::error::{constructor, Result};
use crate::exactlin::scalar::{is_zero_vector, scale, zero, zero_vector};
use crate::exactlin::{kernel_vectors_of, Matrix, Scalar, Subspace, Vector};
use crate::isogrp::{AffineIsometry, GroupPresentation};
use crate::quadspace::QuadraticSpace;

use super::cross_matrix;

/// Data of one generator `((I, 0, C; 0, I, 0; 0, 0, I), (u, w, 0))` with
/// `C = [[0, c], [-c, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sig2Generator {
    pub c: Scalar,
    pub u: Vector,
    pub w: Vector,
}

/// Abelian group on `ℝⁿ` of signature `(n - 2, 2)`, in the basis
/// `U ⊕ W ⊕ U*` with `dim U = 2` and `W` positive definite.
///
/// Requires linearly independent translation parts and that every relation
/// `Σ λᵢ wᵢ = 0` also gives `Σ λᵢ cᵢ = 0`.
pub fn construct_sig2(n: usize, gens: &[Sig2Generator]) -> Result<GroupPresentation> {
    if n < 4 {
        return Err(constructor(format!("need n ≥ 4 for a totally isotropic plane, got n = {n}")));
    }
    if gens.is_empty() {
        return Err(constructor("at least one generator is required"));
    }
    let m = n - 4;
    for (i, g) in gens.iter().enumerate() {
        if g.u.len() != 2 || g.w.len() != m {
            return Err(constructor(format!(
                "generator {}: u must have length 2 and w length {m}",
                i + 1
            )));
        }
    }
    let translations: Vec<Vector> = gens
        .iter()
        .map(|g| [g.u.clone(), g.w.clone(), zero_vector(2)].concat())
        .collect();
    if Subspace::rank_of(&translations) != gens.len() {
        return Err(constructor("translation parts are linearly dependent"));
    }
    let relations = if m == 0 {
        (0..gens.len()).map(|i| crate::exactlin::scalar::unit_vector(gens.len(), i)).collect()
    } else {
        let ws: Vec<Vector> = gens.iter().map(|g| g.w.clone()).collect();
        kernel_vectors_of(&Matrix::from_columns(m, &ws))
    };
    for lambda in &relations {
        let sum = lambda.iter().zip(gens).fold(zero(), |acc, (l, g)| acc + l * &g.c);
        if !sum.is_zero() {
            return Err(constructor(format!(
                "dependency condition fails: Σλᵢwᵢ = 0 but Σλᵢcᵢ = {sum} for λ = {}",
                crate::exactlin::scalar::format_vector(lambda)
            )));
        }
    }
    let space = Arc::new(QuadraticSpace::witt_block(2, &Matrix::identity(m))?);
    let b = Matrix::zeros(m, 2);
    let gens = gens
        .iter()
        .zip(translations)
        .map(|(g, v)| {
            let c = Matrix::zeros(2, 2).set(0, 1, g.c.clone()).set(1, 0, -&g.c);
            AffineIsometry::new(space.clone(), block_nilpart(&space, 2, &b, &c)?, v)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupPresentation::new(space, gens)
}

/// Which six-dimensional family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim6Kind {
    /// A discrete Heisenberg group times translations in `U`.
    Heisenberg,
    /// Rank 6 with center equal to the commutator subgroup.
    Rank6,
}

/// Parameters for [`construct_dim6`] on `ℝ⁶₃ = U ⊕ U*`. Generator `i` has
/// linear part `(0, α T(uᵢ*); 0, 0)` and translation `(uᵢ, uᵢ*)`; an empty
/// `u` means all `uᵢ = 0`. `theta` lists extra translations in `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dim6Params {
    pub kind: Dim6Kind,
    pub alpha: Scalar,
    pub ustar: Vec<Vector>,
    pub u: Vec<Vector>,
    pub theta: Vec<Vector>,
}

pub fn construct_dim6(params: &Dim6Params) -> Result<GroupPresentation> {
    let Dim6Params { kind, alpha, ustar, u, theta } = params;
    if alpha.is_zero() {
        return Err(constructor("α must be nonzero"));
    }
    let (count, max_theta) = match kind {
        Dim6Kind::Heisenberg => (2, 2),
        Dim6Kind::Rank6 => (3, 0),
    };
    if ustar.len() != count {
        return Err(constructor(format!("expected {count} dual vectors u*, got {}", ustar.len())));
    }
    if theta.len() > max_theta {
        return Err(constructor(format!("at most {max_theta} extra translations allowed, got {}", theta.len())));
    }
    let u: Vec<Vector> = if u.is_empty() { vec![zero_vector(3); count] } else { u.clone() };
    if u.len() != count {
        return Err(constructor(format!("expected {count} vectors u, got {}", u.len())));
    }
    if ustar.iter().chain(&u).chain(theta).any(|x| x.len() != 3) {
        return Err(constructor("all vectors must have length 3"));
    }
    if Subspace::rank_of(ustar) != count {
        return Err(constructor("dual vectors u* must be linearly independent"));
    }
    let space = Arc::new(QuadraticSpace::split(3));
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for (i, (us, ui)) in ustar.iter().zip(&u).enumerate() {
        let c = cross_matrix(us)?.scale(alpha);
        let a = Matrix::from_blocks(&[vec![Matrix::zeros(3, 3), c], vec![Matrix::zeros(3, 3), Matrix::zeros(3, 3)]])?;
        gens.push(AffineIsometry::new(space.clone(), a, [ui.clone(), us.clone()].concat())?);
        names.push(format!("g{}", i + 1));
    }
    for (i, t) in theta.iter().enumerate() {
        if is_zero_vector(t) {
            return Err(constructor("extra translations must be nonzero"));
        }
        gens.push(AffineIsometry::pure_translation(space.clone(), [t.clone(), zero_vector(3)].concat())?);
        names.push(format!("t{}", i + 1));
    }
    // generator translations and center generators must be independent
    let mut translations: Vec<Vector> = gens.iter().map(|g| g.translation().clone()).collect();
    for i in 0..count {
        for j in i + 1..count {
            let z = scale(&(alpha + alpha), &cross_matrix(&ustar[i])?.mul_vec(&ustar[j]));
            translations.push([z, zero_vector(3)].concat());
        }
    }
    if Subspace::rank_of(&translations) != translations.len() {
        return Err(constructor("translations of generators and commutators are linearly dependent"));
    }
    GroupPresentation::with_names(space, gens, names)
}
