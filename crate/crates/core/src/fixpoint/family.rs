use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::block_element;
use crate::exactlin::scalar::{int, neg, zero_vector};
use crate::exactlin::{inverse, Matrix, Scalar, Vector};
use crate::isogrp::GroupPresentation;
use crate::quadspace::QuadraticSpace;

fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    let x = rng.gen_range(1..=3);
    int(if rng.gen_bool(0.5) { x } else { -x })
}

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-3..=3))
}

fn small_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| small(rng)).collect()
}

/// Deterministic pseudo-random two-generator groups on `R^8_4` with
/// `dim U₀ = 2` and non-commuting linear parts.
///
/// In the Witt basis `U ⊕ W ⊕ U*` with `W = F ⊕ F*` hyperbolic of dimension
/// 4: `B₁ = F R₁` with `R₁` invertible, `B₂ = F* R₂` with
/// `R₂ = R₁⁻ᵀ (cJ)`, `J = [[0, 1], [-1, 0]]`, so that `B₁ᵀG_W B₂ = cJ`.
/// Both `B`s have full rank, hence `u₁* = u₂* = 0`, and the `W` parts of the
/// translations are the general solution of the pair relations.
pub fn cor37_family(seed: u64) -> GroupPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let split = QuadraticSpace::split(2);
    let space = Arc::new(QuadraticSpace::witt_block(2, split.gram()).expect("split form"));

    let r1 = loop {
        let m = Matrix::from_fn(2, 2, |_, _| small(&mut rng));
        if crate::exactlin::determinant(&m) != int(0) {
            break m;
        }
    };
    let r1_inv_t = inverse(&r1).expect("invertible").transpose();
    let c = nonzero(&mut rng);
    let j = Matrix::from_i64(&[&[0, 1], &[-1, 0]]).scale(&c);
    let r2 = &r1_inv_t * &j;
    let stack = |top: &Matrix, bottom: &Matrix| Matrix::from_blocks(&[vec![top.clone()], vec![bottom.clone()]]).expect("2x2 blocks");
    let z = Matrix::zeros(2, 2);
    let b1 = stack(&r1, &z);
    let b2 = stack(&z, &r2);

    let skew = |rng: &mut ChaCha8Rng| {
        let x = small(rng);
        Matrix::zeros(2, 2).set(0, 1, x.clone()).set(1, 0, -x)
    };
    let c1 = skew(&mut rng);
    let c2 = skew(&mut rng);

    // w = (a, b) in F ⊕ F*: R₁ᵀb₁ = 0, R₂ᵀa₂ = 0, R₁ᵀb₂ = -R₂ᵀa₁
    let a1 = small_vec(&mut rng, 2);
    let b2w = neg(&r1_inv_t.mul_vec(&r2.transpose().mul_vec(&a1)));
    let w1: Vector = a1.iter().cloned().chain(zero_vector(2)).collect();
    let w2: Vector = zero_vector(2).into_iter().chain(b2w).collect();
    let u1 = small_vec(&mut rng, 2);
    let u2 = small_vec(&mut rng, 2);
    let ustar = zero_vector(2);

    let g1 = block_element(&space, 2, &b1, &c1, (&u1, &w1, &ustar)).expect("valid blocks");
    let g2 = block_element(&space, 2, &b2, &c2, (&u2, &w2, &ustar)).expect("valid blocks");
    GroupPresentation::new(space, vec![g1, g2]).expect("same space")
}
