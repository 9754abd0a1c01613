//! Fundamental groups in dimension at most 6 and in Witt index 2.
//!
//! [`classify`] walks the case analysis for abelian groups in signature
//! `(n - 2, 2)` and for six-dimensional groups, recording every gate it
//! passes in a [`RuleCheck`] trail. [`construct_sig2`] and
//! [`construct_dim6`] go the other way and build groups of each admissible
//! shape.
//!
//! In `ℝ⁶₃` with `U_Γ` three-dimensional, every log-element has the form
//! `((0, C; 0, 0), (u; u*))` with `C = α T(u*)`, where `T(x)y = x × y`; see
//! [`cross_matrix`] and [`alpha_of`].

mod classify;
mod construct;

pub use classify::{classify, Classification, ClassificationVerdict, Rule, RuleCheck, Tag};
pub use construct::{construct_dim6, construct_sig2, Dim6Kind, Dim6Params, Sig2Generator};

use num_traits::Zero;

use crate::error::{input, structure, Result};
use crate::exactlin::scalar::{is_zero_vector, zero};
use crate::exactlin::{Matrix, Scalar};
use crate::isogrp::AffineIsometry;
use crate::quadspace::WittFrame;

/// `T(x) = [[0, -x₃, x₂], [x₃, 0, -x₁], [-x₂, x₁, 0]]`, so `T(x)y = x × y`.
pub fn cross_matrix(x: &[Scalar]) -> Result<Matrix> {
    if x.len() != 3 {
        return Err(input(format!("cross matrix needs a 3-vector, got length {}", x.len())));
    }
    Ok(Matrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 1) => -&x[2],
        (0, 2) => x[1].clone(),
        (1, 0) => x[2].clone(),
        (1, 2) => -&x[0],
        (2, 0) => -&x[1],
        (2, 1) => x[0].clone(),
        _ => zero(),
    }))
}

/// The `α` with `C = α T(u*)` for a log-element `(A, v)` written in a frame
/// `U ⊕ U*` with `dim U = 3`.
///
/// Returns `Some(0)` when `C = 0` and `None` when no `α` fits. Fails with a
/// structure error if the frame is not of that shape or `A` is not
/// `[[0, C], [0, 0]]` in it.
pub fn alpha_of(frame: &WittFrame, a: &Matrix, v: &[Scalar]) -> Result<Option<Scalar>> {
    if frame.k() != 3 || frame.dim_w() != 0 {
        return Err(structure(format!(
            "frame must be U ⊕ U* with dim U = 3, got dim U = {}, dim W = {}",
            frame.k(),
            frame.dim_w()
        )));
    }
    let af = frame.to_frame(a);
    let outside_c = (0..6).any(|i| (0..6).any(|j| !(i < 3 && j >= 3) && !af[(i, j)].is_zero()));
    if outside_c {
        return Err(structure("linear part is not of the form [[0, C], [0, 0]] in this frame"));
    }
    let c = af.block(0, 3, 3, 6);
    if c.is_zero() {
        return Ok(Some(zero()));
    }
    let (_, _, ustar) = frame.split(v);
    if is_zero_vector(&ustar) {
        return Ok(None);
    }
    let t = cross_matrix(&ustar)?;
    let (i, j) = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .find(|&(i, j)| !t[(i, j)].is_zero())
        .expect("T(u*) is nonzero for nonzero u*");
    let alpha = &c[(i, j)] / &t[(i, j)];
    Ok((t.scale(&alpha) == c).then_some(alpha))
}

pub fn alpha_of_element(frame: &WittFrame, g: &AffineIsometry) -> Result<Option<Scalar>> {
    let (a, v) = g.log();
    alpha_of(frame, &a, &v)
}
