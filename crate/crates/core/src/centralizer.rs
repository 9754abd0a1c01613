//! The centralizer of a group in the Lie algebra of affine isometries and the
//! resulting homogeneity verdict.
//!
//! An element `(L, t)` of the isometry algebra centralizes `log γ = (A, v)`
//! when `[(L, t), (A, v)] = (LA - AL, Lv - At)` vanishes. Both conditions and
//! the skew-adjointness `LᵀG + GL = 0` are linear in `(L, t)`, so the
//! centralizer is the kernel of one exact system.
//!
//! The orbit of the centralizer at the origin is open exactly when the
//! translation parts span the whole space. Openness alone does not give
//! transitivity: the verdict `transitive` also needs a nilpotent subalgebra
//! of the centralizer with nilpotent linear parts whose translations still
//! span. The search looks inside the elements that are strictly triangular
//! for the flag `0 ⊂ U₀ ⊂ U₀^⊥ ⊂ ℝⁿ`, and falls back to the computed basis.

use std::fmt;

use crate::exactlin::scalar::{is_zero_vector, primitive, sub, zero_vector};
use crate::exactlin::{kernel_vectors_of, Matrix, Subspace, Vector};
use crate::isogrp::{AffineIsometry, GroupPresentation};
use crate::quadspace::QuadraticSpace;

/// Element `(L, t)` of the Lie algebra of the isometry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoAlgebraElement {
    pub linear: Matrix,
    pub translation: Vector,
}

impl IsoAlgebraElement {
    pub fn new(linear: Matrix, translation: Vector) -> Self {
        IsoAlgebraElement { linear, translation }
    }

    fn from_vector(n: usize, v: &[crate::exactlin::Scalar]) -> Self {
        let linear = Matrix::from_entries(n, n, v[..n * n].to_vec()).expect("n² entries");
        IsoAlgebraElement::new(linear, v[n * n..].to_vec())
    }

    /// `(L, t)` flattened row-major, followed by `t`.
    pub fn to_vector(&self) -> Vector {
        let mut v = self.linear.flatten();
        v.extend(self.translation.iter().cloned());
        v
    }

    pub fn is_skew_adjoint(&self, space: &QuadraticSpace) -> bool {
        let g = space.gram();
        (&(&self.linear.transpose() * g) + &(g * &self.linear)).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_zero() && is_zero_vector(&self.translation)
    }

    pub fn bracket(&self, other: &IsoAlgebraElement) -> IsoAlgebraElement {
        let l = &(&self.linear * &other.linear) - &(&other.linear * &self.linear);
        let t = sub(&self.linear.mul_vec(&other.translation), &other.linear.mul_vec(&self.translation));
        IsoAlgebraElement::new(l, t)
    }

    /// Bracket with the logarithm of `g`.
    pub fn bracket_with(&self, g: &AffineIsometry) -> IsoAlgebraElement {
        let (a, v) = g.log();
        self.bracket(&IsoAlgebraElement::new(a, v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Transitive,
    OpenOrbitOnly,
    NotOpen,
}

impl Verdict {
    pub fn key(self) -> &'static str {
        match self {
            Verdict::Transitive => "transitive",
            Verdict::OpenOrbitOnly => "open-orbit-only",
            Verdict::NotOpen => "not-open",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Where the certifying elements were taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateSource {
    FlagSubalgebra,
    AlgebraBasis,
}

/// A spanning set of centralizer elements together with the nilpotent Lie
/// algebra they generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    pub source: CertificateSource,
    pub generators: Vec<IsoAlgebraElement>,
    pub generated_dim: usize,
    /// Length of the lower central series until it reaches zero.
    pub nilpotency_class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerReport {
    pub algebra_basis: Vec<IsoAlgebraElement>,
    pub orbit_span_dim: usize,
    pub nilpotent_certified: bool,
    pub certificate: Option<NilpotencyCertificate>,
    pub verdict: Verdict,
}

fn push_rows(rows: &mut Vec<Vector>, width: usize, count: usize, mut coeff: impl FnMut(usize, &mut Vector)) {
    for r in 0..count {
        let mut row = zero_vector(width);
        coeff(r, &mut row);
        if !is_zero_vector(&row) {
            rows.push(row);
        }
    }
}

/// Rows of the linear system for `(L, t)`: skew-adjointness plus zero
/// bracket with every log-generator.
fn centralizer_rows(p: &GroupPresentation) -> Vec<Vector> {
    let n = p.dim();
    let width = n * n + n;
    let g = p.space().gram();
    let l = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::new();
    // (LᵀG + GL)_{ij} = Σ_k L_ki G_kj + G_ik L_kj, for i ≤ j
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    push_rows(&mut rows, width, pairs.len(), |r, row| {
        let (i, j) = pairs[r];
        for k in 0..n {
            row[l(k, i)] += &g[(k, j)];
            row[l(k, j)] += &g[(i, k)];
        }
    });
    for gen in p.generators() {
        let (a, v) = gen.log();
        // (LA - AL)_{ij} = Σ_k L_ik A_kj - A_ik L_kj
        push_rows(&mut rows, width, n * n, |r, row| {
            let (i, j) = (r / n, r % n);
            for k in 0..n {
                row[l(i, k)] += &a[(k, j)];
                row[l(k, j)] -= &a[(i, k)];
            }
        });
        // (Lv - At)_i = Σ_k L_ik v_k - A_ik t_k
        push_rows(&mut rows, width, n, |i, row| {
            for k in 0..n {
                row[l(i, k)] += &v[k];
                row[n * n + k] -= &a[(i, k)];
            }
        });
    }
    rows
}

fn solve_rows(n: usize, rows: &[Vector]) -> Vec<IsoAlgebraElement> {
    let width = n * n + n;
    if rows.is_empty() {
        return (0..width)
            .map(|i| IsoAlgebraElement::from_vector(n, &crate::exactlin::scalar::unit_vector(width, i)))
            .collect();
    }
    let m = Matrix::from_rows(rows).expect("rows of equal width");
    kernel_vectors_of(&m)
        .iter()
        .map(|v| IsoAlgebraElement::from_vector(n, &primitive(v)))
        .collect()
}

/// Basis of the centralizer of the log-generators in the isometry algebra.
pub fn centralizer_algebra(p: &GroupPresentation) -> Vec<IsoAlgebraElement> {
    solve_rows(p.dim(), &centralizer_rows(p))
}

/// Centralizer elements whose linear part kills `U₀`, maps `U₀^⊥` into `U₀`
/// and the whole space into `U₀^⊥`.
pub fn flag_subalgebra(p: &GroupPresentation) -> Vec<IsoAlgebraElement> {
    let n = p.dim();
    let width = n * n + n;
    let l = |i: usize, j: usize| i * n + j;
    let u0 = p.u_zero();
    let u0_perp = p.space().orthogonal_complement(&u0);
    let annihilator = |s: &Subspace| -> Vec<Vector> {
        if s.is_zero() {
            (0..n).map(|i| crate::exactlin::scalar::unit_vector(n, i)).collect()
        } else {
            kernel_vectors_of(&s.basis_matrix().transpose())
        }
    };
    let ann_u0 = annihilator(&u0);
    let ann_perp = annihilator(&u0_perp);
    let mut rows = centralizer_rows(p);
    // y·(L x) = Σ_ij y_i L_ij x_j = 0 for x in the source, y annihilating the target
    let mut maps_into = |source: &[Vector], target_ann: &[Vector]| {
        for x in source {
            for y in target_ann {
                let mut row = zero_vector(width);
                for i in 0..n {
                    for j in 0..n {
                        row[l(i, j)] = &y[i] * &x[j];
                    }
                }
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    };
    let whole: Vec<Vector> = (0..n).map(|i| crate::exactlin::scalar::unit_vector(n, i)).collect();
    maps_into(u0.basis(), &whole);
    maps_into(u0_perp.basis(), &ann_u0);
    maps_into(&whole, &ann_perp);
    solve_rows(n, &rows)
}

fn translation_span(elements: &[IsoAlgebraElement]) -> usize {
    let ts: Vec<Vector> = elements.iter().map(|e| e.translation.clone()).collect();
    Subspace::rank_of(&ts)
}

/// Span of the Lie algebra generated by `elements`, as flattened vectors.
pub fn generated_subalgebra(n: usize, elements: &[IsoAlgebraElement]) -> Vec<IsoAlgebraElement> {
    let width = n * n + n;
    let mut span = Subspace::span(width, &elements.iter().map(IsoAlgebraElement::to_vector).collect::<Vec<_>>());
    loop {
        let basis: Vec<IsoAlgebraElement> = span.basis().iter().map(|v| IsoAlgebraElement::from_vector(n, v)).collect();
        let mut grown = span.clone();
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                let z = x.bracket(y).to_vector();
                if !grown.contains(&z) {
                    grown = grown.sum(&Subspace::span(width, &[z]));
                }
            }
        }
        if grown.dim() == span.dim() {
            return basis;
        }
        span = grown;
    }
}

/// Number of steps for the lower central series of the algebra spanned by
/// `basis` to reach zero, or `None` if it stabilises at a nonzero term.
pub fn nilpotency_class(n: usize, basis: &[IsoAlgebraElement]) -> Option<usize> {
    let width = n * n + n;
    let mut term: Vec<IsoAlgebraElement> = basis.to_vec();
    let mut dim = Subspace::rank_of(&term.iter().map(IsoAlgebraElement::to_vector).collect::<Vec<_>>());
    let mut steps = 0;
    while dim > 0 {
        let brackets: Vec<Vector> = basis
            .iter()
            .flat_map(|x| term.iter().map(move |y| x.bracket(y).to_vector()))
            .collect();
        let next = Subspace::span(width, &brackets);
        if next.dim() == dim {
            return None;
        }
        dim = next.dim();
        term = next.basis().iter().map(|v| IsoAlgebraElement::from_vector(n, v)).collect();
        steps += 1;
    }
    Some(steps)
}

fn certify(n: usize, candidates: &[IsoAlgebraElement], source: CertificateSource) -> Option<NilpotencyCertificate> {
    let mut chosen: Vec<IsoAlgebraElement> = Vec::new();
    let mut span = Subspace::zero(n);
    for e in candidates {
        if e.linear.is_nilpotent() && !span.contains(&e.translation) {
            span = span.sum(&Subspace::span(n, std::slice::from_ref(&e.translation)));
            chosen.push(e.clone());
        }
    }
    if span.dim() < n {
        return None;
    }
    let generated = generated_subalgebra(n, &chosen);
    if !generated.iter().all(|e| e.linear.is_nilpotent()) {
        return None;
    }
    let class = nilpotency_class(n, &generated)?;
    Some(NilpotencyCertificate {
        source,
        generators: chosen,
        generated_dim: generated.len(),
        nilpotency_class: class,
    })
}

pub fn homogeneity_verdict(p: &GroupPresentation) -> CentralizerReport {
    let n = p.dim();
    let algebra_basis = centralizer_algebra(p);
    let orbit_span_dim = translation_span(&algebra_basis);
    let certificate = if orbit_span_dim < n {
        None
    } else {
        certify(n, &flag_subalgebra(p), CertificateSource::FlagSubalgebra)
            .or_else(|| certify(n, &algebra_basis, CertificateSource::AlgebraBasis))
    };
    let nilpotent_certified = certificate.is_some();
    let verdict = match (orbit_span_dim == n, nilpotent_certified) {
        (true, true) => Verdict::Transitive,
        (true, false) => Verdict::OpenOrbitOnly,
        (false, _) => Verdict::NotOpen,
    };
    CentralizerReport {
        algebra_basis,
        orbit_span_dim,
        nilpotent_certified,
        certificate,
        verdict,
    }
}

/// Whether the generator translation parts are linearly independent.
pub fn translation_independence(p: &GroupPresentation) -> bool {
    let ts: Vec<Vector> = p.generators().iter().map(|g| g.translation().clone()).collect();
    Subspace::rank_of(&ts) == ts.len()
}

/// Independence of translation parts is necessary for completeness only when
/// the generators form a Malcev basis, which cannot be checked here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletenessCondition {
    Satisfied,
    /// Dependent translations, but the generators are not known to be a
    /// Malcev basis.
    Inconclusive,
    /// Dependent translations for generators asserted to be a Malcev basis.
    Violated,
}

impl CompletenessCondition {
    pub fn key(self) -> &'static str {
        match self {
            CompletenessCondition::Satisfied => "satisfied",
            CompletenessCondition::Inconclusive => "inconclusive",
            CompletenessCondition::Violated => "violated",
        }
    }
}

pub fn completeness_condition(p: &GroupPresentation, assert_malcev: bool) -> CompletenessCondition {
    match (translation_independence(p), assert_malcev) {
        (true, _) => CompletenessCondition::Satisfied,
        (false, false) => CompletenessCondition::Inconclusive,
        (false, true) => CompletenessCondition::Violated,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::exactlin::scalar::{int, unit_vector};
    use crate::isogrp::compose;

    fn residual_free(p: &GroupPresentation, basis: &[IsoAlgebraElement]) -> bool {
        basis
            .iter()
            .all(|e| e.is_skew_adjoint(p.space()) && p.generators().iter().all(|g| e.bracket_with(g).is_zero()))
    }

    #[test]
    fn empty_list_gives_whole_algebra() {
        let space = Arc::new(QuadraticSpace::from_signature(2, 1).unwrap());
        let p = GroupPresentation::new(space, vec![]).unwrap();
        let basis = centralizer_algebra(&p);
        assert_eq!(basis.len(), 3 * 2 / 2 + 3);
        assert!(residual_free(&p, &basis));
    }

    #[test]
    fn null_translation_in_plane() {
        let space = Arc::new(QuadraticSpace::new(Matrix::diagonal(&[int(1), int(-1)])).unwrap());
        let v = vec![int(1), int(1)];
        let t = AffineIsometry::pure_translation(space.clone(), v).unwrap();
        let p = GroupPresentation::new(space, vec![t]).unwrap();
        let basis = centralizer_algebra(&p);
        // the boost moves the null line, so only translations survive
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(|e| e.linear.is_zero()));
        assert_eq!(homogeneity_verdict(&p).verdict, Verdict::Transitive);
    }

    #[test]
    fn example_is_transitive() {
        let p = catalog::example_14();
        let r = homogeneity_verdict(&p);
        assert!(residual_free(&p, &r.algebra_basis));
        assert_eq!(r.orbit_span_dim, 14);
        assert_eq!(r.verdict, Verdict::Transitive);
        let cert = r.certificate.unwrap();
        // the strictly triangular elements miss two dual directions
        assert_eq!(cert.source, CertificateSource::AlgebraBasis);
        assert_eq!(translation_span(&flag_subalgebra(&p)), 12);
        assert!(cert.generators.iter().all(|e| e.linear.is_nilpotent()));
        assert!(cert.nilpotency_class >= 1);
        assert!(translation_independence(&p));
    }

    #[test]
    fn abelian_candidate_is_not_open() {
        let space = Arc::new(QuadraticSpace::split(3));
        let cross = |a: usize| {
            let mut c = Matrix::zeros(3, 3);
            let (i, j) = ((a + 1) % 3, (a + 2) % 3);
            c = c.set(i, j, int(-1)).set(j, i, int(1));
            c
        };
        let gens = (0..2)
            .map(|a| {
                let nil = Matrix::from_blocks(&[
                    vec![Matrix::zeros(3, 3), cross(a)],
                    vec![Matrix::zeros(3, 3), Matrix::zeros(3, 3)],
                ])
                .unwrap();
                AffineIsometry::new(space.clone(), nil, unit_vector(6, a)).unwrap()
            })
            .collect();
        let p = GroupPresentation::new(space, gens).unwrap();
        assert!(p.admissibility().unwrap().all_pass());
        assert!(p.holonomy_abelian());
        assert_eq!(p.u_gamma().dim(), 3);
        let r = homogeneity_verdict(&p);
        assert!(r.orbit_span_dim < 6);
        assert_eq!(r.verdict, Verdict::NotOpen);
    }

    #[test]
    fn translation_lattice_is_transitive() {
        let space = Arc::new(QuadraticSpace::from_signature(2, 2).unwrap());
        let gens = (0..4)
            .map(|i| AffineIsometry::pure_translation(space.clone(), unit_vector(4, i)).unwrap())
            .collect();
        let p = GroupPresentation::new(space, gens).unwrap();
        let r = homogeneity_verdict(&p);
        assert_eq!(r.verdict, Verdict::Transitive);
        assert_eq!(r.certificate.unwrap().source, CertificateSource::FlagSubalgebra);
        assert!(translation_independence(&p));
    }

    #[test]
    fn duplicated_generator() {
        let p = catalog::example_14();
        let g = p.generators();
        let dup = GroupPresentation::new(p.space().clone(), vec![g[0].clone(), g[0].clone()]).unwrap();
        assert!(!translation_independence(&dup));
        assert_eq!(completeness_condition(&dup, false), CompletenessCondition::Inconclusive);
        assert_eq!(completeness_condition(&dup, true), CompletenessCondition::Violated);
    }

    #[test]
    fn invariant_under_generating_set() {
        let p = catalog::example_14();
        let g = p.generators();
        let q = GroupPresentation::new(p.space().clone(), vec![g[0].clone(), compose(&g[0], &g[1]).unwrap()]).unwrap();
        assert_eq!(centralizer_algebra(&p).len(), centralizer_algebra(&q).len());
    }

    #[test]
    fn lower_central_series() {
        let space = Arc::new(QuadraticSpace::split(3));
        let p = GroupPresentation::new(space, vec![]).unwrap();
        // the full isometry algebra is not nilpotent
        assert_eq!(nilpotency_class(6, &centralizer_algebra(&p)), None);
    }
}
