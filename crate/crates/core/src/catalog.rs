//! Ready-made presentations: the 14-dimensional Heisenberg example with
//! non-abelian holonomy, and seeded random generators of admissible pairs.

use std::sync::Arc;

use rand::Rng;

use crate::error::{input, Result};
use crate::exactlin::scalar::{add, int, primitive, scale, zero_vector};
use crate::exactlin::{inverse, kernel_vectors_of, Matrix, Scalar, Vector};
use crate::isogrp::{AffineIsometry, GroupPresentation};
use crate::quadspace::QuadraticSpace;

/// Nilpotent part `[[0, -BᵀG_W, C], [0, 0, B], [0, 0, 0]]` for a space whose
/// coordinate basis is already a Witt frame with `k`-dimensional `U`.
pub fn block_nilpart(space: &QuadraticSpace, k: usize, b: &Matrix, c: &Matrix) -> Result<Matrix> {
    let n = space.dim();
    let m = n - 2 * k;
    if b.rows() != m || b.cols() != k || c.rows() != k || c.cols() != k {
        return Err(input(format!("blocks must be B: {m}x{k} and C: {k}x{k}")));
    }
    let gw = space.gram().block(k, k + m, k, k + m);
    Matrix::from_blocks(&[
        vec![Matrix::zeros(k, k), -&(&b.transpose() * &gw), c.clone()],
        vec![Matrix::zeros(m, k), Matrix::zeros(m, m), b.clone()],
        vec![Matrix::zeros(k, k), Matrix::zeros(k, m), Matrix::zeros(k, k)],
    ])
}

/// Element built from blocks and a translation given as `(u, w, u*)`.
pub fn block_element(
    space: &Arc<QuadraticSpace>,
    k: usize,
    b: &Matrix,
    c: &Matrix,
    parts: (&[Scalar], &[Scalar], &[Scalar]),
) -> Result<AffineIsometry> {
    let a = block_nilpart(space, k, b, c)?;
    let v: Vector = parts.0.iter().chain(parts.1).chain(parts.2).cloned().collect();
    AffineIsometry::new(space.clone(), a, v)
}

fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

/// `G_W = diag(1, 1, -1, -1)` of the 14-dimensional example.
pub fn example_14_gram_w() -> Matrix {
    Matrix::diagonal(&ints(&[1, 1, -1, -1]))
}

/// `R^14` of signature `(7, 7)` in the Witt basis `U₀ ⊕ W ⊕ U₀*`,
/// `dim U₀ = 5`.
pub fn example_14_space() -> Arc<QuadraticSpace> {
    Arc::new(QuadraticSpace::witt_block(5, &example_14_gram_w()).expect("nondegenerate"))
}

/// `(B₁, C₁, u₁*)` and `(B₂, C₂, u₂*)` of the example.
pub fn example_14_blocks() -> [(Matrix, Matrix, Vector); 2] {
    let b1 = Matrix::from_i64(&[
        &[-1, 0, 0, 0, 0],
        &[0, -1, 0, 0, 0],
        &[0, -1, 0, 0, 0],
        &[-1, 0, 0, 0, 0],
    ]);
    let b2 = Matrix::from_i64(&[
        &[0, -1, 0, 0, 0],
        &[1, 0, 0, 0, 0],
        &[-1, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0],
    ]);
    let unit_skew = |i: usize, j: usize| {
        Matrix::zeros(5, 5).set(i, j, int(-1)).set(j, i, int(1))
    };
    [
        (b1, unit_skew(2, 4), ints(&[0, 0, 0, -1, 0])),
        (b2, unit_skew(3, 4), ints(&[0, 0, 1, 0, 0])),
    ]
}

/// Two generators of a discrete Heisenberg group acting on `R^14_7` with
/// non-abelian linear holonomy.
pub fn example_14() -> GroupPresentation {
    let space = example_14_space();
    let zero5 = zero_vector(5);
    let zero4 = zero_vector(4);
    let gens = example_14_blocks()
        .iter()
        .map(|(b, c, us)| block_element(&space, 5, b, c, (&zero5, &zero4, us)).expect("valid blocks"))
        .collect();
    GroupPresentation::new(space, gens).expect("same space")
}

/// The commutator `[γ₁, γ₂]` of [`example_14`] written out by hand:
/// `C₃ = [[0, -4], [4, 0]]` padded with zeros and `u₃ = (0, 0, 0, 0, 2)`.
pub fn example_14_commutator() -> AffineIsometry {
    let space = example_14_space();
    let c3 = Matrix::zeros(5, 5).set(0, 1, int(-4)).set(1, 0, int(4));
    let b = Matrix::zeros(4, 5);
    block_element(&space, 5, &b, &c3, (&ints(&[0, 0, 0, 0, 2]), &zero_vector(4), &zero_vector(5)))
        .expect("valid blocks")
}

/// Shape of a random admissible pair. The ambient space is
/// `U ⊕ W ⊕ U*` with `dim U = k` and `W = F ⊕ F* ⊕ D`, where `F, F*` are
/// dual isotropic of dimension `r` and `D` is positive definite of dimension
/// `definite`. `B₁` takes values in `F` with rank at most `rank`, `B₂` in `F*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairShape {
    pub k: usize,
    pub r: usize,
    pub definite: usize,
    pub rank: usize,
    pub commuting: bool,
    pub basis_change: bool,
}

impl PairShape {
    pub fn dim(&self) -> usize {
        2 * self.k + 2 * self.r + self.definite
    }
}

fn small(rng: &mut impl Rng) -> Scalar {
    int(rng.gen_range(-3..=3))
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small(rng))
}

fn random_skew(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = small(rng);
            m = m.set(i, j, x.clone()).set(j, i, -x);
        }
    }
    m
}

fn random_combination(rng: &mut impl Rng, len: usize, basis: &[Vector]) -> Vector {
    basis
        .iter()
        .fold(zero_vector(len), |acc, b| add(&acc, &scale(&small(rng), b)))
}

fn integral_kernel(m: &Matrix) -> Vec<Vector> {
    kernel_vectors_of(m).iter().map(|v| primitive(v)).collect()
}

/// Random matrix with determinant 1 and small entries.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Greater => int(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Less => int(0),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Less => int(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Greater => int(0),
    });
    &lower * &upper
}

/// Rewrites a presentation in the basis given by the columns of `p`:
/// `G' = PᵀGP`, `A' = P⁻¹AP`, `v' = P⁻¹v`.
pub fn change_basis(pres: &GroupPresentation, p: &Matrix) -> Result<GroupPresentation> {
    let pinv = inverse(p).ok_or_else(|| input("basis change is singular"))?;
    let gram = &(&p.transpose() * pres.space().gram()) * p;
    let space = Arc::new(QuadraticSpace::new(gram)?);
    let gens = pres
        .generators()
        .iter()
        .map(|g| {
            let a = &(&pinv * g.nilpart()) * p;
            AffineIsometry::new(space.clone(), a, pinv.mul_vec(g.translation()))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupPresentation::with_names(space, gens, pres.names().to_vec())
}

/// Random admissible pair of the given shape.
///
/// `B₁ = F R₁` and `B₂ = F* R₂` with `R₂ = J R₁ + K`, `J` skew and
/// `R₁ᵀ K = 0`, so `B₁ᵀ G_W B₂ = R₁ᵀ J R₁` is skew. Translations are a random
/// point of the solution space of the pair relations
/// `A₁v₁ = A₂v₂ = 0`, `A₁v₂ + A₂v₁ = 0`, `A₁A₂v₁ = A₂A₁v₂ = 0`.
pub fn random_admissible_pair(rng: &mut impl Rng, shape: PairShape) -> Result<GroupPresentation> {
    let PairShape { k, r, definite, rank, commuting, basis_change } = shape;
    let m = 2 * r + definite;
    let mut gw = Matrix::zeros(m, m);
    for i in 0..r {
        gw = gw.set(i, r + i, int(1)).set(r + i, i, int(1));
    }
    for i in 0..definite {
        gw = gw.set(2 * r + i, 2 * r + i, int(rng.gen_range(1..=3)));
    }
    let space = Arc::new(QuadraticSpace::witt_block(k, &gw)?);
    let rank = rank.min(r).min(k);
    let r1 = &random_matrix(rng, r, rank) * &random_matrix(rng, rank, k);
    let j = if commuting { Matrix::zeros(r, r) } else { random_skew(rng, r) };
    let ker_r1t = integral_kernel(&r1.transpose());
    let kcols: Vec<Vector> = (0..k).map(|_| random_combination(rng, r, &ker_r1t)).collect();
    let kmat = Matrix::from_columns(r, &kcols);
    let r2 = &(&j * &r1) + &kmat;
    let embed = |rm: &Matrix, offset: usize| Matrix::from_fn(m, k, |i, c| {
        if i >= offset && i < offset + r {
            rm[(i - offset, c)].clone()
        } else {
            int(0)
        }
    });
    let b1 = embed(&r1, 0);
    let b2 = embed(&r2, r);
    let a1 = block_nilpart(&space, k, &b1, &random_skew(rng, k))?;
    let a2 = block_nilpart(&space, k, &b2, &random_skew(rng, k))?;
    let (v1, v2) = {
        let vs = random_translations(rng, space.dim(), &[a1.clone(), a2.clone()])?;
        (vs[0].clone(), vs[1].clone())
    };
    let g1 = AffineIsometry::new(space.clone(), a1, v1)?;
    let g2 = AffineIsometry::new(space.clone(), a2, v2)?;
    let pres = GroupPresentation::new(space, vec![g1, g2])?;
    if basis_change {
        let p = random_unimodular(rng, pres.dim());
        change_basis(&pres, &p)
    } else {
        Ok(pres)
    }
}

/// Random integral translations making every pair of the given nilpotent
/// parts admissible.
pub fn random_translations(rng: &mut impl Rng, n: usize, nilparts: &[Matrix]) -> Result<Vec<Vector>> {
    let g = nilparts.len();
    let z = Matrix::zeros(n, n);
    let row = |blocks: Vec<(usize, Matrix)>| {
        let mut r = vec![z.clone(); g];
        for (i, m) in blocks {
            r[i] = m;
        }
        r
    };
    let mut rows = Vec::new();
    for (i, a) in nilparts.iter().enumerate() {
        rows.push(row(vec![(i, a.clone())]));
        for (j, b) in nilparts.iter().enumerate().skip(i + 1) {
            rows.push(row(vec![(i, b.clone()), (j, a.clone())]));
            rows.push(row(vec![(i, a * b)]));
            rows.push(row(vec![(j, b * a)]));
        }
    }
    let system = Matrix::from_blocks(&rows)?;
    let sol = random_combination(rng, g * n, &integral_kernel(&system));
    Ok(sol.chunks(n).map(<[Scalar]>::to_vec).collect())
}

/// Three generators on `U ⊕ F ⊕ F* ⊕ U*` with `dim U = 3`, `dim F = 2`.
/// The first two have rank-2 blocks `B₁ = F R₁`, `B₂ = F* J R₁` and do not
/// commute; the third has `B = 0` and a skew `C` whose image contains
/// `ker R₁`, so that `U₀ = U`.
pub fn random_dim3_triple(rng: &mut impl Rng) -> Result<GroupPresentation> {
    let k = 3;
    let gw = Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let space = Arc::new(QuadraticSpace::witt_block(k, &gw)?);
    let r1 = loop {
        let m = random_matrix(rng, 2, k);
        if crate::exactlin::rank(&m) == 2 {
            break m;
        }
    };
    let c = int(rng.gen_range(1..=3));
    let j = Matrix::from_i64(&[&[0, 1], &[-1, 0]]).scale(&c);
    let r2 = &j * &r1;
    let stack = |top: &Matrix, bottom: &Matrix| Matrix::from_blocks(&[vec![top.clone()], vec![bottom.clone()]]);
    let z = Matrix::zeros(2, k);
    let b1 = stack(&r1, &z)?;
    let b2 = stack(&z, &r2)?;
    let ell = primitive(&kernel_vectors_of(&r1)[0]);
    // a ↦ (x ↦ a × x); its image is a^⊥, so a ⊥ ell puts ell in the image
    let cross = |a: &Vector| {
        Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 1) => -&a[2],
            (0, 2) => a[1].clone(),
            (1, 0) => a[2].clone(),
            (1, 2) => -&a[0],
            (2, 0) => -&a[1],
            (2, 1) => a[0].clone(),
            _ => int(0),
        })
    };
    let c3 = loop {
        let x: Vector = (0..3).map(|_| small(rng)).collect();
        let a = cross(&ell).mul_vec(&x);
        if !crate::exactlin::scalar::is_zero_vector(&a) {
            break cross(&a);
        }
    };
    let nilparts = vec![
        block_nilpart(&space, k, &b1, &random_skew(rng, k))?,
        block_nilpart(&space, k, &b2, &random_skew(rng, k))?,
        block_nilpart(&space, k, &Matrix::zeros(4, k), &c3)?,
    ];
    let vs = random_translations(rng, space.dim(), &nilparts)?;
    let gens = nilparts
        .into_iter()
        .zip(vs)
        .map(|(a, v)| AffineIsometry::new(space.clone(), a, v))
        .collect::<Result<Vec<_>>>()?;
    GroupPresentation::new(space, gens)
}
