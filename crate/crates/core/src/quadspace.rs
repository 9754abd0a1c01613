//! Quadratic spaces: a nondegenerate symmetric bilinear form on `Q^n`,
//! together with signatures, isotropy tests, orthogonal complements and Witt
//! frames.
//!
//! The form is carried as an arbitrary invertible symmetric Gram matrix.
//! Nothing is normalised to `±1`, so no square roots are ever needed; the
//! Gram matrix of the middle summand `W` of a Witt frame plays the role of the
//! usual signature matrix.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{input, precondition, structure, Result};
use crate::exactlin::scalar::{self, int, is_zero_vector, sub, unit_vector, Scalar, Vector};
use crate::exactlin::{congruent_diagonalize, inertia, inverse, kernel_vectors_of, solve, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: Matrix,
    p: usize,
    q: usize,
}

impl QuadraticSpace {
    /// Validates the Gram matrix: symmetric, invertible, and with at least as
    /// many positive as negative directions (negate the form otherwise).
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(input("Gram matrix must be square"));
        }
        if !gram.is_symmetric() {
            return Err(input("Gram matrix must be symmetric"));
        }
        let (p, q, r) = inertia(&gram)?;
        if r != 0 {
            return Err(input("Gram matrix is degenerate"));
        }
        if p < q {
            return Err(input(format!(
                "signature ({p}, {q}) has fewer positive than negative directions; negate the form"
            )));
        }
        Ok(QuadraticSpace { gram, p, q })
    }

    /// `diag(I_p, -I_q)`.
    pub fn from_signature(p: usize, q: usize) -> Result<Self> {
        let d: Vec<Scalar> = (0..p + q).map(|i| if i < p { int(1) } else { int(-1) }).collect();
        QuadraticSpace::new(Matrix::diagonal(&d))
    }

    /// The split form `[[0, I_n], [I_n, 0]]` of signature `(n, n)`.
    pub fn split(n: usize) -> Self {
        let i = Matrix::identity(n);
        let z = Matrix::zeros(n, n);
        let gram = Matrix::from_blocks(&[vec![z.clone(), i.clone()], vec![i, z]]).expect("square blocks");
        QuadraticSpace { gram, p: n, q: n }
    }

    /// The Witt-basis Gram matrix `[[0, 0, I_k], [0, G_W, 0], [I_k, 0, 0]]`.
    pub fn witt_block(k: usize, gram_w: &Matrix) -> Result<Self> {
        let m = gram_w.rows();
        let ik = Matrix::identity(k);
        let g = Matrix::from_blocks(&[
            vec![Matrix::zeros(k, k), Matrix::zeros(k, m), ik.clone()],
            vec![Matrix::zeros(m, k), gram_w.clone(), Matrix::zeros(m, k)],
            vec![ik, Matrix::zeros(k, m), Matrix::zeros(k, k)],
        ])?;
        QuadraticSpace::new(g)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// Witt index of the whole space, `q` under the `p >= q` convention.
    pub fn witt_index(&self) -> usize {
        self.q
    }

    pub fn form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        scalar::dot(x, &self.gram.mul_vec(y))
    }

    /// Gram matrix `Bᵀ G B` of a list of vectors.
    pub fn gram_of(&self, vectors: &[Vector]) -> Matrix {
        let gv: Vec<Vector> = vectors.iter().map(|v| self.gram.mul_vec(v)).collect();
        Matrix::from_fn(vectors.len(), vectors.len(), |i, j| scalar::dot(&vectors[i], &gv[j]))
    }

    /// `(p, q, r)` of the form restricted to `s`; `r` is the radical dimension.
    pub fn signature_of(&self, s: &Subspace) -> (usize, usize, usize) {
        inertia(&self.gram_of(s.basis())).expect("restricted Gram matrices are symmetric")
    }

    /// Maximal dimension of a totally isotropic subspace of `s`.
    pub fn witt_index_of(&self, s: &Subspace) -> usize {
        let (p, q, r) = self.signature_of(s);
        r + p.min(q)
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        self.gram_of(s.basis()).is_zero()
    }

    pub fn orthogonal_complement(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        if s.is_zero() {
            return Subspace::whole(n);
        }
        // rows: sᵀ G
        let rows: Vec<Vector> = s.basis().iter().map(|v| self.gram.mul_vec(v)).collect();
        let m = Matrix::from_rows(&rows).expect("equal lengths");
        Subspace::span(n, &kernel_vectors_of(&m))
    }

    /// Witt frame adapted to a totally isotropic `u`: `u`'s canonical basis,
    /// a dual isotropic basis `u*` with `<u_i, u*_j> = δ_ij`, and a basis of
    /// the nondegenerate complement `W = (U ⊕ U*)^⊥`.
    ///
    /// The dual vectors come from solving `<u_j, x_i> = δ_ij` (free variables
    /// zero) and are then corrected by `x_i - ½ Σ_j <x_i, x_j> u_j`, which
    /// makes them mutually orthogonal without disturbing the pairing.
    pub fn witt_frame(&self, u: &Subspace) -> Result<WittFrame> {
        if u.ambient_dim() != self.dim() {
            return Err(input("subspace lives in a different dimension"));
        }
        if !self.is_totally_isotropic(u) {
            return Err(precondition("Witt frames need a totally isotropic subspace"));
        }
        let n = self.dim();
        let k = u.dim();
        let u_basis = u.basis().to_vec();
        let pairing_rows: Vec<Vector> = u_basis.iter().map(|v| self.gram.mul_vec(v)).collect();
        let pairing = Matrix::from_rows(&pairing_rows)?;
        let mut duals = Vec::with_capacity(k);
        for i in 0..k {
            let rhs = unit_vector(k, i);
            let sol = solve(&pairing, &rhs)?
                .ok_or_else(|| structure("isotropic basis has no dual: the form is degenerate"))?;
            duals.push(sol.particular);
        }
        let half = scalar::ratio(1, 2);
        let m = self.gram_of(&duals);
        let ustar_basis: Vec<Vector> = (0..k)
            .map(|i| {
                let mut x = duals[i].clone();
                for (j, uj) in u_basis.iter().enumerate() {
                    let c = &half * &m[(i, j)];
                    if !c.is_zero() {
                        x = sub(&x, &scalar::scale(&c, uj));
                    }
                }
                x
            })
            .collect();
        let hyperbolic: Vec<Vector> = u_basis.iter().chain(&ustar_basis).cloned().collect();
        let w_basis = if hyperbolic.is_empty() {
            Matrix::identity(n).columns()
        } else {
            let rows: Vec<Vector> = hyperbolic.iter().map(|v| self.gram.mul_vec(v)).collect();
            kernel_vectors_of(&Matrix::from_rows(&rows)?)
        };
        let frame = WittFrame::from_parts(self, u_basis, w_basis, ustar_basis)?;
        Ok(frame)
    }

    /// The coordinate basis read as a Witt frame with `k`-dimensional `U`:
    /// `e_1..e_k`, then the middle, then the last `k` vectors. Fails unless the
    /// Gram matrix already has the block shape of a Witt basis.
    pub fn standard_frame(&self, k: usize) -> Result<WittFrame> {
        let n = self.dim();
        if 2 * k > n {
            return Err(input(format!("cannot fit a {k}-dimensional Witt pair into dimension {n}")));
        }
        let e = |i| unit_vector(n, i);
        WittFrame::from_parts(
            self,
            (0..k).map(e).collect(),
            (k..n - k).map(e).collect(),
            (n - k..n).map(e).collect(),
        )
    }

    /// A totally isotropic subspace of dimension `witt_index()`, built by
    /// repeatedly splitting off hyperbolic planes. Each step needs a rational
    /// isotropic vector, which is looked for among basis vectors with zero
    /// norm, among pairs whose norm equation has a rational root, during an
    /// LLL reduction for the indefinite form, and among small integer
    /// combinations of three orthogonal directions. Returns
    /// `None` if that search comes up short, which can happen for forms that
    /// are split over the reals but not over the rationals.
    pub fn isotropic_witness(&self) -> Option<Subspace> {
        let n = self.dim();
        let mut found: Vec<Vector> = Vec::new();
        let mut rest: Vec<Vector> = Matrix::identity(n).columns();
        while found.len() < self.q {
            let u = find_isotropic(self, &rest)?;
            // partner with <u, x> = 1 inside span(rest), smallest first
            let x = rest
                .iter()
                .filter_map(|r| {
                    let p = self.form(&u, r);
                    (!p.is_zero()).then(|| scalar::scale(&p.recip(), r))
                })
                .min_by_key(|v| height(v))?;
            let c = self.form(&x, &x);
            // project span(rest) onto the complement of the plane
            let mut projected: Vec<Vector> = rest
                .iter()
                .map(|r| {
                    let beta = self.form(r, &u);
                    let alpha = self.form(r, &x) - &c * &beta;
                    scalar::primitive(&sub(&sub(r, &scalar::scale(&alpha, &u)), &scalar::scale(&beta, &x)))
                })
                .filter(|v| !is_zero_vector(v))
                .collect();
            projected.sort_by_key(|v| height(v));
            let mut basis: Vec<Vector> = Vec::new();
            for v in projected {
                let mut trial = basis.clone();
                trial.push(v.clone());
                if Subspace::rank_of(&trial) == trial.len() {
                    basis = trial;
                }
            }
            rest = basis;
            found.push(u);
        }
        let w = Subspace::span(n, &found);
        debug_assert!(self.is_totally_isotropic(&w));
        Some(w)
    }

    /// Splits `W` (given by its Gram matrix, vectors in `W` coordinates) along
    /// two non-orthogonal column pairs: `W = W_ij ⊕ W' ⊕ W*_ij` with
    /// `W_ij = span{b1_i, b1_j}` and `W*_ij` spanned by rescaled `b2_j, b2_i`.
    pub fn refine_frame_for_pair(
        gram_w: &Matrix,
        b1_i: &[Scalar],
        b1_j: &[Scalar],
        b2_i: &[Scalar],
        b2_j: &[Scalar],
    ) -> Result<PairDecomposition> {
        let m = gram_w.rows();
        if [b1_i, b1_j, b2_i, b2_j].iter().any(|v| v.len() != m) {
            return Err(input("vectors do not lie in W"));
        }
        let f = |x: &[Scalar], y: &[Scalar]| scalar::dot(x, &gram_w.mul_vec(y));
        if f(b1_i, b2_j).is_zero() {
            return Err(precondition("pairing <b1_i, b2_j> vanishes"));
        }
        let x = vec![b1_i.to_vec(), b1_j.to_vec()];
        let gx = Matrix::from_fn(2, 2, |a, b| f(&x[a], &x[b]));
        if !gx.is_zero() {
            return Err(precondition("b1_i, b1_j do not span a totally isotropic plane"));
        }
        let y = [b2_j.to_vec(), b2_i.to_vec()];
        let q = Matrix::from_fn(2, 2, |a, b| f(&x[a], &y[b]));
        let qinv = inverse(&q).ok_or_else(|| precondition("pairing between the column pairs is singular"))?;
        // y' = y Q^{-1} has <x_a, y'_b> = δ_ab; then remove the isotropy defect
        let mut duals: Vec<Vector> = (0..2)
            .map(|b| {
                let mut acc = scalar::zero_vector(m);
                for (a, ya) in y.iter().enumerate() {
                    acc = scalar::add(&acc, &scalar::scale(&qinv[(a, b)], ya));
                }
                acc
            })
            .collect();
        let half = scalar::ratio(1, 2);
        let gy = Matrix::from_fn(2, 2, |a, b| f(&duals[a], &duals[b]));
        for (a, d) in duals.iter_mut().enumerate() {
            for (b, xb) in x.iter().enumerate() {
                let c = &half * &gy[(a, b)];
                if !c.is_zero() {
                    *d = sub(d, &scalar::scale(&c, xb));
                }
            }
        }
        let plane: Vec<Vector> = x.iter().chain(&duals).cloned().collect();
        let rows: Vec<Vector> = plane.iter().map(|v| gram_w.mul_vec(v)).collect();
        let w_prime = kernel_vectors_of(&Matrix::from_rows(&rows)?);
        if Subspace::rank_of(&plane) != 4 {
            return Err(precondition("column pairs are linearly dependent"));
        }
        let w_space = QuadraticSpace::new(gram_w.clone())
            .or_else(|_| QuadraticSpace::new(-gram_w))
            .map_err(|_| input("Gram matrix of W is degenerate"))?;
        Ok(PairDecomposition {
            isotropic: x,
            dual: duals,
            w_prime,
            witt_index_w: w_space.witt_index(),
            dim_w: m,
        })
    }
}

/// Bit size of a vector's entries, used to prefer small vectors.
fn height(v: &[Scalar]) -> u64 {
    v.iter().map(|s| s.numer().bits() + s.denom().bits()).sum()
}

fn is_rational_square(s: &Scalar) -> Option<Scalar> {
    if s.is_negative() {
        return None;
    }
    let root = |b: &BigInt| {
        let r = b.sqrt();
        (&r * &r == *b).then_some(r)
    };
    Some(Scalar::new(root(s.numer())?, root(s.denom())?))
}

fn find_isotropic(space: &QuadraticSpace, basis: &[Vector]) -> Option<Vector> {
    let norm = |v: &Vector| space.form(v, v);
    let try_pairs = |vs: &[Vector]| -> Option<Vector> {
        if let Some(v) = vs.iter().find(|v| !is_zero_vector(v) && norm(v).is_zero()) {
            return Some(v.clone());
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                // norm(v_i + t v_j) = a + 2bt + ct² with c != 0
                let (a, b, c) = (norm(&vs[i]), space.form(&vs[i], &vs[j]), norm(&vs[j]));
                if c.is_zero() {
                    continue;
                }
                let disc = &b * &b - &a * &c;
                if let Some(r) = is_rational_square(&disc) {
                    let t = (-&b + r) / &c;
                    return Some(scalar::add(&vs[i], &scalar::scale(&t, &vs[j])));
                }
            }
        }
        None
    };
    if let Some(v) = try_pairs(basis) {
        return Some(v);
    }
    let reduced = match lll_reduce(space, basis) {
        Reduction::Isotropic(v) => return Some(v),
        Reduction::Basis(b) => b,
    };
    if let Some(v) = try_pairs(&reduced) {
        return Some(v);
    }
    let sub_gram = space.gram_of(&reduced);
    let (_, p) = congruent_diagonalize(&sub_gram).ok()?;
    let bm = Matrix::from_columns(space.dim(), &reduced);
    let diag_basis: Vec<Vector> =
        p.columns().iter().map(|c| normalize_norm(space, bm.mul_vec(c))).collect();
    try_pairs(&diag_basis).or_else(|| try_triples(space, &diag_basis))
}

enum Reduction {
    Basis(Vec<Vector>),
    Isotropic(Vector),
}

/// Swap limit for [`lll_reduce`]; the indefinite variant has no general
/// termination bound.
const LLL_MAX_SWAPS: usize = 2000;

/// LLL reduction of a basis with respect to an indefinite form, comparing
/// absolute values of the Gram-Schmidt norms. Stops early if a Gram-Schmidt
/// vector turns out isotropic.
fn lll_reduce(space: &QuadraticSpace, basis: &[Vector]) -> Reduction {
    let n = basis.len();
    let mut b: Vec<Vector> = basis.iter().map(|v| scalar::primitive(v)).collect();
    let delta = scalar::ratio(3, 4);
    let mut swaps = 0;
    'restart: loop {
        // Gram-Schmidt data: mu[i][j] for j < i and norms bn[i]
        let g = space.gram_of(&b);
        let mut mu = vec![vec![Scalar::zero(); n]; n];
        let mut bn: Vec<Scalar> = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..i {
                let mut m = g[(i, j)].clone();
                for k in 0..j {
                    m -= &mu[j][k] * &mu[i][k] * &bn[k];
                }
                mu[i][j] = m / &bn[j];
            }
            let mut d = g[(i, i)].clone();
            for k in 0..i {
                d -= &mu[i][k] * &mu[i][k] * &bn[k];
            }
            if d.is_zero() {
                // b*_i = b_i - Σ mu_ik b*_k, expanded in the b basis
                let mut star: Vec<Vector> = Vec::with_capacity(i + 1);
                for r in 0..=i {
                    let mut v = b[r].clone();
                    for k in 0..r {
                        v = sub(&v, &scalar::scale(&mu[r][k], &star[k]));
                    }
                    star.push(v);
                }
                return Reduction::Isotropic(scalar::primitive(&star[i]));
            }
            bn.push(d);
        }
        let mut k = 1;
        while k < n {
            for j in (0..k).rev() {
                let r = mu[k][j].round();
                if !r.is_zero() {
                    b[k] = sub(&b[k], &scalar::scale(&r, &b[j]));
                    let (head, tail) = mu.split_at_mut(k);
                    for (x, m) in tail[0].iter_mut().zip(&head[j]).take(j) {
                        *x -= &r * m;
                    }
                    mu[k][j] -= &r;
                }
            }
            let lhs = (&bn[k] + &mu[k][k - 1] * &mu[k][k - 1] * &bn[k - 1]).abs();
            if lhs < &delta * bn[k - 1].abs() {
                swaps += 1;
                if swaps > LLL_MAX_SWAPS {
                    break 'restart;
                }
                b.swap(k, k - 1);
                continue 'restart;
            }
            k += 1;
        }
        break;
    }
    Reduction::Basis(b)
}

/// Largest coefficient tried by [`try_triples`].
const TRIPLE_SEARCH_BOUND: i64 = 24;

/// Rescales `v` so its norm is an integer with no square factor below
/// `SQUARE_STRIP_BOUND²`.
fn normalize_norm(space: &QuadraticSpace, v: Vector) -> Vector {
    let d = space.form(&v, &v);
    if d.is_zero() {
        return v;
    }
    // norm(den·v) = num·den
    let den = Scalar::from_integer(d.denom().clone());
    let mut m = d.numer() * d.denom();
    let mut root = BigInt::one();
    let mut f = BigInt::from(2u32);
    while &f * &f <= m.abs() && f <= BigInt::from(SQUARE_STRIP_BOUND) {
        let sq = &f * &f;
        while (&m % &sq).is_zero() {
            m /= &sq;
            root *= &f;
        }
        f += 1u32;
    }
    scalar::scale(&(den / Scalar::from_integer(root)), &v)
}

const SQUARE_STRIP_BOUND: u32 = 1 << 12;

/// For mutually orthogonal `v_i, v_j, v_k`, looks for `x v_i + y v_j + v_k`
/// isotropic with integers `0 < x, 0 <= y <= bound`, solving for the last
/// coefficient exactly.
fn try_triples(space: &QuadraticSpace, vs: &[Vector]) -> Option<Vector> {
    let d: Vec<Scalar> = vs.iter().map(|v| space.form(v, v)).collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                if d[i].is_zero() || d[k].is_zero() {
                    continue;
                }
                for x in 1..=TRIPLE_SEARCH_BOUND {
                    for y in 0..=TRIPLE_SEARCH_BOUND {
                        let (x, y) = (scalar::int(x), scalar::int(y));
                        // d_k z² = -(d_i x² + d_j y²)
                        let rhs = -(&d[i] * &x * &x + &d[j] * &y * &y) / &d[k];
                        if let Some(z) = is_rational_square(&rhs) {
                            let v = scalar::add(
                                &scalar::add(&scalar::scale(&x, &vs[i]), &scalar::scale(&y, &vs[j])),
                                &scalar::scale(&z, &vs[k]),
                            );
                            return Some(v);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Witt frame `{u_1..u_k, w_1..w_{n-2k}, u*_1..u*_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittFrame {
    pub u_basis: Vec<Vector>,
    pub w_basis: Vec<Vector>,
    pub ustar_basis: Vec<Vector>,
    gram_w: Matrix,
    basis_inverse: Matrix,
}

impl WittFrame {
    /// Assembles a frame and checks every Witt invariant.
    pub fn from_parts(
        space: &QuadraticSpace,
        u_basis: Vec<Vector>,
        w_basis: Vec<Vector>,
        ustar_basis: Vec<Vector>,
    ) -> Result<Self> {
        let n = space.dim();
        let k = u_basis.len();
        if ustar_basis.len() != k || w_basis.len() + 2 * k != n {
            return Err(structure("frame part sizes do not add up to the dimension"));
        }
        let gu = space.gram_of(&u_basis);
        let gus = space.gram_of(&ustar_basis);
        let pair = Matrix::from_fn(k, k, |i, j| space.form(&u_basis[i], &ustar_basis[j]));
        if !gu.is_zero() || !gus.is_zero() || pair != Matrix::identity(k) {
            return Err(structure("U and U* do not form dual isotropic bases"));
        }
        let cross = w_basis
            .iter()
            .all(|w| u_basis.iter().chain(&ustar_basis).all(|x| space.form(w, x).is_zero()));
        if !cross {
            return Err(structure("W is not orthogonal to U ⊕ U*"));
        }
        let gram_w = space.gram_of(&w_basis);
        let all: Vec<Vector> = u_basis.iter().chain(&w_basis).chain(&ustar_basis).cloned().collect();
        let basis = Matrix::from_columns(n, &all);
        let basis_inverse = inverse(&basis).ok_or_else(|| structure("frame vectors are not a basis"))?;
        if crate::exactlin::determinant(&gram_w).is_zero() && !w_basis.is_empty() {
            return Err(structure("W is degenerate"));
        }
        Ok(WittFrame {
            u_basis,
            w_basis,
            ustar_basis,
            gram_w,
            basis_inverse,
        })
    }

    pub fn k(&self) -> usize {
        self.u_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.u_basis.len() * 2 + self.w_basis.len()
    }

    pub fn dim_w(&self) -> usize {
        self.w_basis.len()
    }

    /// Gram matrix `G_W` of the middle summand.
    pub fn gram_w(&self) -> &Matrix {
        &self.gram_w
    }

    /// Change-of-basis matrix whose columns are the frame vectors in order.
    pub fn basis_matrix(&self) -> Matrix {
        let all: Vec<Vector> = self
            .u_basis
            .iter()
            .chain(&self.w_basis)
            .chain(&self.ustar_basis)
            .cloned()
            .collect();
        Matrix::from_columns(self.dim(), &all)
    }

    pub fn basis_inverse(&self) -> &Matrix {
        &self.basis_inverse
    }

    pub fn u_space(&self) -> Subspace {
        Subspace::span(self.dim(), &self.u_basis)
    }

    /// Frame coordinates of `v`, split as `(u, w, u*)`.
    pub fn split(&self, v: &[Scalar]) -> (Vector, Vector, Vector) {
        let c = self.basis_inverse.mul_vec(v);
        let k = self.k();
        let m = self.dim_w();
        (c[..k].to_vec(), c[k..k + m].to_vec(), c[k + m..].to_vec())
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(&self, u: &[Scalar], w: &[Scalar], ustar: &[Scalar]) -> Vector {
        let coords: Vector = u.iter().chain(w).chain(ustar).cloned().collect();
        self.basis_matrix().mul_vec(&coords)
    }

    /// `A` expressed in frame coordinates.
    pub fn to_frame(&self, a: &Matrix) -> Matrix {
        &(&self.basis_inverse * a) * &self.basis_matrix()
    }

    pub fn from_frame(&self, a: &Matrix) -> Matrix {
        &(&self.basis_matrix() * a) * &self.basis_inverse
    }

    /// Full Gram matrix in frame coordinates; always
    /// `[[0, 0, I], [0, G_W, 0], [I, 0, 0]]` for a valid frame.
    pub fn frame_gram(&self, space: &QuadraticSpace) -> Matrix {
        let p = self.basis_matrix();
        &(&p.transpose() * space.gram()) * &p
    }
}

/// Output of [`QuadraticSpace::refine_frame_for_pair`]: a hyperbolic
/// 4-dimensional piece of `W` and its orthogonal complement `W'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecomposition {
    pub isotropic: Vec<Vector>,
    pub dual: Vec<Vector>,
    pub w_prime: Vec<Vector>,
    pub witt_index_w: usize,
    pub dim_w: usize,
}

impl PairDecomposition {
    pub fn dim_w_prime(&self) -> usize {
        self.w_prime.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn signatures() {
        let e = QuadraticSpace::from_signature(3, 0).unwrap();
        assert_eq!(e.signature_of(&Subspace::whole(3)), (3, 0, 0));
        let s = QuadraticSpace::split(2);
        let iso = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        assert_eq!(s.signature_of(&iso), (0, 0, 2));
        assert_eq!(s.witt_index_of(&iso), 2);
    }

    #[test]
    fn witt_indices() {
        assert_eq!(QuadraticSpace::from_signature(1, 1).unwrap().witt_index(), 1);
        assert_eq!(QuadraticSpace::from_signature(2, 0).unwrap().witt_index(), 0);
        let s = QuadraticSpace::from_signature(1, 1).unwrap();
        let w = s.isotropic_witness().unwrap();
        assert_eq!(w.dim(), 1);
        assert!(s.is_totally_isotropic(&w));
        assert!(s.is_totally_isotropic(&Subspace::span(2, &[v(&[1, 1])])));
    }

    #[test]
    fn witnesses_beyond_pairs() {
        // x² + y² - 2z² has no isotropic vector in any coordinate plane
        let s = QuadraticSpace::new(Matrix::diagonal(&v(&[1, 1, -2]))).unwrap();
        let w = s.isotropic_witness().unwrap();
        assert_eq!(w.dim(), 1);
        assert!(s.is_totally_isotropic(&w));
        // x² - 2y² is isotropic over the reals only
        let s = QuadraticSpace::new(Matrix::diagonal(&v(&[1, -2]))).unwrap();
        assert_eq!(s.witt_index(), 1);
        assert!(s.isotropic_witness().is_none());
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(QuadraticSpace::new(Matrix::from_i64(&[&[1, 1], &[0, 1]])).is_err());
        assert!(QuadraticSpace::new(Matrix::from_i64(&[&[1, 1], &[1, 1]])).is_err());
        assert!(QuadraticSpace::from_signature(1, 2).is_err());
    }

    #[test]
    fn isotropy_tests() {
        let s = QuadraticSpace::from_signature(1, 1).unwrap();
        assert!(s.is_totally_isotropic(&Subspace::zero(2)));
        assert!(!s.is_totally_isotropic(&Subspace::span(2, &[v(&[1, 0])])));
    }

    #[test]
    fn complements() {
        let h = QuadraticSpace::new(Matrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let e1 = Subspace::span(2, &[v(&[1, 0])]);
        assert_eq!(h.orthogonal_complement(&e1), e1);
        assert!(h.orthogonal_complement(&Subspace::whole(2)).is_zero());
        assert_eq!(h.orthogonal_complement(&Subspace::zero(2)), Subspace::whole(2));
    }

    #[test]
    fn trivial_frame() {
        let s = QuadraticSpace::from_signature(2, 1).unwrap();
        let f = s.witt_frame(&Subspace::zero(3)).unwrap();
        assert_eq!(f.k(), 0);
        assert_eq!(f.w_basis, Matrix::identity(3).columns());
        assert_eq!(f.gram_w(), s.gram());
    }

    #[test]
    fn frame_rejects_non_isotropic() {
        let s = QuadraticSpace::from_signature(2, 1).unwrap();
        let u = Subspace::span(3, &[v(&[1, 0, 0])]);
        assert!(matches!(s.witt_frame(&u), Err(crate::Error::Precondition(_))));
    }

    #[test]
    fn frame_block_shape_for_diagonal_form() {
        let s = QuadraticSpace::from_signature(3, 3).unwrap();
        let u = Subspace::span(6, &[v(&[1, 0, 0, 1, 0, 0]), v(&[0, 2, 1, 0, 1, 2])]);
        assert!(s.is_totally_isotropic(&u));
        let f = s.witt_frame(&u).unwrap();
        let gw = f.gram_w().clone();
        let expect = QuadraticSpace::witt_block(2, &gw).unwrap();
        assert_eq!(f.frame_gram(&s), *expect.gram());
        // deterministic
        assert_eq!(s.witt_frame(&u).unwrap(), f);
    }

    #[test]
    fn pair_refinement_on_hyperbolic_four_space() {
        let g = QuadraticSpace::split(2);
        let d = QuadraticSpace::refine_frame_for_pair(
            g.gram(),
            &v(&[1, 0, 0, 0]),
            &v(&[0, 1, 0, 0]),
            &v(&[0, 0, 0, -1]),
            &v(&[0, 0, 1, 0]),
        )
        .unwrap();
        assert_eq!(d.dim_w_prime(), 0);
        assert_eq!(d.witt_index_w, 2);
    }

    #[test]
    fn pair_refinement_with_orthogonal_summand() {
        // W = H ⊕ H ⊕ (definite plane)
        let mut gram = Matrix::zeros(6, 6);
        let split = QuadraticSpace::split(2);
        for i in 0..4 {
            for j in 0..4 {
                gram = gram.set(i, j, split.gram()[(i, j)].clone());
            }
        }
        gram = gram.set(4, 4, int(1)).set(5, 5, int(3));
        let d = QuadraticSpace::refine_frame_for_pair(
            &gram,
            &v(&[1, 0, 0, 0, 0, 0]),
            &v(&[0, 1, 0, 0, 0, 0]),
            &v(&[0, 0, 0, -2, 0, 0]),
            &v(&[0, 0, 2, 0, 0, 0]),
        )
        .unwrap();
        assert_eq!(d.dim_w_prime(), 2);
        let f = |x: &Vector, y: &Vector| scalar::dot(x, &gram.mul_vec(y));
        for a in 0..2 {
            for b in 0..2 {
                let want = if a == b { int(1) } else { int(0) };
                assert_eq!(f(&d.isotropic[a], &d.dual[b]), want);
                assert!(f(&d.dual[a], &d.dual[b]).is_zero());
            }
        }
        for w in &d.w_prime {
            for x in d.isotropic.iter().chain(&d.dual) {
                assert!(f(w, x).is_zero());
            }
        }
    }

    #[test]
    fn pair_refinement_needs_nonzero_pairing() {
        let g = QuadraticSpace::split(2);
        let r = QuadraticSpace::refine_frame_for_pair(
            g.gram(),
            &v(&[1, 0, 0, 0]),
            &v(&[0, 1, 0, 0]),
            &v(&[0, 0, 1, 0]),
            &v(&[0, 0, 1, 0]),
        );
        assert!(matches!(r, Err(crate::Error::Precondition(_))));
    }
}
