use num_traits::Zero;

use crate::error::{structure, Result};
use crate::exactlin::scalar::{dot, int, is_zero_vector};
use crate::exactlin::{Matrix, Scalar, Subspace, Vector};
use crate::quadspace::WittFrame;

use super::element::{commutator, AffineIsometry};

/// The blocks `B` and `C` of a nilpotent part written in a Witt frame:
///
/// ```text
///     [ 0  -BᵀG_W  C ]
/// A = [ 0    0     B ]
///     [ 0    0     0 ]
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    /// `(n - 2k) x k`
    pub b: Matrix,
    /// `k x k`, skew
    pub c: Matrix,
    pub frame: WittFrame,
}

impl BlockForm {
    /// The nilpotent part in frame coordinates.
    pub fn assemble(&self) -> Matrix {
        let k = self.frame.k();
        let m = self.frame.dim_w();
        let gw = self.frame.gram_w();
        let top_mid = -&(&self.b.transpose() * gw);
        Matrix::from_blocks(&[
            vec![Matrix::zeros(k, k), top_mid, self.c.clone()],
            vec![Matrix::zeros(m, k), Matrix::zeros(m, m), self.b.clone()],
            vec![Matrix::zeros(k, k), Matrix::zeros(k, m), Matrix::zeros(k, k)],
        ])
        .expect("block shapes agree")
    }

    /// The nilpotent part in the original coordinates.
    pub fn reassemble(&self) -> Matrix {
        self.frame.from_frame(&self.assemble())
    }

    pub fn b_column(&self, j: usize) -> Vector {
        self.b.column(j)
    }

    pub fn rank_b(&self) -> usize {
        crate::exactlin::rank(&self.b)
    }
}

/// Reads off `B` and `C` and checks every zero block and every identity the
/// shape requires. A failure means the frame is not adapted to this
/// element's group.
pub fn block_form(g: &AffineIsometry, frame: &WittFrame) -> Result<BlockForm> {
    if frame.dim() != g.dim() {
        return Err(structure("frame and isometry have different dimensions"));
    }
    let k = frame.k();
    let m = frame.dim_w();
    let n = g.dim();
    let a = frame.to_frame(g.nilpart());
    let zero_blocks = [
        (0, k, 0, k),
        (k, n, 0, k),
        (k, k + m, k, k + m),
        (k + m, n, 0, n),
    ];
    for (r0, r1, c0, c1) in zero_blocks {
        if !a.block(r0, r1, c0, c1).is_zero() {
            return Err(structure(
                "nilpotent part does not vanish on U₀ or does not map U₀^⊥ into U₀; the frame is not adapted",
            ));
        }
    }
    let b = a.block(k, k + m, k + m, n);
    let c = a.block(0, k, k + m, n);
    let top_mid = a.block(0, k, k, k + m);
    if top_mid != -&(&b.transpose() * frame.gram_w()) {
        return Err(structure("upper middle block is not -BᵀG_W"));
    }
    if !c.is_skew() {
        return Err(structure("C block is not skew-symmetric"));
    }
    if !(&(&b.transpose() * frame.gram_w()) * &b).is_zero() {
        return Err(structure("columns of B are not isotropic and mutually orthogonal"));
    }
    Ok(BlockForm {
        b,
        c,
        frame: frame.clone(),
    })
}

/// Outcome of a rule that only applies under a hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleStatus {
    Holds,
    Fails,
    NotApplicable,
}

impl RuleStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            RuleStatus::Holds
        } else {
            RuleStatus::Fails
        }
    }

    pub fn is_failure(self) -> bool {
        self == RuleStatus::Fails
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleStatus::Holds => "holds",
            RuleStatus::Fails => "fails",
            RuleStatus::NotApplicable => "not applicable",
        }
    }
}

/// Structural rules for a pair of elements in a common Witt frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulesReport {
    pub first: BlockForm,
    pub second: BlockForm,
    /// Columns of each `Bᵢ` are isotropic and mutually orthogonal.
    pub isotropy: [bool; 2],
    /// `<b₁ᵏ, b₂ⁱ> = -<b₁ⁱ, b₂ᵏ>` for all column pairs, i.e. `B₁ᵀG_W B₂` skew.
    pub crossover: bool,
    /// `B₁ᵀ G_W B₂`
    pub cross: Matrix,
    pub noncommuting: bool,
    pub duality: RuleStatus,
    /// 0-based `(i, j)` with `<b₁ʲ, b₂ⁱ> != 0`, scanning `i` over columns of
    /// `B₂` and then `j` over columns of `B₁`.
    pub duality_witness: Option<(usize, usize)>,
    /// The commutator's `C` block equals `-2 B₁ᵀG_W B₂`.
    pub commutator_block: bool,
    /// `C` block of the commutator.
    pub c3: Matrix,
    /// Translation of the commutator, split `(u, w, u*)` in the frame.
    pub v3: (Vector, Vector, Vector),
    /// Commutator translation `2A₁v₂ = -2A₂v₁` lies in `U₀`.
    pub commutator_translation_in_u0: RuleStatus,
    /// `u₁*, u₂* ∈ ker B₁ ∩ ker B₂`.
    pub dual_components_in_kernels: RuleStatus,
}

impl RulesReport {
    pub fn all_hold(&self) -> bool {
        self.isotropy[0]
            && self.isotropy[1]
            && self.crossover
            && self.commutator_block
            && !self.duality.is_failure()
            && !self.commutator_translation_in_u0.is_failure()
            && !self.dual_components_in_kernels.is_failure()
    }

    /// True when a rule that every fundamental group of a complete flat
    /// homogeneous space satisfies is violated.
    pub fn not_realizable(&self) -> bool {
        !self.all_hold()
    }
}

pub fn check_rules(g1: &AffineIsometry, g2: &AffineIsometry, frame: &WittFrame) -> Result<RulesReport> {
    let f1 = block_form(g1, frame)?;
    let f2 = block_form(g2, frame)?;
    let gw = frame.gram_w();
    let iso = |b: &Matrix| (&(&b.transpose() * gw) * b).is_zero();
    let cross = &(&f1.b.transpose() * gw) * &f2.b;
    let crossover = cross.is_skew();
    let noncommuting = !(g1.nilpart() * g2.nilpart()).is_zero();
    let k = frame.k();
    let mut duality_witness = None;
    'outer: for i in 0..k {
        for j in 0..k {
            if !cross[(j, i)].is_zero() {
                duality_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let duality = if noncommuting {
        RuleStatus::from_bool(duality_witness.is_some())
    } else {
        RuleStatus::NotApplicable
    };
    let g3 = commutator(g1, g2)?;
    let a3 = frame.to_frame(g3.nilpart());
    let c3 = a3.block(0, k, a3.cols() - k, a3.cols());
    let commutator_block = c3 == cross.scale(&int(-2));
    let v3 = frame.split(g3.translation());
    let commutator_translation_in_u0 = if noncommuting {
        RuleStatus::from_bool(is_zero_vector(&v3.1) && is_zero_vector(&v3.2))
    } else {
        RuleStatus::NotApplicable
    };
    let dual_components_in_kernels = if noncommuting {
        let (_, _, u1s) = frame.split(g1.translation());
        let (_, _, u2s) = frame.split(g2.translation());
        let ok = [&f1.b, &f2.b]
            .iter()
            .all(|b| is_zero_vector(&b.mul_vec(&u1s)) && is_zero_vector(&b.mul_vec(&u2s)));
        RuleStatus::from_bool(ok)
    } else {
        RuleStatus::NotApplicable
    };
    Ok(RulesReport {
        isotropy: [iso(&f1.b), iso(&f2.b)],
        first: f1,
        second: f2,
        crossover,
        cross,
        noncommuting,
        duality,
        duality_witness,
        commutator_block,
        c3,
        v3,
        commutator_translation_in_u0,
        dual_components_in_kernels,
    })
}

/// `<x, y>` under `G_W`.
pub fn pair_in_w(gram_w: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    dot(x, &gram_w.mul_vec(y))
}

/// `span` of the columns of `B₁` and `B₂` inside `W`.
pub fn combined_image(first: &BlockForm, second: &BlockForm) -> Subspace {
    let m = first.frame.dim_w();
    let cols: Vec<Vector> = first.b.columns().into_iter().chain(second.b.columns()).collect();
    Subspace::span(m, &cols)
}
