use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{input, structure, Result};
use crate::exactlin::scalar::{add, int, is_zero_vector, neg, scale, zero_vector, Vector};
use crate::exactlin::{image_basis, inverse, kernel_basis, Matrix, Scalar};
use crate::quadspace::QuadraticSpace;

/// Affine map `x ↦ (I + A)x + v` on a quadratic space.
///
/// Construction only checks shapes. Whether the map is an isometry, and
/// whether it has the special shape of an element of a fundamental group of a
/// complete flat homogeneous space, is reported by [`validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct AffineIsometry {
    nilpart: Matrix,
    translation: Vector,
    space: Arc<QuadraticSpace>,
}

impl AffineIsometry {
    pub fn new(space: Arc<QuadraticSpace>, nilpart: Matrix, translation: Vector) -> Result<Self> {
        let n = space.dim();
        if nilpart.rows() != n || nilpart.cols() != n {
            return Err(input(format!(
                "nilpotent part is {}x{}, expected {n}x{n}",
                nilpart.rows(),
                nilpart.cols()
            )));
        }
        if translation.len() != n {
            return Err(input(format!(
                "translation has {} entries, expected {n}",
                translation.len()
            )));
        }
        Ok(AffineIsometry {
            nilpart,
            translation,
            space,
        })
    }

    /// Builds from the full linear part `I + A`.
    pub fn from_linear(space: Arc<QuadraticSpace>, linear: &Matrix, translation: Vector) -> Result<Self> {
        let n = space.dim();
        if linear.rows() != n || linear.cols() != n {
            return Err(input(format!("linear part must be {n}x{n}")));
        }
        AffineIsometry::new(space, linear - &Matrix::identity(n), translation)
    }

    pub fn identity(space: Arc<QuadraticSpace>) -> Self {
        let n = space.dim();
        AffineIsometry {
            nilpart: Matrix::zeros(n, n),
            translation: zero_vector(n),
            space,
        }
    }

    pub fn pure_translation(space: Arc<QuadraticSpace>, v: Vector) -> Result<Self> {
        let n = space.dim();
        AffineIsometry::new(space, Matrix::zeros(n, n), v)
    }

    pub fn nilpart(&self) -> &Matrix {
        &self.nilpart
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn linear(&self) -> Matrix {
        &Matrix::identity(self.dim()) + &self.nilpart
    }

    pub fn is_identity(&self) -> bool {
        self.nilpart.is_zero() && is_zero_vector(&self.translation)
    }

    pub fn is_pure_translation(&self) -> bool {
        self.nilpart.is_zero()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        add(&add(x, &self.nilpart.mul_vec(x)), &self.translation)
    }

    /// The pair `(A, v)`. For admissible elements this is the exact logarithm
    /// in the affine Lie algebra, since `A² = 0` and `Av = 0`.
    pub fn log(&self) -> (Matrix, Vector) {
        (self.nilpart.clone(), self.translation.clone())
    }

    /// Flattened `(A, v)` as one vector of length `n² + n`.
    pub fn log_vector(&self) -> Vector {
        let mut out = self.nilpart.flatten();
        out.extend(self.translation.iter().cloned());
        out
    }

    pub fn is_admissible(&self) -> bool {
        validate(self).all_pass()
    }
}

impl fmt::Debug for AffineIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AffineIsometry {{ nilpart:\n{}translation: [{}] }}",
            self.nilpart,
            crate::exactlin::scalar::format_vector(&self.translation)
        )
    }
}

fn same_space(a: &AffineIsometry, b: &AffineIsometry) -> Result<()> {
    if Arc::ptr_eq(&a.space, &b.space) || a.space == b.space {
        Ok(())
    } else {
        Err(input("isometries act on different quadratic spaces"))
    }
}

/// `γ₁γ₂`, i.e. apply `γ₂` first.
pub fn compose(g1: &AffineIsometry, g2: &AffineIsometry) -> Result<AffineIsometry> {
    same_space(g1, g2)?;
    let a1a2 = &g1.nilpart * &g2.nilpart;
    let nilpart = &(&g1.nilpart + &g2.nilpart) + &a1a2;
    // (I + A₁)v₂ + v₁
    let translation = g1.apply(&g2.translation);
    Ok(AffineIsometry {
        nilpart,
        translation,
        space: g1.space.clone(),
    })
}

/// Exact inverse. Fails only for non-invertible linear parts, which never
/// occur for isometries.
pub fn inverse_of(g: &AffineIsometry) -> Result<AffineIsometry> {
    let n = g.dim();
    let linv = if (&g.nilpart * &g.nilpart).is_zero() {
        &Matrix::identity(n) - &g.nilpart
    } else {
        inverse(&g.linear()).ok_or_else(|| structure("linear part is not invertible"))?
    };
    let translation = neg(&linv.mul_vec(&g.translation));
    Ok(AffineIsometry {
        nilpart: &linv - &Matrix::identity(n),
        translation,
        space: g.space.clone(),
    })
}

/// `γ₁γ₂γ₁⁻¹γ₂⁻¹` by direct composition.
pub fn commutator(g1: &AffineIsometry, g2: &AffineIsometry) -> Result<AffineIsometry> {
    same_space(g1, g2)?;
    let a = compose(g1, g2)?;
    let b = compose(&inverse_of(g1)?, &inverse_of(g2)?)?;
    compose(&a, &b)
}

/// Closed form `(2A₁A₂, 2A₁v₂)` of the commutator, valid once the pair
/// satisfies the relations in [`PairRelations`].
pub fn commutator_formula(g1: &AffineIsometry, g2: &AffineIsometry) -> (Matrix, Vector) {
    let two = int(2);
    let a = (&g1.nilpart * &g2.nilpart).scale(&two);
    let v = scale(&two, &g1.nilpart.mul_vec(&g2.translation));
    (a, v)
}

/// Relations that any two elements of such a group satisfy. They make the
/// commutator collapse to its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelations {
    /// `A₁A₂ = -A₂A₁`
    pub anticommute: bool,
    /// `A₁A₂v₁ = 0` and `A₂A₁v₂ = 0`
    pub products_kill_translations: bool,
    /// `A₁v₂ = -A₂v₁`
    pub translation_relation: bool,
    /// direct commutator equals `(I + 2A₁A₂, 2A₁v₂)`
    pub formula_agrees: bool,
}

impl PairRelations {
    pub fn all_hold(&self) -> bool {
        self.anticommute && self.products_kill_translations && self.translation_relation && self.formula_agrees
    }
}

pub fn pair_relations(g1: &AffineIsometry, g2: &AffineIsometry) -> Result<PairRelations> {
    let (a1, v1) = (&g1.nilpart, &g1.translation);
    let (a2, v2) = (&g2.nilpart, &g2.translation);
    let a1a2 = a1 * a2;
    let a2a1 = a2 * a1;
    let direct = commutator(g1, g2)?;
    let (fa, fv) = commutator_formula(g1, g2);
    Ok(PairRelations {
        anticommute: (&a1a2 + &a2a1).is_zero(),
        products_kill_translations: is_zero_vector(&a1a2.mul_vec(v1)) && is_zero_vector(&a2a1.mul_vec(v2)),
        translation_relation: is_zero_vector(&add(&a1.mul_vec(v2), &a2.mul_vec(v1))),
        formula_agrees: direct.nilpart == fa && direct.translation == fv,
    })
}

/// The individual conditions checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Isometry,
    SquareZero,
    IsotropicImage,
    TranslationOrthogonalToImage,
    TranslationInKernel,
    SkewAdjoint,
    ImageIsKernelComplement,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Isometry,
        Check::SquareZero,
        Check::IsotropicImage,
        Check::TranslationOrthogonalToImage,
        Check::TranslationInKernel,
        Check::SkewAdjoint,
        Check::ImageIsKernelComplement,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Check::Isometry => "(I+A)ᵀ G (I+A) = G",
            Check::SquareZero => "A² = 0",
            Check::IsotropicImage => "im A totally isotropic",
            Check::TranslationOrthogonalToImage => "v ⊥ im A",
            Check::TranslationInKernel => "Av = 0",
            Check::SkewAdjoint => "<Ax, y> = -<x, Ay>",
            Check::ImageIsKernelComplement => "im A = (ker A)^⊥",
        }
    }

    /// Stable identifier used in structured output.
    pub fn key(self) -> &'static str {
        match self {
            Check::Isometry => "isometry",
            Check::SquareZero => "square_zero",
            Check::IsotropicImage => "isotropic_image",
            Check::TranslationOrthogonalToImage => "translation_orthogonal_to_image",
            Check::TranslationInKernel => "translation_in_kernel",
            Check::SkewAdjoint => "skew_adjoint",
            Check::ImageIsKernelComplement => "image_is_kernel_complement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: Vec<(Check, bool)>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, ok)| *ok)
    }

    pub fn passed(&self, check: Check) -> bool {
        self.results.iter().any(|&(c, ok)| c == check && ok)
    }

    pub fn failures(&self) -> Vec<Check> {
        self.results.iter().filter(|(_, ok)| !ok).map(|&(c, _)| c).collect()
    }

    /// Passes the isometry identity, whatever else fails.
    pub fn is_isometry(&self) -> bool {
        self.passed(Check::Isometry)
    }
}

pub fn validate(g: &AffineIsometry) -> ValidationReport {
    let space = &g.space;
    let gram = space.gram();
    let a = &g.nilpart;
    let v = &g.translation;
    let l = g.linear();
    let image = image_basis(a);
    let kernel = kernel_basis(a);
    let results = Check::ALL
        .iter()
        .map(|&c| {
            let ok = match c {
                Check::Isometry => &(&l.transpose() * gram) * &l == *gram,
                Check::SquareZero => (a * a).is_zero(),
                Check::IsotropicImage => space.is_totally_isotropic(&image),
                Check::TranslationOrthogonalToImage => image.basis().iter().all(|x| space.form(v, x).is_zero()),
                Check::TranslationInKernel => is_zero_vector(&a.mul_vec(v)),
                Check::SkewAdjoint => (&(&a.transpose() * gram) + &(gram * a)).is_zero(),
                Check::ImageIsKernelComplement => space.orthogonal_complement(&kernel) == image,
            };
            (c, ok)
        })
        .collect();
    ValidationReport { results }
}
