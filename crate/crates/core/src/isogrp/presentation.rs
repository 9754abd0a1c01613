use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{input, Result};
use crate::exactlin::{image_basis, Matrix, Subspace, Vector};
use crate::quadspace::QuadraticSpace;

use super::element::{commutator, compose, inverse_of, pair_relations, validate, AffineIsometry, PairRelations, ValidationReport};

/// A quadratic space with an ordered, named list of generators.
///
/// Construction checks dimensions only; [`admissibility`](Self::admissibility)
/// reports on the structural conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    space: Arc<QuadraticSpace>,
    generators: Vec<AffineIsometry>,
    names: Vec<String>,
}

impl GroupPresentation {
    /// Generators are named `g1, g2, ...`.
    pub fn new(space: Arc<QuadraticSpace>, generators: Vec<AffineIsometry>) -> Result<Self> {
        let names = (1..=generators.len()).map(|i| format!("g{i}")).collect();
        GroupPresentation::with_names(space, generators, names)
    }

    pub fn with_names(space: Arc<QuadraticSpace>, generators: Vec<AffineIsometry>, names: Vec<String>) -> Result<Self> {
        if names.len() != generators.len() {
            return Err(input("one name per generator is required"));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(input(format!("generator name `{name}` is used twice")));
            }
        }
        for (g, name) in generators.iter().zip(&names) {
            if **g.space() != *space {
                return Err(input(format!("generator `{name}` lives on a different space")));
            }
        }
        Ok(GroupPresentation {
            space,
            generators,
            names,
        })
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn generators(&self) -> &[AffineIsometry] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn identity(&self) -> AffineIsometry {
        AffineIsometry::identity(self.space.clone())
    }

    /// `[[γᵢ, γⱼ], γₖ] = id` for all generator triples. This makes every
    /// generator commutator central, which is enough for the whole group to
    /// be 2-step nilpotent.
    pub fn check_two_step(&self) -> bool {
        let gens = &self.generators;
        for (i, gi) in gens.iter().enumerate() {
            for gj in &gens[i + 1..] {
                let Ok(c) = commutator(gi, gj) else { return false };
                if c.is_identity() {
                    continue;
                }
                for gk in gens {
                    match commutator(&c, gk) {
                        Ok(t) if t.is_identity() => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// `AᵢAⱼ = 0` for all ordered generator pairs. Triple products vanish in
    /// these groups, so this decides commutativity of the whole holonomy.
    pub fn holonomy_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|a| gens.iter().all(|b| (a.nilpart() * b.nilpart()).is_zero()))
    }

    /// `U_Γ = Σ im Aᵢ` over the generators.
    pub fn u_gamma(&self) -> Subspace {
        self.generators
            .iter()
            .fold(Subspace::zero(self.dim()), |acc, g| acc.sum(&image_basis(g.nilpart())))
    }

    /// `U₀ = U_Γ ∩ U_Γ^⊥`, always totally isotropic.
    pub fn u_zero(&self) -> Subspace {
        let ug = self.u_gamma();
        ug.intersection(&self.space.orthogonal_complement(&ug))
    }

    /// Logs of the generators together with logs of their pairwise
    /// commutators, as vectors in the affine Lie algebra.
    pub fn hull_spanning_set(&self) -> Result<Vec<Vector>> {
        let gens = &self.generators;
        let mut out: Vec<Vector> = gens.iter().map(AffineIsometry::log_vector).collect();
        for (i, gi) in gens.iter().enumerate() {
            for gj in &gens[i + 1..] {
                out.push(commutator(gi, gj)?.log_vector());
            }
        }
        Ok(out)
    }

    /// Dimension of the Lie algebra of the unipotent hull of a 2-step group.
    pub fn group_rank(&self) -> Result<usize> {
        Ok(Subspace::rank_of(&self.hull_spanning_set()?))
    }

    /// All products of at most `max_len` generators and inverses, without
    /// repetition; see [`enumerate_labeled_words`](Self::enumerate_labeled_words).
    pub fn enumerate_words(&self, max_len: usize) -> Result<Vec<AffineIsometry>> {
        Ok(self
            .enumerate_labeled_words(max_len)?
            .into_iter()
            .map(|w| w.element)
            .collect())
    }

    /// Breadth-first enumeration. Letters are ordered `g1, g1⁻¹, g2, g2⁻¹, ...`
    /// and each element is listed once, under the first word that reaches it.
    pub fn enumerate_labeled_words(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut letters = Vec::with_capacity(2 * self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            letters.push((Letter { generator: i, inverse: false }, g.clone()));
            letters.push((Letter { generator: i, inverse: true }, inverse_of(g)?));
        }
        let identity = self.identity();
        let mut seen: HashSet<(Matrix, Vector)> = HashSet::new();
        seen.insert(identity.log());
        let mut out = vec![Word {
            letters: Vec::new(),
            element: identity,
        }];
        let mut frontier = vec![0usize];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for &idx in &frontier {
                for (letter, g) in &letters {
                    let element = compose(&out[idx].element, g)?;
                    if seen.insert(element.log()) {
                        let mut word = out[idx].letters.clone();
                        word.push(*letter);
                        out.push(Word { letters: word, element });
                        next.push(out.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// Layered validation of every generator plus the pair relations.
    pub fn admissibility(&self) -> Result<AdmissibilityReport> {
        let generators = self
            .generators
            .iter()
            .zip(&self.names)
            .map(|(g, name)| (name.clone(), validate(g)))
            .collect();
        let mut pairs = Vec::new();
        for (i, gi) in self.generators.iter().enumerate() {
            for (j, gj) in self.generators.iter().enumerate().skip(i + 1) {
                pairs.push((i, j, pair_relations(gi, gj)?));
            }
        }
        Ok(AdmissibilityReport {
            generators,
            pairs,
            two_step: self.check_two_step(),
        })
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "id".to_string();
        }
        word.iter()
            .map(|l| {
                let name = &self.names[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub element: AffineIsometry,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Word").field("letters", &self.letters).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub generators: Vec<(String, ValidationReport)>,
    /// `(i, j, relations)` for generator indices `i < j`.
    pub pairs: Vec<(usize, usize, PairRelations)>,
    pub two_step: bool,
}

impl AdmissibilityReport {
    pub fn generators_admissible(&self) -> bool {
        self.generators.iter().all(|(_, r)| r.all_pass())
    }

    pub fn pairs_hold(&self) -> bool {
        self.pairs.iter().all(|(_, _, r)| r.all_hold())
    }

    pub fn all_pass(&self) -> bool {
        self.generators_admissible() && self.pairs_hold() && self.two_step
    }
}
