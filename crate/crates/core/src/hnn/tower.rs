use super::{britton_reduce, HnnElement, HnnGroup, Piece};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quotient::{FiniteGroup, FiniteHom};
use crate::vset::VertexSet;
use crate::word::Letter;

/// One step `⟨v₁…vᵢ⟩ ↦ ⟨v₁…vᵢ₊₁⟩` of the RAAG as an iterated special HNN-extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub vertex: usize,
    pub base: VertexSet,
    pub assoc: VertexSet,
}

/// Levels for `v₂, …, vₙ` in vertex order; `⟨v₁⟩ ≅ ℤ` is the starting group.
pub fn build_tower(graph: &Graph) -> Vec<TowerLevel> {
    (1..graph.len())
        .map(|i| {
            let base = VertexSet::full(i);
            TowerLevel { vertex: i, base, assoc: base.intersection(graph.star(i)) }
        })
        .collect()
}

/// `ψ̃: G → HNN(ψ(A), ψ(⟨H⟩))` extending `ψ` on `A = ⟨V∖t⟩` by `t ↦ s`.
#[derive(Clone, Debug)]
pub struct ExtendedHom {
    stable: usize,
    psi: FiniteHom,
    images: Vec<usize>,
    inverses: Vec<usize>,
    group: HnnGroup,
}

pub fn extend_hom(graph: &Graph, stable: usize, psi: &FiniteHom, cap: usize) -> Result<ExtendedHom> {
    let base = graph.all().without(stable);
    if !base.is_subset(psi.domain()) {
        return Err(Error::Precondition(format!(
            "the hom must be defined on every vertex except {}",
            graph.name(stable)
        )));
    }
    let psi = psi.restrict(base);
    let q = psi.image_group(cap)?;
    let index = |v: usize| q.index_of(psi.image(v)).expect("generator images lie in the image group");
    let images: Vec<usize> = (0..graph.len()).map(|v| if base.contains(v) { index(v) } else { 0 }).collect();
    let inverses = images.iter().map(|&x| q.inv(x)).collect();
    let assoc: Vec<usize> = graph.link_in(stable, base).iter().map(|v| images[v]).collect();
    let group = HnnGroup::new(q, &assoc);
    Ok(ExtendedHom { stable, psi, images, inverses, group })
}

impl ExtendedHom {
    pub fn group(&self) -> &HnnGroup {
        &self.group
    }

    pub fn stable_vertex(&self) -> usize {
        self.stable
    }

    pub fn base_hom(&self) -> &FiniteHom {
        &self.psi
    }

    /// Image of a vertex of `A` as an element index of `ψ(A)`.
    pub fn base_image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn eval(&self, word: &[Letter]) -> HnnElement<usize> {
        let raw: Vec<Piece<usize>> = word
            .iter()
            .map(|l| {
                if l.v() == self.stable {
                    Piece::Stable(l.sign())
                } else if l.inverse {
                    Piece::Base(self.inverses[l.v()])
                } else {
                    Piece::Base(self.images[l.v()])
                }
            })
            .collect();
        britton_reduce(&self.group, &raw)
    }
}

/// An idempotent endomorphism of a finite base group, as a table on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRetraction {
    map: Vec<usize>,
}

impl BaseRetraction {
    pub fn identity(q: &FiniteGroup) -> BaseRetraction {
        BaseRetraction { map: (0..q.order()).collect() }
    }

    /// Extends the given images of `q`'s generators; fails unless the result
    /// is a well-defined idempotent endomorphism.
    pub fn from_generator_images(q: &FiniteGroup, images: &[usize]) -> Result<BaseRetraction> {
        let gens: Vec<usize> = q.generators().iter().map(|g| q.index_of(g).expect("generator")).collect();
        if gens.len() != images.len() {
            return Err(Error::Invalid(format!("expected {} generator images, got {}", gens.len(), images.len())));
        }
        let mut map = vec![usize::MAX; q.order()];
        map[0] = 0;
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = q.mul(x, g);
                let val = q.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = val;
                    queue.push(y);
                } else if map[y] != val {
                    return Err(Error::Invalid("generator images do not define a homomorphism".into()));
                }
            }
        }
        if (0..q.order()).any(|x| map[map[x]] != map[x]) {
            return Err(Error::Invalid("the endomorphism is not idempotent".into()));
        }
        Ok(BaseRetraction { map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// The two extensions of a base retraction `ρ` to `P`: `ρ̃₁` kills `s`, `ρ̃₂` fixes it.
#[derive(Clone, Debug)]
pub struct HnnRetractions {
    rho: BaseRetraction,
}

/// `ρ̃₂` exists only when `ρ(H̄) ⊆ H̄`, since `s` must still commute with the image of `H̄`.
pub fn hnn_retractions(p: &HnnGroup, rho: BaseRetraction) -> Result<HnnRetractions> {
    if rho.map.len() != p.base().order() {
        return Err(Error::Invalid("retraction table does not match the base group".into()));
    }
    if p.assoc().iter().any(|&h| !p.in_assoc_index(rho.apply(h))) {
        return Err(Error::Precondition("the base retraction must map the associated subgroup into itself".into()));
    }
    Ok(HnnRetractions { rho })
}

impl HnnRetractions {
    fn apply(&self, p: &HnnGroup, g: &HnnElement<usize>, keep_stable: bool) -> HnnElement<usize> {
        let raw: Vec<Piece<usize>> = g
            .pieces()
            .into_iter()
            .filter_map(|piece| match piece {
                Piece::Base(x) => Some(Piece::Base(self.rho.apply(x))),
                Piece::Stable(e) if keep_stable => Some(Piece::Stable(e)),
                Piece::Stable(_) => None,
            })
            .collect();
        britton_reduce(p, &raw)
    }

    /// `ρ̃₁`, with `s ↦ 1`.
    pub fn kill(&self, p: &HnnGroup, g: &HnnElement<usize>) -> HnnElement<usize> {
        self.apply(p, g, false)
    }

    /// `ρ̃₂`, with `s ↦ s`.
    pub fn fix(&self, p: &HnnGroup, g: &HnnElement<usize>) -> HnnElement<usize> {
        self.apply(p, g, true)
    }
}
