use super::split::Split;
use super::{ConjCertificate, Solver};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hnn::{cyclic_reduce as hnn_cyclic_reduce, prefix};
use crate::special::{intersect_parabolics, parabolic_member, Parabolic};
use crate::vset::VertexSet;
use crate::word::ReducedWord;

/// `ω = h · p⁻¹` for the prefix `p` of a cyclic permutation of the core that
/// is conjugate back to the core by `h` in the associated subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaEntry {
    pub prefix: ReducedWord,
    pub h: ReducedWord,
    pub value: ReducedWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerShape {
    /// The element is trivial and the centralizer is all of `⟨within⟩`.
    Whole,
    /// `⟨t⟩ × C_H(x)` for a core `tᵉx` with `x` in the associated subgroup.
    Product { stable: usize, assoc: Box<CentralizerData> },
    /// `C_H(g) · Ω · ⟨g⟩` for a core `g` with at least one stable syllable.
    Triple { assoc: Box<CentralizerData>, core: ReducedWord, omega: Vec<OmegaEntry> },
    /// `C_W(g)` for a parabolic `W = k⟨P⟩k⁻¹`, stored as `k · C_P(k⁻¹gk) · k⁻¹`.
    Restricted { parabolic: Parabolic, inner: Box<CentralizerData> },
}

/// A centralizer `C_{⟨within⟩}(element)` with a generating set. The shape
/// records how it was built, relative to `conjugator⁻¹ · element · conjugator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerData {
    pub element: ReducedWord,
    pub within: VertexSet,
    pub generators: Vec<ReducedWord>,
    pub conjugator: ReducedWord,
    pub shape: CentralizerShape,
}

impl CentralizerData {
    /// Exact membership: `c ∈ ⟨within⟩` and `c` commutes with the element.
    pub fn contains(&self, graph: &Graph, c: &ReducedWord) -> bool {
        c.support().is_subset(self.within) && graph.commute(c, &self.element)
    }

    /// Decides membership by writing `c` in the normal form of the shape,
    /// with powers of cyclic cores bounded by `bound`. A `true` answer is
    /// always correct.
    pub fn contains_bounded(&self, graph: &Graph, c: &ReducedWord, bound: i64) -> bool {
        let c1 = graph.conj(&graph.inv(&self.conjugator), c);
        match &self.shape {
            CentralizerShape::Whole => c.support().is_subset(self.within),
            CentralizerShape::Product { stable, assoc } => {
                let k = graph.abelianize(&c1)[*stable];
                let rest = graph.mul(&c1, &graph.pow(&graph.generator(*stable), -k));
                assoc.contains(graph, &rest)
            }
            CentralizerShape::Triple { assoc, core, omega } => (-bound..=bound).any(|k| {
                let tail = graph.pow(core, -k);
                std::iter::once(ReducedWord::identity())
                    .chain(omega.iter().map(|o| o.value.clone()))
                    .any(|w| assoc.contains(graph, &graph.product([&c1, &graph.inv(&w), &tail])))
            }),
            CentralizerShape::Restricted { parabolic, inner } => {
                parabolic_member(graph, c, parabolic)
                    && inner.contains_bounded(graph, &graph.conj(&graph.inv(&parabolic.conjugator), c), bound)
            }
        }
    }
}

impl Solver<'_> {
    /// `C_B(g)` for `g ∈ ⟨J⟩` and `B ⊆ J`.
    pub(crate) fn cent_in(&self, ambient: VertexSet, b: VertexSet, g: &ReducedWord) -> Result<CentralizerData> {
        let graph = self.graph;
        if g.is_empty() {
            return Ok(CentralizerData {
                element: g.clone(),
                within: b,
                generators: b.iter().map(|v| graph.generator(v)).collect(),
                conjugator: ReducedWord::identity(),
                shape: CentralizerShape::Whole,
            });
        }
        if b == ambient {
            return self.cent_full_in(ambient, g);
        }
        let relevant = b.union(g.support());
        if !relevant.is_subset(ambient) {
            return Err(Error::Precondition("element must lie in the ambient special subgroup".into()));
        }
        if relevant != ambient {
            return self.cent_in(relevant, b, g);
        }
        // b commutes with g iff bXb⁻¹ = X and b ∈ Xᵢ⟨H⟩Xᵢ⁻¹ for each partial product
        let t = ambient.difference(b).first().expect("B is a proper subset");
        let split = Split::new(graph, ambient, t);
        let ge = split.decompose(g);
        let mut w = Parabolic::special(b);
        for xi in split.partial_products(&ge) {
            w = intersect_parabolics(graph, &w, &Parabolic::new(xi, split.h))?;
        }
        let x = split.base_product(&ge);
        let k = w.conjugator.clone();
        let inner = self.cent_in(split.a, w.base, &graph.conj(&graph.inv(&k), &x))?;
        let generators = inner.generators.iter().map(|c| graph.conj(&k, c)).collect();
        Ok(CentralizerData {
            element: g.clone(),
            within: b,
            generators,
            conjugator: ReducedWord::identity(),
            shape: CentralizerShape::Restricted { parabolic: w, inner: Box::new(inner) },
        })
    }

    /// `C_J(g)` for `g ∈ ⟨J⟩`.
    pub(crate) fn cent_full_in(&self, ambient: VertexSet, g: &ReducedWord) -> Result<CentralizerData> {
        let graph = self.graph;
        if g.is_empty() {
            return self.cent_in(ambient, ambient, g);
        }
        let cf = graph.cyclic_reduce(g);
        let t = cf.core.support().first().expect("nontrivial core");
        let split = Split::new(graph, ambient, t);
        let (c, g1) = hnn_cyclic_reduce(&split, &split.decompose(&cf.core));
        let outer = graph.mul(&cf.conjugator, &split.to_word(&c));
        let g1w = split.to_word(&g1);
        let n = g1.len();
        let (inner_gens, shape) = if split.in_assoc_word(&g1.syllables[n - 1].1) {
            // g₁ = tᵉ x with x commuting with t
            let x = &g1.syllables[0].1;
            let assoc = self.cent_in(split.a, split.h, x)?;
            let mut gens = vec![graph.generator(t)];
            gens.extend(assoc.generators.iter().cloned());
            (gens, CentralizerShape::Product { stable: t, assoc: Box::new(assoc) })
        } else {
            let assoc = self.cent_in(ambient, split.h, &g1w)?;
            let mut omega = Vec::new();
            for k in 1..n {
                let p = split.to_word(&prefix(&split, &g1, k));
                let rotated = graph.conj(&graph.inv(&p), &g1w);
                if let ConjCertificate::Conjugator(h) = self.conj_sub_in(ambient, split.h, &rotated, &g1w)? {
                    let value = graph.mul(&h, &graph.inv(&p));
                    omega.push(OmegaEntry { prefix: p, h, value });
                }
            }
            let mut gens = assoc.generators.clone();
            gens.push(g1w.clone());
            gens.extend(omega.iter().map(|o| o.value.clone()));
            (gens, CentralizerShape::Triple { assoc: Box::new(assoc), core: g1w.clone(), omega })
        };
        let generators: Vec<ReducedWord> = inner_gens.iter().map(|x| graph.conj(&outer, x)).collect();
        if let Some(bad) = generators.iter().find(|x| !graph.commute(x, g)) {
            return Err(Error::Invalid(format!("centralizer generator {} does not commute", bad.display(graph))));
        }
        Ok(CentralizerData { element: g.clone(), within: ambient, generators, conjugator: outer, shape })
    }
}

impl Split<'_> {
    fn in_assoc_word(&self, x: &ReducedWord) -> bool {
        x.support().is_subset(self.h)
    }
}
