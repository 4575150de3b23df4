use super::split::Split;
use super::{ConjCertificate, Refusal, Solver};
use crate::error::{Error, Result};
use crate::special::{fold_cosets_in, Coset};
use crate::vset::VertexSet;
use crate::word::ReducedWord;

impl Solver<'_> {
    /// Decides `f ∈ g^⟨B⟩` for `g, f ∈ ⟨J⟩` and `B ⊆ J`.
    ///
    /// Split `⟨J⟩` over a vertex `t ∉ B`. A conjugator `b ∈ ⟨B⟩` lies in the
    /// base, so `bgb⁻¹ = f` exactly when the two reduced forms share a
    /// signature, `b X b⁻¹ = Y` for the base products, and `b` lies in every
    /// coset `Yᵢ⟨H⟩Xᵢ⁻¹` of the partial products. The cosets and `⟨B⟩` fold
    /// to `kPk⁻¹ · z`, which turns the last two conditions into conjugacy by
    /// `⟨P⟩` inside the base, one rank down.
    pub(crate) fn conj_sub_in(
        &self,
        ambient: VertexSet,
        b: VertexSet,
        g: &ReducedWord,
        f: &ReducedWord,
    ) -> Result<ConjCertificate> {
        use ConjCertificate::*;
        let graph = self.graph;
        if g == f {
            return Ok(Conjugator(ReducedWord::identity()));
        }
        if b == ambient {
            return if self.tower { self.conjugate_tower_in(ambient, g, f) } else { self.conjugate_g(g, f) };
        }
        let outside = ambient.difference(b);
        if graph.retract(outside, g) != graph.retract(outside, f) {
            return Ok(NotConjugate(Refusal::Retraction));
        }
        if !self.tower {
            if let NotConjugate(r) = self.conjugate_g(g, f)? {
                return Ok(NotConjugate(r));
            }
        }
        let relevant = b.union(g.support()).union(f.support());
        if !relevant.is_subset(ambient) {
            return Err(Error::Precondition("elements must lie in the ambient special subgroup".into()));
        }
        if relevant != ambient {
            return self.conj_sub_in(relevant, b, g, f);
        }

        let t = outside.first().expect("B is a proper subset");
        let split = Split::new(graph, ambient, t);
        let ge = split.decompose(g);
        let fe = split.decompose(f);
        if ge.is_base() != fe.is_base() {
            return Ok(NotConjugate(Refusal::NotInBase));
        }
        if ge.is_base() {
            return self.conj_sub_in(split.a, b, g, f);
        }
        if ge.signature() != fe.signature() {
            return Ok(NotConjugate(Refusal::SyllablePattern));
        }
        let x = split.base_product(&ge);
        let y = split.base_product(&fe);
        if !self.conj_sub_in(split.a, b, &x, &y)?.is_conjugate() {
            return Ok(NotConjugate(Refusal::BaseProduct));
        }
        let mut cosets: Vec<Coset> = split
            .partial_products(&fe)
            .into_iter()
            .zip(split.partial_products(&ge))
            .map(|(yi, xi)| (yi, split.h, graph.inv(&xi)))
            .collect();
        cosets.push((ReducedWord::identity(), b, ReducedWord::identity()));
        let Some((w, z)) = fold_cosets_in(self, split.a, &cosets)? else {
            return Ok(NotConjugate(Refusal::CosetChainEmpty));
        };
        // b = k p k⁻¹ z with p ∈ ⟨P⟩ and p (k⁻¹ z X z⁻¹ k) p⁻¹ = k⁻¹ Y k
        let k = &w.conjugator;
        let kinv = graph.inv(k);
        let zk = graph.mul(&graph.inv(&z), k);
        let p = match self.conj_sub_in(split.a, w.base, &graph.conj(&graph.inv(&zk), &x), &graph.conj(&kinv, &y))? {
            Conjugator(p) => p,
            NotConjugate(_) => return Ok(NotConjugate(Refusal::CentralizerCoset)),
        };
        let c = graph.mul(&graph.conj(k, &p), &z);
        if !c.support().is_subset(b) || graph.conj(&c, g) != *f {
            return Err(Error::Invalid("subgroup conjugator failed to verify".into()));
        }
        Ok(Conjugator(c))
    }
}
