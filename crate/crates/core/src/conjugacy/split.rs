use crate::graph::Graph;
use crate::hnn::{britton_reduce, HnnBase, HnnElement, Piece};
use crate::vset::VertexSet;
use crate::word::{Letter, ReducedWord};

/// `⟨J⟩ = ⟨A, t ∥ tht⁻¹ = h, h ∈ ⟨H⟩⟩` with `A = J ∖ t` and `H` the link of `t` in `A`.
pub(crate) struct Split<'g> {
    pub graph: &'g Graph,
    pub t: usize,
    pub a: VertexSet,
    pub h: VertexSet,
}

impl HnnBase for Split<'_> {
    type Elem = ReducedWord;

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity()
    }

    fn mul(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
        self.graph.mul(a, b)
    }

    fn inv(&self, a: &ReducedWord) -> ReducedWord {
        self.graph.inv(a)
    }

    fn in_assoc(&self, a: &ReducedWord) -> bool {
        a.support().is_subset(self.h)
    }
}

impl<'g> Split<'g> {
    pub fn new(graph: &'g Graph, ambient: VertexSet, t: usize) -> Split<'g> {
        let a = ambient.without(t);
        Split { graph, t, a, h: graph.link_in(t, a) }
    }

    /// Reduced product form of an element of `⟨J⟩`.
    pub fn decompose(&self, g: &ReducedWord) -> HnnElement<ReducedWord> {
        let mut raw = Vec::new();
        let mut acc: Vec<Letter> = Vec::new();
        for &l in g.letters() {
            if l.v() == self.t {
                raw.push(Piece::Base(self.graph.reduce(&acc)));
                acc.clear();
                raw.push(Piece::Stable(l.sign()));
            } else {
                acc.push(l);
            }
        }
        raw.push(Piece::Base(self.graph.reduce(&acc)));
        britton_reduce(self, &raw)
    }

    pub fn to_word(&self, e: &HnnElement<ReducedWord>) -> ReducedWord {
        let mut letters: Vec<Letter> = e.head.letters().to_vec();
        for (k, x) in &e.syllables {
            let l = Letter::new(self.t, *k < 0);
            letters.extend(std::iter::repeat(l).take(k.unsigned_abs() as usize));
            letters.extend_from_slice(x.letters());
        }
        self.graph.reduce(&letters)
    }

    /// `x₀ x₁ ⋯ xₙ`, the image under the retraction killing `t`.
    pub fn base_product(&self, e: &HnnElement<ReducedWord>) -> ReducedWord {
        self.graph.product(e.base_entries().iter())
    }

    /// Partial products `x₀⋯xᵢ` for `i = 0..n-1`.
    pub fn partial_products(&self, e: &HnnElement<ReducedWord>) -> Vec<ReducedWord> {
        let entries = e.base_entries();
        let mut acc = ReducedWord::identity();
        let mut out = Vec::with_capacity(e.len());
        for x in &entries[..e.len()] {
            acc = self.graph.mul(&acc, x);
            out.push(acc.clone());
        }
        out
    }
}
