//! Conjugacy and centralizers, in the whole group and under special subgroups.
//!
//! Full-group conjugacy compares cyclic cores. Conjugacy by a special
//! subgroup `⟨B⟩` and centralizers in `⟨B⟩` split the ambient group as a
//! special HNN-extension over a vertex outside `B` and recurse into the base,
//! so every recursive call works in an ambient of smaller rank.

mod centralizer;
mod coset;
mod split;
mod sub;

pub use centralizer::{CentralizerData, CentralizerShape, OmegaEntry};

use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hnn::{cyclic_reduce as hnn_cyclic_reduce, rotation};
use crate::quotient::FiniteHom;
use crate::vset::VertexSet;
use crate::word::ReducedWord;
use split::Split;

/// Why two elements are not conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    Abelianization,
    CoreSupport,
    CoreLength,
    /// The cyclic-permutation orbit of one core misses the other.
    CyclicOrbit,
    /// The retraction killing the conjugating subgroup separates them.
    Retraction,
    /// Exactly one of the two lies in the base of the splitting.
    NotInBase,
    SyllablePattern,
    BaseProduct,
    CosetChainEmpty,
    CentralizerCoset,
    /// Conjugate in `G`, but no conjugator maps to zero in the abelian quotient.
    CentralizerImage,
    FiniteQuotient(FiniteHom),
}

impl Refusal {
    pub fn tag(&self) -> &'static str {
        match self {
            Refusal::Abelianization => "abelianization",
            Refusal::CoreSupport => "core_support",
            Refusal::CoreLength => "core_length",
            Refusal::CyclicOrbit => "cyclic_orbit",
            Refusal::Retraction => "retraction",
            Refusal::NotInBase => "not_in_base",
            Refusal::SyllablePattern => "syllable_pattern",
            Refusal::BaseProduct => "base_product",
            Refusal::CosetChainEmpty => "coset_chain_empty",
            Refusal::CentralizerCoset => "centralizer_coset",
            Refusal::CentralizerImage => "centralizer_image",
            Refusal::FiniteQuotient(_) => "finite_quotient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjCertificate {
    /// `c` with `c · g · c⁻¹ = f`.
    Conjugator(ReducedWord),
    NotConjugate(Refusal),
}

impl ConjCertificate {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjCertificate::Conjugator(_))
    }

    pub fn conjugator(&self) -> Option<&ReducedWord> {
        match self {
            ConjCertificate::Conjugator(c) => Some(c),
            ConjCertificate::NotConjugate(_) => None,
        }
    }

    pub fn to_json(&self, graph: &Graph) -> Value {
        match self {
            ConjCertificate::Conjugator(c) => json!({"type": "conjugator", "value": c.display(graph).to_string()}),
            ConjCertificate::NotConjugate(Refusal::FiniteQuotient(hom)) => {
                let mut v = hom.to_json(graph);
                v["type"] = json!("finite_quotient");
                v["claim"] = json!("nonconjugate");
                v
            }
            ConjCertificate::NotConjugate(r) => json!({"type": "refusal", "reason": r.tag()}),
        }
    }
}

/// Entry point for the decision procedures over one graph.
pub struct Solver<'g> {
    graph: &'g Graph,
    budget: Budget,
    tower: bool,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph) -> Solver<'g> {
        Solver::with_budget(graph, Budget::default())
    }

    pub fn with_budget(graph: &'g Graph, budget: Budget) -> Solver<'g> {
        Solver { graph, budget, tower: false }
    }

    /// Decide full-group conjugacy inside subgroup questions by the HNN
    /// criterion instead of cyclic cores. Used to cross-check the two.
    pub fn tower_route(mut self) -> Solver<'g> {
        self.tower = true;
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Conjugacy in `G` through cyclic cores.
    pub fn conjugate_g(&self, g: &ReducedWord, f: &ReducedWord) -> Result<ConjCertificate> {
        use ConjCertificate::*;
        let graph = self.graph;
        if g == f {
            return Ok(Conjugator(ReducedWord::identity()));
        }
        if graph.abelianize(g) != graph.abelianize(f) {
            return Ok(NotConjugate(Refusal::Abelianization));
        }
        let cg = graph.cyclic_reduce(g);
        let cf = graph.cyclic_reduce(f);
        if cg.core.support() != cf.core.support() {
            return Ok(NotConjugate(Refusal::CoreSupport));
        }
        if cg.core.len() != cf.core.len() {
            return Ok(NotConjugate(Refusal::CoreLength));
        }
        match self.orbit_search(&cg.core, &cf.core)? {
            // f = z_f c₀ z_g⁻¹ · g · (z_f c₀ z_g⁻¹)⁻¹
            Some(c0) => Ok(Conjugator(graph.product([&cf.conjugator, &c0, &graph.inv(&cg.conjugator)]))),
            None => Ok(NotConjugate(Refusal::CyclicOrbit)),
        }
    }

    /// Breadth-first search through cyclic permutations of a cyclically
    /// reduced element, moving one first letter to the back or one last
    /// letter to the front at a time.
    fn orbit_search(&self, from: &ReducedWord, to: &ReducedWord) -> Result<Option<ReducedWord>> {
        let graph = self.graph;
        let mut seen: HashMap<ReducedWord, ReducedWord> = HashMap::from([(from.clone(), ReducedWord::identity())]);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(node) = queue.pop_front() {
            let c = seen[&node].clone();
            if node == *to {
                return Ok(Some(c));
            }
            let moves = graph
                .first_letters(&node)
                .into_iter()
                .map(|a| a.inv())
                .chain(graph.last_letters(&node));
            for m in moves {
                let m = graph.reduce(&[m]);
                let next = graph.conj(&m, &node);
                if !seen.contains_key(&next) {
                    if seen.len() >= self.budget.node_cap {
                        return Err(Error::Budget(format!("cyclic orbit exceeds {} elements", self.budget.node_cap)));
                    }
                    seen.insert(next.clone(), graph.mul(&m, &c));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Conjugacy in `G` through the HNN splitting over a vertex of the core
    /// support and Collins's criterion, with the conjugacy under the
    /// associated subgroup decided by [`Solver::conjugate_sub`].
    pub fn conjugate_tower(&self, g: &ReducedWord, f: &ReducedWord) -> Result<ConjCertificate> {
        Solver { graph: self.graph, budget: self.budget.clone(), tower: true }.conjugate_tower_in(self.graph.all(), g, f)
    }

    pub(crate) fn conjugate_tower_in(&self, ambient: VertexSet, g: &ReducedWord, f: &ReducedWord) -> Result<ConjCertificate> {
        use ConjCertificate::*;
        let graph = self.graph;
        if g == f {
            return Ok(Conjugator(ReducedWord::identity()));
        }
        if g.is_empty() || f.is_empty() {
            return Ok(NotConjugate(Refusal::NotInBase));
        }
        let cg = graph.cyclic_reduce(g);
        let cf = graph.cyclic_reduce(f);
        let t = cg.core.support().first().expect("nontrivial core");
        let split = Split::new(graph, ambient, t);
        let (c1, g1) = hnn_cyclic_reduce(&split, &split.decompose(&cg.core));
        let (c2, f1) = hnn_cyclic_reduce(&split, &split.decompose(&cf.core));
        // g1 has a stable letter, so g is not conjugate into the base
        if f1.is_base() {
            return Ok(NotConjugate(Refusal::NotInBase));
        }
        if f1.len() != g1.len() {
            return Ok(NotConjugate(Refusal::SyllablePattern));
        }
        let gw = split.to_word(&g1);
        for k in 0..f1.len() {
            let (fr, q) = rotation(&split, &f1, k);
            if fr.signature() != g1.signature() {
                continue;
            }
            if let Conjugator(h) = self.conj_sub_in(ambient, split.h, &gw, &split.to_word(&fr))? {
                // f = z_f c₂ q h c₁⁻¹ z_g⁻¹ · g · (…)⁻¹
                let c = graph.product([
                    &cf.conjugator,
                    &split.to_word(&c2),
                    &split.to_word(&q),
                    &h,
                    &graph.inv(&split.to_word(&c1)),
                    &graph.inv(&cg.conjugator),
                ]);
                if graph.conj(&c, g) != *f {
                    return Err(Error::Invalid("tower conjugator failed to verify".into()));
                }
                return Ok(Conjugator(c));
            }
        }
        Ok(NotConjugate(Refusal::CyclicOrbit))
    }

    /// Decides `f ∈ g^B`, with a conjugator `b ∈ ⟨B⟩` when it holds.
    pub fn conjugate_sub(&self, b: VertexSet, g: &ReducedWord, f: &ReducedWord) -> Result<ConjCertificate> {
        self.conj_sub_in(self.graph.all(), b, g, f)
    }

    pub fn centralizer(&self, g: &ReducedWord) -> Result<CentralizerData> {
        self.cent_full_in(self.graph.all(), g)
    }

    /// `C_B(g)`.
    pub fn centralizer_in_special(&self, b: VertexSet, g: &ReducedWord) -> Result<CentralizerData> {
        let ambient = b.union(g.support());
        self.cent_in(ambient, b, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(g: &Graph, c: &ConjCertificate) -> String {
        c.conjugator().map(|w| w.display(g).to_string()).unwrap_or_else(|| "no".into())
    }

    #[test]
    fn full_group_examples() {
        let f = Graph::new::<&str>(&["x", "y"], &[]).unwrap();
        let s = Solver::new(&f);
        let c = s.conjugate_g(&f.element("x y").unwrap(), &f.element("y x").unwrap()).unwrap();
        assert_eq!(show(&f, &c), "x^-1");
        let c = s.conjugate_g(&f.element("x y").unwrap(), &f.element("x y^-1").unwrap()).unwrap();
        assert_eq!(c, ConjCertificate::NotConjugate(Refusal::Abelianization));
        let p = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let s = Solver::new(&p);
        let c = s.conjugate_g(&p.element("a c").unwrap(), &p.element("c a").unwrap()).unwrap();
        assert_eq!(show(&p, &c), "a^-1");
    }

    #[test]
    fn tower_agrees_on_examples() {
        let p = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let s = Solver::new(&p);
        for (g, f) in [("a c", "c a"), ("a c", "a c^-1"), ("a b c", "b c a"), ("a c a^-1", "c"), ("a c", "c b a b^-1")] {
            let g = p.element(g).unwrap();
            let f = p.element(f).unwrap();
            let direct = s.conjugate_g(&g, &f).unwrap();
            let tower = s.conjugate_tower(&g, &f).unwrap();
            assert_eq!(direct.is_conjugate(), tower.is_conjugate());
            if let Some(c) = tower.conjugator() {
                assert_eq!(p.conj(c, &g), f);
            }
        }
    }

    #[test]
    fn subgroup_examples() {
        let p = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let s = Solver::new(&p);
        let b = p.parse_set("b").unwrap();
        let g = p.element("a c").unwrap();
        let f = p.element("b a c b^-1").unwrap();
        // b commutes with both letters, so f is g itself
        assert_eq!(f, g);
        let c = s.conjugate_sub(b, &g, &f).unwrap();
        assert_eq!(show(&p, &c), "");
        let a = p.parse_set("a").unwrap();
        let f = p.element("a c b a^-1").unwrap();
        let c = s.conjugate_sub(a, &p.element("c b").unwrap(), &f).unwrap();
        assert_eq!(show(&p, &c), "a");
        let c = s.conjugate_sub(b, &g, &p.element("c a").unwrap()).unwrap();
        assert!(!c.is_conjugate());
    }

    #[test]
    fn certificate_json() {
        let f = Graph::new::<&str>(&["x", "y"], &[]).unwrap();
        let c = ConjCertificate::Conjugator(f.element("x^-1").unwrap());
        assert_eq!(c.to_json(&f), json!({"type": "conjugator", "value": "x^-1"}));
    }
}
