use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hnn::{conj, equal, extend_hom, from_base, hnn_retractions, BaseRetraction, HnnElement, HnnGroup};
use crate::quotient::FiniteHom;
use crate::vset::VertexSet;
use crate::word::ReducedWord;

/// Which part of the HNN structure of `P` keeps the images apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftReason {
    /// Exactly one image lies in the base `ψ(A)`.
    NotInBase,
    SyllablePattern,
    /// The retraction killing `s` already separates them.
    BaseProduct,
    /// Patterns and base products agree; the interior cosets do not line up.
    CosetChain,
}

/// Non-conjugacy of `ψ̃(g)` and `ψ̃(f)` under `ψ̃(⟨B⟩)` inside
/// `P = HNN(ψ(A), ψ(H))`, decided by running through the finite group `ψ(⟨B⟩)`.
#[derive(Clone, Debug)]
pub struct LiftRefusal {
    pub reason: LiftReason,
    pub group: HnnGroup,
    pub g: HnnElement<usize>,
    pub f: HnnElement<usize>,
}

/// Pushes `g` and `f` through `ψ̃: G → P` extending `ψ` on `A = ⟨V ∖ t⟩` and
/// certifies `f ∉ g^B` there. Fails with a precondition error when `ψ` is too
/// coarse, i.e. the images are conjugate by `ψ̃(⟨B⟩)`.
pub fn lift_via_hnn(
    graph: &Graph,
    t: usize,
    psi: &FiniteHom,
    g: &ReducedWord,
    f: &ReducedWord,
    sub: VertexSet,
    cap: usize,
) -> Result<LiftRefusal> {
    if sub.contains(t) {
        return Err(Error::Precondition("the conjugating subgroup must lie in the base".into()));
    }
    let ext = extend_hom(graph, t, psi, cap)?;
    let p = ext.group();
    let q = p.base();
    let gi = ext.eval(g.letters());
    let fi = ext.eval(f.letters());
    let bbar = q.subgroup(&sub.iter().map(|v| ext.base_image(v)).collect::<Vec<_>>());
    let conjugate_by = |x: &HnnElement<usize>, y: &HnnElement<usize>| bbar.iter().any(|&b| equal(p, &conj(p, &from_base::<HnnGroup>(b), x), y));
    if conjugate_by(&gi, &fi) {
        return Err(Error::Precondition(
            "the images are conjugate in the HNN quotient; a finer base quotient is needed".into(),
        ));
    }
    let reason = if gi.is_base() != fi.is_base() {
        LiftReason::NotInBase
    } else if gi.signature() != fi.signature() {
        LiftReason::SyllablePattern
    } else {
        let kill = hnn_retractions(p, BaseRetraction::identity(q))?;
        if conjugate_by(&kill.kill(p, &gi), &kill.kill(p, &fi)) {
            LiftReason::CosetChain
        } else {
            LiftReason::BaseProduct
        }
    };
    Ok(LiftRefusal { reason, group: p.clone(), g: gi, f: fi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::Perm;

    fn path() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn swap_a(g: &Graph) -> FiniteHom {
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        FiniteHom::make_hom(g, g.parse_set("a b").unwrap(), 3, &[(0, a), (1, Perm::identity(3))]).unwrap()
    }

    #[test]
    fn patterns_and_base_products() {
        let g = path();
        let c = g.vertex("c").unwrap();
        let psi = swap_a(&g);
        let r = lift_via_hnn(&g, c, &psi, &g.element("a c").unwrap(), &g.element("c c a").unwrap(), VertexSet::EMPTY, 100).unwrap();
        assert_eq!(r.reason, LiftReason::SyllablePattern);
        let r = lift_via_hnn(&g, c, &psi, &g.element("c").unwrap(), &g.element("a").unwrap(), VertexSet::EMPTY, 100).unwrap();
        assert_eq!(r.reason, LiftReason::NotInBase);
        let r = lift_via_hnn(&g, c, &psi, &g.element("a c").unwrap(), &g.element("c").unwrap(), VertexSet::EMPTY, 100).unwrap();
        assert_eq!(r.reason, LiftReason::BaseProduct);
    }

    #[test]
    fn coarse_quotient_is_rejected() {
        let g = path();
        let c = g.vertex("c").unwrap();
        let psi = FiniteHom::trivial(&g, g.parse_set("a b").unwrap());
        let err = lift_via_hnn(&g, c, &psi, &g.element("a c").unwrap(), &g.element("c").unwrap(), VertexSet::EMPTY, 100);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
