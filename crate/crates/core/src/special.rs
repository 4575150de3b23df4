//! Special subgroups `⟨S⟩`, their conjugates, intersections and double cosets.

use std::collections::HashMap;
use std::fmt;

use crate::conjugacy::{ConjCertificate, Solver};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;
use crate::word::{Letter, ReducedWord};

/// The subgroup `h⟨P⟩h⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parabolic {
    pub conjugator: ReducedWord,
    pub base: VertexSet,
}

impl Parabolic {
    pub fn new(conjugator: ReducedWord, base: VertexSet) -> Parabolic {
        Parabolic { conjugator, base }
    }

    pub fn special(base: VertexSet) -> Parabolic {
        Parabolic { conjugator: ReducedWord::identity(), base }
    }

    pub fn generators(&self, graph: &Graph) -> Vec<ReducedWord> {
        self.base.iter().map(|v| graph.conj(&self.conjugator, &graph.generator(v))).collect()
    }

    pub fn contains(&self, graph: &Graph, g: &ReducedWord) -> bool {
        parabolic_member(graph, g, self)
    }

    /// `other ⊆ self`.
    pub fn contains_parabolic(&self, graph: &Graph, other: &Parabolic) -> bool {
        other.generators(graph).iter().all(|g| self.contains(graph, g))
    }

    pub fn same_as(&self, graph: &Graph, other: &Parabolic) -> bool {
        self.contains_parabolic(graph, other) && other.contains_parabolic(graph, self)
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate(&self, graph: &Graph, c: &ReducedWord) -> Parabolic {
        Parabolic::new(graph.mul(c, &self.conjugator), self.base).normalized(graph)
    }

    /// Strips trailing conjugator letters that normalize `⟨P⟩`.
    pub fn normalized(&self, graph: &Graph) -> Parabolic {
        let keep = self.base.union(graph.star_set(self.base));
        let mut h = self.conjugator.clone();
        while let Some(b) = graph.last_letters(&h).into_iter().find(|l| keep.contains(l.v())) {
            h = graph.mul(&h, &graph.reduce(&[b.inv()]));
        }
        Parabolic::new(h, self.base)
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> impl fmt::Display + 'a {
        ParabolicDisplay { graph, p: self }
    }
}

struct ParabolicDisplay<'a> {
    graph: &'a Graph,
    p: &'a Parabolic,
}

impl fmt::Display for ParabolicDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.graph.format_set(self.p.base);
        if self.p.conjugator.is_empty() {
            write!(f, "<{base}>")
        } else {
            let h = self.p.conjugator.display(self.graph);
            write!(f, "({h}) <{base}> ({h})^-1")
        }
    }
}

pub fn intersect_special(s: VertexSet, t: VertexSet) -> VertexSet {
    s.intersection(t)
}

/// `g ∈ h⟨P⟩h⁻¹`, decided by `supp(h⁻¹gh) ⊆ P`.
pub fn parabolic_member(graph: &Graph, g: &ReducedWord, p: &Parabolic) -> bool {
    let inv = graph.inv(&p.conjugator);
    graph.product([&inv, g, &p.conjugator]).support().is_subset(p.base)
}

/// `p ∩ q` as a single parabolic subgroup.
pub fn intersect_parabolics(graph: &Graph, p: &Parabolic, q: &Parabolic) -> Result<Parabolic> {
    // p ∩ q = h₂ (g⟨S⟩g⁻¹ ∩ ⟨T⟩) h₂⁻¹ with g = h₂⁻¹h₁
    let g = graph.mul(&graph.inv(&q.conjugator), &p.conjugator);
    let mut memo = HashMap::new();
    let (k, base) = inter(graph, &g, p.base, q.base, &mut memo)?;
    Ok(Parabolic::new(graph.mul(&q.conjugator, &k), base).normalized(graph))
}

type Memo = HashMap<(ReducedWord, VertexSet), (ReducedWord, VertexSet)>;

/// `(k, P)` with `g⟨S⟩g⁻¹ ∩ ⟨T⟩ = k⟨P⟩k⁻¹`, `k ∈ ⟨T⟩`, `P ⊆ T`.
fn inter(graph: &Graph, g: &ReducedWord, s: VertexSet, t: VertexSet, memo: &mut Memo) -> Result<(ReducedWord, VertexSet)> {
    if s.is_empty() {
        return Ok((ReducedWord::identity(), VertexSet::EMPTY));
    }
    if g.is_empty() {
        return Ok((ReducedWord::identity(), s.intersection(t)));
    }
    if let Some(hit) = memo.get(&(g.clone(), s)) {
        return Ok(hit.clone());
    }
    let out = if let Some(a) = graph.first_letters(g).into_iter().find(|l| t.contains(l.v())) {
        let a = graph.reduce(&[a]);
        let (k, base) = inter(graph, &graph.mul(&graph.inv(&a), g), s, t, memo)?;
        (graph.mul(&a, &k), base)
    } else if let Some(b) = strip_last(graph, g, s.union(graph.star_set(s))) {
        inter(graph, &graph.mul(g, &graph.reduce(&[b.inv()])), s, t, memo)?
    } else {
        // no stripping possible: the intersection is covered by the ones for S∖{s}
        let mut cands = Vec::new();
        for v in s.iter() {
            let (k, base) = inter(graph, g, s.without(v), t, memo)?;
            cands.push(Parabolic::new(k, base));
        }
        let best = cands
            .iter()
            .find(|c| cands.iter().all(|o| c.contains_parabolic(graph, o)))
            .ok_or_else(|| Error::Invalid("no maximal candidate among parabolic intersections".into()))?;
        (best.conjugator.clone(), best.base)
    };
    memo.insert((g.clone(), s), out.clone());
    Ok(out)
}

fn strip_last(graph: &Graph, g: &ReducedWord, allowed: VertexSet) -> Option<Letter> {
    graph.last_letters(g).into_iter().find(|l| allowed.contains(l.v()))
}

/// `α` and `γ` of the double coset `⟨A⟩ x ⟨B⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCReduction {
    pub alpha: ReducedWord,
    pub gamma: ReducedWord,
    pub meet: VertexSet,
}

/// `γ = ρ_A(ρ_B(x)x⁻¹)` and `α = γ · x · ρ_B(x⁻¹)`; the element `α` lies in `AxB`
/// and is killed by both retractions.
pub fn dc_reduction(graph: &Graph, a: VertexSet, b: VertexSet, x: &ReducedWord) -> DCReduction {
    let rbx = graph.retract(b, x);
    let gamma = graph.retract(a, &graph.mul(&rbx, &graph.inv(x)));
    let alpha = graph.product([&gamma, x, &graph.inv(&rbx)]);
    DCReduction { alpha, gamma, meet: a.intersection(b) }
}

/// Some `(a, b)` with `y = a x b`, `a ∈ ⟨A⟩`, `b ∈ ⟨B⟩`, or `None` when `y ∉ AxB`.
pub fn dc_member(
    solver: &Solver,
    a: VertexSet,
    x: &ReducedWord,
    b: VertexSet,
    y: &ReducedWord,
) -> Result<Option<(ReducedWord, ReducedWord)>> {
    dc_member_in(solver, solver.graph().all(), a, x, b, y)
}

pub(crate) fn dc_member_in(
    solver: &Solver,
    ambient: VertexSet,
    a: VertexSet,
    x: &ReducedWord,
    b: VertexSet,
    y: &ReducedWord,
) -> Result<Option<(ReducedWord, ReducedWord)>> {
    let graph = solver.graph();
    if x == y {
        return Ok(Some((ReducedWord::identity(), ReducedWord::identity())));
    }
    let rx = dc_reduction(graph, a, b, x);
    let ry = dc_reduction(graph, a, b, y);
    let c = match solver.conj_sub_in(ambient, rx.meet, &rx.alpha, &ry.alpha)? {
        ConjCertificate::Conjugator(c) => c,
        ConjCertificate::NotConjugate(_) => return Ok(None),
    };
    // β = cαc⁻¹ unwinds to y = (γ_y⁻¹ c γ_x) · x · (ρ_B(x)⁻¹ c⁻¹ ρ_B(y))
    let left = graph.product([&graph.inv(&ry.gamma), &c, &rx.gamma]);
    let right = graph.product([&graph.inv(&graph.retract(b, x)), &graph.inv(&c), &graph.retract(b, y)]);
    if graph.product([&left, x, &right]) != *y {
        return Err(Error::Invalid("double coset witness failed to verify".into()));
    }
    Ok(Some((left, right)))
}

/// `A ∩ xBx⁻¹`, computed as `γ⁻¹ C_{A∩B}(α) γ`.
pub fn conj_special_intersection(solver: &Solver, a: VertexSet, x: &ReducedWord, b: VertexSet) -> Result<Parabolic> {
    let graph = solver.graph();
    let red = dc_reduction(graph, a, b, x);
    let cent = solver.centralizer_in_special(red.meet, &red.alpha)?;
    let ginv = graph.inv(&red.gamma);
    let gens: Vec<ReducedWord> = cent.generators.iter().map(|c| graph.conj(&ginv, c)).collect();
    let xinv = graph.inv(x);
    let member = |g: &ReducedWord| g.support().is_subset(a) && graph.conj(&xinv, g).support().is_subset(b);
    parabolic_closure(graph, &gens, member, solver.budget().seed)
}

/// The parabolic subgroup generated by `gens`, which must be known to be
/// parabolic. Candidates are parabolic closures of products of the
/// generators; one is accepted once it contains every generator and each of
/// its own generators passes `member`.
pub(crate) fn parabolic_closure(
    graph: &Graph,
    gens: &[ReducedWord],
    member: impl Fn(&ReducedWord) -> bool,
    seed: u64,
) -> Result<Parabolic> {
    use rand::{Rng, SeedableRng};
    let gens: Vec<&ReducedWord> = gens.iter().filter(|g| !g.is_empty()).collect();
    if gens.is_empty() {
        return Ok(Parabolic::special(VertexSet::EMPTY));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..64u32 {
        let mut prod = ReducedWord::identity();
        for (i, g) in gens.iter().enumerate() {
            let e = if attempt == 0 { 1 } else { rng.gen_range(1..=3) * (i as i64 + 1) };
            prod = graph.mul(&prod, &graph.pow(g, e));
        }
        let cf = graph.cyclic_reduce(&prod);
        let cand = Parabolic::new(cf.conjugator, cf.core.support()).normalized(graph);
        if gens.iter().all(|g| cand.contains(graph, g)) && cand.generators(graph).iter().all(&member) {
            return Ok(cand);
        }
    }
    Err(Error::Budget("could not identify the parabolic subgroup spanned by the generators".into()))
}

/// One coset `u⟨H⟩v`.
pub type Coset = (ReducedWord, VertexSet, ReducedWord);

/// `⋂ uᵢ⟨Hᵢ⟩vᵢ` as `W·z` for a parabolic `W`, or `None` when it is empty.
pub fn fold_cosets(solver: &Solver, cosets: &[Coset]) -> Result<Option<(Parabolic, ReducedWord)>> {
    fold_cosets_in(solver, solver.graph().all(), cosets)
}

pub(crate) fn fold_cosets_in(
    solver: &Solver,
    ambient: VertexSet,
    cosets: &[Coset],
) -> Result<Option<(Parabolic, ReducedWord)>> {
    let graph = solver.graph();
    if cosets.is_empty() {
        return Err(Error::Invalid("no cosets to intersect".into()));
    }
    // u⟨H⟩v = (uv) · v⁻¹⟨H⟩v, a left coset of a parabolic
    let left = |(u, h, v): &Coset| (graph.mul(u, v), Parabolic::new(graph.inv(v), *h).normalized(graph));
    let (mut c1, mut q1) = left(&cosets[0]);
    for coset in &cosets[1..] {
        let (c2, q2) = left(coset);
        let x = graph.mul(&graph.inv(&q1.conjugator), &q2.conjugator);
        let y = graph.product([&graph.inv(&q1.conjugator), &graph.inv(&c1), &c2, &q2.conjugator]);
        let Some((a, _)) = dc_member_in(solver, ambient, q1.base, &x, q2.base, &y)? else {
            return Ok(None);
        };
        let e = graph.product([&c1, &graph.conj(&q1.conjugator, &a)]);
        q1 = intersect_parabolics(graph, &q1, &q2)?;
        c1 = e;
    }
    Ok(Some((q1.conjugate(graph, &c1), c1)))
}
