use std::collections::{HashSet, VecDeque};

use super::{CentralizerData, Solver};
use crate::error::Result;
use crate::graph::Graph;
use crate::quotient::{closure, race, Decision, FiniteHom, HomSearch, Perm};
use crate::special::{parabolic_member, Parabolic};
use crate::word::ReducedWord;

/// Distinct elements of the subgroup generated by `gens`, in order of word
/// length over the generators.
pub(crate) struct Ball<'g> {
    graph: &'g Graph,
    gens: Vec<ReducedWord>,
    seen: HashSet<ReducedWord>,
    queue: VecDeque<ReducedWord>,
}

impl<'g> Ball<'g> {
    pub fn new(graph: &'g Graph, gens: &[ReducedWord]) -> Ball<'g> {
        let mut all: Vec<ReducedWord> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        all.extend(gens.iter().filter(|g| !g.is_empty()).map(|g| graph.inv(g)));
        let id = ReducedWord::identity();
        Ball { graph, gens: all, seen: HashSet::from([id.clone()]), queue: VecDeque::from([id]) }
    }
}

impl Iterator for Ball<'_> {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<ReducedWord> {
        let x = self.queue.pop_front()?;
        for g in &self.gens {
            let y = self.graph.mul(&x, g);
            if self.seen.insert(y.clone()) {
                self.queue.push_back(y);
            }
        }
        Some(x)
    }
}

impl Solver<'_> {
    /// Searches for `z = c · d` with `c ∈ C` and `d ∈ D`, against a finite
    /// quotient in which the image of `z` misses `φ(C)φ(D)`.
    pub fn centr_coset_member(
        &self,
        c: &CentralizerData,
        d: &Parabolic,
        z: &ReducedWord,
    ) -> Result<Decision<(ReducedWord, ReducedWord), FiniteHom>> {
        let graph = self.graph;
        let dgens = d.generators(graph);
        let domain = graph.all();
        let cap = self.budget.order_cap;
        let mut cs = Ball::new(graph, &c.generators);
        let mut ds = Ball::new(graph, &dgens);
        let yes = |i: u64| {
            if i % 2 == 0 {
                let x = cs.next()?;
                let rest = graph.mul(&graph.inv(&x), z);
                parabolic_member(graph, &rest, d).then_some((x, rest))
            } else {
                let y = ds.next()?;
                let rest = graph.mul(z, &graph.inv(&y));
                c.contains(graph, &rest).then_some((rest, y))
            }
        };
        let mut homs = HomSearch::new(graph, domain, &self.budget);
        let no = |_: u64| {
            let phi = homs.next()?;
            let image = |gens: &[ReducedWord]| -> Option<Vec<Perm>> {
                let perms: Vec<Perm> = gens.iter().map(|g| phi.eval(g.letters())).collect();
                closure(phi.degree(), &perms, cap).ok()
            };
            let pc = image(&c.generators)?;
            let pd: HashSet<Perm> = image(&dgens)?.into_iter().collect();
            let pz = phi.eval(z.letters());
            // φ(z) ∈ φ(C)φ(D) iff φ(c)⁻¹φ(z) ∈ φ(D) for some c
            let hit = pc.iter().any(|x| pd.contains(&x.inverse().then(&pz)));
            (!hit).then_some(phi)
        };
        Ok(race(yes, no, self.budget.race_steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn member_and_non_member() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let s = Solver::with_budget(&g, Budget::default().with_steps(2_000));
        let cent = s.centralizer(&g.element("a").unwrap()).unwrap();
        let d = Parabolic::special(g.parse_set("c").unwrap());
        let z = g.element("a a b c^-1").unwrap();
        match s.centr_coset_member(&cent, &d, &z).unwrap() {
            Decision::Yes((x, y)) => assert_eq!(g.mul(&x, &y), z),
            other => panic!("expected a factorization, got {other:?}"),
        }
        let z = g.element("c a").unwrap();
        assert!(!s.centr_coset_member(&cent, &d, &z).unwrap().is_yes());
    }
}
