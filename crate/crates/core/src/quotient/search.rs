use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroup, FiniteHom, Perm};
use crate::budget::Budget;
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Systematic enumeration is used while `(d!)^k` stays below this.
const SYSTEMATIC_LIMIT: usize = 5_000;

/// Homomorphisms from `⟨J⟩` onto finite groups, cheapest first: the
/// abelianization mod `m` for `m = 2..=5`, then assignments of permutations of
/// degree `3, 4, …` in which adjacent vertices get commuting images.
pub struct HomSearch<'g> {
    graph: &'g Graph,
    domain: Vec<usize>,
    max_degree: usize,
    per_degree: u64,
    rng: ChaCha8Rng,
    stage: Stage,
}

enum Stage {
    Abelian(usize),
    Perm(PermStage),
    Done,
}

struct PermStage {
    group: FiniteGroup,
    systematic: bool,
    odometer: Vec<usize>,
    started: bool,
    emitted: u64,
}

impl<'g> HomSearch<'g> {
    pub fn new(graph: &'g Graph, domain: VertexSet, budget: &Budget) -> HomSearch<'g> {
        let degrees = budget.max_degree.saturating_sub(2).max(1) as u64;
        HomSearch {
            graph,
            domain: domain.iter().collect(),
            max_degree: budget.max_degree.max(3),
            per_degree: (budget.hom_tries / degrees).max(1),
            rng: ChaCha8Rng::seed_from_u64(budget.seed),
            stage: Stage::Abelian(2),
        }
    }

    fn domain_set(&self) -> VertexSet {
        self.domain.iter().copied().collect()
    }

    fn abelian(&self, m: usize) -> FiniteHom {
        let k = self.domain.len();
        let mut images = vec![Perm::identity(m * k); self.graph.len()];
        for (i, &v) in self.domain.iter().enumerate() {
            let block: Vec<u32> = (0..m).map(|j| (i * m + j) as u32).collect();
            images[v] = Perm::from_cycles(m * k, &[&block]);
        }
        FiniteHom::unchecked(self.domain_set(), m * k, images)
    }

    fn perm_stage(&self, degree: usize) -> PermStage {
        let group = FiniteGroup::symmetric(degree);
        let total = (group.order() as f64).powi(self.domain.len() as i32);
        PermStage {
            systematic: total <= SYSTEMATIC_LIMIT as f64,
            odometer: vec![0; self.domain.len()],
            started: false,
            emitted: 0,
            group,
        }
    }

    fn consistent(&self, group: &FiniteGroup, chosen: &[usize], i: usize) -> bool {
        let v = self.domain[i];
        (0..i).all(|j| {
            !self.graph.adjacent(v, self.domain[j])
                || group.element(chosen[i]).commutes_with(group.element(chosen[j]))
        })
    }

    fn build(&self, group: &FiniteGroup, chosen: &[usize]) -> FiniteHom {
        let mut images = vec![Perm::identity(group.degree()); self.graph.len()];
        for (i, &v) in self.domain.iter().enumerate() {
            images[v] = group.element(chosen[i]).clone();
        }
        FiniteHom::unchecked(self.domain_set(), group.degree(), images)
    }

    /// Advances the odometer to the next assignment respecting the edges.
    fn next_systematic(&self, st: &mut PermStage) -> bool {
        let n = st.group.order();
        let k = self.domain.len();
        if k == 0 {
            let first = !st.started;
            st.started = true;
            return first;
        }
        let mut i = k - 1;
        if !st.started {
            st.started = true;
            st.odometer.iter_mut().for_each(|x| *x = 0);
            if (0..k).all(|j| self.consistent(&st.group, &st.odometer, j)) {
                return true;
            }
        }
        loop {
            // increment position i, resetting the tail
            st.odometer[i] += 1;
            if st.odometer[i] == n {
                st.odometer[i] = 0;
                if i == 0 {
                    return false;
                }
                i -= 1;
                continue;
            }
            if !self.consistent(&st.group, &st.odometer, i) {
                continue;
            }
            // element 0 is the identity, which commutes with everything
            st.odometer[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }

    fn next_random(&mut self, group: &FiniteGroup) -> Vec<usize> {
        let mut chosen = Vec::with_capacity(self.domain.len());
        for i in 0..self.domain.len() {
            let v = self.domain[i];
            let options: Vec<usize> = (0..group.order())
                .filter(|&x| {
                    (0..i).all(|j| {
                        !self.graph.adjacent(v, self.domain[j]) || group.element(x).commutes_with(group.element(chosen[j]))
                    })
                })
                .collect();
            chosen.push(options[self.rng.gen_range(0..options.len())]);
        }
        chosen
    }
}

impl Iterator for HomSearch<'_> {
    type Item = FiniteHom;

    fn next(&mut self) -> Option<FiniteHom> {
        loop {
            match std::mem::replace(&mut self.stage, Stage::Done) {
                Stage::Done => return None,
                Stage::Abelian(m) => {
                    let hom = self.abelian(m);
                    self.stage = if m < 5 { Stage::Abelian(m + 1) } else { Stage::Perm(self.perm_stage(3)) };
                    return Some(hom);
                }
                Stage::Perm(mut st) => {
                    let degree = st.group.degree();
                    let more = st.emitted < self.per_degree && (!st.systematic || self.next_systematic(&mut st));
                    if !more {
                        if degree < self.max_degree {
                            self.stage = Stage::Perm(self.perm_stage(degree + 1));
                        }
                        continue;
                    }
                    let chosen = if st.systematic { st.odometer.clone() } else { self.next_random(&st.group) };
                    let hom = self.build(&st.group, &chosen);
                    st.emitted += 1;
                    self.stage = Stage::Perm(st);
                    return Some(hom);
                }
            }
        }
    }
}
