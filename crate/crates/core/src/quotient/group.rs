use std::collections::{HashMap, HashSet, VecDeque};

use super::perm::Perm;
use crate::error::{Error, Result};

/// A finite permutation group with its elements enumerated. Element 0 is the
/// identity; elements are addressed by index.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// Breadth-first closure of a set of permutations under right multiplication
/// by the generators. Fails once more than `cap` elements appear.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut i = 0;
    while i < order.len() {
        let cur = order[i].clone();
        for g in gens {
            let next = cur.then(g);
            if !seen.contains(&next) {
                if order.len() >= cap {
                    return Err(Error::OrderCap(cap));
                }
                seen.insert(next.clone());
                order.push(next);
            }
        }
        i += 1;
    }
    Ok(order)
}

/// Orbit of `point` under the permutations, in discovery order.
pub fn orbit(point: usize, gens: &[Perm]) -> Vec<usize> {
    let mut seen = HashSet::from([point]);
    let mut out = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.apply(p);
            if seen.insert(q) {
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out
}

impl FiniteGroup {
    pub fn generate(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<FiniteGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Invalid(format!("generator {g:?} has the wrong degree")));
        }
        let elements = closure(degree, &gens, cap)?;
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(FiniteGroup { degree, gens, elements, index })
    }

    /// Cyclic group of order `n` acting regularly.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let cycle: Vec<u32> = (0..n as u32).collect();
        let gen = Perm::from_cycles(n, &[&cycle]);
        Self::generate(n, vec![gen], usize::MAX).expect("cyclic groups are small")
    }

    /// Symmetric group of degree `n`.
    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]));
            let cycle: Vec<u32> = (0..n as u32).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]));
        }
        Self::generate(n, gens, usize::MAX).expect("symmetric groups used here are small")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// `c · x · c⁻¹`.
    pub fn conj(&self, c: usize, x: usize) -> usize {
        self.mul(self.mul(c, x), self.inv(c))
    }

    /// Elements of the subgroup generated by the given elements, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let n = self.mul(out[i], g);
                if !seen[n] {
                    seen[n] = true;
                    out.push(n);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Some `c` among `by` with `c · x · c⁻¹ = y`.
    pub fn conjugator_in(&self, x: usize, y: usize, by: &[usize]) -> Option<usize> {
        by.iter().copied().find(|&c| self.conj(c, x) == y)
    }

    /// Elements of `within` commuting with `x`.
    pub fn centralizer_in(&self, x: usize, within: &[usize]) -> Vec<usize> {
        within.iter().copied().filter(|&c| self.mul(c, x) == self.mul(x, c)).collect()
    }

    /// Direct product on the disjoint union of the two domains.
    pub fn direct_product(&self, other: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
        let left = Perm::identity(self.degree);
        let right = Perm::identity(other.degree);
        let gens = self
            .gens
            .iter()
            .map(|g| g.direct_sum(&right))
            .chain(other.gens.iter().map(|g| left.direct_sum(g)))
            .collect();
        Self::generate(self.degree + other.degree, gens, cap)
    }
}
