use std::collections::{HashMap, VecDeque};

use super::group::FiniteGroup;
use super::hom::FiniteHom;
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;
use crate::word::{Letter, ReducedWord};

/// A finite-index subgroup `θ⁻¹(S̄)` of a special subgroup `⟨J⟩`.
///
/// `θ` is the action of `⟨J⟩` on the right cosets of the subgroup, so the
/// subgroup is the stabilizer of point 0 and the index is the degree. When
/// the subgroup is normal the action is the regular action of the quotient.
#[derive(Clone, Debug)]
pub struct FinIndexSubgroup {
    action: FiniteHom,
    normal: bool,
}

impl FinIndexSubgroup {
    pub fn whole(graph: &Graph, ambient: VertexSet) -> FinIndexSubgroup {
        FinIndexSubgroup { action: FiniteHom::trivial(graph, ambient), normal: true }
    }

    /// The kernel of `phi`, represented by the regular action of its image.
    pub fn kernel_of(phi: &FiniteHom, cap: usize) -> Result<FinIndexSubgroup> {
        Self::preimage_of(phi, &[], cap)
    }

    /// `φ⁻¹` of the subgroup of `im φ` generated by `subgroup_gens`.
    pub fn preimage_of(phi: &FiniteHom, subgroup_gens: &[Perm], cap: usize) -> Result<FinIndexSubgroup> {
        let q = phi.image_group(cap)?;
        let sub_idx: Vec<usize> = subgroup_gens
            .iter()
            .map(|p| q.index_of(p).ok_or_else(|| Error::Invalid("subgroup generator outside the image".into())))
            .collect::<Result<_>>()?;
        let sub = q.subgroup(&sub_idx);
        // right cosets S̄·q, keyed by their least element index
        let mut key_of = vec![usize::MAX; q.order()];
        let mut reps: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        let coset_key = |x: usize, key_of: &mut Vec<usize>| -> usize {
            if key_of[x] == usize::MAX {
                let members: Vec<usize> = sub.iter().map(|&s| q.mul(s, x)).collect();
                let k = *members.iter().min().expect("subgroups are nonempty");
                for m in members {
                    key_of[m] = k;
                }
            }
            key_of[x]
        };
        let mut point_of: HashMap<usize, usize> = HashMap::new();
        let k0 = coset_key(0, &mut key_of);
        point_of.insert(k0, 0);
        reps.push(0);
        queue.push_back(0usize);
        let gens: Vec<(usize, usize)> = phi
            .domain()
            .iter()
            .map(|v| (v, q.index_of(phi.image(v)).expect("generator images lie in the image")))
            .collect();
        while let Some(p) = queue.pop_front() {
            for &(_, g) in &gens {
                let x = q.mul(reps[p], g);
                let k = coset_key(x, &mut key_of);
                if let std::collections::hash_map::Entry::Vacant(e) = point_of.entry(k) {
                    e.insert(reps.len());
                    reps.push(x);
                    queue.push_back(reps.len() - 1);
                }
            }
        }
        let n = reps.len();
        let mut images = vec![Perm::identity(n); phi.image_len()];
        for &(v, g) in &gens {
            let img: Vec<u32> = (0..n)
                .map(|p| point_of[&coset_key(q.mul(reps[p], g), &mut key_of)] as u32)
                .collect();
            images[v] = Perm::from_images(img)?;
        }
        let normal = sub.iter().all(|&s| (0..q.order()).all(|x| sub.binary_search(&q.conj(x, s)).is_ok()));
        Ok(FinIndexSubgroup { action: FiniteHom::unchecked(phi.domain(), n, images), normal })
    }

    pub(crate) fn from_action(action: FiniteHom, normal: bool) -> FinIndexSubgroup {
        FinIndexSubgroup { action, normal }
    }

    pub fn action(&self) -> &FiniteHom {
        &self.action
    }

    pub fn ambient(&self) -> VertexSet {
        self.action.domain()
    }

    pub fn index(&self) -> usize {
        self.action.degree()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, g: &[Letter]) -> bool {
        g.iter().all(|l| self.ambient().contains(l.v())) && self.action.act(0, g) == 0
    }

    /// Words `t_p` with `0 · t_p = p`, built breadth-first from positive letters.
    pub fn transversal(&self) -> Vec<Vec<Letter>> {
        let n = self.index();
        let mut words: Vec<Option<Vec<Letter>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            for v in self.ambient().iter() {
                let q = self.action.image(v).apply(p);
                if words[q].is_none() {
                    let mut w = words[p].clone().expect("visited");
                    w.push(Letter::pos(v));
                    words[q] = Some(w);
                    queue.push_back(q);
                }
            }
        }
        words.into_iter().map(|w| w.expect("coset actions are transitive")).collect()
    }

    /// Schreier generators `t_p · x · t_{p·x}⁻¹`, reduced, without the identity.
    pub fn schreier_generators(&self, graph: &Graph) -> Vec<ReducedWord> {
        let t = self.transversal();
        let mut out: Vec<ReducedWord> = Vec::new();
        for (p, tp) in t.iter().enumerate() {
            for v in self.ambient().iter() {
                let q = self.action.image(v).apply(p);
                let mut w = tp.clone();
                w.push(Letter::pos(v));
                w.extend(t[q].iter().rev().map(|l| l.inv()));
                let r = graph.reduce(&w);
                if !r.is_empty() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// True when every Schreier generator fixes every point.
    pub fn check_normal(&self, graph: &Graph) -> bool {
        self.schreier_generators(graph)
            .iter()
            .all(|s| (0..self.index()).all(|p| self.action.act(p, s.letters()) == p))
    }

    /// The intersection, acting on the orbit of the base tuple.
    pub fn intersect(parts: &[FinIndexSubgroup], cap: usize) -> Result<FinIndexSubgroup> {
        let first = parts.first().ok_or_else(|| Error::Invalid("nothing to intersect".into()))?;
        let ambient = first.ambient();
        if parts.iter().any(|k| k.ambient() != ambient) {
            return Err(Error::Precondition("subgroups live in different ambient groups".into()));
        }
        let start = vec![0usize; parts.len()];
        let mut point_of: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut tuples = vec![start];
        let verts: Vec<usize> = ambient.iter().collect();
        let mut table: Vec<Vec<u32>> = vec![Vec::new(); verts.len()];
        let mut i = 0;
        while i < tuples.len() {
            for (j, &v) in verts.iter().enumerate() {
                let next: Vec<usize> =
                    tuples[i].iter().zip(parts).map(|(&p, k)| k.action.image(v).apply(p)).collect();
                let id = match point_of.get(&next) {
                    Some(&id) => id,
                    None => {
                        if tuples.len() >= cap {
                            return Err(Error::OrderCap(cap));
                        }
                        point_of.insert(next.clone(), tuples.len());
                        tuples.push(next);
                        tuples.len() - 1
                    }
                };
                table[j].push(id as u32);
            }
            i += 1;
        }
        let n = tuples.len();
        let mut images = vec![Perm::identity(n); first.action.image_len()];
        for (j, &v) in verts.iter().enumerate() {
            images[v] = Perm::from_images(std::mem::take(&mut table[j]))?;
        }
        Ok(FinIndexSubgroup {
            action: FiniteHom::unchecked(ambient, n, images),
            normal: parts.iter().all(|k| k.normal),
        })
    }

    /// The full preimage under the retraction of `⟨ambient⟩` onto this subgroup's ambient.
    pub fn preimage(&self, ambient: VertexSet) -> Result<FinIndexSubgroup> {
        if !self.ambient().is_subset(ambient) {
            return Err(Error::Precondition("preimage target must contain the current ambient".into()));
        }
        let id = Perm::identity(self.index());
        let images = (0..self.action.image_len())
            .map(|v| if self.ambient().contains(v) { self.action.image(v).clone() } else { id.clone() })
            .collect();
        Ok(FinIndexSubgroup { action: FiniteHom::unchecked(ambient, self.index(), images), normal: self.normal })
    }

    /// The intersection with `⟨sub⟩`, as a subgroup of `⟨sub⟩`.
    pub fn restrict(&self, sub: VertexSet) -> Result<FinIndexSubgroup> {
        if !sub.is_subset(self.ambient()) {
            return Err(Error::Precondition("restriction target must lie in the ambient".into()));
        }
        let gens: Vec<Perm> = sub.iter().map(|v| self.action.image(v).clone()).collect();
        let points = super::group::orbit(0, &gens);
        let local: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let n = points.len();
        let mut images = vec![Perm::identity(n); self.action.image_len()];
        for v in sub.iter() {
            let img = points.iter().map(|&p| local[&self.action.image(v).apply(p)] as u32).collect();
            images[v] = Perm::from_images(img)?;
        }
        Ok(FinIndexSubgroup { action: FiniteHom::unchecked(sub, n, images), normal: self.normal })
    }

    /// The image under the retraction onto `⟨sub⟩`.
    ///
    /// The image contains the stabilizer of 0 in `⟨sub⟩`, so its cosets are
    /// unions of points of the orbit of 0 and form the block system generated
    /// by the orbit of 0 under the retracted Schreier generators.
    pub fn image_under_retraction(&self, graph: &Graph, sub: VertexSet) -> Result<FinIndexSubgroup> {
        let local = self.restrict(sub)?;
        let n = local.index();
        let mut block = super::group::orbit(
            0,
            &self
                .schreier_generators(graph)
                .iter()
                .map(|s| local.action.eval(graph.retract(sub, s).letters()))
                .collect::<Vec<_>>(),
        );
        block.sort_unstable();
        let mut uf = UnionFind::new(n);
        let mut pending: VecDeque<(usize, usize)> = VecDeque::new();
        for &p in &block[1..] {
            if uf.union(0, p) {
                pending.push_back((0, p));
            }
        }
        while let Some((p, q)) = pending.pop_front() {
            for v in sub.iter() {
                let img = local.action.image(v);
                let (a, b) = (img.apply(p), img.apply(q));
                if uf.union(a, b) {
                    pending.push_back((a, b));
                }
            }
        }
        let mut block_of: HashMap<usize, usize> = HashMap::new();
        let mut root_order = Vec::new();
        for p in 0..n {
            let r = uf.find(p);
            if !block_of.contains_key(&r) {
                block_of.insert(r, root_order.len());
                root_order.push(p);
            }
        }
        let m = root_order.len();
        let mut images = vec![Perm::identity(m); self.action.image_len()];
        for v in sub.iter() {
            let img: Vec<u32> = root_order
                .iter()
                .map(|&p| block_of[&uf.find(local.action.image(v).apply(p))] as u32)
                .collect();
            images[v] = Perm::from_images(img)?;
        }
        Ok(FinIndexSubgroup { action: FiniteHom::unchecked(sub, m, images), normal: self.normal })
    }

    /// Mutual containment, tested on Schreier generators.
    pub fn same_as(&self, graph: &Graph, other: &FinIndexSubgroup) -> bool {
        self.ambient() == other.ambient()
            && self.schreier_generators(graph).iter().all(|s| other.contains(s.letters()))
            && other.schreier_generators(graph).iter().all(|s| self.contains(s.letters()))
    }

    /// The quotient group of a normal subgroup, as a permutation group.
    pub fn quotient_group(&self, cap: usize) -> Result<FiniteGroup> {
        if !self.normal {
            return Err(Error::Precondition("quotient of a subgroup not known to be normal".into()));
        }
        self.action.image_group(cap)
    }
}

/// Generators of the kernel of `phi`.
pub fn kernel_schreier_gens(graph: &Graph, phi: &FiniteHom, cap: usize) -> Result<Vec<ReducedWord>> {
    Ok(FinIndexSubgroup::kernel_of(phi, cap)?.schreier_generators(graph))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
