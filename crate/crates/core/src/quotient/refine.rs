use std::collections::HashMap;

use super::subgroup::FinIndexSubgroup;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// A finite-index normal `M ≤ K` with `ρ_{Sᵢ}(M) ⊆ M` for every retract `Sᵢ`.
///
/// With `S_J = ⋂_{j∈J} Sⱼ`, set `D_I = K ∩ ⟨S_I⟩` and, for proper `J ⊂ I`,
/// `D_J = ρ_J(⋂_{i∉J} ρ_{J∪i}⁻¹(D_{J∪i})) ∩ K`. Then `M = D_∅`.
pub fn invariant_refinement(
    graph: &Graph,
    retracts: &[VertexSet],
    k: &FinIndexSubgroup,
    cap: usize,
) -> Result<FinIndexSubgroup> {
    let all = graph.all();
    if k.ambient() != all {
        return Err(Error::Precondition("K must be a subgroup of the whole group".into()));
    }
    if !k.is_normal() {
        return Err(Error::Precondition("K must be normal".into()));
    }
    if retracts.len() > 16 {
        return Err(Error::Precondition("at most 16 retracts are supported".into()));
    }
    let m = retracts.len();
    let full = (1u32 << m) - 1;
    let span = |j: u32| -> VertexSet {
        (0..m).filter(|i| j >> i & 1 == 1).fold(all, |acc, i| acc.intersection(retracts[i]))
    };
    let mut d: HashMap<u32, FinIndexSubgroup> = HashMap::new();
    d.insert(full, k.restrict(span(full))?);
    // larger J first, so every D_{J∪i} is ready
    let mut order: Vec<u32> = (0..full).collect();
    order.sort_by_key(|j| std::cmp::Reverse(j.count_ones()));
    for j in order {
        let sj = span(j);
        let mut parts = Vec::new();
        for i in (0..m).filter(|i| j >> i & 1 == 0) {
            parts.push(d[&(j | 1 << i)].preimage(all)?);
        }
        let meet = FinIndexSubgroup::intersect(&parts, cap)?;
        let projected = if sj == all { meet } else { meet.image_under_retraction(graph, sj)? };
        let dj = FinIndexSubgroup::intersect(&[projected, k.restrict(sj)?], cap)?;
        d.insert(j, dj);
    }
    Ok(d.remove(&0).expect("D of the empty set is computed last"))
}

/// Checks the defining properties of a refinement on Schreier generators:
/// `M ≤ K`, `M` normal, and `ρ_{Sᵢ}(M) ⊆ M`.
pub fn check_refinement(graph: &Graph, retracts: &[VertexSet], k: &FinIndexSubgroup, m: &FinIndexSubgroup) -> bool {
    let gens = m.schreier_generators(graph);
    m.check_normal(graph)
        && gens.iter().all(|s| k.contains(s.letters()))
        && retracts.iter().all(|&r| gens.iter().all(|s| m.contains(graph.retract(r, s).letters())))
}

/// Verifies in `G/M` that the image of `⟨⋂ Sᵢ⟩` is the intersection of the
/// images of the `⟨Sᵢ⟩`, by listing both subgroups.
pub fn check_intersection_preserved(graph: &Graph, retracts: &[VertexSet], m: &FinIndexSubgroup, cap: usize) -> Result<bool> {
    let q = m.quotient_group(cap)?;
    let phi = m.action();
    let image = |s: VertexSet| -> Vec<usize> {
        let gens: Vec<usize> = s.iter().map(|v| q.index_of(phi.image(v)).expect("generators lie in the image")).collect();
        q.subgroup(&gens)
    };
    let meet = retracts.iter().fold(graph.all(), |acc, &r| acc.intersection(r));
    let lhs = image(meet);
    let mut rhs: Vec<usize> = (0..q.order()).collect();
    for &r in retracts {
        let sub = image(r);
        rhs.retain(|x| sub.binary_search(x).is_ok());
    }
    Ok(lhs == rhs)
}
