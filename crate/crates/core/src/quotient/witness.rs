use std::collections::{HashSet, VecDeque};

use serde_json::{json, Value};

use super::group::closure;
use super::hom::FiniteHom;
use super::perm::Perm;
use super::search::HomSearch;
use super::subgroup::FinIndexSubgroup;
use crate::conjugacy::Solver;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;
use crate::word::ReducedWord;

/// What a finite quotient certifies.
#[derive(Clone, Debug)]
pub enum Claim {
    /// `φ(f) ∉ φ(g)^{φ(⟨B⟩)}`, so `f ∉ g^B`.
    Nonconjugate { g: ReducedWord, f: ReducedWord, sub: VertexSet },
    /// `C_{ψ(⟨B⟩)}(ψ(g)) ⊆ ψ(C)·ψ(K)` for `C = ⟨centralizer⟩ ≤ C_B(g)` and `ker ψ ≤ K`.
    Cc { g: ReducedWord, sub: VertexSet, centralizer: Vec<ReducedWord>, k: FinIndexSubgroup },
}

/// A homomorphism onto a finite group together with the statement it proves.
/// Everything needed to re-check it is stored in the witness.
#[derive(Clone, Debug)]
pub struct QuotientWitness {
    pub hom: FiniteHom,
    pub claim: Claim,
}

impl QuotientWitness {
    /// Re-checks the claim by exhaustive computation in the finite image.
    pub fn verify(&self, graph: &Graph, cap: usize) -> Result<bool> {
        match &self.claim {
            Claim::Nonconjugate { g, f, sub } => Ok(separates(&self.hom, g, f, *sub)),
            Claim::Cc { g, sub, centralizer, k } => {
                let sound = centralizer.iter().all(|c| c.support().is_subset(*sub) && graph.commute(c, g))
                    && kernel_inside(graph, &self.hom, k, cap)?;
                Ok(sound && cc_inclusion(graph, &self.hom, g, *sub, centralizer, k, cap)?)
            }
        }
    }

    pub fn to_json(&self, graph: &Graph, verified: bool) -> Value {
        let mut v = self.hom.to_json(graph);
        match &self.claim {
            Claim::Nonconjugate { g, f, sub } => {
                v["claim"] = json!("nonconjugate");
                v["g"] = json!(g.display(graph).to_string());
                v["f"] = json!(f.display(graph).to_string());
                v["sub"] = json!(names(graph, *sub));
            }
            Claim::Cc { g, sub, centralizer, k } => {
                v["claim"] = json!("cc");
                v["g"] = json!(g.display(graph).to_string());
                v["sub"] = json!(names(graph, *sub));
                v["centralizer"] = json!(centralizer.iter().map(|c| c.display(graph).to_string()).collect::<Vec<_>>());
                v["k"] = k.action().to_json(graph);
            }
        }
        v["verified"] = json!(verified);
        v
    }

    pub fn from_json(graph: &Graph, v: &Value) -> Result<QuotientWitness> {
        let hom = FiniteHom::from_json(graph, v)?;
        let word = |key: &str| -> Result<ReducedWord> {
            let s = v.get(key).and_then(Value::as_str).ok_or_else(|| Error::Invalid(format!("witness needs a string {key:?}")))?;
            graph.element(s)
        };
        let sub = match v.get("sub").and_then(Value::as_array) {
            Some(list) => {
                let mut s = VertexSet::EMPTY;
                for name in list {
                    let name = name.as_str().ok_or_else(|| Error::Invalid("\"sub\" must list vertex names".into()))?;
                    s.insert(graph.vertex(name)?);
                }
                s
            }
            None => graph.all(),
        };
        let claim = match v.get("claim").and_then(Value::as_str) {
            Some("nonconjugate") => Claim::Nonconjugate { g: word("g")?, f: word("f")?, sub },
            Some("cc") => {
                let centralizer = v
                    .get("centralizer")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Invalid("cc witness needs a \"centralizer\" list".into()))?
                    .iter()
                    .map(|c| c.as_str().ok_or_else(|| Error::Invalid("centralizer entries are words".into())).and_then(|s| graph.element(s)))
                    .collect::<Result<Vec<_>>>()?;
                let action = FiniteHom::from_json(graph, v.get("k").ok_or_else(|| Error::Invalid("cc witness needs \"k\"".into()))?)?;
                if action.domain() != graph.all() {
                    return Err(Error::Invalid("\"k\" must act on every vertex".into()));
                }
                let k = FinIndexSubgroup::from_action(action, true);
                if !k.check_normal(graph) {
                    return Err(Error::Invalid("\"k\" does not describe a normal subgroup".into()));
                }
                Claim::Cc { g: word("g")?, sub, centralizer, k }
            }
            _ => return Err(Error::Invalid("witness needs \"claim\": \"nonconjugate\" or \"cc\"".into())),
        };
        Ok(QuotientWitness { hom, claim })
    }
}

fn names(graph: &Graph, s: VertexSet) -> Vec<&str> {
    s.iter().map(|v| graph.name(v)).collect()
}

/// Orbit of `x` under conjugation by `gens`.
fn conjugacy_orbit(x: &Perm, gens: &[Perm]) -> HashSet<Perm> {
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for c in gens {
            let z = y.conjugated_by(c);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}

fn separates(phi: &FiniteHom, g: &ReducedWord, f: &ReducedWord, sub: VertexSet) -> bool {
    let gens: Vec<Perm> = sub.iter().map(|v| phi.image(v).clone()).collect();
    !conjugacy_orbit(&phi.eval(g.letters()), &gens).contains(&phi.eval(f.letters()))
}

/// `ker ψ ≤ K`: every Schreier generator of `ker ψ` lies in `K`.
fn kernel_inside(graph: &Graph, psi: &FiniteHom, k: &FinIndexSubgroup, cap: usize) -> Result<bool> {
    let gens = super::subgroup::kernel_schreier_gens(graph, psi, cap)?;
    Ok(gens.iter().all(|s| k.contains(s.letters())))
}

fn cc_inclusion(
    graph: &Graph,
    psi: &FiniteHom,
    g: &ReducedWord,
    sub: VertexSet,
    centralizer: &[ReducedWord],
    k: &FinIndexSubgroup,
    cap: usize,
) -> Result<bool> {
    let n = psi.degree();
    let eval = |w: &ReducedWord| psi.eval(w.letters());
    let gbar = eval(g);
    let bbar = closure(n, &sub.iter().map(|v| psi.image(v).clone()).collect::<Vec<_>>(), cap)?;
    // ψ(K) is normal in the image, so ψ(C)ψ(K) is the subgroup they generate
    let mut gens: Vec<Perm> = centralizer.iter().map(eval).collect();
    gens.extend(k.schreier_generators(graph).iter().map(eval));
    let rhs: HashSet<Perm> = closure(n, &gens, cap)?.into_iter().collect();
    Ok(bbar.iter().filter(|x| x.commutes_with(&gbar)).all(|x| rhs.contains(x)))
}

/// Searches for a finite quotient in which `f` is not conjugate to `g` by the
/// image of `⟨B⟩`. `Ok(None)` means the search budget ran out.
pub fn separate_conjugacy(
    solver: &Solver,
    g: &ReducedWord,
    f: &ReducedWord,
    sub: VertexSet,
) -> Result<Option<QuotientWitness>> {
    let graph = solver.graph();
    if solver.conjugate_sub(sub, g, f)?.is_conjugate() {
        return Err(Error::Precondition("the elements are conjugate, so no quotient separates them".into()));
    }
    for phi in HomSearch::new(graph, graph.all(), solver.budget()) {
        if separates(&phi, g, f, sub) {
            let w = QuotientWitness { hom: phi, claim: Claim::Nonconjugate { g: g.clone(), f: f.clone(), sub } };
            debug_assert!(w.verify(graph, solver.budget().order_cap).unwrap_or(false));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Searches for `ψ` with `ker ψ ≤ K` satisfying the centralizer inclusion for
/// `(⟨B⟩, g)`. Candidates are `K`'s own quotient map, then its products with
/// the homomorphisms of [`HomSearch`]. `Ok(None)` means the budget ran out.
pub fn cc_witness(solver: &Solver, sub: VertexSet, g: &ReducedWord, k: &FinIndexSubgroup) -> Result<Option<QuotientWitness>> {
    let graph = solver.graph();
    let cap = solver.budget().order_cap;
    if k.ambient() != graph.all() || !k.is_normal() {
        return Err(Error::Precondition("K must be a normal subgroup of the whole group".into()));
    }
    let centralizer = solver.centralizer_in_special(sub, g)?.generators;
    let theta = k.action().clone();
    let candidates = std::iter::once(theta.clone()).chain(HomSearch::new(graph, graph.all(), solver.budget()).map(|phi| theta.product(&phi)));
    for psi in candidates {
        match cc_inclusion(graph, &psi, g, sub, &centralizer, k, cap) {
            Ok(true) => {
                let claim = Claim::Cc { g: g.clone(), sub, centralizer, k: k.clone() };
                return Ok(Some(QuotientWitness { hom: psi, claim }));
            }
            Ok(false) | Err(Error::OrderCap(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}
