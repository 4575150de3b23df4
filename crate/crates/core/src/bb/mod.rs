//! Normal subgroups `N = ker(ψ: G → ℤᵏ)` for homomorphisms given by an
//! integer vector per vertex, with exact conjugacy inside `N`.

mod lattice;

pub use lattice::Lattice;

use serde_json::Value;

use crate::conjugacy::{ConjCertificate, Refusal, Solver};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::ReducedWord;

/// `ψ: G → ℤᵏ`, determined by the images of the vertices. Every relator is a
/// commutator, so any choice of images defines a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianQuotientMap {
    rank: usize,
    matrix: Vec<Vec<i64>>,
}

impl AbelianQuotientMap {
    pub fn new(graph: &Graph, rank: usize, matrix: Vec<Vec<i64>>) -> Result<AbelianQuotientMap> {
        if matrix.len() != graph.len() || matrix.iter().any(|r| r.len() != rank) {
            return Err(Error::Invalid(format!("need one vector of length {rank} per vertex")));
        }
        Ok(AbelianQuotientMap { rank, matrix })
    }

    /// Every vertex to `1 ∈ ℤ`.
    pub fn bestvina_brady(graph: &Graph) -> AbelianQuotientMap {
        AbelianQuotientMap { rank: 1, matrix: vec![vec![1]; graph.len()] }
    }

    pub fn is_bestvina_brady(&self) -> bool {
        self.rank == 1 && self.matrix.iter().all(|r| r[0] == 1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image_of(&self, v: usize) -> &[i64] {
        &self.matrix[v]
    }

    /// Reads `"bb"` or `{"rank": k, "map": {vertex: [ints]}}`.
    pub fn parse(graph: &Graph, text: &str) -> Result<AbelianQuotientMap> {
        if text.trim() == "bb" {
            return Ok(Self::bestvina_brady(graph));
        }
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("map is not valid JSON: {e}")))?;
        Self::from_json(graph, &v)
    }

    pub fn from_json(graph: &Graph, v: &Value) -> Result<AbelianQuotientMap> {
        if v.as_str() == Some("bb") {
            return Ok(Self::bestvina_brady(graph));
        }
        let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(|| Error::Invalid("map needs an integer \"rank\"".into()))?
            as usize;
        let map = v.get("map").and_then(Value::as_object).ok_or_else(|| Error::Invalid("map needs a \"map\" object".into()))?;
        let mut matrix = vec![vec![0; rank]; graph.len()];
        let mut seen = vec![false; graph.len()];
        for (name, img) in map {
            let vtx = graph.vertex(name)?;
            let row: Vec<i64> = serde_json::from_value(img.clone())
                .map_err(|_| Error::Invalid(format!("image of {name} must be a list of integers")))?;
            if row.len() != rank {
                return Err(Error::Invalid(format!("image of {name} has length {}, expected {rank}", row.len())));
            }
            matrix[vtx] = row;
            seen[vtx] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Invalid(format!("no image given for {}", graph.name(v))));
        }
        Ok(AbelianQuotientMap { rank, matrix })
    }
}

pub fn ab_image(psi: &AbelianQuotientMap, g: &ReducedWord) -> Vec<i64> {
    let mut out = vec![0; psi.rank];
    for l in g.letters() {
        for (o, x) in out.iter_mut().zip(&psi.matrix[l.v()]) {
            *o += l.sign() * x;
        }
    }
    out
}

pub fn in_kernel(psi: &AbelianQuotientMap, g: &ReducedWord) -> bool {
    ab_image(psi, g).iter().all(|&x| x == 0)
}

/// Finite generation of the Bestvina–Brady kernel: the graph is connected.
pub fn bb_is_fg(graph: &Graph, psi: &AbelianQuotientMap) -> Result<bool> {
    if !psi.is_bestvina_brady() {
        return Err(Error::Precondition("the criterion applies to the map sending every vertex to 1".into()));
    }
    Ok(graph.is_connected(graph.all()))
}

/// Decides `y ∈ x^N` with a conjugator in `N`.
///
/// The conjugators in `G` are `c₀·C_G(x)`, so one lies in `N` exactly when
/// `-ψ(c₀)` is in the lattice spanned by `ψ` of the centralizer generators.
pub fn bb_conjugate(solver: &Solver, psi: &AbelianQuotientMap, x: &ReducedWord, y: &ReducedWord) -> Result<ConjCertificate> {
    let graph = solver.graph();
    if !in_kernel(psi, x) || !in_kernel(psi, y) {
        return Err(Error::Precondition("both elements must lie in the kernel".into()));
    }
    let c0 = match solver.conjugate_g(x, y)? {
        ConjCertificate::Conjugator(c) => c,
        refusal => return Ok(refusal),
    };
    let gens = solver.centralizer(x)?.generators;
    let lattice = Lattice::new(psi.rank, &gens.iter().map(|g| ab_image(psi, g)).collect::<Vec<_>>());
    let target: Vec<i64> = ab_image(psi, &c0).iter().map(|&v| -v).collect();
    let Some(ks) = lattice.solve(&target) else {
        return Ok(ConjCertificate::NotConjugate(Refusal::CentralizerImage));
    };
    let mut w = ReducedWord::identity();
    for (g, &k) in gens.iter().zip(&ks) {
        let k = i64::try_from(k).map_err(|_| Error::Invalid("lattice coefficient out of range".into()))?;
        w = graph.mul(&w, &graph.pow(g, k));
    }
    let c = graph.mul(&c0, &w);
    if !in_kernel(psi, &c) || graph.conj(&c, x) != *y {
        return Err(Error::Invalid("conjugator in the kernel failed to verify".into()));
    }
    Ok(ConjCertificate::Conjugator(c))
}
