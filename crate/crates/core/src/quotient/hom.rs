use serde_json::{json, Map, Value};

use super::group::FiniteGroup;
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;
use crate::word::Letter;

/// A homomorphism from the special subgroup on `domain` to a permutation
/// group. Letters outside the domain evaluate to the identity, so evaluating
/// an arbitrary word computes the composite with the retraction onto the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHom {
    domain: VertexSet,
    degree: usize,
    images: Vec<Perm>,
    inverses: Vec<Perm>,
}

impl FiniteHom {
    /// Checks the defining relations: images of adjacent domain vertices commute.
    pub fn make_hom(graph: &Graph, domain: VertexSet, degree: usize, images: &[(usize, Perm)]) -> Result<FiniteHom> {
        let mut table = vec![Perm::identity(degree); graph.len()];
        let mut given = VertexSet::EMPTY;
        for (v, p) in images {
            if !domain.contains(*v) {
                return Err(Error::Invalid(format!("vertex {} is outside the domain", graph.name(*v))));
            }
            if p.degree() != degree {
                return Err(Error::Invalid(format!("image of {} has degree {}, expected {degree}", graph.name(*v), p.degree())));
            }
            table[*v] = p.clone();
            given.insert(*v);
        }
        if let Some(v) = domain.difference(given).first() {
            return Err(Error::Invalid(format!("no image given for {}", graph.name(v))));
        }
        for (u, v) in graph.edges() {
            if domain.contains(u) && domain.contains(v) && !table[u].commutes_with(&table[v]) {
                return Err(Error::NotAHomomorphism(graph.name(u).into(), graph.name(v).into()));
            }
        }
        Ok(Self::unchecked(domain, degree, table))
    }

    pub(crate) fn unchecked(domain: VertexSet, degree: usize, images: Vec<Perm>) -> FiniteHom {
        let inverses = images.iter().map(Perm::inverse).collect();
        FiniteHom { domain, degree, images, inverses }
    }

    /// The hom sending everything to the identity of the trivial group.
    pub fn trivial(graph: &Graph, domain: VertexSet) -> FiniteHom {
        Self::unchecked(domain, 1, vec![Perm::identity(1); graph.len()])
    }

    pub fn domain(&self) -> VertexSet {
        self.domain
    }

    /// Number of vertices of the underlying graph.
    pub(crate) fn image_len(&self) -> usize {
        self.images.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, v: usize) -> &Perm {
        &self.images[v]
    }

    pub fn letter(&self, l: Letter) -> &Perm {
        if l.inverse {
            &self.inverses[l.v()]
        } else {
            &self.images[l.v()]
        }
    }

    pub fn generator_images(&self) -> Vec<Perm> {
        self.domain.iter().map(|v| self.images[v].clone()).collect()
    }

    pub fn eval(&self, word: &[Letter]) -> Perm {
        let mut p = Perm::identity(self.degree);
        for &l in word {
            p = p.then(self.letter(l));
        }
        p
    }

    /// Image of `point` under the permutation of `word`, without composing.
    pub fn act(&self, mut point: usize, word: &[Letter]) -> usize {
        for &l in word {
            point = self.letter(l).apply(point);
        }
        point
    }

    /// The hom into the direct product, on concatenated domains.
    pub fn product(&self, other: &FiniteHom) -> FiniteHom {
        assert_eq!(self.images.len(), other.images.len(), "homs over different graphs");
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.direct_sum(b)).collect();
        Self::unchecked(self.domain.union(other.domain), self.degree + other.degree, images)
    }

    /// Same images, restricted to a smaller domain.
    pub fn restrict(&self, domain: VertexSet) -> FiniteHom {
        let id = Perm::identity(self.degree);
        let images = (0..self.images.len())
            .map(|v| if domain.contains(v) { self.images[v].clone() } else { id.clone() })
            .collect();
        Self::unchecked(self.domain.intersection(domain), self.degree, images)
    }

    pub fn image_group(&self, cap: usize) -> Result<FiniteGroup> {
        FiniteGroup::generate(self.degree, self.generator_images(), cap)
    }

    pub fn to_json(&self, graph: &Graph) -> Value {
        let mut images = Map::new();
        for v in self.domain.iter() {
            images.insert(graph.name(v).to_string(), json!(self.images[v].images()));
        }
        json!({ "degree": self.degree, "images": images })
    }

    /// Reads `{"degree": n, "images": {vertex: [..]}}`; the domain is the set of listed vertices.
    pub fn from_json(graph: &Graph, value: &Value) -> Result<FiniteHom> {
        let degree = value
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Invalid("hom needs an integer \"degree\"".into()))? as usize;
        let images = value
            .get("images")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Invalid("hom needs an \"images\" object".into()))?;
        let mut list = Vec::new();
        let mut domain = VertexSet::EMPTY;
        for (name, img) in images {
            let v = graph.vertex(name)?;
            let arr: Vec<u32> = serde_json::from_value(img.clone())
                .map_err(|_| Error::Invalid(format!("image of {name} must be an array of integers")))?;
            list.push((v, Perm::from_images(arr)?));
            domain.insert(v);
        }
        Self::make_hom(graph, domain, degree, &list)
    }
}
