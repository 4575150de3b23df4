use std::fmt::Write;

use super::{conj, cyclic_reduce, equal, inv, mul, prefix, rotation, HnnBase, HnnElement};
use crate::error::{Error, Result};
use crate::quotient::FiniteGroup;

/// `P = ⟨Q, s ∥ s z s⁻¹ = z, z ∈ H̄⟩` over a finite permutation group `Q`.
/// Base elements are indices into `Q`'s element list.
#[derive(Clone, Debug)]
pub struct HnnGroup {
    q: FiniteGroup,
    assoc: Vec<usize>,
    member: Vec<bool>,
}

impl HnnBase for HnnGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.q.mul(*a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.q.inv(*a)
    }

    fn in_assoc(&self, a: &usize) -> bool {
        self.member[*a]
    }
}

impl HnnGroup {
    /// The associated subgroup is generated by the given elements of `q`.
    pub fn new(q: FiniteGroup, assoc_gens: &[usize]) -> HnnGroup {
        let assoc = q.subgroup(assoc_gens);
        let mut member = vec![false; q.order()];
        for &h in &assoc {
            member[h] = true;
        }
        HnnGroup { q, assoc, member }
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn assoc(&self) -> &[usize] {
        &self.assoc
    }

    pub fn in_assoc_index(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn mul_base(&self, a: usize, b: usize) -> usize {
        self.q.mul(a, b)
    }

    pub fn elem(&self, head: usize, syllables: &[(i64, usize)]) -> HnnElement<usize> {
        let mut raw = vec![super::Piece::Base(head)];
        for &(e, x) in syllables {
            raw.push(super::Piece::Stable(e));
            raw.push(super::Piece::Base(x));
        }
        super::britton_reduce(self, &raw)
    }

    /// Unique normal form: each non-final entry is the least element of its
    /// left coset `x H̄`, the associated part being pushed rightwards across `s`.
    pub fn normal_form(&self, g: &HnnElement<usize>) -> HnnElement<usize> {
        let mut entries = g.base_entries();
        for i in 0..entries.len() - 1 {
            let x = entries[i];
            let rep = self.assoc.iter().map(|&h| self.q.mul(x, h)).min().expect("H̄ contains the identity");
            let h = self.q.mul(self.q.inv(rep), x);
            entries[i] = rep;
            entries[i + 1] = self.q.mul(h, entries[i + 1]);
        }
        HnnElement {
            head: entries[0],
            syllables: g.syllables.iter().zip(&entries[1..]).map(|(&(e, _), &x)| (e, x)).collect(),
        }
    }

    /// Prints `q0 . s^e1 q1 . …` with base entries in one-line notation.
    pub fn format(&self, g: &HnnElement<usize>) -> String {
        let mut s = self.q.element(g.head).to_string();
        for (e, x) in &g.syllables {
            let _ = write!(s, " . s^{e} {}", self.q.element(*x));
        }
        s
    }
}

/// A conjugator `c` with `c · g · c⁻¹ = f`, if one exists.
pub fn hnn_conjugate(p: &HnnGroup, g: &HnnElement<usize>, f: &HnnElement<usize>) -> Option<HnnElement<usize>> {
    let (cg, gc) = cyclic_reduce(p, g);
    let (cf, fc) = cyclic_reduce(p, f);
    // g = cg·gc·cg⁻¹, f = cf·fc·cf⁻¹; a conjugator d with d·gc·d⁻¹ = fc gives cf·d·cg⁻¹
    let assemble = |d: HnnElement<usize>| mul(p, &mul(p, &cf, &d), &inv(p, &cg));
    match (gc.is_base(), fc.is_base()) {
        (true, true) => {
            let all: Vec<usize> = (0..p.q.order()).collect();
            p.q.conjugator_in(gc.head, fc.head, &all).map(|c| assemble(HnnElement::base(c)))
        }
        (false, false) => {
            if gc.len() != fc.len() {
                return None;
            }
            for k in 0..fc.len() {
                // f' = q⁻¹·fc·q is the k-th cyclic permutation
                let (fr, q) = rotation(p, &fc, k);
                if fr.signature() != gc.signature() {
                    continue;
                }
                for &h in &p.assoc {
                    let hh = HnnElement::base(h);
                    if equal(p, &conj(p, &hh, &gc), &fr) {
                        return Some(assemble(mul(p, &q, &hh)));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Generators of `C_P(g)` for a cyclically reduced `g` with at least one
/// stable letter.
#[derive(Clone, Debug)]
pub enum HnnCentralizer {
    /// `⟨s⟩ × C_{H̄}(x₁)` when `g = s^e x₁` with `x₁ ∈ H̄`.
    Product { assoc_part: Vec<usize> },
    /// `C_{H̄}(g) · ⟨g⟩ · Ω`.
    Triple { assoc_part: Vec<usize>, omega: Vec<HnnElement<usize>> },
}

impl HnnCentralizer {
    pub fn generators(&self, p: &HnnGroup, g: &HnnElement<usize>) -> Vec<HnnElement<usize>> {
        match self {
            HnnCentralizer::Product { assoc_part } => std::iter::once(super::stable(p, 1))
                .chain(assoc_part.iter().map(|&h| HnnElement::base(h)))
                .collect(),
            HnnCentralizer::Triple { assoc_part, omega } => assoc_part
                .iter()
                .map(|&h| HnnElement::base(h))
                .chain(std::iter::once(g.clone()))
                .chain(omega.iter().cloned())
                .collect(),
        }
    }
}

pub fn hnn_centralizer(p: &HnnGroup, g: &HnnElement<usize>) -> Result<HnnCentralizer> {
    if g.is_base() || !p.is_identity(&g.head) || !super::is_cyclically_reduced(p, g) {
        return Err(Error::Precondition(
            "centralizers need a cyclically reduced element with identity head and a stable letter".into(),
        ));
    }
    let n = g.len();
    let last = g.syllables[n - 1].1;
    if p.in_assoc(&last) {
        debug_assert_eq!(n, 1);
        return Ok(HnnCentralizer::Product { assoc_part: p.q.centralizer_in(last, &p.assoc) });
    }
    let assoc_part: Vec<usize> =
        p.assoc.iter().copied().filter(|&h| equal(p, &conj(p, &HnnElement::base(h), g), g)).collect();
    let mut omega = Vec::new();
    for k in 1..n {
        let pk = prefix(p, g, k);
        let moved = conj(p, &inv(p, &pk), g);
        for &h in &p.assoc {
            let hh = HnnElement::base(h);
            if equal(p, &conj(p, &hh, &moved), g) {
                omega.push(mul(p, &hh, &inv(p, &pk)));
                break;
            }
        }
    }
    Ok(HnnCentralizer::Triple { assoc_part, omega })
}
