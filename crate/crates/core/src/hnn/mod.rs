//! Special HNN-extensions `⟨A, t ∥ t h t⁻¹ = h, h ∈ H⟩`.
//!
//! The reduction machinery is generic over the base group through
//! [`HnnBase`]; [`HnnGroup`] instantiates it over a finite permutation group
//! and the conjugacy module instantiates it over a special subgroup of a
//! right-angled Artin group.

mod finite;
mod tower;

pub use finite::{hnn_centralizer, hnn_conjugate, HnnCentralizer, HnnGroup};
pub use tower::{build_tower, extend_hom, hnn_retractions, BaseRetraction, ExtendedHom, HnnRetractions, TowerLevel};

use std::fmt::Debug;

/// Base group of a special HNN-extension together with its associated subgroup.
pub trait HnnBase {
    type Elem: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Membership in the associated subgroup.
    fn in_assoc(&self, a: &Self::Elem) -> bool;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

/// `head · t^{e₁} x₁ ⋯ t^{eₙ} xₙ`, kept reduced: every interior `xᵢ` lies
/// outside the associated subgroup and every exponent is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnnElement<E> {
    pub head: E,
    pub syllables: Vec<(i64, E)>,
}

/// One entry of an unreduced product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece<E> {
    Base(E),
    Stable(i64),
}

impl<E: Clone> HnnElement<E> {
    pub fn base(head: E) -> Self {
        HnnElement { head, syllables: Vec::new() }
    }

    /// Number of stable-letter syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_base(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The exponent pattern `(e₁, …, eₙ)`.
    pub fn signature(&self) -> Vec<i64> {
        self.syllables.iter().map(|s| s.0).collect()
    }

    /// Base entries `x₀, x₁, …, xₙ`.
    pub fn base_entries(&self) -> Vec<E> {
        std::iter::once(self.head.clone()).chain(self.syllables.iter().map(|s| s.1.clone())).collect()
    }

    pub fn pieces(&self) -> Vec<Piece<E>> {
        let mut out = vec![Piece::Base(self.head.clone())];
        for (e, x) in &self.syllables {
            out.push(Piece::Stable(*e));
            out.push(Piece::Base(x.clone()));
        }
        out
    }
}

/// Reduces an arbitrary product by sweeping associated-subgroup entries across
/// stable letters and merging exponents.
pub fn britton_reduce<B: HnnBase>(base: &B, raw: &[Piece<B::Elem>]) -> HnnElement<B::Elem> {
    let mut out = HnnElement::base(base.identity());
    for p in raw {
        match p {
            Piece::Base(x) => push_base(base, &mut out, x),
            Piece::Stable(e) => push_stable(base, &mut out, *e),
        }
    }
    out
}

fn last_mut<E>(g: &mut HnnElement<E>) -> &mut E {
    match g.syllables.last_mut() {
        Some(s) => &mut s.1,
        None => &mut g.head,
    }
}

fn push_base<B: HnnBase>(base: &B, g: &mut HnnElement<B::Elem>, x: &B::Elem) {
    let last = last_mut(g);
    *last = base.mul(last, x);
}

fn push_stable<B: HnnBase>(base: &B, g: &mut HnnElement<B::Elem>, e: i64) {
    if e == 0 {
        return;
    }
    let mergeable = matches!(g.syllables.last(), Some((_, x)) if base.in_assoc(x));
    if !mergeable {
        g.syllables.push((e, base.identity()));
        return;
    }
    let (en, xn) = g.syllables.pop().expect("checked above");
    // t^{eₙ} xₙ t^{e} = xₙ t^{eₙ + e} since xₙ commutes with t
    push_base(base, g, &xn);
    push_stable(base, g, en + e);
}

pub fn mul<B: HnnBase>(base: &B, a: &HnnElement<B::Elem>, b: &HnnElement<B::Elem>) -> HnnElement<B::Elem> {
    let mut out = a.clone();
    push_base(base, &mut out, &b.head);
    for (e, x) in &b.syllables {
        push_stable(base, &mut out, *e);
        push_base(base, &mut out, x);
    }
    out
}

pub fn inv<B: HnnBase>(base: &B, a: &HnnElement<B::Elem>) -> HnnElement<B::Elem> {
    let mut raw = Vec::with_capacity(2 * a.len() + 1);
    for (e, x) in a.syllables.iter().rev() {
        raw.push(Piece::Base(base.inv(x)));
        raw.push(Piece::Stable(-e));
    }
    raw.push(Piece::Base(base.inv(&a.head)));
    britton_reduce(base, &raw)
}

/// `c · g · c⁻¹`.
pub fn conj<B: HnnBase>(base: &B, c: &HnnElement<B::Elem>, g: &HnnElement<B::Elem>) -> HnnElement<B::Elem> {
    mul(base, &mul(base, c, g), &inv(base, c))
}

pub fn is_trivial<B: HnnBase>(base: &B, a: &HnnElement<B::Elem>) -> bool {
    a.is_base() && base.is_identity(&a.head)
}

pub fn equal<B: HnnBase>(base: &B, a: &HnnElement<B::Elem>, b: &HnnElement<B::Elem>) -> bool {
    is_trivial(base, &mul(base, &inv(base, a), b))
}

pub fn from_base<B: HnnBase>(x: B::Elem) -> HnnElement<B::Elem> {
    HnnElement::base(x)
}

pub fn stable<B: HnnBase>(base: &B, e: i64) -> HnnElement<B::Elem> {
    britton_reduce(base, &[Piece::Stable(e)])
}

/// `head · t^{e₁} x₁ ⋯ t^{e_k} x_k`.
pub fn prefix<B: HnnBase>(base: &B, g: &HnnElement<B::Elem>, k: usize) -> HnnElement<B::Elem> {
    let _ = base;
    HnnElement { head: g.head.clone(), syllables: g.syllables[..k].to_vec() }
}

/// True when every cyclic permutation is reduced.
pub fn is_cyclically_reduced<B: HnnBase>(base: &B, g: &HnnElement<B::Elem>) -> bool {
    if g.len() < 2 {
        return true;
    }
    let last = &g.syllables[g.len() - 1].1;
    !base.in_assoc(&base.mul(last, &g.head))
}

/// Returns `(c, core)` with `core = c⁻¹ · g · c` cyclically reduced. When the
/// core has stable letters its head is the identity.
pub fn cyclic_reduce<B: HnnBase>(base: &B, g: &HnnElement<B::Elem>) -> (HnnElement<B::Elem>, HnnElement<B::Elem>) {
    let mut c = HnnElement::base(base.identity());
    let mut core = g.clone();
    loop {
        if core.is_base() {
            return (c, core);
        }
        if !base.is_identity(&core.head) {
            let x0 = HnnElement::base(core.head.clone());
            core = conj(base, &inv(base, &x0), &core);
            c = mul(base, &c, &x0);
            continue;
        }
        let n = core.len();
        if n >= 2 && base.in_assoc(&core.syllables[n - 1].1) {
            // move the last syllable to the front, where it merges
            let tail = HnnElement { head: base.identity(), syllables: vec![core.syllables[n - 1].clone()] };
            core = conj(base, &tail, &core);
            c = mul(base, &c, &inv(base, &tail));
            continue;
        }
        return (c, core);
    }
}

/// The `k`-th cyclic permutation `t^{e_{k+1}} x_{k+1} ⋯ t^{e_k} x_k` of a core
/// with identity head, and the prefix `p` with `rotation = p⁻¹ · g · p`.
pub fn rotation<B: HnnBase>(
    base: &B,
    g: &HnnElement<B::Elem>,
    k: usize,
) -> (HnnElement<B::Elem>, HnnElement<B::Elem>) {
    let p = prefix(base, g, k);
    (conj(base, &inv(base, &p), g), p)
}
