//! Element arithmetic: graphical reduction, canonical forms, first and last
//! letters, retractions, cyclic reduction and roots.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{valid_name, Graph};
use crate::vset::VertexSet;

/// A signed generator. Ordered by vertex, then `+1 < -1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(vertex: usize, inverse: bool) -> Letter {
        Letter { vertex: vertex as u16, inverse }
    }

    pub fn pos(vertex: usize) -> Letter {
        Letter::new(vertex, false)
    }

    pub fn v(self) -> usize {
        self.vertex as usize
    }

    pub fn inv(self) -> Letter {
        Letter { vertex: self.vertex, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.vertex, if self.inverse { "'" } else { "" })
    }
}

/// An arbitrary word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

/// A canonical graphically reduced word: the lexicographically least reduced
/// word representing its element. Two elements are equal iff their canonical
/// words are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|l| l.v()).collect()
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> impl fmt::Display + 'a {
        WordDisplay { graph, letters: &self.0 }
    }
}

struct WordDisplay<'a> {
    graph: &'a Graph,
    letters: &'a [Letter],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(l.v()))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// `g = conjugator · core · conjugator⁻¹` with `core` cyclically reduced and
/// `|g| = |core| + 2|conjugator|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub conjugator: ReducedWord,
    pub core: ReducedWord,
}

impl Graph {
    pub fn commutes(&self, a: Letter, b: Letter) -> bool {
        a.vertex == b.vertex || self.adjacent(a.v(), b.v())
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for (position, token) in text.split_whitespace().enumerate() {
            let bad = || Error::BadToken { token: token.to_string(), position };
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (token, false),
            };
            if !valid_name(name) {
                return Err(bad());
            }
            out.push(Letter::new(self.vertex(name)?, inverse));
        }
        Ok(Word(out))
    }

    /// Parses and reduces.
    pub fn element(&self, text: &str) -> Result<ReducedWord> {
        Ok(self.reduce(self.parse_word(text)?.letters()))
    }

    pub fn format(&self, letters: &[Letter]) -> String {
        WordDisplay { graph: self, letters }.to_string()
    }

    /// Cancels letters until no subword `v U v⁻¹` with `U` commuting with `v` remains.
    fn cancel(&self, letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::new();
        'next: for l in letters {
            let mut i = out.len();
            while i > 0 {
                let m = out[i - 1];
                if m.vertex == l.vertex {
                    if m.inverse != l.inverse {
                        out.remove(i - 1);
                        continue 'next;
                    }
                    break;
                }
                if !self.adjacent(m.v(), l.v()) {
                    break;
                }
                i -= 1;
            }
            out.push(l);
        }
        out
    }

    /// Greedy lexicographic normal form of a reduced word.
    fn lex_normal(&self, mut w: Vec<Letter>) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        while !w.is_empty() {
            let mut free = self.all();
            let mut best = 0;
            for (i, &l) in w.iter().enumerate() {
                if free.contains(l.v()) && l < w[best] {
                    best = i;
                }
                free = free.intersection(self.star(l.v()));
                if free.is_empty() {
                    break;
                }
            }
            out.push(w.remove(best));
        }
        out
    }

    pub fn reduce(&self, letters: &[Letter]) -> ReducedWord {
        ReducedWord(self.lex_normal(self.cancel(letters.iter().copied())))
    }

    pub fn reduce_word(&self, w: &Word) -> ReducedWord {
        self.reduce(&w.0)
    }

    pub fn mul(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
        if a.is_empty() {
            return b.clone();
        }
        if b.is_empty() {
            return a.clone();
        }
        ReducedWord(self.lex_normal(self.cancel(a.0.iter().chain(&b.0).copied())))
    }

    pub fn product<'a>(&self, parts: impl IntoIterator<Item = &'a ReducedWord>) -> ReducedWord {
        let cat: Vec<Letter> = parts.into_iter().flat_map(|p| p.0.iter().copied()).collect();
        self.reduce(&cat)
    }

    pub fn inv(&self, a: &ReducedWord) -> ReducedWord {
        let rev: Vec<Letter> = a.0.iter().rev().map(|l| l.inv()).collect();
        ReducedWord(self.lex_normal(rev))
    }

    /// `c · g · c⁻¹`.
    pub fn conj(&self, c: &ReducedWord, g: &ReducedWord) -> ReducedWord {
        let cat: Vec<Letter> =
            c.0.iter().copied().chain(g.0.iter().copied()).chain(c.0.iter().rev().map(|l| l.inv())).collect();
        self.reduce(&cat)
    }

    pub fn pow(&self, g: &ReducedWord, k: i64) -> ReducedWord {
        let base = if k < 0 { self.inv(g) } else { g.clone() };
        let cat: Vec<Letter> = std::iter::repeat(base.0.iter().copied()).take(k.unsigned_abs() as usize).flatten().collect();
        self.reduce(&cat)
    }

    pub fn word_eq(&self, a: &ReducedWord, b: &ReducedWord) -> bool {
        a == b
    }

    pub fn commute(&self, a: &ReducedWord, b: &ReducedWord) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn generator(&self, v: usize) -> ReducedWord {
        ReducedWord(vec![Letter::pos(v)])
    }

    /// Letters that begin some reduced word for `g`, sorted.
    pub fn first_letters(&self, g: &ReducedWord) -> Vec<Letter> {
        self.movable(g.0.iter().copied())
    }

    /// Letters that end some reduced word for `g`, sorted.
    pub fn last_letters(&self, g: &ReducedWord) -> Vec<Letter> {
        self.movable(g.0.iter().rev().copied())
    }

    fn movable(&self, letters: impl Iterator<Item = Letter>) -> Vec<Letter> {
        let mut free = self.all();
        let mut out = Vec::new();
        for l in letters {
            if free.contains(l.v()) && !out.contains(&l) {
                out.push(l);
            }
            free = free.intersection(self.star(l.v()));
            if free.is_empty() {
                break;
            }
        }
        out.sort();
        out
    }

    /// Image under the canonical retraction onto the special subgroup on `s`.
    pub fn retract(&self, s: VertexSet, g: &ReducedWord) -> ReducedWord {
        let kept: Vec<Letter> = g.0.iter().copied().filter(|l| s.contains(l.v())).collect();
        self.reduce(&kept)
    }

    pub fn in_special(&self, s: VertexSet, g: &ReducedWord) -> bool {
        g.support().is_subset(s)
    }

    /// A letter `a` with `g = a h a⁻¹` and `|h| = |g| - 2`, if any.
    fn peel(&self, g: &ReducedWord) -> Option<Letter> {
        let last = self.last_letters(g);
        self.first_letters(g).into_iter().find(|a| last.contains(&a.inv()))
    }

    pub fn is_cyclically_reduced(&self, g: &ReducedWord) -> bool {
        self.peel(g).is_none()
    }

    pub fn cyclic_reduce(&self, g: &ReducedWord) -> CyclicForm {
        let mut core = g.clone();
        let mut z = Vec::new();
        while let Some(a) = self.peel(&core) {
            let cat: Vec<Letter> =
                std::iter::once(a.inv()).chain(core.0.iter().copied()).chain(std::iter::once(a)).collect();
            core = self.reduce(&cat);
            z.push(a);
        }
        CyclicForm { conjugator: self.reduce(&z), core }
    }

    /// Exponent sum at each vertex.
    pub fn abelianize(&self, g: &ReducedWord) -> Vec<i64> {
        let mut v = vec![0; self.len()];
        for l in &g.0 {
            v[l.v()] += l.sign();
        }
        v
    }

    /// The unique `x` with `xⁿ = g`, if it exists.
    ///
    /// Roots are read off the cyclic core: if `x = w x₀ w⁻¹` with `x₀`
    /// cyclically reduced then `x₀ⁿ` is the core of `g`, and the occurrences of
    /// each vertex in `x₀` are the first `1/n` of its occurrences in the core.
    pub fn nth_root(&self, g: &ReducedWord, n: usize) -> Option<ReducedWord> {
        assert!(n >= 1, "root degree must be positive");
        if n == 1 || g.is_empty() {
            return Some(g.clone());
        }
        let cf = self.cyclic_reduce(g);
        let core = cf.core.letters();
        if core.len() % n != 0 {
            return None;
        }
        let mut counts = vec![0usize; self.len()];
        for l in core {
            counts[l.v()] += 1;
        }
        if counts.iter().any(|c| c % n != 0) {
            return None;
        }
        let mut quota: Vec<usize> = counts.iter().map(|c| c / n).collect();
        let mut u = Vec::with_capacity(core.len() / n);
        for &l in core {
            if quota[l.v()] > 0 {
                quota[l.v()] -= 1;
                u.push(l);
            }
        }
        let u = self.reduce(&u);
        if self.pow(&u, n as i64) != cf.core {
            return None;
        }
        Some(self.conj(&cf.conjugator, &u))
    }

    /// Every reduced word representing `g`, by closing under swaps of adjacent
    /// commuting letters.
    pub fn representatives(&self, g: &ReducedWord, cap: usize) -> Result<Vec<Vec<Letter>>> {
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(g.0.clone());
        queue.push_back(g.0.clone());
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                if w[i].vertex != w[i + 1].vertex && self.adjacent(w[i].v(), w[i + 1].v()) {
                    let mut s = w.clone();
                    s.swap(i, i + 1);
                    if seen.insert(s.clone()) {
                        if seen.len() > cap {
                            return Err(Error::Budget(format!("more than {cap} reduced representatives")));
                        }
                        queue.push_back(s);
                    }
                }
            }
            out.push(w);
        }
        Ok(out)
    }
}
