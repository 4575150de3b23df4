#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::Rng;
use raagkit::{Graph, Letter, ReducedWord, VertexSet};

pub const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((NAMES[i], NAMES[j]));
            }
        }
    }
    Graph::new(&NAMES[..n], &edges).unwrap()
}

pub fn path3() -> Graph {
    Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
}

pub fn free2() -> Graph {
    Graph::new::<&str>(&["x", "y"], &[]).unwrap()
}

pub fn square() -> Graph {
    Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap()
}

pub fn random_letters(rng: &mut impl Rng, within: VertexSet, len: usize) -> Vec<Letter> {
    let vs: Vec<usize> = within.iter().collect();
    if vs.is_empty() {
        return Vec::new();
    }
    (0..len).map(|_| Letter::new(vs[rng.gen_range(0..vs.len())], rng.gen_bool(0.5))).collect()
}

pub fn random_element(rng: &mut impl Rng, g: &Graph, within: VertexSet, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    g.reduce(&random_letters(rng, within, len))
}

/// All elements of `⟨within⟩` of word length at most `radius`.
pub fn ball(g: &Graph, within: VertexSet, radius: usize) -> Vec<ReducedWord> {
    let letters: Vec<Letter> = within.iter().flat_map(|v| [Letter::new(v, false), Letter::new(v, true)]).collect();
    let mut seen = HashSet::from([ReducedWord::identity()]);
    let mut layer = vec![ReducedWord::identity()];
    let mut out = layer.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let x = g.mul(w, &g.reduce(&[l]));
                if seen.insert(x.clone()) {
                    next.push(x.clone());
                    out.push(x);
                }
            }
        }
        layer = next;
    }
    out
}

/// Meet-in-the-middle search for `c ∈ ⟨within⟩` with `cgc⁻¹ = f` and
/// `|c| ≤ 2·radius`.
pub fn brute_conjugator(g: &Graph, within: VertexSet, x: &ReducedWord, y: &ReducedWord, radius: usize) -> Option<ReducedWord> {
    let b = ball(g, within, radius);
    let mut right: HashMap<ReducedWord, ReducedWord> = HashMap::new();
    for c2 in &b {
        right.entry(g.conj(c2, x)).or_insert_with(|| c2.clone());
    }
    for c1 in &b {
        let m = g.conj(&g.inv(c1), y);
        if let Some(c2) = right.get(&m) {
            return Some(g.mul(c1, c2));
        }
    }
    None
}

/// How [`naive_reduce`] picks the next cancelling pair.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Innermost,
    Outermost,
    Random(u64),
}

pub const STRATEGIES: [Strategy; 10] = [
    Strategy::Leftmost,
    Strategy::Rightmost,
    Strategy::Innermost,
    Strategy::Outermost,
    Strategy::Random(1),
    Strategy::Random(2),
    Strategy::Random(3),
    Strategy::Random(4),
    Strategy::Random(5),
    Strategy::Random(6),
];

/// Pairs `(i, j)` with `w[i] = v^e`, `w[j] = v^-e` and every letter strictly
/// between them on a vertex adjacent to `v`.
pub fn cancelling_pairs(g: &Graph, w: &[Letter]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[j].v() == w[i].v() {
                if w[j].inverse != w[i].inverse {
                    out.push((i, j));
                }
                break;
            }
            if !g.adjacent(w[i].v(), w[j].v()) {
                break;
            }
        }
    }
    out
}

/// Deletes cancelling pairs one at a time until none is left.
pub fn naive_reduce(g: &Graph, letters: &[Letter], strategy: Strategy) -> Vec<Letter> {
    use rand::SeedableRng;
    let mut rng = match strategy {
        Strategy::Random(s) => Some(rand_chacha::ChaCha8Rng::seed_from_u64(s)),
        _ => None,
    };
    let mut w = letters.to_vec();
    loop {
        let pairs = cancelling_pairs(g, &w);
        if pairs.is_empty() {
            return w;
        }
        let (i, j) = match strategy {
            Strategy::Leftmost => pairs[0],
            Strategy::Rightmost => *pairs.iter().max_by_key(|p| p.1).unwrap(),
            Strategy::Innermost => *pairs.iter().min_by_key(|p| p.1 - p.0).unwrap(),
            Strategy::Outermost => *pairs.iter().max_by_key(|p| p.1 - p.0).unwrap(),
            Strategy::Random(_) => pairs[rng.as_mut().unwrap().gen_range(0..pairs.len())],
        };
        w.remove(j);
        w.remove(i);
    }
}

/// Repeatedly takes the least letter that commutes with everything before it.
pub fn greedy_lex(g: &Graph, letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    let mut out = Vec::new();
    while !w.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..w.len() {
            let movable = (0..i).all(|j| w[j].v() != w[i].v() && g.adjacent(w[j].v(), w[i].v()));
            if movable && best.map_or(true, |b| w[i] < w[b]) {
                best = Some(i);
            }
        }
        out.push(w.remove(best.unwrap()));
    }
    out
}

/// Every word reachable by swapping adjacent commuting letters; `None` past `cap`.
pub fn swap_class(g: &Graph, letters: &[Letter], cap: usize) -> Option<HashSet<Vec<Letter>>> {
    let mut seen = HashSet::from([letters.to_vec()]);
    let mut queue = vec![letters.to_vec()];
    while let Some(w) = queue.pop() {
        for i in 0..w.len().saturating_sub(1) {
            if w[i].v() != w[i + 1].v() && g.adjacent(w[i].v(), w[i + 1].v()) {
                let mut x = w.clone();
                x.swap(i, i + 1);
                if seen.insert(x.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push(x);
                }
            }
        }
    }
    Some(seen)
}

pub fn support_of(letters: &[Letter]) -> VertexSet {
    letters.iter().map(|l| l.v()).collect()
}

/// Meet-in-the-middle search for `c` with `psi(c) = 0`, `cxc⁻¹ = y` and
/// `|c| ≤ 2·radius`.
pub fn brute_conjugator_in_kernel(
    g: &Graph,
    psi: impl Fn(&ReducedWord) -> i64,
    x: &ReducedWord,
    y: &ReducedWord,
    radius: usize,
) -> Option<ReducedWord> {
    let b = ball(g, g.all(), radius);
    let mut right: HashMap<(ReducedWord, i64), ReducedWord> = HashMap::new();
    for c2 in &b {
        right.entry((g.conj(c2, x), psi(c2))).or_insert_with(|| c2.clone());
    }
    for c1 in &b {
        let m = g.conj(&g.inv(c1), y);
        if let Some(c2) = right.get(&(m, -psi(c1))) {
            return Some(g.mul(c1, c2));
        }
    }
    None
}

pub fn all_perms(d: usize) -> Vec<raagkit::quotient::Perm> {
    fn rec(prefix: &mut Vec<u32>, d: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for x in 0..d as u32 {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(prefix, d, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), d, &mut out);
    out.into_iter().map(|p| raagkit::quotient::Perm::from_images(p).unwrap()).collect()
}

/// A random homomorphism to `S_d`: each vertex in turn gets a random
/// permutation commuting with the images of its earlier neighbours.
pub fn random_hom(rng: &mut impl Rng, g: &Graph, d: usize) -> raagkit::quotient::FiniteHom {
    let perms = all_perms(d);
    let mut images: Vec<(usize, raagkit::quotient::Perm)> = Vec::new();
    for v in 0..g.len() {
        let ok: Vec<_> = perms
            .iter()
            .filter(|p| images.iter().all(|(u, q)| !g.adjacent(*u, v) || p.commutes_with(q)))
            .collect();
        images.push((v, ok[rng.gen_range(0..ok.len())].clone()));
    }
    raagkit::quotient::FiniteHom::make_hom(g, g.all(), d, &images).unwrap()
}

/// Distinct elements `q₀ sᵉ¹ q₁ ⋯` with at most `max_syllables` stable letters
/// of exponent ±1, in normal form.
pub fn hnn_elements(p: &raagkit::hnn::HnnGroup, max_syllables: usize) -> Vec<raagkit::hnn::HnnElement<usize>> {
    let order = p.base().order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<(usize, Vec<(i64, usize)>)> = (0..order).map(|h| (h, Vec::new())).collect();
    for depth in 0..=max_syllables {
        for (h, syl) in &layer {
            let x = p.normal_form(&p.elem(*h, syl));
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
        if depth == max_syllables {
            break;
        }
        let mut next = Vec::new();
        for (h, syl) in &layer {
            for e in [1, -1] {
                for q in 0..order {
                    let mut s = syl.clone();
                    s.push((e, q));
                    next.push((*h, s));
                }
            }
        }
        layer = next;
    }
    out
}

/// Normal forms of `c g c⁻¹` for every listed conjugator `c`.
pub fn hnn_orbit(
    p: &raagkit::hnn::HnnGroup,
    g: &raagkit::hnn::HnnElement<usize>,
    conjugators: &[raagkit::hnn::HnnElement<usize>],
) -> HashSet<raagkit::hnn::HnnElement<usize>> {
    conjugators.iter().map(|c| p.normal_form(&raagkit::hnn::conj(p, c, g))).collect()
}
