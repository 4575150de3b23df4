mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raagkit::conjugacy::Solver;
use raagkit::special::{conj_special_intersection, dc_member, fold_cosets, intersect_parabolics, Parabolic};
use raagkit::{Graph, ReducedWord, VertexSet};

fn random_subset(rng: &mut impl Rng, all: VertexSet) -> VertexSet {
    all.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Some `a ∈ ⟨A⟩` of length at most `radius` with `x⁻¹a⁻¹y ∈ ⟨B⟩`.
fn brute_dc(g: &Graph, a: VertexSet, x: &ReducedWord, b: VertexSet, y: &ReducedWord, radius: usize) -> Option<ReducedWord> {
    ball(g, a, radius).into_iter().find(|u| g.product([&g.inv(x), &g.inv(u), y]).support().is_subset(b))
}

#[test]
fn double_cosets_agree_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut positives = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::new(&g);
        let (a, b) = (random_subset(&mut rng, g.all()), random_subset(&mut rng, g.all()));
        let x = random_element(&mut rng, &g, g.all(), 4);
        let y = if rng.gen_bool(0.5) {
            let u = random_element(&mut rng, &g, a, 3);
            let v = random_element(&mut rng, &g, b, 3);
            g.product([&u, &x, &v])
        } else {
            random_element(&mut rng, &g, g.all(), 5)
        };
        let found = dc_member(&s, a, &x, b, &y).unwrap();
        if let Some((u, v)) = &found {
            positives += 1;
            assert!(u.support().is_subset(a) && v.support().is_subset(b));
            assert_eq!(g.product([u, &x, v]), y);
        }
        if brute_dc(&g, a, &x, b, &y, 3).is_some() {
            assert!(found.is_some(), "missed {} in A x B", y.display(&g));
        }
    }
    assert!(positives > 50);
}

#[test]
fn parabolic_intersections_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.4);
        let p = Parabolic::new(random_element(&mut rng, &g, g.all(), 3), random_subset(&mut rng, g.all()));
        let q = Parabolic::new(random_element(&mut rng, &g, g.all(), 3), random_subset(&mut rng, g.all()));
        let r = intersect_parabolics(&g, &p, &q).unwrap();
        assert!(p.contains_parabolic(&g, &r) && q.contains_parabolic(&g, &r));
        for w in ball(&g, g.all(), 3) {
            if p.contains(&g, &w) && q.contains(&g, &w) {
                assert!(r.contains(&g, &w), "{} lies in both", w.display(&g));
            }
        }
    }
}

#[test]
fn conjugated_special_intersection_matches_parabolics() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::new(&g);
        let (a, b) = (random_subset(&mut rng, g.all()), random_subset(&mut rng, g.all()));
        let x = random_element(&mut rng, &g, g.all(), 4);
        let fast = conj_special_intersection(&s, a, &x, b).unwrap();
        let slow = intersect_parabolics(&g, &Parabolic::special(a), &Parabolic::new(x.clone(), b)).unwrap();
        assert!(fast.same_as(&g, &slow), "{} vs {}", fast.display(&g), slow.display(&g));
    }
}

#[test]
fn folded_cosets_contain_every_common_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut nonempty = 0;
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::new(&g);
        let k = rng.gen_range(1..=3);
        // half the time every coset is forced to contain a common element
        let common = random_element(&mut rng, &g, g.all(), 2);
        let cosets: Vec<_> = (0..k)
            .map(|_| {
                let h = random_subset(&mut rng, g.all());
                let u = random_element(&mut rng, &g, g.all(), 2);
                let v = if rng.gen_bool(0.5) {
                    let inner = random_element(&mut rng, &g, h, 2);
                    g.product([&g.inv(&inner), &g.inv(&u), &common])
                } else {
                    random_element(&mut rng, &g, g.all(), 2)
                };
                (u, h, v)
            })
            .collect();
        let in_all = |e: &ReducedWord| cosets.iter().all(|(u, h, v)| g.product([&g.inv(u), e, &g.inv(v)]).support().is_subset(*h));
        match fold_cosets(&s, &cosets).unwrap() {
            Some((w, z)) => {
                nonempty += 1;
                assert!(in_all(&z));
                for gen in w.generators(&g) {
                    assert!(in_all(&g.mul(&gen, &z)));
                }
                for e in ball(&g, g.all(), 4) {
                    if in_all(&e) {
                        assert!(w.contains(&g, &g.mul(&e, &g.inv(&z))));
                    }
                }
            }
            None => assert!(ball(&g, g.all(), 4).iter().all(|e| !in_all(e))),
        }
    }
    assert!(nonempty > 10);
}

#[test]
fn path_examples() {
    let g = path3();
    let s = Solver::new(&g);
    let set = |t: &str| g.parse_set(t).unwrap();
    let p = conj_special_intersection(&s, set("a b"), &ReducedWord::identity(), set("b c")).unwrap();
    assert!(p.same_as(&g, &Parabolic::special(set("b"))));
    let p = conj_special_intersection(&s, set("a b"), &g.element("c").unwrap(), set("b")).unwrap();
    assert!(p.same_as(&g, &Parabolic::special(set("b"))));
    let p = conj_special_intersection(&s, set("a"), &g.element("c").unwrap(), set("a")).unwrap();
    assert!(p.base.is_empty());
}
