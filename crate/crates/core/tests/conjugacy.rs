mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raagkit::conjugacy::{ConjCertificate, Solver};
use raagkit::VertexSet;

fn random_subset(rng: &mut impl Rng, all: VertexSet) -> VertexSet {
    all.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

#[test]
fn full_group_agrees_with_search_and_tower() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::new(&g);
        let x = random_element(&mut rng, &g, g.all(), 5);
        let y = if rng.gen_bool(0.5) {
            g.conj(&random_element(&mut rng, &g, g.all(), 4), &x)
        } else {
            random_element(&mut rng, &g, g.all(), 5)
        };
        let direct = s.conjugate_g(&x, &y).unwrap();
        let tower = s.conjugate_tower(&x, &y).unwrap();
        assert_eq!(direct.is_conjugate(), tower.is_conjugate(), "{} vs {}", x.display(&g), y.display(&g));
        for c in [&direct, &tower].into_iter().filter_map(ConjCertificate::conjugator) {
            assert_eq!(g.conj(c, &x), y);
        }
        if !direct.is_conjugate() {
            assert!(brute_conjugator(&g, g.all(), &x, &y, 3).is_none());
        }
    }
}

#[test]
fn subgroup_conjugacy_round_trip_and_refusals() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..150 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::new(&g);
        let b = random_subset(&mut rng, g.all());
        let x = random_element(&mut rng, &g, g.all(), 5);
        let y = if rng.gen_bool(0.5) {
            g.conj(&random_element(&mut rng, &g, b, 4), &x)
        } else {
            g.conj(&random_element(&mut rng, &g, g.all(), 3), &x)
        };
        let cert = s.conjugate_sub(b, &x, &y).unwrap();
        match cert.conjugator() {
            Some(c) => {
                assert!(c.support().is_subset(b));
                assert_eq!(g.conj(c, &x), y);
            }
            None => assert!(
                brute_conjugator(&g, b, &x, &y, 3).is_none(),
                "missed: B={} {} -> {}",
                g.format_set(b),
                x.display(&g),
                y.display(&g)
            ),
        }
    }
}

#[test]
fn centralizers_contain_every_short_commuting_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..80 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::new(&g);
        let x = random_element(&mut rng, &g, g.all(), 5);
        let b = if rng.gen_bool(0.5) { g.all() } else { random_subset(&mut rng, g.all()) };
        let cent = s.centralizer_in_special(b, &x).unwrap();
        for c in &cent.generators {
            assert!(c.support().is_subset(b));
            assert!(g.commute(c, &x));
        }
        for c in ball(&g, g.all(), 4) {
            if !c.support().is_subset(b) || !g.commute(&c, &x) {
                assert!(!cent.contains_bounded(&g, &c, 4));
            } else {
                assert!(
                    cent.contains_bounded(&g, &c, 4),
                    "C_{}({}) misses {}",
                    g.format_set(b),
                    x.display(&g),
                    c.display(&g)
                );
            }
        }
    }
}
