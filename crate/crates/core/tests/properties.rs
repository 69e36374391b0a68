use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qplane::algebra::{is_isotopic, is_latin, principal_loop_isotope, Isotopism, Quasigroup};
use qplane::biased::expansion_from_quasigroup;
use qplane::io;
use qplane::matroid::frame_matroid;
use qplane::plane::{enumerate_quadrangles, plane_from_ternary, plane_isomorphism, ternary_from_quadrangle};
use qplane::random::{random_biased_graph, random_biased_graph_with_digons, random_latin_square};
use qplane::ternary::{verify_axioms, TernaryRing};
use qplane::thicken::{inclusion_preserves_balance, thicken};

fn perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn square(n: usize, seed: u64) -> (Quasigroup, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_latin_square(n, &mut rng), rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_squares_are_latin_and_round_trip(n in 1usize..8, seed in any::<u64>()) {
        let (q, _) = square(n, seed);
        prop_assert!(is_latin(&q.rows()).unwrap());
        let back = io::parse_lsq(&io::write_lsq(&q, None)).unwrap();
        prop_assert_eq!(back.quasigroup, q);
    }

    #[test]
    fn isotopes_are_detected(n in 1usize..6, seed in any::<u64>()) {
        let (q, mut rng) = square(n, seed);
        let iso = Isotopism { alpha: perm(n, &mut rng), beta: perm(n, &mut rng), gamma: perm(n, &mut rng) };
        let r = q.isotope(&iso).unwrap();
        let found = is_isotopic(&q, &r).expect("isotopic by construction");
        prop_assert_eq!(q.isotope(&found).unwrap(), r);
    }

    #[test]
    fn principal_isotopes_are_loops(n in 1usize..7, seed in any::<u64>(), e in any::<prop::sample::Index>()) {
        let (q, _) = square(n, seed);
        let e = e.index(n);
        let (l, iso) = principal_loop_isotope(&q, e).unwrap();
        prop_assert_eq!(l.identity(), e);
        prop_assert_eq!(q.isotope(&iso).unwrap(), l.quasigroup().clone());
    }

    #[test]
    fn biased_graphs_round_trip(p in 0usize..4, q in 0usize..4, r in 0usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_biased_graph_with_digons([p, q, r], 0.6, &mut rng);
        let back = io::parse_bg3(&io::write_bg3(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn thickening_invariants(p in 0usize..5, q in 0usize..5, r in 0usize..5, d in 0.0f64..1.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_biased_graph(p, q, r, d, true, &mut rng);
        let res = thicken(&g).unwrap();
        prop_assert!(res.expansion.is_biased_expansion());
        prop_assert_eq!(res.expansion.gamma(), Some(res.gamma));
        if let Some(b) = res.bound {
            prop_assert!(res.gamma <= b);
        }
        prop_assert!(inclusion_preserves_balance(&g, &res));
        prop_assert_eq!(res.inclusion.len(), p + q + r);
    }

    #[test]
    fn frame_rank_is_submodular(n in 1usize..4, seed in any::<u64>(), full in any::<bool>()) {
        let (q, mut rng) = square(n, seed);
        let g = expansion_from_quasigroup(&q);
        let m = frame_matroid(&g, full).unwrap();
        let len = m.len();
        let pick = |rng: &mut ChaCha8Rng| -> BTreeSet<usize> {
            (0..len).filter(|_| rand::Rng::gen_bool(rng, 0.4)).collect()
        };
        for _ in 0..8 {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            let v = |s: &BTreeSet<usize>| m.rank(&s.iter().copied().collect::<Vec<_>>());
            let union: BTreeSet<usize> = a.union(&b).copied().collect();
            let inter: BTreeSet<usize> = a.intersection(&b).copied().collect();
            prop_assert!(v(&union) + v(&inter) <= v(&a) + v(&b));
            prop_assert!(v(&inter) <= v(&a) && v(&a) <= v(&union));
            prop_assert!(v(&a) <= a.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coordinatizing_any_quadrangle_rebuilds_the_plane(q in prop::sample::select(vec![(2usize, 1u32), (3, 1), (2, 2)]), pick in any::<prop::sample::Index>()) {
        let ring = TernaryRing::from_field(q.0, q.1).unwrap();
        let plane = plane_from_ternary(&ring).unwrap();
        let quads: Vec<_> = enumerate_quadrangles(&plane).collect();
        let quad = &quads[pick.index(quads.len())];
        let c = ternary_from_quadrangle(&plane, quad).unwrap();
        prop_assert!(verify_axioms(&c.ring).all_pass());
        let rebuilt = plane_from_ternary(&c.ring).unwrap();
        prop_assert!(plane_isomorphism(&plane, &rebuilt).is_some());
        let text = io::write_trn(&c.ring);
        prop_assert_eq!(io::parse_trn(&text).unwrap(), c.ring);
        let pln = io::parse_pln(&io::write_pln(&rebuilt)).unwrap();
        prop_assert_eq!(pln.incidence(), rebuilt.incidence());
    }
}
