//! Property tests over randomly generated finite posets: the categorical
//! laws, the simplicial identities of nerves, functoriality of enumeration,
//! and the round trips the calculus is built on.

use pdcalc_core::fincat::{enumerate_functors, poset, Cat};
use pdcalc_core::hocat::{ho_nerve_is_identity, ho_presented, ho_quasicategory};
use pdcalc_core::lkan::unit_check;
use pdcalc_core::sset::{hom_set, is_quasicategory_up_to, nerve};
use pdcalc_core::textio::{parse_category, parse_sset, write_category, write_sset};
use pdcalc_core::Limits;
use proptest::prelude::*;
use std::sync::Arc;

/// A random poset on up to `max` elements, as the reflexive-transitive
/// closure of a random relation on a linear order (guaranteeing acyclicity).
fn arb_poset(max: usize) -> impl Strategy<Value = Cat> {
    (1..=max).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::ANY, n * n).prop_map(move |bits| {
            let mut leq = vec![vec![false; n]; n];
            for (a, row) in leq.iter_mut().enumerate() {
                row[a] = true;
            }
            for a in 0..n {
                for b in (a + 1)..n {
                    if bits[a * n + b] {
                        leq[a][b] = true;
                    }
                }
            }
            // Transitive closure; antisymmetry holds since edges go upward.
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if leq[a][k] && leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if leq[a][b] {
                        pairs.push((a, b));
                    }
                }
            }
            Arc::new(poset("rand", n, &pairs).expect("closure is a poset"))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_posets_satisfy_the_category_laws(j in arb_poset(5)) {
        j.validate().unwrap();
        prop_assert!(j.is_homotopy_finite());
    }

    #[test]
    fn nerves_of_random_posets_are_simplicial_quasicategories(j in arb_poset(4)) {
        let l = Limits::default();
        let nj = nerve(&j, l.bound);
        nj.validate().unwrap();
        prop_assert!(is_quasicategory_up_to(&nj, 3, &l).unwrap().ok);
    }

    #[test]
    fn functor_enumeration_is_valid_and_duplicate_free(
        j in arb_poset(3),
        k in arb_poset(3),
    ) {
        let l = Limits::default();
        let fs = enumerate_functors(&j, &k, &l).unwrap();
        for f in &fs {
            f.validate().unwrap();
        }
        let mut seen: Vec<_> = fs.iter().map(|f| (f.obj_map.clone(), f.mor_map.clone())).collect();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), fs.len());
    }

    #[test]
    fn nerve_is_fully_faithful_on_hom_sets(j in arb_poset(3), k in arb_poset(3)) {
        let l = Limits::default();
        let nj = nerve(&j, l.bound);
        let nk = nerve(&k, l.bound);
        prop_assert_eq!(
            hom_set(&nj, &nk, &l).unwrap().len(),
            enumerate_functors(&j, &k, &l).unwrap().len()
        );
    }

    #[test]
    fn ho_of_nerve_recovers_random_posets(j in arb_poset(4)) {
        let l = Limits::default();
        let nj = nerve(&j, l.bound);
        let exact = ho_quasicategory(&nj, &l).unwrap();
        prop_assert!(ho_nerve_is_identity(&j, &exact).unwrap());
        let presented = ho_presented(&nj, l.word_bound, &l).unwrap();
        prop_assert!(ho_nerve_is_identity(&j, &presented).unwrap());
    }

    #[test]
    fn unit_is_iso_on_nerves_of_random_posets(j in arb_poset(4)) {
        let l = Limits::default();
        let nj = nerve(&j, l.bound);
        prop_assert!(unit_check(&nj, &l).unwrap().pass);
    }

    #[test]
    fn documents_round_trip(j in arb_poset(4)) {
        let text = write_category(&j);
        let back = Arc::new(parse_category(&text).unwrap());
        prop_assert_eq!(back.key(), j.key());
        let nj = nerve(&j, 2);
        let stext = write_sset(&nj);
        let sback = parse_sset(&stext).unwrap();
        prop_assert_eq!(sback.key(), nj.key());
    }
}
