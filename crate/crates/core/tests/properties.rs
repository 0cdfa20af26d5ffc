use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posetkit::census::random_poset;
use posetkit::io::{format_poset, parse_poset};
use posetkit::realizability::{add_bottom, add_top, check_nonlocal_ufd};
use posetkit::surgery::{attach_below, glue, reduce_to_point, retract, split};
use posetkit::{is_isomorphic, MapProperty, NodeId, Poset, PosetMap};

fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_poset(&mut rng, n)
    })
}

/// A random total assignment between two posets.
fn arb_map(max_n: usize) -> impl Strategy<Value = PosetMap> {
    (arb_poset(max_n), arb_poset(max_n), any::<u64>()).prop_map(|(dom, cod, seed)| {
        let k = cod.len() as u64;
        let assign = dom
            .nodes()
            .map(|x| NodeId::new(((seed >> (x.index() * 3)) % k) as usize))
            .collect();
        PosetMap::new(dom, cod, assign).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_axioms_hold(p in arb_poset(10)) {
        for x in p.nodes() {
            prop_assert!(p.leq(x, x));
            for y in p.nodes() {
                prop_assert!(!(x != y && p.leq(x, y) && p.leq(y, x)));
                for z in p.nodes() {
                    prop_assert!(!(p.leq(x, y) && p.leq(y, z)) || p.leq(x, z));
                }
            }
        }
    }

    #[test]
    fn minimal_subsets_are_complete(p in arb_poset(10), mask in any::<u16>()) {
        let mins = p.minimals();
        let subset: Vec<NodeId> = mins
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &m)| m)
            .collect();
        prop_assert!(p.is_complete_subset(&subset));
    }

    #[test]
    fn file_format_round_trips(p in arb_poset(10)) {
        let back = parse_poset(&format_poset(&p, &[])).unwrap().poset;
        prop_assert_eq!(back, p);
    }

    #[test]
    fn map_hierarchy_is_nested(f in arb_map(5)) {
        let levels = [
            MapProperty::Map,
            MapProperty::Embedding,
            MapProperty::Saturated,
            MapProperty::DimensionPreserving,
            MapProperty::Coheight,
        ];
        let holds: Vec<bool> = levels.iter().map(|&l| f.violation(l).is_none()).collect();
        for w in holds.windows(2) {
            prop_assert!(!w[1] || w[0]);
        }
        if holds[4] {
            let image = f.cod().label_sorted(f.dom().minimals().iter().map(|&m| f.apply(m)).collect());
            prop_assert_eq!(image, f.cod().minimals());
        }
        if holds[2] {
            prop_assert!(f.is_isomorphism_onto_image());
            prop_assert!(f.image_saturated_subset().unwrap());
        }
    }

    #[test]
    fn extremum_inclusions_are_saturated(p in arb_poset(8)) {
        for c in [add_top(&p), add_bottom(&p)] {
            prop_assert!(c.inclusion.is_saturated_embedding());
            prop_assert!(c.inclusion.image_saturated_subset().unwrap());
            prop_assert_eq!(c.poset.dim(), p.dim() + 1);
        }
        prop_assert_eq!(add_top(&p).poset.maximals().len(), 1);
        prop_assert_eq!(add_bottom(&p).poset.minimals().len(), 1);
    }

    #[test]
    fn split_then_glue_is_identity(p in arb_poset(9)) {
        for u in p.minimals() {
            if p.upper_covers(u).len() >= 2 {
                let s = split(&p, u).unwrap();
                let back = glue(&s.poset, &s.glued).unwrap();
                prop_assert!(is_isomorphic(&back.quotient, &p).is_some());
            }
        }
    }

    #[test]
    fn attach_then_retract_is_identity(p in arb_poset(9), m in 1usize..4) {
        for u in p.minimals() {
            let grown = attach_below(&p, u, m).unwrap();
            let at = grown.require(p.label(u)).unwrap();
            let back = retract(&grown, at).unwrap();
            prop_assert!(back.same_labeled(&p));
        }
    }

    #[test]
    fn unique_max_posets_reduce(p in arb_poset(9)) {
        let top = add_top(&p).poset;
        let seq = reduce_to_point(&top).unwrap();
        prop_assert!(seq.verify().is_ok());
    }

    #[test]
    fn nonlocal_verdict_matches_conditions(p in arb_poset(8)) {
        let report = check_nonlocal_ufd(&p);
        let unique_min = p.minimals().len() == 1;
        let covers_ok = p.dim() < 2 || p.cover_pairs().iter().all(|&(x, y)| p.height(x) != 1 || p.height(y) == 2);
        prop_assert_eq!(report.verdict, unique_min && covers_ok);
    }
}
