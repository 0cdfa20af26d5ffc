//! Postconditions of the realizability constructions over whole populations.

use posetkit::census::enumerate_up_to;
use posetkit::realizability::{
    check_local_ufd, check_nonlocal_ufd, dim_plus_one, extension_poset, ViolationKind,
};
use posetkit::surgery::glue;
use posetkit::{is_isomorphic, Poset};

/// Heights of a chain-enumeration witness: some height-one node has a cover of height ≥ 3.
fn has_tall_cover(p: &Poset) -> bool {
    p.cover_pairs()
        .iter()
        .any(|&(x, y)| p.height(x) == 1 && p.height(y) >= 3)
}

#[test]
fn dim_plus_one_structure_holds_everywhere() {
    // Dimension, saturation and the unique bottom hold for every poset; the non-local
    // verdict is covered separately.
    for p in enumerate_up_to(5).unwrap().iter().flatten() {
        let out = dim_plus_one(p);
        assert_eq!(out.poset.dim(), p.dim() + 1, "{p:?}");
        assert_eq!(out.widened.dim(), p.dim());
        assert_eq!(out.poset.minimals().len(), 1);
        assert!(out.inclusion.is_saturated_embedding());
        assert!(out.inclusion.image_saturated_subset().unwrap());
    }
}

/// A height-zero node `u` sharing a height-one cover `w` with a risky minimal node `x`
/// ends up at height one under a cover of height three.
#[test]
fn dim_plus_one_counterexample() {
    let p = Poset::build(
        ["u", "x", "v", "w", "y"],
        &[("u", "v"), ("v", "y"), ("x", "y"), ("x", "w"), ("u", "w")],
    )
    .unwrap();
    let out = dim_plus_one(&p);
    let report = check_nonlocal_ufd(&out.poset);
    assert!(!report.verdict);
    assert_eq!(report.violations.len(), 1);
    let v = &report.violations[0];
    assert_eq!(v.kind, ViolationKind::BadCover);
    assert_eq!(v.nodes, ["u", "w"]);
    assert_eq!(v.heights, [1, 3]);
}

#[test]
fn extension_postconditions() {
    let mut checked = 0;
    for p in enumerate_up_to(6).unwrap().iter().flatten() {
        if p.minimals().len() != 1 || p.dim() < 2 {
            continue;
        }
        checked += 1;
        let ext = extension_poset(p).unwrap();
        let xe = &ext.poset;
        let height_one = p.nodes().filter(|&x| p.height(x) == 1).count();
        assert_eq!(xe.minimals().len(), height_one);
        assert_eq!(ext.pairing.len(), height_one);
        for &(new_i, _) in &ext.pairing {
            for &(_, old_j) in &ext.pairing {
                let target = xe.require(p.label(old_j)).unwrap();
                let paired = ext.pairing.iter().any(|&(n, o)| n == new_i && o == old_j);
                assert_eq!(xe.covers(new_i, target), paired);
            }
        }
        let back = glue(xe, &xe.minimals()).unwrap();
        assert!(is_isomorphic(&back.quotient, p).is_some());
        assert_eq!(xe.dim(), p.dim());
        assert!(ext.collapse.is_poset_map());
        assert!(ext.collapse.is_surjective());
    }
    assert!(checked > 0);
}

#[test]
fn bad_cover_only_failures_have_tall_covers() {
    for p in enumerate_up_to(6).unwrap().iter().flatten() {
        let r = check_local_ufd(p);
        let only_bad = !r.verdict
            && r.violations
                .iter()
                .all(|v| v.kind == ViolationKind::BadCover);
        if only_bad {
            assert!(p.dim() >= 2);
            assert!(has_tall_cover(p));
            for v in &r.violations {
                assert_eq!(v.heights[0], 1);
                assert!(v.heights[1] >= 3);
            }
        }
        if p.dim() <= 1 {
            let extremes = p.minimals().len() == 1 && p.maximals().len() == 1;
            assert_eq!(r.verdict, extremes);
        }
    }
}
