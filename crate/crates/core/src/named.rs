//! Small posets that recur in tests, the corpus and the CLI.

use crate::poset::Poset;

/// `m < a, b < t`.
pub fn diamond() -> Poset {
    Poset::build(
        ["m", "a", "b", "t"],
        &[("m", "a"), ("m", "b"), ("a", "t"), ("b", "t")],
    )
    .expect("diamond is a poset")
}

/// Two incomparable nodes `x`, `y`.
pub fn antichain2() -> Poset {
    Poset::antichain(&["x", "y"]).expect("antichain is a poset")
}

/// Unique bottom `10`; short branch `10 < 7 < 6`; long branch `10 < 12 < 9 < 8 < 6`.
pub fn figure_1a() -> Poset {
    Poset::build(
        ["6", "7", "8", "9", "10", "12"],
        &[
            ("10", "7"),
            ("7", "6"),
            ("10", "12"),
            ("12", "9"),
            ("9", "8"),
            ("8", "6"),
        ],
    )
    .expect("figure 1a is a poset")
}

/// Member `k ≥ 1` of the lengthened family: the long branch becomes
/// `10 < 13 < 12 < d1 < … < d(k-1) < 9 < 8 < 6`, so the top sits at height `k + 4`.
pub fn figure_1b(k: usize) -> Poset {
    assert!(k >= 1, "family members start at k = 1");
    let mut long: Vec<String> = ["10", "13", "12"].iter().map(|s| s.to_string()).collect();
    long.extend((1..k).map(|i| format!("d{i}")));
    long.extend(["9", "8", "6"].iter().map(|s| s.to_string()));

    let mut labels = long.clone();
    labels.push("7".to_string());
    let mut generators: Vec<(String, String)> = long
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    generators.push(("10".into(), "7".into()));
    generators.push(("7".into(), "6".into()));
    Poset::build(labels, &generators).expect("figure 1b member is a poset")
}
