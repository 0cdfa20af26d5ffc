//! Gluing along complete subsets, retraction at simple nodes, height-zero splitting and
//! reduction sequences down to a single point.

use std::fmt;

use crate::error::{PosetError, Result};
use crate::iso::is_isomorphic;
use crate::maps::PosetMap;
use crate::poset::{fresh_label, NodeId, Poset};

/// A gluing `g: X → Y` of `X` along `glued`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingResult {
    pub quotient: Poset,
    pub map: PosetMap,
    /// The glued subset of `X`, label-sorted.
    pub glued: Vec<NodeId>,
}

impl GluingResult {
    /// Whether only minimal nodes were glued.
    pub fn is_height_zero(&self) -> bool {
        let x = self.map.dom();
        self.glued.iter().all(|&c| x.is_minimal(c))
    }

    /// The node every member of the glued subset lands on.
    pub fn glued_node(&self) -> NodeId {
        self.map.apply(self.glued[0])
    }
}

/// A height-zero splitting `X` of `Y`, with the gluing map `X → Y` that undoes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub poset: Poset,
    /// Replacement nodes of the split node, one per cover, in cover label order.
    pub glued: Vec<NodeId>,
    pub map: PosetMap,
}

/// Glues the complete subset `subset` of `x` to a single node.
///
/// The glued node is labeled by the sorted member labels joined with `+`.
pub fn glue(x: &Poset, subset: &[NodeId]) -> Result<GluingResult> {
    for &c in subset {
        x.check_node(c)?;
    }
    let glued = x.label_sorted(subset.to_vec());
    if glued.is_empty() {
        return Err(PosetError::EmptySelection);
    }
    if !x.is_complete_subset(&glued) {
        return Err(PosetError::NotCompleteSubset);
    }
    let mut inside = vec![false; x.len()];
    for &c in &glued {
        inside[c.index()] = true;
    }

    let base = glued
        .iter()
        .map(|&c| x.label(c))
        .collect::<Vec<_>>()
        .join("+");
    let glued_label = fresh_label(&base, |l| x.node(l).is_some_and(|n| !inside[n.index()]));

    // The glued node takes the position of the first member in positional order.
    let first = glued.iter().map(|c| c.index()).min().expect("nonempty");
    let mut labels = Vec::new();
    let mut to_quotient = vec![0usize; x.len()];
    let mut star = None;
    for node in x.nodes() {
        if inside[node.index()] {
            if node.index() == first {
                star = Some(labels.len());
                labels.push(glued_label.clone());
            }
        } else {
            to_quotient[node.index()] = labels.len();
            labels.push(x.label(node).to_string());
        }
    }
    let star = star.expect("first member is inside");
    for &c in &glued {
        to_quotient[c.index()] = star;
    }

    let k = labels.len();
    let mut leq = vec![false; k * k];
    for a in x.nodes() {
        for b in x.nodes() {
            if glued_order(x, &glued, a, b) {
                leq[to_quotient[a.index()] * k + to_quotient[b.index()]] = true;
            }
        }
    }
    let quotient = Poset::from_order(labels, leq).map_err(|e| match e {
        PosetError::CycleDetected(a, b) => PosetError::QuotientNotAntisymmetric(a, b),
        other => other,
    })?;
    let assign = to_quotient.into_iter().map(NodeId::new).collect();
    let map = PosetMap::new(x.clone(), quotient.clone(), assign)?;
    Ok(GluingResult {
        quotient,
        map,
        glued,
    })
}

/// `a ≤ b`, or `a` lies below some member of `glued` and `b` above some member.
fn glued_order(x: &Poset, glued: &[NodeId], a: NodeId, b: NodeId) -> bool {
    x.leq(a, b) || (glued.iter().any(|&s| x.leq(a, s)) && glued.iter().any(|&t| x.leq(t, b)))
}

/// Checks that `g: X → Y` is a gluing of `X` along `glued`: `g` is surjective, constant on
/// `glued`, identifies no other pair, and `g(a) ≤ g(b)` exactly when `a ≤ b` or
/// `a ≤ s`, `t ≤ b` for some `s, t` in `glued`.
pub fn verify_gluing(x: &Poset, glued: &[NodeId], y: &Poset, g: &[NodeId]) -> bool {
    if g.len() != x.len()
        || glued.is_empty()
        || glued.iter().any(|c| c.index() >= x.len())
        || g.iter().any(|v| v.index() >= y.len())
        || !x.is_complete_subset(glued)
    {
        return false;
    }
    let mut hit = vec![false; y.len()];
    for v in g {
        hit[v.index()] = true;
    }
    if hit.contains(&false) {
        return false;
    }
    let inside = |n: NodeId| glued.contains(&n);
    let constant = glued.iter().all(|&c| g[c.index()] == g[glued[0].index()]);
    let identifies_only_glued = x.nodes().all(|a| {
        x.nodes()
            .all(|b| a == b || g[a.index()] != g[b.index()] || (inside(a) && inside(b)))
    });
    constant
        && identifies_only_glued
        && x.nodes().all(|a| {
            x.nodes()
                .all(|b| y.leq(g[a.index()], g[b.index()]) == glued_order(x, glued, a, b))
        })
}

/// [`verify_gluing`] applied to a map.
pub fn verify_gluing_map(glued: &[NodeId], map: &PosetMap) -> bool {
    verify_gluing(map.dom(), glued, map.cod(), map.assign())
}

pub fn is_height_zero_gluing(result: &GluingResult) -> bool {
    result.is_height_zero()
}

/// Number of height-zero nodes with at least two covers.
pub fn n_value(y: &Poset) -> usize {
    y.nodes()
        .filter(|&u| y.height(u) == 0 && y.upper_covers(u).len() >= 2)
        .count()
}

/// Height-one nodes `x` that are the only cover of every node below them, label-sorted.
pub fn simple_nodes(x: &Poset) -> Result<Vec<NodeId>> {
    if x.dim() == 0 {
        return Err(PosetError::ZeroDimensional);
    }
    let simple = x
        .nodes()
        .filter(|&s| x.height(s) == 1)
        .filter(|&s| {
            x.nodes()
                .filter(|&u| x.lt(u, s))
                .all(|u| x.upper_covers(u) == [s])
        })
        .collect();
    Ok(x.label_sorted(simple))
}

/// `D_x = {u : u < x}`, label-sorted.
pub fn strict_down_set(x: &Poset, node: NodeId) -> Vec<NodeId> {
    x.label_sorted(x.nodes().filter(|&u| x.lt(u, node)).collect())
}

/// Removes everything strictly below the simple node `node`.
pub fn retract(x: &Poset, node: NodeId) -> Result<Poset> {
    x.check_node(node)?;
    if !simple_nodes(x)?.contains(&node) {
        return Err(PosetError::NotSimpleNode(x.label(node).to_string()));
    }
    let below = strict_down_set(x, node);
    let keep: Vec<NodeId> = x.nodes().filter(|n| !below.contains(n)).collect();
    Ok(x.induced_subposet(&keep)?.poset)
}

/// Splits the minimal node `u` into one fresh minimal node per cover of `u`.
///
/// Replacement `i` sits below exactly what the `i`-th cover (label order) sits below,
/// so each replacement has a single cover.
pub fn split(y: &Poset, u: NodeId) -> Result<Splitting> {
    y.check_node(u)?;
    if !y.is_minimal(u) {
        return Err(PosetError::NotMinimal(y.label(u).to_string()));
    }
    let covers = y.label_sorted(y.upper_covers(u));
    if covers.len() < 2 {
        return Err(PosetError::FewerThanTwoCovers(y.label(u).to_string()));
    }

    let mut fresh: Vec<String> = Vec::with_capacity(covers.len());
    for i in 1..=covers.len() {
        let label = fresh_label(&format!("{}{i}", y.label(u)), |l| {
            y.node(l).is_some() || fresh.iter().any(|f| f == l)
        });
        fresh.push(label);
    }

    // Source node in `y` for each position of the split poset; replacement `i` is
    // `(u, Some(i))`.
    let mut slots: Vec<(NodeId, Option<usize>)> = Vec::with_capacity(y.len() + covers.len());
    for node in y.nodes() {
        if node == u {
            slots.extend((0..covers.len()).map(|i| (u, Some(i))));
        } else {
            slots.push((node, None));
        }
    }
    let labels: Vec<String> = slots
        .iter()
        .map(|&(node, rep)| match rep {
            Some(i) => fresh[i].clone(),
            None => y.label(node).to_string(),
        })
        .collect();

    let k = slots.len();
    let mut leq = vec![false; k * k];
    for (i, &(a, ra)) in slots.iter().enumerate() {
        for (j, &(b, rb)) in slots.iter().enumerate() {
            leq[i * k + j] = match (ra, rb) {
                (Some(p), Some(q)) => p == q,
                (Some(p), None) => y.leq(covers[p], b),
                (None, Some(_)) => false,
                (None, None) => y.leq(a, b),
            };
        }
    }
    let poset = Poset::from_order(labels, leq)?;
    let glued = slots
        .iter()
        .enumerate()
        .filter(|(_, (_, rep))| rep.is_some())
        .map(|(i, _)| NodeId::new(i))
        .collect::<Vec<_>>();
    let glued = poset.label_sorted(glued);
    let assign = slots.iter().map(|&(node, _)| node).collect();
    let map = PosetMap::new(poset.clone(), y.clone(), assign)?;
    Ok(Splitting { poset, glued, map })
}

/// Adds `m` fresh nodes below the minimal node `p`, each below exactly the up-set of `p`.
/// `p` becomes a simple node and retracting it recovers `x`.
pub fn attach_below(x: &Poset, p: NodeId, m: usize) -> Result<Poset> {
    x.check_node(p)?;
    if !x.is_minimal(p) {
        return Err(PosetError::NotMinimal(x.label(p).to_string()));
    }
    if m == 0 {
        return Err(PosetError::PreconditionFailed(
            "at least one node must be attached".into(),
        ));
    }
    let n = x.len();
    let mut labels = x.labels().to_vec();
    for i in 1..=m {
        let label = fresh_label(&format!("q{i}"), |l| labels.iter().any(|e| e == l));
        labels.push(label);
    }
    let k = n + m;
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = match (i < n, j < n) {
                (true, true) => x.leq(NodeId::new(i), NodeId::new(j)),
                (false, true) => x.leq(p, NodeId::new(j)),
                (true, false) => false,
                (false, false) => i == j,
            };
        }
    }
    Poset::from_order(labels, leq)
}

/// One link of a reduction sequence, read from the larger poset down to the smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// The minimal node `node` of the larger poset was split into `replacements`.
    Split {
        node: String,
        replacements: Vec<String>,
    },
    /// The simple node `node` of the larger poset lost everything below it.
    Retract {
        node: String,
        removed: Vec<String>,
    },
    Identity,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Split { node, replacements } => {
                write!(f, "split {node} -> {}", replacements.join(" "))
            }
            ReductionStep::Retract { node, removed } => {
                write!(f, "retract {node} removing {}", removed.join(" "))
            }
            ReductionStep::Identity => f.write_str("identity"),
        }
    }
}

/// `posets[0]` is a point and the last entry is the reduced poset; `steps[i]` explains how
/// `posets[i]` arises from `posets[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSequence {
    pub posets: Vec<Poset>,
    pub steps: Vec<ReductionStep>,
}

/// Reduces a poset with a unique maximal node to a point.
///
/// While `n > 0` the label-least minimal node with two or more covers is split; otherwise
/// every height-one node is simple and the label-least one is retracted. Retraction drops
/// the number of positive-height nodes by one and splitting keeps it while lowering `n`,
/// so the loop terminates.
pub fn reduce_to_point(x: &Poset) -> Result<ReductionSequence> {
    if x.maximals().len() != 1 {
        return Err(PosetError::NoUniqueMaximal);
    }
    let mut down = vec![x.clone()];
    let mut steps = Vec::new();
    loop {
        let cur = down.last().expect("nonempty");
        if cur.len() == 1 {
            break;
        }
        let (next, step) = if n_value(cur) > 0 {
            let u = cur
                .minimals()
                .into_iter()
                .find(|&u| cur.upper_covers(u).len() >= 2)
                .expect("n > 0");
            let s = split(cur, u)?;
            let step = ReductionStep::Split {
                node: cur.label(u).to_string(),
                replacements: s
                    .glued
                    .iter()
                    .map(|&r| s.poset.label(r).to_string())
                    .collect(),
            };
            (s.poset, step)
        } else {
            let node = *simple_nodes(cur)?
                .first()
                .ok_or_else(|| PosetError::PreconditionFailed("no simple node".into()))?;
            let step = ReductionStep::Retract {
                node: cur.label(node).to_string(),
                removed: strict_down_set(cur, node)
                    .into_iter()
                    .map(|u| cur.label(u).to_string())
                    .collect(),
            };
            (retract(cur, node)?, step)
        };
        down.push(next);
        steps.push(step);
    }
    down.reverse();
    steps.reverse();
    Ok(ReductionSequence {
        posets: down,
        steps,
    })
}

fn replay_failure(i: usize, msg: impl fmt::Display) -> PosetError {
    PosetError::PreconditionFailed(format!("step {i}: {msg}"))
}

impl ReductionSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays every step against the definitions and checks that its inverse rebuilds
    /// the larger poset up to isomorphism.
    pub fn verify(&self) -> Result<()> {
        let first = self
            .posets
            .first()
            .ok_or_else(|| PosetError::PreconditionFailed("sequence has no posets".into()))?;
        if first.len() != 1 {
            return Err(PosetError::PreconditionFailed(
                "sequence does not start at a point".into(),
            ));
        }
        if self.steps.len() + 1 != self.posets.len() {
            return Err(PosetError::PreconditionFailed(
                "step count does not match poset count".into(),
            ));
        }
        for (i, step) in self.steps.iter().enumerate() {
            let small = &self.posets[i];
            let large = &self.posets[i + 1];
            match step {
                ReductionStep::Identity => {
                    if !small.same_labeled(large) {
                        return Err(replay_failure(i, "identity step changes the poset"));
                    }
                }
                ReductionStep::Split { node, replacements } => {
                    verify_split(small, large, node, replacements)
                        .map_err(|m| replay_failure(i, m))?
                }
                ReductionStep::Retract { node, removed } => {
                    verify_retract(small, large, node, removed).map_err(|m| replay_failure(i, m))?
                }
            }
        }
        Ok(())
    }
}

fn verify_split(
    small: &Poset,
    large: &Poset,
    node: &str,
    replacements: &[String],
) -> std::result::Result<(), String> {
    let u = large.node(node).ok_or("split node missing")?;
    let glued = replacements
        .iter()
        .map(|r| small.node(r).ok_or("replacement missing"))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let g = small
        .nodes()
        .map(|v| {
            if glued.contains(&v) {
                Some(u)
            } else {
                large.node(small.label(v))
            }
        })
        .collect::<Option<Vec<_>>>()
        .ok_or("node of the split poset has no counterpart")?;
    if !verify_gluing(small, &glued, large, &g) {
        return Err("gluing characterization fails".into());
    }
    if !glued.iter().all(|&c| small.is_minimal(c)) {
        return Err("glued nodes are not minimal".into());
    }
    let (ns, nl) = (n_value(small), n_value(large));
    if !(ns == 0 || ns < nl) {
        return Err(format!("n did not drop ({ns} vs {nl})"));
    }
    let back = glue(small, &glued).map_err(|e| e.to_string())?;
    if is_isomorphic(&back.quotient, large).is_none() {
        return Err("regluing does not rebuild the larger poset".into());
    }
    Ok(())
}

fn verify_retract(
    small: &Poset,
    large: &Poset,
    node: &str,
    removed: &[String],
) -> std::result::Result<(), String> {
    let x = large.node(node).ok_or("retracted node missing")?;
    if !simple_nodes(large).map_err(|e| e.to_string())?.contains(&x) {
        return Err(format!("{node} is not simple"));
    }
    let below: Vec<&str> = strict_down_set(large, x)
        .into_iter()
        .map(|u| large.label(u))
        .collect();
    if below != removed.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err("removed set is not the down-set of the node".into());
    }
    let keep: Vec<NodeId> = large
        .nodes()
        .filter(|&v| !below.contains(&large.label(v)))
        .collect();
    let expected = large
        .induced_subposet(&keep)
        .map_err(|e| e.to_string())?
        .poset;
    if !expected.same_labeled(small) {
        return Err("smaller poset is not the retraction".into());
    }
    let p = small.node(node).ok_or("retracted node missing below")?;
    let rebuilt = attach_below(small, p, removed.len()).map_err(|e| e.to_string())?;
    if is_isomorphic(&rebuilt, large).is_none() {
        return Err("reattaching does not rebuild the larger poset".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::diamond;

    fn ids(p: &Poset, labels: &[&str]) -> Vec<NodeId> {
        labels.iter().map(|l| p.require(l).unwrap()).collect()
    }

    fn upside_v() -> Poset {
        Poset::build(["u1", "u2", "a"], &[("u1", "a"), ("u2", "a")]).unwrap()
    }

    fn fork() -> Poset {
        // m1, m2 <_c x <_c t
        Poset::build(
            ["m1", "m2", "x", "t"],
            &[("m1", "x"), ("m2", "x"), ("x", "t")],
        )
        .unwrap()
    }

    #[test]
    fn glue_two_minimals_into_chain() {
        let v = upside_v();
        let r = glue(&v, &ids(&v, &["u1", "u2"])).unwrap();
        assert!(r
            .quotient
            .same_labeled(&Poset::chain(&["u1+u2", "a"]).unwrap()));
        let u1 = v.require("u1").unwrap();
        let u2 = v.require("u2").unwrap();
        assert_eq!(r.map.apply(u1), r.map.apply(u2));
        assert!(r.is_height_zero());
        assert!(verify_gluing_map(&r.glued, &r.map));
    }

    #[test]
    fn glue_singleton_is_identity() {
        let d = diamond();
        let r = glue(&d, &ids(&d, &["m"])).unwrap();
        assert!(r.quotient.same_labeled(&d));
        assert!(r.map.is_injective() && r.map.is_surjective());
    }

    #[test]
    fn glue_rejects_bad_subsets() {
        let d = diamond();
        assert_eq!(
            glue(&d, &ids(&d, &["m", "t"])),
            Err(PosetError::NotCompleteSubset)
        );
        assert_eq!(glue(&d, &[]), Err(PosetError::EmptySelection));
    }

    #[test]
    fn glue_along_interval_of_chain() {
        let c = Poset::chain(&["m", "a", "t"]).unwrap();
        let r = glue(&c, &ids(&c, &["m", "a"])).unwrap();
        assert!(r
            .quotient
            .same_labeled(&Poset::chain(&["a+m", "t"]).unwrap()));
        assert!(!r.is_height_zero());
    }

    #[test]
    fn verify_gluing_detects_tampering() {
        let d = diamond();
        let s = split(&d, d.require("m").unwrap()).unwrap();
        assert!(verify_gluing_map(&s.glued, &s.map));

        // Swap the images of a and t.
        let x = &s.poset;
        let (a, t) = (x.require("a").unwrap(), x.require("t").unwrap());
        let mut swapped = s.map.assign().to_vec();
        swapped.swap(a.index(), t.index());
        assert!(!verify_gluing(x, &s.glued, &d, &swapped));

        // Quotient with an extra relation a ≤ b.
        let extra =
            Poset::build(["m", "a", "b", "t"], &[("m", "a"), ("a", "b"), ("b", "t")]).unwrap();
        let g: Vec<NodeId> = s
            .map
            .assign()
            .iter()
            .map(|&v| extra.require(d.label(v)).unwrap())
            .collect();
        assert!(!verify_gluing(x, &s.glued, &extra, &g));
    }

    #[test]
    fn height_zero_gluing_flags() {
        let d = diamond();
        let a = glue(&d, &ids(&d, &["a"])).unwrap();
        assert!(!is_height_zero_gluing(&a));
        let v = upside_v();
        let all = glue(&v, &v.minimals()).unwrap();
        assert!(is_height_zero_gluing(&all));
    }

    #[test]
    fn n_values() {
        assert_eq!(n_value(&diamond()), 1);
        assert_eq!(n_value(&Poset::chain(&["a", "b", "c"]).unwrap()), 0);
        assert_eq!(n_value(&Poset::antichain(&["x", "y"]).unwrap()), 0);
    }

    #[test]
    fn simple_node_examples() {
        let f = fork();
        assert_eq!(simple_nodes(&f).unwrap(), ids(&f, &["x"]));
        assert!(simple_nodes(&diamond()).unwrap().is_empty());
        let c = Poset::chain(&["m", "a", "t"]).unwrap();
        assert_eq!(simple_nodes(&c).unwrap(), ids(&c, &["a"]));
        assert_eq!(
            simple_nodes(&Poset::chain(&["p"]).unwrap()),
            Err(PosetError::ZeroDimensional)
        );
    }

    #[test]
    fn retract_examples() {
        let f = fork();
        let r = retract(&f, f.require("x").unwrap()).unwrap();
        assert!(r.same_labeled(&Poset::chain(&["x", "t"]).unwrap()));

        let c = Poset::chain(&["m", "a", "t"]).unwrap();
        let r = retract(&c, c.require("a").unwrap()).unwrap();
        assert!(r.same_labeled(&Poset::chain(&["a", "t"]).unwrap()));

        let d = diamond();
        assert_eq!(
            retract(&d, d.require("a").unwrap()),
            Err(PosetError::NotSimpleNode("a".into()))
        );
    }

    #[test]
    fn split_diamond_round_trips() {
        let d = diamond();
        let s = split(&d, d.require("m").unwrap()).unwrap();
        let expected = Poset::build(
            ["m1", "m2", "a", "b", "t"],
            &[("m1", "a"), ("m2", "b"), ("a", "t"), ("b", "t")],
        )
        .unwrap();
        assert!(s.poset.same_labeled(&expected));
        assert_eq!(n_value(&s.poset), 0);
        let back = glue(&s.poset, &s.glued).unwrap();
        assert!(is_isomorphic(&back.quotient, &d).is_some());
    }

    #[test]
    fn split_three_covers() {
        let y = Poset::build(["u", "a", "b", "c"], &[("u", "a"), ("u", "b"), ("u", "c")]).unwrap();
        let s = split(&y, y.require("u").unwrap()).unwrap();
        assert_eq!(s.glued.len(), 3);
        for &r in &s.glued {
            assert_eq!(s.poset.upper_covers(r).len(), 1);
        }
    }

    #[test]
    fn split_errors() {
        let c = Poset::chain(&["m", "a", "t"]).unwrap();
        assert_eq!(
            split(&c, c.require("m").unwrap()),
            Err(PosetError::FewerThanTwoCovers("m".into()))
        );
        let d = diamond();
        assert_eq!(
            split(&d, d.require("a").unwrap()),
            Err(PosetError::NotMinimal("a".into()))
        );
    }

    #[test]
    fn split_labels_avoid_collisions() {
        let y = Poset::build(["m", "m1", "a"], &[("m", "m1"), ("m", "a")]).unwrap();
        let s = split(&y, y.require("m").unwrap()).unwrap();
        let names: Vec<&str> = s.glued.iter().map(|&r| s.poset.label(r)).collect();
        assert_eq!(names, ["m1'", "m2"]);
    }

    #[test]
    fn attach_below_examples() {
        let p = Poset::chain(&["p"]).unwrap();
        let v = attach_below(&p, NodeId::new(0), 2).unwrap();
        let expected = Poset::build(["p", "q1", "q2"], &[("q1", "p"), ("q2", "p")]).unwrap();
        assert!(v.same_labeled(&expected));
        assert!(retract(&v, v.require("p").unwrap())
            .unwrap()
            .same_labeled(&p));

        let pt = Poset::chain(&["p", "t"]).unwrap();
        let c = attach_below(&pt, pt.require("p").unwrap(), 1).unwrap();
        assert!(c.same_labeled(&Poset::chain(&["q1", "p", "t"]).unwrap()));

        assert_eq!(
            attach_below(&pt, pt.require("t").unwrap(), 1),
            Err(PosetError::NotMinimal("t".into()))
        );
    }

    #[test]
    fn reduce_point_is_empty() {
        let seq = reduce_to_point(&Poset::chain(&["p"]).unwrap()).unwrap();
        assert!(seq.is_empty());
        assert_eq!(seq.posets.len(), 1);
        seq.verify().unwrap();
    }

    #[test]
    fn reduce_diamond() {
        let seq = reduce_to_point(&diamond()).unwrap();
        seq.verify().unwrap();
        // Steps read top-down: split m, retract a, retract b, retract t.
        let top_down: Vec<String> = seq.steps.iter().rev().map(|s| s.to_string()).collect();
        assert_eq!(
            top_down,
            [
                "split m -> m1 m2",
                "retract a removing m1",
                "retract b removing m2",
                "retract t removing a b",
            ]
        );
        assert_eq!(seq.posets[0].labels(), ["t"]);
    }

    #[test]
    fn reduce_requires_unique_maximal() {
        assert_eq!(
            reduce_to_point(&Poset::antichain(&["x", "y"]).unwrap()),
            Err(PosetError::NoUniqueMaximal)
        );
    }

    #[test]
    fn tampered_sequence_fails_replay() {
        let mut seq = reduce_to_point(&diamond()).unwrap();
        seq.steps.swap(0, 1);
        assert!(seq.verify().is_err());
    }
}
