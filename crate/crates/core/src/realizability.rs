//! Combinatorial conditions for a finite poset to admit a dimension-preserving saturated
//! embedding into the spectrum of a Noetherian UFD, and the poset constructions used to
//! reach those conditions.
//!
//! A poset satisfies the local conditions when it has a unique minimal node, a unique
//! maximal node, and (in dimension at least two) every cover of a height-one node sits at
//! height two. The non-local conditions drop the unique-maximal requirement.

use serde::Serialize;

use crate::error::{PosetError, Result};
use crate::maps::PosetMap;
use crate::poset::{NodeId, Poset};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    MultipleMinimal,
    MultipleMaximal,
    BadCover,
}

/// One failed condition with its witness nodes and their heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub nodes: Vec<String>,
    pub heights: Vec<usize>,
}

/// Verdict plus every violated condition. `verdict` holds iff `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl RealizabilityReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        RealizabilityReport {
            verdict: violations.is_empty(),
            violations,
        }
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn witness(p: &Poset, kind: ViolationKind, nodes: &[NodeId]) -> Violation {
    Violation {
        kind,
        nodes: nodes.iter().map(|&x| p.label(x).to_string()).collect(),
        heights: nodes.iter().map(|&x| p.height(x)).collect(),
    }
}

fn unique_minimal(p: &Poset) -> Option<Violation> {
    let mins = p.minimals();
    (mins.len() > 1).then(|| witness(p, ViolationKind::MultipleMinimal, &mins))
}

fn unique_maximal(p: &Poset) -> Option<Violation> {
    let maxs = p.maximals();
    (maxs.len() > 1).then(|| witness(p, ViolationKind::MultipleMaximal, &maxs))
}

/// Covers `x <_c y` with `height(x) = 1` and `height(y) != 2`; vacuous below dimension two.
fn bad_covers(p: &Poset) -> Vec<Violation> {
    if p.dim() < 2 {
        return Vec::new();
    }
    p.cover_pairs()
        .into_iter()
        .filter(|&(x, y)| p.height(x) == 1 && p.height(y) != 2)
        .map(|(x, y)| witness(p, ViolationKind::BadCover, &[x, y]))
        .collect()
}

/// Conditions for a local Noetherian UFD.
pub fn check_local_ufd(p: &Poset) -> RealizabilityReport {
    let mut violations: Vec<Violation> = unique_minimal(p)
        .into_iter()
        .chain(unique_maximal(p))
        .collect();
    violations.extend(bad_covers(p));
    RealizabilityReport::from_violations(violations)
}

/// Conditions for a Noetherian UFD that need not be local.
pub fn check_nonlocal_ufd(p: &Poset) -> RealizabilityReport {
    let mut violations: Vec<Violation> = unique_minimal(p).into_iter().collect();
    violations.extend(bad_covers(p));
    RealizabilityReport::from_violations(violations)
}

/// A new poset containing the old one, with the inclusion map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub poset: Poset,
    pub inclusion: PosetMap,
}

/// Appends a fresh node below every old node, or above every old node.
fn adjoin(p: &Poset, label: &str, below_everything: bool) -> Construction {
    let n = p.len();
    let mut labels = p.labels().to_vec();
    labels.push(p.fresh_label(label));
    let k = n + 1;
    let mut leq = vec![false; k * k];
    for i in 0..n {
        for j in 0..n {
            leq[i * k + j] = p.leq(NodeId::new(i), NodeId::new(j));
        }
        if below_everything {
            leq[n * k + i] = true;
        } else {
            leq[i * k + n] = true;
        }
    }
    leq[n * k + n] = true;
    let poset = Poset::from_order(labels, leq).expect("adjoining an extremum keeps a poset");
    let inclusion =
        PosetMap::new(p.clone(), poset.clone(), p.nodes().collect()).expect("inclusion is total");
    Construction { poset, inclusion }
}

/// Adds a fresh top `⊤` above every node.
pub fn add_top(p: &Poset) -> Construction {
    adjoin(p, "⊤", false)
}

/// Adds a fresh bottom `⊥` below every node.
pub fn add_bottom(p: &Poset) -> Construction {
    adjoin(p, "⊥", true)
}

/// Minimal nodes covered by some node of height at least two, label-sorted.
pub fn risky_minimals(p: &Poset) -> Vec<NodeId> {
    let risky = p
        .nodes()
        .filter(|&x| p.height(x) == 0)
        .filter(|&x| p.upper_covers(x).iter().any(|&y| p.height(y) >= 2))
        .collect();
    p.label_sorted(risky)
}

/// The intermediate objects of the one-dimension-higher construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimPlusOne {
    /// Risky minimal nodes of the input, label-sorted.
    pub risky: Vec<NodeId>,
    /// Input plus one duplicate under each risky minimal node.
    pub widened: Poset,
    /// `widened` with a fresh bottom.
    pub poset: Poset,
    /// Inclusion of the input into `poset`.
    pub inclusion: PosetMap,
}

/// Places a duplicate `x'` below each risky minimal node `x` (below exactly the up-set of
/// `x`), then adds a global bottom.
pub fn dim_plus_one(p: &Poset) -> DimPlusOne {
    let risky = risky_minimals(p);
    let n = p.len();
    let m = risky.len();
    let mut labels = p.labels().to_vec();
    for &x in &risky {
        let label = crate::poset::fresh_label(&format!("{}'", p.label(x)), |l| {
            labels.iter().any(|e| e == l)
        });
        labels.push(label);
    }
    let k = n + m;
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = match (i < n, j < n) {
                (true, true) => p.leq(NodeId::new(i), NodeId::new(j)),
                (false, true) => p.leq(risky[i - n], NodeId::new(j)),
                (true, false) => false,
                (false, false) => i == j,
            };
        }
    }
    let widened = Poset::from_order(labels, leq).expect("duplicating minimal nodes keeps a poset");
    let bottom = add_bottom(&widened);
    let inclusion = PosetMap::new(p.clone(), bottom.poset.clone(), p.nodes().collect())
        .expect("inclusion is total");
    DimPlusOne {
        risky,
        widened,
        poset: bottom.poset,
        inclusion,
    }
}

/// The extension of the positive-height part of a poset with one new minimal node per
/// height-one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub poset: Poset,
    /// `(new minimal node of poset, height-one node of the input)`, in input label order.
    pub pairing: Vec<(NodeId, NodeId)>,
    /// Sends every new minimal node to the input's bottom and every other node to itself.
    /// This is a height-zero gluing of the extension along its minimal nodes.
    pub collapse: PosetMap,
}

/// Builds the extension of `height_floor(p, 1)`: below each height-one node `x` a fresh
/// `x'` that sits below exactly the up-set of `x`.
pub fn extension_poset(p: &Poset) -> Result<Extension> {
    let mins = p.minimals();
    if mins.len() != 1 {
        return Err(PosetError::NoUniqueMinimal);
    }
    if p.dim() < 2 {
        return Err(PosetError::DimensionTooSmall(p.dim()));
    }
    let bottom = mins[0];
    let upper = p.height_floor(1)?;
    let floor = &upper.poset;
    let height_one: Vec<NodeId> = p.label_sorted(p.nodes().filter(|&x| p.height(x) == 1).collect());
    let n = floor.len();
    let m = height_one.len();

    let mut labels = floor.labels().to_vec();
    for &x in &height_one {
        let label = crate::poset::fresh_label(&format!("{}'", p.label(x)), |l| {
            labels.iter().any(|e| e == l) || p.node(l).is_some()
        });
        labels.push(label);
    }
    // Position of each height-one node inside the floor.
    let in_floor: Vec<NodeId> = height_one
        .iter()
        .map(|&x| {
            floor
                .require(p.label(x))
                .expect("height-one node is in the floor")
        })
        .collect();

    let k = n + m;
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = match (i < n, j < n) {
                (true, true) => floor.leq(NodeId::new(i), NodeId::new(j)),
                (false, true) => floor.leq(in_floor[i - n], NodeId::new(j)),
                (true, false) => false,
                (false, false) => i == j,
            };
        }
    }
    let poset = Poset::from_order(labels, leq)?;
    let pairing = height_one
        .iter()
        .enumerate()
        .map(|(i, &x)| (NodeId::new(n + i), x))
        .collect();
    let assign = (0..k)
        .map(|i| if i < n { upper.origin[i] } else { bottom })
        .collect();
    let collapse = PosetMap::new(poset.clone(), p.clone(), assign)?;
    Ok(Extension {
        poset,
        pairing,
        collapse,
    })
}
