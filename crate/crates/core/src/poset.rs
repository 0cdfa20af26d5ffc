//! Finite posets stored as a reachability matrix with a derived Hasse diagram.

use std::collections::HashMap;
use std::fmt;

use crate::error::{PosetError, Result};

/// Position of a node inside a [`Poset`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub const fn new(index: usize) -> Self {
        NodeId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A nonempty finite poset.
///
/// `leq` is the full reflexive order, `covers` its transitive reduction. Both are
/// `n * n` row-major matrices. Heights are computed once at construction since
/// every query downstream leans on them.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
    covers: Vec<bool>,
    heights: Vec<usize>,
}

/// An induced subposet together with the node of the parent each of its nodes came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub poset: Poset,
    pub origin: Vec<NodeId>,
}

impl Poset {
    /// Builds the poset generated by `generators`, read as `a ≤ b` pairs of labels.
    ///
    /// Pairs need not be covers; the order is their reflexive-transitive closure.
    pub fn build<L, A, B>(labels: L, generators: &[(A, B)]) -> Result<Poset>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(PosetError::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
        };
        let pairs = generators
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_generators(labels, pairs)
    }

    /// Builds the poset generated by index pairs `(i, j)` meaning `i ≤ j`.
    pub fn from_generators(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset> {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::EmptyPoset);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (i, j) in pairs {
            if i >= n {
                return Err(PosetError::InvalidNode(i));
            }
            if j >= n {
                return Err(PosetError::InvalidNode(j));
            }
            leq[i * n + j] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Poset::from_order(labels, leq)
    }

    /// Builds a poset from a complete `≤` matrix, rejecting anything that is not a partial order.
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Poset> {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::EmptyPoset);
        }
        assert_eq!(leq.len(), n * n, "order matrix has the wrong size");
        let mut seen = HashMap::with_capacity(n);
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(PosetError::DuplicateLabel(label.clone()));
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(PosetError::PreconditionFailed(format!(
                    "relation is not reflexive at `{}`",
                    labels[i]
                )));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    let (a, b) = (i.min(j), i.max(j));
                    return Err(PosetError::CycleDetected(
                        labels[a].clone(),
                        labels[b].clone(),
                    ));
                }
                if leq[i * n + j] {
                    for k in 0..n {
                        if leq[j * n + k] && !leq[i * n + k] {
                            return Err(PosetError::PreconditionFailed(format!(
                                "relation is not transitive at `{}` ≤ `{}` ≤ `{}`",
                                labels[i], labels[j], labels[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(Poset::assemble(labels, leq))
    }

    /// Derives covers and heights from a matrix already known to be a partial order.
    fn assemble(labels: Vec<String>, leq: Vec<bool>) -> Poset {
        let n = labels.len();
        let lt = |i: usize, j: usize| i != j && leq[i * n + j];
        let mut covers = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    covers[i * n + j] = true;
                }
            }
        }

        // Sorting by down-set size gives a linear extension; a longest-path sweep
        // over the cover DAG in that order yields heights.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| (0..n).filter(|&i| leq[i * n + j]).count());
        let mut heights = vec![0; n];
        for &j in &order {
            heights[j] = (0..n)
                .filter(|&i| covers[i * n + j])
                .map(|i| heights[i] + 1)
                .max()
                .unwrap_or(0);
        }

        Poset {
            labels,
            leq,
            covers,
            heights,
        }
    }

    /// Chain `labels[0] < labels[1] < …`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Poset> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let k = labels.len();
        Poset::from_generators(labels, (1..k).map(|i| (i - 1, i)))
    }

    /// Antichain on the given labels.
    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Poset> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Poset::from_generators(labels, std::iter::empty())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; posets are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn nodes(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.len()).map(NodeId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: NodeId) -> &str {
        &self.labels[x.0]
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label).map(NodeId)
    }

    /// Looks up a node by label, failing with [`PosetError::UnknownLabel`].
    pub fn require(&self, label: &str) -> Result<NodeId> {
        self.node(label)
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    pub fn check_node(&self, x: NodeId) -> Result<NodeId> {
        if x.0 < self.len() {
            Ok(x)
        } else {
            Err(PosetError::InvalidNode(x.0))
        }
    }

    pub fn leq(&self, x: NodeId, y: NodeId) -> bool {
        self.leq[x.0 * self.len() + y.0]
    }

    pub fn lt(&self, x: NodeId, y: NodeId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: NodeId, y: NodeId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// True iff `y` covers `x`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: NodeId, y: NodeId) -> bool {
        self.covers[x.0 * self.len() + y.0]
    }

    /// Nodes covering `x`, in positional order.
    pub fn upper_covers(&self, x: NodeId) -> Vec<NodeId> {
        self.nodes().filter(|&y| self.covers(x, y)).collect()
    }

    /// Nodes covered by `x`, in positional order.
    pub fn lower_covers(&self, x: NodeId) -> Vec<NodeId> {
        self.nodes().filter(|&u| self.covers(u, x)).collect()
    }

    /// All covering pairs `(x, y)` with `x <_c y`, sorted by label.
    pub fn cover_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let mut pairs: Vec<_> = self
            .nodes()
            .flat_map(|x| self.nodes().map(move |y| (x, y)))
            .filter(|&(x, y)| self.covers(x, y))
            .collect();
        pairs.sort_by(|a, b| {
            (self.label(a.0), self.label(a.1)).cmp(&(self.label(b.0), self.label(b.1)))
        });
        pairs
    }

    /// Length of the longest saturated chain from a minimal node up to `x`.
    pub fn height(&self, x: NodeId) -> usize {
        self.heights[x.0]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Length of the longest chain.
    pub fn dim(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn is_minimal(&self, x: NodeId) -> bool {
        !self.nodes().any(|u| self.lt(u, x))
    }

    pub fn is_maximal(&self, x: NodeId) -> bool {
        !self.nodes().any(|v| self.lt(x, v))
    }

    /// Minimal nodes, label-sorted.
    pub fn minimals(&self) -> Vec<NodeId> {
        self.label_sorted(self.nodes().filter(|&x| self.is_minimal(x)).collect())
    }

    /// Maximal nodes, label-sorted.
    pub fn maximals(&self) -> Vec<NodeId> {
        self.label_sorted(self.nodes().filter(|&x| self.is_maximal(x)).collect())
    }

    /// Sorts node ids by their labels and drops duplicates.
    pub fn label_sorted(&self, mut ids: Vec<NodeId>) -> Vec<NodeId> {
        ids.sort_by(|&a, &b| self.label(a).cmp(self.label(b)));
        ids.dedup();
        ids
    }

    /// Induced subposet on `{y : x ≤ y}`.
    pub fn up_set(&self, x: NodeId) -> Induced {
        let members: Vec<NodeId> = self.nodes().filter(|&y| self.leq(x, y)).collect();
        self.induce(&members)
    }

    /// Dimension of the up-set of `x`: the poset-level coheight of `x`.
    pub fn up_dim(&self, x: NodeId) -> usize {
        self.up_set(x).poset.dim()
    }

    /// Restricts the order to `selection`. Nodes keep their relative positional order.
    pub fn induced_subposet(&self, selection: &[NodeId]) -> Result<Induced> {
        for &x in selection {
            self.check_node(x)?;
        }
        let mut members = selection.to_vec();
        members.sort();
        members.dedup();
        if members.is_empty() {
            return Err(PosetError::EmptySelection);
        }
        Ok(self.induce(&members))
    }

    fn induce(&self, members: &[NodeId]) -> Induced {
        let k = members.len();
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        let mut leq = vec![false; k * k];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                leq[i * k + j] = self.leq(x, y);
            }
        }
        Induced {
            poset: Poset::assemble(labels, leq),
            origin: members.to_vec(),
        }
    }

    /// Induced subposet on the nodes of height at least `k`.
    pub fn height_floor(&self, k: usize) -> Result<Induced> {
        let members: Vec<NodeId> = self.nodes().filter(|&x| self.height(x) >= k).collect();
        self.induced_subposet(&members)
    }

    /// True iff each entry covers the one before it. Empty input is not a chain.
    pub fn is_saturated_chain(&self, chain: &[NodeId]) -> bool {
        if chain.is_empty() || chain.iter().any(|x| x.0 >= self.len()) {
            return false;
        }
        chain.windows(2).all(|w| self.covers(w[0], w[1]))
    }

    /// True iff `u ≤ y ≤ v` with `u, v` in the subset forces `y` into it.
    pub fn is_complete_subset(&self, subset: &[NodeId]) -> bool {
        let mut inside = vec![false; self.len()];
        for &x in subset {
            if x.0 >= self.len() {
                return false;
            }
            inside[x.0] = true;
        }
        subset.iter().all(|&u| {
            subset.iter().all(|&v| {
                !self.leq(u, v)
                    || self
                        .nodes()
                        .all(|y| inside[y.0] || !(self.leq(u, y) && self.leq(y, v)))
            })
        })
    }

    /// True iff every cover of the induced subposet on `subset` is a cover here.
    pub fn is_saturated_subset(&self, subset: &[NodeId]) -> Result<bool> {
        let induced = self.induced_subposet(subset)?;
        let sub = &induced.poset;
        Ok(sub
            .nodes()
            .flat_map(|a| sub.nodes().map(move |b| (a, b)))
            .filter(|&(a, b)| sub.covers(a, b))
            .all(|(a, b)| self.covers(induced.origin[a.0], induced.origin[b.0])))
    }

    /// True iff `other` has the same label set and the same order between equally labeled nodes.
    pub fn same_labeled(&self, other: &Poset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let Some(map) = self
            .labels
            .iter()
            .map(|l| other.node(l))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        self.nodes().all(|x| {
            self.nodes()
                .all(|y| self.leq(x, y) == other.leq(map[x.0], map[y.0]))
        })
    }

    /// A label based on `base` that no current node uses.
    pub fn fresh_label(&self, base: &str) -> String {
        fresh_label(base, |l| self.node(l).is_some())
    }
}

/// Appends primes to `base` until `taken` rejects it.
pub(crate) fn fresh_label(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut label = base.to_string();
    while taken(&label) {
        label.push('\'');
    }
    label
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.label(x), self.label(y)))
            .collect();
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}
