//! Exhaustive enumeration of small posets up to isomorphism, and population-wide runs of
//! the reduction theorem, the surgery lemmas and the realizability checks.
//!
//! Every run is a fold over independent per-poset tallies, so splitting the work across
//! threads never changes the result.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{PosetError, Result};
use crate::iso::is_isomorphic;
use crate::poset::{NodeId, Poset};
use crate::realizability::{check_local_ufd, check_nonlocal_ufd};
use crate::surgery::{
    attach_below, glue, reduce_to_point, retract, simple_nodes, split, strict_down_set,
    verify_gluing_map,
};

/// Hard cap on exhaustive enumeration (2045 classes at seven nodes).
pub const MAX_CENSUS_N: usize = 7;

/// Largest poset the random lemma runs generate.
pub const MAX_RANDOM_N: usize = 10;

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(PosetError::SizeLimitExceeded {
            requested: n,
            limit,
        })
    } else {
        Ok(())
    }
}

/// Strict order on at most eight nodes: bit `j` of `above[i]` means `i < j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Compact {
    n: usize,
    above: [u8; 8],
}

impl Compact {
    fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    fn below(&self, j: usize) -> u8 {
        (0..self.n)
            .filter(|&i| self.lt(i, j))
            .fold(0, |m, i| m | 1 << i)
    }

    fn covers(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && self.above[i] & self.below(j) == 0
    }

    fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&j| self.below(j).count_ones());
        let mut h = vec![0; self.n];
        for &j in &order {
            h[j] = (0..self.n)
                .filter(|&i| self.covers(i, j))
                .map(|i| h[i] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Bits of the strict order read through `perm` (position → node).
    fn code(&self, perm: &[usize]) -> u64 {
        let mut code = 0u64;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    code = code << 1 | self.lt(perm[i], perm[j]) as u64;
                }
            }
        }
        code
    }

    /// Largest code over the permutations that list nodes in invariant order.
    fn canonical(&self) -> (u64, Vec<usize>) {
        let h = self.heights();
        let invariant = |x: usize| {
            let lower = (0..self.n).filter(|&u| self.covers(u, x)).count();
            let upper = (0..self.n).filter(|&v| self.covers(x, v)).count();
            (
                h[x],
                self.below(x).count_ones(),
                self.above[x].count_ones(),
                lower,
                upper,
            )
        };
        let mut nodes: Vec<usize> = (0..self.n).collect();
        nodes.sort_by_key(|&x| invariant(x));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for &x in &nodes {
            match cells.last_mut() {
                Some(cell) if invariant(cell[0]) == invariant(x) => cell.push(x),
                _ => cells.push(vec![x]),
            }
        }
        let mut best = (0u64, nodes.clone());
        let mut found = false;
        let mut perm = Vec::with_capacity(self.n);
        self.search(&mut cells, 0, &mut perm, &mut best, &mut found);
        best
    }

    fn search(
        &self,
        cells: &mut [Vec<usize>],
        cell: usize,
        perm: &mut Vec<usize>,
        best: &mut (u64, Vec<usize>),
        found: &mut bool,
    ) {
        if cell == cells.len() {
            let code = self.code(perm);
            if !*found || code > best.0 {
                *best = (code, perm.clone());
                *found = true;
            }
            return;
        }
        let members = cells[cell].clone();
        permute(&members, &mut Vec::new(), &mut |order| {
            let len = perm.len();
            perm.extend_from_slice(order);
            self.search(cells, cell + 1, perm, best, found);
            perm.truncate(len);
        });
    }

    fn relabel(&self, perm: &[usize]) -> Compact {
        let mut pos = [0usize; 8];
        for (p, &x) in perm.iter().enumerate() {
            pos[x] = p;
        }
        let mut above = [0u8; 8];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    above[pos[i]] |= 1 << pos[j];
                }
            }
        }
        Compact { n: self.n, above }
    }

    fn to_poset(self) -> Poset {
        let labels = (0..self.n).map(|i| i.to_string()).collect();
        let pairs = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lt(i, j))
            .collect::<Vec<_>>();
        Poset::from_generators(labels, pairs).expect("enumerated relation is a partial order")
    }
}

fn permute(items: &[usize], prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if prefix.len() == items.len() {
        visit(prefix);
        return;
    }
    for &x in items {
        if !prefix.contains(&x) {
            prefix.push(x);
            permute(items, prefix, visit);
            prefix.pop();
        }
    }
}

/// One representative per isomorphism class for every size `1..=max_n`.
///
/// Size `k + 1` comes from size `k` by adding a new maximal node above each down-set;
/// duplicates are removed by canonical code. Nodes are labeled `0..n` in canonical order
/// and classes come out sorted by code.
pub fn enumerate_up_to(max_n: usize) -> Result<Vec<Vec<Poset>>> {
    check_size(max_n, MAX_CENSUS_N)?;
    let mut levels: Vec<Vec<Compact>> = Vec::new();
    if max_n == 0 {
        return Ok(Vec::new());
    }
    levels.push(vec![Compact {
        n: 1,
        above: [0; 8],
    }]);
    for k in 1..max_n {
        let mut classes: BTreeMap<u64, Compact> = BTreeMap::new();
        for p in &levels[k - 1] {
            for mask in 0u16..(1 << k) {
                let mask = mask as u8;
                // The new node's strict down-set must be closed downward.
                let closed = (0..k).all(|j| mask >> j & 1 == 0 || p.below(j) & !mask == 0);
                if !closed {
                    continue;
                }
                let mut q = *p;
                q.n = k + 1;
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        q.above[i] |= 1 << k;
                    }
                }
                let (code, perm) = q.canonical();
                classes.entry(code).or_insert_with(|| q.relabel(&perm));
            }
        }
        levels.push(classes.into_values().collect());
    }
    Ok(levels
        .into_iter()
        .map(|level| level.into_iter().map(Compact::to_poset).collect())
        .collect())
}

/// One representative per isomorphism class of `n`-node posets.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n == 0 {
        return Err(PosetError::EmptyPoset);
    }
    Ok(enumerate_up_to(n)?.pop().unwrap_or_default())
}

/// Brute-force references, deliberately independent of the fast paths they check.
pub mod oracle {
    use super::*;

    pub const MAX_ORACLE_N: usize = 8;

    /// Every subset of nodes that is totally ordered, as bitmasks.
    fn chains(p: &Poset) -> Vec<u32> {
        let n = p.len();
        (1u32..1 << n)
            .filter(|&mask| {
                let members: Vec<NodeId> = (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(NodeId::new)
                    .collect();
                members
                    .iter()
                    .all(|&a| members.iter().all(|&b| p.leq(a, b) || p.leq(b, a)))
            })
            .collect()
    }

    /// Longest chain whose top element is `x`, by enumerating every chain.
    pub fn oracle_height(p: &Poset, x: NodeId) -> Result<usize> {
        check_size(p.len(), MAX_ORACLE_N)?;
        Ok(chains(p)
            .into_iter()
            .filter(|&mask| mask >> x.index() & 1 == 1)
            .filter(|&mask| (0..p.len()).all(|i| mask >> i & 1 == 0 || p.leq(NodeId::new(i), x)))
            .map(|mask| mask.count_ones() as usize - 1)
            .max()
            .unwrap_or(0))
    }

    /// Longest chain anywhere, by enumerating every chain.
    pub fn oracle_dim(p: &Poset) -> Result<usize> {
        check_size(p.len(), MAX_ORACLE_N)?;
        Ok(chains(p)
            .into_iter()
            .map(|mask| mask.count_ones() as usize - 1)
            .max()
            .unwrap_or(0))
    }

    /// Longest saturated chain that starts at a minimal node and ends at `x`, found by
    /// walking every such chain explicitly.
    pub fn oracle_saturated_height(p: &Poset, x: NodeId) -> Result<usize> {
        check_size(p.len(), MAX_ORACLE_N)?;
        fn walk(p: &Poset, at: NodeId, target: NodeId, len: usize, best: &mut Option<usize>) {
            if at == target {
                *best = Some(best.map_or(len, |b| b.max(len)));
            }
            for y in p.nodes() {
                let between = p.nodes().any(|z| p.lt(at, z) && p.lt(z, y));
                if p.lt(at, y) && !between {
                    walk(p, y, target, len + 1, best);
                }
            }
        }
        let mut best = None;
        for m in p.nodes().filter(|&m| !p.nodes().any(|u| p.lt(u, m))) {
            walk(p, m, x, 0, &mut best);
        }
        Ok(best.expect("some minimal node lies below x"))
    }

    /// Isomorphism test by trying every permutation.
    pub fn oracle_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
        check_size(p.len(), MAX_ORACLE_N)?;
        if p.len() != q.len() {
            return Ok(false);
        }
        let n = p.len();
        let mut found = false;
        permute(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut |perm| {
            if !found {
                found = (0..n).all(|i| {
                    (0..n).all(|j| {
                        p.leq(NodeId::new(i), NodeId::new(j))
                            == q.leq(NodeId::new(perm[i]), NodeId::new(perm[j]))
                    })
                });
            }
        });
        Ok(found)
    }

    pub const MAX_BRUTE_CLASSES_N: usize = 5;

    /// Counts isomorphism classes of `n`-node posets from scratch: every strict relation on
    /// labeled nodes is tested for antisymmetry and transitivity, and the survivors are
    /// grouped into orbits under the full symmetric group.
    pub fn count_classes_brute(n: usize) -> Result<usize> {
        check_size(n, MAX_BRUTE_CLASSES_N)?;
        let off: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let encode = |rel: &dyn Fn(usize, usize) -> bool| -> u64 {
            off.iter()
                .fold(0u64, |code, &(i, j)| code << 1 | rel(i, j) as u64)
        };
        let mut perms = Vec::new();
        permute(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut |p| {
            perms.push(p.to_vec())
        });

        let mut orbits = std::collections::BTreeSet::new();
        for mask in 0u64..1 << off.len() {
            let mut lt = vec![vec![false; n]; n];
            for (bit, &(i, j)) in off.iter().enumerate() {
                lt[i][j] = mask >> bit & 1 == 1;
            }
            let antisymmetric = off.iter().all(|&(i, j)| !(lt[i][j] && lt[j][i]));
            if !antisymmetric {
                continue;
            }
            let transitive =
                (0..n).all(|i| (0..n).all(|j| !lt[i][j] || (0..n).all(|k| !lt[j][k] || lt[i][k])));
            if !transitive {
                continue;
            }
            let least = perms
                .iter()
                .map(|perm| encode(&|i, j| lt[perm[i]][perm[j]]))
                .min()
                .expect("at least one permutation");
            orbits.insert(least);
        }
        Ok(orbits.len())
    }
}

/// Runs `per_class` over `items`, sequentially when `jobs <= 1`, and folds the results.
fn fold_parallel<T, S>(items: &[T], jobs: usize, per_class: impl Fn(&T) -> S + Sync) -> S
where
    T: Sync,
    S: Default + Send + Merge,
{
    if jobs <= 1 {
        return items.iter().map(&per_class).fold(S::default(), S::merge);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        items
            .par_iter()
            .map(&per_class)
            .reduce(S::default, S::merge)
    })
}

/// Commutative, associative combination of partial results.
pub trait Merge {
    fn merge(self, other: Self) -> Self;
}

/// Outcome of reducing every unique-max class to a point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionSummary {
    pub classes: usize,
    pub unique_max: usize,
    pub verified: usize,
    pub failures: usize,
}

impl Merge for ReductionSummary {
    fn merge(self, o: Self) -> Self {
        ReductionSummary {
            classes: self.classes + o.classes,
            unique_max: self.unique_max + o.unique_max,
            verified: self.verified + o.verified,
            failures: self.failures + o.failures,
        }
    }
}

/// Reduces `p` and replays the sequence; counts only posets with a unique maximal node.
pub fn reduction_tally(p: &Poset) -> ReductionSummary {
    let mut s = ReductionSummary {
        classes: 1,
        ..Default::default()
    };
    if p.maximals().len() == 1 {
        s.unique_max = 1;
        let ok = reduce_to_point(p).and_then(|seq| seq.verify()).is_ok();
        if ok {
            s.verified = 1;
        } else {
            s.failures = 1;
        }
    }
    s
}

pub fn verify_reduction_theorem(max_n: usize, jobs: usize) -> Result<ReductionSummary> {
    let classes: Vec<Poset> = enumerate_up_to(max_n)?.into_iter().flatten().collect();
    Ok(fold_parallel(&classes, jobs, reduction_tally))
}

/// Names of the checks run by [`verify_surgery_lemmas`], in report order.
pub const LEMMA_NAMES: [&str; 9] = [
    "gluing-characterization",
    "gluing-min-image",
    "gluing-dimension",
    "gluing-cover-lifting",
    "gluing-upset-dimension",
    "retraction-dimension",
    "split-glue-round-trip",
    "attach-retract-round-trip",
    "reduction-replay",
];

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    pub cases: usize,
    pub violations: usize,
}

/// Per-check case and violation counts, indexed like [`LEMMA_NAMES`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaSummary {
    pub tallies: [LemmaTally; 9],
    pub posets: usize,
}

impl Merge for LemmaSummary {
    fn merge(mut self, o: Self) -> Self {
        for (a, b) in self.tallies.iter_mut().zip(o.tallies) {
            a.cases += b.cases;
            a.violations += b.violations;
        }
        self.posets += o.posets;
        self
    }
}

impl LemmaSummary {
    fn record(&mut self, check: usize, holds: bool) {
        self.tallies[check].cases += 1;
        if !holds {
            self.tallies[check].violations += 1;
        }
    }

    pub fn violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violations).sum()
    }

    pub fn get(&self, name: &str) -> LemmaTally {
        let i = LEMMA_NAMES
            .iter()
            .position(|&n| n == name)
            .unwrap_or_else(|| panic!("unknown check `{name}`"));
        self.tallies[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&'static str, LemmaTally)> + '_ {
        LEMMA_NAMES
            .iter()
            .copied()
            .zip(self.tallies.iter().copied())
    }
}

/// Which glued subsets of the minimal nodes to try.
#[derive(Clone, Debug)]
pub enum Subsets {
    All,
    /// Explicit bitmasks over `minimals()` order.
    Masks(Vec<u32>),
}

/// Runs every surgery check on one poset.
pub fn lemma_tally(x: &Poset, subsets: &Subsets) -> LemmaSummary {
    let mut s = LemmaSummary {
        posets: 1,
        ..Default::default()
    };
    let mins = x.minimals();
    let unique_max = x.maximals().len() == 1;
    let masks: Vec<u32> = match subsets {
        Subsets::All => (1u32..1 << mins.len()).collect(),
        Subsets::Masks(m) => m.clone(),
    };

    for mask in masks {
        let glued: Vec<NodeId> = mins
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &m)| m)
            .collect();
        if glued.is_empty() {
            continue;
        }
        let Ok(r) = glue(x, &glued) else {
            s.record(0, false);
            continue;
        };
        let y = &r.quotient;
        let g = |v: NodeId| r.map.apply(v);
        s.record(0, verify_gluing_map(&r.glued, &r.map) && r.is_height_zero());

        let image = y.label_sorted(mins.iter().map(|&m| g(m)).collect());
        s.record(1, image == y.minimals());
        s.record(2, x.dim() == y.dim());

        let lifts = x.nodes().all(|a| {
            x.nodes()
                .all(|b| !y.covers(g(a), g(b)) || x.nodes().any(|c| x.covers(c, b) && g(c) == g(a)))
        });
        s.record(3, lifts);

        if unique_max {
            for &x0 in &mins {
                let best = x
                    .nodes()
                    .filter(|&v| g(v) == g(x0))
                    .map(|v| x.up_dim(v))
                    .max()
                    .expect("x0 is its own preimage");
                s.record(4, y.up_dim(g(x0)) == best);
            }
        }
    }

    if x.dim() > 0 {
        for node in simple_nodes(x).unwrap_or_default() {
            let below = strict_down_set(x, node);
            if !below.iter().any(|&u| x.up_dim(u) == x.dim()) {
                continue;
            }
            let holds = retract(x, node).is_ok_and(|r| {
                let at = r.require(x.label(node)).expect("retracted node survives");
                x.dim() == r.up_dim(at) + 1
            });
            s.record(5, holds);
        }
    }

    for &u in &mins {
        if x.upper_covers(u).len() >= 2 {
            let holds = split(x, u).is_ok_and(|sp| {
                verify_gluing_map(&sp.glued, &sp.map)
                    && glue(&sp.poset, &sp.glued)
                        .is_ok_and(|back| is_isomorphic(&back.quotient, x).is_some())
            });
            s.record(6, holds);
        }
        for m in 1..=2 {
            let holds = attach_below(x, u, m).is_ok_and(|grown| {
                let p = grown.require(x.label(u)).expect("attach keeps labels");
                retract(&grown, p).is_ok_and(|back| is_isomorphic(&back, x).is_some())
            });
            s.record(7, holds);
        }
    }

    if unique_max {
        s.record(8, reduce_to_point(x).and_then(|seq| seq.verify()).is_ok());
    }
    s
}

/// A random poset: a random DAG on a shuffled node order, each forward edge kept with a
/// density drawn from {0.2, 0.4, 0.6}, closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Poset {
    let density = *[0.2, 0.4, 0.6].choose(rng).expect("nonempty");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Poset::from_generators(labels, pairs).expect("forward edges are acyclic")
}

/// Trial `t` of a seeded run: its own stream, so trials are independent of scheduling.
fn random_case(seed: u64, trial: u64) -> (Poset, Subsets) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let n = rng.gen_range(1..=MAX_RANDOM_N);
    let p = random_poset(&mut rng, n);
    let k = p.minimals().len() as u32;
    let full = (1u32 << k) - 1;
    let mut masks = vec![full];
    masks.extend((0..8).map(|_| rng.gen_range(1..=full)));
    masks.sort_unstable();
    masks.dedup();
    (p, Subsets::Masks(masks))
}

/// Exhaustive surgery checks over every class up to `max_n` nodes, then `random_trials`
/// seeded random posets of up to ten nodes.
pub fn verify_surgery_lemmas(
    max_n: usize,
    random_trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<LemmaSummary> {
    let classes: Vec<Poset> = enumerate_up_to(max_n)?.into_iter().flatten().collect();
    let exhaustive = fold_parallel(&classes, jobs, |p| lemma_tally(p, &Subsets::All));
    let trials: Vec<u64> = (0..random_trials as u64).collect();
    let random = fold_parallel(&trials, jobs, |&t| {
        let (p, subsets) = random_case(seed, t);
        lemma_tally(&p, &subsets)
    });
    Ok(exhaustive.merge(random))
}

/// Per-size counts of classes and of the classes passing each check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub iso_classes: usize,
    pub unique_max: usize,
    pub unique_min_max: usize,
    pub local_realizable: usize,
    pub nonlocal_realizable: usize,
    pub reduced_ok: usize,
}

impl Merge for CensusRow {
    fn merge(self, o: Self) -> Self {
        CensusRow {
            n: self.n.max(o.n),
            iso_classes: self.iso_classes + o.iso_classes,
            unique_max: self.unique_max + o.unique_max,
            unique_min_max: self.unique_min_max + o.unique_min_max,
            local_realizable: self.local_realizable + o.local_realizable,
            nonlocal_realizable: self.nonlocal_realizable + o.nonlocal_realizable,
            reduced_ok: self.reduced_ok + o.reduced_ok,
        }
    }
}

fn classify_one(p: &Poset) -> CensusRow {
    let unique_max = p.maximals().len() == 1;
    let unique_min = p.minimals().len() == 1;
    let reduced = unique_max && reduce_to_point(p).and_then(|s| s.verify()).is_ok();
    CensusRow {
        n: p.len(),
        iso_classes: 1,
        unique_max: unique_max as usize,
        unique_min_max: (unique_max && unique_min) as usize,
        local_realizable: check_local_ufd(p).verdict as usize,
        nonlocal_realizable: check_nonlocal_ufd(p).verdict as usize,
        reduced_ok: reduced as usize,
    }
}

pub fn classify(max_n: usize, jobs: usize) -> Result<Vec<CensusRow>> {
    Ok(enumerate_up_to(max_n)?
        .iter()
        .map(|level| fold_parallel(level, jobs, classify_one))
        .collect())
}

/// Fixed-width text table of census rows.
pub fn render_table(rows: &[CensusRow]) -> String {
    let mut out = format!(
        "{:>3} {:>11} {:>10} {:>14} {:>16} {:>19} {:>10}\n",
        "n",
        "iso_classes",
        "unique_max",
        "unique_min_max",
        "local_realizable",
        "nonlocal_realizable",
        "reduced_ok"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3} {:>11} {:>10} {:>14} {:>16} {:>19} {:>10}",
            r.n,
            r.iso_classes,
            r.unique_max,
            r.unique_min_max,
            r.local_realizable,
            r.nonlocal_realizable,
            r.reduced_ok
        );
    }
    out
}

/// Which population checks a census run performs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verify {
    None,
    Reduce,
    Lemmas,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaEntry {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub random_trials: usize,
    pub posets: usize,
    pub checks: Vec<LemmaEntry>,
}

/// Everything a census run prints. Independent of thread count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub max_n: usize,
    pub rows: Vec<CensusRow>,
    pub reduction: Option<ReductionSummary>,
    pub lemmas: Option<LemmaReport>,
    pub violations: usize,
}

pub fn run_census(
    max_n: usize,
    verify: Verify,
    seed: u64,
    random_trials: usize,
    jobs: usize,
) -> Result<CensusReport> {
    check_size(max_n, MAX_CENSUS_N)?;
    let rows = classify(max_n, jobs)?;
    let reduction = match verify {
        Verify::Reduce | Verify::All => Some(verify_reduction_theorem(max_n, jobs)?),
        _ => None,
    };
    let lemmas = match verify {
        Verify::Lemmas | Verify::All => {
            let s = verify_surgery_lemmas(max_n, random_trials, seed, jobs)?;
            Some(LemmaReport {
                seed,
                random_trials,
                posets: s.posets,
                checks: s
                    .entries()
                    .map(|(name, t)| LemmaEntry {
                        name,
                        cases: t.cases,
                        violations: t.violations,
                    })
                    .collect(),
            })
        }
        _ => None,
    };
    let violations = reduction.as_ref().map_or(0, |r| r.failures)
        + lemmas
            .as_ref()
            .map_or(0, |l| l.checks.iter().map(|c| c.violations).sum());
    Ok(CensusReport {
        max_n,
        rows,
        reduction,
        lemmas,
        violations,
    })
}

impl CensusReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("census up to n = {}\n", self.max_n);
        out.push_str(&render_table(&self.rows));
        if let Some(r) = &self.reduction {
            let _ = writeln!(
                out,
                "\nreduction to a point: classes {} unique_max {} verified {} failures {}",
                r.classes, r.unique_max, r.verified, r.failures
            );
        }
        if let Some(l) = &self.lemmas {
            let _ = writeln!(
                out,
                "\nsurgery lemmas: posets {} (exhaustive to n = {}, {} random with seed {})",
                l.posets, self.max_n, l.random_trials, l.seed
            );
            for c in &l.checks {
                let _ = writeln!(
                    out,
                    "  {:<26} cases {:>8} violations {:>4}",
                    c.name, c.cases, c.violations
                );
            }
        }
        let _ = writeln!(out, "\nviolations: {}", self.violations);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census report serializes") + "\n"
    }
}
