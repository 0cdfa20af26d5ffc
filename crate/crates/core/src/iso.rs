//! Order isomorphism by backtracking over invariant-compatible candidates.

use crate::poset::{NodeId, Poset};

/// Per-node isomorphism invariant: height, lower/upper cover degree, up-set and down-set size.
pub type Profile = (usize, usize, usize, usize, usize);

pub fn profile(p: &Poset, x: NodeId) -> Profile {
    let lower = p.nodes().filter(|&u| p.covers(u, x)).count();
    let upper = p.nodes().filter(|&v| p.covers(x, v)).count();
    let up = p.nodes().filter(|&v| p.leq(x, v)).count();
    let down = p.nodes().filter(|&u| p.leq(u, x)).count();
    (p.height(x), lower, upper, up, down)
}

/// Finds an order isomorphism `p → q`, returned as the image of each node of `p` by position.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<NodeId>> {
    if p.len() != q.len() {
        return None;
    }
    let pp: Vec<Profile> = p.nodes().map(|x| profile(p, x)).collect();
    let qp: Vec<Profile> = q.nodes().map(|y| profile(q, y)).collect();
    let mut ps = pp.clone();
    let mut qs = qp.clone();
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return None;
    }

    // Place the most constrained nodes first.
    let mut order: Vec<NodeId> = p.nodes().collect();
    order.sort_by_key(|&x| (pp.iter().filter(|&&o| o == pp[x.index()]).count(), x));

    let mut image: Vec<Option<NodeId>> = vec![None; p.len()];
    let mut used = vec![false; q.len()];
    if extend(p, q, &pp, &qp, &order, 0, &mut image, &mut used) {
        Some(image.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &Poset,
    q: &Poset,
    pp: &[Profile],
    qp: &[Profile],
    order: &[NodeId],
    depth: usize,
    image: &mut [Option<NodeId>],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in q.nodes() {
        if used[y.index()] || qp[y.index()] != pp[x.index()] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let v = image[w.index()].expect("placed");
            p.leq(w, x) == q.leq(v, y) && p.leq(x, w) == q.leq(y, v)
        });
        if !consistent {
            continue;
        }
        image[x.index()] = Some(y);
        used[y.index()] = true;
        if extend(p, q, pp, qp, order, depth + 1, image, used) {
            return true;
        }
        image[x.index()] = None;
        used[y.index()] = false;
    }
    false
}
