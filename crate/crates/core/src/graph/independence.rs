use serde::Serialize;

use super::NonCyclicGraph;
use crate::cyclic::CyclicizerTable;
use crate::group::Group;

/// Largest vertex count for the exact search.
pub const BRUTE_FORCE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Independence {
    /// `max(formula, brute_force)`.
    pub value: usize,
    /// Largest element order minus `|Cyc(G)|`.
    pub formula: usize,
    /// Element indices of a largest cyclic subgroup outside `Cyc(G)`.
    pub witness: Vec<usize>,
    pub brute_force: Option<usize>,
    pub mismatch: bool,
}

pub fn independence_number(
    g: &Group,
    cyc: &CyclicizerTable,
    graph: &NonCyclicGraph,
) -> Independence {
    let biggest = cyc
        .maximal_cyclic()
        .first()
        .expect("every group has a maximal cyclic subgroup");
    debug_assert_eq!(biggest.order(), g.elem_orders().max().unwrap());
    let witness: Vec<usize> = biggest
        .members
        .iter()
        .filter(|&x| !cyc.cyc().contains(x))
        .collect();
    let formula = witness.len();
    let brute_force = max_independent_set(graph).map(|s| s.len());
    let value = brute_force.map_or(formula, |b| b.max(formula));
    Independence {
        value,
        formula,
        witness,
        brute_force,
        mismatch: brute_force.is_some_and(|b| b != formula),
    }
}

/// Exact maximum independent set (vertex positions) for graphs of at most
/// [`BRUTE_FORCE_LIMIT`] vertices; branch and bound with a greedy colouring
/// bound on the complement.
pub fn max_independent_set(graph: &NonCyclicGraph) -> Option<Vec<usize>> {
    let m = graph.vertex_count();
    if m > BRUTE_FORCE_LIMIT {
        return None;
    }
    let adj = graph.adjacency();
    let comp: Vec<u64> = (0..m)
        .map(|v| {
            (0..m)
                .filter(|&u| u != v && !adj.get(u, v))
                .fold(0u64, |acc, u| acc | 1 << u)
        })
        .collect();
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut best = 0u64;
    let mut current = 0u64;
    expand(&comp, all, &mut current, &mut best);
    Some((0..m).filter(|&v| best >> v & 1 == 1).collect())
}

fn expand(comp: &[u64], candidates: u64, current: &mut u64, best: &mut u64) {
    let (order, colors) = color_bound(comp, candidates);
    let mut p = candidates;
    for k in (0..order.len()).rev() {
        if current.count_ones() + colors[k] <= best.count_ones() {
            return;
        }
        let v = order[k];
        *current |= 1 << v;
        let next = p & comp[v];
        if next == 0 {
            if current.count_ones() > best.count_ones() {
                *best = *current;
            }
        } else {
            expand(comp, next, current, best);
        }
        *current &= !(1 << v);
        p &= !(1 << v);
    }
}

/// Greedy colouring of `candidates` in the complement graph; returns the
/// vertices in colour order with the colour number (1-based) of each.
fn color_bound(comp: &[u64], candidates: u64) -> (Vec<usize>, Vec<u32>) {
    let mut order = Vec::with_capacity(candidates.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = candidates;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1 << v);
            q &= !comp[v];
            uncolored &= !(1 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}
