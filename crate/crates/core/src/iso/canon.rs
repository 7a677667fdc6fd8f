//! Canonical labeling.
//!
//! Twin classes (equal open or closed neighbourhoods, equal colour) are
//! collapsed repeatedly into coloured vertices. The reduced coloured graph is
//! canonicalized by individualization and equitable refinement, keeping the
//! least leaf matrix and pruning children with automorphisms found so far.
//! The reduced labeling is then expanded back; the members of a collapsed
//! class are interchangeable, so the expansion is canonical too.

use std::collections::BTreeMap;

use web_time::Instant;

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};

/// Structural colour of a collapsed vertex: `[0]` for an original vertex,
/// `[kind, count, child...]` for a class of `count` twins of colour `child`
/// (kind 1 = independent, 2 = clique).
type Color = Vec<u64>;

#[derive(Debug, Clone)]
enum Tree {
    Leaf(usize),
    Node(Vec<Tree>),
}

impl Tree {
    fn expand(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Node(children) => children.iter().for_each(|c| c.expand(out)),
        }
    }
}

struct Reduced {
    adj: Vec<BitSet>,
    colors: Vec<Color>,
    trees: Vec<Tree>,
}

fn twin_reduce(adj: &BitMatrix) -> Reduced {
    let n = adj.size();
    let mut red = Reduced {
        adj: adj.rows().to_vec(),
        colors: vec![vec![0]; n],
        trees: (0..n).map(Tree::Leaf).collect(),
    };
    loop {
        let before = red.adj.len();
        collapse(&mut red, false);
        collapse(&mut red, true);
        if red.adj.len() == before {
            return red;
        }
    }
}

/// Merge classes of false twins (`closed == false`) or true twins.
fn collapse(red: &mut Reduced, closed: bool) {
    let m = red.adj.len();
    let mut classes: BTreeMap<(Vec<u64>, &Color), Vec<usize>> = BTreeMap::new();
    for v in 0..m {
        let mut nb = red.adj[v].clone();
        if closed {
            nb.insert(v);
        }
        classes
            .entry((nb.words().to_vec(), &red.colors[v]))
            .or_default()
            .push(v);
    }
    if classes.len() == m {
        return;
    }
    // representative = smallest member; keep representatives in index order
    let mut rep_of = vec![usize::MAX; m];
    let mut groups: Vec<Vec<usize>> = classes.into_values().collect();
    groups.sort_by_key(|g| g[0]);
    for (k, g) in groups.iter().enumerate() {
        for &v in g {
            rep_of[v] = k;
        }
    }
    let k = groups.len();
    let adj = groups
        .iter()
        .enumerate()
        .map(|(i, g)| {
            BitSet::from_indices(
                k,
                red.adj[g[0]].iter().map(|u| rep_of[u]).filter(|&j| j != i),
            )
        })
        .collect();
    let mut colors = Vec::with_capacity(k);
    let mut trees = Vec::with_capacity(k);
    for g in &groups {
        if g.len() == 1 {
            colors.push(red.colors[g[0]].clone());
            trees.push(red.trees[g[0]].clone());
        } else {
            let mut c = vec![if closed { 2 } else { 1 }, g.len() as u64];
            c.extend_from_slice(&red.colors[g[0]]);
            colors.push(c);
            trees.push(Tree::Node(
                g.iter().map(|&v| red.trees[v].clone()).collect(),
            ));
        }
    }
    *red = Reduced { adj, colors, trees };
}

type Partition = Vec<Vec<usize>>;

fn refine(adj: &[BitSet], mut cells: Partition) -> Partition {
    let n = adj.len();
    loop {
        let sets: Vec<BitSet> = cells
            .iter()
            .map(|c| BitSet::from_indices(n, c.iter().copied()))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    (
                        sets.iter()
                            .map(|s| adj[v].intersection_count(s) as u32)
                            .collect(),
                        v,
                    )
                })
                .collect();
            sigs.sort_unstable();
            let mut start = 0;
            for i in 1..=sigs.len() {
                if i == sigs.len() || sigs[i].0 != sigs[start].0 {
                    next.push(sigs[start..i].iter().map(|s| s.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct Search<'a> {
    adj: &'a [BitSet],
    deadline: Option<Instant>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_key(&self, labeling: &[usize]) -> Vec<u64> {
        let n = labeling.len();
        let mut pos = vec![0; n];
        for (k, &v) in labeling.iter().enumerate() {
            pos[v] = k;
        }
        let mut key = Vec::with_capacity(n * n.div_ceil(64));
        for &v in labeling {
            let row = BitSet::from_indices(n, self.adj[v].iter().map(|u| pos[u]));
            key.extend_from_slice(row.words());
        }
        key
    }

    fn visit(&mut self, cells: Partition, prefix: &mut Vec<usize>) -> Result<()> {
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::Timeout);
        }
        let Some(target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
        else {
            let labeling: Vec<usize> = cells.into_iter().flatten().collect();
            let key = self.leaf_key(&labeling);
            match &self.best {
                Some((best, best_lab)) if *best == key => {
                    let mut gamma = vec![0; labeling.len()];
                    for (k, &v) in best_lab.iter().enumerate() {
                        gamma[v] = labeling[k];
                    }
                    self.automorphisms.push(gamma);
                }
                Some((best, _)) if *best < key => {}
                _ => self.best = Some((key, labeling)),
            }
            return Ok(());
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target].clone() {
            let orbit = self.orbit_rep(prefix, v);
            if explored.contains(&orbit) {
                continue;
            }
            explored.push(orbit);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            let child = refine(self.adj, child);
            prefix.push(v);
            self.visit(child, prefix)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Smallest vertex in the orbit of `v` under the known automorphisms
    /// fixing `prefix` pointwise.
    fn orbit_rep(&self, prefix: &[usize], v: usize) -> usize {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        let mut seen = vec![v];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            for g in &gens {
                if !seen.contains(&g[u]) {
                    seen.push(g[u]);
                }
            }
            i += 1;
        }
        seen.into_iter().min().unwrap()
    }
}

/// Canonical labeling: `labeling[k]` is the input vertex placed at position `k`.
pub(super) fn canonical_labeling(adj: &BitMatrix, deadline: Option<Instant>) -> Result<Vec<usize>> {
    if adj.size() == 0 {
        return Ok(Vec::new());
    }
    let red = twin_reduce(adj);
    let mut by_color: BTreeMap<&Color, Vec<usize>> = BTreeMap::new();
    for (v, c) in red.colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let cells = refine(&red.adj, by_color.into_values().collect());
    let mut search = Search {
        adj: &red.adj,
        deadline,
        best: None,
        automorphisms: Vec::new(),
    };
    search.visit(cells, &mut Vec::new())?;
    let (_, reduced_labeling) = search.best.expect("at least one leaf");
    let mut labeling = Vec::with_capacity(adj.size());
    for v in reduced_labeling {
        red.trees[v].expand(&mut labeling);
    }
    Ok(labeling)
}
