//! Brute-force oracle: groups rebuilt from permutations with no library code,
//! graph invariants computed by exhaustive search, compared with `analyze`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use noncyc::graph::analyze;
use noncyc::{build, GroupSpec};

type Perm = Vec<u8>;

fn parse_perm(degree: usize, cycles: &str) -> Perm {
    let mut p: Perm = (0..degree as u8).collect();
    for cycle in cycles.split(')').filter(|c| !c.trim().is_empty()) {
        let pts: Vec<u8> = cycle
            .trim_start_matches('(')
            .split(',')
            .map(|s| s.trim().parse::<u8>().unwrap() - 1)
            .collect();
        for k in 0..pts.len() {
            p[pts[k] as usize] = pts[(k + 1) % pts.len()];
        }
    }
    p
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

/// All elements generated by `gens`, breadth first from the identity.
fn close(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id: Perm = (0..degree as u8).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

struct Oracle {
    n: usize,
    cyclic_pair: Vec<Vec<bool>>,
    cyclic_subgroups: Vec<BTreeSet<usize>>,
}

impl Oracle {
    fn new(degree: usize, gens: &[&str]) -> Self {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_perm(degree, g)).collect();
        let elems = close(degree, &gens);
        let n = elems.len();
        let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = |a: usize, b: usize| index[&compose(&elems[a], &elems[b])];
        let cyclic_subgroups: Vec<BTreeSet<usize>> = (0..n)
            .map(|x| {
                let mut s = BTreeSet::from([0]);
                let mut y = x;
                while s.insert(y) {
                    y = mul(y, x);
                }
                s
            })
            .collect();
        // <x, y> is cyclic iff its closure equals <z> for some z in it
        let mut cyclic_pair = vec![vec![false; n]; n];
        for x in 0..n {
            for y in x..n {
                let sub = close(degree, &[elems[x].clone(), elems[y].clone()]);
                let ids: BTreeSet<usize> = sub.iter().map(|p| index[p]).collect();
                let c = ids.iter().any(|&z| cyclic_subgroups[z].len() == ids.len());
                cyclic_pair[x][y] = c;
                cyclic_pair[y][x] = c;
            }
        }
        Oracle {
            n,
            cyclic_pair,
            cyclic_subgroups,
        }
    }

    fn cyc(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|y| self.cyclic_pair[x][y]))
            .collect()
    }

    fn maximal_cyclic_count(&self) -> usize {
        let distinct: BTreeSet<&BTreeSet<usize>> = self.cyclic_subgroups.iter().collect();
        distinct
            .iter()
            .filter(|c| !distinct.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
            .count()
    }

    /// Adjacency lists of the graph on the complement of `cyc()`.
    fn graph(&self) -> Vec<Vec<bool>> {
        let cyc = self.cyc();
        let vs: Vec<usize> = (0..self.n).filter(|x| !cyc.contains(x)).collect();
        vs.iter()
            .map(|&x| vs.iter().map(|&y| !self.cyclic_pair[x][y]).collect())
            .collect()
    }
}

fn max_clique(adj: &[Vec<bool>]) -> usize {
    // branch and bound; a greedy colouring of the candidates bounds what they can add
    fn grow(adj: &[Vec<bool>], cand: &[usize], size: usize, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !adj[v][u])) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let ordered: Vec<(usize, usize)> = classes
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |&v| (v, k + 1)))
            .collect();
        let mut rest: Vec<usize> = cand.to_vec();
        for &(v, bound) in ordered.iter().rev() {
            if size + bound <= *best {
                return;
            }
            rest.retain(|&u| u != v);
            let next: Vec<usize> = rest.iter().copied().filter(|&u| adj[v][u]).collect();
            grow(adj, &next, size + 1, best);
        }
    }
    let mut best = 0;
    grow(adj, &(0..adj.len()).collect::<Vec<_>>(), 0, &mut best);
    best
}

fn colourable(adj: &[Vec<bool>], k: usize) -> bool {
    fn go(adj: &[Vec<bool>], k: usize, colour: &mut Vec<usize>, v: usize) -> bool {
        if v == adj.len() {
            return true;
        }
        let used = colour.iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if (0..v).all(|u| !adj[v][u] || colour[u] != c) {
                colour.push(c);
                if go(adj, k, colour, v + 1) {
                    return true;
                }
                colour.pop();
            }
        }
        false
    }
    go(adj, k, &mut Vec::new(), 0)
}

fn diameter(adj: &[Vec<bool>]) -> Option<usize> {
    let n = adj.len();
    let mut worst = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for u in 0..n {
                if adj[v][u] && dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        worst = worst.max(*dist.iter().max()?);
        if dist.contains(&usize::MAX) {
            return None;
        }
    }
    Some(worst)
}

const CASES: &[(&str, usize, &[&str])] = &[
    ("Z2xZ4", 6, &["(1,2)", "(3,4,5,6)"]),
    ("EA(2,3)", 6, &["(1,2)", "(3,4)", "(5,6)"]),
    ("Ab(3,3)", 6, &["(1,2,3)", "(4,5,6)"]),
    ("Ab(4,4)", 8, &["(1,2,3,4)", "(5,6,7,8)"]),
    ("Ab(2,2,4)", 8, &["(1,2)", "(3,4)", "(5,6,7,8)"]),
    ("D8", 4, &["(1,2,3,4)", "(1,3)"]),
    ("D10", 5, &["(1,2,3,4,5)", "(2,5)(3,4)"]),
    ("D12", 6, &["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]),
    ("Q8", 8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]),
    ("G(3,3)", 9, &["(1,2,3,4,5,6,7,8,9)", "(2,5,8)(3,9,6)"]),
    ("S3", 3, &["(1,2,3)", "(1,2)"]),
    ("S4", 4, &["(1,2,3,4)", "(1,2)"]),
    ("A4", 4, &["(1,2,3)", "(2,3,4)"]),
    ("A5", 5, &["(1,2,3,4,5)", "(1,2,3)"]),
    ("Z3xS3", 6, &["(1,2,3)", "(4,5,6)", "(4,5)"]),
    ("Z6xS3", 9, &["(1,2,3,4,5,6)", "(7,8,9)", "(7,8)"]),
    ("S3xS3", 6, &["(1,2,3)", "(1,2)", "(4,5,6)", "(4,5)"]),
    ("Z4xS3", 7, &["(1,2,3,4)", "(5,6,7)", "(5,6)"]),
];

#[test]
fn library_matches_brute_force() {
    for &(spec, degree, gens) in CASES {
        let oracle = Oracle::new(degree, gens);
        let g = build(&spec.parse::<GroupSpec>().unwrap()).unwrap();
        assert_eq!(g.order(), oracle.n, "{spec}");
        let r = analyze(&g).unwrap().report;

        let adj = oracle.graph();
        let v = adj.len();
        assert_eq!(r.cyc_size, oracle.cyc().len(), "{spec} |Cyc|");
        assert_eq!(r.vertex_count, v, "{spec}");

        let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &adj {
            *degrees
                .entry(row.iter().filter(|&&b| b).count())
                .or_default() += 1;
        }
        assert_eq!(
            r.degree_multiset,
            degrees.clone().into_iter().collect::<Vec<_>>(),
            "{spec}"
        );
        assert_eq!(r.kind_degrees, degrees.len(), "{spec}");
        assert_eq!(r.is_regular, degrees.len() == 1, "{spec}");
        assert_eq!(r.diameter, diameter(&adj), "{spec}");
        assert_eq!(r.is_connected, diameter(&adj).is_some(), "{spec}");

        let omega = max_clique(&adj);
        assert_eq!(r.clique_number, omega, "{spec} clique");
        assert_eq!(
            r.s,
            oracle.maximal_cyclic_count(),
            "{spec} maximal cyclic subgroups"
        );
        if v <= 40 {
            assert!(colourable(&adj, r.chromatic_number), "{spec}");
            assert!(!colourable(&adj, r.chromatic_number - 1), "{spec}");
        }
        let complement: Vec<Vec<bool>> = (0..v)
            .map(|i| (0..v).map(|j| i != j && !adj[i][j]).collect())
            .collect();
        assert_eq!(
            r.independence_number,
            max_clique(&complement),
            "{spec} independence"
        );
    }
}

#[test]
fn permutation_specs_match_named_specs() {
    for &(spec, degree, gens) in CASES.iter().filter(|c| c.1 <= 8) {
        let perm = format!("perm:{degree}:{}", gens.join(","));
        let a = analyze(&build(&spec.parse().unwrap()).unwrap())
            .unwrap()
            .report;
        let b = analyze(&build(&perm.parse().unwrap()).unwrap())
            .unwrap()
            .report;
        assert_eq!(
            (a.order, a.cyc_size, &a.degree_multiset, a.s),
            (b.order, b.cyc_size, &b.degree_multiset, b.s),
            "{spec}"
        );
    }
}
