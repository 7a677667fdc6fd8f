//! Cyclicizers, the cyclicizer of the group, maximal cyclic subgroups,
//! tidiness, and the prime graph.

use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// `Cyc_G(x) = { y : <x, y> is cyclic }`.
pub fn cyclicizer(g: &Group, x: usize) -> BitSet {
    BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&y| g.is_pair_cyclic(x, y)),
    )
}

/// Intersection of the cyclicizers of every element of `xs`.
pub fn cyclicizer_of_set(g: &Group, xs: &[usize]) -> Result<BitSet> {
    let (&first, rest) = xs.split_first().ok_or(Error::EmptySet)?;
    let mut acc = cyclicizer(g, first);
    for &x in rest {
        acc.intersect_with(&cyclicizer(g, x));
    }
    Ok(acc)
}

/// `Cyc_X(Y)`: elements of `xs` generating a cyclic group with every element of `ys`.
pub fn relative_cyclicizer(g: &Group, xs: &BitSet, ys: &BitSet) -> BitSet {
    BitSet::from_indices(
        g.order(),
        xs.iter()
            .filter(|&x| ys.iter().all(|y| g.is_pair_cyclic(x, y))),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalCyclic {
    /// Smallest element index generating the subgroup.
    pub generator: usize,
    pub members: BitSet,
}

impl MaximalCyclic {
    pub fn order(&self) -> usize {
        self.members.count()
    }
}

/// Maximal cyclic subgroups ordered by size descending, then generator.
pub fn maximal_cyclic_subgroups(g: &Group) -> Vec<MaximalCyclic> {
    let mut out: Vec<MaximalCyclic> = Vec::new();
    for x in g.maximal_cyclic_generators() {
        let set = g.cyclic_set(x);
        if !out.iter().any(|m| m.members == *set) {
            out.push(MaximalCyclic {
                generator: x,
                members: set.clone(),
            });
        }
    }
    out.sort_by_key(|m| (std::cmp::Reverse(m.order()), m.generator));
    out
}

#[derive(Debug, Clone)]
pub struct CyclicizerTable {
    order: usize,
    cyc_of: Vec<BitSet>,
    cyc_g: BitSet,
    maximal_cyclic: Vec<MaximalCyclic>,
}

impl CyclicizerTable {
    pub fn new(g: &Group) -> Self {
        let n = g.order();
        let matrix = g.pair_cyclic_matrix();
        let cyc_of: Vec<BitSet> = (0..n).map(|x| matrix.row(x).clone()).collect();
        let mut cyc_g = BitSet::full(n);
        for row in &cyc_of {
            cyc_g.intersect_with(row);
        }
        CyclicizerTable {
            order: n,
            cyc_of,
            cyc_g,
            maximal_cyclic: maximal_cyclic_subgroups(g),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cyc_of(&self, x: usize) -> &BitSet {
        &self.cyc_of[x]
    }

    /// `Cyc(G)`.
    pub fn cyc(&self) -> &BitSet {
        &self.cyc_g
    }

    pub fn cyc_size(&self) -> usize {
        self.cyc_g.count()
    }

    pub fn cyc_subgroup(&self) -> Subgroup {
        Subgroup::from_set(self.cyc_g.clone())
    }

    pub fn maximal_cyclic(&self) -> &[MaximalCyclic] {
        &self.maximal_cyclic
    }

    pub fn s(&self) -> usize {
        self.maximal_cyclic.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl Serialize for CyclicizerTable {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Max {
            generator: usize,
            members: Vec<usize>,
        }
        #[derive(Serialize)]
        struct Doc {
            order: usize,
            #[serde(rename = "cyc_G")]
            cyc_g: Vec<usize>,
            cyc_of: Vec<Vec<usize>>,
            maximal_cyclic: Vec<Max>,
        }
        Doc {
            order: self.order,
            cyc_g: self.cyc_g.to_vec(),
            cyc_of: self.cyc_of.iter().map(BitSet::to_vec).collect(),
            maximal_cyclic: self
                .maximal_cyclic
                .iter()
                .map(|m| Max {
                    generator: m.generator,
                    members: m.members.to_vec(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TidyWitness {
    /// Element whose cyclicizer is not a subgroup.
    pub x: usize,
    /// Members of `Cyc_G(x)` whose product leaves it.
    pub a: usize,
    pub b: usize,
}

/// `Ok(())` when every cyclicizer is a subgroup, otherwise the smallest
/// failing element and the first offending product.
pub fn is_tidy(g: &Group) -> std::result::Result<(), TidyWitness> {
    for x in 0..g.order() {
        let d = cyclicizer(g, x);
        for a in d.iter() {
            if let Some(b) = d.iter().find(|&b| !d.contains(g.mul(a, b))) {
                return Err(TidyWitness { x, a, b });
            }
        }
    }
    Ok(())
}

/// `Cyc_D(D)` for `D = Cyc_G(x)`.
pub fn cyclicizer_core(g: &Group, x: usize) -> BitSet {
    let d = cyclicizer(g, x);
    relative_cyclicizer(g, &d, &d)
}

/// `G / Cyc(G)`; `Cyc(G)` is central, hence normal.
pub fn quotient_by_cyc(g: &Group, table: &CyclicizerTable) -> Group {
    g.quotient(&table.cyc_subgroup(), format!("{}/Cyc", g.name()))
        .expect("Cyc(G) is central")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Gruenberg-Kegel graph: primes dividing `|G|`, joined when some element
/// has order `pq`.
pub fn prime_graph(g: &Group) -> PrimeGraph {
    let vertices = prime_divisors(g.order());
    let pe = g.pi_e();
    let mut edges = Vec::new();
    for (i, &p) in vertices.iter().enumerate() {
        for &q in &vertices[i + 1..] {
            if pe.iter().any(|&o| o % (p * q) == 0) {
                edges.push((p, q));
            }
        }
    }
    // union-find over prime positions
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for &(p, q) in &edges {
        let a = vertices.iter().position(|&v| v == p).unwrap();
        let b = vertices.iter().position(|&v| v == q).unwrap();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let components = (0..vertices.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count();
    PrimeGraph {
        vertices,
        edges,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, GroupSpec};

    fn g(s: &str) -> Group {
        build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn labels(g: &Group, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| g.label(i).to_owned()).collect()
    }

    #[test]
    fn cyclicizer_of_02_in_z2_z4() {
        let h = g("Z2xZ4");
        let x = h.index_of("(0,2)").unwrap();
        assert_eq!(
            labels(&h, &cyclicizer(&h, x)),
            ["(0,0)", "(0,1)", "(0,2)", "(0,3)", "(1,1)", "(1,3)"]
        );
    }

    #[test]
    fn cyclic_group_cyclicizer_is_everything() {
        let z = g("Z12");
        assert_eq!(cyclicizer(&z, 0).count(), 12);
        assert_eq!(CyclicizerTable::new(&z).cyc_size(), 12);
    }

    #[test]
    fn quaternion_cyclicizers() {
        let q = g("Q8");
        let i = (0..8).find(|&a| q.elem_order(a) == 4).unwrap();
        let c = cyclicizer(&q, i);
        assert_eq!(c, *q.cyclic_set(i));
        let t = CyclicizerTable::new(&q);
        assert_eq!(t.cyc_size(), 2);
        assert_eq!(t.cyc(), q.center().as_set());
    }

    #[test]
    fn z2_z4_cyc_is_trivial() {
        let h = g("Z2xZ4");
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(cyclicizer_of_set(&h, &all).unwrap().to_vec(), vec![0]);
        assert!(matches!(cyclicizer_of_set(&h, &[]), Err(Error::EmptySet)));
        assert_eq!(cyclicizer_of_set(&h, &[0]).unwrap().count(), 8);
    }

    #[test]
    fn maximal_cyclic_counts() {
        assert_eq!(maximal_cyclic_subgroups(&g("Z9")).len(), 1);
        let q = maximal_cyclic_subgroups(&g("Q8"));
        assert_eq!(q.len(), 3);
        assert!(q.iter().all(|m| m.order() == 4));
        let s3 = g("S3");
        let m = maximal_cyclic_subgroups(&s3);
        assert_eq!(
            m.iter().map(MaximalCyclic::order).collect::<Vec<_>>(),
            vec![3, 2, 2, 2]
        );
    }

    #[test]
    fn tidiness() {
        assert!(is_tidy(&g("EA(3,2)")).is_ok());
        assert!(is_tidy(&g("S3")).is_ok());
        let h = g("Z2xZ4");
        let w = is_tidy(&h).unwrap_err();
        assert_eq!(h.label(w.x), "(0,2)");
        assert!(is_tidy(&g("Ab(4,4)")).is_err());
        assert!(is_tidy(&g("Ab(9,9)")).is_err());
    }

    #[test]
    fn prime_graphs() {
        let z6 = prime_graph(&g("Z6"));
        assert_eq!(
            (z6.vertices.clone(), z6.edges.clone(), z6.components),
            (vec![2, 3], vec![(2, 3)], 1)
        );
        let s3 = prime_graph(&g("S3"));
        assert_eq!((s3.edges.len(), s3.components), (0, 2));
        let a5 = prime_graph(&g("A5"));
        assert_eq!(
            (a5.vertices.clone(), a5.edges.len(), a5.components),
            (vec![2, 3, 5], 0, 3)
        );
    }

    #[test]
    fn json_shape() {
        let t = CyclicizerTable::new(&g("Z2xZ2"));
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["order"], 4);
        assert_eq!(v["cyc_G"], serde_json::json!([0]));
        assert_eq!(v["cyc_of"].as_array().unwrap().len(), 4);
        assert_eq!(v["maximal_cyclic"].as_array().unwrap().len(), 3);
    }
}
