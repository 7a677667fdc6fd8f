//! The non-cyclic graph: vertices `G \ Cyc(G)`, edges between elements that
//! do not generate a cyclic subgroup.

mod independence;
mod report;

use serde::Serialize;

use crate::bitset::{BitMatrix, BitSet};
use crate::cyclic::CyclicizerTable;
use crate::error::{Error, Result};
use crate::group::Group;

pub use independence::{independence_number, max_independent_set, Independence, BRUTE_FORCE_LIMIT};
pub use report::{analyze, Analysis, InvariantReport};

#[derive(Debug, Clone)]
pub struct NonCyclicGraph {
    name: String,
    group_order: usize,
    /// Element index of each vertex, ascending.
    vertices: Vec<usize>,
    /// Vertex position of each element, `None` for `Cyc(G)`.
    position: Vec<Option<usize>>,
    labels: Vec<String>,
    adjacency: BitMatrix,
}

impl NonCyclicGraph {
    pub fn build(g: &Group, cyc: &CyclicizerTable) -> Result<Self> {
        let n = g.order();
        let vertices: Vec<usize> = (0..n).filter(|&x| !cyc.cyc().contains(x)).collect();
        if vertices.is_empty() {
            return Err(Error::GroupIsCyclic(g.name().to_owned()));
        }
        let mut position = vec![None; n];
        for (k, &v) in vertices.iter().enumerate() {
            position[v] = Some(k);
        }
        let m = vertices.len();
        let rows = vertices
            .iter()
            .map(|&x| {
                let cx = cyc.cyc_of(x);
                BitSet::from_indices(
                    m,
                    vertices
                        .iter()
                        .enumerate()
                        .filter(|&(_, &y)| !cx.contains(y))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        let adjacency = BitMatrix::from_rows(rows);
        debug_assert!(adjacency.is_symmetric());
        Ok(NonCyclicGraph {
            name: g.name().to_owned(),
            group_order: n,
            labels: vertices.iter().map(|&v| g.label(v).to_owned()).collect(),
            vertices,
            position,
            adjacency,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    /// Vertex position of a group element.
    pub fn position(&self, element: usize) -> Option<usize> {
        self.position.get(element).copied().flatten()
    }

    pub fn element(&self, vertex: usize) -> usize {
        self.vertices[vertex]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.adjacency.row(vertex).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let m = self.vertex_count();
        let mut dist = vec![None; m];
        let mut visited = BitSet::new(m);
        let mut frontier = BitSet::new(m);
        visited.insert(source);
        frontier.insert(source);
        dist[source] = Some(0);
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = BitSet::new(m);
            for u in frontier.iter() {
                next.union_with(self.adjacency.row(u));
            }
            next.difference_with(&visited);
            for v in next.iter() {
                dist[v] = Some(d);
            }
            visited.union_with(&next);
            frontier = next;
        }
        dist
    }

    /// Distance between two group elements (both must be vertices).
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let (pa, pb) = (self.position(a)?, self.position(b)?);
        self.distances_from(pa)[pb]
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Maximum eccentricity with the lexicographically least pair of
    /// elements attaining it.
    pub fn diameter(&self) -> Result<Diameter> {
        let m = self.vertex_count();
        let mut best = Diameter {
            value: 0,
            witness: (self.vertices[0], self.vertices[0]),
        };
        for s in 0..m {
            let dist = self.distances_from(s);
            for (t, d) in dist.iter().enumerate().skip(s + 1) {
                let d = d.ok_or(Error::Disconnected)?;
                if d > best.value {
                    best = Diameter {
                        value: d,
                        witness: (self.vertices[s], self.vertices[t]),
                    };
                }
            }
        }
        Ok(best)
    }

    /// Clique from the generators of the maximal cyclic subgroups and the
    /// colouring that gives each vertex the first maximal cyclic subgroup
    /// containing it; both are validated against the adjacency.
    pub fn clique_and_chromatic(&self, cyc: &CyclicizerTable) -> Result<CliqueColoring> {
        let maxes = cyc.maximal_cyclic();
        let clique: Vec<usize> = maxes.iter().map(|m| m.generator).collect();
        let positions = clique
            .iter()
            .map(|&c| {
                self.position(c).ok_or_else(|| {
                    Error::VerificationFailure(format!("generator {c} lies in Cyc(G)"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, &a) in positions.iter().enumerate() {
            for &b in &positions[i + 1..] {
                if !self.adjacency.get(a, b) {
                    return Err(Error::VerificationFailure(format!(
                        "clique generators {} and {} are not adjacent",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        let coloring = self
            .vertices
            .iter()
            .map(|&v| {
                maxes
                    .iter()
                    .position(|m| m.members.contains(v))
                    .ok_or_else(|| {
                        Error::VerificationFailure(format!(
                            "element {v} in no maximal cyclic subgroup"
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut classes = vec![BitSet::new(self.vertex_count()); maxes.len()];
        for (v, &c) in coloring.iter().enumerate() {
            classes[c].insert(v);
        }
        for (v, &c) in coloring.iter().enumerate() {
            if !self.adjacency.row(v).is_disjoint(&classes[c]) {
                return Err(Error::VerificationFailure(format!(
                    "colour class {c} is not independent"
                )));
            }
        }
        let used = classes.iter().filter(|c| !c.is_empty()).count();
        if used != maxes.len() {
            return Err(Error::VerificationFailure(format!(
                "{used} colours used, expected {}",
                maxes.len()
            )));
        }
        Ok(CliqueColoring {
            omega: clique.len(),
            clique,
            chi: used,
            coloring,
        })
    }

    pub fn degree_kinds(&self) -> DegreeKinds {
        let mut degrees = self.degrees();
        degrees.sort_unstable();
        let mut multiset: Vec<(usize, usize)> = Vec::new();
        for d in degrees {
            match multiset.last_mut() {
                Some((last, count)) if *last == d => *count += 1,
                _ => multiset.push((d, 1)),
            }
        }
        let kinds = multiset.len();
        DegreeKinds {
            multiset,
            kinds,
            regular: kinds == 1,
        }
    }

    /// Sorted part sizes when the graph is complete multipartite.
    pub fn multipartite_profile(&self) -> Option<Vec<usize>> {
        let mut sizes: Vec<usize> = self.multipartite_parts()?.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        Some(sizes)
    }

    /// Parts (vertex positions) ordered by (size, smallest vertex).
    pub fn multipartite_parts(&self) -> Option<Vec<Vec<usize>>> {
        crate::iso::multipartite_parts(&self.adjacency)
    }

    pub fn omega_bounds(&self, g: &Group, cyc: &CyclicizerTable) -> OmegaBounds {
        let s = cyc.s();
        let index = g.order() / cyc.cyc_size();
        let covering = (s >= 3).then(|| {
            let fact = (1..=(s as u128 - 3)).try_fold(1u128, |a, k| a.checked_mul(k));
            let sq = (s as u128 - 1).pow(2);
            let cube = (s as u128 - 2).pow(3);
            let rhs = fact
                .and_then(|f| sq.max(cube).checked_mul(f))
                .unwrap_or(u128::MAX);
            CoveringBound {
                quotient_order: index as u128,
                bound: rhs,
                holds: (index as u128) <= rhs,
            }
        });
        OmegaBounds {
            omega: s,
            index,
            index_holds: s <= index,
            covering,
        }
    }

    /// Both inequalities on `omega`; `NotApplicable` when `s < 3` and the
    /// index bound held (the covering bound needs `s >= 3`).
    pub fn verify_omega_bound(&self, g: &Group, cyc: &CyclicizerTable) -> Result<bool> {
        let b = self.omega_bounds(g, cyc);
        match b.covering {
            Some(c) => Ok(b.index_holds && c.holds),
            None if !b.index_holds => Ok(false),
            None => Err(Error::NotApplicable(format!(
                "covering bound needs s >= 3, got s = {}",
                b.omega
            ))),
        }
    }

    pub fn to_dot(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = format!("graph \"{}\" {{\n", esc(&self.name));
        for l in &self.labels {
            out.push_str(&format!("  \"{}\";\n", esc(l)));
        }
        for a in 0..self.vertex_count() {
            for b in self.adjacency.row(a).iter().filter(|&b| b > a) {
                out.push_str(&format!(
                    "  \"{}\" -- \"{}\";\n",
                    esc(&self.labels[a]),
                    esc(&self.labels[b])
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub value: usize,
    /// Element indices.
    pub witness: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueColoring {
    pub omega: usize,
    pub clique: Vec<usize>,
    pub chi: usize,
    /// Colour of each vertex position.
    pub coloring: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeKinds {
    pub multiset: Vec<(usize, usize)>,
    pub kinds: usize,
    pub regular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveringBound {
    pub quotient_order: u128,
    /// Saturates at `u128::MAX`.
    pub bound: u128,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OmegaBounds {
    pub omega: usize,
    pub index: usize,
    pub index_holds: bool,
    pub covering: Option<CoveringBound>,
}
