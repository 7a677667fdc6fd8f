//! Finite groups as identity-rooted Cayley tables.
//!
//! Every [`Group`] stores its full multiplication table with the identity at
//! index 0, together with element orders, inverses and the cyclic subgroup
//! generated by each element. Everything downstream (cyclicizers, the
//! non-cyclic graph, the verification harness) only ever talks to this type.

mod build;
mod cayley;
mod spec;

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};

pub use build::{build, build_with, BuildOptions, DEFAULT_CLOSURE_CAP};
pub use cayley::{from_cayley_file, parse_cayley, write_cayley, write_cayley_file};
pub(crate) use spec::is_prime;
pub use spec::GroupSpec;

/// Largest order validated with the exhaustive associativity check.
pub const EXACT_ASSOCIATIVITY_LIMIT: usize = 256;

/// Hard limit imposed by the `u16` table storage.
pub const MAX_ORDER: usize = u16::MAX as usize;

#[derive(Debug)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<u16>,
    labels: Vec<String>,
    elem_orders: Vec<u32>,
    inverses: Vec<u16>,
    /// Flattened `x^0, x^1, .., x^(|x|-1)` for every element.
    powers: Vec<u16>,
    power_offsets: Vec<usize>,
    cyclic_sets: OnceLock<Vec<BitSet>>,
    pair_cyclic: OnceLock<BitMatrix>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            name: self.name.clone(),
            order: self.order,
            table: self.table.clone(),
            labels: self.labels.clone(),
            elem_orders: self.elem_orders.clone(),
            inverses: self.inverses.clone(),
            powers: self.powers.clone(),
            power_offsets: self.power_offsets.clone(),
            cyclic_sets: OnceLock::new(),
            pair_cyclic: OnceLock::new(),
        }
    }
}

/// A subgroup, as a set of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: BitSet,
}

impl Subgroup {
    pub(crate) fn from_set(members: BitSet) -> Self {
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn as_set(&self) -> &BitSet {
        &self.members
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        (0..g.order()).all(|a| {
            let ai = g.inv(a);
            self.members
                .iter()
                .all(|h| self.contains(g.mul(g.mul(ai, h), a)))
        })
    }

    pub fn is_cyclic_in(&self, g: &Group) -> bool {
        let n = self.order();
        self.members.iter().any(|x| g.elem_order(x) == n)
    }

    /// Materialize the subgroup as a standalone group; element `k` of the
    /// result is the `k`-th smallest member index.
    pub fn to_group(&self, g: &Group, name: impl Into<String>) -> Group {
        let members = self.members();
        let mut pos = vec![usize::MAX; g.order()];
        for (k, &m) in members.iter().enumerate() {
            pos[m] = k;
        }
        let table = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (a, b)))
            .map(|(a, b)| pos[g.mul(a, b)])
            .collect();
        let labels = members.iter().map(|&m| g.label(m).to_owned()).collect();
        Group::from_parts(name.into(), members.len(), table, labels)
            .expect("closed subgroup of a valid group is a group")
    }
}

impl Group {
    /// Build from a raw table, running full validation.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotAGroup {
                reason: "empty table".into(),
                triple: None,
            });
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidParameter(format!(
                "order {n} exceeds {MAX_ORDER}"
            )));
        }
        if table.len() != n * n {
            return Err(Error::NotAGroup {
                reason: format!("table has {} entries, expected {}", table.len(), n * n),
                triple: None,
            });
        }
        validate_table(n, &table, n <= EXACT_ASSOCIATIVITY_LIMIT)?;
        Self::from_parts(name.into(), n, table, labels)
    }

    /// Assemble a group from a table already known to be a Latin square with
    /// identity 0; computes orders, inverses and powers.
    fn from_parts(name: String, n: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        let table: Vec<u16> = table.into_iter().map(|v| v as u16).collect();
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row
                .iter()
                .position(|&v| v == 0)
                .ok_or_else(|| Error::NotAGroup {
                    reason: format!("element {a} has no right inverse"),
                    triple: None,
                })?;
            inverses[a] = b as u16;
        }
        let mut elem_orders = vec![0u32; n];
        let mut powers = Vec::new();
        let mut power_offsets = Vec::with_capacity(n + 1);
        for (a, order) in elem_orders.iter_mut().enumerate() {
            power_offsets.push(powers.len());
            let mut cur = 0usize;
            let mut d = 0u32;
            loop {
                powers.push(cur as u16);
                cur = mul(cur, a);
                d += 1;
                if cur == 0 {
                    break;
                }
                if d as usize > n {
                    return Err(Error::NotAGroup {
                        reason: format!("element {a} has no finite order"),
                        triple: None,
                    });
                }
            }
            if !n.is_multiple_of(d as usize) {
                return Err(Error::NotAGroup {
                    reason: format!("order {d} of element {a} does not divide {n}"),
                    triple: None,
                });
            }
            *order = d;
        }
        power_offsets.push(powers.len());
        Ok(Group {
            name,
            order: n,
            table,
            labels,
            elem_orders,
            inverses,
            powers,
            power_offsets,
            cyclic_sets: OnceLock::new(),
            pair_cyclic: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_orders[a] as usize
    }

    pub fn elem_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.elem_orders.iter().map(|&d| d as usize)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let d = self.elem_order(a) as i64;
        self.powers_of(a)[k.rem_euclid(d) as usize]
    }

    /// `[a^0, a^1, ..]` up to the order of `a`.
    pub fn powers_of(&self, a: usize) -> Vec<usize> {
        self.powers[self.power_offsets[a]..self.power_offsets[a + 1]]
            .iter()
            .map(|&v| v as usize)
            .collect()
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elem_orders().any(|d| d == self.order)
    }

    /// `<a>` as a bit set, cached for all elements on first use.
    pub fn cyclic_set(&self, a: usize) -> &BitSet {
        &self.cyclic_sets.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    BitSet::from_indices(
                        self.order,
                        self.powers[self.power_offsets[x]..self.power_offsets[x + 1]]
                            .iter()
                            .map(|&v| v as usize),
                    )
                })
                .collect()
        })[a]
    }

    /// Elements whose cyclic subgroup is not properly contained in another
    /// cyclic subgroup, i.e. generators of the maximal cyclic subgroups.
    pub fn maximal_cyclic_generators(&self) -> Vec<usize> {
        let mut dominated = vec![false; self.order];
        for y in 0..self.order {
            let dy = self.elem_order(y);
            for &p in &self.powers[self.power_offsets[y]..self.power_offsets[y + 1]] {
                if self.elem_order(p as usize) < dy {
                    dominated[p as usize] = true;
                }
            }
        }
        (0..self.order).filter(|&x| !dominated[x]).collect()
    }

    /// Symmetric pair-cyclicity matrix: bit `(x, y)` is set iff `<x, y>` is
    /// cyclic. Filled once; concurrent callers observe the same value.
    ///
    /// `<x, y>` is cyclic exactly when both lie in a common maximal cyclic
    /// subgroup, so the matrix is the union of `A x A` over those subgroups.
    pub fn pair_cyclic_matrix(&self) -> &BitMatrix {
        self.pair_cyclic.get_or_init(|| {
            let mut m = BitMatrix::new(self.order);
            for a in self.maximal_cyclic_generators() {
                let members = self.powers_of(a);
                for &x in &members {
                    for &y in &members {
                        m.set(x, y);
                    }
                }
            }
            m
        })
    }

    /// Whether `<x, y>` is cyclic.
    pub fn is_pair_cyclic(&self, x: usize, y: usize) -> bool {
        if !self.commutes(x, y) {
            return false;
        }
        self.pair_cyclic_matrix().get(x, y)
    }

    /// Reference route: close `{x, y}` breadth-first and look for a generator.
    pub fn is_pair_cyclic_by_closure(&self, x: usize, y: usize) -> bool {
        if !self.commutes(x, y) {
            return false;
        }
        let h = self.subgroup_generated(&[x, y]);
        h.is_cyclic_in(self)
    }

    /// Smallest subgroup containing `gens`, by breadth-first closure.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = BitSet::new(self.order);
        members.insert(0);
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let b = self.mul(a, g);
                if members.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        Subgroup { members }
    }

    pub fn exponent(&self) -> usize {
        self.elem_orders().fold(1, lcm)
    }

    /// Set of element orders.
    pub fn pi_e(&self) -> BTreeSet<usize> {
        self.elem_orders().collect()
    }

    /// Divisibility-maximal element orders.
    pub fn mu(&self) -> BTreeSet<usize> {
        let pe = self.pi_e();
        pe.iter()
            .copied()
            .filter(|&t| !pe.iter().any(|&s| s != t && s % t == 0))
            .collect()
    }

    pub fn center(&self) -> Subgroup {
        let members = BitSet::from_indices(
            self.order,
            (0..self.order).filter(|&z| (0..self.order).all(|a| self.commutes(z, a))),
        );
        Subgroup { members }
    }

    /// Coset index of every element for the cosets `aN`, numbered by
    /// smallest representative.
    pub fn coset_map(&self, normal: &Subgroup) -> Vec<usize> {
        let mut coset_of = vec![usize::MAX; self.order];
        let members = normal.members();
        let mut k = 0;
        for a in 0..self.order {
            if coset_of[a] == usize::MAX {
                for &h in &members {
                    coset_of[self.mul(a, h)] = k;
                }
                k += 1;
            }
        }
        coset_of
    }

    /// Quotient by a normal subgroup; element `k` is the coset with index
    /// `k` in [`Group::coset_map`].
    pub fn quotient(&self, normal: &Subgroup, name: impl Into<String>) -> Result<Group> {
        if !normal.is_normal_in(self) {
            return Err(Error::InvalidParameter(
                "quotient by a non-normal subgroup".into(),
            ));
        }
        let coset_of = self.coset_map(normal);
        let mut reps = Vec::new();
        for (a, &c) in coset_of.iter().enumerate() {
            if c == reps.len() {
                reps.push(a);
            }
        }
        let m = reps.len();
        let table = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| coset_of[self.mul(reps[i], reps[j])])
            .collect();
        let labels = reps
            .iter()
            .map(|&r| format!("{}N", self.label(r)))
            .collect();
        Group::from_parts(name.into(), m, table, labels)
    }

    /// Relabel elements by a permutation that fixes the identity:
    /// new element `k` is old element `order[k]`.
    pub fn relabeled(&self, order: &[usize]) -> Result<Group> {
        let n = self.order;
        if order.len() != n || order.first() != Some(&0) {
            return Err(Error::InvalidParameter(
                "relabeling must keep the identity first".into(),
            ));
        }
        let mut pos = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidParameter(
                    "relabeling is not a permutation".into(),
                ));
            }
            pos[v] = k;
        }
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| pos[self.mul(order[i], order[j])])
            .collect();
        let labels = order.iter().map(|&v| self.labels[v].clone()).collect();
        Group::from_parts(self.name.clone(), n, table, labels)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }
}

/// Latin-square, identity and associativity validation; associativity is
/// exhaustive when `exact`, otherwise checked on `10 n^2` random triples.
fn validate_table(n: usize, table: &[usize], exact: bool) -> Result<()> {
    if let Some(&bad) = table.iter().find(|&&v| v >= n) {
        return Err(Error::NotAGroup {
            reason: format!("entry {bad} out of range"),
            triple: None,
        });
    }
    for i in 0..n {
        if table[i] != i || table[i * n] != i {
            return Err(Error::NotAGroup {
                reason: format!("index 0 is not the identity (row/column {i})"),
                triple: None,
            });
        }
    }
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = table[i * n + j];
            if seen[v] == i {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} repeats {v}"),
                    triple: None,
                });
            }
            seen[v] = i;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let v = table[i * n + j];
            if seen[v] == j {
                return Err(Error::NotAGroup {
                    reason: format!("column {j} repeats {v}"),
                    triple: None,
                });
            }
            seen[v] = j;
        }
    }
    let m = |a: usize, b: usize| table[a * n + b];
    let fail = |i, j, k| Error::NotAGroup {
        reason: format!("associativity fails at ({i}, {j}, {k})"),
        triple: Some((i, j, k)),
    };
    if exact {
        for i in 0..n {
            for j in 0..n {
                let ij = m(i, j);
                for k in 0..n {
                    if m(ij, k) != m(i, m(j, k)) {
                        return Err(fail(i, j, k));
                    }
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(n as u64);
        for _ in 0..10 * n * n {
            let (i, j, k) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if m(m(i, j), k) != m(i, m(j, k)) {
                return Err(fail(i, j, k));
            }
        }
    }
    Ok(())
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Group {
        build(&GroupSpec::Cyclic(n)).unwrap()
    }

    fn parse(s: &str) -> Group {
        build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = z(1);
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert!(g.is_cyclic());
        assert_eq!(g.subgroup_generated(&[]).members(), vec![0]);
    }

    #[test]
    fn quaternion_orders() {
        let g = parse("Q8");
        let mut orders: Vec<usize> = g.elem_orders().collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(g.exponent(), 4);
        let center = g.center();
        assert_eq!(center.order(), 2);
        let minus_one = center.members()[1];
        assert_eq!(g.elem_order(minus_one), 2);
    }

    #[test]
    fn pi_e_and_mu() {
        let g = z(6);
        assert_eq!(g.pi_e().into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        assert_eq!(g.mu().into_iter().collect::<Vec<_>>(), vec![6]);
        let s3 = parse("S3");
        assert_eq!(s3.pi_e().into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(s3.mu().into_iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn closure_examples() {
        let g = parse("Z2xZ4");
        let a = g.index_of("(0,1)").unwrap();
        let b = g.index_of("(1,0)").unwrap();
        assert_eq!(g.subgroup_generated(&[a, b]).order(), 8);
        let s3 = parse("S3");
        let t = s3.index_of("(1,2)").unwrap();
        let c = s3.index_of("(1,2,3)").unwrap();
        assert_eq!(s3.subgroup_generated(&[t, c]).order(), 6);
        assert_eq!(s3.subgroup_generated(&[t]).order(), 2);
    }

    #[test]
    fn pair_cyclicity_examples() {
        let g = parse("Z2xZ4");
        let x = g.index_of("(0,2)").unwrap();
        let y = g.index_of("(1,1)").unwrap();
        let w = g.index_of("(1,0)").unwrap();
        assert!(g.is_pair_cyclic(x, x));
        assert!(g.is_pair_cyclic(x, y));
        assert!(!g.is_pair_cyclic(x, w));
    }

    #[test]
    fn quotient_by_center_of_q8() {
        let g = parse("Q8");
        let q = g.quotient(&g.center(), "Q8/Z").unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponent(), 2);
    }

    #[test]
    fn subgroup_to_group() {
        let g = parse("D8");
        let gen = (0..g.order()).find(|&a| g.elem_order(a) == 4).unwrap();
        let h = g.subgroup_generated(&[gen]).to_group(&g, "C4");
        assert_eq!(h.order(), 4);
        assert!(h.is_cyclic());
    }

    #[test]
    fn rejects_bad_tables() {
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let err =
            Group::from_table("x", labels.clone(), vec![0, 1, 2, 1, 0, 2, 2, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { .. }));
        // identity row fine but column 1 repeats
        let err = Group::from_table("x", labels, vec![0, 1, 2, 1, 2, 0, 2, 2, 1]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { .. }));
    }
}
