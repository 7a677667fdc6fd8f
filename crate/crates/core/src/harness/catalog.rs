use std::fs;
use std::path::Path;

use crate::cyclic::prime_divisors;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::structure::prime_power_part;

pub const DEFAULT_MAX_ORDER: usize = 200;
/// Families (cyclic, abelian, dihedral, ...) are listed up to this order.
pub const FAMILY_MAX_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub spec: GroupSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: impl IntoIterator<Item = (String, GroupSpec)>) -> Result<Self> {
        let mut cat = Catalog::default();
        for (label, spec) in entries {
            cat.push(label, spec)?;
        }
        Ok(cat)
    }

    pub fn push(&mut self, label: impl Into<String>, spec: GroupSpec) -> Result<()> {
        let label = label.into();
        if self.entries.iter().any(|e| e.label == label) {
            return Err(Error::InvalidParameter(format!(
                "duplicate catalog label {label}"
            )));
        }
        self.entries.push(CatalogEntry { label, spec });
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Keep entries whose expected order is known and at most `max_order`.
    pub fn restricted(&self, max_order: usize) -> Catalog {
        let entries = self
            .entries
            .iter()
            .filter(|e| e.spec.expected_order().is_none_or(|o| o <= max_order))
            .cloned()
            .collect();
        Catalog { entries }
    }

    pub fn extend(&mut self, other: Catalog) -> Result<()> {
        for e in other.entries {
            self.push(e.label, e.spec)?;
        }
        Ok(())
    }

    /// One entry per line, `label = spec` or just `spec`; `#` starts a
    /// comment. Relative `cayley:` paths are resolved against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Catalog> {
        let mut cat = Catalog::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (label, spec_text) = match line.split_once('=') {
                Some((l, s)) => (l.trim().to_owned(), s.trim()),
                None => (line.to_owned(), line),
            };
            let mut spec: GroupSpec = spec_text.parse().map_err(|e: Error| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            if let (GroupSpec::CayleyFile(p), Some(base)) = (&spec, base) {
                if p.is_relative() {
                    spec = GroupSpec::CayleyFile(base.join(p));
                }
            }
            cat.push(label, spec).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        Ok(cat)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Catalog> {
        let path = path.as_ref();
        Catalog::parse(&fs::read_to_string(path)?, path.parent())
    }

    /// The standard catalog: cyclic, abelian, dihedral, generalized
    /// quaternion, modular and semidihedral groups up to order 128, the
    /// symmetric and alternating groups of degree at most 6, the non-abelian
    /// group of order 27 and exponent 3, and every direct product of these
    /// with a non-abelian factor; everything capped at `max_order`.
    pub fn standard(max_order: usize) -> Catalog {
        let cap = FAMILY_MAX_ORDER.min(max_order);
        let mut listed: Vec<(usize, String, GroupSpec)> = Vec::new();
        let mut add = |label: String, spec: GroupSpec, order: usize| {
            if order <= max_order {
                listed.push((order, label, spec));
            }
        };
        for n in 2..=cap {
            add(format!("Z{n}"), GroupSpec::Cyclic(n), n);
        }
        for n in 4..=cap {
            for inv in abelian_types(n).into_iter().filter(|t| t.len() > 1) {
                let spec = GroupSpec::AbelianInvariantFactors(inv);
                add(spec.to_string(), spec, n);
            }
        }
        for spec in nonabelian_families(cap) {
            let order = spec.expected_order().expect("family orders are known");
            add(spec.to_string(), spec, order);
        }
        for n in 3..=6 {
            let order = (1..=n).product::<usize>();
            add(format!("S{n}"), GroupSpec::Symmetric(n), order);
            if n > 3 {
                add(format!("A{n}"), GroupSpec::Alternating(n), order / 2);
            }
        }
        add("T27".into(), heisenberg_27(), 27);

        // products N_1 x ... x N_k x A with A abelian (as invariant factors)
        let bases = product_bases(max_order / 2);
        let mut stack: Vec<(Vec<usize>, usize)> =
            (0..bases.len()).map(|i| (vec![i], bases[i].2)).collect();
        while let Some((idx, order)) = stack.pop() {
            for m in 1..=max_order / order {
                for inv in abelian_types(m) {
                    if idx.len() == 1 && inv.is_empty() {
                        continue;
                    }
                    let mut labels: Vec<String> = inv.iter().map(|d| format!("Z{d}")).collect();
                    let mut specs: Vec<GroupSpec> =
                        inv.iter().map(|&d| GroupSpec::Cyclic(d)).collect();
                    for &i in &idx {
                        labels.push(bases[i].0.clone());
                        specs.push(bases[i].1.clone());
                    }
                    add(labels.join("x"), GroupSpec::DirectProduct(specs), order * m);
                }
            }
            let last = *idx.last().unwrap();
            for (j, base) in bases.iter().enumerate().skip(last) {
                if order * base.2 <= max_order {
                    let mut next = idx.clone();
                    next.push(j);
                    stack.push((next, order * base.2));
                }
            }
        }
        listed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut cat = Catalog::default();
        for (_, label, spec) in listed {
            cat.push(label, spec).expect("standard labels are unique");
        }
        cat
    }
}

/// Invariant factors `d_1 | d_2 | ...` of every abelian group of order `n`;
/// the trivial group has the empty list.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for p in prime_divisors(n) {
        let k = prime_power_part(n, p).ilog(p) as usize;
        let mut next = Vec::new();
        for partial in &out {
            for part in partitions(k) {
                // merge the p-part (largest exponent goes with the largest factor)
                let mut inv: Vec<usize> = partial.clone();
                let len = inv.len().max(part.len());
                inv.splice(0..0, std::iter::repeat_n(1, len - inv.len()));
                let mut pows: Vec<usize> = part.iter().map(|&e| p.pow(e as u32)).collect();
                pows.sort_unstable();
                pows.splice(0..0, std::iter::repeat_n(1, len - pows.len()));
                next.push(inv.iter().zip(&pows).map(|(a, b)| a * b).collect());
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Partitions of `k` into positive parts, each non-increasing.
fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=k.min(max)).rev() {
            cur.push(part);
            go(k - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

fn nonabelian_families(cap: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for order in (6..=cap).step_by(2) {
        out.push(GroupSpec::Dihedral(order));
    }
    let mut q = 8;
    while q <= cap {
        out.push(GroupSpec::GeneralizedQuaternion(q));
        q *= 2;
    }
    for p in [2usize, 3, 5, 7, 11] {
        let mut n = 3;
        while p.pow(n) <= cap {
            out.push(GroupSpec::ModularG { p, n: n as usize });
            n += 1;
        }
    }
    let mut m = 4;
    while 1 << m <= cap {
        out.push(GroupSpec::SemidihedralH(m));
        m += 1;
    }
    out
}

/// Non-abelian factors for products: one representative per isomorphism
/// type (`S3` stands for `D6`, `D8` for `G(2,3)`).
fn product_bases(cap: usize) -> Vec<(String, GroupSpec, usize)> {
    let mut out: Vec<(String, GroupSpec, usize)> = vec![("S3".into(), GroupSpec::Symmetric(3), 6)];
    for spec in nonabelian_families(cap.min(FAMILY_MAX_ORDER)) {
        if matches!(
            spec,
            GroupSpec::Dihedral(6) | GroupSpec::ModularG { p: 2, n: 3 }
        ) {
            continue;
        }
        let order = spec.expected_order().expect("family orders are known");
        out.push((spec.to_string(), spec, order));
    }
    out.push(("S4".into(), GroupSpec::Symmetric(4), 24));
    out.push(("A4".into(), GroupSpec::Alternating(4), 12));
    out.push(("A5".into(), GroupSpec::Alternating(5), 60));
    out.push(("S5".into(), GroupSpec::Symmetric(5), 120));
    out.push(("T27".into(), heisenberg_27(), 27));
    out.retain(|b| b.2 <= cap);
    out
}

/// Upper unitriangular 3x3 matrices over F_3, acting on F_3^2 by the affine
/// maps `(a, b) -> (a + 1, b)` and `(a, b) -> (a, b + a)`.
pub fn heisenberg_27() -> GroupSpec {
    let point = |a: usize, b: usize| a % 3 + 3 * (b % 3);
    let mut x = vec![0; 9];
    let mut y = vec![0; 9];
    for a in 0..3 {
        for b in 0..3 {
            x[point(a, b)] = point(a + 1, b);
            y[point(a, b)] = point(a, b + a);
        }
    }
    GroupSpec::PermGenerators {
        degree: 9,
        generators: vec![x, y],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_type_counts() {
        assert_eq!(abelian_types(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_types(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(
            abelian_types(36),
            vec![vec![2, 18], vec![3, 12], vec![6, 6], vec![36]]
        );
        assert_eq!(abelian_types(64).len(), 11);
        assert_eq!(abelian_types(72), {
            let mut v = vec![
                vec![2, 2, 18],
                vec![2, 6, 6],
                vec![2, 36],
                vec![3, 24],
                vec![6, 12],
                vec![72],
            ];
            v.sort();
            v
        });
    }

    #[test]
    fn standard_catalog_shape() {
        let cat = Catalog::standard(DEFAULT_MAX_ORDER);
        assert!(cat
            .entries()
            .iter()
            .all(|e| e.spec.expected_order().is_none_or(|o| o <= 200)));
        for l in [
            "Z6xS3", "Z3xQ8", "Q8", "Ab(2,4)", "D8", "G(3,3)", "H(4)", "S5", "A5", "T27",
            "Z5xS3xS3",
        ] {
            assert!(cat.get(l).is_some(), "{l}");
        }
        assert!(cat.get("S6").is_none() && cat.get("A6").is_none());
        assert!(Catalog::standard(720).get("S6").is_some());
    }

    #[test]
    fn parse_catalog_text() {
        let cat =
            Catalog::parse("# demo\nZ4\nklein = Z2xZ2\n\nq = Q8 # quaternion\n", None).unwrap();
        let labels: Vec<&str> = cat.entries().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["Z4", "klein", "q"]);
        assert!(matches!(
            Catalog::parse("Z4\nZ4\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Catalog::parse("D7\n", None),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
