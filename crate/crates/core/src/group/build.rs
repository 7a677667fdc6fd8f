use std::collections::{HashMap, VecDeque};

use super::spec::cycle_string;
use super::{from_cayley_file, Group, GroupSpec, MAX_ORDER};
use crate::error::{Error, Result};

/// Default cap on permutation closures, `|A8|`.
pub const DEFAULT_CLOSURE_CAP: usize = 20160;

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub closure_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

/// Build and validate the group described by `spec`.
pub fn build(spec: &GroupSpec) -> Result<Group> {
    build_with(spec, &BuildOptions::default())
}

pub fn build_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<Group> {
    spec.validate()?;
    if opts.closure_cap > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "closure cap above {MAX_ORDER}"
        )));
    }
    let raw = raw(spec, opts)?;
    let g = match raw {
        Raw::Ready(g) => g,
        Raw::Table { labels, table } => Group::from_table(spec.to_string(), labels, table)?,
    };
    Ok(g.with_name(spec.to_string()))
}

enum Raw {
    Table {
        labels: Vec<String>,
        table: Vec<usize>,
    },
    Ready(Group),
}

fn raw(spec: &GroupSpec, opts: &BuildOptions) -> Result<Raw> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::ElementaryAbelian { p, k } => product(vec![cyclic_parts(*p); *k]),
        GroupSpec::AbelianInvariantFactors(ds) if ds.len() == 1 => cyclic(ds[0]),
        GroupSpec::AbelianInvariantFactors(ds) => {
            product(ds.iter().map(|&d| cyclic_parts(d)).collect())
        }
        GroupSpec::Dihedral(order) => metacyclic(order / 2, 2, order / 2 - 1, 0),
        GroupSpec::GeneralizedQuaternion(order) => {
            let m = order / 2;
            metacyclic(m, 2, m - 1, m / 2)
        }
        GroupSpec::ModularG { p, n } => {
            let m = p.pow(*n as u32 - 1);
            let r = 1 + p.pow(*n as u32 - 2);
            // a^x = x^-1 a x = a^r, so x a x^-1 = a^(r^-1) and r^-1 = r^(p-1)
            let s = (0..p - 1).fold(1, |acc, _| acc * r % m);
            metacyclic(m, *p, s, 0)
        }
        GroupSpec::SemidihedralH(m) => {
            let big = 1usize << (m - 1);
            metacyclic(big, 2, (1 << (m - 2)) - 1, 0)
        }
        GroupSpec::Symmetric(n) => {
            let mut gens = Vec::new();
            if *n >= 2 {
                gens.push(transposition(*n, 0, 1));
                gens.push((0..*n).map(|i| (i + 1) % n).collect());
            }
            perm_closure(*n, &gens, opts.closure_cap)?
        }
        GroupSpec::Alternating(n) => {
            let gens: Vec<Vec<usize>> = (2..*n)
                .map(|k| {
                    let mut p: Vec<usize> = (0..*n).collect();
                    p[0] = 1;
                    p[1] = k;
                    p[k] = 0;
                    p
                })
                .collect();
            perm_closure(*n, &gens, opts.closure_cap)?
        }
        GroupSpec::PermGenerators { degree, generators } => {
            perm_closure(*degree, generators, opts.closure_cap)?
        }
        GroupSpec::CayleyFile(path) => Raw::Ready(from_cayley_file(path)?),
        GroupSpec::DirectProduct(children) if children.len() == 1 => raw(&children[0], opts)?,
        GroupSpec::DirectProduct(children) => {
            let parts = children
                .iter()
                .map(|c| raw(c, opts).and_then(Parts::try_from))
                .collect::<Result<Vec<_>>>()?;
            let order = parts
                .iter()
                .try_fold(1usize, |a, p| a.checked_mul(p.labels.len()));
            if order.is_none_or(|o| o > MAX_ORDER) {
                return Err(Error::InvalidParameter("direct product too large".into()));
            }
            product(parts)
        }
    })
}

#[derive(Clone)]
struct Parts {
    labels: Vec<String>,
    table: Vec<usize>,
}

impl TryFrom<Raw> for Parts {
    type Error = Error;

    fn try_from(r: Raw) -> Result<Parts> {
        Ok(match r {
            Raw::Table { labels, table } => Parts { labels, table },
            Raw::Ready(g) => {
                let table = (0..g.order())
                    .flat_map(|a| g.row(a).collect::<Vec<_>>())
                    .collect();
                Parts {
                    labels: g.labels().to_vec(),
                    table,
                }
            }
        })
    }
}

fn cyclic_parts(n: usize) -> Parts {
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i + j) % n))
        .collect();
    Parts {
        labels: (0..n).map(|i| i.to_string()).collect(),
        table,
    }
}

fn cyclic(n: usize) -> Raw {
    let Parts { labels, table } = cyclic_parts(n);
    Raw::Table { labels, table }
}

/// Mixed radix, first factor most significant; labels are tuples.
fn product(parts: Vec<Parts>) -> Raw {
    let sizes: Vec<usize> = parts.iter().map(|p| p.labels.len()).collect();
    let n: usize = sizes.iter().product();
    let digits = |mut idx: usize| {
        let mut d = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            d[k] = idx % sizes[k];
            idx /= sizes[k];
        }
        d
    };
    let all: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &all {
        for b in &all {
            let mut idx = 0;
            for k in 0..sizes.len() {
                let c = parts[k].table[a[k] * sizes[k] + b[k]];
                idx = idx * sizes[k] + c;
            }
            table.push(idx);
        }
    }
    let labels = all
        .iter()
        .map(|d| {
            let inner: Vec<&str> = d
                .iter()
                .enumerate()
                .map(|(k, &i)| parts[k].labels[i].as_str())
                .collect();
            format!("({})", inner.join(","))
        })
        .collect();
    Raw::Table { labels, table }
}

/// `<a, x>` with `|a| = m`, `x a x^-1 = a^s`, `x^q = a^c`; element
/// `a^i x^j` has index `i + m j`.
fn metacyclic(m: usize, q: usize, s: usize, c: usize) -> Raw {
    let n = m * q;
    let mut spow = vec![1usize % m.max(1); q];
    for j in 1..q {
        spow[j] = spow[j - 1] * s % m;
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (i, j) = (a % m, a / m);
        for b in 0..n {
            let (k, l) = (b % m, b / m);
            let mut e = i + k * spow[j];
            let mut xj = j + l;
            if xj >= q {
                xj -= q;
                e += c;
            }
            table.push(e % m + m * xj);
        }
    }
    let labels = (0..n)
        .map(|a| {
            let (i, j) = (a % m, a / m);
            let ap = match i {
                0 => String::new(),
                1 => "a".into(),
                _ => format!("a^{i}"),
            };
            let xp = match j {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{j}"),
            };
            if ap.is_empty() && xp.is_empty() {
                "e".into()
            } else {
                ap + &xp
            }
        })
        .collect();
    Raw::Table { labels, table }
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

/// Breadth-first closure; the product `g h` applies `g` first, then `h`.
fn perm_closure(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Raw> {
    let identity: Vec<u8> = (0..degree as u8).collect();
    let gens: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| g.iter().map(|&v| v as u8).collect())
        .collect();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elems = vec![identity];
    // parent/generator of each discovered element, and right multiplication by generators
    let mut origin: Vec<(usize, usize)> = vec![(0, 0)];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let b: Vec<u8> = elems[a].iter().map(|&i| g[i as usize]).collect();
            let next = index.len();
            let idx = *index.entry(b.clone()).or_insert(next);
            if idx == next {
                if next >= cap {
                    return Err(Error::ClosureTooLarge { cap });
                }
                elems.push(b);
                origin.push((a, gi));
                queue.push_back(idx);
            }
            row.push(idx);
        }
        if right.len() <= a {
            right.resize(a + 1, Vec::new());
        }
        right[a] = row;
    }
    let n = elems.len();
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        table[a * n] = a;
        for b in 1..n {
            let (parent, gi) = origin[b];
            table[a * n + b] = right[table[a * n + parent]][gi];
        }
    }
    let labels = elems
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if i == 0 {
                "e".to_string()
            } else {
                cycle_string(&p.iter().map(|&v| v as usize).collect::<Vec<_>>())
            }
        })
        .collect();
    Ok(Raw::Table { labels, table })
}
