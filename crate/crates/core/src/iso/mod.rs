//! Canonical forms and isomorphism witnesses for simple graphs.

mod canon;

use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};
use web_time::Instant;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::group::{gcd, is_prime};

pub const DEFAULT_VERTEX_CAP: usize = 2048;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, Copy)]
pub struct CanonOptions {
    pub vertex_cap: usize,
    /// `None` disables the budget.
    pub timeout: Option<Duration>,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
            timeout: Some(DEFAULT_TIMEOUT),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub matrix: BitMatrix,
    /// `labeling[k]` is the input vertex at canonical position `k`.
    pub labeling: Vec<usize>,
    /// Hex of the first 128 bits of SHA-256 over the canonical matrix.
    pub certificate: String,
}

pub fn canonical_form(adj: &BitMatrix) -> Result<CanonicalForm> {
    canonical_form_with(adj, &CanonOptions::default())
}

pub fn canonical_form_with(adj: &BitMatrix, opts: &CanonOptions) -> Result<CanonicalForm> {
    let n = adj.size();
    if n > opts.vertex_cap {
        return Err(Error::TooLarge {
            vertices: n,
            cap: opts.vertex_cap,
        });
    }
    let deadline = opts.timeout.map(|t| Instant::now() + t);
    let labeling = canon::canonical_labeling(adj, deadline)?;
    let matrix = adj.permuted(&labeling);
    Ok(CanonicalForm {
        vertex_count: n,
        certificate: certificate(&matrix),
        matrix,
        labeling,
    })
}

fn certificate(m: &BitMatrix) -> String {
    let mut h = Sha256::new();
    h.update((m.size() as u64).to_le_bytes());
    h.update(m.to_bytes());
    h.finalize()[..16]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Vertex bijection `a -> b` (`map[v]` is the image of `v`), or `None` when
/// the graphs are not isomorphic.
pub fn are_isomorphic(a: &BitMatrix, b: &BitMatrix) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with(a, b, &CanonOptions::default())
}

pub fn are_isomorphic_with(
    a: &BitMatrix,
    b: &BitMatrix,
    opts: &CanonOptions,
) -> Result<Option<Vec<usize>>> {
    for m in [a, b] {
        if m.size() > opts.vertex_cap {
            return Err(Error::TooLarge {
                vertices: m.size(),
                cap: opts.vertex_cap,
            });
        }
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let map = match (multipartite_parts(a), multipartite_parts(b)) {
        (Some(pa), Some(pb)) => {
            let sizes = |p: &[Vec<usize>]| p.iter().map(Vec::len).collect::<Vec<_>>();
            if sizes(&pa) != sizes(&pb) {
                return Ok(None);
            }
            let mut map = vec![0; a.size()];
            for (x, y) in pa.iter().zip(&pb) {
                for (&u, &v) in x.iter().zip(y) {
                    map[u] = v;
                }
            }
            map
        }
        (None, None) => {
            let ca = canonical_form_with(a, opts)?;
            let cb = canonical_form_with(b, opts)?;
            if ca.certificate != cb.certificate || ca.matrix != cb.matrix {
                return Ok(None);
            }
            let mut map = vec![0; a.size()];
            for (&u, &v) in ca.labeling.iter().zip(&cb.labeling) {
                map[u] = v;
            }
            map
        }
        _ => return Ok(None),
    };
    if !is_isomorphism(a, b, &map) {
        return Err(Error::VerificationFailure(
            "bijection does not preserve adjacency".into(),
        ));
    }
    Ok(Some(map))
}

/// `map` is a bijection preserving adjacency and non-adjacency.
pub fn is_isomorphism(a: &BitMatrix, b: &BitMatrix, map: &[usize]) -> bool {
    let n = a.size();
    if b.size() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &v in map {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    (0..n).all(|u| (0..n).all(|v| a.get(u, v) == b.get(map[u], map[v])))
}

/// Parts of a complete multipartite graph (classes of the non-adjacency
/// relation), ordered by (size, smallest vertex); `None` otherwise.
pub fn multipartite_parts(adj: &BitMatrix) -> Option<Vec<Vec<usize>>> {
    let n = adj.size();
    let mut assigned = crate::bitset::BitSet::new(n);
    let mut parts = Vec::new();
    for v in 0..n {
        if assigned.contains(v) {
            continue;
        }
        let part = adj.row(v).complement();
        for u in part.iter() {
            if assigned.contains(u) || adj.row(u).complement() != part {
                return None;
            }
        }
        assigned.union_with(&part);
        parts.push(part.to_vec());
    }
    parts.sort_by_key(|p| (p.len(), p[0]));
    Some(parts)
}

/// Both halves of the condition deciding when the graphs of
/// `P x Z_n` and `Q x Z_t` coincide, for `P`, `Q` elementary abelian of
/// ranks `m` and `s`.
pub fn check_goormaghtigh_condition(
    p: u64,
    m: u32,
    n: u64,
    q: u64,
    s: u32,
    t: u64,
) -> Result<(bool, bool)> {
    for (prime, rank, k) in [(p, m, n), (q, s, t)] {
        if !is_prime(prime as usize) {
            return Err(Error::InvalidParameter(format!("{prime} is not prime")));
        }
        if rank < 2 {
            return Err(Error::InvalidParameter(format!(
                "rank {rank} must exceed 1"
            )));
        }
        if k == 0 || gcd(prime as usize, k as usize) != 1 {
            return Err(Error::InvalidParameter(format!(
                "{k} must be positive and coprime to {prime}"
            )));
        }
    }
    let repunit = |b: u64, e: u32| -> Result<u128> {
        (b as u128)
            .checked_pow(e)
            .map(|x| (x - 1) / (b as u128 - 1))
            .ok_or_else(|| Error::InvalidParameter(format!("{b}^{e} overflows")))
    };
    let first = repunit(p, m)? == repunit(q, s)?;
    let second = n as u128 * (p as u128 - 1) == t as u128 * (q as u128 - 1);
    Ok((first, second))
}

/// Output of a graph comparison, with bijections in element labels.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub isomorphic: bool,
    pub certificate_1: String,
    pub certificate_2: String,
    pub bijection: Option<Vec<(String, String)>>,
    pub elapsed_ms: u128,
}

/// Compare two labelled graphs, always reporting both certificates.
pub fn compare(
    a: &BitMatrix,
    labels_a: &[String],
    b: &BitMatrix,
    labels_b: &[String],
    opts: &CanonOptions,
) -> Result<Comparison> {
    let start = Instant::now();
    let ca = canonical_form_with(a, opts)?;
    let cb = canonical_form_with(b, opts)?;
    let map = are_isomorphic_with(a, b, opts)?;
    let bijection = map.map(|m| {
        m.iter()
            .enumerate()
            .map(|(u, &v)| (labels_a[u].clone(), labels_b[v].clone()))
            .collect()
    });
    Ok(Comparison {
        isomorphic: bijection.is_some(),
        certificate_1: ca.certificate,
        certificate_2: cb.certificate,
        bijection,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
