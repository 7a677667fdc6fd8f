//! Constructor expressions for groups and their compact text syntax.
//!
//! The syntax is whitespace-free; `x` joins direct-product factors:
//!
//! | text              | group                                   |
//! |-------------------|-----------------------------------------|
//! | `Z4`              | cyclic of order 4                       |
//! | `EA(2,3)`         | elementary abelian 2^3                  |
//! | `Ab(2,4,8)`       | abelian with invariant factors 2, 4, 8  |
//! | `K(3,3)`          | Z9 + Z3                                 |
//! | `D8`              | dihedral of order 8                     |
//! | `Q16`             | generalized quaternion of order 16      |
//! | `G(3,3)`          | modular p-group G(p^n)                  |
//! | `H(4)`            | semidihedral of order 2^4               |
//! | `S5`, `A5`        | symmetric / alternating                 |
//! | `cayley:path`     | Cayley-table file (must be last factor) |
//! | `perm:4:(1,2,3),(1,2)` | permutation group on 4 points      |

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    ElementaryAbelian {
        p: usize,
        k: usize,
    },
    AbelianInvariantFactors(Vec<usize>),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    /// Generalized quaternion group of the given order `2^n`.
    GeneralizedQuaternion(usize),
    /// `<a, x | x^p = a^(p^(n-1)) = 1, a^x = a^(1 + p^(n-2))>`.
    ModularG {
        p: usize,
        n: usize,
    },
    /// `<a, x | x^2 = a^(2^(m-1)) = 1, a^x = a^(2^(m-2) - 1)>`.
    SemidihedralH(usize),
    Symmetric(usize),
    Alternating(usize),
    CayleyFile(PathBuf),
    /// Generators as 0-based image lists.
    PermGenerators {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    DirectProduct(Vec<GroupSpec>),
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn power_of_two(n: usize) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

impl GroupSpec {
    /// Parameter constraints of each family.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            GroupSpec::Cyclic(n) if *n == 0 => bad("Cyclic(n) requires n >= 1".into()),
            GroupSpec::ElementaryAbelian { p, k } if !is_prime(*p) || *k == 0 => bad(format!(
                "ElementaryAbelian({p},{k}) requires prime p and k >= 1"
            )),
            GroupSpec::AbelianInvariantFactors(ds) if ds.is_empty() || ds.contains(&0) => {
                bad("invariant factors must be positive".into())
            }
            GroupSpec::Dihedral(order) if *order % 2 != 0 || *order / 2 <= 2 => {
                bad(format!("Dihedral({order}) requires order 2n with n > 2"))
            }
            GroupSpec::GeneralizedQuaternion(order) => match power_of_two(*order) {
                Some(n) if n >= 3 => Ok(()),
                _ => bad(format!(
                    "GeneralizedQuaternion({order}) requires order 2^n, n >= 3"
                )),
            },
            GroupSpec::ModularG { p, n } if !is_prime(*p) || *n < 3 => {
                bad(format!("G({p},{n}) requires prime p and n >= 3"))
            }
            GroupSpec::SemidihedralH(m) if *m < 4 => bad(format!("H({m}) requires m >= 4")),
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) if *n == 0 => {
                bad("degree must be at least 1".into())
            }
            GroupSpec::PermGenerators { degree, generators } => {
                if *degree == 0 || *degree > 255 {
                    return bad(format!("permutation degree {degree} outside 1..=255"));
                }
                for g in generators {
                    let mut seen = vec![false; *degree];
                    if g.len() != *degree
                        || g.iter()
                            .any(|&v| v >= *degree || std::mem::replace(&mut seen[v], true))
                    {
                        return bad(format!(
                            "generator {g:?} is not a permutation of {degree} points"
                        ));
                    }
                }
                Ok(())
            }
            GroupSpec::DirectProduct(children) if children.is_empty() => {
                bad("direct product needs at least one factor".into())
            }
            GroupSpec::DirectProduct(children) => children.iter().try_for_each(GroupSpec::validate),
            _ => Ok(()),
        }
    }

    /// Group order implied by the expression, when known without building.
    pub fn expected_order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::ElementaryAbelian { p, k } => p.checked_pow(*k as u32)?,
            GroupSpec::AbelianInvariantFactors(ds) => {
                ds.iter().try_fold(1usize, |a, &d| a.checked_mul(d))?
            }
            GroupSpec::Dihedral(o) | GroupSpec::GeneralizedQuaternion(o) => *o,
            GroupSpec::ModularG { p, n } => p.checked_pow(*n as u32)?,
            GroupSpec::SemidihedralH(m) => 1usize.checked_shl(*m as u32)?,
            GroupSpec::Symmetric(n) => (1..=*n).try_fold(1usize, |a, k| a.checked_mul(k))?,
            GroupSpec::Alternating(n) => {
                (1..=*n).try_fold(1usize, |a, k| a.checked_mul(k))?.max(2) / 2
            }
            GroupSpec::DirectProduct(cs) => cs.iter().try_fold(1usize, |a, c| {
                c.expected_order().and_then(|o| a.checked_mul(o))
            })?,
            GroupSpec::CayleyFile(_) | GroupSpec::PermGenerators { .. } => return None,
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "EA({p},{k})"),
            GroupSpec::AbelianInvariantFactors(ds) => write!(f, "Ab({})", join(ds)),
            GroupSpec::Dihedral(o) => write!(f, "D{o}"),
            GroupSpec::GeneralizedQuaternion(o) => write!(f, "Q{o}"),
            GroupSpec::ModularG { p, n } => write!(f, "G({p},{n})"),
            GroupSpec::SemidihedralH(m) => write!(f, "H({m})"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::CayleyFile(p) => write!(f, "cayley:{}", p.display()),
            GroupSpec::PermGenerators { degree, generators } => {
                write!(f, "perm:{degree}:")?;
                let gens: Vec<String> = generators.iter().map(|g| cycle_string(g)).collect();
                write!(f, "{}", gens.join(","))
            }
            GroupSpec::DirectProduct(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// 1-based cycle notation with commas, e.g. `(1,2,3)(4,5)`; identity is `()`.
pub(crate) fn cycle_string(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut i = perm[start];
        while i != start {
            seen[i] = true;
            cycle.push(i + 1);
            i = perm[i];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: message.into(),
    }
}

fn parse_args(body: &str) -> Result<Vec<usize>> {
    body.split(',')
        .map(|a| {
            a.parse::<usize>()
                .map_err(|_| parse_err(format!("bad integer {a:?}")))
        })
        .collect()
}

fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = text;
    while !rest.is_empty() {
        let close = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| parse_err(format!("bad cycle notation {text:?}")))?;
        let body = &rest[1..close + 1];
        rest = &rest[close + 2..];
        if body.is_empty() {
            continue;
        }
        let points = parse_args(body)?;
        if points.iter().any(|&p| p == 0 || p > degree) {
            return Err(parse_err(format!("cycle point outside 1..={degree}")));
        }
        // compose left to right: apply the existing permutation, then this cycle
        let mut cycle: Vec<usize> = (0..degree).collect();
        for w in 0..points.len() {
            cycle[points[w] - 1] = points[(w + 1) % points.len()] - 1;
        }
        perm = perm.iter().map(|&i| cycle[i]).collect();
    }
    Ok(perm)
}

/// Split at top-level commas, ignoring commas inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_factor(tok: &str) -> Result<GroupSpec> {
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(format!("bad group token {tok:?}")))
    };
    if let Some((head, body)) = tok.split_once('(') {
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| parse_err(format!("unbalanced {tok:?}")))?;
        let args = parse_args(body)?;
        let spec = match (head, args.as_slice()) {
            ("EA", [p, k]) => GroupSpec::ElementaryAbelian { p: *p, k: *k },
            ("Ab", ds) => GroupSpec::AbelianInvariantFactors(ds.to_vec()),
            ("G", [p, n]) => GroupSpec::ModularG { p: *p, n: *n },
            ("H", [m]) => GroupSpec::SemidihedralH(*m),
            ("K", [p, n]) if *n >= 2 => {
                GroupSpec::AbelianInvariantFactors(vec![p.pow(*n as u32 - 1), *p])
            }
            _ => return Err(parse_err(format!("unknown group token {tok:?}"))),
        };
        return Ok(spec);
    }
    let (head, rest) = tok.split_at(tok.find(|c: char| c.is_ascii_digit()).unwrap_or(tok.len()));
    match head {
        "Z" | "C" => Ok(GroupSpec::Cyclic(num(rest)?)),
        "D" => Ok(GroupSpec::Dihedral(num(rest)?)),
        "Q" => Ok(GroupSpec::GeneralizedQuaternion(num(rest)?)),
        "S" => Ok(GroupSpec::Symmetric(num(rest)?)),
        "A" => Ok(GroupSpec::Alternating(num(rest)?)),
        _ => Err(parse_err(format!("unknown group token {tok:?}"))),
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err("empty group spec"));
        }
        let mut factors = Vec::new();
        let mut rest = s;
        loop {
            if let Some(path) = rest.strip_prefix("cayley:") {
                if path.is_empty() {
                    return Err(parse_err("cayley: needs a path"));
                }
                factors.push(GroupSpec::CayleyFile(PathBuf::from(path)));
                break;
            }
            if let Some(body) = rest.strip_prefix("perm:") {
                let (deg, gens) = body
                    .split_once(':')
                    .ok_or_else(|| parse_err("perm:deg:gens"))?;
                let degree = deg
                    .parse::<usize>()
                    .map_err(|_| parse_err(format!("bad degree {deg:?}")))?;
                let end = gens.find('x').unwrap_or(gens.len());
                let generators = split_top_level(&gens[..end])
                    .into_iter()
                    .filter(|g| !g.is_empty())
                    .map(|g| parse_cycles(g, degree))
                    .collect::<Result<Vec<_>>>()?;
                factors.push(GroupSpec::PermGenerators { degree, generators });
                if end == gens.len() {
                    break;
                }
                rest = &gens[end + 1..];
                continue;
            }
            // next top-level 'x'
            let mut depth = 0;
            let mut cut = None;
            for (i, c) in rest.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    'x' if depth == 0 => {
                        cut = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            match cut {
                Some(i) => {
                    factors.push(parse_factor(&rest[..i])?);
                    rest = &rest[i + 1..];
                }
                None => {
                    factors.push(parse_factor(rest)?);
                    break;
                }
            }
        }
        let spec = if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupSpec::DirectProduct(factors)
        };
        spec.validate()?;
        Ok(spec)
    }
}
