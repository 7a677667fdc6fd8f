//! Structural recognizers used by the theorem checks: Sylow subgroups,
//! nilpotency, abelian invariants and a few named families.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::cyclic::prime_divisors;
use crate::group::{Group, Subgroup};

/// Largest power of `p` dividing `n`.
pub fn prime_power_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    match prime_divisors(n).as_slice() {
        [p] => Some((*p, n.ilog(*p))),
        _ => None,
    }
}

pub fn p_elements(g: &Group, p: usize) -> BitSet {
    BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| prime_power_part(g.elem_order(x), p) == g.elem_order(x)),
    )
}

/// The Sylow `p`-subgroup when it is normal (equivalently unique).
pub fn normal_sylow(g: &Group, p: usize) -> Option<Subgroup> {
    let els = p_elements(g, p);
    (els.count() == prime_power_part(g.order(), p)).then(|| g.subgroup_generated(&els.to_vec()))
}

pub fn is_nilpotent(g: &Group) -> bool {
    prime_divisors(g.order())
        .into_iter()
        .all(|p| normal_sylow(g, p).is_some())
}

/// Sylow subgroups of a nilpotent group, by ascending prime.
pub fn sylow_subgroups(g: &Group) -> Option<Vec<(usize, Subgroup)>> {
    prime_divisors(g.order())
        .into_iter()
        .map(|p| normal_sylow(g, p).map(|s| (p, s)))
        .collect()
}

fn count_order_dividing(g: &Group, d: usize) -> usize {
    g.elem_orders().filter(|&o| d.is_multiple_of(o)).count()
}

/// Elementary divisors (ascending prime powers) of an abelian group.
pub fn abelian_invariants(g: &Group) -> Option<Vec<usize>> {
    if !g.is_abelian() {
        return None;
    }
    let mut out = Vec::new();
    for p in prime_divisors(g.order()) {
        let top = prime_power_part(g.order(), p);
        // ranks[k] = number of cyclic factors of exponent >= k
        let mut ranks = vec![0u32];
        let (mut prev, mut pk) = (1, p);
        while pk <= top {
            let c = count_order_dividing(g, pk);
            ranks.push((c / prev).ilog(p));
            prev = c;
            pk *= p;
        }
        ranks.push(0);
        for k in 1..ranks.len() - 1 {
            for _ in 0..ranks[k] - ranks[k + 1] {
                out.push(p.pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

pub fn involution_count(g: &Group) -> usize {
    g.elem_orders().filter(|&o| o == 2).count()
}

pub fn is_elementary_abelian_2(g: &Group) -> bool {
    g.order() > 1 && g.elem_orders().all(|o| o <= 2)
}

fn element_of_order(g: &Group, k: usize) -> Option<usize> {
    (0..g.order()).find(|&x| g.elem_order(x) == k)
}

/// Dihedral of order `2n`, `n >= 3`.
pub fn is_dihedral(g: &Group) -> bool {
    let n = g.order() / 2;
    if !g.order().is_multiple_of(2) || n < 3 {
        return false;
    }
    let Some(a) = element_of_order(g, n) else {
        return false;
    };
    let rot = g.cyclic_set(a);
    (0..g.order()).all(|x| rot.contains(x) || g.elem_order(x) == 2)
}

/// Non-abelian of order `2^n` with an element of order `2^(n-1)`.
fn maximal_cyclic_2group(g: &Group) -> Option<u32> {
    let (p, n) = prime_power(g.order())?;
    (p == 2 && n >= 3 && !g.is_abelian() && element_of_order(g, g.order() / 2).is_some())
        .then_some(n)
}

pub fn is_generalized_quaternion(g: &Group) -> bool {
    maximal_cyclic_2group(g).is_some() && involution_count(g) == 1
}

pub fn is_semidihedral(g: &Group) -> bool {
    maximal_cyclic_2group(g).is_some_and(|n| n >= 4 && involution_count(g) == (1 << (n - 2)) + 1)
}

/// The modular group `<a, x | x^p = a^(p^(n-1)) = 1, a^x = a^(1+p^(n-2))>`
/// for `n >= 3`, excluding `p = 2, n = 3` where it is dihedral.
pub fn is_modular(g: &Group) -> bool {
    let Some((p, n)) = prime_power(g.order()) else {
        return false;
    };
    if n < 3 || g.is_abelian() || element_of_order(g, g.order() / p).is_none() {
        return false;
    }
    p > 2 || (n > 3 && involution_count(g) == 3)
}

/// Groups whose non-cyclic graph is regular, as recognized structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegularFamily {
    /// `Q8 x Z_n`, `n` odd.
    QuaternionTimesCyclic { n: usize },
    /// `P x Z_m` with `P` non-cyclic of exponent `p`, `|P| = p^rank`.
    PrimeExponent {
        p: usize,
        rank: u32,
        abelian: bool,
        m: usize,
    },
}

pub fn regular_family(g: &Group) -> Option<RegularFamily> {
    let sylows = sylow_subgroups(g)?;
    let mut noncyclic = sylows.iter().filter(|(_, s)| !s.is_cyclic_in(g));
    let (p, s) = noncyclic.next()?;
    if noncyclic.next().is_some() {
        return None;
    }
    let m = g.order() / s.order();
    let sg = s.to_group(g, "P");
    if sg.exponent() == *p {
        Some(RegularFamily::PrimeExponent {
            p: *p,
            rank: s.order().ilog(*p),
            abelian: sg.is_abelian(),
            m,
        })
    } else if *p == 2 && s.order() == 8 && is_generalized_quaternion(&sg) {
        Some(RegularFamily::QuaternionTimesCyclic { n: m })
    } else {
        None
    }
}

/// Abelian `Z_m + (Z_{p^2})^n` with `n > 1` and `gcd(m, p) = 1`.
pub fn is_two_kind_abelian_form(g: &Group) -> bool {
    let Some(inv) = abelian_invariants(g) else {
        return false;
    };
    let mut noncyclic_primes = Vec::new();
    for p in prime_divisors(g.order()) {
        let part: Vec<usize> = inv.iter().copied().filter(|d| d % p == 0).collect();
        if part.len() > 1 {
            noncyclic_primes.push((p, part));
        }
    }
    match noncyclic_primes.as_slice() {
        [(p, part)] => part.iter().all(|&d| d == p * p),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, GroupSpec};

    fn g(s: &str) -> Group {
        build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn invariants() {
        assert_eq!(abelian_invariants(&g("Z12")), Some(vec![3, 4]));
        assert_eq!(abelian_invariants(&g("Ab(2,4,8)")), Some(vec![2, 4, 8]));
        assert_eq!(abelian_invariants(&g("Z6xZ6")), Some(vec![2, 2, 3, 3]));
        assert_eq!(abelian_invariants(&g("Z1")), Some(vec![]));
        assert_eq!(abelian_invariants(&g("S3")), None);
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&g("Q8xZ3")));
        assert!(is_nilpotent(&g("D16")));
        assert!(!is_nilpotent(&g("S3")));
        assert!(!is_nilpotent(&g("A4")));
        assert!(!is_nilpotent(&g("D12")));
        let s = sylow_subgroups(&g("D8xZ9")).unwrap();
        assert_eq!(
            s.iter().map(|(p, s)| (*p, s.order())).collect::<Vec<_>>(),
            vec![(2, 8), (3, 9)]
        );
    }

    #[test]
    fn families() {
        assert!(is_dihedral(&g("D10")) && is_dihedral(&g("S3")) && is_dihedral(&g("G(2,3)")));
        assert!(!is_dihedral(&g("Z2xZ2")) && !is_dihedral(&g("Q8")) && !is_dihedral(&g("Z6")));
        assert!(is_generalized_quaternion(&g("Q8")) && is_generalized_quaternion(&g("Q32")));
        assert!(!is_generalized_quaternion(&g("D8")));
        assert!(is_semidihedral(&g("H(4)")) && is_semidihedral(&g("H(5)")));
        assert!(!is_semidihedral(&g("D16")) && !is_semidihedral(&g("G(2,4)")));
        assert!(is_modular(&g("G(2,4)")) && is_modular(&g("G(3,3)")) && is_modular(&g("G(2,5)")));
        assert!(
            !is_modular(&g("D16"))
                && !is_modular(&g("H(4)"))
                && !is_modular(&g("Q16"))
                && !is_modular(&g("K(2,4)"))
        );
    }

    #[test]
    fn regular_families() {
        assert_eq!(
            regular_family(&g("Q8xZ3")),
            Some(RegularFamily::QuaternionTimesCyclic { n: 3 })
        );
        assert_eq!(
            regular_family(&g("EA(2,3)xZ5")),
            Some(RegularFamily::PrimeExponent {
                p: 2,
                rank: 3,
                abelian: true,
                m: 5
            })
        );
        assert_eq!(regular_family(&g("Z2xZ4")), None);
        assert_eq!(regular_family(&g("Q16")), None);
        assert_eq!(regular_family(&g("S3")), None);
        assert_eq!(regular_family(&g("Z6")), None);
    }

    #[test]
    fn two_kind_form() {
        assert!(is_two_kind_abelian_form(&g("Ab(4,4)")));
        assert!(is_two_kind_abelian_form(&g("Ab(9,9)xZ2")));
        assert!(!is_two_kind_abelian_form(&g("Ab(2,4)")));
        assert!(!is_two_kind_abelian_form(&g("Ab(4,4)xZ2xZ2")));
        assert!(!is_two_kind_abelian_form(&g("Ab(8,8)")));
    }
}
