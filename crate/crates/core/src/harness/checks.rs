use std::collections::BTreeSet;

use super::{par_map, Harness, Outcome, Subject};
use crate::bitset::{BitMatrix, BitSet};
use crate::cyclic::{is_tidy, prime_divisors, quotient_by_cyc, CyclicizerTable};
use crate::graph::{Analysis, NonCyclicGraph};
use crate::group::{build, gcd, Group, GroupSpec};
use crate::iso::{are_isomorphic_with, check_goormaghtigh_condition};
use crate::structure::{
    abelian_invariants, is_dihedral, is_elementary_abelian_2, is_generalized_quaternion,
    is_modular, is_nilpotent, is_semidihedral, is_two_kind_abelian_form, normal_sylow, prime_power,
    regular_family, RegularFamily,
};

/// A registered check.
pub struct Check {
    pub name: &'static str,
    pub statement: &'static str,
    pub(super) run: fn(&Harness) -> Outcome,
}

pub fn registry() -> &'static [Check] {
    &REGISTRY
}

static REGISTRY: [Check; 24] = [
    Check {
        name: "cyc_cosets",
        statement: "Cyc(G) is a central subgroup; every Cyc_G(x) is a union of cosets of Cyc(G), and Cyc_D(D) for D = Cyc_G(x) is a cyclic subgroup containing x",
        run: cyc_cosets,
    },
    Check {
        name: "cyc_nontrivial_p_groups",
        statement: "a finite p-group has Cyc(G) != 1 exactly when it is cyclic or generalized quaternion",
        run: cyc_nontrivial_p_groups,
    },
    Check {
        name: "quotient_cyc_trivial",
        statement: "Cyc_{G/Cyc(G)}(x Cyc(G)) = Cyc_G(x)/Cyc(G); both G/Cyc(G) and G/Z(G) have trivial Cyc",
        run: quotient_cyc_trivial,
    },
    Check {
        name: "diam_one_iff_elementary_2",
        statement: "the graph is complete exactly for elementary abelian 2-groups",
        run: diam_one_iff_elementary_2,
    },
    Check {
        name: "diam_le_3",
        statement: "the graph is connected with diameter at most 3, and diameter 2 when Z(G) = Cyc(G)",
        run: diam_le_3,
    },
    Check {
        name: "nilpotent_diam_le_2",
        statement: "non-cyclic nilpotent groups have diameter at most 2",
        run: nilpotent_diam_le_2,
    },
    Check {
        name: "z6_s3_diameter_3",
        statement: "Z6 x S3 has diameter 3, attained by (3,e) and (2,e)",
        run: z6_s3_diameter_3,
    },
    Check {
        name: "omega_chi_s",
        statement: "clique number = chromatic number = number of maximal cyclic subgroups s, and |G/Cyc(G)| <= max{(s-1)^2 (s-3)!, (s-2)^3 (s-3)!}",
        run: omega_chi_s,
    },
    Check {
        name: "omega_le_index",
        statement: "clique number <= |G : Cyc(G)|",
        run: omega_le_index,
    },
    Check {
        name: "alpha_formula",
        statement: "independence number = largest element order - |Cyc(G)|, compared with exhaustive search",
        run: alpha_formula,
    },
    Check {
        name: "theorem_A",
        statement: "the graph is regular exactly for Q8 x Z_n (n odd) and P x Z_m (P non-cyclic of prime exponent p, gcd(m, p) = 1)",
        run: theorem_a,
    },
    Check {
        name: "theorem_tt",
        statement: "in (Z_{p^m})^n, n > 1: Cyc(G) = 1, |Cyc_G(x)| follows the closed form by order of x, the graph has m degrees, and G is not tidy for m > 1",
        run: theorem_tt,
    },
    Check {
        name: "two_kind_degrees",
        statement: "two distinct degrees: nilpotent G has G/Cyc(G) a p-group; abelian G has this iff G = Z_m + (Z_{p^2})^n, n > 1, gcd(m, p) = 1",
        run: two_kind_degrees,
    },
    Check {
        name: "cyc_order_divides",
        statement: "isomorphic graphs: |Cyc(H)| divides gcd(|G| - |Cyc_G(g)|, |G| - |Cyc(G)|) over g outside Cyc(G)",
        run: cyc_order_divides,
    },
    Check {
        name: "nilpotent_transfer",
        statement: "isomorphic graphs with trivial Cyc on both sides: G nilpotent forces H nilpotent with isomorphic Sylow graphs",
        run: nilpotent_transfer,
    },
    Check {
        name: "goormaghtigh",
        statement: "P x Z_n and Q x Z_t (P, Q non-cyclic of prime exponents p, q) have isomorphic graphs iff (p^m-1)/(p-1) = (q^s-1)/(q-1) and n(p-1) = t(q-1)",
        run: goormaghtigh,
    },
    Check {
        name: "regular_uniqueness",
        statement: "Q8 x Z_n, (Z_2)^m x Z_n, Z_p^2 x Z_n are determined by their graphs; for odd p the graph of Z_p^3 x Z_n is shared only with T x Z_n",
        run: regular_uniqueness,
    },
    Check {
        name: "p_group_order_transfer",
        statement: "non-cyclic p-group of order p^n, n >= 3, with Cyc_G(x) = <x>: Cyc(G) != 1 forces G, H generalized quaternion; |x| = p = 2 or |x| in {p^(n-1), p^(n-2)} forces |G| = |H|",
        run: p_group_order_transfer,
    },
    Check {
        name: "mu_orders",
        statement: "mu(G) avoids the element orders of Cyc(G), and |g| in mu(G) gives Cyc_G(g) = <g>",
        run: mu_orders,
    },
    Check {
        name: "same_order_same_spectrum",
        statement: "isomorphic graphs and |G| = |H| give equal element-order sets",
        run: same_order_same_spectrum,
    },
    Check {
        name: "dihedral_graph_unique",
        statement: "a group with the graph of D_2n has order 2n and a cyclic subgroup of order n, and is D_2n when n is odd",
        run: dihedral_graph_unique,
    },
    Check {
        name: "maximal_cyclic_2_groups",
        statement: "K(8), H(2^m) and D_2^n have unique graphs; G(p^n) and K(p^n) share a graph when n > 3 or p > 2, and no other group does",
        run: maximal_cyclic_2_groups,
    },
    Check {
        name: "symmetric_alternating_unique",
        statement: "only S_n has the graph of S_n, and only A_n (n > 3) has the graph of A_n",
        run: symmetric_alternating_unique,
    },
    Check {
        name: "same_graph_same_order",
        statement: "open question, evidence only: isomorphic graphs within the catalog come from groups of equal order",
        run: same_graph_same_order,
    },
];

enum Local {
    Skip(String),
    Tested(Vec<String>),
}

fn tested(failures: Vec<String>) -> Local {
    Local::Tested(failures)
}

fn skip(reason: impl Into<String>) -> Local {
    Local::Skip(reason.into())
}

fn over_groups(h: &Harness, f: impl Fn(&Subject, &Group) -> Local + Sync + Send) -> Outcome {
    let locals = par_map(&h.subjects, |s| match s.group() {
        Err(e) => skip(format!("build failed: {e}")),
        Ok(g) => f(s, g),
    });
    let mut out = Outcome::default();
    for (s, local) in h.subjects.iter().zip(locals) {
        match local {
            Local::Skip(reason) => out.skip(s, reason),
            Local::Tested(failures) => {
                out.tested += 1;
                for w in failures {
                    out.fail(&[s], w);
                }
            }
        }
    }
    out
}

fn over_graphs(
    h: &Harness,
    f: impl Fn(&Subject, &Group, &Analysis) -> Local + Sync + Send,
) -> Outcome {
    over_groups(h, |s, g| match s.analysis() {
        None => skip("cyclic group has no non-cyclic graph"),
        Some(Err(e)) => tested(vec![format!("analysis failed: {e}")]),
        Some(Ok(a)) => f(s, g, a),
    })
}

/// Ordered pairs `(G, H)` (including `G = H`) with isomorphic graphs;
/// entries that failed to build or to get a canonical form are skipped.
fn over_pairs(h: &Harness, out: &mut Outcome, mut f: impl FnMut(&mut Outcome, &Subject, &Subject)) {
    let classes = h.classes();
    for (i, reason) in &classes.failed {
        out.skip(&h.subjects[*i], reason.clone());
    }
    for cls in &classes.members {
        for &a in cls {
            for &b in cls {
                f(out, &h.subjects[a], &h.subjects[b]);
            }
        }
    }
}

/// The subject's group, or a recorded skip.
fn built<'a>(out: &mut Outcome, s: &'a Subject) -> Option<&'a Group> {
    match s.group() {
        Ok(g) => Some(g),
        Err(e) => {
            out.skip(s, format!("build failed: {e}"));
            None
        }
    }
}

fn analysis(s: &Subject) -> &Analysis {
    s.analysis()
        .expect("non-cyclic")
        .expect("analysis succeeded")
}

fn group(s: &Subject) -> &Group {
    s.group().expect("built")
}

fn cyc_cosets(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        let cyc = a.cyc.cyc();
        let mut f = Vec::new();
        if !cyc.is_subset(g.center().as_set()) {
            f.push("Cyc(G) is not central".into());
        }
        if cyc
            .iter()
            .any(|x| cyc.iter().any(|y| !cyc.contains(g.mul(x, y))))
        {
            f.push("Cyc(G) is not closed".into());
            return tested(f);
        }
        let k = a.cyc.cyc_size();
        let coset = g.coset_map(&a.cyc.cyc_subgroup());
        for x in 0..g.order() {
            let d = a.cyc.cyc_of(x);
            let mut counts = vec![0; g.order() / k];
            for y in d.iter() {
                counts[coset[y]] += 1;
            }
            if counts.iter().any(|&c| c != 0 && c != k) {
                f.push(format!("Cyc_G({}) is not a union of cosets", g.label(x)));
            }
            let mut core = d.clone();
            for y in d.iter() {
                core.intersect_with(a.cyc.cyc_of(y));
            }
            if !core.contains(x) || !core.iter().any(|y| *g.cyclic_set(y) == core) {
                f.push(format!(
                    "Cyc_D(D) for D = Cyc_G({}) is not a cyclic subgroup containing it",
                    g.label(x)
                ));
            }
        }
        tested(f)
    })
}

fn cyc_nontrivial_p_groups(h: &Harness) -> Outcome {
    over_groups(h, |s, g| {
        if prime_power(g.order()).is_none() {
            return skip("not a p-group");
        }
        let cyc_size = match s.analysis() {
            None => g.order(),
            Some(Ok(a)) => a.cyc.cyc_size(),
            Some(Err(e)) => return tested(vec![format!("analysis failed: {e}")]),
        };
        let expected = g.is_cyclic() || is_generalized_quaternion(g);
        if (cyc_size > 1) != expected {
            tested(vec![format!(
                "|Cyc(G)| = {cyc_size}, cyclic or generalized quaternion: {expected}"
            )])
        } else {
            tested(vec![])
        }
    })
}

fn quotient_cyc_trivial(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        let mut f = Vec::new();
        let q = quotient_by_cyc(g, &a.cyc);
        let qt = CyclicizerTable::new(&q);
        if qt.cyc_size() != 1 {
            f.push(format!("|Cyc(G/Cyc(G))| = {}", qt.cyc_size()));
        }
        let coset = g.coset_map(&a.cyc.cyc_subgroup());
        for x in 0..g.order() {
            let image = BitSet::from_indices(q.order(), a.cyc.cyc_of(x).iter().map(|y| coset[y]));
            if image != *qt.cyc_of(coset[x]) {
                f.push(format!(
                    "image of Cyc_G({}) differs from the quotient cyclicizer",
                    g.label(x)
                ));
                break;
            }
        }
        match g.quotient(&g.center(), "G/Z") {
            Ok(z) => {
                let c = CyclicizerTable::new(&z).cyc_size();
                if c != 1 {
                    f.push(format!("|Cyc(G/Z(G))| = {c}"));
                }
            }
            Err(e) => f.push(format!("G/Z(G) failed: {e}")),
        }
        tested(f)
    })
}

fn diam_one_iff_elementary_2(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        let complete = a.diameter.is_some_and(|d| d.value == 1);
        if complete != is_elementary_abelian_2(g) {
            tested(vec![format!(
                "diameter {:?}, elementary abelian 2-group: {}",
                a.diameter.map(|d| d.value),
                !complete
            )])
        } else {
            tested(vec![])
        }
    })
}

fn diam_le_3(h: &Harness) -> Outcome {
    let mut out = over_graphs(h, |_, g, a| {
        let Some(d) = a.diameter else {
            return tested(vec!["graph is disconnected".into()]);
        };
        let mut f = Vec::new();
        if d.value > 3 {
            f.push(format!(
                "diameter {} between {} and {}",
                d.value,
                g.label(d.witness.0),
                g.label(d.witness.1)
            ));
        }
        if g.center().as_set() == a.cyc.cyc() && d.value != 2 {
            f.push(format!("Z(G) = Cyc(G) but diameter {}", d.value));
        }
        tested(f)
    });
    let three: Vec<&str> = h
        .subjects
        .iter()
        .filter(|s| matches!(s.analysis(), Some(Ok(a)) if a.diameter.is_some_and(|d| d.value == 3)))
        .map(|s| s.label.as_str())
        .collect();
    out.notes.push(format!(
        "{} groups have diameter 3: {}",
        three.len(),
        three.join(", ")
    ));
    out
}

fn nilpotent_diam_le_2(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        if !is_nilpotent(g) {
            return skip("not nilpotent");
        }
        match a.diameter {
            Some(d) if d.value <= 2 => tested(vec![]),
            d => tested(vec![format!("diameter {:?}", d.map(|d| d.value))]),
        }
    })
}

fn z6_s3_diameter_3(_: &Harness) -> Outcome {
    let mut out = Outcome {
        tested: 1,
        ..Default::default()
    };
    let spec = GroupSpec::DirectProduct(vec![GroupSpec::Cyclic(6), GroupSpec::Symmetric(3)]);
    let subject = Subject {
        label: "Z6xS3".into(),
        spec: spec.clone(),
        group: build(&spec).map_err(|e| e.to_string()),
        analysis: Default::default(),
        canon: Default::default(),
    };
    let witness = (|| -> Result<(), String> {
        let g = subject.group()?;
        let a = subject.analysis().ok_or("group is cyclic")??;
        let d = a.diameter.ok_or("graph is disconnected")?;
        let x = g.index_of("(3,e)").ok_or("no element (3,e)")?;
        let y = g.index_of("(2,e)").ok_or("no element (2,e)")?;
        let dist = a.graph.distance(x, y);
        if d.value != 3 || dist != Some(3) {
            return Err(format!(
                "diameter {}, distance((3,e),(2,e)) = {dist:?}",
                d.value
            ));
        }
        Ok(())
    })();
    if let Err(w) = witness {
        out.fail(&[&subject], w);
    }
    out
}

fn omega_chi_s(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        let mut f = Vec::new();
        let s = a.cyc.s();
        let c = &a.clique;
        if c.omega != s || c.chi != s || c.clique.len() != s {
            f.push(format!("omega {}, chi {}, s {s}", c.omega, c.chi));
        }
        let adj = a.graph.adjacency();
        let pos: Vec<usize> = c
            .clique
            .iter()
            .filter_map(|&x| a.graph.position(x))
            .collect();
        if pos.len() != c.clique.len()
            || pos
                .iter()
                .any(|&u| pos.iter().any(|&v| u != v && !adj.get(u, v)))
        {
            f.push("clique witness is not a clique".into());
        }
        let colors: BTreeSet<usize> = c.coloring.iter().copied().collect();
        if colors.len() > s
            || (0..adj.size()).any(|u| adj.row(u).iter().any(|v| c.coloring[u] == c.coloring[v]))
        {
            f.push("colouring witness is not a proper s-colouring".into());
        }
        match a.graph.omega_bounds(g, &a.cyc).covering {
            Some(cb) if !cb.holds => {
                f.push(format!(
                    "|G/Cyc(G)| = {} exceeds the bound {}",
                    cb.quotient_order, cb.bound
                ));
            }
            None => f.push(format!("s = {s} < 3 for a non-cyclic group")),
            _ => {}
        }
        tested(f)
    })
}

fn omega_le_index(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        let b = a.graph.omega_bounds(g, &a.cyc);
        if b.index_holds {
            tested(vec![])
        } else {
            tested(vec![format!("omega {} > index {}", b.omega, b.index)])
        }
    })
}

fn alpha_formula(h: &Harness) -> Outcome {
    over_graphs(h, |_, _, a| {
        let ind = &a.independence;
        let Some(brute) = ind.brute_force else {
            return skip(format!(
                "{} vertices, beyond exhaustive search",
                a.graph.vertex_count()
            ));
        };
        if ind.mismatch {
            tested(vec![format!(
                "formula {} but exhaustive search finds {brute}",
                ind.formula
            )])
        } else {
            tested(vec![])
        }
    })
}

fn theorem_a(h: &Harness) -> Outcome {
    let mut out = over_graphs(h, |_, g, a| {
        let regular = a.report.is_regular;
        match (regular, regular_family(g)) {
            (true, None) => tested(vec![format!(
                "regular graph of degree {} outside both families",
                a.graph.degree(0)
            )]),
            (false, Some(f)) => tested(vec![format!(
                "{f:?} but degrees {:?}",
                a.report.degree_multiset
            )]),
            _ => tested(vec![]),
        }
    });
    let regular = h
        .subjects
        .iter()
        .filter(|s| matches!(s.analysis(), Some(Ok(a)) if a.report.is_regular))
        .count();
    out.notes
        .push(format!("{regular} catalog groups have a regular graph"));
    out
}

fn theorem_tt(h: &Harness) -> Outcome {
    let mut out = over_graphs(h, |_, g, a| {
        let Some(inv) = abelian_invariants(g) else {
            return skip("not abelian");
        };
        let Some((p, m)) = prime_power(inv[0]) else {
            return skip("not a p-group");
        };
        if inv.len() < 2 || inv.iter().any(|&d| d != inv[0]) {
            return skip("not homocyclic of rank > 1");
        }
        let n = inv.len() as u32;
        let mut f = Vec::new();
        if a.cyc.cyc_size() != 1 {
            f.push(format!("|Cyc(G)| = {}", a.cyc.cyc_size()));
        }
        for x in 1..g.order() {
            let l = g.elem_order(x).ilog(p);
            let expected = homocyclic_cyclicizer_size(p as u128, m, n, l);
            let actual = a.cyc.cyc_of(x).count() as u128;
            if expected != Some(actual) {
                f.push(format!(
                    "|Cyc_G({})| = {actual}, closed form {expected:?}",
                    g.label(x)
                ));
                break;
            }
        }
        if a.report.kind_degrees != m as usize {
            f.push(format!(
                "{} distinct degrees, expected {m}",
                a.report.kind_degrees
            ));
        }
        if m > 1 && is_tidy(g).is_ok() {
            f.push("group is tidy".into());
        }
        tested(f)
    });
    let variant_off: Vec<&str> = h
        .subjects
        .iter()
        .filter(|s| {
            let Ok(g) = s.group() else { return false };
            let Some(inv) =
                abelian_invariants(g).filter(|i| i.len() > 1 && i.iter().all(|&d| d == i[0]))
            else {
                return false;
            };
            let Some((p, m)) = prime_power(inv[0]) else {
                return false;
            };
            let n = inv.len() as u32;
            (1..m).any(|l| {
                homocyclic_cyclicizer_size(p as u128, m, n, l)
                    != homocyclic_cyclicizer_size_variant(p as u128, m, n, l)
            })
        })
        .map(|s| s.label.as_str())
        .collect();
    if !variant_off.is_empty() {
        out.notes.push(format!(
            "the exponent (n-1)(m-i+l) in place of (n-1)(i-l) disagrees with exhaustive counts for: {}",
            variant_off.join(", ")
        ));
    }
    out
}

/// `|Cyc_G(x)|` for `|x| = p^l`, `l >= 1`, in `(Z_{p^m})^n`:
/// `p^l + sum_{i=l+1}^{m} (p^i - p^(i-1)) p^((n-1)(i-l))`.
pub fn homocyclic_cyclicizer_size(p: u128, m: u32, n: u32, l: u32) -> Option<u128> {
    homocyclic_sum(p, m, l, |i| (n - 1) * (i - l))
}

/// The same sum with exponent `(n-1)(m-i+l)`; it agrees with the true
/// count only when `m <= 2`.
pub fn homocyclic_cyclicizer_size_variant(p: u128, m: u32, n: u32, l: u32) -> Option<u128> {
    homocyclic_sum(p, m, l, |i| (n - 1) * (m - i + l))
}

fn homocyclic_sum(p: u128, m: u32, l: u32, exponent: impl Fn(u32) -> u32) -> Option<u128> {
    let mut total = p.checked_pow(l)?;
    for i in l + 1..=m {
        let term =
            (p.checked_pow(i)? - p.checked_pow(i - 1)?).checked_mul(p.checked_pow(exponent(i))?)?;
        total = total.checked_add(term)?;
    }
    Some(total)
}

fn two_kind_degrees(h: &Harness) -> Outcome {
    let mut out = over_graphs(h, |_, g, a| {
        let two = a.report.kind_degrees == 2;
        let mut f = Vec::new();
        if g.is_abelian() && two != is_two_kind_abelian_form(g) {
            f.push(format!(
                "abelian with {} degrees, invariants {:?}",
                a.report.kind_degrees,
                abelian_invariants(g)
            ));
        }
        if two && is_nilpotent(g) && prime_power(g.order() / a.cyc.cyc_size()).is_none() {
            f.push(format!(
                "G/Cyc(G) of order {} is not a p-group",
                g.order() / a.cyc.cyc_size()
            ));
        }
        tested(f)
    });
    let others: Vec<&str> = h
        .subjects
        .iter()
        .filter(|s| matches!(s.analysis(), Some(Ok(a)) if a.report.kind_degrees == 2 && !is_nilpotent(group(s))))
        .map(|s| s.label.as_str())
        .collect();
    out.notes.push(format!(
        "non-nilpotent groups with two degrees: {}",
        others.join(", ")
    ));
    out
}

fn cyc_order_divides(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    over_pairs(h, &mut out, |out, gs, hs| {
        let (g, a) = (group(gs), analysis(gs));
        let mut d = g.order() - a.cyc.cyc_size();
        for &x in a.graph.vertices() {
            d = gcd(d, g.order() - a.cyc.cyc_of(x).count());
        }
        out.tested += 1;
        let c = analysis(hs).cyc.cyc_size();
        if d % c != 0 {
            out.fail(&[gs, hs], format!("|Cyc(H)| = {c} does not divide {d}"));
        }
    });
    out
}

/// Graph of a subgroup, `None` when it is cyclic.
fn subgroup_graph(g: &Group, sub: Option<crate::group::Subgroup>) -> Option<BitMatrix> {
    let s = sub?.to_group(g, "P");
    let t = CyclicizerTable::new(&s);
    NonCyclicGraph::build(&s, &t)
        .ok()
        .map(|gr| gr.adjacency().clone())
}

fn nilpotent_transfer(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let opts = *h.canon_options();
    over_pairs(h, &mut out, |out, gs, hs| {
        let (g, hg) = (group(gs), group(hs));
        if std::ptr::eq(gs, hs)
            || !is_nilpotent(g)
            || analysis(gs).cyc.cyc_size() != 1
            || analysis(hs).cyc.cyc_size() != 1
        {
            return;
        }
        out.tested += 1;
        if !is_nilpotent(hg) {
            out.fail(&[gs, hs], "H is not nilpotent");
            return;
        }
        let primes: BTreeSet<usize> = prime_divisors(g.order())
            .into_iter()
            .chain(prime_divisors(hg.order()))
            .collect();
        for p in primes {
            let pg = subgroup_graph(g, normal_sylow(g, p));
            let ph = subgroup_graph(hg, normal_sylow(hg, p));
            let same = match (&pg, &ph) {
                (None, None) => Ok(true),
                (Some(x), Some(y)) => are_isomorphic_with(x, y, &opts).map(|m| m.is_some()),
                _ => Ok(false),
            };
            match same {
                Ok(true) => {}
                Ok(false) => out.fail(&[gs, hs], format!("Sylow {p}-subgroup graphs differ")),
                Err(e) => out.fail(
                    &[gs, hs],
                    format!("Sylow {p}-subgroup comparison failed: {e}"),
                ),
            }
        }
    });
    out
}

fn prime_exponent_family(g: &Group) -> Option<(usize, u32, usize)> {
    match regular_family(g)? {
        RegularFamily::PrimeExponent { p, rank, m, .. } => Some((p, rank, m)),
        RegularFamily::QuaternionTimesCyclic { .. } => None,
    }
}

fn goormaghtigh(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let classes = h.classes();
    let mut members = Vec::new();
    for (i, s) in h.subjects.iter().enumerate() {
        let Some(g) = built(&mut out, s) else {
            continue;
        };
        if g.is_cyclic() {
            continue;
        }
        match (prime_exponent_family(g), classes.class_of[i]) {
            (None, _) => out.skip(s, "not P x Z_m with P of prime exponent"),
            (Some(_), None) => out.skip(s, "no canonical form"),
            (Some(fam), Some(c)) => members.push((s, fam, c)),
        }
    }
    for (i, &(gs, (p, m, n), cg)) in members.iter().enumerate() {
        for &(hs, (q, s, t), ch) in &members[i..] {
            out.tested += 1;
            match check_goormaghtigh_condition(p as u64, m, n as u64, q as u64, s, t as u64) {
                Ok((a, b)) if (a && b) != (cg == ch) => out.fail(
                    &[gs, hs],
                    format!(
                        "graphs isomorphic: {}, condition halves: ({a}, {b})",
                        cg == ch
                    ),
                ),
                Ok(_) => {}
                Err(e) => out.fail(&[gs, hs], format!("condition not evaluable: {e}")),
            }
        }
    }
    out
}

fn regular_uniqueness(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let key = |g: &Group| -> Option<RegularFamily> {
        let fam = regular_family(g)?;
        match fam {
            RegularFamily::QuaternionTimesCyclic { .. } => Some(fam),
            RegularFamily::PrimeExponent { p, rank, .. } if p == 2 || rank == 2 => Some(fam),
            // Z_p^3 and the non-abelian T share a graph
            RegularFamily::PrimeExponent { p, rank: 3, m, .. } => {
                Some(RegularFamily::PrimeExponent {
                    p,
                    rank: 3,
                    abelian: true,
                    m,
                })
            }
            _ => None,
        }
    };
    let classes = h.classes();
    for (i, s) in h.subjects.iter().enumerate() {
        let Some(g) = built(&mut out, s) else {
            continue;
        };
        if g.is_cyclic() {
            continue;
        }
        let Some(k) = key(g) else {
            out.skip(s, "outside the families with determined graphs");
            continue;
        };
        let Some(c) = classes.class_of[i] else {
            out.skip(s, "no canonical form");
            continue;
        };
        out.tested += 1;
        for &j in &classes.members[c] {
            let other = &h.subjects[j];
            if key(group(other)) != Some(k) {
                out.fail(
                    &[s, other],
                    format!("graph shared with a group outside {k:?}"),
                );
            }
        }
    }
    out
}

fn p_group_order_transfer(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let classes = h.classes();
    for (i, s) in h.subjects.iter().enumerate() {
        let Some(g) = built(&mut out, s) else {
            continue;
        };
        let Some((p, n)) = prime_power(g.order()) else {
            out.skip(s, "not a p-group");
            continue;
        };
        if g.is_cyclic() || n < 3 {
            out.skip(s, "cyclic or of order below p^3");
            continue;
        }
        let Some(c) = classes.class_of[i] else {
            out.skip(s, "no canonical form");
            continue;
        };
        let a = analysis(s);
        let self_cyclic: BTreeSet<usize> = (0..g.order())
            .filter(|&x| a.cyc.cyc_of(x) == g.cyclic_set(x))
            .map(|x| g.elem_order(x))
            .collect();
        if self_cyclic.is_empty() {
            out.skip(s, "no x with Cyc_G(x) = <x>");
            continue;
        }
        out.tested += 1;
        let order_forced = (p == 2 && self_cyclic.contains(&2))
            || self_cyclic.contains(&(g.order() / p))
            || self_cyclic.contains(&(g.order() / p / p));
        for &j in &classes.members[c] {
            let other = &h.subjects[j];
            let hg = group(other);
            if a.cyc.cyc_size() > 1
                && !(is_generalized_quaternion(g)
                    && is_generalized_quaternion(hg)
                    && hg.order() == g.order())
            {
                out.fail(
                    &[s, other],
                    "Cyc(G) != 1 but not both generalized quaternion of the same order",
                );
            }
            if order_forced && hg.order() != g.order() {
                out.fail(
                    &[s, other],
                    format!("orders {} and {} differ", g.order(), hg.order()),
                );
            }
        }
    }
    out
}

fn mu_orders(h: &Harness) -> Outcome {
    over_graphs(h, |_, g, a| {
        let mut f = Vec::new();
        let mu = g.mu();
        let pe = g.pi_e();
        if pe.iter().any(|&o| !mu.iter().any(|&m| m % o == 0)) {
            f.push("some element order divides no member of mu(G)".into());
        }
        if mu.iter().any(|&a| mu.iter().any(|&b| a != b && b % a == 0)) {
            f.push("mu(G) is not an antichain".into());
        }
        let cyc_orders: BTreeSet<usize> = a.cyc.cyc().iter().map(|x| g.elem_order(x)).collect();
        if let Some(o) = mu.intersection(&cyc_orders).next() {
            f.push(format!("{o} lies in mu(G) and in the orders of Cyc(G)"));
        }
        if let Some(x) = (0..g.order())
            .find(|&x| mu.contains(&g.elem_order(x)) && a.cyc.cyc_of(x) != g.cyclic_set(x))
        {
            f.push(format!(
                "|{}| in mu(G) but Cyc_G({0}) is larger than <{0}>",
                g.label(x)
            ));
        }
        tested(f)
    })
}

fn same_order_same_spectrum(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    over_pairs(h, &mut out, |out, gs, hs| {
        let (g, hg) = (group(gs), group(hs));
        if g.order() != hg.order() {
            return;
        }
        out.tested += 1;
        if g.pi_e() != hg.pi_e() {
            out.fail(&[gs, hs], format!("pi_e {:?} vs {:?}", g.pi_e(), hg.pi_e()));
        }
    });
    out
}

fn dihedral_graph_unique(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let classes = h.classes();
    for (i, s) in h.subjects.iter().enumerate() {
        let Some(g) = built(&mut out, s) else {
            continue;
        };
        if !is_dihedral(g) {
            out.skip(s, "not dihedral");
            continue;
        }
        let Some(c) = classes.class_of[i] else {
            out.skip(s, "no canonical form");
            continue;
        };
        out.tested += 1;
        let n = g.order() / 2;
        for &j in &classes.members[c] {
            let other = &h.subjects[j];
            let hg = group(other);
            if hg.order() != g.order() || !hg.elem_orders().any(|o| o == n) {
                out.fail(
                    &[s, other],
                    format!("order {} or no element of order {n}", hg.order()),
                );
            } else if n % 2 == 1 && !is_dihedral(hg) {
                out.fail(&[s, other], "n odd but H is not dihedral");
            }
        }
    }
    out
}

/// `Some((p, n))` when `g` is `Z_{p^(n-1)} + Z_p` with `n >= 3`.
fn k_group(g: &Group) -> Option<(usize, u32)> {
    let (p, n) = prime_power(g.order())?;
    (n >= 3 && abelian_invariants(g)? == [p, g.order() / p]).then_some((p, n))
}

fn maximal_cyclic_2_groups(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let classes = h.classes();
    let opts = *h.canon_options();
    for (i, s) in h.subjects.iter().enumerate() {
        let Some(g) = built(&mut out, s) else {
            continue;
        };
        let k = k_group(g);
        let semidihedral = is_semidihedral(g);
        let dihedral_2 = is_dihedral(g) && g.order().is_power_of_two();
        let modular = is_modular(g);
        if k.is_none() && !semidihedral && !dihedral_2 && !modular {
            out.skip(s, "not K(p^n), G(p^n), H(2^m) or a dihedral 2-group");
            continue;
        }
        out.tested += 1;
        if modular {
            // G(p^n) must share the graph of K(p^n), built directly
            let (p, _) = prime_power(g.order()).unwrap();
            let kspec = GroupSpec::AbelianInvariantFactors(vec![p, g.order() / p]);
            let verdict = build(&kspec).map_err(|e| e.to_string()).and_then(|kg| {
                let kt = CyclicizerTable::new(&kg);
                let kgraph = NonCyclicGraph::build(&kg, &kt).map_err(|e| e.to_string())?;
                are_isomorphic_with(analysis(s).graph.adjacency(), kgraph.adjacency(), &opts)
                    .map(|m| m.is_some())
                    .map_err(|e| e.to_string())
            });
            match verdict {
                Ok(true) => {}
                Ok(false) => out.fail(&[s], format!("graph differs from that of {kspec}")),
                Err(e) => out.fail(&[s], format!("comparison with {kspec} failed: {e}")),
            }
        }
        let Some(c) = classes.class_of[i] else {
            out.skip(s, "no canonical form");
            continue;
        };
        for &j in &classes.members[c] {
            let other = &h.subjects[j];
            let hg = group(other);
            let fine = match k {
                // K(8) stands alone
                Some((2, 3)) => k_group(hg) == Some((2, 3)),
                // otherwise G(p^n) of the same order is allowed
                Some(pn) => k_group(hg) == Some(pn) || (is_modular(hg) && hg.order() == g.order()),
                None if semidihedral => is_semidihedral(hg) && hg.order() == g.order(),
                None if dihedral_2 => is_dihedral(hg) && hg.order() == g.order(),
                None => true,
            };
            if !fine {
                out.fail(
                    &[s, other],
                    "graph shared with a group outside the allowed list",
                );
            }
        }
    }
    out
}

/// Order, element-order multiset and centre order; enough to separate the
/// catalog groups that could share a graph with `S_n` or `A_n`.
fn fingerprint(g: &Group) -> (usize, Vec<usize>, usize) {
    let mut orders: Vec<usize> = g.elem_orders().collect();
    orders.sort_unstable();
    (g.order(), orders, g.center().order())
}

fn symmetric_alternating_unique(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let classes = h.classes();
    for (i, s) in h.subjects.iter().enumerate() {
        let reference = match s.spec {
            GroupSpec::Symmetric(n) if n > 2 => GroupSpec::Symmetric(n),
            GroupSpec::Alternating(n) if n > 3 => GroupSpec::Alternating(n),
            _ => {
                out.skip(s, "not S_n (n > 2) or A_n (n > 3)");
                continue;
            }
        };
        let Some(c) = classes.class_of[i] else {
            out.skip(s, "no canonical form");
            continue;
        };
        out.tested += 1;
        let fp = fingerprint(group(s));
        for &j in &classes.members[c] {
            let other = &h.subjects[j];
            if fingerprint(group(other)) != fp {
                out.fail(
                    &[s, other],
                    format!("graph shared with a group unlike {reference}"),
                );
            }
        }
    }
    out
}

fn same_graph_same_order(h: &Harness) -> Outcome {
    let mut out = Outcome::default();
    let mut mixed = Vec::new();
    over_pairs(h, &mut out, |out, gs, hs| {
        out.tested += 1;
        let (g, hg) = (group(gs), group(hs));
        if g.order() < hg.order() {
            mixed.push(format!(
                "{} ({}) and {} ({})",
                gs.label, gs.spec, hs.label, hs.spec
            ));
        }
    });
    if mixed.is_empty() {
        out.notes
            .push("all isomorphic graphs in the catalog come from groups of equal order".into());
    } else {
        out.notes.extend(
            mixed
                .into_iter()
                .map(|m| format!("open-question counterexample: {m}")),
        );
    }
    out
}
