//! Acceptance run over the default catalog. Prints one line per criterion
//! and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use noncyc::cyclic::{cyclicizer, is_tidy, CyclicizerTable};
use noncyc::graph::{analyze, NonCyclicGraph};
use noncyc::harness::{
    homocyclic_cyclicizer_size, homocyclic_cyclicizer_size_variant, Catalog, Harness,
    DEFAULT_MAX_ORDER,
};
use noncyc::iso::{
    are_isomorphic, canonical_form, check_goormaghtigh_condition, is_isomorphism, CanonOptions,
};
use noncyc::{build, Group};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn(&Harness) -> Verdict);

fn group(spec: &str) -> Group {
    build(&spec.parse().unwrap()).unwrap()
}

fn graph(spec: &str) -> NonCyclicGraph {
    let g = group(spec);
    NonCyclicGraph::build(&g, &CyclicizerTable::new(&g)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs a harness check and requires it to pass having tested something.
fn check(h: &Harness, name: &str) -> Result<usize, String> {
    let r = h.run_check(name).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("{name}: {:?}", r.counterexamples))?;
    ensure(r.tested > 0, || format!("{name}: nothing tested"))?;
    Ok(r.tested)
}

fn c1_cyclicizer_example(_: &Harness) -> Verdict {
    let g = group("Z2xZ4");
    let x = g.index_of("(0,2)").ok_or("no element (0,2)")?;
    let got: BTreeSet<&str> = cyclicizer(&g, x).iter().map(|y| g.label(y)).collect();
    let want: BTreeSet<&str> = ["(0,0)", "(0,1)", "(0,2)", "(0,3)", "(1,1)", "(1,3)"].into();
    ensure(got == want, || format!("Cyc((0,2)) = {got:?}"))?;
    let w = is_tidy(&g).err().ok_or("Z2xZ4 reported tidy")?;
    Ok(format!(
        "Cyc((0,2)) = {got:?}; not tidy: {} * {} leaves Cyc({})",
        g.label(w.a),
        g.label(w.b),
        g.label(w.x)
    ))
}

fn c2_diameters(h: &Harness) -> Verdict {
    let a = check(h, "diam_le_3")?;
    let b = check(h, "diam_one_iff_elementary_2")?;
    let c = check(h, "nilpotent_diam_le_2")?;
    let mut three = 0;
    for s in h.subjects() {
        if let Some(an) = s.analysis() {
            let an = an.map_err(|e| format!("{}: {e}", s.label))?;
            let d = an
                .diameter
                .ok_or_else(|| format!("{} disconnected", s.label))?
                .value;
            ensure(d <= 3, || format!("{} has diameter {d}", s.label))?;
            three += usize::from(d == 3);
        }
    }
    Ok(format!("{a} graphs with diameter <= 3 ({three} equal to 3), {b} checked for diameter 1, {c} nilpotent"))
}

fn c3_z6_s3(h: &Harness) -> Verdict {
    check(h, "z6_s3_diameter_3")?;
    let g = group("Z6xS3");
    let a = analyze(&g).map_err(|e| e.to_string())?;
    let (x, y) = (g.index_of("(3,e)").unwrap(), g.index_of("(2,e)").unwrap());
    let d = a.graph.distance(x, y);
    ensure(d == Some(3) && a.report.diameter == Some(3), || {
        format!("distance {d:?}")
    })?;
    Ok("diameter 3, d((3,e),(2,e)) = 3".into())
}

fn c4_omega_chi_s(h: &Harness) -> Verdict {
    let n = check(h, "omega_chi_s")?;
    let g = group("Q8");
    let t = CyclicizerTable::new(&g);
    let gr = NonCyclicGraph::build(&g, &t).unwrap();
    let cb = gr.omega_bounds(&g, &t).covering.ok_or("Q8 has s < 3")?;
    ensure(cb.quotient_order == 4 && cb.bound == 4 && cb.holds, || {
        format!("Q8: {cb:?}")
    })?;
    Ok(format!(
        "{n} groups with omega = chi = s and the covering bound; Q8 meets it at 4 = 4"
    ))
}

fn c5_homocyclic(_: &Harness) -> Verdict {
    let mut notes = Vec::new();
    for (p, m, n) in [
        (2usize, 2u32, 2u32),
        (2, 2, 3),
        (2, 3, 2),
        (3, 2, 2),
        (5, 2, 2),
    ] {
        let q = p.pow(m);
        let spec = format!("Ab({})", vec![q.to_string(); n as usize].join(","));
        let g = group(&spec);
        let r = analyze(&g).map_err(|e| e.to_string())?.report;
        ensure(r.kind_degrees == m as usize, || {
            format!("{spec}: {} degree kinds", r.kind_degrees)
        })?;
        let mut differs = false;
        for x in 1..g.order() {
            // every y tried by subgroup closure, independent of the cyclicizer tables
            let brute = (0..g.order())
                .filter(|&y| g.is_pair_cyclic_by_closure(x, y))
                .count() as u128;
            let l = g.elem_order(x).ilog(p);
            let closed = homocyclic_cyclicizer_size(p as u128, m, n, l);
            ensure(closed == Some(brute), || {
                format!(
                    "{spec}: |Cyc({})| = {brute}, closed form {closed:?}",
                    g.label(x)
                )
            })?;
            differs |= homocyclic_cyclicizer_size_variant(p as u128, m, n, l) != Some(brute);
        }
        if differs {
            notes.push(spec);
        }
    }
    ensure(notes == ["Ab(8,8)"], || {
        format!("exponent (n-1)(m-i+l) disagrees on {notes:?}")
    })?;
    Ok("closed form matches all five groups; exponent (n-1)(m-i+l) only right for m = 2 (fails on Ab(8,8))".into())
}

fn c6_regular(h: &Harness) -> Verdict {
    let n = check(h, "theorem_A")?;
    for (spec, regular) in [
        ("Q8", true),
        ("Z3xQ8", true),
        ("EA(3,2)", true),
        ("Z4xEA(3,2)", true),
        ("Z2xQ8", false),
        ("D8", false),
        ("Z2xZ4", false),
    ] {
        let r = analyze(&group(spec)).map_err(|e| e.to_string())?.report;
        ensure(r.is_regular == regular, || {
            format!("{spec}: regular = {}", r.is_regular)
        })?;
    }
    let count = h
        .subjects()
        .iter()
        .filter(|s| matches!(s.analysis(), Some(Ok(a)) if a.report.is_regular))
        .count();
    Ok(format!(
        "{n} graphs classified, {count} regular, all in the two families"
    ))
}

fn c7_maximal_cyclic(h: &Harness) -> Verdict {
    check(h, "maximal_cyclic_2_groups")?;
    let iso = |a: &str, b: &str| {
        are_isomorphic(graph(a).adjacency(), graph(b).adjacency())
            .unwrap()
            .is_some()
    };
    ensure(iso("G(2,4)", "K(2,4)"), || "G(2,4) vs K(2,4)".into())?;
    ensure(iso("G(3,3)", "K(3,3)"), || "G(3,3) vs K(3,3)".into())?;
    ensure(!iso("D8", "K(2,3)"), || "D8 vs K(8)".into())?;
    ensure(!iso("H(4)", "K(2,4)"), || "H(4) vs K(16)".into())?;
    ensure(!iso("H(4)", "D16"), || "H(4) vs D16".into())?;
    let classes = h.graph_classes();
    let d16 = classes
        .iter()
        .find(|c| c.contains(&"D16"))
        .ok_or("D16 not classified")?;
    ensure(d16 == &["D16"], || {
        format!("D16 shares its class with {d16:?}")
    })?;
    for other in ["Q16", "H(4)", "G(2,4)", "K(2,4)"] {
        ensure(!iso("D16", other), || format!("D16 vs {other}"))?;
    }
    Ok("G(2,4) ~ K(16), G(3,3) ~ K(27), D8 !~ K(8), H(4) !~ K(16), D16; D16 alone".into())
}

fn c8_goormaghtigh(h: &Harness) -> Verdict {
    let n = check(h, "goormaghtigh")?;
    // 31 = (2^5 - 1)/(2 - 1) = (5^3 - 1)/(5 - 1)
    ensure(
        check_goormaghtigh_condition(2, 5, 3, 5, 3, 1).unwrap() == (true, false),
        || "2^5 vs 5^3".into(),
    )?;
    ensure(
        check_goormaghtigh_condition(3, 2, 2, 3, 2, 2).unwrap() == (true, true),
        || "3^2 vs itself".into(),
    )?;
    ensure(
        check_goormaghtigh_condition(2, 2, 3, 3, 2, 1).unwrap() == (false, false),
        || "2^2 vs 3^2".into(),
    )?;
    Ok(format!("{n} catalog pairs agree with the condition"))
}

fn c9_classes(h: &Harness) -> Verdict {
    check(h, "same_order_same_spectrum")?;
    let find = |label: &str| {
        h.subjects()
            .iter()
            .find(|s| s.label == label)
            .unwrap()
            .group()
            .unwrap()
    };
    let classes = h.graph_classes();
    for c in &classes {
        let first = find(c[0]);
        for &label in &c[1..] {
            let g = find(label);
            ensure(
                g.order() == first.order() && g.pi_e() == first.pi_e(),
                || format!("{} vs {label}", c[0]),
            )?;
        }
    }
    let r = h
        .run_check("same_graph_same_order")
        .map_err(|e| e.to_string())?;
    ensure(
        !r.notes.iter().any(|n| n.starts_with("open-question")),
        || format!("{:?}", r.notes),
    )?;
    let shared = classes.iter().filter(|c| c.len() > 1).count();
    Ok(format!(
        "{} classes ({shared} with several groups) each share |G| and pi_e",
        classes.len()
    ))
}

fn c10_canonical_stability(h: &Harness) -> Verdict {
    let graphs: Vec<&NonCyclicGraph> = h
        .subjects()
        .iter()
        .filter_map(|s| match s.analysis() {
            Some(Ok(a)) if a.graph.vertex_count() >= 6 => Some(&a.graph),
            _ => None,
        })
        .collect();
    let step = graphs.len() / 20;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut sizes = Vec::new();
    for gr in graphs.iter().step_by(step).take(20) {
        let adj = gr.adjacency();
        let reference = canonical_form(adj).map_err(|e| e.to_string())?;
        let mut order: Vec<usize> = (0..adj.size()).collect();
        for _ in 0..100 {
            order.shuffle(&mut rng);
            let p = adj.permuted(&order);
            let c = canonical_form(&p).map_err(|e| e.to_string())?;
            ensure(
                c.certificate == reference.certificate && c.matrix == reference.matrix,
                || format!("{}: certificate changed under relabeling", gr.name()),
            )?;
            let map = are_isomorphic(adj, &p)
                .map_err(|e| e.to_string())?
                .ok_or("relabeled graph not isomorphic")?;
            ensure(is_isomorphism(adj, &p, &map), || {
                format!("{}: bijection fails", gr.name())
            })?;
        }
        sizes.push(adj.size());
    }
    ensure(sizes.len() == 20, || format!("only {} graphs", sizes.len()))?;
    Ok(format!(
        "20 graphs ({} to {} vertices) x 100 relabelings",
        sizes.iter().min().unwrap(),
        sizes.iter().max().unwrap()
    ))
}

fn c11_alpha(h: &Harness) -> Verdict {
    let n = check(h, "alpha_formula")?;
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for s in h.subjects() {
        let Some(Ok(a)) = s.analysis() else { continue };
        if a.graph.vertex_count() <= 64 {
            let brute = a
                .independence
                .brute_force
                .ok_or_else(|| format!("{}: no exhaustive search", s.label))?;
            compared += 1;
            if brute != a.independence.formula {
                mismatches.push(format!(
                    "{} ({brute} vs {})",
                    s.label, a.independence.formula
                ));
            }
        }
    }
    ensure(compared == n && mismatches.is_empty(), || {
        format!("{compared} compared, mismatches {mismatches:?}")
    })?;
    Ok(format!(
        "{n} graphs with at most 64 vertices, exhaustive search agrees with the formula"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let h = Harness::new(
        &Catalog::standard(DEFAULT_MAX_ORDER),
        CanonOptions::default(),
    )
    .expect("catalog builds");
    let failed_builds = h.subjects().iter().filter(|s| s.group().is_err()).count();
    println!(
        "catalog: {} groups up to order {DEFAULT_MAX_ORDER}, {failed_builds} failed to build",
        h.subjects().len()
    );
    let criteria: [Criterion; 11] = [
        ("cyclicizer of (0,2) in Z2xZ4", c1_cyclicizer_example),
        ("diameter sweep", c2_diameters),
        ("Z6xS3 has diameter 3", c3_z6_s3),
        ("omega = chi = s and covering bound", c4_omega_chi_s),
        ("homocyclic cyclicizer sizes", c5_homocyclic),
        ("regular graphs", c6_regular),
        ("2-groups with a maximal cyclic subgroup", c7_maximal_cyclic),
        ("elementary abelian times cyclic", c8_goormaghtigh),
        ("graph classes share order and spectrum", c9_classes),
        ("canonical form stability", c10_canonical_stability),
        ("independence number", c11_alpha),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict =
            catch_unwind(AssertUnwindSafe(|| run(&h))).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("criterion {:>2} pass  {name} ({ms} ms): {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of 11 criteria pass in {:.1} s",
        11 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
