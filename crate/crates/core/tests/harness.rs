use noncyc::harness::{summary_table, Catalog, Harness};

#[test]
fn standard_catalog_passes() {
    let cat = Catalog::standard(200);
    let h = Harness::new(&cat, Default::default()).unwrap();
    let results = h.run_all();
    print!("{}", summary_table(&results));
    for r in &results {
        for c in &r.counterexamples {
            println!("{}: {:?} {}", r.check, c.groups, c.witness);
        }
        for n in &r.notes {
            println!("{}: {}", r.check, n);
        }
    }
    println!("{} entries", cat.len());
    assert!(results.iter().all(|r| r.pass));
}

#[test]
fn unbuildable_entries_are_skipped_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    // row 2 repeats an element, so this is not a group
    std::fs::write(
        dir.path().join("broken.cayley"),
        "3\ne a b\n0 1 2\n1 1 0\n2 0 1\n",
    )
    .unwrap();
    let cat = Catalog::parse(
        "broken = cayley:broken.cayley\nD8\nQ8\nZ2xZ4\n",
        Some(dir.path()),
    )
    .unwrap();
    let h = Harness::new(&cat, Default::default()).unwrap();
    assert!(h.subjects()[0].group().is_err());
    for r in h.run_all() {
        assert!(r.pass, "{}", r.check);
        if r.tested > 0 && !r.skipped.is_empty() {
            assert!(
                r.skipped
                    .iter()
                    .any(|s| s.label == "broken" && s.reason.starts_with("build failed")),
                "{}",
                r.check
            );
        }
    }
    let r = h.run_check("diam_le_3").unwrap();
    assert_eq!(r.tested, 3);
    assert_eq!(r.skipped.len(), 1);
    assert_eq!(h.graph_classes().concat().len(), 3);
}

#[test]
fn cyclic_only_catalog_tests_no_graphs() {
    let cat = Catalog::parse("Z4\nZ12\n", None).unwrap();
    let h = Harness::new(&cat, Default::default()).unwrap();
    for name in [
        "diam_le_3",
        "omega_chi_s",
        "alpha_formula",
        "theorem_A",
        "two_kind_degrees",
    ] {
        let r = h.run_check(name).unwrap();
        assert_eq!(r.tested, 0, "{name}");
        assert_eq!(r.skipped.len(), 2, "{name}");
        assert!(r.pass);
    }
    assert!(h.graph_classes().is_empty());
}

#[test]
fn bad_requests() {
    assert!(Harness::new(&Catalog::default(), Default::default()).is_err());
    let h = Harness::new(&Catalog::parse("D8", None).unwrap(), Default::default()).unwrap();
    assert_eq!(
        h.run_check("no_such_check").unwrap_err().kind(),
        "UnknownCheck"
    );
    assert!(Catalog::parse("a = D8\na = Q8\n", None).is_err());
    assert!(Catalog::parse("D7\n", None).is_err());
}

#[test]
fn results_serialize() {
    let h = Harness::new(&Catalog::standard(24), Default::default()).unwrap();
    let results = h.run_all();
    let text = serde_json::to_string(&results).unwrap();
    let back: Vec<noncyc::harness::CheckResult> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, results);
    assert_eq!(summary_table(&results).lines().count(), results.len() + 1);
}
