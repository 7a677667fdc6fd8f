//! Structural theorems about non-cyclic graphs, run as checks over a
//! catalog of groups.
//!
//! ```no_run
//! use noncyc::harness::{Catalog, Harness};
//!
//! let h = Harness::new(&Catalog::standard(64), Default::default()).unwrap();
//! let r = h.run_check("diam_le_3").unwrap();
//! assert!(r.pass);
//! ```

mod catalog;
mod checks;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use web_time::Instant;

pub use catalog::{
    abelian_types, heisenberg_27, Catalog, CatalogEntry, DEFAULT_MAX_ORDER, FAMILY_MAX_ORDER,
};
pub use checks::{homocyclic_cyclicizer_size, homocyclic_cyclicizer_size_variant, registry, Check};

use crate::error::{Error, Result};
use crate::graph::{analyze, Analysis};
use crate::group::{build, Group, GroupSpec};
use crate::iso::{canonical_form_with, CanonOptions, CanonicalForm};

/// Most counterexamples kept per check.
pub const COUNTEREXAMPLE_CAP: usize = 10;

/// One catalog entry with its group and lazily computed data.
pub struct Subject {
    pub label: String,
    pub spec: GroupSpec,
    group: std::result::Result<Group, String>,
    analysis: OnceLock<std::result::Result<Analysis, String>>,
    canon: OnceLock<std::result::Result<CanonicalForm, String>>,
}

impl Subject {
    pub fn group(&self) -> std::result::Result<&Group, &str> {
        self.group.as_ref().map_err(String::as_str)
    }

    /// `None` for cyclic groups (and failed builds).
    pub fn analysis(&self) -> Option<std::result::Result<&Analysis, &str>> {
        let g = self.group.as_ref().ok()?;
        if g.is_cyclic() {
            return None;
        }
        let a = self
            .analysis
            .get_or_init(|| analyze(g).map_err(|e| e.to_string()));
        Some(a.as_ref().map_err(String::as_str))
    }

    fn canonical(&self, opts: &CanonOptions) -> Option<std::result::Result<&CanonicalForm, &str>> {
        let a = match self.analysis()? {
            Ok(a) => a,
            Err(e) => return Some(Err(e)),
        };
        let c = self.canon.get_or_init(|| {
            canonical_form_with(a.graph.adjacency(), opts).map_err(|e| e.to_string())
        });
        Some(c.as_ref().map_err(String::as_str))
    }

    fn reference(&self) -> GroupRef {
        GroupRef {
            label: self.label.clone(),
            spec: self.spec.to_string(),
        }
    }
}

/// Catalog subjects plus the isomorphism classes of their graphs.
pub struct Harness {
    subjects: Vec<Subject>,
    canon: CanonOptions,
    classes: OnceLock<Classes>,
}

struct Classes {
    /// Subject indices, each class sorted; classes ordered by first member.
    members: Vec<Vec<usize>>,
    class_of: Vec<Option<usize>>,
    /// Subjects that failed to build or to get a canonical form, with the reason.
    failed: Vec<(usize, String)>,
}

impl Harness {
    pub fn new(catalog: &Catalog, canon: CanonOptions) -> Result<Self> {
        if catalog.is_empty() {
            return Err(Error::InvalidParameter("catalog is empty".into()));
        }
        let subjects = par_map(catalog.entries(), |e| Subject {
            label: e.label.clone(),
            spec: e.spec.clone(),
            group: build(&e.spec)
                .map(|g| g.with_name(e.label.clone()))
                .map_err(|e| e.to_string()),
            analysis: OnceLock::new(),
            canon: OnceLock::new(),
        });
        Ok(Harness {
            subjects,
            canon,
            classes: OnceLock::new(),
        })
    }

    pub fn subjects(&self) -> &[Subject] {
        &self.subjects
    }

    pub fn canon_options(&self) -> &CanonOptions {
        &self.canon
    }

    fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let forms = par_map(&self.subjects, |s| {
                s.canonical(&self.canon)
                    .map(|r| r.map(|_| ()).map_err(str::to_owned))
            });
            let mut failed = Vec::new();
            let mut buckets: BTreeMap<(usize, &str), Vec<Vec<usize>>> = BTreeMap::new();
            for (i, f) in forms.into_iter().enumerate() {
                match f {
                    None => {
                        if let Err(e) = self.subjects[i].group() {
                            failed.push((i, format!("build failed: {e}")));
                        }
                    }
                    Some(Err(e)) => failed.push((i, format!("no canonical form: {e}"))),
                    Some(Ok(())) => {
                        let c = self.subjects[i].canon.get().unwrap().as_ref().unwrap();
                        let bucket = buckets
                            .entry((c.vertex_count, c.certificate.as_str()))
                            .or_default();
                        // equal certificates are confirmed by comparing matrices
                        match bucket.iter_mut().find(|cls| {
                            self.subjects[cls[0]]
                                .canon
                                .get()
                                .unwrap()
                                .as_ref()
                                .unwrap()
                                .matrix
                                == c.matrix
                        }) {
                            Some(cls) => cls.push(i),
                            None => bucket.push(vec![i]),
                        }
                    }
                }
            }
            let mut members: Vec<Vec<usize>> = buckets.into_values().flatten().collect();
            members.sort();
            let mut class_of = vec![None; self.subjects.len()];
            for (k, cls) in members.iter().enumerate() {
                for &i in cls {
                    class_of[i] = Some(k);
                }
            }
            Classes {
                members,
                class_of,
                failed,
            }
        })
    }

    /// Labels grouped by isomorphism class of their graphs; cyclic groups
    /// and failed entries are absent.
    pub fn graph_classes(&self) -> Vec<Vec<&str>> {
        self.classes()
            .members
            .iter()
            .map(|c| c.iter().map(|&i| self.subjects[i].label.as_str()).collect())
            .collect()
    }

    pub fn run_check(&self, name: &str) -> Result<CheckResult> {
        let check = registry()
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCheck(name.to_owned()))?;
        Ok(self.run(check))
    }

    pub fn run_all(&self) -> Vec<CheckResult> {
        registry().iter().map(|c| self.run(c)).collect()
    }

    fn run(&self, check: &Check) -> CheckResult {
        let start = Instant::now();
        let out = (check.run)(self);
        let mut notes = out.notes;
        if out.counterexamples.len() > COUNTEREXAMPLE_CAP {
            notes.push(format!(
                "{} further counterexamples omitted",
                out.counterexamples.len() - COUNTEREXAMPLE_CAP
            ));
        }
        let mut counterexamples = out.counterexamples;
        counterexamples.truncate(COUNTEREXAMPLE_CAP);
        CheckResult {
            check: check.name.to_owned(),
            statement: check.statement.to_owned(),
            tested: out.tested,
            pass: counterexamples.is_empty(),
            skipped: out.skipped,
            counterexamples,
            notes,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

pub fn run_check(name: &str, catalog: &Catalog) -> Result<CheckResult> {
    Harness::new(catalog, CanonOptions::default())?.run_check(name)
}

pub fn run_all(catalog: &Catalog) -> Result<Vec<CheckResult>> {
    Ok(Harness::new(catalog, CanonOptions::default())?.run_all())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    pub label: String,
    pub spec: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub label: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub groups: Vec<GroupRef>,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    /// The claim being tested, in words.
    pub statement: String,
    pub tested: usize,
    pub skipped: Vec<Skip>,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

/// Fixed-width table, one line per check.
pub fn summary_table(results: &[CheckResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.check.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = format!(
        "{:<width$}  {:>6}  {:>7}  {:>7}  {:>8}  result\n",
        "check", "tested", "skipped", "failed", "ms"
    );
    for r in results {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>7}  {:>7}  {:>8}  {}",
            r.check,
            r.tested,
            r.skipped.len(),
            r.counterexamples.len(),
            r.elapsed_ms,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    out
}

#[derive(Default)]
struct Outcome {
    tested: usize,
    skipped: Vec<Skip>,
    counterexamples: Vec<Counterexample>,
    notes: Vec<String>,
}

impl Outcome {
    fn skip(&mut self, s: &Subject, reason: impl Into<String>) {
        self.skipped.push(Skip {
            label: s.label.clone(),
            reason: reason.into(),
        });
    }

    fn fail(&mut self, groups: &[&Subject], witness: impl Into<String>) {
        self.counterexamples.push(Counterexample {
            groups: groups.iter().map(|s| s.reference()).collect(),
            witness: witness.into(),
        });
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}
