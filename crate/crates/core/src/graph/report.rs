use serde::{Deserialize, Serialize};

use super::{independence_number, CliqueColoring, Diameter, Independence, NonCyclicGraph};
use crate::cyclic::{prime_graph, CyclicizerTable};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub group: String,
    pub order: usize,
    pub cyc_size: usize,
    pub vertex_count: usize,
    /// `[degree, count]` pairs, ascending by degree.
    pub degree_multiset: Vec<(usize, usize)>,
    pub kind_degrees: usize,
    pub is_regular: bool,
    pub is_connected: bool,
    pub diameter: Option<usize>,
    pub clique_number: usize,
    pub chromatic_number: usize,
    pub s: usize,
    pub independence_number: usize,
    pub multipartite_profile: Option<Vec<usize>>,
    pub prime_graph_components: usize,
}

const CSV_HEADER: [&str; 15] = [
    "group",
    "order",
    "cyc_size",
    "vertex_count",
    "degree_multiset",
    "kind_degrees",
    "is_regular",
    "is_connected",
    "diameter",
    "clique_number",
    "chromatic_number",
    "s",
    "independence_number",
    "multipartite_profile",
    "prime_graph_components",
];

impl InvariantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn csv_fields(&self) -> Vec<String> {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
        vec![
            self.group.clone(),
            self.order.to_string(),
            self.cyc_size.to_string(),
            self.vertex_count.to_string(),
            self.degree_multiset
                .iter()
                .map(|(d, c)| format!("{d}:{c}"))
                .collect::<Vec<_>>()
                .join(";"),
            self.kind_degrees.to_string(),
            self.is_regular.to_string(),
            self.is_connected.to_string(),
            self.diameter.map_or_else(String::new, |d| d.to_string()),
            self.clique_number.to_string(),
            self.chromatic_number.to_string(),
            self.s.to_string(),
            self.independence_number.to_string(),
            self.multipartite_profile
                .as_deref()
                .map_or_else(String::new, join),
            self.prime_graph_components.to_string(),
        ]
    }

    /// CSV text for a header plus one row per report.
    pub fn to_csv(reports: &[InvariantReport]) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in reports {
            w.write_record(r.csv_fields()).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

/// Everything computed for one group.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub cyc: CyclicizerTable,
    pub graph: NonCyclicGraph,
    pub diameter: Option<Diameter>,
    pub clique: CliqueColoring,
    pub independence: Independence,
    pub report: InvariantReport,
}

pub fn analyze(g: &Group) -> Result<Analysis> {
    let cyc = CyclicizerTable::new(g);
    let graph = NonCyclicGraph::build(g, &cyc)?;
    let diameter = match graph.diameter() {
        Ok(d) => Some(d),
        Err(Error::Disconnected) => None,
        Err(e) => return Err(e),
    };
    let clique = graph.clique_and_chromatic(&cyc)?;
    let independence = independence_number(g, &cyc, &graph);
    let kinds = graph.degree_kinds();
    let report = InvariantReport {
        group: g.name().to_owned(),
        order: g.order(),
        cyc_size: cyc.cyc_size(),
        vertex_count: graph.vertex_count(),
        degree_multiset: kinds.multiset,
        kind_degrees: kinds.kinds,
        is_regular: kinds.regular,
        is_connected: diameter.is_some(),
        diameter: diameter.map(|d| d.value),
        clique_number: clique.omega,
        chromatic_number: clique.chi,
        s: cyc.s(),
        independence_number: independence.value,
        multipartite_profile: graph.multipartite_profile(),
        prime_graph_components: prime_graph(g).components,
    };
    Ok(Analysis {
        cyc,
        graph,
        diameter,
        clique,
        independence,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, GroupSpec};

    fn report(s: &str) -> InvariantReport {
        analyze(&build(&s.parse::<GroupSpec>().unwrap()).unwrap())
            .unwrap()
            .report
    }

    #[test]
    fn z2_z4_report() {
        let r = report("Z2xZ4");
        assert_eq!((r.order, r.cyc_size, r.vertex_count), (8, 1, 7));
        assert_eq!(r.degree_multiset, vec![(2, 1), (4, 4), (6, 2)]);
        assert_eq!(
            (
                r.s,
                r.clique_number,
                r.chromatic_number,
                r.independence_number
            ),
            (4, 4, 4, 3)
        );
        assert_eq!(r.diameter, Some(2));
    }

    #[test]
    fn json_field_names() {
        let v: serde_json::Value = serde_json::from_str(&report("S3").to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut want = CSV_HEADER.to_vec();
        want.sort_unstable();
        let mut got = keys.clone();
        got.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(v["degree_multiset"], serde_json::json!([[3, 2], [4, 3]]));
    }

    #[test]
    fn csv_quotes_commas() {
        let csv = InvariantReport::to_csv(&[report("G(2,4)")]);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("group,order,cyc_size"));
        assert!(lines.next().unwrap().starts_with("\"G(2,4)\",16,"));
    }

    #[test]
    fn cyclic_group_errors() {
        let g = build(&GroupSpec::Cyclic(5)).unwrap();
        assert!(matches!(analyze(&g), Err(Error::GroupIsCyclic(_))));
    }
}
