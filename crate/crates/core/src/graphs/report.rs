use std::collections::HashMap;
use std::fmt::Write;

use serde_json::json;

use super::Graph;
use crate::labelling::Labelling;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Dot,
    Json,
}

/// Node names: the rendered label, or the vertex index when unlabelled.
/// Repeated labels (relaxed labellings) get a `#vertex` suffix.
fn node_names(g: &Graph, lab: Option<&Labelling>) -> Vec<String> {
    let Some(lab) = lab else {
        return (0..g.order()).map(|v| v.to_string()).collect();
    };
    let rendered: Vec<String> = lab.labels().iter().map(|l| lab.spec().render(l)).collect();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in &rendered {
        *counts.entry(r).or_default() += 1;
    }
    rendered
        .iter()
        .enumerate()
        .map(|(v, r)| if counts[r.as_str()] > 1 { format!("{r}#{v}") } else { r.clone() })
        .collect()
}

/// Renders `g` (optionally labelled) as Graphviz DOT or as JSON
/// `{n, edges, magma, labels}`.
///
/// Panics if the labelling does not cover exactly the vertices of `g`.
pub fn emit_report(g: &Graph, lab: Option<&Labelling>, format: ReportFormat) -> String {
    if let Some(lab) = lab {
        assert_eq!(lab.len(), g.order(), "labelling must cover every vertex");
    }
    match format {
        ReportFormat::Dot => {
            let names = node_names(g, lab);
            let mut out = String::from("graph G {\n");
            for name in &names {
                writeln!(out, "  \"{name}\";").unwrap();
            }
            for (i, j) in g.edges() {
                writeln!(out, "  \"{}\" -- \"{}\";", names[i], names[j]).unwrap();
            }
            out.push_str("}\n");
            out
        }
        ReportFormat::Json => {
            let edges: Vec<[usize; 2]> = g.edges().map(|(i, j)| [i, j]).collect();
            let value = json!({
                "n": g.order(),
                "edges": edges,
                "magma": lab.map(|l| serde_json::to_value(l.spec()).unwrap()),
                "labels": lab.map(|l| l.labels().iter().map(|e| l.spec().element_to_json(e)).collect::<Vec<_>>()),
            });
            serde_json::to_string_pretty(&value).unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_family, FamilySpec};
    use crate::magmas::MagmaSpec;
    use proptest::prelude::*;

    // Minimal DOT reader for the subset emitted above: quoted node statements
    // followed by quoted `a -- b` edge statements.
    fn parse_dot(text: &str) -> (Vec<String>, Vec<(usize, usize)>) {
        let mut names = Vec::new();
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim) {
            let Some(stmt) = line.strip_suffix(';') else { continue };
            let quoted: Vec<&str> = stmt.split('"').skip(1).step_by(2).collect();
            match quoted.as_slice() {
                [a] => names.push(a.to_string()),
                [a, b] => {
                    let pos = |s: &str| names.iter().position(|n| n == s).unwrap();
                    let (i, j) = (pos(a), pos(b));
                    edges.push((i.min(j), i.max(j)));
                }
                _ => panic!("unexpected DOT statement {line}"),
            }
        }
        edges.sort_unstable();
        (names, edges)
    }

    #[test]
    fn labelled_k2() {
        let g = build_family(&FamilySpec::Complete(2)).unwrap();
        let lab = Labelling::integers(&[0, 5]).unwrap();
        let dot = emit_report(&g, Some(&lab), ReportFormat::Dot);
        let (names, edges) = parse_dot(&dot);
        assert_eq!(names, vec!["0", "5"]);
        assert_eq!(edges, vec![(0, 1)]);
    }

    #[test]
    fn json_for_cycle() {
        let g = build_family(&FamilySpec::Cycle(4)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_report(&g, None, ReportFormat::Json)).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 4);
        assert_eq!(v["n"], 4);
        assert!(v["labels"].is_null());
    }

    #[test]
    fn repeated_labels_get_distinct_nodes() {
        let lab = Labelling::new(MagmaSpec::mod_add(9), [1, 4, 7, 6, 6, 6].map(crate::MagmaElement::Residue).to_vec(), true)
            .unwrap();
        let g = crate::labelling::induced_graph(&lab);
        let (names, edges) = parse_dot(&emit_report(&g, Some(&lab), ReportFormat::Dot));
        assert_eq!(names[3], "6#3");
        assert_eq!(edges, g.edges().collect::<Vec<_>>());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |es| Graph::from_edges(n, es))
        })
    }

    proptest! {
        #[test]
        fn both_formats_preserve_edges(g in arb_graph(), offset in -50i64..50) {
            let labels: Vec<i64> = (0..g.order() as i64).map(|v| 3 * v + offset).collect();
            let lab = Labelling::integers(&labels).unwrap();
            let want: Vec<(usize, usize)> = g.edges().collect();
            for l in [None, Some(&lab)] {
                let (_, edges) = parse_dot(&emit_report(&g, l, ReportFormat::Dot));
                prop_assert_eq!(&edges, &want);
                let v: serde_json::Value = serde_json::from_str(&emit_report(&g, l, ReportFormat::Json)).unwrap();
                let back: Vec<(usize, usize)> = serde_json::from_value(v["edges"].clone()).unwrap();
                prop_assert_eq!(&back, &want);
            }
        }
    }
}
