//! Graph files, the small-multigraph atlas, and report serialization.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, lemma5_witness, ncstar_compact, FTClassification, Lemma5Witness};
use crate::cut::block_cut_tree;
use crate::error::{Error, Result};
use crate::graph::{build_graph, canonical_edge_list, smooth, TopoGraph};
use crate::hyperspace::{oracle_verdict, noncompactness_certificate, HyperspaceGraph, NoncompactnessCertificate};
use crate::path::{NCPath, PathReport};

/// Largest edge count the atlas accepts.
pub const ATLAS_MAX_EDGES: usize = 5;

/// Reads whitespace-separated endpoint pairs, one edge per line. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_graph_text(text: &str) -> Result<TopoGraph> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::ParseError {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(format!("expected two vertex ids, found {line:?}")));
        }
        let id = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| bad(format!("{s:?} is not a vertex id")))
        };
        edges.push((id(fields[0])?, id(fields[1])?));
    }
    build_graph(&edges)
}

pub fn parse_graph_file(path: &Path) -> Result<TopoGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph_text(&text)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtlasEntry {
    pub edges: Vec<(usize, usize)>,
    pub classification: FTClassification,
    /// `(k, connected)` per subdivision factor.
    pub oracle: Vec<(usize, bool)>,
    pub compact: bool,
    /// Certificate found at the first requested subdivision factor.
    pub certificate: bool,
    /// Oracle disagrees with the classifier, or the certificate with
    /// compactness.
    pub disagreement: bool,
    #[serde(skip)]
    pub elapsed_micros: u128,
}

/// Connected multigraphs with `1..=max_edges` edges, one canonical edge
/// list per isomorphism class, grouped by edge count.
pub fn atlas_graphs(max_edges: usize) -> Vec<Vec<(usize, usize)>> {
    let mut all = Vec::new();
    let mut layer: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for m in 1..=max_edges {
        let mut next = BTreeSet::new();
        if m == 1 {
            next.insert(vec![(0, 1)]);
            next.insert(vec![(0, 0)]);
        }
        for base in &layer {
            let n = base.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
            for u in 0..n {
                for v in u..=n {
                    let mut edges = base.clone();
                    edges.push((u, v));
                    let g = build_graph(&edges).expect("extension stays connected");
                    next.insert(canonical_edge_list(&g));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn atlas_entry(edges: Vec<(usize, usize)>, ks: &[usize]) -> Result<AtlasEntry> {
    let start = Instant::now();
    let g = build_graph(&edges)?;
    let classification = classify(&g);
    let oracle = ks
        .iter()
        .map(|&k| oracle_verdict(&g, k).map(|b| (k, b)))
        .collect::<Result<Vec<_>>>()?;
    let compact = ncstar_compact(&g);
    let certificate = match ks.first() {
        Some(&k) => noncompactness_certificate(&g, k)?.is_some(),
        None => !compact,
    };
    let ft = classification.verdict.is_ft();
    let disagreement = oracle.iter().any(|&(_, b)| b != ft) || certificate == compact;
    Ok(AtlasEntry {
        edges,
        classification,
        oracle,
        compact,
        certificate,
        disagreement,
        elapsed_micros: start.elapsed().as_micros(),
    })
}

/// Classifies, runs the oracle at every `k`, and searches for a certificate
/// for every atlas graph. Entries come back in canonical order.
pub fn atlas_run(max_edges: usize, ks: &[usize]) -> Result<Vec<AtlasEntry>> {
    if max_edges > ATLAS_MAX_EDGES {
        return Err(Error::BudgetExceeded(format!(
            "atlas of {max_edges} edges, limit {ATLAS_MAX_EDGES}"
        )));
    }
    atlas_graphs(max_edges)
        .into_par_iter()
        .map(|edges| atlas_entry(edges, ks))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Everything the command line can print.
#[derive(Clone, Debug)]
pub enum Report {
    Classification {
        graph: TopoGraph,
        classification: FTClassification,
        witness: Option<Lemma5Witness>,
    },
    Oracle {
        k: usize,
        hyperspace: HyperspaceGraph,
        classifier_connected: bool,
    },
    Path {
        path: NCPath,
        verification: PathReport,
    },
    Certificate {
        k: usize,
        compact: bool,
        certificate: Option<NoncompactnessCertificate>,
    },
    Atlas(Vec<AtlasEntry>),
}

impl Report {
    /// Whether the report records a disagreement with the theory.
    pub fn disagreement(&self) -> bool {
        match self {
            Report::Classification { .. } => false,
            Report::Oracle {
                hyperspace,
                classifier_connected,
                ..
            } => hyperspace.is_connected() != *classifier_connected,
            Report::Path { verification, .. } => !verification.is_ok(),
            Report::Certificate {
                compact, certificate, ..
            } => certificate.is_some() == *compact,
            Report::Atlas(entries) => entries.iter().any(|e| e.disagreement),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Report::Classification {
                classification,
                witness,
                ..
            } => classification.to_json(witness.as_ref()),
            Report::Oracle {
                k,
                hyperspace,
                classifier_connected,
            } => json!({
                "k": k,
                "connected": hyperspace.is_connected(),
                "classifier_connected": classifier_connected,
                "component_count": hyperspace.component_count(),
                "hyperspace": hyperspace.to_json(),
            }),
            Report::Path { path, verification } => json!({
                "path": path.to_json(),
                "verification": verification,
            }),
            Report::Certificate {
                k,
                compact,
                certificate,
            } => json!({
                "k": k,
                "compact": compact,
                "certificate": certificate.as_ref().map(|c| c.to_json()),
            }),
            Report::Atlas(entries) => json!(entries),
        }
    }

    fn to_dot(&self) -> Result<String> {
        match self {
            Report::Classification { graph, .. } => Ok(block_cut_tree(&smooth(graph)).to_dot()),
            Report::Oracle { hyperspace, .. } => Ok(hyperspace.to_dot()),
            Report::Path { path, .. } => Ok(path.to_dot(None)),
            Report::Certificate { .. } => Err(Error::UnsupportedFormat("dot for certificates".into())),
            Report::Atlas(_) => Err(Error::UnsupportedFormat("dot for atlas runs".into())),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Classification {
                classification,
                witness,
                ..
            } => {
                let v = classification.verdict;
                let _ = writeln!(out, "verdict: {}", v.name());
                if let Some(f) = v.form() {
                    let _ = writeln!(out, "form: {f}");
                }
                if let crate::classify::Verdict::NotFT(r) = v {
                    let _ = writeln!(out, "reason: {r:?}");
                }
                if let Some(d) = &classification.decomposition {
                    let _ = writeln!(out, "K: {:?}  M: {:?}  arc: {:?}", d.k_edges, d.m_edges, d.arc_edges);
                }
                if let Some(w) = witness {
                    let _ = writeln!(out, "witness: {:?} with {} components", w.p, w.component_representatives.len());
                }
            }
            Report::Oracle {
                k,
                hyperspace,
                classifier_connected,
            } => {
                let _ = writeln!(out, "k: {k}");
                let _ = writeln!(out, "nodes: {}", hyperspace.nodes.len());
                let _ = writeln!(out, "components: {}", hyperspace.component_count());
                let _ = writeln!(out, "oracle connected: {}", hyperspace.is_connected());
                let _ = writeln!(out, "classifier connected: {classifier_connected}");
            }
            Report::Path { path, verification } => {
                for (i, s) in path.keyframes.iter().enumerate() {
                    let label = if i == 0 {
                        "start".to_string()
                    } else {
                        format!("{:?}", path.stage_labels[i - 1])
                    };
                    let _ = writeln!(out, "{i:>3} {label:<28} {s}");
                }
                match verification.violation {
                    None => out.push_str("verified\n"),
                    Some((i, v)) => {
                        let _ = writeln!(out, "violation at {i}: {v:?}");
                    }
                }
            }
            Report::Certificate {
                k,
                compact,
                certificate,
            } => {
                let _ = writeln!(out, "k: {k}  compact: {compact}");
                match certificate {
                    Some(c) => {
                        let _ = writeln!(out, "base: {}  pivot: {}  approach: {:?}", c.base, c.pivot, c.approach_edges);
                    }
                    None => out.push_str("no certificate\n"),
                }
            }
            Report::Atlas(entries) => {
                for e in entries {
                    let oracle: Vec<String> = e.oracle.iter().map(|(k, b)| format!("k{k}={b}")).collect();
                    let _ = writeln!(
                        out,
                        "{:<40} {:<22} {} cert={}{}",
                        format!("{:?}", e.edges),
                        e.classification.verdict.name(),
                        oracle.join(" "),
                        e.certificate,
                        if e.disagreement { "  DISAGREEMENT" } else { "" }
                    );
                }
            }
        }
        out
    }
}

/// Deterministic serialization of a report.
pub fn export(report: &Report, format: Format) -> Result<Vec<u8>> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Dot => report.to_dot()?,
        Format::Text => report.to_text(),
    };
    Ok(text.into_bytes())
}

pub fn classification_report(g: &TopoGraph) -> Report {
    Report::Classification {
        graph: g.clone(),
        classification: classify(g),
        witness: lemma5_witness(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::is_isomorphic;
    use crate::hyperspace::{enumerate_ncstar, hyperspace_components};

    #[test]
    fn parse_examples() {
        assert_eq!(parse_graph_text("0 1\n").unwrap(), arc1());
        assert_eq!(parse_graph_text("0 0\n# comment\n").unwrap(), single_loop());
        assert_eq!(
            parse_graph_text("0 1\nx y\n").unwrap_err(),
            Error::ParseError {
                line: 2,
                message: "\"x\" is not a vertex id".into()
            }
        );
        assert_eq!(parse_graph_text("# nothing\n"), Err(Error::EmptyGraph));
    }

    #[test]
    fn parse_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("g.txt");
        std::fs::write(&f, "0 1\n1 2\n").unwrap();
        assert_eq!(parse_graph_file(&f).unwrap(), path(3));
        assert!(matches!(parse_graph_file(&dir.path().join("none")), Err(Error::Io(_))));
    }

    #[test]
    fn atlas_one_edge() {
        let entries = atlas_run(1, &[2]).unwrap();
        assert_eq!(entries.len(), 2);
        assert!(entries.iter().all(|e| e.compact && !e.certificate && !e.disagreement));
        assert_eq!(entries[0].edges, vec![(0, 0)]);
        assert_eq!(entries[1].edges, vec![(0, 1)]);
    }

    #[test]
    fn atlas_has_triod_and_no_duplicates() {
        let graphs = atlas_graphs(3);
        for (i, a) in graphs.iter().enumerate() {
            for b in &graphs[i + 1..] {
                let (ga, gb) = (build_graph(a).unwrap(), build_graph(b).unwrap());
                assert!(!is_isomorphic(&ga, &gb));
            }
        }
        let entries = atlas_run(3, &[2]).unwrap();
        let triod_entry = entries
            .iter()
            .find(|e| is_isomorphic(&build_graph(&e.edges).unwrap(), &triod()))
            .unwrap();
        assert!(!triod_entry.classification.verdict.is_ft());
        assert_eq!(triod_entry.oracle, vec![(2, false)]);
    }

    #[test]
    fn atlas_counts_are_monotone() {
        let counts: Vec<usize> = (1..=4).map(|m| atlas_graphs(m).len()).collect();
        assert!(counts.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(atlas_run(6, &[2]), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn formats() {
        assert_eq!("xml".parse::<Format>(), Err(Error::UnsupportedFormat("xml".into())));
        let json = export(&classification_report(&dumbbell()), Format::Json).unwrap();
        assert!(String::from_utf8(json).unwrap().contains("TwoTanglesJoinedByArc"));
        let t = triod();
        let h = hyperspace_components(&t, enumerate_ncstar(&t).unwrap());
        let dot = export(
            &Report::Oracle {
                k: 1,
                hyperspace: h,
                classifier_connected: false,
            },
            Format::Dot,
        )
        .unwrap();
        let dot = String::from_utf8(dot).unwrap();
        assert_eq!(dot.matches("fillcolor").count(), 7);
        let colours: BTreeSet<&str> = dot
            .lines()
            .filter_map(|l| l.split("fillcolor=").nth(1))
            .map(|r| r.split(',').next().unwrap())
            .collect();
        assert_eq!(colours.len(), 4);
    }

    #[test]
    fn export_is_deterministic() {
        let r = Report::Atlas(atlas_run(2, &[2]).unwrap());
        let again = Report::Atlas(atlas_run(2, &[2]).unwrap());
        assert_eq!(export(&r, Format::Json).unwrap(), export(&again, Format::Json).unwrap());
        assert_eq!(export(&r, Format::Text).unwrap(), export(&again, Format::Text).unwrap());
    }
}
