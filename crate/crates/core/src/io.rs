//! Text formats: edge-list tree files, coloring files, DOT, and report
//! serialization (JSON, CSV).
//!
//! Tree file: a `n <count>` line, then one `<tail> <head>` line per arc.
//! Coloring file: one `<vertex> <color>` line per vertex, colors from 1.
//! Lines starting with `#` and blank lines are ignored by both readers.

use std::fmt::Write as _;

use serde_json::Value;

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{OrientedTree, Vertex};
use crate::harness::ExperimentReport;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#'))
            .then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn parse_num(line: usize, field: &str) -> Result<usize> {
    field.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, found {field:?}"),
    })
}

pub fn parse_tree_file(text: &str) -> Result<OrientedTree> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n <count>` header".into(),
    })?;
    let n = match header.as_slice() {
        ["n", count] => parse_num(line, count)?,
        _ => {
            return Err(Error::Parse {
                line,
                msg: "expected `n <count>`".into(),
            })
        }
    };
    let mut arcs = Vec::new();
    for (line, fields) in lines {
        match fields.as_slice() {
            [tail, head] => arcs.push((parse_num(line, tail)?, parse_num(line, head)?)),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: "expected `<tail> <head>`".into(),
                })
            }
        }
    }
    OrientedTree::new(n, arcs)
}

pub fn write_tree_file(t: &OrientedTree) -> String {
    let mut out = format!("n {}\n", t.n());
    for &(a, b) in t.arcs() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

/// Raw colors by vertex. Every vertex must appear exactly once.
pub fn parse_coloring_file(text: &str, n: usize) -> Result<Vec<Color>> {
    let mut colors: Vec<Option<Color>> = vec![None; n];
    for (line, fields) in content_lines(text) {
        let [v, c] = fields.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: "expected `<vertex> <color>`".into(),
            });
        };
        let v: Vertex = parse_num(line, v)?;
        let c = parse_num(line, c)?;
        if v >= n {
            return Err(Error::BadVertexId { vertex: v, n });
        }
        if c == 0 || c > Color::MAX as usize {
            return Err(Error::Parse {
                line,
                msg: format!("color {c} out of range, colors start at 1"),
            });
        }
        if colors[v].replace(c as Color).is_some() {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {v} colored twice"),
            });
        }
    }
    let found = colors.iter().filter(|c| c.is_some()).count();
    if found != n {
        return Err(Error::SizeMismatch { expected: n, found });
    }
    Ok(colors.into_iter().map(Option::unwrap).collect())
}

pub fn write_coloring_file(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, color) in c.as_slice().iter().enumerate() {
        writeln!(out, "{v} {color}").unwrap();
    }
    out
}

/// Graphviz digraph; with a coloring, each vertex label is its color.
pub fn to_dot(t: &OrientedTree, coloring: Option<&Coloring>) -> String {
    let mut out = String::from("digraph tree {\n");
    for v in 0..t.n() {
        match coloring {
            Some(c) => writeln!(out, "  {v} [label=\"{}\"];", c.color(v)).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for &(a, b) in t.arcs() {
        writeln!(out, "  {a} -> {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn report_to_json(report: &ExperimentReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn report_from_json(text: &str) -> Result<ExperimentReport> {
    Ok(serde_json::from_str(text)?)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One row per record with the record's fields as columns (nested values
/// as compact JSON), then the summary as trailing `#` comment lines.
pub fn report_to_csv(report: &ExperimentReport) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Option<Vec<String>> = None;
    for record in &report.records {
        let Value::Object(fields) = serde_json::to_value(record)? else {
            unreachable!("records serialize as objects")
        };
        let keys: Vec<String> = fields.keys().cloned().collect();
        match &header {
            None => {
                writer.write_record(&keys)?;
                header = Some(keys);
            }
            Some(h) if *h != keys => {
                return Err(Error::SpecInvalid(
                    "records of mixed kinds cannot share a CSV header".into(),
                ))
            }
            Some(_) => {}
        }
        writer.write_record(fields.values().map(cell))?;
    }
    let mut out = String::from_utf8(writer.into_inner().map_err(|e| e.into_error())?)
        .expect("csv output is UTF-8");
    let summary = serde_json::to_value(&report.summary)?;
    writeln!(out, "# campaign: {}", report.campaign).unwrap();
    writeln!(out, "# params: {}", report.params).unwrap();
    if let Value::Object(fields) = summary {
        for (key, value) in fields {
            writeln!(out, "# {key}: {value}").unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{check_star_proposition, CampaignOptions};

    #[test]
    fn tree_file_round_trip() {
        let t: OrientedTree = "4:0-1,2-1,1-3".parse().unwrap();
        let text = write_tree_file(&t);
        assert_eq!(text, "n 4\n0 1\n1 3\n2 1\n");
        assert_eq!(parse_tree_file(&text).unwrap(), t);
        let commented = "# a tree\n\nn 4\n# arcs\n0 1\n2 1\n1 3\n";
        assert_eq!(parse_tree_file(commented).unwrap(), t);
    }

    #[test]
    fn tree_file_errors() {
        assert!(matches!(parse_tree_file(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_tree_file("n x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_tree_file("n 2\n0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_tree_file("n 3\n0 1\n"),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(parse_tree_file("n 1\n"), Ok(t) if t.n() == 1));
    }

    #[test]
    fn coloring_file_round_trip() {
        let c = Coloring::from_assignment(&[1, 2, 1]);
        let text = write_coloring_file(&c);
        assert_eq!(text, "0 1\n1 2\n2 1\n");
        assert_eq!(parse_coloring_file(&text, 3).unwrap(), vec![1, 2, 1]);
        assert!(matches!(
            parse_coloring_file("0 0\n", 1),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_coloring_file("0 1\n", 2),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            parse_coloring_file("0 1\n0 1\n", 2),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_coloring_file("5 1\n", 2),
            Err(Error::BadVertexId { .. })
        ));
    }

    #[test]
    fn dot_labels() {
        let t: OrientedTree = "2:0-1".parse().unwrap();
        let c = Coloring::from_assignment(&[1, 2]);
        assert_eq!(
            to_dot(&t, Some(&c)),
            "digraph tree {\n  0 [label=\"1\"];\n  1 [label=\"2\"];\n  0 -> 1;\n}\n"
        );
    }

    #[test]
    fn report_formats() {
        let report = check_star_proposition(2, &CampaignOptions::default()).unwrap();
        let json = report_to_json(&report).unwrap();
        assert_eq!(report_from_json(&json).unwrap(), report);
        let csv = report_to_csv(&report).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "kind,id,m,mask,instance,chi,formula,uniform"
        );
        assert_eq!(lines.next().unwrap(), "star,0,1,0,2:0-1,2,2,true");
        assert!(csv.contains("# holds_at_this_scale: true"));
    }
}
