//! Serialization of tables, graphs, regions and bound reports.
//!
//! Every emitter is a pure function of library values, and all orderings are
//! fixed (lexicographic by content or lattice point), so equal inputs give
//! byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds_general::{defect_realizable, region_points, sharp_n_with, FailingWeight, Reducibility};
use crate::crystal_graph::CrystalGraph;
use crate::e2_closed_form::E2Context;
use crate::error::Result;
use crate::membership::MaxRow;
use crate::root_system::{Content, HighestWeight, Hub};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (json, csv, dot, text)")),
        }
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(&row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Columns padded to a common width per column, `|`-separated.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|k| {
            rows.iter()
                .filter_map(|r| r.get(k))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(k, cell)| format!("{cell:<width$}", width = widths[k]))
            .collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct TableJson<'a> {
    e: usize,
    weight: &'a [i64],
    rows: &'a [MaxRow],
}

/// `max(Λ)` rows. Text output is transposed with one column per `m`.
pub fn format_table(lambda: &HighestWeight, rows: &[MaxRow], format: Format) -> String {
    match format {
        Format::Csv | Format::Dot => csv_string(
            &["m", "hub", "defect", "content", "degree"],
            rows.iter().map(|r| {
                vec![
                    r.m.to_string(),
                    r.hub.to_string(),
                    r.defect.to_string(),
                    r.content.to_string(),
                    r.degree.to_string(),
                ]
            }),
        ),
        Format::Json => json_string(&TableJson {
            e: lambda.e(),
            weight: lambda.coefficients(),
            rows,
        }),
        Format::Text => {
            let line = |label: &str, f: &dyn Fn(&MaxRow) -> String| {
                std::iter::once(label.to_string())
                    .chain(rows.iter().map(f))
                    .collect::<Vec<_>>()
            };
            grid(&[
                line("m", &|r| r.m.to_string()),
                line("Hub", &|r| r.hub.to_string()),
                line("Defect", &|r| r.defect.to_string()),
                line("Content", &|r| r.content.to_string()),
                line("Degree", &|r| r.degree.to_string()),
            ])
        }
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    e: usize,
    weight: &'a [i64],
    max_degree: i64,
    vertices: Vec<VertexJson<'a>>,
    edges: Vec<EdgeJson<'a>>,
}

#[derive(Serialize)]
struct VertexJson<'a> {
    content: &'a Content,
    hub: &'a Hub,
    defect: i64,
    degree: i64,
}

#[derive(Serialize)]
struct EdgeJson<'a> {
    from: &'a Content,
    to: Content,
    residue: usize,
}

fn node_id(c: &Content) -> String {
    let parts: Vec<String> = c.0.iter().map(i64::to_string).collect();
    format!("v{}", parts.join("_"))
}

pub fn format_graph(graph: &CrystalGraph, format: Format) -> String {
    let lambda = graph.lambda();
    match format {
        Format::Json => json_string(&GraphJson {
            e: lambda.e(),
            weight: lambda.coefficients(),
            max_degree: graph.max_degree(),
            vertices: graph
                .vertices()
                .map(|(c, v)| VertexJson {
                    content: c,
                    hub: &v.hub,
                    defect: v.defect,
                    degree: v.degree,
                })
                .collect(),
            edges: graph
                .edges()
                .map(|(c, i)| EdgeJson {
                    from: c,
                    to: c.shifted(*i, 1),
                    residue: *i,
                })
                .collect(),
        }),
        Format::Dot => {
            let mut out = String::new();
            out.push_str("digraph crystal {\n");
            let _ = writeln!(out, "  label=\"{lambda}, degree <= {}\";", graph.max_degree());
            out.push_str("  rankdir=TB;\n  node [shape=record, fontsize=10];\n");
            for (degree, _) in graph.degree_profile().iter().enumerate().filter(|(_, &n)| n > 0) {
                let ids: Vec<String> = graph
                    .vertices()
                    .filter(|(_, v)| v.degree == degree as i64)
                    .map(|(c, _)| node_id(c))
                    .collect();
                let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
            }
            for (c, v) in graph.vertices() {
                let _ = writeln!(out, "  {} [label=\"{}|{}|{}\"];", node_id(c), c, v.hub, v.defect);
            }
            for (c, i) in graph.edges() {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{i}\"];",
                    node_id(c),
                    node_id(&c.shifted(*i, 1))
                );
            }
            out.push_str("}\n");
            out
        }
        Format::Csv => csv_string(
            &["content", "hub", "defect", "degree"],
            graph.vertices().map(|(c, v)| {
                vec![
                    c.to_string(),
                    v.hub.to_string(),
                    v.defect.to_string(),
                    v.degree.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for (degree, count) in graph.degree_profile().iter().enumerate() {
                let _ = writeln!(out, "degree {degree}: {count} vertices");
                for (c, v) in graph.vertices().filter(|(_, v)| v.degree == degree as i64) {
                    let _ = writeln!(out, "  {c} hub {} defect {}", v.hub, v.defect);
                }
            }
            out
        }
    }
}

/// One row of the bound comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub d: i64,
    /// `q` and `N′(d)` exist only for two residues.
    pub q: Option<i64>,
    pub n: i64,
    pub n_prime: Option<i64>,
    /// No weight of this defect occurs at all.
    pub empty_stratum: bool,
    pub failing: usize,
    pub witness: Option<FailingWeight>,
    pub expected_n: Option<i64>,
    pub expected_n_prime: Option<i64>,
    /// One entry per disagreement with an expected value.
    pub notes: Vec<String>,
}

/// Reference values to compare against, aligned with the requested defects.
#[derive(Debug, Clone, Copy, Default)]
pub struct Expected<'a> {
    pub n: Option<&'a [i64]>,
    pub n_prime: Option<&'a [i64]>,
}

/// Sharp bounds (and, for `e = 2`, the closed-form estimate) per defect.
pub fn bounds_rows(
    lambda: &HighestWeight,
    defects: &[i64],
    expected: Expected<'_>,
    mode: Reducibility,
) -> Result<Vec<BoundsRow>> {
    let e2 = E2Context::from_weight(lambda).ok();
    defects
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            let bound = sharp_n_with(lambda, d, mode)?;
            let (q, n_prime) = match e2 {
                Some(ctx) => {
                    let (q, n) = ctx.n_prime(d);
                    (Some(q), Some(n))
                }
                None => (None, None),
            };
            let expected_n = expected.n.and_then(|x| x.get(k).copied());
            let expected_n_prime = expected.n_prime.and_then(|x| x.get(k).copied());
            let mut notes = Vec::new();
            if let Some(x) = expected_n.filter(|&x| x != bound.n) {
                notes.push(match &bound.witness {
                    Some(w) => format!(
                        "expected N({d}) = {x}, computed {}: non-reducing weight {} (hub {}, defect {d}) has degree {}",
                        bound.n, w.content, w.hub, w.degree
                    ),
                    None => format!("expected N({d}) = {x}, computed {}", bound.n),
                });
            }
            if let (Some(x), Some(n)) = (expected_n_prime, n_prime) {
                if x != n {
                    notes.push(format!("expected N'({d}) = {x}, formula gives {n}"));
                }
            }
            Ok(BoundsRow {
                d,
                q,
                n: bound.n,
                n_prime,
                empty_stratum: !defect_realizable(lambda, d)?,
                failing: bound.failing.len(),
                witness: bound.witness,
                expected_n,
                expected_n_prime,
                notes,
            })
        })
        .collect()
}

fn opt(x: Option<i64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn format_bounds(lambda: &HighestWeight, rows: &[BoundsRow], format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct BoundsJson<'a> {
                e: usize,
                weight: &'a [i64],
                rows: &'a [BoundsRow],
            }
            json_string(&BoundsJson {
                e: lambda.e(),
                weight: lambda.coefficients(),
                rows,
            })
        }
        Format::Csv | Format::Dot => csv_string(
            &[
                "d",
                "q",
                "N",
                "N_prime",
                "empty_stratum",
                "witness_content",
                "witness_hub",
                "witness_degree",
                "note",
            ],
            rows.iter().map(|r| {
                vec![
                    r.d.to_string(),
                    opt(r.q),
                    r.n.to_string(),
                    opt(r.n_prime),
                    r.empty_stratum.to_string(),
                    r.witness.as_ref().map_or(String::new(), |w| w.content.to_string()),
                    r.witness.as_ref().map_or(String::new(), |w| w.hub.to_string()),
                    r.witness.as_ref().map_or(String::new(), |w| w.degree.to_string()),
                    r.notes.join("; "),
                ]
            }),
        ),
        Format::Text => {
            let line = |label: &str, f: &dyn Fn(&BoundsRow) -> String| {
                std::iter::once(label.to_string())
                    .chain(rows.iter().map(f))
                    .collect::<Vec<_>>()
            };
            let mut out = grid(&[
                line("d", &|r| r.d.to_string()),
                line("q", &|r| opt(r.q)),
                line("N(d)", &|r| {
                    if r.empty_stratum {
                        "empty".into()
                    } else {
                        r.n.to_string()
                    }
                }),
                line("N'(d)", &|r| opt(r.n_prime)),
            ]);
            for r in rows {
                if let Some(w) = &r.witness {
                    let _ = writeln!(
                        out,
                        "d={}: witness {} hub {} degree {}",
                        r.d, w.content, w.hub, w.degree
                    );
                }
            }
            for r in rows {
                for note in &r.notes {
                    let _ = writeln!(out, "NOTE: {note}");
                }
            }
            out
        }
    }
}

/// Region points and box-shell soundness for one defect, as JSON.
pub fn format_region(lambda: &HighestWeight, d: i64) -> Result<String> {
    #[derive(Serialize)]
    struct RegionJson {
        e: usize,
        weight: Vec<i64>,
        #[serde(flatten)]
        region: crate::bounds_general::RegionReport,
        shell_leaks: Vec<crate::membership::LatticePoint>,
    }
    let region = region_points(lambda, d)?;
    let shell_leaks = crate::bounds_general::shell_leaks(lambda, &region);
    Ok(json_string(&RegionJson {
        e: lambda.e(),
        weight: lambda.coefficients().to_vec(),
        region,
        shell_leaks,
    }))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    json_string(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e2_closed_form::SVariant;

    #[test]
    fn example_table_text() {
        let ctx = E2Context::new(2, 1).unwrap();
        let rows = ctx.enumerate_max(-3, 3, SVariant::Corrected);
        let text = format_table(&ctx.highest_weight(), &rows, Format::Text);
        let expected = "\
m       | -3     | -2     | -1    | 0     | 1      | 2      | 3
Hub     | [-4,7] | [-2,5] | [0,3] | [2,1] | [4,-1] | [6,-3] | [8,-5]
Defect  | 0      | 0      | 1     | 0     | 0      | 1      | 0
Content | (4,1)  | (2,0)  | (1,0) | (0,0) | (0,1)  | (1,3)  | (2,5)
Degree  | 5      | 2      | 1     | 0     | 1      | 4      | 7
";
        assert_eq!(text, expected);
    }

    #[test]
    fn table_csv_quotes_vectors() {
        let ctx = E2Context::new(2, 1).unwrap();
        let rows = ctx.enumerate_max(-1, 0, SVariant::Corrected);
        let csv = format_table(&ctx.highest_weight(), &rows, Format::Csv);
        assert_eq!(
            csv,
            "m,hub,defect,content,degree\n-1,\"[0,3]\",1,\"(1,0)\",1\n0,\"[2,1]\",0,\"(0,0)\",0\n"
        );
    }

    #[test]
    fn graph_json_shape() {
        let l = HighestWeight::new(vec![2, 1]).unwrap();
        let g = CrystalGraph::enumerate(&l, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&format_graph(&g, Format::Json)).unwrap();
        assert_eq!(v["e"], 2);
        assert_eq!(v["weight"], serde_json::json!([2, 1]));
        assert_eq!(
            v["vertices"][0],
            serde_json::json!({"content": [0, 0], "hub": [2, 1], "defect": 0, "degree": 0})
        );
        assert_eq!(
            v["edges"][0],
            serde_json::json!({"from": [0, 0], "to": [1, 0], "residue": 0})
        );
        assert_eq!(v["edges"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn graph_dot_ranks() {
        let l = HighestWeight::new(vec![2, 1]).unwrap();
        let g = CrystalGraph::enumerate(&l, 1).unwrap();
        let dot = format_graph(&g, Format::Dot);
        assert!(dot.contains("{ rank=same; v0_0; }"));
        assert!(dot.contains("{ rank=same; v0_1; v1_0; }"));
        assert!(dot.contains("v0_0 [label=\"(0,0)|[2,1]|0\"];"));
        assert!(dot.contains("v0_0 -> v1_0 [label=\"0\"];"));
    }

    #[test]
    fn bounds_note_on_mismatch() {
        let l = HighestWeight::new(vec![2, 1]).unwrap();
        let expected = Expected {
            n: Some(&[22, 25, 0]),
            n_prime: Some(&[32, 38, 10]),
        };
        let rows = bounds_rows(&l, &[9, 10, 2], expected, Reducibility::NegativeComponent).unwrap();
        assert!(rows[0].notes.is_empty());
        assert_eq!(rows[1].notes.len(), 2);
        assert_eq!(rows[1].notes[1], "expected N'(10) = 38, formula gives 32");
        let note = &rows[1].notes[0];
        assert!(note.contains("computed 26"), "{note}");
        assert!(note.contains("hub [12,-9]"), "{note}");
        assert!(rows[2].empty_stratum);
        assert_eq!(rows[1].q, Some(2));
        assert_eq!(rows[1].n_prime, Some(32));
    }
}
