//! The JSON figure-set format.
//!
//! ```json
//! { "dim": 2,
//!   "figures": [ { "vertices": [[0,0],[1,0]], "edges": [[0,1]],
//!                  "multiplicity": 1, "weight": 1 } ] }
//! ```
//!
//! `edges` index into `vertices`; when omitted every pair of listed vertices
//! at distance one is joined. `multiplicity` defaults to 1 and `weight` to the
//! edge count.

use serde::{Deserialize, Serialize};

use super::{auto_edges, Figure, FigureMultiset, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FigureSetFile {
    pub dim: usize,
    pub figures: Vec<FigureRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FigureRecord {
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
}

/// A parsed figure set: canonical figures with multiplicity and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureSet {
    pub dim: usize,
    pub entries: Vec<FigureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureEntry {
    pub figure: Figure,
    pub multiplicity: usize,
    pub weight: u64,
}

impl FigureSet {
    pub fn from_json(text: &str) -> Result<FigureSet> {
        let file: FigureSetFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        FigureSet::from_file(file)
    }

    pub fn from_file(file: FigureSetFile) -> Result<FigureSet> {
        if file.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let entries = file
            .figures
            .into_iter()
            .enumerate()
            .map(|(i, rec)| {
                record_to_entry(file.dim, rec)
                    .map_err(|e| Error::Parse(format!("figure #{i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FigureSet {
            dim: file.dim,
            entries,
        })
    }

    /// One record per entry, edges listed explicitly.
    pub fn to_file(&self) -> FigureSetFile {
        let figures = self
            .entries
            .iter()
            .map(|e| {
                let vertices: Vec<Vec<i64>> =
                    e.figure.vertices().iter().map(|p| p.0.clone()).collect();
                let idx = |p: &Point| {
                    e.figure
                        .vertices()
                        .binary_search(p)
                        .expect("edge endpoint is a vertex")
                };
                let edges = e
                    .figure
                    .edges()
                    .iter()
                    .map(|(a, b)| [idx(a), idx(b)])
                    .collect();
                FigureRecord {
                    vertices,
                    edges: Some(edges),
                    multiplicity: (e.multiplicity != 1).then_some(e.multiplicity),
                    weight: (e.weight != e.figure.edge_count() as u64).then_some(e.weight),
                }
            })
            .collect();
        FigureSetFile {
            dim: self.dim,
            figures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("figure sets always serialize")
    }

    pub fn to_multiset(&self) -> Result<FigureMultiset> {
        FigureMultiset::new(
            self.entries
                .iter()
                .map(|e| (e.figure.clone(), e.multiplicity)),
        )
    }
}

fn record_to_entry(dim: usize, rec: FigureRecord) -> Result<FigureEntry> {
    if rec.vertices.is_empty() {
        return Err(Error::InvalidFigure("no vertices".into()));
    }
    let vertices: Vec<Point> = rec.vertices.into_iter().map(Point).collect();
    if let Some(p) = vertices.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: p.dim(),
        });
    }
    let edges = match rec.edges {
        None => auto_edges(&vertices),
        Some(pairs) => pairs
            .into_iter()
            .map(|[i, j]| {
                let get = |k: usize| {
                    vertices
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::InvalidFigure(format!("edge index {k} out of range")))
                };
                Ok((get(i)?, get(j)?))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let figure = Figure::canonicalize(vertices, edges)?;
    let multiplicity = rec.multiplicity.unwrap_or(1);
    if multiplicity == 0 {
        return Err(Error::InvalidFigure(
            "multiplicity must be at least 1".into(),
        ));
    }
    let weight = rec.weight.unwrap_or(figure.edge_count() as u64);
    Ok(FigureEntry {
        figure,
        multiplicity,
        weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_defaults_and_auto_edges() {
        let set = FigureSet::from_json(
            r#"{"dim":2,"figures":[
                {"vertices":[[3,4],[4,4]]},
                {"vertices":[[0,0],[0,1]],"multiplicity":2,"weight":5},
                {"vertices":[[0,0],[1,0],[1,1],[0,1]],"edges":[[0,1],[1,2]]}
            ]}"#,
        )
        .unwrap();
        assert_eq!(set.entries[0].figure, Figure::domino(2, 0));
        assert_eq!(set.entries[0].weight, 1);
        assert_eq!(set.entries[1].multiplicity, 2);
        assert_eq!(set.entries[1].weight, 5);
        assert_eq!(set.entries[2].figure.edge_count(), 2);
        assert_eq!(set.entries[2].figure.size(), 4);
        assert_eq!(set.to_multiset().unwrap().len(), 4);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"dim":2,"figures":[{"vertices":[]}]}"#,
            r#"{"dim":2,"figures":[{"vertices":[[0,0,0]]}]}"#,
            r#"{"dim":2,"figures":[{"vertices":[[0,0],[1,1]],"edges":[[0,1]]}]}"#,
            r#"{"dim":2,"figures":[{"vertices":[[0,0]],"edges":[[0,3]]}]}"#,
            r#"{"dim":2,"figures":[{"vertices":[[0,0]],"multiplicity":0}]}"#,
            r#"{"dim":0,"figures":[]}"#,
            r#"{"dim":2,"figures":[{"vertices":[[0,0]],"colour":1}]}"#,
            r#"not json"#,
        ] {
            assert!(FigureSet::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_round_trip() {
        let set = FigureSet::from_json(
            r#"{"dim":2,"figures":[{"vertices":[[0,0],[1,0],[1,1]]},{"vertices":[[0,0],[0,1]],"multiplicity":3,"weight":2}]}"#,
        )
        .unwrap();
        assert_eq!(FigureSet::from_json(&set.to_json()).unwrap(), set);
    }
}
