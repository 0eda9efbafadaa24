use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{Figure, Point};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// All connected figures in `Z^d` with exactly `k` unit edges, up to
/// translation, sorted.
///
/// Grown one edge at a time from the `k - 1` edge figures: every connected
/// edge set has an edge whose removal leaves a connected edge set (a leaf edge
/// of a tree, or any edge on a cycle), so the growth reaches everything.
pub fn enumerate_connected_edge_figures(
    d: usize,
    k: usize,
    limits: &Limits,
) -> Result<Vec<Figure>> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "dimension and edge count must be positive (d={d}, k={k})"
        )));
    }
    Limits::check("figure edge count", k, limits.max_figure_edges)?;
    let mut level: Vec<Figure> = (0..d).map(|axis| Figure::domino(d, axis)).collect();
    level.sort();
    for _ in 1..k {
        let mut next: Vec<Figure> = level.par_iter().flat_map_iter(|f| grow(f, d)).collect();
        next.par_sort_unstable();
        next.dedup();
        level = next;
    }
    Ok(level)
}

fn grow(f: &Figure, d: usize) -> Vec<Figure> {
    let present: BTreeSet<&(Point, Point)> = f.edges().iter().collect();
    let mut out = Vec::new();
    for v in f.vertices() {
        for axis in 0..d {
            for step in [-1, 1] {
                let mut w = v.clone();
                w.0[axis] += step;
                let e = if *v <= w {
                    (v.clone(), w)
                } else {
                    (w, v.clone())
                };
                if present.contains(&e) {
                    continue;
                }
                let mut edges = f.edges().to_vec();
                edges.push(e);
                out.push(Figure::from_edges(edges).expect("grown edges stay unit edges"));
            }
        }
    }
    out
}
