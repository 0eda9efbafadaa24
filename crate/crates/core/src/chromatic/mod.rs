//! Chromatic polynomial coefficients of toroidal grid graphs.
//!
//! By Whitney's theorem the coefficient of `x^{|V|-k}` in the chromatic
//! polynomial of `T^d_n` is `(-1)^k` times the number of `k`-edge subsets
//! containing no broken circuit. Under the natural edge order that count is a
//! placement count of locally good figures, so it is `p_k(N)` for the catalog
//! of locally good connected figures weighted by edge count.

mod delcon;
mod order;
mod whitney;

use std::fmt;

use crate::algebra::Poly;
use crate::counting::{p_sequence_via_multisets, SequenceTable};
use crate::error::{Error, Result};
use crate::figures::{auto_edges, enumerate_connected_edge_figures, Figure, Modulus, Point};
use crate::limits::Limits;
use crate::schema::{first_difference, q_sequence_via_schema, Catalog};

pub use delcon::chromatic_poly_small;
pub use order::{edge_compare, EdgeKey, LatticeEdge, NaturalEdgeOrder};
pub use whitney::{
    brute_bc_free_count, brute_bc_free_count_in, classify_cyclefree_subsets, GoodnessCounts,
    TorusGraph,
};

/// Local goodness (in `Z^d`) and global goodness (in `T^d_n`) of an edge set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GoodnessClass {
    GG,
    GB,
    BG,
    BB,
}

impl fmt::Display for GoodnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GoodnessClass::GG => "GG",
            GoodnessClass::GB => "GB",
            GoodnessClass::BG => "BG",
            GoodnessClass::BB => "BB",
        };
        f.write_str(s)
    }
}

/// Whether a figure of `Z^d` is free of broken circuits under the natural
/// order: no lattice edge between two of its vertices has its endpoints
/// already joined by figure edges smaller than it.
pub fn is_locally_good(f: &Figure) -> bool {
    if f.edge_count() < 2 {
        return true;
    }
    let order = NaturalEdgeOrder::new(f.dim(), Modulus::Infinite);
    let index = |p: &Point| {
        f.vertices()
            .binary_search(p)
            .expect("edge endpoint is a vertex")
    };
    let edge_key = |a: &Point, b: &Point| {
        let e = LatticeEdge::from_endpoints(a, b, Modulus::Infinite).expect("unit edge");
        order.key(&e)
    };
    let own: std::collections::HashSet<(usize, usize)> = f
        .edges()
        .iter()
        .map(|(a, b)| (index(a), index(b)))
        .collect();
    let mut candidates: Vec<_> = auto_edges(f.vertices())
        .iter()
        .map(|(a, b)| {
            let (u, v) = (index(a), index(b));
            (
                edge_key(a, b),
                u,
                v,
                own.contains(&(u, v)) || own.contains(&(v, u)),
            )
        })
        .collect();
    !whitney::contains_broken_circuit(f.size(), &mut candidates)
}

/// Locally good connected figures with at most `k_max` edges, weighted by
/// edge count.
pub fn locally_good_catalog(d: usize, k_max: usize, limits: &Limits) -> Result<Catalog> {
    Limits::check("chromatic weight", k_max, limits.max_chromatic_weight)?;
    let mut figures = Vec::new();
    for k in 1..=k_max {
        figures.extend(
            enumerate_connected_edge_figures(d, k, limits)?
                .into_iter()
                .filter(is_locally_good),
        );
    }
    Catalog::by_edge_count(d, figures)
}

/// `q~_0 .. q~_K`, where `q~_k(N)` is the unsigned coefficient of
/// `x^{N-k}` in the chromatic polynomial of `T^d_n`, `N = n^d`, for every
/// `n` large enough.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticCoefficientTable {
    pub dim: usize,
    pub polys: Vec<Poly>,
}

impl ChromaticCoefficientTable {
    pub fn max_weight(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> &Poly {
        &self.polys[k]
    }

    /// The signed coefficient `q_k = (-1)^k q~_k`.
    pub fn signed(&self, k: usize) -> Poly {
        if k.is_multiple_of(2) {
            self.polys[k].clone()
        } else {
            -&self.polys[k]
        }
    }

    pub fn as_sequence(&self) -> SequenceTable {
        SequenceTable {
            polys: self.polys.clone(),
        }
    }
}

/// Chromatic coefficient polynomials through `x^{N-K}`, computed by both the
/// multiset route and the connected-graph route; a disagreement is reported
/// as an internal error.
pub fn chromatic_coefficients(
    d: usize,
    k_max: usize,
    limits: &Limits,
) -> Result<ChromaticCoefficientTable> {
    let catalog = locally_good_catalog(d, k_max, limits)?;
    let direct = p_sequence_via_multisets(&catalog, k_max, limits)?;
    let schema = q_sequence_via_schema(&catalog, k_max, limits)?;
    if let Some((k, a, b)) = first_difference(&direct, &schema) {
        return Err(Error::Internal(format!(
            "chromatic coefficient routes disagree at k={k}: {a} vs {b}"
        )));
    }
    Ok(ChromaticCoefficientTable {
        dim: d,
        polys: direct.polys,
    })
}

/// Chromatic polynomial of `T^d_n` by deletion and contraction.
pub fn torus_chromatic_poly(d: usize, n: u64, limits: &Limits) -> Result<Poly> {
    let g = TorusGraph::new(d, n)?;
    chromatic_poly_small(g.vertex_count(), &g.endpoints, limits)
}
