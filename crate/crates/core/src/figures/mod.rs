//! Lattice figures up to translation.
//!
//! A [`Figure`] is a finite vertex set in `Z^d` together with a set of unit
//! edges between its vertices. Figures are stored in canonical translate:
//! every coordinate's minimum over the vertices is zero.

mod enumerate;
pub mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use enumerate::enumerate_connected_edge_figures;

use crate::error::{Error, Result};

/// A point of `Z^d`; also used for translation offsets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Point(coords.into())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Point::origin(dim);
        p.0[axis] = 1;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn l1_distance(&self, other: &Point) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    /// Coordinates reduced into `[0, n)`.
    pub fn reduce(&self, n: u64) -> Point {
        Point(self.0.iter().map(|&c| c.rem_euclid(n as i64)).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Side length of the ambient torus, or the infinite lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modulus {
    Finite(u64),
    Infinite,
}

/// Finite vertex set with unit edges, in canonical translate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Figure {
    dim: usize,
    vertices: Vec<Point>,
    edges: Vec<(Point, Point)>,
}

/// Per-axis spans of a figure and their maximum (the figure's girth).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extent {
    pub spans: Vec<u64>,
    pub girth: u64,
}

impl Figure {
    /// Translates to the canonical representative and sorts/deduplicates.
    pub fn canonicalize(vertices: Vec<Point>, edges: Vec<(Point, Point)>) -> Result<Figure> {
        let dim = vertices
            .first()
            .ok_or_else(|| Error::InvalidFigure("figure needs at least one vertex".into()))?
            .dim();
        if dim == 0 {
            return Err(Error::InvalidFigure("dimension must be positive".into()));
        }
        if let Some(p) = vertices.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        let vset: BTreeSet<Point> = vertices.into_iter().collect();
        for (a, b) in &edges {
            if !vset.contains(a) || !vset.contains(b) {
                return Err(Error::InvalidFigure(format!(
                    "edge {a}-{b} has an endpoint outside the vertex set"
                )));
            }
            if a.l1_distance(b) != 1 {
                return Err(Error::InvalidFigure(format!(
                    "edge {a}-{b} is not a unit lattice edge"
                )));
            }
        }
        let shift = Point(
            (0..dim)
                .map(|i| vset.iter().map(|p| p.0[i]).min().unwrap_or(0))
                .collect(),
        );
        let vertices: Vec<Point> = vset.iter().map(|p| p.sub(&shift)).collect();
        let eset: BTreeSet<(Point, Point)> = edges
            .iter()
            .map(|(a, b)| {
                let (a, b) = (a.sub(&shift), b.sub(&shift));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        Ok(Figure {
            dim,
            vertices,
            edges: eset.into_iter().collect(),
        })
    }

    /// Vertex set with every lattice edge between listed vertices added.
    pub fn with_auto_edges(vertices: Vec<Point>) -> Result<Figure> {
        let edges = auto_edges(&vertices);
        Figure::canonicalize(vertices, edges)
    }

    /// The figure spanned by a set of unit edges.
    pub fn from_edges(edges: Vec<(Point, Point)>) -> Result<Figure> {
        let vertices = edges
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        Figure::canonicalize(vertices, edges)
    }

    /// A two-vertex domino along `axis`, with its edge.
    pub fn domino(dim: usize, axis: usize) -> Figure {
        let a = Point::origin(dim);
        let b = Point::unit(dim, axis);
        Figure::from_edges(vec![(a, b)]).expect("unit edge is a valid figure")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Point, Point)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn translated(&self, offset: &Point) -> impl Iterator<Item = Point> + '_ {
        let offset = offset.clone();
        self.vertices.iter().map(move |p| p.add(&offset))
    }

    pub fn extent(&self) -> Extent {
        extent(self)
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        if self.edges.is_empty() {
            for (i, p) in self.vertices.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, "}}")
    }
}

pub(crate) fn auto_edges(vertices: &[Point]) -> Vec<(Point, Point)> {
    let mut edges = Vec::new();
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            if a.dim() == b.dim() && a.l1_distance(b) == 1 {
                edges.push((a.clone(), b.clone()));
            }
        }
    }
    edges
}

/// Whether `f + tf` and `g + tg` share a vertex, coordinates taken mod `n`
/// on a finite torus.
pub fn overlaps(f: &Figure, tf: &Point, g: &Figure, tg: &Point, modulus: Modulus) -> Result<bool> {
    let d = f.dim();
    for dim in [g.dim(), tf.dim(), tg.dim()] {
        if dim != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: dim,
            });
        }
    }
    let place = |fig: &Figure, t: &Point| -> BTreeSet<Point> {
        fig.translated(t)
            .map(|p| match modulus {
                Modulus::Finite(n) => p.reduce(n),
                Modulus::Infinite => p,
            })
            .collect()
    };
    let a = place(f, tf);
    Ok(g.translated(tg)
        .map(|p| match modulus {
            Modulus::Finite(n) => p.reduce(n),
            Modulus::Infinite => p,
        })
        .any(|p| a.contains(&p)))
}

pub fn extent(f: &Figure) -> Extent {
    let spans: Vec<u64> = (0..f.dim)
        .map(|i| {
            let lo = f.vertices.iter().map(|p| p.0[i]).min().unwrap_or(0);
            let hi = f.vertices.iter().map(|p| p.0[i]).max().unwrap_or(0);
            hi.abs_diff(lo)
        })
        .collect();
    let girth = spans.iter().copied().max().unwrap_or(0);
    Extent { spans, girth }
}

/// Connectivity of the figure's own graph (vertices joined by its edges).
pub fn is_connected(f: &Figure) -> bool {
    let index: BTreeMap<&Point, usize> =
        f.vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut dsu = crate::dsu::Dsu::new(f.vertices.len());
    for (a, b) in &f.edges {
        dsu.union(index[a], index[b]);
    }
    dsu.components() == 1
}

/// A multiset of figures with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FigureMultiset {
    entries: Vec<(Figure, usize)>,
}

impl FigureMultiset {
    /// Merges equal figures; entries with multiplicity zero are dropped.
    pub fn new(entries: impl IntoIterator<Item = (Figure, usize)>) -> Result<Self> {
        let mut merged: Vec<(Figure, usize)> = Vec::new();
        let mut dim = None;
        for (f, c) in entries {
            if *dim.get_or_insert(f.dim()) != f.dim() {
                return Err(Error::DimensionMismatch {
                    expected: dim.unwrap_or_default(),
                    got: f.dim(),
                });
            }
            if c == 0 {
                continue;
            }
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some((_, m)) => *m += c,
                None => merged.push((f, c)),
            }
        }
        Ok(FigureMultiset { entries: merged })
    }

    /// One entry per listed figure, repeats merged.
    pub fn from_figures(figs: impl IntoIterator<Item = Figure>) -> Result<Self> {
        FigureMultiset::new(figs.into_iter().map(|f| (f, 1)))
    }

    pub fn entries(&self) -> &[(Figure, usize)] {
        &self.entries
    }

    pub fn dim(&self) -> Option<usize> {
        self.entries.first().map(|(f, _)| f.dim())
    }

    /// Total number of figures counted with multiplicity.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Figures with repeats expanded, identical figures adjacent.
    pub fn expanded(&self) -> Vec<Figure> {
        self.entries
            .iter()
            .flat_map(|(f, c)| std::iter::repeat_n(f.clone(), *c))
            .collect()
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(_, c)| *c)
    }
}
