//! Overlap graphs and their configurations on the infinite lattice.
//!
//! An overlap graph has one vertex per figure (repeats allowed) and an edge
//! wherever two figures are required to share a vertex. A configuration is a
//! translation class of placements satisfying every edge; we represent each
//! class by the placement that leaves vertex 0 at the origin.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{rat_from_int, Rational};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::figures::{Figure, Point};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OverlapGraph {
    figures: Vec<Figure>,
    edges: Vec<(usize, usize)>,
}

impl OverlapGraph {
    /// Edges are stored as sorted `(i, j)` pairs with `i < j`.
    pub fn new(
        figures: Vec<Figure>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let m = figures.len();
        if let Some(f) = figures.iter().find(|f| f.dim() != figures[0].dim()) {
            return Err(Error::DimensionMismatch {
                expected: figures[0].dim(),
                got: f.dim(),
            });
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= m || b >= m {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(OverlapGraph {
            figures,
            edges: set.into_iter().collect(),
        })
    }

    pub fn single(f: Figure) -> Self {
        OverlapGraph {
            figures: vec![f],
            edges: Vec::new(),
        }
    }

    pub fn figures(&self) -> &[Figure] {
        &self.figures
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.figures.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.figures.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = Dsu::new(self.figures.len());
        for &(a, b) in &self.edges {
            dsu.union(a, b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.figures.len() {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> OverlapGraph {
        let pos: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        OverlapGraph {
            figures: vertices.iter().map(|&v| self.figures[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|(a, b)| Some((*pos.get(a)?, *pos.get(b)?)))
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    /// For each vertex, the smallest vertex index carrying an equal figure.
    pub fn label_classes(&self) -> Vec<usize> {
        (0..self.figures.len())
            .map(|i| {
                (0..=i)
                    .find(|&j| self.figures[j] == self.figures[i])
                    .unwrap_or(i)
            })
            .collect()
    }

    /// Product of `c_i!` over the multiplicities of equal figures.
    pub fn label_factorial_product(&self) -> BigInt {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for c in self.label_classes() {
            *counts.entry(c).or_default() += 1;
        }
        counts.values().map(|&c| factorial(c)).product()
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// One offset per overlap-graph vertex; vertex 0 sits at the origin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub offsets: Vec<Point>,
}

impl Configuration {
    /// Per-axis span of the union of all placed figures.
    pub fn spans(&self, g: &OverlapGraph) -> Vec<u64> {
        let d = g.figures[0].dim();
        (0..d)
            .map(|axis| {
                let coords = g
                    .figures
                    .iter()
                    .zip(&self.offsets)
                    .flat_map(|(f, t)| f.vertices().iter().map(move |p| p.0[axis] + t.0[axis]));
                let (lo, hi) =
                    coords.fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c), hi.max(c)));
                hi.abs_diff(lo)
            })
            .collect()
    }
}

/// How the spanning tree guiding the enumeration is grown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeOrder {
    BreadthFirst,
    DepthFirst,
}

/// All configurations consistent with a connected overlap graph, vertices
/// treated as distinguishable, sorted.
pub fn enumerate_configurations(g: &OverlapGraph) -> Result<Vec<Configuration>> {
    enumerate_configurations_with(g, TreeOrder::BreadthFirst)
}

pub fn enumerate_configurations_with(
    g: &OverlapGraph,
    order: TreeOrder,
) -> Result<Vec<Configuration>> {
    let m = g.vertex_count();
    if m == 0 {
        return Err(Error::InvalidGraph("empty overlap graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let adj = g.adjacency();
    let (visit, parent) = spanning_tree(&adj, order);
    let d = g.figures[0].dim();

    let mut placed: Vec<Option<HashSet<Point>>> = vec![None; m];
    let mut offsets = vec![Point::origin(d); m];
    placed[0] = Some(g.figures[0].vertices().iter().cloned().collect());
    let mut out = Vec::new();
    extend(
        g,
        &adj,
        &visit,
        &parent,
        1,
        &mut placed,
        &mut offsets,
        &mut out,
    );
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    Ok(out)
}

/// `v(G)`: the number of configurations of a connected overlap graph.
pub fn configuration_count(g: &OverlapGraph) -> Result<u64> {
    Ok(enumerate_configurations(g)?.len() as u64)
}

fn spanning_tree(adj: &[Vec<usize>], order: TreeOrder) -> (Vec<usize>, Vec<usize>) {
    let m = adj.len();
    let mut parent = vec![usize::MAX; m];
    let mut seen = vec![false; m];
    let mut visit = Vec::with_capacity(m);
    match order {
        TreeOrder::BreadthFirst => {
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                visit.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
        }
        TreeOrder::DepthFirst => {
            let mut stack = vec![(0, usize::MAX)];
            while let Some((v, p)) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                parent[v] = p;
                visit.push(v);
                for &w in adj[v].iter().rev() {
                    if !seen[w] {
                        stack.push((w, v));
                    }
                }
            }
        }
    }
    (visit, parent)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &OverlapGraph,
    adj: &[Vec<usize>],
    visit: &[usize],
    parent: &[usize],
    step: usize,
    placed: &mut Vec<Option<HashSet<Point>>>,
    offsets: &mut Vec<Point>,
    out: &mut Vec<Configuration>,
) {
    if step == visit.len() {
        out.push(Configuration {
            offsets: offsets.clone(),
        });
        return;
    }
    let v = visit[step];
    let fig = &g.figures[v];
    let parent_cells = placed[parent[v]].as_ref().expect("parent placed first");
    let candidates: BTreeSet<Point> = parent_cells
        .iter()
        .flat_map(|a| fig.vertices().iter().map(move |b| a.sub(b)))
        .collect();
    for t in candidates {
        let cells: HashSet<Point> = fig.translated(&t).collect();
        let ok = adj[v].iter().all(|&w| match &placed[w] {
            Some(other) => cells.iter().any(|c| other.contains(c)),
            None => true,
        });
        if !ok {
            continue;
        }
        placed[v] = Some(cells);
        offsets[v] = t;
        extend(g, adj, visit, parent, step + 1, placed, offsets, out);
        placed[v] = None;
    }
}

/// Distinct multiset-configurations of a graph and their weighted total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedConfigCount {
    pub distinct: u64,
    pub weighted_sum: Rational,
}

/// Groups the vertex-assigned configurations of `g` into configurations of
/// the underlying multiset of figures (identical figures interchangeable,
/// translation classes identified).
///
/// Each class `c` carries `w_c = prod 1/o_i!` over its maximal groups of
/// identical, coincident figures. A class contributes `w_c` scaled by the
/// fraction of its label-preserving vertex assignments that satisfy `g`; for
/// graphs where every assignment works (complete graphs, two vertices) the
/// fraction is 1.
pub fn weighted_config_sum(g: &OverlapGraph) -> Result<WeightedConfigCount> {
    let configs = enumerate_configurations(g)?;
    let classes = g.label_classes();
    let mut groups: BTreeMap<Vec<(usize, Point)>, u64> = BTreeMap::new();
    for c in &configs {
        *groups
            .entry(multiset_key(&classes, &c.offsets))
            .or_default() += 1;
    }
    let label_fact = rat_from_int(g.label_factorial_product());
    let mut sum = Rational::zero();
    for (key, consistent) in &groups {
        let coincident: BigInt = run_lengths(key).map(factorial).product();
        let w = Rational::new(BigInt::one(), coincident.clone());
        // assignments of the figures of c to vertices of g: prod c_i! / prod o_i!
        let assignments = &label_fact / rat_from_int(coincident);
        sum += w * rat_from_int(*consistent) / assignments;
    }
    Ok(WeightedConfigCount {
        distinct: groups.len() as u64,
        weighted_sum: sum,
    })
}

/// Translation-normalised multiset of (label class, offset) pairs.
fn multiset_key(classes: &[usize], offsets: &[Point]) -> Vec<(usize, Point)> {
    let mut key: Vec<(usize, Point)> = classes
        .iter()
        .copied()
        .zip(offsets.iter().cloned())
        .collect();
    key.sort();
    let base = key[0].1.clone();
    for (_, p) in &mut key {
        *p = p.sub(&base);
    }
    key
}

fn run_lengths<T: PartialEq>(xs: &[T]) -> impl Iterator<Item = u32> + '_ {
    let mut i = 0;
    std::iter::from_fn(move || {
        if i >= xs.len() {
            return None;
        }
        let j = (i..xs.len()).find(|&j| xs[j] != xs[i]).unwrap_or(xs.len());
        let len = (j - i) as u32;
        i = j;
        Some(len)
    })
}

/// Number of label-preserving automorphisms.
pub fn aut_size(g: &OverlapGraph, limits: &Limits) -> Result<u64> {
    Limits::check(
        "overlap graph vertices",
        g.vertex_count(),
        limits.max_graph_vertices,
    )?;
    let m = g.vertex_count();
    let classes = g.label_classes();
    let mut adj = vec![vec![false; m]; m];
    for &(a, b) in g.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; m];
    Ok(count_automorphisms(
        &classes, &adj, 0, &mut image, &mut used,
    ))
}

fn count_automorphisms(
    classes: &[usize],
    adj: &[Vec<bool>],
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> u64 {
    let m = classes.len();
    if v == m {
        return 1;
    }
    let mut total = 0;
    for w in 0..m {
        if used[w] || classes[w] != classes[v] {
            continue;
        }
        if (0..v).any(|u| adj[u][v] != adj[image[u]][w]) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        total += count_automorphisms(classes, adj, v + 1, image, used);
        used[w] = false;
    }
    total
}

/// `prod c_i! / |Aut(G)|`: the number of inequivalent ways to make the
/// repeated figures distinguishable.
pub fn alpha(g: &OverlapGraph, limits: &Limits) -> Result<Rational> {
    let aut = aut_size(g, limits)?;
    Ok(Rational::new(
        g.label_factorial_product(),
        BigInt::from(aut),
    ))
}

/// `(-1)^|E| * alpha(G) * weighted configuration sum`.
pub fn a_coeff(g: &OverlapGraph, limits: &Limits) -> Result<Rational> {
    let alpha = alpha(g, limits)?;
    let sum = weighted_config_sum(g)?.weighted_sum;
    let sign = if g.edges().len().is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(rat_from_int(sign) * alpha * sum)
}
