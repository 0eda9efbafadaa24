//! Intersection schemas over a weighted catalog of connected figures.
//!
//! The connected labelled overlap graphs of the catalog, weighted by the sum
//! of their labels, feed a connected series `A(x) = sum_g a(g) x^w(g)`; the
//! sequence `q_i(N)` is read off `exp(N A(x))`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{
    rat_from_int, series_exp_linear, series_mul, series_pow, Poly, Rational, TruncSeries,
};
use crate::counting::SequenceTable;
use crate::error::{Error, Result};
use crate::figures::io::FigureSet;
use crate::figures::{is_connected, Figure, FigureMultiset};
use crate::limits::Limits;
use crate::overlap::{a_coeff, OverlapGraph};

/// A finite weighted set of distinct connected figures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    dim: usize,
    items: Vec<(Figure, u64)>,
}

impl Catalog {
    pub fn new(dim: usize, items: impl IntoIterator<Item = (Figure, u64)>) -> Result<Self> {
        let mut out: Vec<(Figure, u64)> = Vec::new();
        for (f, w) in items {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
            if w == 0 {
                return Err(Error::InvalidArgument(format!(
                    "figure {f} has weight 0; weights must be positive"
                )));
            }
            if !is_connected(&f) {
                return Err(Error::InvalidArgument(format!(
                    "catalog figure {f} is not connected"
                )));
            }
            if out.iter().any(|(g, _)| *g == f) {
                return Err(Error::InvalidArgument(format!("figure {f} listed twice")));
            }
            out.push((f, w));
        }
        Ok(Catalog { dim, items: out })
    }

    /// Weights default to edge counts in the file format.
    pub fn from_figure_set(set: &FigureSet) -> Result<Self> {
        if let Some(e) = set.entries.iter().find(|e| e.multiplicity != 1) {
            return Err(Error::InvalidArgument(format!(
                "catalog figure {} has multiplicity {}; catalogs list each figure once",
                e.figure, e.multiplicity
            )));
        }
        Catalog::new(
            set.dim,
            set.entries.iter().map(|e| (e.figure.clone(), e.weight)),
        )
    }

    /// Every figure weighted by its edge count.
    pub fn by_edge_count(dim: usize, figures: impl IntoIterator<Item = Figure>) -> Result<Self> {
        Catalog::new(
            dim,
            figures.into_iter().map(|f| {
                let w = f.edge_count() as u64;
                (f, w)
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn items(&self) -> &[(Figure, u64)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// All multisets of catalog figures whose weights sum to exactly `k`.
    pub fn multisets_of_weight(&self, k: usize) -> Vec<FigureMultiset> {
        let mut out = Vec::new();
        let mut counts = vec![0usize; self.items.len()];
        self.collect_multisets(0, k as u64, &mut counts, &mut out);
        out
    }

    fn collect_multisets(
        &self,
        i: usize,
        remaining: u64,
        counts: &mut Vec<usize>,
        out: &mut Vec<FigureMultiset>,
    ) {
        if remaining == 0 {
            let ms = FigureMultiset::new(
                self.items
                    .iter()
                    .zip(counts.iter())
                    .map(|((f, _), &c)| (f.clone(), c)),
            )
            .expect("catalog figures share a dimension");
            out.push(ms);
            return;
        }
        if i == self.items.len() {
            return;
        }
        let w = self.items[i].1;
        let mut c = 0;
        loop {
            counts[i] = c;
            self.collect_multisets(i + 1, remaining - w * c as u64, counts, out);
            if w * (c as u64 + 1) > remaining {
                break;
            }
            c += 1;
        }
        counts[i] = 0;
    }

    fn weight_of(&self, f: &Figure) -> u64 {
        self.items
            .iter()
            .find(|(g, _)| g == f)
            .map(|(_, w)| *w)
            .unwrap_or(0)
    }
}

/// A connected overlap graph on catalog figures together with its weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledConnectedGraph {
    pub weight: u64,
    pub graph: OverlapGraph,
}

impl fmt::Display for LabeledConnectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={} [", self.weight)?;
        for (i, fig) in self.graph.figures().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{fig}")?;
        }
        write!(f, "] edges {:?}", self.graph.edges())
    }
}

/// Every connected labelled graph of total weight `1..=K`, one per
/// label-preserving isomorphism class, ordered by weight then canonical form.
pub fn enumerate_lcg(
    catalog: &Catalog,
    k_max: usize,
    limits: &Limits,
) -> Result<Vec<LabeledConnectedGraph>> {
    Limits::check("maximum weight", k_max, limits.max_weight)?;
    let multisets: Vec<FigureMultiset> = (1..=k_max)
        .flat_map(|k| catalog.multisets_of_weight(k))
        .collect();
    if let Some(ms) = multisets
        .iter()
        .find(|ms| ms.len() > limits.max_graph_vertices)
    {
        Limits::check(
            "overlap graph vertices",
            ms.len(),
            limits.max_graph_vertices,
        )?;
    }
    let mut out: Vec<LabeledConnectedGraph> = multisets
        .par_iter()
        .flat_map_iter(|ms| {
            let figs = ms.expanded();
            let weight = figs.iter().map(|f| catalog.weight_of(f)).sum::<u64>();
            connected_graphs_on(&figs)
                .into_iter()
                .map(move |edges| LabeledConnectedGraph {
                    weight,
                    graph: OverlapGraph::new(figs.clone(), edges)
                        .expect("edges generated in range"),
                })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Canonical edge lists of the connected graphs on the labelled vertex list
/// `figs` (equal figures adjacent), one per isomorphism class.
fn connected_graphs_on(figs: &[Figure]) -> BTreeSet<Vec<(usize, usize)>> {
    let m = figs.len();
    let pairs: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
    let perms = label_preserving_permutations(figs);
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = OverlapGraph::new(figs.to_vec(), edges.iter().copied()).expect("in range");
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|perm| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (perm[a], perm[b]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .expect("identity permutation present");
        seen.insert(canon);
    }
    seen
}

/// Permutations of `0..m` mapping each vertex to one with an equal figure.
fn label_preserving_permutations(figs: &[Figure]) -> Vec<Vec<usize>> {
    let m = figs.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        match blocks.iter_mut().find(|b| figs[b[0]] == figs[i]) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    let mut perms = vec![(0..m).collect::<Vec<usize>>()];
    for block in &blocks {
        let mut next = Vec::new();
        for base in &perms {
            for images in block.iter().copied().permutations(block.len()) {
                let mut p = base.clone();
                for (&src, dst) in block.iter().zip(images) {
                    p[src] = dst;
                }
                next.push(p);
            }
        }
        perms = next;
    }
    perms
}

/// `A(x)`: the coefficient of `x^k` is the sum of `a(g)` over connected
/// labelled graphs of weight `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSeries(pub TruncSeries);

impl ConnectedSeries {
    pub fn coeff(&self, k: usize) -> Rational {
        self.0.coeff(k).constant_term()
    }
}

pub fn connected_series(
    catalog: &Catalog,
    k_max: usize,
    limits: &Limits,
) -> Result<ConnectedSeries> {
    let graphs = enumerate_lcg(catalog, k_max, limits)?;
    let terms: Vec<(usize, Rational)> = graphs
        .par_iter()
        .map(|g| Ok((g.weight as usize, a_coeff(&g.graph, limits)?)))
        .collect::<Result<_>>()?;
    let mut coeffs = vec![Rational::zero(); k_max + 1];
    for (w, a) in terms {
        coeffs[w] += a;
    }
    Ok(ConnectedSeries(TruncSeries::from_rationals(k_max, coeffs)))
}

/// `q_0 .. q_K` as the coefficients of `exp(N A(x))`.
pub fn q_sequence_via_schema(
    catalog: &Catalog,
    k_max: usize,
    limits: &Limits,
) -> Result<SequenceTable> {
    let a = connected_series(catalog, k_max, limits)?;
    Ok(SequenceTable {
        polys: series_exp_linear(&a.0)?.into_coeffs(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinomialFailure {
    /// `[x^i] F(x)^N != q_i(N)` with `F = sum q_i(1) x^i`.
    Power {
        n: u64,
        i: usize,
        expected: Rational,
        got: Rational,
    },
    /// `q_n(a+b) != sum_i q_i(a) q_{n-i}(b)`.
    Convolution {
        a: u64,
        b: u64,
        n: usize,
        lhs: Rational,
        rhs: Rational,
    },
}

impl fmt::Display for BinomialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinomialFailure::Power {
                n,
                i,
                expected,
                got,
            } => {
                write!(
                    f,
                    "N={n}, i={i}: [x^{i}] F^N = {expected} but q_{i}({n}) = {got}"
                )
            }
            BinomialFailure::Convolution { a, b, n, lhs, rhs } => {
                write!(
                    f,
                    "a={a}, b={b}, n={n}: q_n(a+b) = {lhs} but convolution = {rhs}"
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialReport {
    pub max_weight: usize,
    pub checks: usize,
    pub failures: Vec<BinomialFailure>,
}

impl BinomialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the binomial-type identities for `q_0..q_K` by evaluation at the
/// integers `N = 0..=2K` and on the grid `0 <= a, b <= K`.
///
/// Both sides of each identity have `x^i` coefficients of degree at most
/// `i <= K` in `N`, so these finitely many points decide it.
pub fn verify_binomial(table: &SequenceTable, k_max: usize) -> Result<BinomialReport> {
    if table.polys.len() <= k_max {
        return Err(Error::InvalidArgument(format!(
            "table stops at weight {} but verification needs {k_max}",
            table.max_weight()
        )));
    }
    let qs = &table.polys[..=k_max];
    let at = |n: u64| -> Vec<Rational> { qs.iter().map(|q| q.eval(&rat_from_int(n))).collect() };
    let mut failures = Vec::new();
    let mut checks = 0;

    let f = TruncSeries::from_rationals(k_max, at(1));
    for n in 0..=2 * k_max as u64 {
        let power = series_pow(&f, n);
        let direct = at(n);
        for (i, q) in direct.into_iter().enumerate() {
            checks += 1;
            let expected = power.coeff(i).constant_term();
            if expected != q {
                failures.push(BinomialFailure::Power {
                    n,
                    i,
                    expected,
                    got: q,
                });
            }
        }
    }

    for a in 0..=k_max as u64 {
        for b in 0..=k_max as u64 {
            let sa = TruncSeries::from_rationals(k_max, at(a));
            let sb = TruncSeries::from_rationals(k_max, at(b));
            let conv = series_mul(&sa, &sb)?;
            for (n, lhs) in at(a + b).into_iter().enumerate() {
                checks += 1;
                let rhs = conv.coeff(n).constant_term();
                if lhs != rhs {
                    failures.push(BinomialFailure::Convolution { a, b, n, lhs, rhs });
                }
            }
        }
    }
    Ok(BinomialReport {
        max_weight: k_max,
        checks,
        failures,
    })
}

/// Coefficient-wise comparison of two tables; returns the first differing
/// weight.
pub fn first_difference(a: &SequenceTable, b: &SequenceTable) -> Option<(usize, Poly, Poly)> {
    let n = a.polys.len().max(b.polys.len());
    (0..n).find_map(|k| {
        let pa = a.polys.get(k).cloned().unwrap_or_default();
        let pb = b.polys.get(k).cloned().unwrap_or_default();
        (pa != pb).then_some((k, pa, pb))
    })
}

/// `lcm(1!, 2!, ..., K!)`: every coefficient of `A(x)` up to weight `K` has a
/// denominator dividing it.
pub fn label_factorial_bound(k_max: usize) -> BigInt {
    (1..=k_max as u32).fold(BigInt::from(1), |acc, c| {
        num_integer::Integer::lcm(&acc, &crate::overlap::factorial(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::counting::p_sequence_via_multisets;

    fn h() -> Figure {
        Figure::domino(2, 0)
    }
    fn v() -> Figure {
        Figure::domino(2, 1)
    }
    fn dominoes() -> Catalog {
        Catalog::by_edge_count(2, [h(), v()]).unwrap()
    }
    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn catalog_validation() {
        assert!(Catalog::new(2, [(h(), 0)]).is_err());
        assert!(Catalog::new(2, [(h(), 1), (h(), 2)]).is_err());
        assert!(Catalog::new(3, [(h(), 1)]).is_err());
        let bare = Figure::canonicalize(
            vec![
                crate::figures::Point::new(vec![0, 0]),
                crate::figures::Point::new(vec![1, 0]),
            ],
            vec![],
        )
        .unwrap();
        assert!(Catalog::new(2, [(bare, 1)]).is_err());
    }

    #[test]
    fn multisets_by_weight() {
        let c = dominoes();
        assert_eq!(c.multisets_of_weight(0).len(), 1);
        assert_eq!(c.multisets_of_weight(1).len(), 2);
        assert_eq!(c.multisets_of_weight(2).len(), 3);
        assert_eq!(c.multisets_of_weight(4).len(), 5);
        let w = Catalog::new(2, [(h(), 1), (v(), 2)]).unwrap();
        assert_eq!(w.multisets_of_weight(2).len(), 2);
        assert_eq!(w.multisets_of_weight(4).len(), 3);
    }

    #[test]
    fn lcg_examples() {
        assert_eq!(enumerate_lcg(&dominoes(), 1, &l()).unwrap().len(), 2);
        let two = enumerate_lcg(&dominoes(), 2, &l()).unwrap();
        assert_eq!(two.len(), 5);
        assert_eq!(two.iter().filter(|g| g.weight == 2).count(), 3);
        assert!(enumerate_lcg(&dominoes(), 0, &l()).unwrap().is_empty());
        // on three identical labels: the path and the triangle
        let single = Catalog::by_edge_count(2, [h()]).unwrap();
        let three = enumerate_lcg(&single, 3, &l()).unwrap();
        assert_eq!(three.iter().filter(|g| g.weight == 3).count(), 2);
        // four identical labels: the 6 connected graphs on 4 unlabelled vertices
        let four = enumerate_lcg(&single, 4, &l()).unwrap();
        assert_eq!(four.iter().filter(|g| g.weight == 4).count(), 6);
    }

    #[test]
    fn connected_series_examples() {
        let a = connected_series(&dominoes(), 2, &l()).unwrap();
        assert_eq!(a.0, TruncSeries::from_ints(2, &[0, 2, -7]));
        let empty = Catalog::new(2, []).unwrap();
        assert_eq!(
            connected_series(&empty, 3, &l()).unwrap().0,
            TruncSeries::zero(3)
        );
        let single = Catalog::by_edge_count(2, [h()]).unwrap();
        let a = connected_series(&single, 2, &l()).unwrap();
        assert_eq!(a.coeff(1), rat(1, 1));
        assert_eq!(a.coeff(2), rat(-3, 2));
    }

    #[test]
    fn schema_sequence_examples() {
        let q = q_sequence_via_schema(&dominoes(), 2, &l()).unwrap();
        assert_eq!(
            q.polys,
            vec![
                Poly::one(),
                Poly::from_ints(&[0, 2]),
                Poly::from_ints(&[0, -7, 2])
            ]
        );
        let single = Catalog::by_edge_count(2, [h()]).unwrap();
        let q = q_sequence_via_schema(&single, 2, &l()).unwrap();
        assert_eq!(
            q.polys[2],
            Poly::from_coeffs(vec![rat(0, 1), rat(-3, 2), rat(1, 2)])
        );
    }

    #[test]
    fn routes_agree_on_small_catalogs() {
        for (cat, k) in [
            (dominoes(), 3),
            (Catalog::by_edge_count(2, [h()]).unwrap(), 4),
        ] {
            let r1 = p_sequence_via_multisets(&cat, k, &l()).unwrap();
            let r2 = q_sequence_via_schema(&cat, k, &l()).unwrap();
            assert_eq!(first_difference(&r1, &r2), None);
        }
    }

    #[test]
    fn binomial_examples() {
        let q = q_sequence_via_schema(&dominoes(), 2, &l()).unwrap();
        let r = verify_binomial(&q, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);

        let mut bad = q.clone();
        bad.polys[1] = Poly::from_ints(&[1, 2]);
        let r = verify_binomial(&bad, 2).unwrap();
        assert!(!r.passed());
        assert!(r
            .failures
            .iter()
            .any(|f| matches!(f, BinomialFailure::Power { n: 0, i: 1, .. })));

        let trivial = SequenceTable {
            polys: vec![Poly::one()],
        };
        assert!(verify_binomial(&trivial, 0).unwrap().passed());
        assert!(verify_binomial(&trivial, 1).is_err());
    }

    #[test]
    fn series_denominators_are_bounded() {
        let single = Catalog::by_edge_count(2, [h()]).unwrap();
        let a = connected_series(&single, 4, &l()).unwrap();
        let bound = rat_from_int(label_factorial_bound(4));
        for k in 0..=4 {
            assert!((a.coeff(k) * &bound).is_integer());
        }
    }

    #[test]
    fn unscaled_multiset_weights_break_route_equality() {
        // Summing w_c over multiset-configurations without scaling by the
        // share of consistent vertex assignments overcounts the three-domino
        // path (the straight run is consistent in only 2 of its 6 labelings).
        use crate::overlap::{alpha, enumerate_configurations};
        use std::collections::BTreeMap;
        let single = Catalog::by_edge_count(2, [h()]).unwrap();
        let graphs = enumerate_lcg(&single, 3, &l()).unwrap();
        let mut coeffs = vec![Rational::zero(); 4];
        for g in &graphs {
            let mut classes: BTreeMap<Vec<crate::figures::Point>, ()> = BTreeMap::new();
            let mut sum = Rational::zero();
            for c in enumerate_configurations(&g.graph).unwrap() {
                let mut key = c.offsets.clone();
                key.sort();
                let base = key[0].clone();
                let key: Vec<_> = key.iter().map(|p| p.sub(&base)).collect();
                if classes.insert(key.clone(), ()).is_none() {
                    let mut w = rat(1, 1);
                    for run in key.chunk_by(|a, b| a == b) {
                        w /= rat_from_int(crate::overlap::factorial(run.len() as u32));
                    }
                    sum += w;
                }
            }
            let sign = if g.graph.edges().len() % 2 == 0 {
                1
            } else {
                -1
            };
            coeffs[g.weight as usize] += rat(sign, 1) * alpha(&g.graph, &l()).unwrap() * sum;
        }
        let plain = series_exp_linear(&TruncSeries::from_rationals(3, coeffs)).unwrap();
        let route1 = p_sequence_via_multisets(&single, 3, &l()).unwrap();
        assert_eq!(plain.coeff(2), route1.get(2));
        assert_ne!(plain.coeff(3), route1.get(3));
    }
}
