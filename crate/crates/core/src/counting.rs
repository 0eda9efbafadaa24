//! Placement polynomials by inclusion-exclusion over overlap graphs.
//!
//! Brute-force placement oracles live alongside for checking, as does the
//! sequence `p_k` obtained by summing over a catalog.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{rat_from_int, Poly, Rational};
use crate::error::{Error, Result};
use crate::figures::{Figure, FigureMultiset};
use crate::limits::Limits;
use crate::overlap::{enumerate_configurations, OverlapGraph};
use crate::schema::Catalog;

/// What the polynomial variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    /// `N = n^d` on the torus `T^d_n`.
    TorusVolume { dim: usize },
    /// The side length `n` of the box `L^d_n`.
    Side,
}

impl Variable {
    pub fn symbol(&self) -> &'static str {
        match self {
            Variable::TorusVolume { .. } => "N",
            Variable::Side => "n",
        }
    }

    /// The value substituted for the variable at side length `n`.
    pub fn at_side(&self, n: u64) -> Rational {
        match self {
            Variable::TorusVolume { dim } => rat_from_int(BigInt::from(n).pow(*dim as u32)),
            Variable::Side => rat_from_int(n),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::TorusVolume { .. } => f.write_str("N=n^d"),
            Variable::Side => f.write_str("n"),
        }
    }
}

/// A placement count as a polynomial, valid for every side length `n >= n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementPolynomial {
    pub poly: Poly,
    pub variable: Variable,
    pub n0: u64,
}

impl PlacementPolynomial {
    pub fn eval_at_side(&self, n: u64) -> Rational {
        self.poly.eval(&self.variable.at_side(n))
    }
}

impl fmt::Display for PlacementPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with(self.variable.symbol()))
    }
}

/// `q_0, ..., q_K` as polynomials in `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub polys: Vec<Poly>,
}

impl SequenceTable {
    pub fn max_weight(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> &Poly {
        &self.polys[k]
    }
}

// ---------------------------------------------------------------------------
// brute-force oracles

/// Cells of one figure at every offset of `[0,n)^d` (torus) as flat indices.
struct TorusPlacements {
    /// `cells[t]` for offset index `t`, or empty if the figure wraps onto itself.
    cells: Vec<Vec<u32>>,
}

fn flat(coords: impl Iterator<Item = i64>, n: u64) -> u32 {
    coords.fold(0u64, |acc, c| acc * n + c.rem_euclid(n as i64) as u64) as u32
}

fn offsets(d: usize, n: u64) -> impl Iterator<Item = Vec<i64>> {
    let total = n.pow(d as u32);
    (0..total).map(move |mut t| {
        let mut c = vec![0i64; d];
        for slot in c.iter_mut().rev() {
            *slot = (t % n) as i64;
            t /= n;
        }
        c
    })
}

impl TorusPlacements {
    fn new(f: &Figure, n: u64) -> Self {
        let d = f.dim();
        let cells = offsets(d, n)
            .map(|t| {
                let mut cs: Vec<u32> = f
                    .vertices()
                    .iter()
                    .map(|p| flat(p.0.iter().zip(&t).map(|(a, b)| a + b), n))
                    .collect();
                cs.sort_unstable();
                cs.dedup();
                if cs.len() == f.size() {
                    cs
                } else {
                    Vec::new()
                }
            })
            .collect();
        TorusPlacements { cells }
    }

    /// Box placements: offsets keep the figure inside `[0,n)^d`.
    fn new_box(f: &Figure, n: u64) -> Self {
        let d = f.dim();
        let spans = f.extent().spans;
        let cells = offsets(d, n)
            .filter(|t| t.iter().zip(&spans).all(|(&c, &s)| c as u64 + s < n))
            .map(|t| {
                let mut cs: Vec<u32> = f
                    .vertices()
                    .iter()
                    .map(|p| flat(p.0.iter().zip(&t).map(|(a, b)| a + b), n))
                    .collect();
                cs.sort_unstable();
                cs
            })
            .collect();
        TorusPlacements { cells }
    }
}

fn check_oracle_budget(positions: u64, m: usize, n: u64, limits: &Limits) -> Result<()> {
    let iterations = (positions as u128)
        .checked_pow(m as u32)
        .unwrap_or(u128::MAX);
    limits.check_budget(iterations, format!("try a side length smaller than {n}"))
}

/// Number of ways to place every figure of `s` on `T^d_n` with no two sharing
/// a vertex; identical figures are interchangeable.
pub fn brute_count_torus(s: &FigureMultiset, n: u64, limits: &Limits) -> Result<u128> {
    count_non_overlapping(s, n, limits, false)
}

/// As [`brute_count_torus`] on the box `[0,n)^d` without wraparound.
pub fn brute_count_box(s: &FigureMultiset, n: u64, limits: &Limits) -> Result<u128> {
    count_non_overlapping(s, n, limits, true)
}

fn count_non_overlapping(s: &FigureMultiset, n: u64, limits: &Limits, boxed: bool) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "side length must be positive".into(),
        ));
    }
    let figs = s.expanded();
    if figs.is_empty() {
        return Ok(1);
    }
    let d = figs[0].dim();
    let volume = n.pow(d as u32);
    check_oracle_budget(volume, figs.len(), n, limits)?;
    let placements: Vec<TorusPlacements> = figs
        .iter()
        .map(|f| {
            if boxed {
                TorusPlacements::new_box(f, n)
            } else {
                TorusPlacements::new(f, n)
            }
        })
        .collect();
    // figures equal to their predecessor take non-decreasing offsets
    let same_as_prev: Vec<bool> = (0..figs.len())
        .map(|i| i > 0 && figs[i] == figs[i - 1])
        .collect();

    let first = &placements[0].cells;
    let total: u128 = (0..first.len())
        .into_par_iter()
        .map(|t0| {
            if first[t0].is_empty() {
                return 0;
            }
            let mut occupied = vec![false; volume as usize];
            for &c in &first[t0] {
                occupied[c as usize] = true;
            }
            let mut chosen = vec![t0];
            place_rest(&placements, &same_as_prev, 1, &mut occupied, &mut chosen)
        })
        .sum();
    Ok(total)
}

fn place_rest(
    placements: &[TorusPlacements],
    same_as_prev: &[bool],
    i: usize,
    occupied: &mut [bool],
    chosen: &mut Vec<usize>,
) -> u128 {
    if i == placements.len() {
        return 1;
    }
    let start = if same_as_prev[i] { chosen[i - 1] } else { 0 };
    let mut total = 0;
    for t in start..placements[i].cells.len() {
        let cells = &placements[i].cells[t];
        if cells.is_empty() || cells.iter().any(|&c| occupied[c as usize]) {
            continue;
        }
        for &c in cells {
            occupied[c as usize] = true;
        }
        chosen.push(t);
        total += place_rest(placements, same_as_prev, i + 1, occupied, chosen);
        chosen.pop();
        for &c in cells {
            occupied[c as usize] = false;
        }
    }
    total
}

/// Offset tuples on `T^d_n` (vertices distinguishable) in which every edge of
/// `g` joins two overlapping placements; non-adjacent figures are free.
pub fn count_consistent_torus(g: &OverlapGraph, n: u64, limits: &Limits) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "side length must be positive".into(),
        ));
    }
    let m = g.vertex_count();
    if m == 0 {
        return Ok(1);
    }
    let d = g.figures()[0].dim();
    let volume = n.pow(d as u32);
    check_oracle_budget(volume, m, n, limits)?;
    let placements: Vec<TorusPlacements> = g
        .figures()
        .iter()
        .map(|f| TorusPlacements::new(f, n))
        .collect();
    let adj = g.adjacency();
    let earlier: Vec<Vec<usize>> = (0..m)
        .map(|v| adj[v].iter().copied().filter(|&w| w < v).collect())
        .collect();
    let first = placements[0].cells.len();
    Ok((0..first)
        .into_par_iter()
        .map(|t0| {
            if placements[0].cells[t0].is_empty() {
                return 0;
            }
            let mut chosen = vec![t0];
            consistent_rest(&placements, &earlier, 1, &mut chosen)
        })
        .sum())
}

fn consistent_rest(
    placements: &[TorusPlacements],
    earlier: &[Vec<usize>],
    i: usize,
    chosen: &mut Vec<usize>,
) -> u128 {
    if i == placements.len() {
        return 1;
    }
    let mut total = 0;
    for (t, cells) in placements[i].cells.iter().enumerate() {
        if cells.is_empty() {
            continue;
        }
        let ok = earlier[i]
            .iter()
            .all(|&w| sorted_intersect(cells, &placements[w].cells[chosen[w]]));
        if ok {
            chosen.push(t);
            total += consistent_rest(placements, earlier, i + 1, chosen);
            chosen.pop();
        }
    }
    total
}

fn sorted_intersect(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

// ---------------------------------------------------------------------------
// inclusion-exclusion

/// Visits every subset of the pairs of `figs` as an overlap graph, split into
/// connected components, with the sign `(-1)^|P|`.
fn for_each_pair_subset(
    figs: &[Figure],
    mut visit: impl FnMut(bool, Vec<OverlapGraph>) -> Result<()>,
) -> Result<()> {
    let m = figs.len();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    for mask in 0u64..(1u64 << pairs.len()) {
        let chosen = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p);
        let g = OverlapGraph::new(figs.to_vec(), chosen)?;
        let comps = g.components().into_iter().map(|c| g.induced(&c)).collect();
        visit(mask.count_ones() % 2 == 1, comps)?;
    }
    Ok(())
}

fn divide_by_labels(distinguishable: Poly, s: &FigureMultiset) -> Result<Poly> {
    let fact: BigInt = s
        .multiplicities()
        .map(|c| crate::overlap::factorial(c as u32))
        .product();
    let poly = distinguishable.scale(&(Rational::from_integer(1.into()) / rat_from_int(fact)));
    if !poly.is_integer_valued() {
        return Err(Error::Internal(format!(
            "placement polynomial {poly} is not integer-valued"
        )));
    }
    Ok(poly)
}

/// `f_S` on the torus as a polynomial in `N = n^d`.
pub fn f_polynomial_torus(s: &FigureMultiset, limits: &Limits) -> Result<PlacementPolynomial> {
    let mut cache = HashMap::new();
    f_polynomial_torus_cached(s, limits, &mut cache)
}

pub(crate) fn f_polynomial_torus_cached(
    s: &FigureMultiset,
    limits: &Limits,
    cache: &mut HashMap<OverlapGraph, u64>,
) -> Result<PlacementPolynomial> {
    let figs = s.expanded();
    Limits::check(
        "figures in one placement problem",
        figs.len(),
        limits.max_figures,
    )?;
    let dim = s.dim().unwrap_or(1);
    let mut coeffs = vec![BigInt::zero(); figs.len() + 1];
    for_each_pair_subset(&figs, |negative, comps| {
        let mut term = BigInt::from(1);
        for c in &comps {
            let v = match cache.get(c) {
                Some(&v) => v,
                None => {
                    let v = enumerate_configurations(c)?.len() as u64;
                    cache.insert(c.clone(), v);
                    v
                }
            };
            term *= v;
        }
        if negative {
            coeffs[comps.len()] -= term;
        } else {
            coeffs[comps.len()] += term;
        }
        Ok(())
    })?;
    let poly = divide_by_labels(
        Poly::from_coeffs(coeffs.into_iter().map(rat_from_int).collect()),
        s,
    )?;
    Ok(PlacementPolynomial {
        poly,
        variable: Variable::TorusVolume { dim },
        n0: torus_n0(s),
    })
}

/// Side length from which the torus placement polynomial of `s` is exact.
pub fn torus_n0(s: &FigureMultiset) -> u64 {
    1 + 2 * s
        .entries()
        .iter()
        .map(|(f, m)| *m as u64 * (f.extent().girth + 1))
        .sum::<u64>()
}

/// `f_S` on the box `L^d_n` as a polynomial in the side length `n`.
pub fn f_polynomial_box(s: &FigureMultiset, limits: &Limits) -> Result<PlacementPolynomial> {
    let figs = s.expanded();
    Limits::check(
        "figures in one placement problem",
        figs.len(),
        limits.max_figures,
    )?;
    let mut cache: HashMap<OverlapGraph, (Poly, u64)> = HashMap::new();
    let mut total = Poly::zero();
    let mut n0 = 1;
    for_each_pair_subset(&figs, |negative, comps| {
        let mut term = Poly::one();
        for c in &comps {
            if !cache.contains_key(c) {
                cache.insert(c.clone(), box_component(c)?);
            }
            let (p, span) = &cache[c];
            n0 = n0.max(*span);
            term = &term * p;
        }
        total = if negative {
            &total - &term
        } else {
            &total + &term
        };
        Ok(())
    })?;
    Ok(PlacementPolynomial {
        poly: divide_by_labels(total, s)?,
        variable: Variable::Side,
        n0,
    })
}

/// `sum_c prod_i (n - g_i(c))` over the configurations of a connected graph,
/// with the largest span seen.
fn box_component(g: &OverlapGraph) -> Result<(Poly, u64)> {
    let mut acc = Poly::zero();
    let mut widest = 0;
    for c in enumerate_configurations(g)? {
        let spans = c.spans(g);
        widest = widest.max(spans.iter().copied().max().unwrap_or(0));
        let term = spans.iter().fold(Poly::one(), |acc, &s| {
            &acc * &Poly::from_ints(&[-(s as i64), 1])
        });
        acc = &acc + &term;
    }
    Ok((acc, widest))
}

/// `p_0 .. p_K`: `p_k` sums the placement polynomial over every multiset of
/// catalog figures of total weight `k`.
pub fn p_sequence_via_multisets(
    catalog: &Catalog,
    k_max: usize,
    limits: &Limits,
) -> Result<SequenceTable> {
    Limits::check("maximum weight", k_max, limits.max_weight)?;
    let mut cache = HashMap::new();
    let mut polys = vec![Poly::one()];
    for k in 1..=k_max {
        let mut pk = Poly::zero();
        for ms in catalog.multisets_of_weight(k) {
            pk = &pk + &f_polynomial_torus_cached(&ms, limits, &mut cache)?.poly;
        }
        polys.push(pk);
    }
    Ok(SequenceTable { polys })
}

/// Brute-force `p_k` at side length `n`: summed oracle counts over the same
/// multisets.
pub fn brute_sequence_value(catalog: &Catalog, k: usize, n: u64, limits: &Limits) -> Result<u128> {
    catalog
        .multisets_of_weight(k)
        .iter()
        .map(|ms| brute_count_torus(ms, n, limits))
        .sum()
}

/// Converts an exact count into a rational for comparison with polynomials.
pub fn count_as_rational(c: u128) -> Rational {
    rat_from_int(BigInt::from(c))
}

/// The exact integer value of `p` at side `n`, if it is one.
pub fn integer_value_at(p: &PlacementPolynomial, n: u64) -> Option<i128> {
    let v = p.eval_at_side(n);
    v.is_integer().then(|| v.to_integer().to_i128()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{poly_interpolate, rat};
    use crate::figures::Point;

    fn h() -> Figure {
        Figure::domino(2, 0)
    }
    fn v() -> Figure {
        Figure::domino(2, 1)
    }
    fn ms(figs: &[Figure]) -> FigureMultiset {
        FigureMultiset::from_figures(figs.iter().cloned()).unwrap()
    }
    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn torus_oracle_examples() {
        assert_eq!(brute_count_torus(&ms(&[h()]), 5, &l()).unwrap(), 25);
        assert_eq!(brute_count_torus(&ms(&[h(), v()]), 5, &l()).unwrap(), 525);
        assert_eq!(brute_count_torus(&ms(&[h(), h()]), 5, &l()).unwrap(), 275);
        assert_eq!(brute_count_torus(&ms(&[]), 5, &l()).unwrap(), 1);
        // a domino on T_1 collides with itself
        assert_eq!(brute_count_torus(&ms(&[h()]), 1, &l()).unwrap(), 0);
    }

    #[test]
    fn torus_oracle_matches_naive_pair_count() {
        // independent check: all ordered pairs minus overlapping ones, halved
        for n in 3..7u64 {
            let mut ordered = 0u64;
            for a in 0..n * n {
                for b in 0..n * n {
                    let ta = Point::new(vec![(a % n) as i64, (a / n) as i64]);
                    let tb = Point::new(vec![(b % n) as i64, (b / n) as i64]);
                    if !crate::figures::overlaps(
                        &h(),
                        &ta,
                        &h(),
                        &tb,
                        crate::figures::Modulus::Finite(n),
                    )
                    .unwrap()
                    {
                        ordered += 1;
                    }
                }
            }
            assert_eq!(
                brute_count_torus(&ms(&[h(), h()]), n, &l()).unwrap(),
                (ordered / 2) as u128
            );
        }
    }

    #[test]
    fn box_oracle_examples() {
        assert_eq!(brute_count_box(&ms(&[h()]), 5, &l()).unwrap(), 20);
        assert_eq!(brute_count_box(&ms(&[h()]), 1, &l()).unwrap(), 0);
        // 2x2 box: H at rows 0/1, V at columns 0/1, every pair meets
        assert_eq!(brute_count_box(&ms(&[h(), v()]), 2, &l()).unwrap(), 0);
        assert_eq!(brute_count_box(&ms(&[h(), h()]), 2, &l()).unwrap(), 1);
    }

    #[test]
    fn oracle_budget_is_enforced() {
        let tight = Limits {
            brute_iterations: 100,
            ..Limits::default()
        };
        let err = brute_count_torus(&ms(&[h(), v()]), 5, &tight).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn consistent_count_examples() {
        let g0 = OverlapGraph::new(vec![h(), v()], []).unwrap();
        assert_eq!(count_consistent_torus(&g0, 5, &l()).unwrap(), 625);
        let ghv = OverlapGraph::new(vec![h(), v()], [(0, 1)]).unwrap();
        assert_eq!(count_consistent_torus(&ghv, 5, &l()).unwrap(), 100);
        let ghh = OverlapGraph::new(vec![h(), h()], [(0, 1)]).unwrap();
        assert_eq!(count_consistent_torus(&ghh, 5, &l()).unwrap(), 75);
    }

    #[test]
    fn torus_polynomial_examples() {
        let p = f_polynomial_torus(&ms(&[h()]), &l()).unwrap();
        assert_eq!(p.poly, Poly::from_ints(&[0, 1]));
        let p = f_polynomial_torus(&ms(&[h(), v()]), &l()).unwrap();
        assert_eq!(p.poly, Poly::from_ints(&[0, -4, 1]));
        assert_eq!(p.n0, 9);
        assert_eq!(p.to_string(), "N^2 - 4N");
        let p = f_polynomial_torus(&ms(&[h(), h()]), &l()).unwrap();
        assert_eq!(
            p.poly,
            Poly::from_coeffs(vec![rat(0, 1), rat(-3, 2), rat(1, 2)])
        );
        assert_eq!(p.eval_at_side(5), rat(275, 1));
        assert_eq!(
            f_polynomial_torus(&ms(&[]), &l()).unwrap().poly,
            Poly::one()
        );
    }

    #[test]
    fn torus_polynomials_match_oracle_from_n0() {
        let sq = Figure::with_auto_edges(vec![
            Point::new(vec![0, 0]),
            Point::new(vec![1, 0]),
            Point::new(vec![1, 1]),
        ])
        .unwrap();
        for set in [
            vec![h(), v()],
            vec![h(), h()],
            vec![sq.clone(), h()],
            vec![v(), v(), h()],
        ] {
            let s = ms(&set);
            let p = f_polynomial_torus(&s, &l()).unwrap();
            assert!(p.poly.is_integer_valued());
            for n in p.n0..p.n0 + 2 {
                let brute = brute_count_torus(&s, n, &l()).unwrap();
                assert_eq!(p.eval_at_side(n), count_as_rational(brute), "{set:?} n={n}");
            }
        }
    }

    #[test]
    fn box_polynomial_examples() {
        let p = f_polynomial_box(&ms(&[h()]), &l()).unwrap();
        assert_eq!(p.poly, Poly::from_ints(&[0, -1, 1]));
        assert_eq!(p.to_string(), "n^2 - n");
        assert_eq!(
            f_polynomial_box(&ms(&[v()]), &l()).unwrap().poly,
            Poly::from_ints(&[0, -1, 1])
        );
        for n in 1..=8 {
            assert_eq!(
                p.eval_at_side(n),
                count_as_rational(brute_count_box(&ms(&[h()]), n, &l()).unwrap())
            );
        }
    }

    #[test]
    fn box_polynomial_two_dominoes_matches_interpolated_oracle() {
        let s = ms(&[h(), h()]);
        let p = f_polynomial_box(&s, &l()).unwrap();
        assert_eq!(p.poly.degree(), Some(4));
        let samples: Vec<(i64, Rational)> = (4..=8)
            .map(|n| {
                (
                    n as i64,
                    count_as_rational(brute_count_box(&s, n, &l()).unwrap()),
                )
            })
            .collect();
        assert_eq!(poly_interpolate(&samples).unwrap(), p.poly);
        for n in p.n0..=7 {
            assert_eq!(
                p.eval_at_side(n),
                count_as_rational(brute_count_box(&s, n, &l()).unwrap())
            );
        }
    }

    #[test]
    fn interpolating_pair_counts_gives_sequence_term() {
        // p_2 for the domino pair catalog: {H,H} + {V,V} + {H,V}
        let total = |n: u64| {
            let c = brute_count_torus(&ms(&[h(), h()]), n, &l()).unwrap()
                + brute_count_torus(&ms(&[v(), v()]), n, &l()).unwrap()
                + brute_count_torus(&ms(&[h(), v()]), n, &l()).unwrap();
            count_as_rational(c)
        };
        let pts: Vec<(i64, Rational)> = [5u64, 6, 7]
            .iter()
            .map(|&n| ((n * n) as i64, total(n)))
            .collect();
        assert_eq!(pts[0].1, rat(1075, 1));
        assert_eq!(
            poly_interpolate(&pts).unwrap(),
            Poly::from_ints(&[0, -7, 2])
        );
    }

    #[test]
    fn guard_on_figure_count() {
        let s = FigureMultiset::new([(h(), 7)]).unwrap();
        assert!(matches!(
            f_polynomial_torus(&s, &l()),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
