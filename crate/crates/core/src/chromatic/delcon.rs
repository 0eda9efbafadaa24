//! Chromatic polynomials of small graphs by deletion and contraction.

use std::collections::HashMap;

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Chromatic polynomial in `x` of the graph on `0..n_vertices` with the given
/// edges. Parallel edges collapse; any loop makes the polynomial zero.
pub fn chromatic_poly_small(
    n_vertices: usize,
    edges: &[(usize, usize)],
    limits: &Limits,
) -> Result<Poly> {
    Limits::check(
        "graph vertices",
        n_vertices,
        limits.max_chromatic_vertices.min(63),
    )?;
    let mut adj = vec![0u64; n_vertices];
    for &(u, v) in edges {
        if u >= n_vertices || v >= n_vertices {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n_vertices}"
            )));
        }
        if u == v {
            return Ok(Poly::zero());
        }
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut memo = HashMap::new();
    Ok(delcon(adj, &mut memo))
}

/// `x (x-1) ... (x-m+1)`
fn falling_factorial(m: usize) -> Poly {
    (0..m as i64).fold(Poly::one(), |acc, i| {
        acc * (Poly::var() - Poly::from_int(i))
    })
}

fn delcon(mut adj: Vec<u64>, memo: &mut HashMap<Vec<u64>, Poly>) -> Poly {
    // isolated vertices each contribute a factor of x
    let before = adj.len();
    adj = compact(adj, |a| a != 0);
    let isolated = before - adj.len();
    let factor = Poly::var().pow(isolated as u32);
    let m = adj.len();
    if m == 0 {
        return factor;
    }
    let full = (1u64 << m) - 1;
    if adj.iter().enumerate().all(|(i, &a)| a == full & !(1 << i)) {
        return factor * falling_factorial(m);
    }
    if let Some(p) = memo.get(&adj) {
        return factor * p.clone();
    }
    // split off the highest-degree vertex's first neighbour
    let u = (0..m)
        .max_by_key(|&i| adj[i].count_ones())
        .expect("non-empty");
    let v = adj[u].trailing_zeros() as usize;

    let mut deleted = adj.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);

    let mut contracted = deleted.clone();
    let nv = contracted[v];
    contracted[u] |= nv;
    for (w, row) in contracted.iter_mut().enumerate() {
        if nv & (1 << w) != 0 {
            *row |= 1 << u;
        }
    }
    contracted[v] = 0;
    let contracted = remove_vertex(contracted, v);

    let p = delcon(deleted, memo) - delcon(contracted, memo);
    memo.insert(adj, p.clone());
    factor * p
}

/// Drops vertices failing `keep`; callers guarantee dropped vertices have no
/// edges.
fn compact(adj: Vec<u64>, keep: impl Fn(u64) -> bool) -> Vec<u64> {
    let kept: Vec<usize> = (0..adj.len()).filter(|&i| keep(adj[i])).collect();
    if kept.len() == adj.len() {
        return adj;
    }
    kept.iter()
        .map(|&i| {
            kept.iter()
                .enumerate()
                .filter(|&(_, &j)| adj[i] & (1 << j) != 0)
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        })
        .collect()
}

fn remove_vertex(adj: Vec<u64>, v: usize) -> Vec<u64> {
    let n = adj.len();
    (0..n)
        .filter(|&i| i != v)
        .map(|i| {
            let a = adj[i];
            let low = a & ((1 << v) - 1);
            let high = (a >> (v + 1)) << v;
            low | high
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(chromatic_poly_small(1, &[], &l()).unwrap(), Poly::var());
        assert_eq!(
            chromatic_poly_small(3, &cycle(3), &l()).unwrap(),
            Poly::from_ints(&[0, 2, -3, 1])
        );
        assert_eq!(
            chromatic_poly_small(2, &[(0, 0)], &l()).unwrap(),
            Poly::zero()
        );
        // parallel edges collapse
        assert_eq!(
            chromatic_poly_small(2, &[(0, 1), (1, 0)], &l()).unwrap(),
            Poly::from_ints(&[0, -1, 1])
        );
        assert!(chromatic_poly_small(13, &[], &l()).is_err());
    }

    #[test]
    fn cycles_match_closed_form() {
        // (x-1)^n + (-1)^n (x-1)
        for n in 3..10 {
            let xm1 = Poly::var() - Poly::one();
            let sign = if n % 2 == 0 {
                Poly::one()
            } else {
                -&Poly::one()
            };
            let expected = xm1.pow(n as u32) + sign * xm1.clone();
            assert_eq!(chromatic_poly_small(n, &cycle(n), &l()).unwrap(), expected);
        }
    }

    #[test]
    fn trees_and_complete_graphs() {
        // any tree on m vertices: x (x-1)^(m-1)
        let path: Vec<_> = (0..5).map(|i| (i, i + 1)).collect();
        let xm1 = Poly::var() - Poly::one();
        assert_eq!(
            chromatic_poly_small(6, &path, &l()).unwrap(),
            Poly::var() * xm1.pow(5)
        );
        let k5: Vec<_> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        assert_eq!(
            chromatic_poly_small(5, &k5, &l()).unwrap(),
            falling_factorial(5)
        );
    }

    #[test]
    fn brute_force_colourings_agree() {
        // a chorded 4-cycle and a triangle sharing vertex 3: count colourings directly
        let edges = vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 2),
            (3, 4),
            (4, 5),
            (5, 3),
        ];
        let p = chromatic_poly_small(6, &edges, &l()).unwrap();
        for q in 0..5i64 {
            let mut count = 0i64;
            let total = q.pow(6);
            for code in 0..total {
                let c: Vec<i64> = (0..6).map(|i| code / q.pow(i) % q).collect();
                if edges.iter().all(|&(u, v)| c[u] != c[v]) {
                    count += 1;
                }
            }
            assert_eq!(p.eval_int(q), crate::algebra::rat_from_int(count));
        }
    }
}
