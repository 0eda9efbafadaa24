use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::figures::{Modulus, Point};

/// A unit edge from `base` to `base + e_axis` (taken mod `n` on a torus).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeEdge {
    pub base: Point,
    pub axis: usize,
}

impl LatticeEdge {
    pub fn new(base: Point, axis: usize) -> Self {
        LatticeEdge { base, axis }
    }

    /// The edge joining `a` and `b`, which must differ by one unit step
    /// (mod `n` on a torus of side at least 3).
    pub fn from_endpoints(a: &Point, b: &Point, modulus: Modulus) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        let step = |from: &Point, to: &Point| -> Option<usize> {
            let mut axis = None;
            for (i, (x, y)) in from.0.iter().zip(&to.0).enumerate() {
                let diff = match modulus {
                    Modulus::Infinite => y - x,
                    Modulus::Finite(n) => (y - x).rem_euclid(n as i64),
                };
                match diff {
                    0 => {}
                    1 if axis.is_none() => axis = Some(i),
                    _ => return None,
                }
            }
            axis
        };
        let (a, b) = match modulus {
            Modulus::Finite(n) => (a.reduce(n), b.reduce(n)),
            Modulus::Infinite => (a.clone(), b.clone()),
        };
        if let Some(axis) = step(&a, &b) {
            Ok(LatticeEdge::new(a, axis))
        } else if let Some(axis) = step(&b, &a) {
            Ok(LatticeEdge::new(b, axis))
        } else {
            Err(Error::InvalidArgument(format!(
                "{a} and {b} are not joined by a unit edge"
            )))
        }
    }

    pub fn head(&self, modulus: Modulus) -> Point {
        let mut p = self.base.clone();
        p.0[self.axis] += 1;
        match modulus {
            Modulus::Finite(n) => p.reduce(n),
            Modulus::Infinite => p,
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

impl fmt::Display for LatticeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+e{}", self.base, self.axis + 1)
    }
}

/// The natural total order on the edges of `T^d_n` or `T^d_inf`.
///
/// Edges along higher axes come first, so every edge parallel to the first
/// axis comes last. Within an axis, edges are compared by their projection
/// (the coordinates other than the edge's own axis, lexicographically), then
/// by the coordinate along the edge. On a finite torus coordinates are the
/// representatives in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaturalEdgeOrder {
    pub dim: usize,
    pub modulus: Modulus,
}

impl NaturalEdgeOrder {
    pub fn new(dim: usize, modulus: Modulus) -> Self {
        NaturalEdgeOrder { dim, modulus }
    }

    /// Sort key realising the order; comparing keys compares edges.
    pub fn key(&self, e: &LatticeEdge) -> EdgeKey {
        let base = match self.modulus {
            Modulus::Finite(n) => e.base.reduce(n),
            Modulus::Infinite => e.base.clone(),
        };
        let mut coords = Vec::with_capacity(self.dim);
        coords.extend(
            base.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != e.axis)
                .map(|(_, &c)| c),
        );
        coords.push(base.0[e.axis]);
        EdgeKey {
            rev_axis: self.dim - 1 - e.axis,
            coords,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    rev_axis: usize,
    coords: Vec<i64>,
}

pub fn edge_compare(
    e1: &LatticeEdge,
    e2: &LatticeEdge,
    order: &NaturalEdgeOrder,
) -> Result<Ordering> {
    for e in [e1, e2] {
        if e.dim() != order.dim || e.axis >= order.dim {
            return Err(Error::DimensionMismatch {
                expected: order.dim,
                got: e.dim(),
            });
        }
    }
    Ok(order.key(e1).cmp(&order.key(e2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Point {
        Point::new(c.to_vec())
    }
    fn edge(a: &[i64], b: &[i64]) -> LatticeEdge {
        LatticeEdge::from_endpoints(&p(a), &p(b), Modulus::Infinite).unwrap()
    }

    #[test]
    fn compare_examples() {
        let o = NaturalEdgeOrder::new(2, Modulus::Infinite);
        let vertical = edge(&[9, 9], &[9, 10]);
        let horizontal = edge(&[-4, -7], &[-3, -7]);
        assert_eq!(
            edge_compare(&vertical, &horizontal, &o).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            edge_compare(&edge(&[0, 0], &[1, 0]), &edge(&[5, 1], &[6, 1]), &o).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            edge_compare(&edge(&[0, 0], &[1, 0]), &edge(&[3, 0], &[4, 0]), &o).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            edge_compare(&edge(&[1, 0], &[0, 0]), &edge(&[0, 0], &[1, 0]), &o).unwrap(),
            Ordering::Equal
        );
        let o3 = NaturalEdgeOrder::new(3, Modulus::Infinite);
        assert!(edge_compare(&vertical, &vertical, &o3).is_err());
    }

    #[test]
    fn finite_endpoints_wrap() {
        let m = Modulus::Finite(5);
        let e = LatticeEdge::from_endpoints(&p(&[4, 2]), &p(&[0, 2]), m).unwrap();
        assert_eq!(e, LatticeEdge::new(p(&[4, 2]), 0));
        assert_eq!(e.head(m), p(&[0, 2]));
        assert!(LatticeEdge::from_endpoints(&p(&[0, 0]), &p(&[2, 0]), m).is_err());
    }

    fn arb_edge(d: usize) -> impl Strategy<Value = LatticeEdge> {
        (prop::collection::vec(-6i64..6, d), 0..d)
            .prop_map(|(c, a)| LatticeEdge::new(Point::new(c), a))
    }

    proptest! {
        #[test]
        fn strict_total_order(a in arb_edge(3), b in arb_edge(3), c in arb_edge(3)) {
            let o = NaturalEdgeOrder::new(3, Modulus::Infinite);
            let ab = edge_compare(&a, &b, &o).unwrap();
            prop_assert_eq!(ab, edge_compare(&b, &a, &o).unwrap().reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && edge_compare(&b, &c, &o).unwrap() == Ordering::Less {
                prop_assert_eq!(edge_compare(&a, &c, &o).unwrap(), Ordering::Less);
            }
        }

        #[test]
        fn translation_invariant_on_infinite_lattice(a in arb_edge(2), b in arb_edge(2), t in prop::collection::vec(-20i64..20, 2)) {
            let o = NaturalEdgeOrder::new(2, Modulus::Infinite);
            let t = Point::new(t);
            let ta = LatticeEdge::new(a.base.add(&t), a.axis);
            let tb = LatticeEdge::new(b.base.add(&t), b.axis);
            prop_assert_eq!(edge_compare(&a, &b, &o).unwrap(), edge_compare(&ta, &tb, &o).unwrap());
        }

        #[test]
        fn non_first_axis_edges_precede_first_axis(a in arb_edge(3), b in arb_edge(3)) {
            let o = NaturalEdgeOrder::new(3, Modulus::Infinite);
            if a.axis != 0 && b.axis == 0 {
                prop_assert_eq!(edge_compare(&a, &b, &o).unwrap(), Ordering::Less);
            }
        }
    }
}
