//! Exact rational arithmetic for polynomials in one variable and for
//! truncated power series whose coefficients are such polynomials.

mod poly;
mod series;

pub use poly::{parse_rational, Poly};
pub use series::{
    multinomial_identity_check, series_exp_linear, series_mul, series_pow, TruncSeries,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for `num/den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_from_int<T: Into<BigInt>>(v: T) -> Rational {
    Rational::from_integer(v.into())
}

/// The unique polynomial of degree below `points.len()` through all points.
pub fn poly_interpolate(points: &[(i64, Rational)]) -> Result<Poly> {
    if points.is_empty() {
        return Err(Error::NoSamples);
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateSample(*xi));
        }
    }
    let mut acc = Poly::zero();
    for (j, (xj, yj)) in points.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (m, (xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            basis = &basis * &Poly::from_ints(&[-xm, 1]);
            denom *= rat_from_int(xj - xm);
        }
        acc = &acc + &basis.scale(&(yj / denom));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interpolate_examples() {
        let p = poly_interpolate(&[(1, rat(2, 1)), (2, rat(4, 1))]).unwrap();
        assert_eq!(p, Poly::from_ints(&[0, 2]));
        let z = poly_interpolate(&[(5, rat(0, 1)), (7, rat(0, 1)), (9, rat(0, 1))]).unwrap();
        assert!(z.is_zero());
        assert_eq!(
            poly_interpolate(&[(1, rat(1, 1)), (1, rat(2, 1))]),
            Err(Error::DuplicateSample(1))
        );
        assert_eq!(poly_interpolate(&[]), Err(Error::NoSamples));
    }

    fn small_series(order: usize) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec(-4i64..=4, order + 1)
            .prop_map(move |c| TruncSeries::from_ints(order, &c))
    }

    proptest! {
        #[test]
        fn interpolation_reproduces_points(
            xs in prop::collection::btree_set(-20i64..20, 1..7),
            ys in prop::collection::vec((-50i64..50, 1i64..5), 7),
        ) {
            let pts: Vec<_> = xs.iter().zip(&ys).map(|(&x, &(n, d))| (x, rat(n, d))).collect();
            let p = poly_interpolate(&pts).unwrap();
            prop_assert!(p.degree().is_none_or(|d| d < pts.len()));
            for (x, y) in &pts {
                prop_assert_eq!(&p.eval_int(*x), y);
            }
        }

        #[test]
        fn mul_is_commutative_and_associative(a in small_series(3), b in small_series(3), c in small_series(3)) {
            let ab = series_mul(&a, &b).unwrap();
            prop_assert_eq!(&ab, &series_mul(&b, &a).unwrap());
            let ab_c = series_mul(&ab, &c).unwrap();
            let a_bc = series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(series_mul(&a, &TruncSeries::one(3)).unwrap(), a);
        }

        #[test]
        fn pow_matches_repeated_mul(a in small_series(3), n in 1u64..=6) {
            let mut acc = a.clone();
            for _ in 1..n {
                acc = series_mul(&acc, &a).unwrap();
            }
            prop_assert_eq!(series_pow(&a, n), acc);
        }

        #[test]
        fn exp_is_binomial_type(
            tail in prop::collection::vec((-6i64..=6, 1i64..=4), 3),
        ) {
            let k = 3;
            let mut coeffs = vec![rat(0, 1)];
            coeffs.extend(tail.iter().map(|&(n, d)| rat(n, d)));
            let e = series_exp_linear(&TruncSeries::from_rationals(k, coeffs)).unwrap();
            prop_assert_eq!(e.eval_symbol(&rat(0, 1)), TruncSeries::one(k));
            for a in 0..=k as i64 {
                for b in 0..=k as i64 {
                    let lhs = e.eval_symbol(&rat(a + b, 1));
                    let rhs = series_mul(&e.eval_symbol(&rat(a, 1)), &e.eval_symbol(&rat(b, 1))).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
