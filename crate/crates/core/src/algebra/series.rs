use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Power series in `x` truncated modulo `x^(order+1)`, with polynomial
/// coefficients (polynomials in the formal symbol `N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            order,
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// Builds a series from coefficients; missing terms are zero and terms
    /// past `order` are dropped.
    pub fn new(order: usize, mut coeffs: Vec<Poly>) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        TruncSeries { order, coeffs }
    }

    pub fn from_rationals(order: usize, coeffs: Vec<Rational>) -> Self {
        TruncSeries::new(order, coeffs.into_iter().map(Poly::constant).collect())
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        TruncSeries::new(order, coeffs.iter().map(|&c| Poly::from_int(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    /// Substitutes `N = value` into every coefficient.
    pub fn eval_symbol(&self, value: &Rational) -> TruncSeries {
        TruncSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| Poly::constant(p.eval(value)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> TruncSeries {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
        }
    }

    fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn mul_unchecked(&self, rhs: &TruncSeries) -> TruncSeries {
        let k = self.order;
        let mut out = vec![Poly::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TruncSeries {
            order: k,
            coeffs: out,
        }
    }
}

/// Cauchy product truncated at the common order.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    if a.order != b.order {
        return Err(Error::OrderMismatch {
            left: a.order,
            right: b.order,
        });
    }
    Ok(a.mul_unchecked(b))
}

/// `a^n` by repeated squaring; `a^0 = 1`.
pub fn series_pow(a: &TruncSeries, mut n: u64) -> TruncSeries {
    let mut acc = TruncSeries::one(a.order);
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul_unchecked(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul_unchecked(&base);
        }
    }
    acc
}

/// `exp(N * a(x))` where `a` has rational coefficients and no constant term.
///
/// The result's `x^i` coefficient is a polynomial in `N`, with the constant
/// coefficient fixed at 1.
pub fn series_exp_linear(a: &TruncSeries) -> Result<TruncSeries> {
    if !a.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    if let Some(i) = a.coeffs.iter().position(|p| !p.is_constant()) {
        return Err(Error::NonConstantCoefficient(i));
    }
    let k = a.order;
    let na = a.scale(&Poly::var());
    // sum_{r<=k} (N a)^r / r!, exact because (N a)^r vanishes mod x^{k+1} for r > k
    let mut out = TruncSeries::one(k);
    let mut term = TruncSeries::one(k);
    for r in 1..=k {
        term = term.mul_unchecked(&na);
        let inv = Poly::constant(Rational::new(One::one(), r.into()));
        term = term.scale(&inv);
        if term.coeffs.iter().all(Poly::is_zero) {
            break;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Checks `n^k = sum over compositions (m_1..m_r) of k of k!/(m_1!..m_r!) C(n, r)`.
pub fn multinomial_identity_check(k: u32, n: u32) -> Result<bool> {
    use num_bigint::BigUint;
    if !(1..=12).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..=12, got {k}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let fact = |m: u32| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
    let binom = |n: u32, r: u32| {
        if r > n {
            BigUint::zero()
        } else {
            fact(n) / (fact(r) * fact(n - r))
        }
    };
    let kf = fact(k);
    let mut rhs = BigUint::zero();
    // compositions of k <-> subsets of the k-1 cut points
    for mask in 0u32..(1 << (k - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for cut in 0..k - 1 {
            if mask >> cut & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        let denom = parts.iter().fold(BigUint::one(), |acc, &m| acc * fact(m));
        rhs += &kf / denom * binom(n, parts.len() as u32);
    }
    Ok(BigUint::from(n).pow(k) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn rs(order: usize, c: &[i64]) -> TruncSeries {
        TruncSeries::from_ints(order, c)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            series_mul(&rs(2, &[1, 1]), &rs(2, &[1, -1])).unwrap(),
            rs(2, &[1, 0, -1])
        );
        assert_eq!(
            series_mul(&rs(2, &[1, 2]), &TruncSeries::one(2)).unwrap(),
            rs(2, &[1, 2])
        );
        assert_eq!(
            series_mul(&rs(2, &[1, 2, -5]), &rs(2, &[1, 2, -5])).unwrap(),
            rs(2, &[1, 4, -6])
        );
        assert_eq!(
            series_mul(&rs(2, &[1]), &rs(3, &[1])),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn pow_examples() {
        assert_eq!(series_pow(&rs(2, &[1, 1]), 3), rs(2, &[1, 3, 3]));
        assert_eq!(series_pow(&rs(3, &[4, -2, 9]), 0), TruncSeries::one(3));
        assert_eq!(series_pow(&rs(2, &[1, 2, -5]), 2), rs(2, &[1, 4, -6]));
    }

    #[test]
    fn exp_examples() {
        let zero = TruncSeries::zero(3);
        assert_eq!(series_exp_linear(&zero).unwrap(), TruncSeries::one(3));

        let a = rs(2, &[0, 2, -7]);
        let e = series_exp_linear(&a).unwrap();
        assert_eq!(e.coeff(0), &Poly::one());
        assert_eq!(e.coeff(1), &Poly::from_ints(&[0, 2]));
        assert_eq!(e.coeff(2), &Poly::from_ints(&[0, -7, 2]));

        let e = series_exp_linear(&rs(3, &[0, 1])).unwrap();
        assert_eq!(e.coeff(2), &Poly::monomial(rat(1, 2), 2));
        assert_eq!(e.coeff(3), &Poly::monomial(rat(1, 6), 3));

        assert_eq!(
            series_exp_linear(&rs(2, &[1, 1])),
            Err(Error::NonzeroConstantTerm)
        );
        let nonconst = TruncSeries::new(1, vec![Poly::zero(), Poly::var()]);
        assert_eq!(
            series_exp_linear(&nonconst),
            Err(Error::NonConstantCoefficient(1))
        );
    }

    #[test]
    fn multinomial_examples() {
        assert!(multinomial_identity_check(2, 3).unwrap());
        assert!(multinomial_identity_check(1, 5).unwrap());
        assert!(multinomial_identity_check(5, 4).unwrap());
        assert!(multinomial_identity_check(0, 4).is_err());
        assert!(multinomial_identity_check(13, 4).is_err());
        for k in 1..=6 {
            for n in 1..=6 {
                assert!(multinomial_identity_check(k, n).unwrap(), "k={k} n={n}");
            }
        }
    }
}
