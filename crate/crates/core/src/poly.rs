use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{PadeError, Result};
use crate::scalar::{Float, Scalar};

/// Relative threshold below which a float denominator value counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Dense univariate polynomial, lowest power first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, z: &S) -> S {
        S::horner(&self.coeffs, z)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Coefficients of `w -> P(center + w)`.
    pub fn shift(&self, center: &S) -> Self {
        let mut b = self.coeffs.clone();
        let n = b.len();
        if center.is_zero() || n < 2 {
            return self.clone();
        }
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let t = b[j + 1].clone() * center.clone();
                b[j] = b[j].clone() + t;
            }
        }
        Self::new(b)
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(PadeError::ZeroDenominator)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dj.clone();
            }
            rem[k + dd] = S::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = S::one() / lead.clone();
                let mut out = self.scale(&inv);
                if let Some(last) = out.coeffs.last_mut() {
                    *last = S::one();
                }
                out
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm. Only
    /// meaningful in the exact realization, where remainder tests are literal.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if !S::EXACT {
            return Err(PadeError::ExactRequired("polynomial gcd"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn to_float(&self) -> Polynomial<Float> {
        Polynomial::new(self.coeffs.iter().map(Scalar::to_c64).collect())
    }

    pub fn cast<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// ℓ-th derivative at `z` (not a quotient, so never a pole).
    pub fn derivative_at(&self, z: &S, order: usize) -> S {
        self.nth_derivative(order).eval(z)
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: Self) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// Pole test shared by every quotient evaluation: literal in exact mode,
/// `|den| < POLE_TOL * (1 + |num|)` in float mode.
pub(crate) fn is_pole<S: Scalar>(num: &S, den: &S) -> bool {
    if S::EXACT {
        den.is_zero()
    } else {
        den.modulus() < POLE_TOL * (1.0 + num.modulus())
    }
}

/// First `n + 1` coefficients of `num / den` as power series; `den[0]` must be
/// nonzero.
pub(crate) fn divide_series<S: Scalar>(num: &[S], den: &[S], n: usize) -> Vec<S> {
    let d0 = den[0].clone();
    let mut out: Vec<S> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.get(k).cloned().unwrap_or_else(S::zero);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc = acc - den[j].clone() * out[k - j].clone();
        }
        out.push(acc / d0.clone());
    }
    out
}

/// ℓ-th derivative of `num(w)/den(w)` at `w = at`, by local power-series
/// division to order ℓ followed by multiplication by ℓ!.
pub(crate) fn quotient_derivative<S: Scalar>(
    num: &Polynomial<S>,
    den: &Polynomial<S>,
    at: &S,
    order: usize,
) -> Result<S> {
    if order == 0 {
        return quotient_value(num, den, at);
    }
    let n_local = num.shift(at);
    let d_local = den.shift(at);
    let d0 = d_local.coeff(0);
    if is_pole(&n_local.coeff(0), &d0) {
        return Err(PadeError::PoleAtPoint);
    }
    let n_coeffs: Vec<S> = (0..=order).map(|k| n_local.coeff(k)).collect();
    let d_coeffs: Vec<S> = (0..=order).map(|k| d_local.coeff(k)).collect();
    let series = divide_series(&n_coeffs, &d_coeffs, order);
    Ok(series[order].clone() * S::factorial(order))
}

/// Value of `num(w)/den(w)` with the shared pole test.
pub(crate) fn quotient_value<S: Scalar>(num: &Polynomial<S>, den: &Polynomial<S>, at: &S) -> Result<S> {
    let n = num.eval(at);
    let d = den.eval(at);
    if is_pole(&n, &d) {
        return Err(PadeError::PoleAtPoint);
    }
    Ok(n / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, Exact};
    use proptest::prelude::*;

    fn ex(c: &[i64]) -> Polynomial<Exact> {
        Polynomial::from_ints(c)
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(ex(&[0, 0]).degree(), None);
        assert_eq!(ex(&[3]).degree(), Some(0));
        assert_eq!(ex(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn shift_matches_binomial_expansion() {
        // 3z^3 about 2: 3(2+w)^3 = 24 + 36w + 18w^2 + 3w^3
        let p = ex(&[0, 0, 0, 3]);
        assert_eq!(p.shift(&Exact::from_i64(2)), ex(&[24, 36, 18, 3]));
    }

    #[test]
    fn div_rem_and_gcd() {
        // z^2 - 1 = (z + 1)(z - 1)
        let (q, r) = ex(&[-1, 0, 1]).div_rem(&ex(&[1, 1])).unwrap();
        assert_eq!(q, ex(&[-1, 1]));
        assert!(r.is_zero());
        let g = ex(&[-1, 0, 1]).gcd(&ex(&[2, 2])).unwrap();
        assert_eq!(g, ex(&[1, 1]));
        let g = ex(&[1, 0, 1]).gcd(&ex(&[1, 1])).unwrap();
        assert_eq!(g, ex(&[1]));
    }

    #[test]
    fn gcd_refuses_float_inputs() {
        let p: Polynomial<Float> = Polynomial::from_ints(&[1, 1]);
        assert!(matches!(p.gcd(&p), Err(PadeError::ExactRequired(_))));
    }

    #[test]
    fn quotient_derivative_of_geometric() {
        // d/dz 1/(1-z) = 1/(1-z)^2, d^2 = 2/(1-z)^3; at z = 1/2: 4 and 16
        let num = ex(&[1]);
        let den = ex(&[1, -1]);
        let half = Exact::from_ratio(1, 2);
        assert_eq!(quotient_derivative(&num, &den, &half, 1).unwrap(), Exact::from_i64(4));
        assert_eq!(quotient_derivative(&num, &den, &half, 2).unwrap(), Exact::from_i64(16));
        assert_eq!(
            quotient_derivative(&num, &den, &Exact::from_i64(1), 0),
            Err(PadeError::PoleAtPoint)
        );
    }

    fn small_exact() -> impl Strategy<Value = Exact> {
        (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6).prop_map(|(a, b, c, d)| exact((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn recentering_round_trips(coeffs in prop::collection::vec(small_exact(), 0..7), c in small_exact()) {
            let p = Polynomial::new(coeffs);
            let back = p.shift(&c).shift(&-c);
            prop_assert_eq!(back, p);
        }

        #[test]
        fn shifted_evaluation_agrees(coeffs in prop::collection::vec(small_exact(), 0..7), c in small_exact(), w in small_exact()) {
            let p = Polynomial::new(coeffs);
            prop_assert_eq!(p.shift(&c).eval(&w), p.eval(&(c + w)));
        }

        #[test]
        fn division_identity(a in prop::collection::vec(small_exact(), 0..7), b in prop::collection::vec(small_exact(), 1..5)) {
            let a = Polynomial::new(a);
            let b = Polynomial::new(b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
