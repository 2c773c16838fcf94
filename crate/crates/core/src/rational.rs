//! Reduced rational functions `A/B`, their Taylor developments about any
//! center, and the Padé-table membership law for rational functions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::approximant::{hankel_determinant, pade_from_series, NormalityVerdict};
use crate::error::{PadeError, Result};
use crate::poly::{divide_series, is_pole, quotient_derivative, quotient_value, Polynomial};
use crate::scalar::{Float, Scalar};
use crate::series::PowerSeries;

/// Rational function with coprime numerator and monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
}

impl<S: Scalar> RationalFn<S> {
    /// Divides out the exact gcd and makes the denominator monic.
    pub fn reduce(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(PadeError::ZeroDenominator);
        }
        if !S::EXACT {
            return Err(PadeError::ExactRequired("rational reduction"));
        }
        let g = num.gcd(&den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        Self::from_coprime(num, den)
    }

    /// Trusts the caller that `num` and `den` share no factor; only the
    /// monic normalization is applied.
    pub fn from_coprime(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        let lead = den.leading().cloned().ok_or(PadeError::ZeroDenominator)?;
        let inv = S::one() / lead;
        Ok(RationalFn {
            num: num.scale(&inv),
            den: den.monic(),
        })
    }

    pub fn polynomial(p: Polynomial<S>) -> Self {
        RationalFn {
            num: p,
            den: Polynomial::constant(S::one()),
        }
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }
    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    /// λ; `None` for the zero function.
    pub fn num_degree(&self) -> Option<usize> {
        self.num.degree()
    }

    /// μ
    pub fn den_degree(&self) -> usize {
        self.den.degree().expect("denominator is nonzero")
    }

    pub fn eval(&self, z: &S) -> Result<S> {
        quotient_value(&self.num, &self.den, z)
    }

    pub fn derivative_at(&self, z: &S, order: usize) -> Result<S> {
        quotient_derivative(&self.num, &self.den, z, order)
    }

    /// Exact check that gcd(A, B) is constant.
    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.num.gcd(&self.den)?.degree() == Some(0))
    }

    pub fn to_float(&self) -> RationalFn<Float> {
        RationalFn {
            num: self.num.to_float(),
            den: self.den.to_float(),
        }
    }

    pub fn cast<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RationalFn<T> {
        RationalFn {
            num: self.num.cast(f),
            den: self.den.cast(f),
        }
    }

    pub fn denominator_roots(&self) -> Vec<Root<S>> {
        polynomial_roots(&self.den)
    }
}

pub fn reduce<S: Scalar>(num: Polynomial<S>, den: Polynomial<S>) -> Result<RationalFn<S>> {
    RationalFn::reduce(num, den)
}

/// Taylor coefficients `a_0..a_n` of `f` about `center`, from recentering
/// `A` and `B` and dividing the series.
pub fn taylor_at<S: Scalar>(f: &RationalFn<S>, center: &S, n: usize) -> Result<PowerSeries<S>> {
    let a = f.num.shift(center);
    let b = f.den.shift(center);
    if is_pole(&a.coeff(0), &b.coeff(0)) {
        return Err(PadeError::CenterOnPole);
    }
    let a: Vec<S> = (0..=n).map(|k| a.coeff(k)).collect();
    let b: Vec<S> = (0..=n).map(|k| b.coeff(k)).collect();
    PowerSeries::new(center.clone(), divide_series(&a, &b, n))
}

/// A zero of a polynomial: always a float value, plus the closed-form value
/// when degree ≤ 2 allows one in the realization.
#[derive(Debug, Clone, PartialEq)]
pub struct Root<S> {
    pub value: Complex64,
    pub closed_form: Option<S>,
}

/// Numeric root tolerance after Newton polishing.
pub const ROOT_TOL: f64 = 1e-10;

/// Zeros with multiplicity. Degree 1 is solved exactly; degree 2 in closed
/// form when the discriminant has a square root in the realization; higher
/// degrees via companion-matrix eigenvalues polished by Newton steps.
pub fn polynomial_roots<S: Scalar>(p: &Polynomial<S>) -> Vec<Root<S>> {
    match p.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => {
            let r = -p.coeff(0) / p.coeff(1);
            vec![Root { value: r.to_c64(), closed_form: Some(r) }]
        }
        Some(2) => {
            let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
            let disc = b.clone() * b.clone() - S::from_i64(4) * a.clone() * c;
            match disc.sqrt_closed_form() {
                Some(sd) => {
                    let two_a = S::from_i64(2) * a;
                    [sd.clone(), -sd]
                        .into_iter()
                        .map(|s| {
                            let r = (-b.clone() + s) / two_a.clone();
                            Root { value: r.to_c64(), closed_form: Some(r) }
                        })
                        .collect()
                }
                None => numeric_roots(&p.to_float()),
            }
        }
        Some(_) => numeric_roots(&p.to_float()),
    }
}

fn numeric_roots<S: Scalar>(p: &Polynomial<Float>) -> Vec<Root<S>> {
    let monic = p.monic();
    let n = monic.degree().unwrap_or(0);
    let companion = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -monic.coeff(i)
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = companion
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular");
    let dp = monic.derivative();
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..8 {
                let d = dp.eval(&z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = monic.eval(&z) / d;
                z -= step;
                if step.norm() <= ROOT_TOL * (1.0 + z.norm()) {
                    break;
                }
            }
            Root { value: z, closed_form: None }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    Member,
    NotMember,
    Undetermined,
}

/// Membership predicted for `P/Q` reduced with `deg P = λ`, `deg Q = μ`:
/// member at `(λ, μ)`, along `q = μ` for `p > λ` and along `p = λ` for
/// `q > μ`; not a member when `p > λ` and `q > μ`; silent otherwise.
pub fn theorem21_predict(lambda: Option<usize>, mu: usize, p: usize, q: usize) -> Prediction {
    let Some(lambda) = lambda else {
        return Prediction::Undetermined;
    };
    use std::cmp::Ordering::*;
    match (p.cmp(&lambda), q.cmp(&mu)) {
        (Equal, Equal) | (Greater, Equal) | (Equal, Greater) => Prediction::Member,
        (Greater, Greater) => Prediction::NotMember,
        _ => Prediction::Undetermined,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reproduction {
    pub points_checked: usize,
    pub max_residual: f64,
    /// Every residual is literally zero (exact realization only).
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem21Report<S> {
    pub p: usize,
    pub q: usize,
    pub lambda: Option<usize>,
    pub mu: usize,
    pub predicted: Prediction,
    pub verdict: NormalityVerdict<S>,
    /// `None` when the prediction is undetermined.
    pub agrees: Option<bool>,
    pub reproduction: Option<Reproduction>,
}

/// Compares the observed Hankel verdict for `f` about `center` against
/// [`theorem21_predict`]. For predicted-and-observed members the approximant
/// is also compared with `f` at `points` (poles of either side are skipped).
pub fn theorem21_check<S: Scalar>(
    f: &RationalFn<S>,
    center: &S,
    p: usize,
    q: usize,
    points: &[S],
) -> Result<Theorem21Report<S>> {
    let series = taylor_at(f, center, p + q)?;
    let verdict = hankel_determinant(&series, p, q)?;
    let lambda = f.num_degree();
    let mu = f.den_degree();
    let predicted = theorem21_predict(lambda, mu, p, q);
    let agrees = match predicted {
        Prediction::Member => Some(verdict.member),
        Prediction::NotMember => Some(!verdict.member),
        Prediction::Undetermined => None,
    };
    let reproduction = if predicted == Prediction::Member && verdict.member {
        let approx = pade_from_series(&series, p, q)?;
        let mut checked = 0;
        let mut max_residual: f64 = 0.0;
        let mut exact = S::EXACT;
        for z in points {
            let (Ok(want), Ok(got)) = (f.eval(z), approx.evaluate(z)) else {
                continue;
            };
            let diff = got - want;
            checked += 1;
            max_residual = max_residual.max(diff.modulus());
            exact &= diff.is_zero();
        }
        Some(Reproduction { points_checked: checked, max_residual, exact })
    } else {
        None
    };
    Ok(Theorem21Report { p, q, lambda, mu, predicted, verdict, agrees, reproduction })
}
