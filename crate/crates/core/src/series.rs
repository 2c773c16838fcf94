//! Truncated Taylor series `f(z) = Σ a_v (z − ζ)^v` and the built-in
//! coefficient oracles.

use crate::error::{PadeError, Result};
use crate::poly::Polynomial;
use crate::scalar::{Float, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<S> {
    center: S,
    coeffs: Vec<S>,
}

impl<S: Scalar> PowerSeries<S> {
    pub fn new(center: S, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(PadeError::InvalidArgument(
                "power series needs at least one coefficient".into(),
            ));
        }
        Ok(PowerSeries { center, coeffs })
    }

    pub fn center(&self) -> &S {
        &self.center
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Highest available coefficient index.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_i`, with `a_i = 0` for negative `i`.
    pub fn coeff(&self, i: isize) -> Result<S> {
        if i < 0 {
            return Ok(S::zero());
        }
        self.coeffs
            .get(i as usize)
            .cloned()
            .ok_or(PadeError::InsufficientCoefficients {
                needed: i as usize,
                available: self.order(),
            })
    }

    pub(crate) fn require(&self, index: usize) -> Result<()> {
        if index > self.order() {
            Err(PadeError::InsufficientCoefficients {
                needed: index,
                available: self.order(),
            })
        } else {
            Ok(())
        }
    }

    pub fn to_float(&self) -> PowerSeries<Float> {
        PowerSeries {
            center: self.center.to_c64(),
            coeffs: self.coeffs.iter().map(Scalar::to_c64).collect(),
        }
    }

    /// Applies `f` to every coefficient, keeping the center.
    pub fn map_coeffs(&self, f: impl Fn(usize, &S) -> S) -> Self {
        PowerSeries {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().enumerate().map(|(i, c)| f(i, c)).collect(),
        }
    }
}

/// First `n + 1` Taylor coefficients of `p` about `center`.
pub fn series_of_polynomial<S: Scalar>(p: &Polynomial<S>, center: &S, n: usize) -> PowerSeries<S> {
    let shifted = p.shift(center);
    PowerSeries {
        center: center.clone(),
        coeffs: (0..=n).map(|k| shifted.coeff(k)).collect(),
    }
}

/// `S_k`, in the `(z − ζ)` variable; `k < 0` gives the zero polynomial.
pub fn partial_sum<S: Scalar>(f: &PowerSeries<S>, k: isize) -> Result<Polynomial<S>> {
    if k < 0 {
        return Ok(Polynomial::zero());
    }
    f.require(k as usize)?;
    Ok(Polynomial::new(f.coeffs[..=k as usize].to_vec()))
}

/// `a_v = e^ζ / v!`. The exact realization supports only `ζ = 0`.
pub fn exp_series<S: Scalar>(center: &S, n: usize) -> Result<PowerSeries<S>> {
    let e = center
        .exp()
        .ok_or_else(|| PadeError::Unsupported("exp coefficients at this center in exact mode".into()))?;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(e);
    for v in 1..=n {
        let prev = coeffs[v - 1].clone();
        coeffs.push(prev / S::from_i64(v as i64));
    }
    PowerSeries::new(center.clone(), coeffs)
}

/// Coefficients of `1/(1 − z)` about `ζ`: `a_v = (1 − ζ)^{−(v+1)}`.
pub fn geometric_series<S: Scalar>(center: &S, n: usize) -> Result<PowerSeries<S>> {
    let gap = S::one() - center.clone();
    if gap.negligible(1.0, f64::EPSILON) {
        return Err(PadeError::SingularCenter);
    }
    let inv = S::one() / gap;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(inv.clone());
    for v in 1..=n {
        let prev = coeffs[v - 1].clone();
        coeffs.push(prev * inv.clone());
    }
    PowerSeries::new(center.clone(), coeffs)
}
