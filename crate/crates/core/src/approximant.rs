//! Hankel normality test, Padé construction by a Toeplitz solve, the Jacobi
//! determinant formula as an independent route, order-condition checks and
//! evaluation of approximants and their derivatives.

use crate::error::{PadeError, Result};
use crate::linalg::{determinant, hadamard_bound, solve, Matrix};
use crate::poly::{divide_series, quotient_derivative, quotient_value, Polynomial, POLE_TOL};
use crate::scalar::Scalar;
use crate::series::{partial_sum, PowerSeries};

/// Float-mode singularity threshold, relative to `max(Hadamard bound, 1)`.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Float-mode order-condition tolerance: `|b_v − a_v| <= ORDER_TOL * (1 + |a_v|)`.
pub const ORDER_TOL: f64 = 1e-9;

/// Outcome of the Hankel normality test for a `(p, q)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalityVerdict<S> {
    pub member: bool,
    pub det: S,
    /// Hadamard bound of the Hankel matrix (1 for the empty matrix).
    pub scale: f64,
}

/// The q×q matrix with entries `a_{p−q+1+i+j}`, zero for negative indices.
pub fn hankel_matrix<S: Scalar>(f: &PowerSeries<S>, p: usize, q: usize) -> Result<Matrix<S>> {
    if q == 0 {
        return Ok(Vec::new());
    }
    f.require(p + q - 1)?;
    let base = p as isize - q as isize + 1;
    (0..q)
        .map(|i| (0..q).map(|j| f.coeff(base + (i + j) as isize)).collect())
        .collect()
}

pub fn hankel_determinant<S: Scalar>(f: &PowerSeries<S>, p: usize, q: usize) -> Result<NormalityVerdict<S>> {
    hankel_determinant_with_tol(f, p, q, SINGULAR_TOL)
}

/// Float mode: `member ⟺ |det| > tol · max(scale, 1)`. Exact mode ignores `tol`.
pub fn hankel_determinant_with_tol<S: Scalar>(
    f: &PowerSeries<S>,
    p: usize,
    q: usize,
    tol: f64,
) -> Result<NormalityVerdict<S>> {
    let m = hankel_matrix(f, p, q)?;
    let scale = hadamard_bound(&m);
    let det = determinant(m);
    let member = !det.negligible(scale.max(1.0), tol);
    Ok(NormalityVerdict { member, det, scale })
}

/// `[p/q]_{f,ζ}`: numerator and denominator in powers of `(z − ζ)`, `d_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeApproximant<S> {
    center: S,
    p: usize,
    q: usize,
    num: Polynomial<S>,
    den: Polynomial<S>,
}

impl<S: Scalar> PadeApproximant<S> {
    /// Assembles an approximant from raw parts, enforcing the degree bounds
    /// and the `d_0 = 1` normalization.
    pub fn from_parts(center: S, p: usize, q: usize, num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        if num.degree().is_some_and(|d| d > p) || den.degree().is_some_and(|d| d > q) {
            return Err(PadeError::Degree(format!("parts exceed [{p}/{q}]")));
        }
        if den.coeff(0) != S::one() {
            return Err(PadeError::InvalidArgument("denominator must have d_0 = 1".into()));
        }
        Ok(PadeApproximant { center, p, q, num, den })
    }

    pub fn center(&self) -> &S {
        &self.center
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    /// Numerator coefficients `n_v` in powers of `(z − ζ)`.
    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }
    /// Denominator coefficients `d_v` in powers of `(z − ζ)`.
    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn evaluate(&self, z: &S) -> Result<S> {
        quotient_value(&self.num, &self.den, &(z.clone() - self.center.clone()))
    }

    /// ℓ-th derivative at `z` via local series division.
    pub fn derivative_at(&self, z: &S, order: usize) -> Result<S> {
        quotient_derivative(&self.num, &self.den, &(z.clone() - self.center.clone()), order)
    }

    /// Taylor coefficients `b_0..b_n` of `num/den` about the center.
    pub fn taylor(&self, n: usize) -> PowerSeries<S> {
        let num: Vec<S> = (0..=n).map(|k| self.num.coeff(k)).collect();
        let den: Vec<S> = (0..=n).map(|k| self.den.coeff(k)).collect();
        PowerSeries::new(self.center.clone(), divide_series(&num, &den, n))
            .expect("n + 1 coefficients")
    }
}

pub fn pade_from_series<S: Scalar>(f: &PowerSeries<S>, p: usize, q: usize) -> Result<PadeApproximant<S>> {
    pade_from_series_with_tol(f, p, q, SINGULAR_TOL)
}

/// Solves `Σ_{j=0..q} d_j a_{p+i−j} = 0` (i = 1..q, `d_0 = 1`), then forms
/// `n_k = Σ_{j=0..min(k,q)} d_j a_{k−j}`.
pub fn pade_from_series_with_tol<S: Scalar>(
    f: &PowerSeries<S>,
    p: usize,
    q: usize,
    tol: f64,
) -> Result<PadeApproximant<S>> {
    f.require(p + q)?;
    if !hankel_determinant_with_tol(f, p, q, tol)?.member {
        return Err(PadeError::NotNormal { p, q });
    }
    let a = |i: isize| f.coeff(i).expect("coefficients checked above");
    let mut d = vec![S::one()];
    if q > 0 {
        let m: Matrix<S> = (1..=q)
            .map(|i| (1..=q).map(|j| a(p as isize + i as isize - j as isize)).collect())
            .collect();
        let rhs: Vec<S> = (1..=q).map(|i| -a((p + i) as isize)).collect();
        d.extend(solve(m, rhs).ok_or(PadeError::NotNormal { p, q })?);
    }
    let num: Vec<S> = (0..=p)
        .map(|k| {
            (0..=k.min(q)).fold(S::zero(), |acc, j| acc + d[j].clone() * a((k - j) as isize))
        })
        .collect();
    Ok(PadeApproximant {
        center: f.center().clone(),
        p,
        q,
        num: Polynomial::new(num),
        den: Polynomial::new(d),
    })
}

/// `[p/q]_{f,ζ}(z)` as the ratio of the two (q+1)×(q+1) Jacobi determinants.
pub fn jacobi_evaluate<S: Scalar>(f: &PowerSeries<S>, p: usize, q: usize, z: &S) -> Result<S> {
    f.require(p + q)?;
    if !hankel_determinant(f, p, q)?.member {
        return Err(PadeError::NotNormal { p, q });
    }
    let w = z.clone() - f.center().clone();
    let partial_at = |k: isize| -> Result<S> { Ok(partial_sum(f, k)?.eval(&w)) };
    let mut top_num = Vec::with_capacity(q + 1);
    let mut top_den = Vec::with_capacity(q + 1);
    for j in 0..=q {
        let wp = w.powu(q - j);
        top_num.push(wp.clone() * partial_at(p as isize - q as isize + j as isize)?);
        top_den.push(wp);
    }
    let coeff_rows: Matrix<S> = (1..=q)
        .map(|k| {
            (0..=q)
                .map(|j| f.coeff(p as isize - q as isize + (k + j) as isize))
                .collect::<Result<Vec<S>>>()
        })
        .collect::<Result<_>>()?;
    let mut num_m = vec![top_num];
    num_m.extend(coeff_rows.iter().cloned());
    let mut den_m = vec![top_den];
    den_m.extend(coeff_rows);
    let den_scale = hadamard_bound(&den_m);
    let num_det = determinant(num_m);
    let den_det = determinant(den_m);
    let pole = if S::EXACT {
        den_det.is_zero()
    } else {
        den_det.modulus() <= POLE_TOL * den_scale
    };
    if pole {
        return Err(PadeError::PoleAtPoint);
    }
    Ok(num_det / den_det)
}

/// Smallest `v ≤ p + q` with `b_v ≠ a_v`, or `None` when the order condition
/// holds. Float mode compares with [`ORDER_TOL`].
pub fn order_defect<S: Scalar>(f: &PowerSeries<S>, r: &PadeApproximant<S>) -> Result<Option<usize>> {
    if f.center() != r.center() {
        return Err(PadeError::InvalidArgument("series and approximant centers differ".into()));
    }
    let n = r.p + r.q;
    f.require(n)?;
    let b = r.taylor(n);
    Ok((0..=n).find(|&v| {
        let (av, bv) = (&f.coeffs()[v], &b.coeffs()[v]);
        let diff = bv.clone() - av.clone();
        !diff.negligible(1.0 + av.modulus(), ORDER_TOL)
    }))
}

pub fn evaluate<S: Scalar>(r: &PadeApproximant<S>, z: &S) -> Result<S> {
    r.evaluate(z)
}

pub fn derivative_at<S: Scalar>(r: &PadeApproximant<S>, z: &S, order: usize) -> Result<S> {
    r.derivative_at(z, order)
}
