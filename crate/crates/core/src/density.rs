//! Perturbations that turn a polynomial or a reduced rational function into
//! a function equal to its own `[p/q]` Padé approximant at every center while
//! staying within `ε` of the original on a sample set.
//!
//! The polynomial case adds `d z^p` with `p > deg P`; its Hankel determinant
//! at any center is `(−1)^{q(q−1)/2} d^q`. The rational case adds `d z^p` to
//! the numerator of `A/B` with `p > deg A`, `q > deg B`, avoiding the finitely
//! many `d` that would create a common factor with `B`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{PadeError, Result};
use crate::geometry::SampleSet;
use crate::poly::{Polynomial, POLE_TOL};
use crate::rational::RationalFn;
use crate::scalar::{Float, Scalar};

/// Maximum number of halvings in the rational search.
pub const MAX_HALVINGS: usize = 64;

/// Relative guard band around excluded perturbation values.
pub const EXCLUSION_GUARD: f64 = 1e-8;

/// A value `−A(ρ)/ρ^p` the perturbation coefficient must avoid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcludedValue<S> {
    pub root: Complex64,
    pub value: Complex64,
    /// Present when the root of `B` was found in closed form.
    pub closed_form: Option<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationKind {
    Poly,
    PolySmooth,
    Rational,
    RationalSmooth,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationResult<S> {
    pub kind: PerturbationKind,
    pub original: RationalFn<S>,
    /// `(A + d z^p) / B`; the denominator is 1 in the polynomial cases.
    pub g: RationalFn<S>,
    pub p: usize,
    pub q: usize,
    /// Positive real, strictly below `bound_used`.
    pub d: S,
    pub bound_used: f64,
    pub excluded_values: Vec<ExcludedValue<S>>,
    /// Highest derivative order controlled (0 for the plain variants).
    pub derivative_order: usize,
    pub halvings: usize,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(PadeError::InvalidArgument(format!("epsilon must be positive, got {eps}")))
    }
}

fn check_poly_degree<S: Scalar>(p_poly: &Polynomial<S>, p: usize) -> Result<()> {
    match p_poly.degree() {
        Some(d) if p <= d => Err(PadeError::Degree(format!("need p > deg P = {d}, got p = {p}"))),
        _ => Ok(()),
    }
}

/// `max_{ℓ ≤ N} max_T |(z^p)^{(ℓ)}|`.
fn monomial_derivative_sup(p: usize, order: usize, region: &SampleSet) -> f64 {
    let mono = Polynomial::<Float>::monomial(Float::new(1.0, 0.0), p);
    (0..=order)
        .map(|l| {
            let dl = mono.nth_derivative(l);
            region.points().iter().map(|z| dl.eval(z).norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn polynomial_result<S: Scalar>(
    kind: PerturbationKind,
    base: &Polynomial<S>,
    p: usize,
    q: usize,
    eps: f64,
    denom: f64,
    order: usize,
) -> PerturbationResult<S> {
    // An empty sup (all samples at the origin) leaves the bound vacuous.
    let bound_used = if denom > 0.0 { eps / denom } else { eps };
    let d = S::approx_real(bound_used / 2.0);
    let g = base + &Polynomial::monomial(d.clone(), p);
    PerturbationResult {
        kind,
        original: RationalFn::polynomial(base.clone()),
        g: RationalFn::polynomial(g),
        p,
        q,
        d,
        bound_used,
        excluded_values: Vec::new(),
        derivative_order: order,
        halvings: 0,
    }
}

/// `g = P + d z^p` with `d = ε / (2 · max_T |z|^p)`.
pub fn perturb_polynomial<S: Scalar>(
    base: &Polynomial<S>,
    p: usize,
    q: usize,
    eps: f64,
    region: &SampleSet,
) -> Result<PerturbationResult<S>> {
    check_poly_degree(base, p)?;
    check_eps(eps)?;
    let denom = monomial_derivative_sup(p, 0, region);
    Ok(polynomial_result(PerturbationKind::Poly, base, p, q, eps, denom, 0))
}

/// As [`perturb_polynomial`] with the bound taken over derivatives
/// `ℓ = 0..=N`: `d = ε / (2 · max_ℓ max_T |(z^p)^{(ℓ)}|)`.
pub fn perturb_polynomial_smooth<S: Scalar>(
    base: &Polynomial<S>,
    p: usize,
    q: usize,
    eps: f64,
    order: usize,
    region: &SampleSet,
) -> Result<PerturbationResult<S>> {
    check_poly_degree(base, p)?;
    check_eps(eps)?;
    let denom = monomial_derivative_sup(p, order, region);
    Ok(polynomial_result(PerturbationKind::PolySmooth, base, p, q, eps, denom, order))
}

/// The presentation `A/B` the rational perturbation acts on: `B(0) = 1` when
/// `B(0) ≠ 0` (the normalization of Padé denominators), monic otherwise.
pub fn perturbation_presentation<S: Scalar>(r: &RationalFn<S>) -> (Polynomial<S>, Polynomial<S>) {
    let b0 = r.den().coeff(0);
    if b0.is_zero() {
        (r.num().clone(), r.den().clone())
    } else {
        let inv = S::one() / b0;
        (r.num().scale(&inv), r.den().scale(&inv))
    }
}

/// Values `−A(ρ)/ρ^p` over the nonzero roots `ρ` of `B`.
pub fn excluded_values<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>, p: usize) -> Vec<ExcludedValue<S>> {
    let a_float = a.to_float();
    crate::rational::polynomial_roots(b)
        .into_iter()
        .filter_map(|root| match root.closed_form {
            Some(rho) if !rho.is_zero() => {
                let v = -a.eval(&rho) / rho.powu(p);
                Some(ExcludedValue { root: root.value, value: v.to_c64(), closed_form: Some(v) })
            }
            Some(_) => None,
            None if root.value.norm() == 0.0 => None,
            None => {
                let rho = root.value;
                let v = -a_float.eval(&rho) / rho.powu(p as u32);
                Some(ExcludedValue { root: rho, value: v, closed_form: None })
            }
        })
        .collect()
}

fn is_excluded<S: Scalar>(d: &S, excluded: &[ExcludedValue<S>]) -> bool {
    excluded.iter().any(|ev| match &ev.closed_form {
        Some(v) if S::EXACT && *v == *d => true,
        _ => (d.to_c64() - ev.value).norm() <= EXCLUSION_GUARD * (1.0 + ev.value.norm()),
    })
}

/// `g = (A + d z^p)/B` for reduced `R = A/B`, `p > deg A`, `q > deg B`, with
/// `A/B` taken in [`perturbation_presentation`].
///
/// Candidates `d_m = d_0 / 2^m` start at `d_0 = ε · min_T |B| / (2 · max_T |z|^p)`.
/// A candidate is accepted when it keeps clear of every excluded value, when
/// `gcd(A + d z^p, B)` is constant (checked exactly in exact mode) and, if
/// `order` is given, when `sup_T |g^{(ℓ)} − R^{(ℓ)}| < ε` for every `ℓ ≤ order`.
pub fn perturb_rational<S: Scalar>(
    r: &RationalFn<S>,
    p: usize,
    q: usize,
    eps: f64,
    region: &SampleSet,
    order: Option<usize>,
) -> Result<PerturbationResult<S>> {
    check_eps(eps)?;
    let lambda = r.num_degree();
    let mu = r.den_degree();
    if lambda.is_some_and(|l| p <= l) || q <= mu {
        return Err(PadeError::Degree(format!(
            "need p > deg A and q > deg B, got (p, q) = ({p}, {q}) for deg A = {lambda:?}, deg B = {mu}"
        )));
    }
    let (num_a, den_b) = perturbation_presentation(r);
    let den_f = den_b.to_float();
    let min_den = region
        .points()
        .iter()
        .map(|z| den_f.eval(z).norm())
        .fold(f64::INFINITY, f64::min);
    if min_den.is_nan() || min_den <= POLE_TOL {
        return Err(PadeError::InvalidArgument(
            "sample set touches a zero of the denominator".into(),
        ));
    }
    let max_pow = region.max_modulus_pow(p);
    let plain_bound = if max_pow > 0.0 { eps * min_den / max_pow } else { eps };

    let r_float = r.to_float();
    let bump = RationalFn::<Float>::from_coprime(
        Polynomial::monomial(Float::new(1.0, 0.0), p),
        den_f.clone(),
    )?;
    let bound_used = match order {
        None => plain_bound,
        Some(n) => {
            let sup = (0..=n)
                .map(|l| {
                    region
                        .points()
                        .iter()
                        .map(|z| bump.derivative_at(z, l).map(|v| v.norm()))
                        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
                })
                .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))?;
            if sup > 0.0 {
                eps / sup
            } else {
                eps
            }
        }
    };

    let excluded = excluded_values(&num_a, &den_b, p);
    let mut d_float = plain_bound / 2.0;
    for halvings in 0..MAX_HALVINGS {
        let d = S::approx_real(d_float);
        d_float /= 2.0;
        if d.modulus() >= bound_used || is_excluded(&d, &excluded) {
            continue;
        }
        let num = &num_a + &Polynomial::monomial(d.clone(), p);
        if S::EXACT && num.gcd(&den_b)?.degree() != Some(0) {
            continue;
        }
        if let Some(n) = order {
            let g_float = RationalFn::<Float>::from_coprime(num.to_float(), den_f.clone())?;
            if !derivatives_within(&g_float, &r_float, region, n, eps)? {
                continue;
            }
        }
        let g = RationalFn::from_coprime(num, den_b)?;
        return Ok(PerturbationResult {
            kind: if order.is_some() {
                PerturbationKind::RationalSmooth
            } else {
                PerturbationKind::Rational
            },
            original: r.clone(),
            g,
            p,
            q,
            d,
            bound_used,
            excluded_values: excluded,
            derivative_order: order.unwrap_or(0),
            halvings,
        });
    }
    Err(PadeError::ConstructionFailed(MAX_HALVINGS))
}

fn derivatives_within(
    g: &RationalFn<Float>,
    r: &RationalFn<Float>,
    region: &SampleSet,
    order: usize,
    eps: f64,
) -> Result<bool> {
    for l in 0..=order {
        for z in region.points() {
            if (g.derivative_at(z, l)? - r.derivative_at(z, l)?).norm() >= eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Index families `𝓕 ⊆ ℕ × ℕ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum IndexFamily {
    /// `(n, n)`
    Diagonal,
    /// `(n, q)` for a fixed `q`.
    Row(usize),
    /// `(p, n)` for a fixed `p`.
    Column(usize),
    Explicit(Vec<(usize, usize)>),
}

impl IndexFamily {
    /// The pair used at step `n ≥ 1` of a convergence experiment.
    pub fn nth(&self, n: usize) -> Option<(usize, usize)> {
        match self {
            IndexFamily::Diagonal => Some((n, n)),
            IndexFamily::Row(q) => Some((n, *q)),
            IndexFamily::Column(p) => Some((*p, n)),
            IndexFamily::Explicit(list) => n.checked_sub(1).and_then(|i| list.get(i).copied()),
        }
    }
}

/// Lower bounds for [`pick_indices`]; `None` leaves a coordinate free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IndexConstraints {
    pub p_min: Option<usize>,
    pub q_min: Option<usize>,
}

/// First pair in enumeration order (generators start at `n = 0`) with
/// `p > p_min` and `q > q_min`.
pub fn pick_indices(family: &IndexFamily, constraints: IndexConstraints) -> Result<(usize, usize)> {
    let ok = |(p, q): (usize, usize)| {
        constraints.p_min.is_none_or(|m| p > m) && constraints.q_min.is_none_or(|m| q > m)
    };
    let floor = |m: Option<usize>| m.map_or(0, |m| m + 1);
    let found = match family {
        IndexFamily::Explicit(list) => list.iter().copied().find(|&pq| ok(pq)),
        IndexFamily::Diagonal => {
            let n = floor(constraints.p_min).max(floor(constraints.q_min));
            Some((n, n))
        }
        IndexFamily::Row(q) => Some((floor(constraints.p_min), *q)).filter(|&pq| ok(pq)),
        IndexFamily::Column(p) => Some((*p, floor(constraints.q_min))).filter(|&pq| ok(pq)),
    };
    found.ok_or(PadeError::Exhausted)
}
