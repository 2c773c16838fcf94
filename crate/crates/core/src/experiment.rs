//! Batch experiments: Padé tables, single-cell membership reports, reports on
//! density constructions, and convergence runs along an index family.

use serde::{Serialize, Serializer};

use crate::approximant::{hankel_determinant_with_tol, order_defect, pade_from_series_with_tol, PadeApproximant};
use crate::density::{perturbation_presentation, IndexFamily, PerturbationKind, PerturbationResult};
use crate::error::{PadeError, Result};
use crate::geometry::{sup_diff, Evaluable, ExpFunction, SampleSet, SupNorm};
use crate::poly::Polynomial;
use crate::rational::{taylor_at, theorem21_predict, Prediction, RationalFn};
use crate::scalar::{Scalar, ScalarRepr};
use crate::series::{exp_series, geometric_series, series_of_polynomial, PowerSeries};

/// Largest `p` or `q` accepted by [`table`].
pub const MAX_TABLE_INDEX: usize = 12;

/// Default cap on the derivative order of an experiment.
pub const MAX_DERIVATIVE_ORDER: usize = 8;

/// Radius of the default comparison disk around the table center.
pub const DEFAULT_TABLE_RADIUS: f64 = 0.5;

/// Functions with built-in Taylor coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum Oracle<S> {
    Exp,
    /// `1/(1 − z)`
    Geometric,
    Rational(RationalFn<S>),
    Polynomial(Polynomial<S>),
}

impl<S: Scalar> Oracle<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Oracle::Exp => "exp",
            Oracle::Geometric => "geometric",
            Oracle::Rational(_) => "rational",
            Oracle::Polynomial(_) => "polynomial",
        }
    }

    /// Taylor coefficients `a_0..a_n` about `center`.
    pub fn series(&self, center: &S, n: usize) -> Result<PowerSeries<S>> {
        match self {
            Oracle::Exp => exp_series(center, n),
            Oracle::Geometric => geometric_series(center, n),
            Oracle::Rational(r) => taylor_at(r, center, n),
            Oracle::Polynomial(p) => Ok(series_of_polynomial(p, center, n)),
        }
    }

    /// The oracle as a reduced rational function, when it is one.
    pub fn as_rational(&self) -> Option<RationalFn<S>> {
        match self {
            Oracle::Exp => None,
            Oracle::Geometric => Some(
                RationalFn::from_coprime(Polynomial::from_ints(&[1]), Polynomial::from_ints(&[1, -1]))
                    .expect("nonzero denominator"),
            ),
            Oracle::Rational(r) => Some(r.clone()),
            Oracle::Polynomial(p) => Some(RationalFn::polynomial(p.clone())),
        }
    }

    /// What sup errors are measured against.
    pub fn truth(&self) -> Box<dyn Evaluable<S>> {
        match self {
            Oracle::Exp => Box::new(ExpFunction),
            _ => Box::new(self.as_rational().expect("non-exp oracles are rational")),
        }
    }
}

/// A sample-level sup error, or the reason it is missing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupError {
    Value(f64),
    Pole,
    NotNormal,
}

impl SupError {
    pub fn value(self) -> Option<f64> {
        match self {
            SupError::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl From<SupNorm> for SupError {
    fn from(s: SupNorm) -> Self {
        match s {
            SupNorm::Value(v) => SupError::Value(v),
            SupNorm::Pole => SupError::Pole,
        }
    }
}

impl Serialize for SupError {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            SupError::Value(v) => s.serialize_f64(*v),
            SupError::Pole => s.serialize_str("pole"),
            SupError::NotNormal => s.serialize_str("not-normal"),
        }
    }
}

/// Outcome of the order condition for a constructed approximant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderCheck {
    /// `b_v = a_v` for every `v ≤ p + q`; serialized as `"none"`.
    Satisfied,
    /// First index where the expansions differ.
    Defect(usize),
}

impl From<Option<usize>> for OrderCheck {
    fn from(v: Option<usize>) -> Self {
        v.map_or(OrderCheck::Satisfied, OrderCheck::Defect)
    }
}

impl Serialize for OrderCheck {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            OrderCheck::Satisfied => s.serialize_str("none"),
            OrderCheck::Defect(v) => s.serialize_u64(*v as u64),
        }
    }
}

impl std::fmt::Display for OrderCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderCheck::Satisfied => f.write_str("none"),
            OrderCheck::Defect(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub p: usize,
    pub q: usize,
    pub member: bool,
    pub det: ScalarRepr,
    pub scale: f64,
    /// Present for rational oracles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<Prediction>,
    /// `sup_K |[p/q] − f|`, member cells only.
    pub sup_error: Option<SupError>,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(PadeError::InvalidArgument(format!("tolerance must be nonnegative, got {tol}")))
    }
}

/// The `(p_max+1) × (q_max+1)` grid of Hankel verdicts about `center`, in
/// row-major order over `p`, with sup errors on `region` for member cells.
pub fn table<S: Scalar>(
    oracle: &Oracle<S>,
    center: &S,
    p_max: usize,
    q_max: usize,
    region: &SampleSet,
    tol: f64,
) -> Result<Vec<TableCell>> {
    if p_max > MAX_TABLE_INDEX || q_max > MAX_TABLE_INDEX {
        return Err(PadeError::InvalidArgument(format!(
            "table indices are capped at {MAX_TABLE_INDEX}, got p_max = {p_max}, q_max = {q_max}"
        )));
    }
    check_tol(tol)?;
    let series = oracle.series(center, p_max + q_max)?;
    let rational = oracle.as_rational();
    let truth = oracle.truth();
    let mut cells = Vec::with_capacity((p_max + 1) * (q_max + 1));
    for p in 0..=p_max {
        for q in 0..=q_max {
            let verdict = hankel_determinant_with_tol(&series, p, q, tol)?;
            let predicted = rational
                .as_ref()
                .map(|r| theorem21_predict(r.num_degree(), r.den_degree(), p, q));
            let sup_error = if verdict.member {
                let approx = pade_from_series_with_tol(&series, p, q, tol)?;
                Some(sup_diff(&approx, truth.as_ref(), region, 0)?.into())
            } else {
                None
            };
            cells.push(TableCell {
                p,
                q,
                member: verdict.member,
                det: verdict.det.repr(),
                scale: verdict.scale,
                predicted,
                sup_error,
            });
        }
    }
    Ok(cells)
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub p: usize,
    pub q: usize,
    pub member: bool,
    pub det: ScalarRepr,
    pub scale: f64,
    pub lambda: Option<usize>,
    pub mu: Option<usize>,
    pub predicted: Prediction,
    /// `None` when the prediction is undetermined.
    pub agrees: Option<bool>,
    /// Member cells: `max |[p/q](z) − f(z)|` over the sample points.
    pub max_residual: Option<SupError>,
    /// Member cells in exact mode: every residual is literally zero.
    pub exact_reproduction: Option<bool>,
    /// Member cells only.
    pub order_defect: Option<OrderCheck>,
}

/// Hankel verdict at one cell, compared against the membership law for
/// rational oracles; member cells are checked against `f` on `region`.
pub fn membership<S: Scalar>(
    oracle: &Oracle<S>,
    center: &S,
    p: usize,
    q: usize,
    region: &SampleSet,
    tol: f64,
) -> Result<MembershipReport> {
    check_tol(tol)?;
    let series = oracle.series(center, p + q)?;
    let verdict = hankel_determinant_with_tol(&series, p, q, tol)?;
    let rational = oracle.as_rational();
    let lambda = rational.as_ref().and_then(|r| r.num_degree());
    let mu = rational.as_ref().map(|r| r.den_degree());
    let predicted = match &rational {
        Some(r) => theorem21_predict(r.num_degree(), r.den_degree(), p, q),
        None => Prediction::Undetermined,
    };
    let agrees = match predicted {
        Prediction::Member => Some(verdict.member),
        Prediction::NotMember => Some(!verdict.member),
        Prediction::Undetermined => None,
    };
    let (max_residual, exact_reproduction, defect) = if verdict.member {
        let approx = pade_from_series_with_tol(&series, p, q, tol)?;
        let truth = oracle.truth();
        let sup = SupError::from(sup_diff(&approx, truth.as_ref(), region, 0)?);
        let exact = S::EXACT.then(|| sup == SupError::Value(0.0));
        (Some(sup), exact, Some(order_defect(&series, &approx)?.into()))
    } else {
        (None, None, None)
    };
    Ok(MembershipReport {
        p,
        q,
        member: verdict.member,
        det: verdict.det.repr(),
        scale: verdict.scale,
        lambda,
        mu,
        predicted,
        agrees,
        max_residual,
        exact_reproduction,
        order_defect: defect,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExcludedReport {
    pub root: ScalarRepr,
    pub value: ScalarRepr,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ScalarRepr>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub center: ScalarRepr,
    pub member: bool,
    pub det: ScalarRepr,
    /// `(−1)^{q(q−1)/2} d^q`, polynomial constructions only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_det: Option<ScalarRepr>,
    /// Member centers only.
    pub order_defect: Option<OrderCheck>,
    /// `max_T |[p/q]_{g,ζ} − g|`.
    pub residual: SupError,
    /// Exact mode: the residual is literally zero at every sample.
    pub exact_zero: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructReport {
    pub kind: PerturbationKind,
    pub p: usize,
    pub q: usize,
    pub d: ScalarRepr,
    pub bound_used: f64,
    pub halvings: usize,
    /// `g` with `den(0) = 1` when possible, ascending coefficients.
    pub g_num: Vec<ScalarRepr>,
    pub g_den: Vec<ScalarRepr>,
    pub excluded_values: Vec<ExcludedReport>,
    /// Exact mode: `gcd(num g, den g)` is constant.
    pub irreducible: Option<bool>,
    /// `sup_T |g^{(ℓ)} − original^{(ℓ)}|` for `ℓ = 0..=N`.
    pub approximation: Vec<SupError>,
    pub centers: Vec<CenterReport>,
}

fn coeff_reprs<S: Scalar>(p: &Polynomial<S>) -> Vec<ScalarRepr> {
    p.coeffs().iter().map(Scalar::repr).collect()
}

/// `(−1)^{q(q−1)/2} d^q`
pub fn expected_polynomial_det<S: Scalar>(d: &S, q: usize) -> S {
    let v = d.powu(q);
    if (q * q.saturating_sub(1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Checks a construction: approximation on `region`, irreducibility, and at
/// each center the Hankel verdict and the self-reproduction residual.
pub fn construct_report<S: Scalar>(
    result: &PerturbationResult<S>,
    centers: &[S],
    region: &SampleSet,
    tol: f64,
) -> Result<ConstructReport> {
    check_tol(tol)?;
    let (p, q) = (result.p, result.q);
    let g = &result.g;
    let approximation = (0..=result.derivative_order)
        .map(|l| sup_diff(g, &result.original, region, l).map(SupError::from))
        .collect::<Result<Vec<_>>>()?;
    let polynomial_kind = matches!(result.kind, PerturbationKind::Poly | PerturbationKind::PolySmooth);
    let (g_num, g_den) = perturbation_presentation(g);
    let irreducible = if S::EXACT { Some(g.is_irreducible()?) } else { None };
    let mut reports = Vec::with_capacity(centers.len());
    for center in centers {
        let series = taylor_at(g, center, p + q)?;
        let verdict = hankel_determinant_with_tol(&series, p, q, tol)?;
        let expected_det = polynomial_kind.then(|| expected_polynomial_det(&result.d, q).repr());
        let (defect, residual, exact_zero) = if verdict.member {
            let approx: PadeApproximant<S> = pade_from_series_with_tol(&series, p, q, tol)?;
            let residual = SupError::from(sup_diff(&approx, g, region, 0)?);
            let exact = S::EXACT.then(|| residual == SupError::Value(0.0));
            (Some(order_defect(&series, &approx)?.into()), residual, exact)
        } else {
            (None, SupError::NotNormal, S::EXACT.then_some(false))
        };
        reports.push(CenterReport {
            center: center.repr(),
            member: verdict.member,
            det: verdict.det.repr(),
            expected_det,
            order_defect: defect,
            residual,
            exact_zero,
        });
    }
    Ok(ConstructReport {
        kind: result.kind,
        p,
        q,
        d: result.d.repr(),
        bound_used: result.bound_used,
        halvings: result.halvings,
        g_num: coeff_reprs(&g_num),
        g_den: coeff_reprs(&g_den),
        excluded_values: result
            .excluded_values
            .iter()
            .map(|e| ExcludedReport {
                root: e.root.repr(),
                value: e.value.repr(),
                closed_form: e.closed_form.as_ref().map(Scalar::repr),
            })
            .collect(),
        irreducible,
        approximation,
        centers: reports,
    })
}

/// The data of a convergence experiment over `𝓕`, `L`, `K` and orders `0..=s`.
#[derive(Debug, Clone)]
pub struct ExperimentPlan<S> {
    pub oracle: Oracle<S>,
    pub centers: SampleSet,
    pub region: SampleSet,
    pub indices: IndexFamily,
    pub max_n: usize,
    pub derivative_orders: usize,
}

impl<S: Scalar> ExperimentPlan<S> {
    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 {
            return Err(PadeError::InvalidArgument("max_n must be at least 1".into()));
        }
        if self.derivative_orders > MAX_DERIVATIVE_ORDER {
            return Err(PadeError::InvalidArgument(format!(
                "derivative order {} exceeds the cap {MAX_DERIVATIVE_ORDER}",
                self.derivative_orders
            )));
        }
        if self.centers.points().is_empty() || self.region.points().is_empty() {
            return Err(PadeError::InvalidArgument("empty center or region set".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub member_all_centers: bool,
    /// Indexed by `ℓ = 0..=s`: `sup_{ζ ∈ L} sup_{z ∈ K} |[p/q]^{(ℓ)}_{f,ζ} − f^{(ℓ)}|`.
    pub sup_error: Vec<SupError>,
}

/// Runs `n = 1..=max_n` (stopping early when an explicit family runs out).
/// A row where some center fails the normality test carries
/// [`SupError::NotNormal`] for every order.
pub fn converge<S: Scalar>(plan: &ExperimentPlan<S>, tol: f64) -> Result<Vec<ExperimentRow>> {
    plan.validate()?;
    check_tol(tol)?;
    let truth = plan.oracle.truth();
    let centers = plan.centers.points_as::<S>();
    let orders = plan.derivative_orders;
    let mut rows = Vec::with_capacity(plan.max_n);
    for n in 1..=plan.max_n {
        let Some((p, q)) = plan.indices.nth(n) else {
            break;
        };
        let mut approximants = Vec::with_capacity(centers.len());
        for center in &centers {
            let series = plan.oracle.series(center, p + q)?;
            if hankel_determinant_with_tol(&series, p, q, tol)?.member {
                approximants.push(pade_from_series_with_tol(&series, p, q, tol)?);
            }
        }
        let member_all_centers = approximants.len() == centers.len();
        let sup_error = if member_all_centers {
            let mut errs = Vec::with_capacity(orders + 1);
            for l in 0..=orders {
                let mut sup = SupNorm::Value(0.0);
                for approx in &approximants {
                    sup = sup.max(sup_diff(approx, truth.as_ref(), &plan.region, l)?);
                }
                errs.push(sup.into());
            }
            errs
        } else {
            vec![SupError::NotNormal; orders + 1]
        };
        rows.push(ExperimentRow { n, p, q, member_all_centers, sup_error });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{perturb_polynomial, perturb_rational};
    use crate::geometry::{build, Descriptor};
    use crate::scalar::{exact, Exact, Float};
    use num_complex::Complex64;

    fn origin() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn disk(r: f64, density: usize) -> SampleSet {
        build(Descriptor::Disk { center: origin(), radius: r, density }).unwrap()
    }

    fn at_origin() -> SampleSet {
        build(Descriptor::Explicit { points: vec![origin()] }).unwrap()
    }

    #[test]
    fn geometric_table_follows_membership_law() {
        let cells = table(&Oracle::<Exact>::Geometric, &Exact::zero(), 2, 2, &disk(0.5, 4), 0.0).unwrap();
        assert_eq!(cells.len(), 9);
        for c in &cells {
            let want = c.q == 1 || (c.p == 0) || (c.q == 0);
            assert_eq!(c.member, want, "cell ({}, {})", c.p, c.q);
            if c.predicted != Some(Prediction::Undetermined) {
                assert_eq!(c.predicted == Some(Prediction::Member), c.member);
            }
        }
        let c01 = cells.iter().find(|c| (c.p, c.q) == (0, 1)).unwrap();
        assert_eq!(c01.sup_error, Some(SupError::Value(0.0)));
    }

    #[test]
    fn polynomial_first_column_all_members() {
        let cube = Oracle::<Exact>::Polynomial(Polynomial::monomial(Exact::one(), 3));
        let cells = table(&cube, &Exact::zero(), 5, 2, &disk(0.5, 4), 0.0).unwrap();
        assert!(cells.iter().filter(|c| c.q == 0).all(|c| c.member));
    }

    #[test]
    fn exp_cell_one_one_has_unit_determinant() {
        let cells = table(&Oracle::<Exact>::Exp, &Exact::zero(), 1, 1, &disk(0.5, 2), 0.0).unwrap();
        let c = cells.iter().find(|c| (c.p, c.q) == (1, 1)).unwrap();
        assert!(c.member);
        assert_eq!(c.det, Exact::one().repr());
    }

    #[test]
    fn table_index_guard() {
        assert!(table(&Oracle::<Float>::Exp, &Float::new(0.0, 0.0), 13, 0, &disk(0.5, 2), 1e-12).is_err());
    }

    #[test]
    fn membership_report_for_mobius() {
        let f = RationalFn::reduce(Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[1, -1])).unwrap();
        let rep = membership(&Oracle::<Exact>::Rational(f), &Exact::zero(), 1, 1, &disk(0.5, 3), 0.0).unwrap();
        assert!(rep.member);
        assert_eq!(rep.agrees, Some(true));
        assert_eq!(rep.exact_reproduction, Some(true));
        assert_eq!(rep.order_defect, Some(OrderCheck::Satisfied));
    }

    #[test]
    fn exp_rows_decrease() {
        let plan = ExperimentPlan::<Float> {
            oracle: Oracle::Exp,
            centers: at_origin(),
            region: disk(1.0, 8),
            indices: IndexFamily::Row(1),
            max_n: 10,
            derivative_orders: 0,
        };
        let rows = converge(&plan, 1e-12).unwrap();
        assert_eq!(rows.len(), 10);
        let errs: Vec<f64> = rows.iter().map(|r| r.sup_error[0].value().unwrap()).collect();
        for w in errs[1..].windows(2) {
            assert!(w[1] < w[0], "{errs:?}");
        }
    }

    #[test]
    fn geometric_single_pair_is_exact() {
        let plan = ExperimentPlan::<Float> {
            oracle: Oracle::Geometric,
            centers: at_origin(),
            region: disk(0.5, 8),
            indices: IndexFamily::Explicit(vec![(0, 1)]),
            max_n: 3,
            derivative_orders: 0,
        };
        let rows = converge(&plan, 1e-12).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].sup_error[0].value().unwrap() <= 1e-12);
    }

    #[test]
    fn not_normal_rows_are_marked() {
        // 1/(1 − z) is not a member at (1, 2).
        let plan = ExperimentPlan::<Exact> {
            oracle: Oracle::Geometric,
            centers: at_origin(),
            region: disk(0.5, 2),
            indices: IndexFamily::Explicit(vec![(1, 2)]),
            max_n: 1,
            derivative_orders: 1,
        };
        let rows = converge(&plan, 0.0).unwrap();
        assert!(!rows[0].member_all_centers);
        assert_eq!(rows[0].sup_error, vec![SupError::NotNormal; 2]);
    }

    #[test]
    fn perturbed_rational_oracle_reproduces_exactly() {
        let r = RationalFn::<Exact>::reduce(Polynomial::from_ints(&[1]), Polynomial::from_ints(&[1, -1])).unwrap();
        let t = disk(0.5, DEFAULT_TEST_DENSITY);
        let res = perturb_rational(&r, 1, 2, 0.5, &t, None).unwrap();
        let centers = build(Descriptor::Explicit {
            points: vec![origin(), Complex64::new(0.0, 0.25), Complex64::new(-0.5, 0.0)],
        })
        .unwrap();
        let plan = ExperimentPlan::<Exact> {
            oracle: Oracle::Rational(res.g.clone()),
            centers,
            region: t,
            indices: IndexFamily::Explicit(vec![(1, 2)]),
            max_n: 1,
            derivative_orders: 0,
        };
        let rows = converge(&plan, 0.0).unwrap();
        assert_eq!(rows[0].sup_error, vec![SupError::Value(0.0)]);
    }

    const DEFAULT_TEST_DENSITY: usize = 4;

    #[test]
    fn construct_report_for_polynomial() {
        let circle = build(Descriptor::Circle { center: origin(), radius: 1.0, count: 16 }).unwrap();
        let res = perturb_polynomial(&Polynomial::<Exact>::zero(), 2, 1, 0.1, &circle).unwrap();
        let centers = [Exact::zero(), exact((1, 1), (1, 1)), exact((-1, 3), (0, 1))];
        let rep = construct_report(&res, &centers, &circle, 0.0).unwrap();
        assert_eq!(rep.d, Exact::from_ratio(1, 20).repr());
        for c in &rep.centers {
            assert!(c.member);
            assert_eq!(Some(c.det.clone()), c.expected_det);
            assert_eq!(c.exact_zero, Some(true));
            assert_eq!(c.order_defect, Some(OrderCheck::Satisfied));
        }
        assert!(rep.approximation[0].value().unwrap() < 0.1);
    }

    #[test]
    fn expected_det_signs() {
        let three = Exact::from_i64(3);
        assert_eq!(expected_polynomial_det(&three, 0), Exact::one());
        assert_eq!(expected_polynomial_det(&three, 2), Exact::from_i64(-9));
        assert_eq!(expected_polynomial_det(&three, 3), Exact::from_i64(-27));
        assert_eq!(expected_polynomial_det(&three, 4), Exact::from_i64(81));
    }
}
