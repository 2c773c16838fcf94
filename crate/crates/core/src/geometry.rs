//! Finite sample grids standing in for compact sets, sample-level sup-norms
//! and exhausting families `Ω̄ ∩ D̄(0, m)`.
//!
//! Sup-norms here are maxima over the grid points, not true suprema.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::approximant::PadeApproximant;
use crate::error::{PadeError, Result};
use crate::poly::Polynomial;
use crate::rational::RationalFn;
use crate::scalar::Scalar;

/// Default number of rings in disk and annulus grids (with four times as
/// many angles per ring).
pub const DEFAULT_DENSITY: usize = 16;

const REGION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Descriptor {
    Disk { center: Complex64, radius: f64, density: usize },
    Annulus { center: Complex64, r_in: f64, r_out: f64, density: usize },
    Circle { center: Complex64, radius: f64, count: usize },
    Explicit { points: Vec<Complex64> },
}

impl Descriptor {
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Descriptor::Disk { center, radius, density: DEFAULT_DENSITY }
    }

    fn label(&self) -> String {
        match self {
            Descriptor::Disk { center, radius, .. } => format!("disk({center}, {radius})"),
            Descriptor::Annulus { center, r_in, r_out, .. } => {
                format!("annulus({center}, {r_in}, {r_out})")
            }
            Descriptor::Circle { center, radius, count } => {
                format!("circle({center}, {radius}, {count})")
            }
            Descriptor::Explicit { points } => format!("explicit({} points)", points.len()),
        }
    }

    /// Closed region membership, with a relative slack of 1e-12 on radii.
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Descriptor::Disk { center, radius, .. } => (z - center).norm() <= radius * (1.0 + REGION_SLACK),
            Descriptor::Annulus { center, r_in, r_out, .. } => {
                let r = (z - center).norm();
                r >= r_in * (1.0 - REGION_SLACK) && r <= r_out * (1.0 + REGION_SLACK)
            }
            Descriptor::Circle { center, radius, .. } => {
                ((z - center).norm() - radius).abs() <= radius * REGION_SLACK
            }
            Descriptor::Explicit { points } => points.contains(&z),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    points: Vec<Complex64>,
    label: String,
    descriptor: Descriptor,
}

impl SampleSet {
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The points embedded in the realization `S` (losslessly).
    pub fn points_as<S: Scalar>(&self) -> Vec<S> {
        self.points.iter().map(|&z| S::from_sample(z)).collect()
    }

    /// `max |z|^power` over the samples.
    pub fn max_modulus_pow(&self, power: usize) -> f64 {
        self.points
            .iter()
            .map(|z| z.norm().powi(power as i32))
            .fold(0.0, f64::max)
    }
}

/// `e^{2πi k / m}`, exact at quarter turns.
fn unit(k: usize, m: usize) -> Complex64 {
    if (4 * k).is_multiple_of(m) {
        match (4 * k / m) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        let (s, c) = (TAU * k as f64 / m as f64).sin_cos();
        Complex64::new(c, s)
    }
}

fn ring(center: Complex64, radius: f64, count: usize, out: &mut Vec<Complex64>) {
    if radius == 0.0 {
        out.push(center);
        return;
    }
    out.extend((0..count).map(|j| center + unit(j, count) * radius));
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(PadeError::InvalidDescriptor(format!("{what} must be positive, got {x}")))
    }
}

fn nonzero(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(PadeError::InvalidDescriptor(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

/// Deterministic grid for a descriptor. Disk: `density` rings with
/// `4·density` angles each, plus the center. Annulus: `density + 1` rings from
/// `r_in` to `r_out`. Circle: `count` equispaced points.
pub fn build(descriptor: Descriptor) -> Result<SampleSet> {
    let mut points = Vec::new();
    match &descriptor {
        Descriptor::Disk { center, radius, density } => {
            positive(*radius, "disk radius")?;
            nonzero(*density, "grid density")?;
            points.push(*center);
            for k in 1..=*density {
                ring(*center, radius * k as f64 / *density as f64, 4 * density, &mut points);
            }
        }
        Descriptor::Annulus { center, r_in, r_out, density } => {
            nonzero(*density, "grid density")?;
            positive(*r_out, "outer radius")?;
            if !(r_in.is_finite() && *r_in >= 0.0 && r_in < r_out) {
                return Err(PadeError::InvalidDescriptor(format!(
                    "annulus needs 0 <= r_in < r_out, got {r_in}, {r_out}"
                )));
            }
            for k in 0..=*density {
                let r = r_in + (r_out - r_in) * k as f64 / *density as f64;
                ring(*center, r, 4 * density, &mut points);
            }
        }
        Descriptor::Circle { center, radius, count } => {
            positive(*radius, "circle radius")?;
            nonzero(*count, "point count")?;
            ring(*center, *radius, *count, &mut points);
        }
        Descriptor::Explicit { points: pts } => {
            if pts.is_empty() {
                return Err(PadeError::InvalidDescriptor("explicit point list is empty".into()));
            }
            if pts.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(PadeError::InvalidDescriptor("non-finite sample point".into()));
            }
            points.extend_from_slice(pts);
        }
    }
    Ok(SampleSet {
        label: descriptor.label(),
        points,
        descriptor,
    })
}

/// Anything whose derivatives can be evaluated pointwise.
pub trait Evaluable<S: Scalar> {
    fn derivative_at(&self, z: &S, order: usize) -> Result<S>;
}

impl<S: Scalar> Evaluable<S> for PadeApproximant<S> {
    fn derivative_at(&self, z: &S, order: usize) -> Result<S> {
        PadeApproximant::derivative_at(self, z, order)
    }
}

impl<S: Scalar> Evaluable<S> for RationalFn<S> {
    fn derivative_at(&self, z: &S, order: usize) -> Result<S> {
        RationalFn::derivative_at(self, z, order)
    }
}

impl<S: Scalar> Evaluable<S> for Polynomial<S> {
    fn derivative_at(&self, z: &S, order: usize) -> Result<S> {
        Ok(Polynomial::derivative_at(self, z, order))
    }
}

/// The exponential, whose derivatives are all `e^z`. In exact mode the value
/// at a nonzero point is the exact embedding of the `f64` result, so it is
/// good to about 1e-16 relative.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpFunction;

impl<S: Scalar> Evaluable<S> for ExpFunction {
    fn derivative_at(&self, z: &S, _order: usize) -> Result<S> {
        Ok(z.exp().unwrap_or_else(|| S::from_sample(z.to_c64().exp())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupNorm {
    Value(f64),
    /// Some evaluation on the samples hit a pole.
    Pole,
}

impl SupNorm {
    pub fn value(self) -> Option<f64> {
        match self {
            SupNorm::Value(v) => Some(v),
            SupNorm::Pole => None,
        }
    }

    /// Pole dominates; otherwise the larger value.
    pub fn max(self, other: SupNorm) -> SupNorm {
        match (self, other) {
            (SupNorm::Value(a), SupNorm::Value(b)) => SupNorm::Value(a.max(b)),
            _ => SupNorm::Pole,
        }
    }
}

/// `max_{z ∈ K} |a^{(ℓ)}(z) − b^{(ℓ)}(z)|`, or [`SupNorm::Pole`] if either side
/// has a pole at a sample point.
pub fn sup_diff<S: Scalar>(
    a: &dyn Evaluable<S>,
    b: &dyn Evaluable<S>,
    region: &SampleSet,
    order: usize,
) -> Result<SupNorm> {
    let mut sup: f64 = 0.0;
    for z in region.points_as::<S>() {
        let va = a.derivative_at(&z, order);
        let vb = b.derivative_at(&z, order);
        match (va, vb) {
            (Ok(x), Ok(y)) => sup = sup.max((x - y).modulus()),
            (Err(PadeError::PoleAtPoint), _) | (_, Err(PadeError::PoleAtPoint)) => {
                return Ok(SupNorm::Pole)
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(SupNorm::Value(sup))
}

/// Open sets `Ω` with a supported closure.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Domain {
    Plane,
    Disk { center: Complex64, radius: f64 },
    Annulus { center: Complex64, r_in: f64, r_out: f64 },
    /// The plane minus finitely many open disks `(center, radius)`.
    PlaneMinusDisks { holes: Vec<(Complex64, f64)> },
}

impl Domain {
    /// Membership in the closure `Ω̄`.
    pub fn closure_contains(&self, z: Complex64) -> bool {
        let slack = 1.0 + REGION_SLACK;
        match self {
            Domain::Plane => true,
            Domain::Disk { center, radius } => (z - center).norm() <= radius * slack,
            Domain::Annulus { center, r_in, r_out } => {
                let r = (z - center).norm();
                r * slack >= *r_in && r <= r_out * slack
            }
            Domain::PlaneMinusDisks { holes } => holes.iter().all(|(c, r)| (z - c).norm() * slack >= *r),
        }
    }
}

/// Samples of `K_m = Ω̄ ∩ D̄(0, m)`.
pub fn exhaustion(domain: &Domain, m: usize, density: usize) -> Result<SampleSet> {
    if m == 0 {
        return Err(PadeError::InvalidArgument("exhaustion index m must be at least 1".into()));
    }
    let mf = m as f64;
    let origin = Complex64::new(0.0, 0.0);
    let label = format!("K_{m}");
    let inside_mf = |z: &Complex64| z.norm() <= mf * (1.0 + REGION_SLACK);
    let set = match domain {
        Domain::Plane => build(Descriptor::Disk { center: origin, radius: mf, density })?,
        Domain::Disk { center, radius } => {
            let grid = build(Descriptor::Disk { center: *center, radius: *radius, density })?;
            if center.norm() + radius <= mf {
                grid
            } else {
                filtered(grid, inside_mf)?
            }
        }
        Domain::Annulus { center, r_in, r_out } => {
            let grid = build(Descriptor::Annulus {
                center: *center,
                r_in: *r_in,
                r_out: *r_out,
                density,
            })?;
            if center.norm() + r_out <= mf {
                grid
            } else {
                filtered(grid, inside_mf)?
            }
        }
        Domain::PlaneMinusDisks { holes } => {
            if let Some((c, r)) = holes.iter().find(|(_, r)| !(r.is_finite() && *r > 0.0)) {
                return Err(PadeError::InvalidDescriptor(format!("hole at {c} has radius {r}")));
            }
            match holes.as_slice() {
                [(c, r)] if *c == origin && *r < mf => build(Descriptor::Annulus {
                    center: origin,
                    r_in: *r,
                    r_out: mf,
                    density,
                })?,
                _ => {
                    let grid = build(Descriptor::Disk { center: origin, radius: mf, density })?;
                    filtered(grid, |z| domain.closure_contains(*z))?
                }
            }
        }
    };
    Ok(set.with_label(label))
}

fn filtered(grid: SampleSet, keep: impl Fn(&Complex64) -> bool) -> Result<SampleSet> {
    let points: Vec<Complex64> = grid.points.into_iter().filter(keep).collect();
    build(Descriptor::Explicit { points })
        .map_err(|_| PadeError::InvalidDescriptor("truncated region has no samples".into()))
}
