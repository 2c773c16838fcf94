//! Field abstraction shared by the whole engine.
//!
//! Two realizations are provided: [`Float`] (complex `f64`) and [`Exact`]
//! (Gaussian rationals over arbitrary-precision integers). Every algorithm is
//! generic over [`Scalar`]; in the exact realization zero tests are literal,
//! in the float realization callers supply scale-aware tolerances.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Complex floating realization.
pub type Float = Complex64;

/// Exact Gaussian-rational realization.
pub type Exact = Complex<BigRational>;

/// Serializable view of a scalar value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Float { re: f64, im: f64 },
    /// Components rendered as `"num/den"`.
    Exact { re: String, im: String },
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the exact realization; zero tests are then literal.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Imaginary unit.
    fn imag_unit() -> Self;

    /// Total conversion from the exact realization.
    fn from_exact(x: &Exact) -> Self;

    /// Lossless embedding of a sample-grid point. In the exact realization
    /// the binary value of each `f64` component is represented exactly.
    fn from_sample(z: Complex64) -> Self;

    /// A real value close to `x` (relative error below 1e-12). The exact
    /// realization returns the simplest fraction in that window.
    fn approx_real(x: f64) -> Self;

    fn to_c64(&self) -> Complex64;

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Literal zero test.
    fn is_zero(&self) -> bool;

    /// `e^self`, when representable.
    fn exp(&self) -> Option<Self>;

    fn repr(&self) -> ScalarRepr;

    /// A square root when one exists in the realization: always in float
    /// mode, only for perfect squares in exact mode.
    fn sqrt_closed_form(&self) -> Option<Self>;

    /// Zero test used by threshold decisions: literal in exact mode,
    /// `|self| <= tol * scale` in float mode.
    fn negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.modulus() <= tol * scale
        }
    }

    /// `Σ c_k z^k` by Horner's rule.
    fn horner(coeffs: &[Self], z: &Self) -> Self {
        coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    fn powu(&self, mut n: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn factorial(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, k| acc * Self::from_i64(k as i64))
    }
}

impl Scalar for Float {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_exact(x: &Exact) -> Self {
        x.to_c64()
    }
    fn from_sample(z: Complex64) -> Self {
        z
    }
    fn approx_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn exp(&self) -> Option<Self> {
        Some(Complex64::exp(*self))
    }
    fn sqrt_closed_form(&self) -> Option<Self> {
        Some(self.sqrt())
    }
    fn repr(&self) -> ScalarRepr {
        ScalarRepr::Float {
            re: self.re,
            im: self.im,
        }
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn from_exact(x: &Exact) -> Self {
        x.clone()
    }
    fn from_sample(z: Complex64) -> Self {
        let conv = |v: f64| BigRational::from_float(v).expect("sample coordinates are finite");
        Complex::new(conv(z.re), conv(z.im))
    }
    fn approx_real(x: f64) -> Self {
        Complex::new(simplest_rational(x, 1e-12), BigRational::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn exp(&self) -> Option<Self> {
        Scalar::is_zero(self).then(<Self as Scalar>::one)
    }
    fn sqrt_closed_form(&self) -> Option<Self> {
        gaussian_sqrt(self)
    }
    fn horner(coeffs: &[Self], z: &Self) -> Self {
        gaussian_integer_horner(coeffs, z)
    }
    fn repr(&self) -> ScalarRepr {
        ScalarRepr::Exact {
            re: ratio_string(&self.re),
            im: ratio_string(&self.im),
        }
    }
}

/// Horner's rule on Gaussian integers: with `c_k = e_k / L` and `z = w / D`,
/// `Σ c_k z^k = (Σ e_k w^k D^{n−k}) / (L D^n)`, so only the final quotient
/// is reduced.
fn gaussian_integer_horner(coeffs: &[Exact], z: &Exact) -> Exact {
    let Some(n) = coeffs.len().checked_sub(1) else {
        return <Exact as Scalar>::zero();
    };
    let lcm = |acc: BigInt, r: &BigRational| acc.lcm(r.denom());
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| lcm(lcm(acc, &c.re), &c.im));
    let d = lcm(lcm(BigInt::one(), &z.re), &z.im);
    let scaled = |r: &BigRational, m: &BigInt| r.numer() * (m / r.denom());
    let (wr, wi) = (scaled(&z.re, &d), scaled(&z.im, &d));
    let (mut ar, mut ai) = (scaled(&coeffs[n].re, &l), scaled(&coeffs[n].im, &l));
    let mut d_pow = BigInt::one();
    for c in coeffs[..n].iter().rev() {
        d_pow *= &d;
        let re = &ar * &wr - &ai * &wi + scaled(&c.re, &l) * &d_pow;
        let im = &ar * &wi + &ai * &wr + scaled(&c.im, &l) * &d_pow;
        ar = re;
        ai = im;
    }
    let den = l * d_pow;
    Complex::new(BigRational::new(ar, den.clone()), BigRational::new(ai, den))
}

/// Builds an exact scalar from real and imaginary fractions.
pub fn exact(re: (i64, i64), im: (i64, i64)) -> Exact {
    Complex::new(
        BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
        BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
    )
}

/// `"num/den"` with a positive denominator, always including the denominator.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

/// Square root of a Gaussian rational when it is itself a Gaussian rational.
fn gaussian_sqrt(x: &Exact) -> Option<Exact> {
    let two = BigRational::from_integer(BigInt::from(2));
    if x.im.is_zero() {
        return if x.re.is_negative() {
            Some(Complex::new(BigRational::zero(), rational_sqrt(&-x.re.clone())?))
        } else {
            Some(Complex::new(rational_sqrt(&x.re)?, BigRational::zero()))
        };
    }
    let norm = rational_sqrt(&(&x.re * &x.re + &x.im * &x.im))?;
    let u = rational_sqrt(&((&norm + &x.re) / &two))?;
    let v = &x.im / (&two * &u);
    let root = Complex::new(u, v);
    (root.clone() * root.clone() == *x).then_some(root)
}

/// Simplest fraction within relative distance `rel` of `x`, found by walking
/// the continued-fraction convergents of the exact binary value of `x`.
pub fn simplest_rational(x: f64, rel: f64) -> BigRational {
    let target = BigRational::from_float(x).expect("finite value");
    if target.is_zero() {
        return target;
    }
    let tol = target.abs() * BigRational::from_float(rel).expect("finite tolerance");
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        let conv = BigRational::new(h_next.clone(), k_next.clone());
        let frac = &rest - BigRational::from_integer(a);
        if (&conv - &target).abs() <= tol || frac.is_zero() {
            return conv;
        }
        rest = frac.recip();
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}
