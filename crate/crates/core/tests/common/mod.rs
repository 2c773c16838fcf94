//! Test-side oracles written independently of the library's algorithms:
//! plain coefficient vectors, binomial Taylor shifts, schoolbook series
//! division and a textbook Euclidean gcd. Only field arithmetic is shared.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use pade_core::scalar::Exact;
use pade_core::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Exact {
    Complex::new(BigRational::new(BigInt::from(n), BigInt::from(d)), BigRational::from_integer(0.into()))
}

pub fn gq(re: (i64, i64), im: (i64, i64)) -> Exact {
    Complex::new(
        BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
        BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
    )
}

pub fn horner<S: Scalar>(c: &[S], z: &S) -> S {
    let mut acc = S::zero();
    for x in c.iter().rev() {
        acc = acc * z.clone() + x.clone();
    }
    acc
}

pub fn trim<S: Scalar>(mut c: Vec<S>) -> Vec<S> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub fn mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(S::zero);
            let y = b.get(i).cloned().unwrap_or_else(S::zero);
            x - y
        })
        .collect()
}

pub fn deriv<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().enumerate().skip(1).map(|(k, x)| x.clone() * S::from_i64(k as i64)).collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coefficients of `c(z)` in powers of `(z − ζ)`: `a_k = Σ_{j ≥ k} C(j, k) c_j ζ^{j−k}`.
pub fn taylor_shift<S: Scalar>(c: &[S], zeta: &S) -> Vec<S> {
    (0..c.len())
        .map(|k| {
            let mut acc = S::zero();
            let mut pw = S::one();
            for (j, cj) in c.iter().enumerate().skip(k) {
                acc = acc + cj.clone() * S::from_i64(binomial(j, k)) * pw.clone();
                pw = pw * zeta.clone();
            }
            acc
        })
        .collect()
}

/// First `n + 1` coefficients of `num / den` as formal series (`den[0] ≠ 0`).
pub fn series_div<S: Scalar>(num: &[S], den: &[S], n: usize) -> Vec<S> {
    let at = |v: &[S], i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
    let d0 = at(den, 0);
    let mut out: Vec<S> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = at(num, k);
        for j in 1..=k {
            acc = acc - at(den, j) * out[k - j].clone();
        }
        out.push(acc / d0.clone());
    }
    out
}

/// Taylor coefficients `a_0..a_n` of `num/den` about `ζ`.
pub fn rational_taylor<S: Scalar>(num: &[S], den: &[S], zeta: &S, n: usize) -> Vec<S> {
    series_div(&taylor_shift(num, zeta), &taylor_shift(den, zeta), n)
}

/// Degree of the monic gcd of two exact polynomials (`None` if both vanish).
pub fn gcd_degree(a: &[Exact], b: &[Exact]) -> Option<usize> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let mut r = a.clone();
        let lead = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let factor = r.last().unwrap().clone() / lead.clone();
            let shift = r.len() - b.len();
            for (i, x) in b.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - factor.clone() * x.clone();
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        a = b;
        b = r;
    }
    a.len().checked_sub(1)
}

/// Small Gaussian rational with numerators in `[-span, span]`.
pub fn rand_exact(rng: &mut ChaCha8Rng, span: i64, max_den: i64, complex: bool) -> Exact {
    let re = (rng.gen_range(-span..=span), rng.gen_range(1..=max_den));
    let im = if complex { (rng.gen_range(-span..=span), rng.gen_range(1..=max_den)) } else { (0, 1) };
    gq(re, im)
}
