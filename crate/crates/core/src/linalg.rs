//! Small dense determinant and solve routines over any [`Scalar`].
//!
//! Pivoting is by largest modulus in float mode and by first nonzero entry in
//! exact mode.

use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

fn pivot_row<S: Scalar>(m: &Matrix<S>, col: usize) -> Option<usize> {
    let rows = col..m.len();
    if S::EXACT {
        rows.into_iter().find(|&r| !m[r][col].is_zero())
    } else {
        rows.into_iter()
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&a, &b| m[a][col].modulus().total_cmp(&m[b][col].modulus()))
    }
}

#[allow(clippy::needless_range_loop)]
pub fn determinant<S: Scalar>(mut m: Matrix<S>) -> S {
    let n = m.len();
    let mut det = S::one();
    for col in 0..n {
        let Some(pr) = pivot_row(&m, col) else {
            return S::zero();
        };
        if pr != col {
            m.swap(pr, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col + 1..n {
                let t = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - t;
            }
        }
    }
    det
}

/// Solves `m x = rhs`; `None` when elimination meets an exactly zero pivot.
#[allow(clippy::needless_range_loop)]
pub fn solve<S: Scalar>(mut m: Matrix<S>, mut rhs: Vec<S>) -> Option<Vec<S>> {
    let n = m.len();
    for col in 0..n {
        let pr = pivot_row(&m, col)?;
        m.swap(pr, col);
        rhs.swap(pr, col);
        let pivot = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let t = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - t;
            }
            let t = factor * rhs[col].clone();
            rhs[r] = rhs[r].clone() - t;
        }
    }
    let mut x = vec![S::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..n {
            acc = acc - m[r][c].clone() * x[c].clone();
        }
        x[r] = acc / m[r][r].clone();
    }
    Some(x)
}

/// Hadamard bound: product of the Euclidean row norms.
pub fn hadamard_bound<S: Scalar>(m: &Matrix<S>) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt())
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Float};

    fn ex(rows: &[&[i64]]) -> Matrix<Exact> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Exact::from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn anti_diagonal_sign() {
        assert_eq!(determinant(ex(&[&[0, 2], &[2, 0]])), Exact::from_i64(-4));
        assert_eq!(
            determinant(ex(&[&[0, 0, 3], &[0, 3, 0], &[3, 0, 0]])),
            Exact::from_i64(-27)
        );
        assert_eq!(determinant::<Exact>(vec![]), Exact::one());
    }

    #[test]
    fn singular_matrix() {
        assert_eq!(determinant(ex(&[&[1, 1], &[1, 1]])), Exact::zero());
        assert!(solve(ex(&[&[1, 1], &[1, 1]]), vec![Exact::one(), Exact::one()]).is_none());
    }

    #[test]
    fn solve_exact_and_float() {
        let x = solve(ex(&[&[2, 1], &[1, 3]]), vec![Exact::from_i64(3), Exact::from_i64(5)]).unwrap();
        assert_eq!(x, vec![Exact::from_ratio(4, 5), Exact::from_ratio(7, 5)]);
        let m: Matrix<Float> = vec![
            vec![Float::new(1e-3, 0.0), Float::new(1.0, 0.0)],
            vec![Float::new(1.0, 0.0), Float::new(1.0, 0.0)],
        ];
        let x = solve(m, vec![Float::new(1.0, 0.0), Float::new(2.0, 0.0)]).unwrap();
        assert!((x[0].re - 1.001_001_001).abs() < 1e-8);
    }

    #[test]
    fn hadamard_dominates_determinant() {
        let m = ex(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let bound = hadamard_bound(&m);
        assert!(determinant(m).modulus() <= bound);
    }
}
