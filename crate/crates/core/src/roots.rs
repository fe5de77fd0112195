//! Floating-point complex roots through the companion matrix.
//!
//! Used only where the contract is numerical: the middle-coefficient
//! cross-check and the multiplicative relation search. Exact decisions go
//! through [`crate::intpoly`].

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::intpoly::IntPolynomial;

/// All complex roots of `f` (with multiplicity), sorted by real then
/// imaginary part.
///
/// `scale` rescales the variable before the eigenvalue solve (`X = scale·Z`),
/// which keeps the companion matrix well conditioned for Weil polynomials
/// where every root has modulus `√q`. Roots are Newton-polished on the
/// unscaled polynomial afterwards.
pub fn complex_roots(f: &IntPolynomial, scale: f64) -> Result<Vec<Complex64>> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let raw = f.to_f64();
    // coefficients of f(scale·Z) / (lead·scale^n)
    let lead = raw[n] * scale.powi(n as i32);
    let scaled: Vec<f64> = raw
        .iter()
        .enumerate()
        .map(|(i, c)| c * scale.powi(i as i32) / lead)
        .collect();
    // Scaled Weil polynomials often have orthogonal companion matrices, on
    // which the unshifted QR sweep can stall; retry on a translated variable.
    let eig = SHIFTS
        .iter()
        .find_map(|&s| companion_eigenvalues(&taylor_shift(&scaled, s)).map(|e| (s, e)))
        .map(|(s, e)| e.into_iter().map(|z| z + s).collect::<Vec<Complex64>>())
        .ok_or(Error::RootFinder {
            residual: f64::INFINITY,
            tol: 0.0,
        })?;
    let derivative = f.derivative();
    let mut roots: Vec<Complex64> = eig
        .iter()
        .map(|z| {
            let mut z = Complex64::new(z.re, z.im) * scale;
            for _ in 0..4 {
                let d = derivative.eval_complex(z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = f.eval_complex(z) / d;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z -= step;
                if step.norm() <= 1e-15 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// [`complex_roots`] computed layer by layer on `rad(f)`, `rad(f / rad(f))`,
/// …, so that repeated roots come from squarefree polynomials and keep full
/// accuracy. Each root appears with its multiplicity.
pub fn complex_roots_by_layer(f: &IntPolynomial, scale: f64) -> Result<Vec<Complex64>> {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let layer = rest.squarefree_part();
        roots.extend(complex_roots(&layer, scale)?);
        rest = rest.div_exact(&layer).ok_or(Error::ZeroPolynomial)?;
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

const SHIFTS: [f64; 3] = [0.0, 0.3719, -0.6173];

/// Coefficients of `p(W + s)` from those of `p(Z)` (constant term first).
fn taylor_shift(coeffs: &[f64], s: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    if s == 0.0 {
        return c;
    }
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            c[j] += s * c[j + 1];
        }
    }
    c
}

/// Eigenvalues of the companion matrix of a monic polynomial, or `None` if
/// the Schur iteration does not converge.
fn companion_eigenvalues(monic: &[f64]) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -monic[i];
    }
    let schur = Schur::try_new(companion, f64::EPSILON, 10_000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

/// Largest `|f(z)| / Σ|c_i||z|^i` over the given roots.
pub fn relative_residual(f: &IntPolynomial, roots: &[Complex64]) -> f64 {
    let coeffs = f.to_f64();
    roots
        .iter()
        .map(|&z| {
            let value = f.eval_complex(z).norm();
            let r = z.norm();
            let magnitude: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.abs() * r.powi(i as i32))
                .sum();
            value / magnitude.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        // X^2 - 2X + 5 = (X - 1 - 2i)(X - 1 + 2i)
        let f = IntPolynomial::from_i64(&[5, -2, 1]);
        let roots = complex_roots(&f, 5f64.sqrt()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - Complex64::new(1.0, -2.0)).norm() < 1e-12);
        assert!((roots[1] - Complex64::new(1.0, 2.0)).norm() < 1e-12);
        assert!(relative_residual(&f, &roots) < 1e-14);
    }

    #[test]
    fn cubic_with_real_roots() {
        // (X-1)(X-2)(X+3)
        let f = IntPolynomial::from_i64(&[6, -7, 0, 1]);
        let roots = complex_roots(&f, 1.0).unwrap();
        let re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
