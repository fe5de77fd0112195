use std::cmp::Ordering;

use super::{IntPolynomial, QuadraticRingElement};
use crate::error::{Error, Result};

/// Sturm sequence `p0 = h, p1 = h', p_{i+1} = -prem(p_{i-1}, p_i)` with
/// positive pseudo-remainder multipliers and contents divided out, so every
/// entry carries the sign of the classical sequence.
pub fn sturm_sequence(h: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![h.clone()];
    if h.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(h.derivative());
    loop {
        let n = seq.len();
        let r = seq[n - 2].positive_pseudo_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        let content = r.content();
        let next = IntPolynomial::new(r.coeffs().iter().map(|c| -(c / &content)).collect());
        seq.push(next);
    }
    seq
}

fn sign_changes(seq: &[IntPolynomial], x: &QuadraticRingElement) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| p.eval_quadratic(x).signum())
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a squarefree `h` in `(left, right]`.
///
/// All evaluations happen exactly in `Z[√d]`; zeros are dropped when
/// counting sign changes, which makes the count correct even when an endpoint
/// is itself a root.
pub fn sturm_root_count(
    h: &IntPolynomial,
    left: &QuadraticRingElement,
    right: &QuadraticRingElement,
) -> Result<usize> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if left >= right {
        return Err(Error::EmptyInterval);
    }
    if !h.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let seq = sturm_sequence(h);
    let at_left = sign_changes(&seq, left);
    let at_right = sign_changes(&seq, right);
    Ok(at_left - at_right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(u: i64) -> QuadraticRingElement {
        QuadraticRingElement::integer(BigInt::from(u), BigInt::from(1))
    }

    fn surd(v: i64, d: i64) -> QuadraticRingElement {
        QuadraticRingElement::new(BigInt::from(0), BigInt::from(v), BigInt::from(d))
    }

    #[test]
    fn linear_root_at_zero() {
        let h = IntPolynomial::from_i64(&[0, 1]);
        assert_eq!(sturm_root_count(&h, &int(-1), &int(1)), Ok(1));
    }

    #[test]
    fn roots_plus_minus_sqrt2() {
        let h = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_root_count(&h, &surd(-2, 2), &surd(2, 2)), Ok(2));
        // half-open: the root √2 is the right endpoint and counts, -√2 as the
        // left endpoint does not
        assert_eq!(sturm_root_count(&h, &surd(-1, 2), &surd(1, 2)), Ok(1));
    }

    #[test]
    fn trace_polynomial_example() {
        // X^2 + X - 4, roots ≈ 1.56 and -2.56, interval ±2√3 ≈ ±3.464
        let h = IntPolynomial::from_i64(&[-4, 1, 1]);
        assert_eq!(sturm_root_count(&h, &surd(-2, 3), &surd(2, 3)), Ok(2));
        assert_eq!(sturm_root_count(&h, &int(0), &surd(2, 3)), Ok(1));
    }

    #[test]
    fn errors() {
        let h = IntPolynomial::from_i64(&[1, 2, 1]);
        assert_eq!(sturm_root_count(&h, &int(-3), &int(3)), Err(Error::NotSquarefree));
        let h = IntPolynomial::from_i64(&[0, 1]);
        assert_eq!(sturm_root_count(&h, &int(1), &int(1)), Err(Error::EmptyInterval));
        assert_eq!(
            sturm_root_count(&IntPolynomial::zero(), &int(0), &int(1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn constant_has_no_roots() {
        let h = IntPolynomial::from_i64(&[5]);
        assert_eq!(sturm_root_count(&h, &int(-10), &int(10)), Ok(0));
    }
}
