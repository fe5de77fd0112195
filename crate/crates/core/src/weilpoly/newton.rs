use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use super::FrobeniusPolynomial;
use crate::error::{Error, Result};
use crate::roots::complex_roots_by_layer;

fn valuation(c: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut c = c.clone();
    let mut v = 0;
    while c.is_multiple_of(&p) {
        c /= &p;
        v += 1;
    }
    v
}

/// `p`-adic valuations of the `2g` roots, normalized so that `v(q) = 1`,
/// ascending.
///
/// Read off the lower convex hull of the points `(i, v_p(c_i))`: a hull
/// segment of slope `-s` and width `w` accounts for `w` roots of valuation
/// `s`.
pub fn newton_slopes(f: &FrobeniusPolynomial) -> Vec<Ratio<i64>> {
    let points: Vec<(i64, i64)> = f
        .poly()
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, valuation(c, f.p())))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let k = f.k() as i64;
    let mut slopes = Vec::with_capacity(2 * f.g());
    for seg in hull.windows(2) {
        let (x1, y1) = seg[0];
        let (x2, y2) = seg[1];
        let width = x2 - x1;
        let s = Ratio::new(y1 - y2, width * k);
        slopes.extend(std::iter::repeat_n(s, width as usize));
    }
    slopes.sort();
    slopes
}

/// Picks one root from each pair `{π, q/π}`: the root with the largest
/// imaginary part is matched with the remaining root closest to `q/π`.
pub(crate) fn conjugate_pair_representatives(roots: &[Complex64], q: f64) -> Vec<Complex64> {
    let mut rest: Vec<Complex64> = roots.to_vec();
    let mut reps = Vec::with_capacity(roots.len() / 2);
    while !rest.is_empty() {
        let top = (0..rest.len())
            .max_by(|&i, &j| rest[i].im.total_cmp(&rest[j].im))
            .unwrap();
        let pi = rest.swap_remove(top);
        let target = q / pi;
        if let Some(partner) = (0..rest.len())
            .min_by(|&i, &j| (rest[i] - target).norm().total_cmp(&(rest[j] - target).norm()))
        {
            rest.swap_remove(partner);
        }
        reps.push(pi);
    }
    reps
}

/// Numerically evaluates `(-1)^g Σ_{|I|+|J|=g} ∏_{i∈I} π_i ∏_{j∈J} q/π_j`
/// and rounds it; the result must equal the middle coefficient `a_g`.
///
/// The sum is the `g`-th elementary symmetric function of the `2g` roots,
/// which is `(-1)^g` times the coefficient of `X^g`.
pub fn middle_coefficient_oracle(f: &FrobeniusPolynomial, tol: f64) -> Result<BigInt> {
    let g = f.g();
    if g > 6 {
        return Err(Error::invalid(format!("subset sum limited to g <= 6, got {g}")));
    }
    let q = f.q().to_f64().unwrap();
    let roots = complex_roots_by_layer(f.poly(), q.sqrt())?;
    let pis = conjugate_pair_representatives(&roots, q);
    let duals: Vec<Complex64> = pis.iter().map(|&z| q / z).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for i_mask in 0u32..1 << g {
        let j_size = g - i_mask.count_ones() as usize;
        for j_mask in 0u32..1 << g {
            if j_mask.count_ones() as usize != j_size {
                continue;
            }
            let mut term = Complex64::new(1.0, 0.0);
            for idx in 0..g {
                if i_mask >> idx & 1 == 1 {
                    term *= pis[idx];
                }
                if j_mask >> idx & 1 == 1 {
                    term *= duals[idx];
                }
            }
            sum += term;
        }
    }
    if g % 2 == 1 {
        sum = -sum;
    }
    let rounded = sum.re.round();
    let residual = (sum.re - rounded).abs().max(sum.im.abs());
    if residual > tol {
        return Err(Error::RootFinder { residual, tol });
    }
    Ok(BigInt::from(rounded as i64))
}
