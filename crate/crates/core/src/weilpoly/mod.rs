//! Weil polynomials parameterized by their coefficient vector.
//!
//! A [`WeilCoefficients`] value is a lattice point of the box
//! `|a_i| ≤ C(2g, i) q^{i/2}`; [`expand_frobenius`] turns it into the
//! `q`-symmetric degree-`2g` polynomial and [`trace_polynomial`] into the
//! degree-`g` companion `h` with `f(X) = X^g h(X + q/X)`. The Weil test
//! counts the real roots of `h` inside `[-2√q, 2√q]` exactly.

mod lattice;
mod newton;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::{sturm_root_count, IntPolynomial, ModPolynomial, QuadraticRingElement};
use crate::primes::{is_prime, mod_pow};

pub use lattice::{box_bounds, enumerate_box, BoxIter, WeilBox};
pub use newton::{middle_coefficient_oracle, newton_slopes};

/// Largest dimension accepted; keeps polynomial degrees at most 40.
pub const MAX_GENUS: usize = 20;

/// Coefficient vector `(a_1, …, a_g)` over `F_q`, `q = p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeilCoefficients {
    g: usize,
    p: u64,
    k: u32,
    a: Vec<i64>,
}

impl WeilCoefficients {
    /// Validates the field and checks membership in the box.
    pub fn new(p: u64, k: u32, a: Vec<i64>) -> Result<Self> {
        let bounds = box_bounds(a.len(), p, k)?;
        for (i, (&value, &bound)) in a.iter().zip(&bounds).enumerate() {
            if value.abs() > bound {
                return Err(Error::OutsideBox {
                    index: i + 1,
                    value,
                    bound,
                });
            }
        }
        Ok(Self::new_unchecked(p, k, a))
    }

    pub(crate) fn new_unchecked(p: u64, k: u32, a: Vec<i64>) -> Self {
        Self { g: a.len(), p, k, a }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// The coefficient vector after `X ↦ -X`: `(-a_1, a_2, -a_3, …)`.
    pub fn reflected(&self) -> Self {
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -c } else { c })
            .collect();
        Self::new_unchecked(self.p, self.k, a)
    }

    /// `f_a` reduced modulo an auxiliary prime.
    pub fn reduce_mod(&self, prime: u64) -> ModPolynomial {
        let m = prime as i64;
        let residues: Vec<u64> = self.a.iter().map(|&c| c.rem_euclid(m) as u64).collect();
        q_symmetric_mod(&residues, self.q() % prime, prime)
    }
}

pub(crate) fn validate_field(g: usize, p: u64, k: u32) -> Result<u64> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::invalid(format!("dimension g = {g} outside 1..={MAX_GENUS}")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    p.checked_pow(k)
        .filter(|q| *q < 1 << 32)
        .ok_or_else(|| Error::invalid(format!("q = {p}^{k} is too large")))
}

/// The `q`-symmetric expansion of residues `(a_1, …, a_g)` over `F_prime`.
pub fn q_symmetric_mod(residues: &[u64], q_mod: u64, prime: u64) -> ModPolynomial {
    let g = residues.len();
    let mut c = vec![0u64; 2 * g + 1];
    c[2 * g] = 1;
    c[0] = mod_pow(q_mod, g as u64, prime);
    // q^{g-i} for i = g down to 1
    let mut qpow = 1 % prime;
    for i in (1..=g).rev() {
        let a = residues[i - 1] % prime;
        c[2 * g - i] = a;
        c[i] = a * qpow % prime;
        qpow = qpow * q_mod % prime;
    }
    ModPolynomial::new(prime, c)
}

/// The degree-`2g` characteristic polynomial candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusPolynomial {
    poly: IntPolynomial,
    g: usize,
    p: u64,
    k: u32,
}

impl FrobeniusPolynomial {
    /// Checks monicity, even degree and `X^{2g} f(q/X) = q^g f(X)`.
    pub fn new(poly: IntPolynomial, p: u64, k: u32) -> Result<Self> {
        let deg = poly.degree().ok_or(Error::ZeroPolynomial)?;
        validate_field(deg.max(2) / 2, p, k)?;
        let q = BigInt::from(p).pow(k);
        let bad = || Error::NotQSymmetric { q: q.to_string() };
        if deg % 2 != 0 || deg == 0 || !poly.is_monic() {
            return Err(bad());
        }
        let g = deg / 2;
        let mut qpow = BigInt::one();
        for i in (0..=g).rev() {
            // coefficient of X^i equals q^{g-i} times that of X^{2g-i}
            if poly.coeff(i) != &qpow * poly.coeff(2 * g - i) {
                return Err(bad());
            }
            qpow *= &q;
        }
        Ok(Self { poly, g, p, k })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.k)
    }

    /// The coefficient vector `(a_1, …, a_g)` read off the top half.
    pub fn coefficients(&self) -> Vec<BigInt> {
        (1..=self.g).map(|i| self.poly.coeff(2 * self.g - i)).collect()
    }

    pub fn reduce_mod(&self, prime: u64) -> ModPolynomial {
        self.poly.reduce_mod(prime)
    }
}

/// The monic degree-`g` companion with roots `π + q/π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TracePolynomial {
    poly: IntPolynomial,
    g: usize,
    p: u64,
    k: u32,
}

impl TracePolynomial {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `X^g h(X + q/X)`, expanded as `Σ h_i X^{g-i} (X² + q)^i`.
    pub fn expand(&self) -> IntPolynomial {
        let q = BigInt::from(self.p).pow(self.k);
        let base = IntPolynomial::new(vec![q, BigInt::zero(), BigInt::one()]);
        let mut acc = IntPolynomial::zero();
        let mut power = IntPolynomial::one();
        for i in 0..=self.g {
            let term = power.scale(&self.poly.coeff(i)).shift(self.g - i);
            acc = &acc + &term;
            power = &power * &base;
        }
        acc
    }
}

/// Outcome of the Weil test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeilStatus {
    NotWeil,
    /// All roots on `|z| = √q`, none real.
    WeilInterior,
    /// All roots on `|z| = √q`, and `±√q` is among them.
    WeilWithRealRoot,
}

impl WeilStatus {
    pub fn is_weil(self) -> bool {
        self != WeilStatus::NotWeil
    }
}

/// `(X^{2g} + q^g) + a_1 (X^{2g-1} + q^{g-1} X) + … + a_g X^g`.
pub fn expand_frobenius(w: &WeilCoefficients) -> FrobeniusPolynomial {
    let g = w.g;
    let q = BigInt::from(w.q());
    let mut c = vec![BigInt::zero(); 2 * g + 1];
    c[2 * g] = BigInt::one();
    c[0] = q.pow(g as u32);
    let mut qpow = BigInt::one();
    for i in (1..=g).rev() {
        let a = BigInt::from(w.a[i - 1]);
        c[i] = &a * &qpow;
        c[2 * g - i] = a;
        qpow *= &q;
    }
    FrobeniusPolynomial {
        poly: IntPolynomial::new(c),
        g,
        p: w.p,
        k: w.k,
    }
}

/// The unique monic `h` with `f(X) = X^g h(X + q/X)`.
///
/// Peels off `h_i X^{g-i} (X² + q)^i` from the top degree down; anything
/// left over means `f` was not `q`-symmetric.
pub fn trace_polynomial(f: &FrobeniusPolynomial) -> Result<TracePolynomial> {
    let g = f.g;
    let q = f.q();
    let base = IntPolynomial::new(vec![q.clone(), BigInt::zero(), BigInt::one()]);
    let powers: Vec<IntPolynomial> = std::iter::successors(Some(IntPolynomial::one()), |p| {
        Some(p * &base)
    })
    .take(g + 1)
    .collect();
    let mut rest = f.poly.clone();
    let mut h = vec![BigInt::zero(); g + 1];
    for i in (0..=g).rev() {
        let c = rest.coeff(g + i);
        if !c.is_zero() {
            rest = &rest - &powers[i].scale(&c).shift(g - i);
        }
        h[i] = c;
    }
    if !rest.is_zero() {
        return Err(Error::NotQSymmetric { q: q.to_string() });
    }
    Ok(TracePolynomial {
        poly: IntPolynomial::new(h),
        g,
        p: f.p,
        k: f.k,
    })
}

/// Weil status of the trace polynomial itself.
pub fn trace_status(h: &TracePolynomial) -> WeilStatus {
    let deflated = h.poly.squarefree_part();
    let right = QuadraticRingElement::two_sqrt_q(h.p, h.k);
    let left = -&right;
    let half_open = sturm_root_count(&deflated, &left, &right)
        .expect("squarefree part is squarefree and the interval is nonempty");
    let left_root = deflated.eval_quadratic(&left).is_zero();
    let right_root = deflated.eval_quadratic(&right).is_zero();
    let closed = half_open + usize::from(left_root);
    if Some(closed) != deflated.degree() {
        WeilStatus::NotWeil
    } else if left_root || right_root {
        WeilStatus::WeilWithRealRoot
    } else {
        WeilStatus::WeilInterior
    }
}

pub fn weil_status(w: &WeilCoefficients) -> WeilStatus {
    let f = expand_frobenius(w);
    let h = trace_polynomial(&f).expect("expansion is q-symmetric");
    trace_status(&h)
}

/// Ordinary iff the middle coefficient `a_g` is prime to `p`.
pub fn is_ordinary(w: &WeilCoefficients) -> bool {
    w.a[w.g - 1].rem_euclid(w.p as i64) != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u64, k: u32, a: &[i64]) -> WeilCoefficients {
        WeilCoefficients::new(p, k, a.to_vec()).unwrap()
    }

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_frobenius(&w(5, 1, &[-2])).poly, ip(&[5, -2, 1]));
        assert_eq!(expand_frobenius(&w(3, 1, &[1, 2])).poly, ip(&[9, 3, 2, 1, 1]));
        assert_eq!(expand_frobenius(&w(3, 1, &[0, 0])).poly, ip(&[9, 0, 0, 0, 1]));
    }

    #[test]
    fn trace_examples() {
        let f = FrobeniusPolynomial::new(ip(&[5, 4, 1]), 5, 1).unwrap();
        assert_eq!(trace_polynomial(&f).unwrap().poly, ip(&[4, 1]));
        let f = FrobeniusPolynomial::new(ip(&[9, 3, 2, 1, 1]), 3, 1).unwrap();
        assert_eq!(trace_polynomial(&f).unwrap().poly, ip(&[-4, 1, 1]));
        let f = FrobeniusPolynomial::new(ip(&[9, 0, 0, 0, 1]), 3, 1).unwrap();
        let h = trace_polynomial(&f).unwrap();
        assert_eq!(h.poly, ip(&[-6, 0, 1]));
        assert_eq!(h.expand(), ip(&[9, 0, 0, 0, 1]));
    }

    #[test]
    fn asymmetric_input_rejected() {
        let err = FrobeniusPolynomial::new(ip(&[8, 3, 2, 1, 1]), 3, 1).unwrap_err();
        assert!(matches!(err, Error::NotQSymmetric { .. }));
        assert!(FrobeniusPolynomial::new(ip(&[9, 3, 2, 1]), 3, 1).is_err());
    }

    #[test]
    fn status_examples() {
        assert_eq!(weil_status(&w(5, 1, &[4])), WeilStatus::WeilInterior);
        assert_eq!(weil_status(&w(3, 1, &[1, 2])), WeilStatus::WeilInterior);
        assert_eq!(weil_status(&w(2, 2, &[4])), WeilStatus::WeilWithRealRoot);
        assert_eq!(weil_status(&w(2, 2, &[-4])), WeilStatus::WeilWithRealRoot);
        // X^4 + 9 has h = X^2 - 6, roots ±√6 inside ±2√3
        assert_eq!(weil_status(&w(3, 1, &[0, 0])), WeilStatus::WeilInterior);
        // h = X^2 + 3X - 3: root (-3-√21)/2 ≈ -3.79 lies outside
        assert_eq!(weil_status(&w(3, 1, &[3, 3])), WeilStatus::NotWeil);
    }

    #[test]
    fn ordinarity() {
        assert!(is_ordinary(&w(3, 1, &[1, 2])));
        assert!(!is_ordinary(&w(3, 1, &[1, 3])));
        assert!(!is_ordinary(&w(5, 1, &[0])));
    }

    #[test]
    fn box_membership_enforced() {
        assert!(matches!(
            WeilCoefficients::new(5, 1, vec![5]),
            Err(Error::OutsideBox { index: 1, value: 5, bound: 4 })
        ));
        assert!(WeilCoefficients::new(6, 1, vec![0]).is_err());
        assert!(WeilCoefficients::new(5, 1, vec![]).is_err());
    }

    #[test]
    fn modular_expansion_matches_integer_expansion() {
        let v = w(3, 2, &[-5, 17, 40]);
        for prime in [2u64, 5, 7, 11] {
            assert_eq!(v.reduce_mod(prime), expand_frobenius(&v).reduce_mod(prime));
        }
    }
}
