use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `u + v·√d` with `d` a square-free positive integer.
///
/// Signs and comparisons are exact: when `u` and `v` have opposite signs the
/// sign is decided by comparing `u²` with `v²·d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticRingElement {
    u: BigInt,
    v: BigInt,
    d: BigInt,
}

impl QuadraticRingElement {
    pub fn new(u: BigInt, v: BigInt, d: BigInt) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        Self { u, v, d }
    }

    pub fn integer(u: BigInt, d: BigInt) -> Self {
        Self::new(u, BigInt::zero(), d)
    }

    /// `2√q` for `q = p^k`: rational (`d = 1`) when `k` is even, else
    /// `2·p^{⌊k/2⌋}·√p`.
    pub fn two_sqrt_q(p: u64, k: u32) -> Self {
        let half = BigInt::from(p).pow(k / 2);
        if k.is_multiple_of(2) {
            Self::integer(BigInt::from(2) * half, BigInt::one())
        } else {
            Self::new(BigInt::zero(), BigInt::from(2) * half, BigInt::from(p))
        }
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Exact sign, as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        let su = self.u.sign();
        let sv = self.v.sign();
        use num_bigint::Sign::*;
        match (su, sv) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            (Plus, Minus) => (&self.u * &self.u).cmp(&(&self.v * &self.v * &self.d)),
            (Minus, Plus) => (&self.v * &self.v * &self.d).cmp(&(&self.u * &self.u)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        u + v * d.sqrt()
    }

    fn common_radicand(&self, other: &Self) -> BigInt {
        if self.d == other.d || other.v.is_zero() {
            self.d.clone()
        } else if self.v.is_zero() {
            other.d.clone()
        } else {
            panic!(
                "mixed radicands {} and {} in one computation",
                self.d, other.d
            )
        }
    }
}

impl PartialOrd for QuadraticRingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticRingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Add for &QuadraticRingElement {
    type Output = QuadraticRingElement;

    fn add(self, rhs: &QuadraticRingElement) -> QuadraticRingElement {
        let d = self.common_radicand(rhs);
        QuadraticRingElement::new(&self.u + &rhs.u, &self.v + &rhs.v, d)
    }
}

impl Sub for &QuadraticRingElement {
    type Output = QuadraticRingElement;

    fn sub(self, rhs: &QuadraticRingElement) -> QuadraticRingElement {
        let d = self.common_radicand(rhs);
        QuadraticRingElement::new(&self.u - &rhs.u, &self.v - &rhs.v, d)
    }
}

impl Mul for &QuadraticRingElement {
    type Output = QuadraticRingElement;

    fn mul(self, rhs: &QuadraticRingElement) -> QuadraticRingElement {
        let d = self.common_radicand(rhs);
        let u = &self.u * &rhs.u + &self.v * &rhs.v * &d;
        let v = &self.u * &rhs.v + &self.v * &rhs.u;
        QuadraticRingElement::new(u, v, d)
    }
}

impl Neg for &QuadraticRingElement {
    type Output = QuadraticRingElement;

    fn neg(self) -> QuadraticRingElement {
        QuadraticRingElement::new(-&self.u, -&self.v, self.d.clone())
    }
}

impl fmt::Display for QuadraticRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{} + {}*sqrt({})", self.u, self.v, self.d)
        }
    }
}
