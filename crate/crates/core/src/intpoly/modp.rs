use std::fmt;

use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::primes::{inv_mod, is_prime};

/// Polynomial over `F_p` with residues in `[0, p)`, constant term first.
///
/// The modulus must be below `2^32` so that residue products fit in a `u64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPolynomial {
    prime: u64,
    coeffs: Vec<u64>,
}

impl ModPolynomial {
    pub fn new(prime: u64, coeffs: Vec<u64>) -> Self {
        assert!((2..1 << 32).contains(&prime), "modulus out of range: {prime}");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % prime).collect();
        trim(&mut coeffs);
        Self { prime, coeffs }
    }

    /// Reduces signed coefficients.
    pub fn from_i64(prime: u64, coeffs: &[i64]) -> Self {
        let m = prime as i64;
        Self::new(prime, coeffs.iter().map(|&c| c.rem_euclid(m) as u64).collect())
    }

    fn raw(prime: u64, mut coeffs: Vec<u64>) -> Self {
        trim(&mut coeffs);
        Self { prime, coeffs }
    }

    pub fn zero(prime: u64) -> Self {
        Self::raw(prime, Vec::new())
    }

    pub fn x(prime: u64) -> Self {
        Self::raw(prime, vec![0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.prime)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.prime;
        let c = c % p;
        Self::raw(p, self.coeffs.iter().map(|&a| a * c % p).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::raw(
            p,
            (0..n)
                .map(|i| {
                    let s = self.coeff(i) + other.coeff(i);
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::raw(
            p,
            (0..n)
                .map(|i| (self.coeff(i) + p - other.coeff(i)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.prime);
        }
        let p = self.prime;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::raw(p, out)
    }

    pub fn derivative(&self) -> Self {
        let p = self.prime;
        Self::raw(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % p) * c % p)
                .collect(),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.prime;
        let db = divisor.degree().expect("division by the zero polynomial");
        let inv = inv_mod(divisor.leading().unwrap(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = r[top] * inv % p;
            if c == 0 {
                continue;
            }
            q[top - db] = c;
            let shift = top - db;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * b % p) % p;
            }
        }
        r.truncate(db);
        (Self::raw(p, q), Self::raw(p, r))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::raw(self.prime, vec![1]).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// `self^e` without reduction by a modulus.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::raw(self.prime, vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.prime;
        let x = x % p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    /// True when `gcd(f, f')` is constant (a nonzero constant counts).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Lifts residues to integers in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| c.into()).collect())
    }

    /// `g(X)` with `g(X^p) = self` (valid when only exponents divisible by
    /// `p` occur; the Frobenius fixes `F_p` so coefficients are unchanged).
    fn pth_root(&self) -> Self {
        let p = self.prime as usize;
        Self::raw(
            self.prime,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.prime)
    }
}

/// Degrees of the irreducible factors of a polynomial over `F_p`, with
/// multiplicity, and whether the polynomial is squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct DegreePattern {
    /// Ascending.
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

impl DegreePattern {
    /// `{1^(n-ell), ell}` and squarefree: the Frobenius acts as an
    /// `ell`-cycle on the roots.
    pub fn is_single_cycle(&self, ell: usize) -> bool {
        if !self.squarefree {
            return false;
        }
        match self.degrees.split_last() {
            Some((&top, rest)) => top == ell && rest.iter().all(|&d| d == 1),
            None => false,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// Squarefree factorization over `F_p`: pairs `(factor, multiplicity)` with
/// each factor monic squarefree and the factors pairwise coprime.
fn squarefree_factorization(f: &ModPolynomial) -> Vec<(ModPolynomial, usize)> {
    let p = f.prime() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let factor = w.div_rem(&y).0;
        if factor.degree().unwrap_or(0) > 0 {
            out.push((factor.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree_factorization(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: one entry per
/// irreducible factor.
fn distinct_degree_degrees(f: &ModPolynomial, out: &mut Vec<usize>) {
    let p = f.prime();
    let x = ModPolynomial::x(p);
    let mut rest = f.clone();
    let mut frob = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        frob = frob.pow_mod(p, &rest);
        let block = rest.gcd(&frob.sub(&x));
        let bd = block.degree().unwrap_or(0);
        if bd > 0 {
            out.extend(std::iter::repeat_n(d, bd / d));
            rest = rest.div_rem(&block).0;
            frob = frob.rem(&rest);
        }
        d += 1;
    }
    if let Some(r) = rest.degree().filter(|&r| r > 0) {
        out.push(r);
    }
}

/// Factorization degree pattern over `F_p`.
pub fn degree_pattern(f: &ModPolynomial) -> Result<DegreePattern> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_prime(f.prime()) {
        return Err(Error::NotPrime(f.prime()));
    }
    let f = f.monic();
    let mut degrees = Vec::new();
    let mut squarefree = true;
    for (factor, mult) in squarefree_factorization(&f) {
        squarefree &= mult == 1;
        let mut local = Vec::new();
        distinct_degree_degrees(&factor, &mut local);
        for d in local {
            degrees.extend(std::iter::repeat_n(d, mult));
        }
    }
    degrees.sort_unstable();
    Ok(DegreePattern {
        degrees,
        squarefree,
    })
}

/// `f^e` with coefficients reduced mod `prime`.
pub fn power_coefficients(f: &IntPolynomial, e: u64, prime: u64) -> Result<ModPolynomial> {
    if e == 0 {
        return Err(Error::invalid("exponent must be at least 1"));
    }
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    Ok(f.reduce_mod(prime).pow(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[i64]) -> ModPolynomial {
        ModPolynomial::from_i64(p, c)
    }

    fn pattern(p: u64, c: &[i64]) -> DegreePattern {
        degree_pattern(&mp(p, c)).unwrap()
    }

    #[test]
    fn worked_patterns() {
        // X^4 + 1 = (X^2+X+2)(X^2+2X+2) over F_3
        assert_eq!(pattern(3, &[1, 0, 0, 0, 1]).degrees, vec![2, 2]);
        assert!(pattern(3, &[1, 0, 0, 0, 1]).squarefree);
        assert_eq!(
            mp(3, &[2, 1, 1]).mul(&mp(3, &[2, 2, 1])),
            mp(3, &[1, 0, 0, 0, 1])
        );
        assert_eq!(pattern(5, &[1, 0, 1]).degrees, vec![1, 1]);
        assert_eq!(pattern(3, &[1, 0, 1]).degrees, vec![2]);
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        // (X+1)^2 (X^2+1) over F_3
        let f = mp(3, &[1, 1]).pow(2).mul(&mp(3, &[1, 0, 1]));
        let pat = degree_pattern(&f).unwrap();
        assert_eq!(pat.degrees, vec![1, 1, 2]);
        assert!(!pat.squarefree);
        // X^3 - X^... : (X^2+1)^3 has zero derivative over F_3
        let g = mp(3, &[1, 0, 1]).pow(3);
        assert!(g.derivative().is_zero());
        let pat = degree_pattern(&g).unwrap();
        assert_eq!(pat.degrees, vec![2, 2, 2]);
        assert!(!pat.squarefree);
    }

    #[test]
    fn pattern_errors() {
        assert_eq!(degree_pattern(&ModPolynomial::zero(5)), Err(Error::ZeroPolynomial));
        assert_eq!(degree_pattern(&mp(9, &[1, 1])), Err(Error::NotPrime(9)));
        assert_eq!(pattern(7, &[3]).degrees, Vec::<usize>::new());
    }

    #[test]
    fn single_cycle_shape() {
        let pat = DegreePattern {
            degrees: vec![1, 1, 2],
            squarefree: true,
        };
        assert!(pat.is_single_cycle(2));
        assert!(!pat.is_single_cycle(4));
        let pat = DegreePattern {
            degrees: vec![2, 2],
            squarefree: true,
        };
        assert!(!pat.is_single_cycle(2));
    }

    #[test]
    fn powers() {
        let f = IntPolynomial::from_i64(&[0, 1, 0, 1]);
        assert_eq!(power_coefficients(&f, 2, 5).unwrap(), mp(5, &[0, 0, 1, 0, 2, 0, 1]));
        let x = IntPolynomial::from_i64(&[0, 1]);
        assert_eq!(
            power_coefficients(&x, 7, 3).unwrap(),
            mp(3, &[0, 0, 0, 0, 0, 0, 0, 1])
        );
        let g = IntPolynomial::from_i64(&[0, 1, 0, 0, 0, 1]);
        assert_eq!(power_coefficients(&g, 1, 3).unwrap(), g.reduce_mod(3));
        assert!(power_coefficients(&g, 0, 3).is_err());
    }

    #[test]
    fn division_identity() {
        let a = mp(7, &[3, 0, 5, 1, 6, 2]);
        let b = mp(7, &[1, 4, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
