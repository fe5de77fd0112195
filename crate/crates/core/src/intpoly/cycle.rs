//! Allocation-free test for the factorization pattern `{1^{n-ℓ}, ℓ}`.
//!
//! The sieve asks this of millions of small polynomials, so it works on
//! fixed stack buffers and stops at the first distinct-degree block that
//! rules the pattern out. Agrees with [`super::degree_pattern`] followed by
//! [`super::DegreePattern::is_single_cycle`].

const CAP: usize = 48;
const LAZY_LIMIT: u64 = 1 << 26;

#[derive(Clone, Copy)]
struct Poly {
    c: [u64; CAP],
    len: usize,
}

impl Poly {
    fn zero() -> Self {
        Self { c: [0; CAP], len: 0 }
    }

    fn from_slice(s: &[u64]) -> Self {
        let mut p = Self::zero();
        p.c[..s.len()].copy_from_slice(s);
        p.len = s.len();
        p.trim();
        p
    }

    fn x() -> Self {
        let mut p = Self::zero();
        p.c[1] = 1;
        p.len = 2;
        p
    }

    fn trim(&mut self) {
        while self.len > 0 && self.c[self.len - 1] == 0 {
            self.len -= 1;
        }
    }

    fn degree(&self) -> Option<usize> {
        self.len.checked_sub(1)
    }
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (a as i64, p as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i64) as u64
}

/// `a mod m` in place, `m` monic.
fn rem_monic(a: &mut [u64], len: &mut usize, m: &Poly, p: u64) {
    let dm = m.len - 1;
    while *len > dm {
        let top = *len - 1;
        let lead = a[top];
        if lead != 0 {
            let shift = top - dm;
            for i in 0..dm {
                a[shift + i] = (a[shift + i] + (p - lead) * m.c[i]) % p;
            }
        }
        a[top] = 0;
        *len -= 1;
    }
    while *len > 0 && a[*len - 1] == 0 {
        *len -= 1;
    }
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    let mut prod = [0u64; 2 * CAP];
    if a.len == 0 || b.len == 0 {
        return Poly::zero();
    }
    let mut len = a.len + b.len - 1;
    if p < LAZY_LIMIT {
        // at most CAP products below 2^52 each: no overflow before reducing
        for i in 0..a.len {
            for j in 0..b.len {
                prod[i + j] += a.c[i] * b.c[j];
            }
        }
        for x in prod[..len].iter_mut() {
            *x %= p;
        }
    } else {
        for i in 0..a.len {
            for j in 0..b.len {
                prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p;
            }
        }
    }
    rem_monic(&mut prod, &mut len, m, p);
    let mut out = Poly::zero();
    out.c[..len].copy_from_slice(&prod[..len]);
    out.len = len;
    out
}

/// `base^e mod m`.
fn pow_mod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut result = Poly::from_slice(&[1]);
    let mut b = *base;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m, p);
        }
    }
    result
}

fn make_monic(a: &mut Poly, p: u64) {
    if let Some(d) = a.degree() {
        let li = inv(a.c[d], p);
        for x in a.c[..a.len].iter_mut() {
            *x = *x * li % p;
        }
    }
}

/// Monic gcd.
fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut x = *a;
    let mut y = *b;
    make_monic(&mut y, p);
    while y.len > 0 {
        rem_monic(&mut x.c, &mut x.len, &y, p);
        std::mem::swap(&mut x, &mut y);
        make_monic(&mut y, p);
    }
    make_monic(&mut x, p);
    x
}

fn sub_x(a: &Poly, p: u64) -> Poly {
    let mut out = *a;
    if out.len < 2 {
        out.len = 2;
    }
    out.c[1] = (out.c[1] + p - 1) % p;
    out.trim();
    out
}

/// Exact quotient `a / d` for monic `d` dividing `a`.
fn div_exact(a: &Poly, d: &Poly, p: u64) -> Poly {
    let mut r = *a;
    let dd = d.len - 1;
    let mut q = Poly::zero();
    q.len = a.len - dd;
    for top in (dd..a.len).rev() {
        let lead = r.c[top];
        q.c[top - dd] = lead;
        if lead != 0 {
            for i in 0..=dd {
                let j = top - dd + i;
                r.c[j] = (r.c[j] + (p - lead) * d.c[i]) % p;
            }
        }
    }
    q.trim();
    q
}

/// True iff the monic polynomial with coefficients `coeffs` (constant term
/// first, reduced mod the prime `p < 2^31`, degree below 48) is squarefree
/// over `F_p` and factors as `deg - ell` linear factors times one
/// irreducible factor of degree `ell ≥ 2`.
pub fn is_single_cycle_monic(coeffs: &[u64], p: u64, ell: usize) -> bool {
    let f = Poly::from_slice(coeffs);
    let n = match f.degree() {
        Some(n) if n >= ell && ell >= 2 && n < CAP => n,
        _ => return false,
    };
    debug_assert_eq!(f.c[n], 1);
    // squarefree
    let mut deriv = Poly::zero();
    for i in 1..f.len {
        deriv.c[i - 1] = f.c[i] * (i as u64 % p) % p;
    }
    deriv.len = f.len - 1;
    deriv.trim();
    if deriv.len == 0 || gcd(&f, &deriv, p).len > 1 {
        return false;
    }
    // linear block
    let x = Poly::x();
    let mut xm = x;
    rem_monic(&mut xm.c, &mut xm.len, &f, p);
    let frob = pow_mod(&xm, p, &f, p);
    let linear = gcd(&f, &sub_x(&frob, p), p);
    if linear.len - 1 != n - ell {
        return false;
    }
    let rest = div_exact(&f, &linear, p);
    // no factor of degree 2..=ell/2 in the remaining degree-ell part
    let mut frob = frob;
    rem_monic(&mut frob.c, &mut frob.len, &rest, p);
    for _ in 2..=ell / 2 {
        frob = pow_mod(&frob, p, &rest, p);
        if gcd(&rest, &sub_x(&frob, p), p).len > 1 {
            return false;
        }
    }
    true
}
