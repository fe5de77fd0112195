//! Cartier–Manin (Hasse–Witt) matrices of hyperelliptic curves over `F_p`.
//!
//! For `y² = f(x)` of genus `g`, the matrix entry `(i, j)` is the
//! coefficient of `x^{ip - j}` in `f(x)^{(p-1)/2}`, `1 ≤ i, j ≤ g`. The curve
//! is ordinary iff the matrix is invertible.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::{power_coefficients, IntPolynomial};
use crate::primes::{inv_mod, is_prime, mod_pow};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperellipticCurve {
    p: u64,
    f: IntPolynomial,
    genus: usize,
}

impl HyperellipticCurve {
    /// `y² = f(x)` over `F_p`; `f` must keep its degree mod `p` and be
    /// squarefree there.
    pub fn new(p: u64, f: IntPolynomial) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::invalid(format!("characteristic must be an odd prime, got {p}")));
        }
        let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
        if degree < 3 {
            return Err(Error::invalid(format!("degree {degree} gives no curve of positive genus")));
        }
        let reduced = f.reduce_mod(p);
        if reduced.degree() != Some(degree) {
            return Err(Error::invalid(format!("leading coefficient vanishes mod {p}")));
        }
        if !reduced.is_squarefree() {
            return Err(Error::SingularCurve(p));
        }
        Ok(Self {
            p,
            f,
            genus: (degree - 1) / 2,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> &IntPolynomial {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HasseWittMatrix {
    pub p: u64,
    /// Row-major, `entries[i-1][j-1] = c_{ip-j}` (zero when `ip < j`).
    pub entries: Vec<Vec<u64>>,
}

impl HasseWittMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Determinant over `F_p` by Gaussian elimination.
    pub fn det(&self) -> u64 {
        let p = self.p;
        let n = self.dim();
        let mut m = self.entries.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if pivot != col {
                m.swap(pivot, col);
                det = (p - det) % p;
            }
            det = det * m[col][col] % p;
            let inv = inv_mod(m[col][col], p);
            for r in col + 1..n {
                let factor = m[r][col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = factor * m[col][c] % p;
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }
}

pub fn hasse_witt(curve: &HyperellipticCurve) -> HasseWittMatrix {
    let p = curve.p;
    let power = power_coefficients(&curve.f, (p - 1) / 2, p).expect("p is an odd prime");
    let g = curve.genus;
    let entries = (1..=g)
        .map(|i| (1..=g).map(|j| (i * p as usize).checked_sub(j).map_or(0, |e| power.coeff(e)))
                .collect())
        .collect();
    HasseWittMatrix { p, entries }
}

/// Ordinary over `F_p` iff the Hasse–Witt matrix is invertible.
pub fn is_ordinary_curve(curve: &HyperellipticCurve) -> bool {
    hasse_witt(curve).is_invertible()
}

/// [`is_ordinary_curve`] over `F_{p^k}`; only `k = 1` is supported.
pub fn is_ordinary_curve_over(curve: &HyperellipticCurve, k: u32) -> Result<bool> {
    if k != 1 {
        return Err(Error::Unsupported(format!(
            "ordinarity over F_{{{}^{k}}} needs Frobenius-twisted matrix products",
            curve.p
        )));
    }
    Ok(is_ordinary_curve(curve))
}

/// The curve `y² = x^{2g+1} + x`.
pub fn miller_curve(p: u64, g: usize) -> Result<HyperellipticCurve> {
    let mut c = vec![0i64; 2 * g + 2];
    c[1] = 1;
    c[2 * g + 1] = 1;
    HyperellipticCurve::new(p, IntPolynomial::from_i64(&c))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MillerRow {
    pub u: u64,
    /// The `v ∈ [0, g-1]` with `(p+1)/2 + u ≡ p(v+1) (mod g)`.
    pub v: u64,
    /// `(r, t)` with `r + t = (p-1)/2` and `2gt + (p+1)/2 + u = p(v+1)`.
    pub solution: Option<(u64, u64)>,
    /// `v + 1 ≡ u + (p+1)/2 (mod 2)`.
    pub parity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MillerParity {
    pub p: u64,
    pub g: usize,
    pub claims_ordinary: bool,
    pub rows: Vec<MillerRow>,
}

/// Miller's closed-form criterion for `y² = x^{2g+1} + x`, with the full
/// per-`u` diagnostics.
pub fn miller_parity(p: u64, g: usize) -> Result<MillerParity> {
    if p == 2 || !is_prime(p) {
        return Err(Error::invalid(format!("p must be an odd prime, got {p}")));
    }
    if g == 0 || (g as u64).is_multiple_of(p) {
        return Err(Error::invalid(format!("need g >= 1 and p ∤ g, got p = {p}, g = {g}")));
    }
    let gm = g as u64;
    let half_up = p.div_ceil(2);
    let half_down = (p - 1) / 2;
    let p_inv = if gm == 1 { 0 } else { modular_inverse(p % gm, gm) };
    let rows: Vec<MillerRow> = (0..gm)
        .map(|u| {
            let v = ((half_up + u) % gm * p_inv % gm + gm - 1) % gm;
            let target = p * (v + 1);
            let base = half_up + u;
            let solution = (target >= base && (target - base).is_multiple_of(2 * gm))
                .then(|| (target - base) / (2 * gm))
                .filter(|&t| t <= half_down)
                .map(|t| (half_down - t, t));
            MillerRow {
                u,
                v,
                solution,
                parity_holds: (v + 1) % 2 == (u + half_up) % 2,
            }
        })
        .collect();
    Ok(MillerParity {
        p,
        g,
        claims_ordinary: rows.iter().all(|r| r.solution.is_some()),
        rows,
    })
}

/// Inverse modulo a possibly composite `m` (extended Euclid); `a` must be
/// a unit.
fn modular_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Miller's criterion against the matrix on the same curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MillerComparison {
    pub p: u64,
    pub g: usize,
    /// Every `u` admits a solution `(r, t)`.
    pub parity_claims_ordinary: bool,
    /// The parity condition alone holds for every `u`.
    pub parity_condition_holds: bool,
    pub matrix_ordinary: bool,
}

impl MillerComparison {
    pub fn agrees(&self) -> bool {
        self.parity_claims_ordinary == self.matrix_ordinary
    }

    /// Whether reading the parity condition as sufficient for ordinarity
    /// matches the matrix.
    pub fn parity_condition_agrees(&self) -> bool {
        self.parity_condition_holds == self.matrix_ordinary
    }
}

pub fn compare_miller(p: u64, g: usize) -> Result<MillerComparison> {
    let parity = miller_parity(p, g)?;
    let curve = miller_curve(p, g)?;
    Ok(MillerComparison {
        p,
        g,
        parity_claims_ordinary: parity.claims_ordinary,
        parity_condition_holds: parity.rows.iter().all(|r| r.parity_holds),
        matrix_ordinary: is_ordinary_curve(&curve),
    })
}

/// Right-hand side `(x - u)(x^{2g+δ} + t x^g + 1)` of `T_{t,u}`.
pub fn family_t_polynomial(p: u64, g: usize, t: u64, u: u64) -> IntPolynomial {
    let delta = usize::from((g as u64).is_multiple_of(p));
    let mut inner = vec![0i64; 2 * g + delta + 1];
    inner[0] = 1;
    inner[g] += t as i64;
    inner[2 * g + delta] += 1;
    let linear = IntPolynomial::from_i64(&[-(u as i64), 1]);
    &linear * &IntPolynomial::from_i64(&inner)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyScan {
    pub p: u64,
    pub g: usize,
    pub delta: usize,
    /// First `(t, u)` in lexicographic order giving an ordinary curve.
    pub witness: Option<(u64, u64)>,
    /// Parameters examined (curves within the domain and nonsingular).
    pub examined: u64,
    /// Parameters skipped for the domain condition or singularity.
    pub skipped: u64,
}

/// Scans `T_{t,u}` over `(t, u) ∈ F_p²` in lexicographic order, examining at
/// most `max_samples` nonsingular members.
pub fn scan_family_t(p: u64, g: usize, max_samples: u64) -> Result<FamilyScan> {
    if p == 2 || !is_prime(p) {
        return Err(Error::invalid(format!("p must be an odd prime, got {p}")));
    }
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    let delta = usize::from((g as u64).is_multiple_of(p));
    let mut candidates = Vec::new();
    let mut skipped = 0;
    'outer: for t in 0..p {
        for u in 0..p {
            if candidates.len() as u64 >= max_samples {
                break 'outer;
            }
            let at_u = (mod_pow(u, (2 * g + delta) as u64, p) + t * mod_pow(u, g as u64, p) + 1) % p;
            if at_u == 0 {
                skipped += 1;
                continue;
            }
            match HyperellipticCurve::new(p, family_t_polynomial(p, g, t, u)) {
                Ok(curve) => candidates.push(((t, u), curve)),
                Err(_) => skipped += 1,
            }
        }
    }
    let witness = candidates
        .par_iter()
        .find_first(|(_, curve)| is_ordinary_curve(curve))
        .map(|(tu, _)| *tu);
    Ok(FamilyScan {
        p,
        g,
        delta,
        witness,
        examined: candidates.len() as u64,
        skipped,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct S0Table {
    pub p: u64,
    pub g: usize,
    /// `(u, ordinary)` for `u ∈ F_p` off the excluded sets.
    pub rows: Vec<(u64, bool)>,
    /// `u` with `u^{2g} = 1`.
    pub excluded: Vec<u64>,
    /// `u` with `u^{2g} = -1`, where the curve is singular.
    pub singular: Vec<u64>,
}

/// Ordinarity of `S_u : y² = (x - u)(x^{2g} + 1)` for each admissible `u`.
pub fn scan_family_s0(p: u64, g: usize) -> Result<S0Table> {
    if p == 2 || !is_prime(p) {
        return Err(Error::invalid(format!("p must be an odd prime, got {p}")));
    }
    if g == 0 || !g.is_multiple_of(2) || (g as u64).is_multiple_of(p) {
        return Err(Error::invalid(format!("need g even and p ∤ g, got p = {p}, g = {g}")));
    }
    let mut table = S0Table {
        p,
        g,
        rows: Vec::new(),
        excluded: Vec::new(),
        singular: Vec::new(),
    };
    let mut inner = vec![0i64; 2 * g + 1];
    inner[0] = 1;
    inner[2 * g] = 1;
    let inner = IntPolynomial::from_i64(&inner);
    for u in 0..p {
        let power = mod_pow(u, 2 * g as u64, p);
        if power == 1 {
            table.excluded.push(u);
            continue;
        }
        if power == p - 1 {
            table.singular.push(u);
            continue;
        }
        let f = &IntPolynomial::from_i64(&[-(u as i64), 1]) * &inner;
        let curve = HyperellipticCurve::new(p, f)?;
        table.rows.push((u, is_ordinary_curve(&curve)));
    }
    Ok(table)
}
