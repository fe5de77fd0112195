//! Large-sieve quantities for the `ℓ`-cycle condition.
//!
//! `Ω(p')` is the set of residue vectors `a mod p'` whose `q`-symmetric
//! expansion is squarefree mod `p'` with factorization pattern
//! `{1^{2g-ℓ}, ℓ}`; `ω(p') = |Ω(p')|`. `P(y) = Σ_{p' ≤ y} ω(p') p'^{-g}` and
//! `P(a, y)` counts the primes `p' ≤ y` with `a mod p' ∈ Ω(p')`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{auxiliary_primes, count_l_cycles, weyl_order};
use crate::intpoly::{degree_pattern, is_single_cycle_monic};
use crate::primes::{is_prime, prime_power, primes_in};
use crate::weilpoly::{box_bounds, enumerate_box, validate_field, WeilCoefficients, MAX_GENUS};

/// Default cap on `p'^g` for exhaustive `ω(p')`.
pub const DEFAULT_OMEGA_LIMIT: u128 = 100_000_000;

/// Default number of samples when `ω(p')` is estimated.
pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveConfig {
    pub g: usize,
    pub p: u64,
    pub k: u32,
    pub ell: usize,
    pub y: u64,
    /// `p'^g` above this switches `ω(p')` to sampling.
    pub omega_limit: u128,
    pub samples: u64,
    pub seed: u64,
}

impl SieveConfig {
    /// `ell` must be one of `2, 4, 2g-2, 2g` within `[2, 2g]`.
    pub fn new(g: usize, p: u64, k: u32, ell: usize, y: u64) -> Result<Self> {
        validate_field(g, p, k)?;
        let allowed = [2, 4, 2 * g.saturating_sub(1), 2 * g];
        if !(2..=2 * g).contains(&ell) || !allowed.contains(&ell) {
            return Err(Error::invalid(format!(
                "cycle length {ell} must be one of 2, 4, 2g-2, 2g within [2, {}]",
                2 * g
            )));
        }
        Ok(Self {
            g,
            p,
            k,
            ell,
            y,
            omega_limit: DEFAULT_OMEGA_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        })
    }

    pub fn with_y(mut self, y: u64) -> Self {
        self.y = y;
        self
    }

    pub fn with_sampling(mut self, omega_limit: u128, samples: u64, seed: u64) -> Self {
        self.omega_limit = omega_limit;
        self.samples = samples;
        self.seed = seed;
        self
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// Auxiliary primes `p' ≤ y`, `p' ≠ p`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        auxiliary_primes(self.p, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum OmegaValue {
    Exact(u64),
    /// `hits` out of `samples` uniform residue vectors; `estimate` scales
    /// the hit rate to `p'^g`.
    Sampled { hits: u64, samples: u64, estimate: f64 },
}

impl OmegaValue {
    pub fn exact(&self) -> Option<u64> {
        match self {
            OmegaValue::Exact(n) => Some(*n),
            OmegaValue::Sampled { .. } => None,
        }
    }

    /// `ω(p') / p'^g` as a float.
    pub fn density(&self, prime: u64, g: usize) -> f64 {
        match self {
            OmegaValue::Exact(n) => *n as f64 / (prime as f64).powi(g as i32),
            OmegaValue::Sampled { hits, samples, .. } => *hits as f64 / *samples as f64,
        }
    }
}

fn in_omega(residues: &[u64], q_mod: u64, prime: u64, ell: usize) -> bool {
    let g = residues.len();
    let mut c = [0u64; 2 * MAX_GENUS + 1];
    c[2 * g] = 1;
    let mut qpow = 1 % prime;
    for i in (1..=g).rev() {
        let a = residues[i - 1];
        c[2 * g - i] = a;
        c[i] = a * qpow % prime;
        qpow = qpow * q_mod % prime;
    }
    c[0] = qpow;
    is_single_cycle_monic(&c[..=2 * g], prime, ell)
}

fn check_aux_prime(prime: u64, cfg: &SieveConfig) -> Result<()> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if prime == cfg.p {
        return Err(Error::invalid(format!(
            "auxiliary prime {prime} equals the characteristic"
        )));
    }
    Ok(())
}

/// `ω(p')`, exhaustively when `p'^g ≤ omega_limit`, otherwise by seeded
/// uniform sampling.
pub fn omega(prime: u64, cfg: &SieveConfig) -> Result<OmegaValue> {
    check_aux_prime(prime, cfg)?;
    let g = cfg.g;
    let q_mod = cfg.q() % prime;
    let size = (prime as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
    if size <= cfg.omega_limit {
        let count = (0..prime)
            .into_par_iter()
            .map(|first| {
                let mut residues = vec![0u64; g];
                residues[0] = first;
                let mut hits = 0u64;
                loop {
                    if in_omega(&residues, q_mod, prime, cfg.ell) {
                        hits += 1;
                    }
                    let mut i = g;
                    loop {
                        if i == 1 {
                            return hits;
                        }
                        i -= 1;
                        if residues[i] + 1 < prime {
                            residues[i] += 1;
                            break;
                        }
                        residues[i] = 0;
                    }
                }
            })
            .sum();
        return Ok(OmegaValue::Exact(count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ prime);
    let mut residues = vec![0u64; g];
    let mut hits = 0;
    for _ in 0..cfg.samples {
        for r in residues.iter_mut() {
            *r = rng.random_range(0..prime);
        }
        if in_omega(&residues, q_mod, prime, cfg.ell) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / cfg.samples as f64 * size as f64;
    Ok(OmegaValue::Sampled {
        hits,
        samples: cfg.samples,
        estimate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaEntry {
    pub prime: u64,
    pub omega: OmegaValue,
    /// `ω(p') p'^{-g}`.
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaTable {
    pub g: usize,
    pub entries: Vec<OmegaEntry>,
}

impl OmegaTable {
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.omega.exact().is_some())
    }

    /// `Σ ω(p') p'^{-g}` exactly; fails on sampled entries.
    pub fn p_of_y(&self) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for e in &self.entries {
            let n = e.omega.exact().ok_or(Error::SampledOmega(e.prime))?;
            let den = BigInt::from(e.prime).pow(self.g as u32);
            total += BigRational::new(BigInt::from(n), den);
        }
        Ok(total)
    }
}

/// `ω(p')` for every auxiliary prime `p' ≤ y`.
pub fn omega_table(cfg: &SieveConfig) -> Result<OmegaTable> {
    let entries = cfg
        .primes()
        .into_iter()
        .map(|prime| {
            let omega = omega(prime, cfg)?;
            let weight = omega.density(prime, cfg.g);
            Ok(OmegaEntry {
                prime,
                omega,
                weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OmegaTable { g: cfg.g, entries })
}

/// `P(y)` as an exact rational (zero when `y < 2`).
pub fn p_of_y(cfg: &SieveConfig) -> Result<BigRational> {
    omega_table(cfg)?.p_of_y()
}

/// `P(y)` as a float, with a two-standard-error allowance summed over the
/// sampled primes.
pub fn p_of_y_estimate(cfg: &SieveConfig) -> Result<(f64, f64)> {
    let table = omega_table(cfg)?;
    let mut value = 0.0;
    let mut error = 0.0;
    for e in &table.entries {
        value += e.weight;
        if let OmegaValue::Sampled { samples, .. } = e.omega {
            let rate = e.weight;
            error += 2.0 * (rate * (1.0 - rate) / samples as f64).sqrt();
        }
    }
    Ok((value, error))
}

fn check_point(a: &WeilCoefficients, cfg: &SieveConfig) -> Result<()> {
    if a.g() != cfg.g || a.p() != cfg.p || a.k() != cfg.k {
        return Err(Error::invalid(
            "coefficient vector does not match the sieve configuration",
        ));
    }
    Ok(())
}

fn point_in_omega(a: &WeilCoefficients, prime: u64, ell: usize) -> bool {
    degree_pattern(&a.reduce_mod(prime))
        .map(|pat| pat.is_single_cycle(ell))
        .unwrap_or(false)
}

/// Number of auxiliary primes `p' ≤ y` with `a mod p' ∈ Ω(p')`.
pub fn p_a_y(a: &WeilCoefficients, cfg: &SieveConfig) -> Result<u64> {
    check_point(a, cfg)?;
    Ok(cfg
        .primes()
        .into_iter()
        .filter(|&prime| point_in_omega(a, prime, cfg.ell))
        .count() as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub g: usize,
    pub q: u64,
    pub ell: usize,
    pub y: u64,
    pub box_count: u64,
    /// `P(y)` as `"n/d"`.
    pub p_of_y: String,
    /// `Σ_a (P(a, y) - P(y))²` as `"n/d"`.
    pub lhs: String,
    /// `P(y) ∏ (X_i + y²)` with `X_i = C(2g, i) q^{i/2}`.
    pub rhs_core: f64,
    pub ratio: f64,
}

fn box_points(cfg: &SieveConfig) -> Result<Vec<WeilCoefficients>> {
    let b = enumerate_box(cfg.g, cfg.p, cfg.k, crate::enumeration_limit())?;
    Ok(b.iter().collect())
}

/// `Σ_a (P(a, y) - P(y))²` accumulated one box point at a time.
pub fn variance_lhs_point_major(cfg: &SieveConfig) -> Result<BigRational> {
    let py = p_of_y(cfg)?;
    let mut total = BigRational::zero();
    for a in box_points(cfg)? {
        let d = BigRational::from_integer(BigInt::from(p_a_y(&a, cfg)?)) - &py;
        total += &d * &d;
    }
    Ok(total)
}

/// The same sum expanded as `Σ P(a)² - 2 P(y) Σ P(a) + N P(y)²`, with
/// `Σ P(a) = Σ_{p'} |M_{p'}|` and `Σ P(a)² = Σ_{p', p''} |M_{p'} ∩ M_{p''}|`
/// where `M_{p'}` is the set of box points reducing into `Ω(p')`.
pub fn variance_lhs_prime_major(cfg: &SieveConfig) -> Result<BigRational> {
    let py = p_of_y(cfg)?;
    let points = box_points(cfg)?;
    let membership: Vec<Vec<bool>> = cfg
        .primes()
        .into_iter()
        .map(|prime| points.iter().map(|a| point_in_omega(a, prime, cfg.ell)).collect())
        .collect();
    let s1: u64 = membership
        .iter()
        .map(|m| m.iter().filter(|&&x| x).count() as u64)
        .sum();
    let mut s2 = 0u64;
    for m1 in &membership {
        for m2 in &membership {
            s2 += m1.iter().zip(m2).filter(|(x, y)| **x && **y).count() as u64;
        }
    }
    let n = BigRational::from_integer(BigInt::from(points.len()));
    let s1 = BigRational::from_integer(BigInt::from(s1));
    let s2 = BigRational::from_integer(BigInt::from(s2));
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(s2 - two * &py * s1 + n * &py * &py)
}

/// `P(y) ∏_{i=1}^g (C(2g, i) q^{i/2} + y²)`.
pub fn variance_rhs_core(cfg: &SieveConfig, p_of_y: f64) -> f64 {
    let q = cfg.q() as f64;
    let y2 = (cfg.y as f64).powi(2);
    let mut binom = 1.0;
    let mut product = 1.0;
    for i in 1..=cfg.g {
        binom = binom * (2 * cfg.g + 1 - i) as f64 / i as f64;
        product *= binom * q.powf(i as f64 / 2.0) + y2;
    }
    p_of_y * product
}

pub(crate) fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Both sides of the large-sieve variance inequality over the whole box.
pub fn variance_report(cfg: &SieveConfig) -> Result<VarianceReport> {
    let py = p_of_y(cfg)?;
    let lhs = variance_lhs_point_major(cfg)?;
    let py_f = py.to_f64().unwrap_or(0.0);
    let rhs_core = variance_rhs_core(cfg, py_f);
    let ratio = if rhs_core > 0.0 {
        lhs.to_f64().unwrap_or(f64::NAN) / rhs_core
    } else {
        0.0
    };
    let box_count = box_bounds(cfg.g, cfg.p, cfg.k)?
        .iter()
        .map(|&b| 2 * b as u64 + 1)
        .product();
    Ok(VarianceReport {
        g: cfg.g,
        q: cfg.q(),
        ell: cfg.ell,
        y: cfg.y,
        box_count,
        p_of_y: rational_string(&py),
        lhs: rational_string(&lhs),
        rhs_core,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub g: usize,
    pub q: u64,
    pub ell: usize,
    pub y: u64,
    pub primes: Vec<u64>,
    pub densities: Vec<f64>,
    pub empirical: f64,
    /// `C_ℓ / |W_{2g}|` as `"n/d"`.
    pub theoretical: String,
    pub theoretical_value: f64,
    pub deviation: f64,
}

/// Compares the mean of `ω(p') / p'^g` over primes `p' ∈ [y/2, y]` with the
/// Chebotarev density `C_ℓ / |W_{2g}|`.
pub fn density_report(cfg: &SieveConfig) -> Result<DensityReport> {
    let c = count_l_cycles(cfg.g, cfg.ell)?;
    let order = weyl_order(cfg.g);
    let theoretical = BigRational::new(BigInt::from(c), BigInt::from(order));
    let primes: Vec<u64> = primes_in(cfg.y.div_ceil(2), cfg.y)
        .into_iter()
        .filter(|&l| l != cfg.p)
        .collect();
    if primes.is_empty() {
        return Err(Error::invalid(format!("no auxiliary primes in [{}, {}]", cfg.y / 2, cfg.y)));
    }
    let densities = primes
        .iter()
        .map(|&prime| Ok(omega(prime, cfg)?.density(prime, cfg.g)))
        .collect::<Result<Vec<f64>>>()?;
    let empirical = densities.iter().sum::<f64>() / densities.len() as f64;
    let theoretical_value = theoretical.to_f64().unwrap();
    Ok(DensityReport {
        g: cfg.g,
        q: cfg.q(),
        ell: cfg.ell,
        y: cfg.y,
        primes,
        densities,
        empirical,
        theoretical: rational_string(&theoretical),
        theoretical_value,
        deviation: (empirical - theoretical_value).abs(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionBound {
    pub g: usize,
    pub q: u64,
    /// `⌊q^{1/4}⌋`, the integer stand-in for `y = q^{1/4}`.
    pub y_used: u64,
    /// `q^{g(g+1)/4 - 1/4} log q` with implied constant 1.
    pub bound: f64,
}

/// Reference magnitude of the exceptional-set bound for `y² = q^{1/2}`.
pub fn exception_bound(g: usize, q: u64) -> Result<ExceptionBound> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
    validate_field(g, p, k)?;
    if q < 16 {
        return Err(Error::invalid(format!("q = {q} < 16 gives y < 2")));
    }
    let mut y_used = (q as f64).powf(0.25) as u64;
    while (y_used + 1).pow(4) <= q {
        y_used += 1;
    }
    while y_used.pow(4) > q {
        y_used -= 1;
    }
    let qf = q as f64;
    let exponent = (g * (g + 1)) as f64 / 4.0 - 0.25;
    Ok(ExceptionBound {
        g,
        q,
        y_used,
        bound: qf.powf(exponent) * qf.ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_omega(g: usize, q: u64, ell: usize, prime: u64) -> u64 {
        // enumerate residue vectors directly, with an independent factor test
        // for g = 1: X^2 + aX + q irreducible iff the discriminant is a
        // non-residue
        assert_eq!(g, 1);
        assert_eq!(ell, 2);
        (0..prime)
            .filter(|&a| {
                let disc = (a * a + 4 * prime * prime - 4 * (q % prime)) % prime;
                if prime == 2 {
                    // X^2 + aX + q over F_2 is irreducible only as X^2 + X + 1
                    return a % 2 == 1 && q % 2 == 1;
                }
                disc != 0 && (1..prime).all(|x| x * x % prime != disc)
            })
            .count() as u64
    }

    #[test]
    fn omega_small() {
        let cfg = SieveConfig::new(1, 5, 1, 2, 3).unwrap();
        assert_eq!(omega(3, &cfg).unwrap(), OmegaValue::Exact(brute_omega(1, 5, 2, 3)));
        assert_eq!(omega(3, &cfg).unwrap(), OmegaValue::Exact(2));
        assert_eq!(omega(2, &cfg).unwrap(), OmegaValue::Exact(brute_omega(1, 5, 2, 2)));
        assert!(omega(5, &cfg).is_err());
    }

    #[test]
    fn config_rejects_odd_ell() {
        assert!(SieveConfig::new(2, 3, 1, 3, 10).is_err());
        assert!(SieveConfig::new(1, 3, 1, 4, 10).is_err());
        assert!(SieveConfig::new(3, 3, 1, 6, 10).is_ok());
    }

    #[test]
    fn p_of_y_small() {
        let cfg = SieveConfig::new(1, 5, 1, 2, 1).unwrap();
        assert!(p_of_y(&cfg).unwrap().is_zero());
        let cfg = cfg.with_y(3);
        let expected = BigRational::new(1.into(), 2.into()) + BigRational::new(2.into(), 3.into());
        assert_eq!(p_of_y(&cfg).unwrap(), expected);
    }

    #[test]
    fn p_a_y_matches_witness() {
        let cfg = SieveConfig::new(1, 5, 1, 2, 2).unwrap();
        let a = WeilCoefficients::new(5, 1, vec![1]).unwrap();
        assert_eq!(p_a_y(&a, &cfg).unwrap(), 1);
    }

    #[test]
    fn variance_identity() {
        let cfg = SieveConfig::new(1, 5, 1, 2, 5).unwrap();
        assert_eq!(
            variance_lhs_point_major(&cfg).unwrap(),
            variance_lhs_prime_major(&cfg).unwrap()
        );
        let empty = SieveConfig::new(1, 5, 1, 2, 1).unwrap();
        assert_eq!(variance_report(&empty).unwrap().ratio, 0.0);
    }

    #[test]
    fn sampled_mode_is_flagged() {
        let cfg = SieveConfig::new(2, 3, 1, 4, 7).unwrap().with_sampling(10, 500, 1);
        assert!(matches!(omega(7, &cfg).unwrap(), OmegaValue::Sampled { samples: 500, .. }));
        assert_eq!(p_of_y(&cfg).unwrap_err(), Error::SampledOmega(5));
        assert!(p_of_y_estimate(&cfg).unwrap().0 > 0.0);
    }

    #[test]
    fn exception_bounds() {
        let b = exception_bound(1, 16).unwrap();
        assert_eq!(b.y_used, 2);
        assert!((b.bound - 2.0 * 16f64.ln()).abs() < 1e-12);
        assert!(exception_bound(1, 9).is_err());
        assert!(exception_bound(2, 81).unwrap().bound < exception_bound(2, 243).unwrap().bound);
    }

    #[test]
    fn theoretical_densities() {
        let cfg = SieveConfig::new(1, 5, 1, 2, 60).unwrap();
        assert_eq!(density_report(&cfg).unwrap().theoretical, "1/2");
    }
}
