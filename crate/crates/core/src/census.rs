//! Exhaustive sweeps of the coefficient box.
//!
//! Every point of `R_{g,q}` is classified (Weil status, ordinarity, Galois
//! certification) and the counts are aggregated per slab `a_1 = const`.
//! Slab results are combined by integer addition in slab order, so the
//! record does not depend on the number of worker threads.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{auxiliary_primes, certify_with_primes, certify_w2g, GaloisVerdict};
use crate::sieve::{exception_bound, rational_string, ExceptionBound};
use crate::weilgroup::{prop2_decide, Prop2Verdict};
use crate::weilpoly::{
    enumerate_box, expand_frobenius, is_ordinary, newton_slopes, trace_polynomial, trace_status, validate_field,
    WeilBox, WeilCoefficients, WeilStatus,
};

/// `max(50, ⌈q^{1/4}⌉)`.
pub fn default_sieve_y(q: u64) -> u64 {
    let mut r = (q as f64).powf(0.25).floor() as u64;
    while r.pow(4) < q {
        r += 1;
    }
    while r > 0 && (r - 1).pow(4) >= q {
        r -= 1;
    }
    r.max(50)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counts {
    pub box_count: u64,
    /// Weil-valid lattice points (interior and boundary).
    pub weil_count: u64,
    /// Weil-valid points with a real root `±√q`.
    pub real_root_count: u64,
    /// Weil-valid and ordinary.
    pub ordinary_count: u64,
    /// Weil-valid with Galois group certified `W_{2g}`.
    pub certified_w2g_count: u64,
    /// Interior, ordinary and certified.
    pub both_count: u64,
}

impl Counts {
    pub fn interior_count(&self) -> u64 {
        self.weil_count - self.real_root_count
    }

    fn add(self, o: Counts) -> Counts {
        Counts {
            box_count: self.box_count + o.box_count,
            weil_count: self.weil_count + o.weil_count,
            real_root_count: self.real_root_count + o.real_root_count,
            ordinary_count: self.ordinary_count + o.ordinary_count,
            certified_w2g_count: self.certified_w2g_count + o.certified_w2g_count,
            both_count: self.both_count + o.both_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub g: usize,
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub sieve_y: u64,
    #[serde(flatten)]
    pub counts: Counts,
    /// `both / weil` as `"n/d"`.
    pub ratio_weil: String,
    /// `both / interior` as `"n/d"`.
    pub ratio_interior: String,
    /// Wall-clock time; never serialized so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl CensusRecord {
    fn new(g: usize, p: u64, k: u32, sieve_y: u64, counts: Counts, elapsed: Duration) -> Self {
        Self {
            g,
            p,
            k,
            q: p.pow(k),
            sieve_y,
            counts,
            ratio_weil: ratio_string(counts.both_count, counts.weil_count),
            ratio_interior: ratio_string(counts.both_count, counts.interior_count()),
            elapsed: Some(elapsed),
        }
    }

    pub fn ratio_weil_value(&self) -> f64 {
        ratio_value(self.counts.both_count, self.counts.weil_count)
    }

    pub fn ratio_interior_value(&self) -> f64 {
        ratio_value(self.counts.both_count, self.counts.interior_count())
    }
}

/// Reduced `"n/d"`, or `"0/0"` for an empty denominator.
pub fn ratio_string(num: u64, den: u64) -> String {
    if den == 0 {
        return "0/0".to_string();
    }
    rational_string(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn ratio_value(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn classify_slab(b: &WeilBox, a1: i64, primes: &[u64], sieve_y: u64) -> Counts {
    let mut c = Counts::default();
    for w in b.slab(a1) {
        c.box_count += 1;
        let f = expand_frobenius(&w);
        let status = trace_status(&trace_polynomial(&f).expect("expansion is q-symmetric"));
        if !status.is_weil() {
            continue;
        }
        c.weil_count += 1;
        let interior = status == WeilStatus::WeilInterior;
        if !interior {
            c.real_root_count += 1;
        }
        let ordinary = is_ordinary(&w);
        if ordinary {
            c.ordinary_count += 1;
        }
        let certified = certify_with_primes(&f, primes, sieve_y).is_certified();
        if certified {
            c.certified_w2g_count += 1;
        }
        if interior && ordinary && certified {
            c.both_count += 1;
        }
    }
    c
}

/// Per-slab counts in slab order (`a_1` ascending).
pub fn census_slabs(g: usize, p: u64, k: u32, sieve_y: u64) -> Result<Vec<(i64, Counts)>> {
    let b = enumerate_box(g, p, k, crate::enumeration_limit())?;
    let primes = auxiliary_primes(p, sieve_y);
    let slabs: Vec<i64> = b.slab_values().collect();
    Ok(slabs
        .par_iter()
        .map(|&a1| (a1, classify_slab(&b, a1, &primes, sieve_y)))
        .collect())
}

/// Exact counts over `R_{g,q}` using the global rayon pool.
pub fn run_census(g: usize, p: u64, k: u32, sieve_y: u64) -> Result<CensusRecord> {
    validate_field(g, p, k)?;
    let start = Instant::now();
    let counts = census_slabs(g, p, k, sieve_y)?
        .into_iter()
        .fold(Counts::default(), |acc, (_, c)| acc.add(c));
    Ok(CensusRecord::new(g, p, k, sieve_y, counts, start.elapsed()))
}

/// [`run_census`] on a dedicated pool with `threads` workers.
pub fn run_census_with(g: usize, p: u64, k: u32, sieve_y: u64, threads: usize) -> Result<CensusRecord> {
    with_threads(threads, || run_census(g, p, k, sieve_y))
}

pub(crate) fn with_threads<T: Send>(threads: usize, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    pool.install(job)
}

/// Everything known about one coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub g: usize,
    pub p: u64,
    pub k: u32,
    pub a: Vec<i64>,
    pub frobenius: String,
    pub trace: String,
    pub weil_status: WeilStatus,
    pub ordinary: bool,
    pub newton_slopes: Vec<String>,
    pub galois: GaloisVerdict,
    pub prop2: Prop2Verdict,
    pub sieve_y: u64,
}

pub fn classify(w: &WeilCoefficients, sieve_y: u64) -> Classification {
    let f = expand_frobenius(w);
    let h = trace_polynomial(&f).expect("expansion is q-symmetric");
    Classification {
        g: w.g(),
        p: w.p(),
        k: w.k(),
        a: w.a().to_vec(),
        frobenius: f.poly().to_string(),
        trace: h.poly().to_string(),
        weil_status: trace_status(&h),
        ordinary: is_ordinary(w),
        newton_slopes: newton_slopes(&f).iter().map(|s| s.to_string()).collect(),
        galois: certify_w2g(&f, sieve_y),
        prop2: prop2_decide(w, sieve_y),
        sieve_y,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendSeries {
    pub g: usize,
    pub p: u64,
    pub k0: u32,
    pub n_max: u32,
    pub records: Vec<CensusRecord>,
    /// Least-squares slope of `log weil_count` against `log q`; absent
    /// with fewer than two points.
    pub growth_exponent: Option<f64>,
}

impl TrendSeries {
    pub fn q0(&self) -> u64 {
        self.p.pow(self.k0)
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Censuses at `q = q_0^n`, `n = 1..=n_max`, where `q_0 = p^{k_0}`.
/// `sieve_y = None` uses [`default_sieve_y`] at each `q`.
pub fn trend(g: usize, p: u64, k0: u32, n_max: u32, sieve_y: Option<u64>) -> Result<TrendSeries> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let mut records = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let k = k0
            .checked_mul(n)
            .ok_or_else(|| Error::invalid("exponent overflow"))?;
        validate_field(g, p, k)?;
        let y = sieve_y.unwrap_or_else(|| default_sieve_y(p.pow(k)));
        records.push(run_census(g, p, k, y)?);
    }
    let xs: Vec<f64> = records.iter().map(|r| (r.q as f64).ln()).collect();
    let ys: Vec<f64> = records
        .iter()
        .map(|r| (r.counts.weil_count.max(1) as f64).ln())
        .collect();
    Ok(TrendSeries {
        g,
        p,
        k0,
        n_max,
        growth_exponent: least_squares_slope(&xs, &ys),
        records,
    })
}

pub fn trend_with(g: usize, p: u64, k0: u32, n_max: u32, sieve_y: Option<u64>, threads: usize) -> Result<TrendSeries> {
    with_threads(threads, || trend(g, p, k0, n_max, sieve_y))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VgEstimate {
    /// `weil_count · q/φ(q) · q^{-g(g+1)/4}` per record.
    pub weil_based: Vec<f64>,
    /// The same normalization applied to `ordinary_count`.
    pub ordinary_based: Vec<f64>,
    /// `max |v(n+1) - v(n)| / |v(n)|` over consecutive weil-based values.
    pub max_relative_deviation: f64,
}

/// Per-`n` estimates of the constant `v_g` in the growth law.
pub fn estimate_vg(series: &TrendSeries) -> Result<VgEstimate> {
    if series.records.len() < 2 {
        return Err(Error::invalid("estimate_vg needs at least two records"));
    }
    let g = series.g as f64;
    let phi_ratio = 1.0 - 1.0 / series.p as f64;
    let normalize = |count: u64, q: u64| {
        let q = q as f64;
        count as f64 / phi_ratio / q.powf(g * (g + 1.0) / 4.0)
    };
    let weil_based: Vec<f64> = series
        .records
        .iter()
        .map(|r| normalize(r.counts.weil_count, r.q))
        .collect();
    let ordinary_based = series
        .records
        .iter()
        .map(|r| normalize(r.counts.ordinary_count, r.q))
        .collect();
    let max_relative_deviation = weil_based
        .windows(2)
        .map(|w| (w[1] - w[0]).abs() / w[0].abs())
        .fold(0.0, f64::max);
    Ok(VgEstimate {
        weil_based,
        ordinary_based,
        max_relative_deviation,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionComparison {
    pub bound: ExceptionBound,
    pub sieve_y: u64,
    /// Weil-valid points without a `W_{2g}` certificate.
    pub noncertified_weil: u64,
}

/// The exceptional-set reference magnitude next to the census count it
/// bounds.
pub fn exception_comparison(g: usize, p: u64, k: u32, sieve_y: u64) -> Result<ExceptionComparison> {
    let bound = exception_bound(g, validate_field(g, p, k)?)?;
    let record = run_census(g, p, k, sieve_y)?;
    Ok(ExceptionComparison {
        bound,
        sieve_y,
        noncertified_weil: record.counts.weil_count - record.counts.certified_w2g_count,
    })
}
