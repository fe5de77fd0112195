//! The exponent constraint system for `q`-Weil numbers in `Φ_π`.
//!
//! Write `α = q^m ∏ π_i^{n_i}` with one `π_i` from each pair `{π_i, q/π_i}`.
//! Being a `q`-Weil number forces `2m + Σ n_i = 1`; integrality of every
//! Galois image under the ordinary, full-`W_{2g}` hypotheses forces
//! `m + Σ_{i∈S} n_i ≥ 0` for every `S ⊆ {1..g}`. The only integer solutions
//! are `(0, e_i)` and `(1, -e_j)`, i.e. `α` is a conjugate of `π`.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{certify_w2g, GaloisVerdict};
use crate::roots::{complex_roots, relative_residual};
use crate::weilpoly::{expand_frobenius, is_ordinary, weil_status, FrobeniusPolynomial, WeilCoefficients, WeilStatus, MAX_GENUS};

/// `α = q^m ∏ π_i^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentVector {
    pub m: i64,
    pub n: Vec<i64>,
}

impl ExponentVector {
    pub fn new(m: i64, n: Vec<i64>) -> Self {
        Self { m, n }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0 && self.n.iter().all(|&x| x == 0)
    }

    /// `q^m ∏ π_i^{n_i}` at the given complex embedding.
    pub fn evaluate(&self, q: f64, pis: &[Complex64]) -> Complex64 {
        let mut z = Complex64::new(q.powi(self.m as i32), 0.0);
        for (pi, &e) in pis.iter().zip(&self.n) {
            z *= pi.powi(e as i32);
        }
        z
    }
}

/// The conjugates of `π` in exponent coordinates: `(0, e_i)` and
/// `(1, -e_j)`, sorted.
pub fn conjugate_pattern(g: usize) -> Vec<ExponentVector> {
    let unit = |i: usize, s: i64| (0..g).map(|j| if j == i { s } else { 0 }).collect();
    let mut out: Vec<ExponentVector> = (0..g)
        .map(|i| ExponentVector::new(0, unit(i, 1)))
        .chain((0..g).map(|j| ExponentVector::new(1, unit(j, -1))))
        .collect();
    out.sort();
    out
}

/// The equality, the subset family, and the pointwise bounds derived from
/// them (`|n_i| ≤ 1` and `|n_i + n_j| ≤ 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub g: usize,
    pub single_bounds: Vec<usize>,
    pub pair_bounds: Vec<(usize, usize)>,
}

impl ConstraintSystem {
    fn instantiate(g: usize) -> Self {
        let pair_bounds = (0..g)
            .flat_map(|i| (i + 1..g).map(move |j| (i, j)))
            .collect();
        Self {
            g,
            single_bounds: (0..g).collect(),
            pair_bounds,
        }
    }

    pub fn satisfies_equality(&self, v: &ExponentVector) -> bool {
        v.n.len() == self.g && 2 * v.m + v.n.iter().sum::<i64>() == 1
    }

    /// `m + Σ_{i∈S} n_i ≥ 0` for every one of the `2^g` subsets.
    pub fn satisfies_subset_family(&self, v: &ExponentVector) -> bool {
        (0u64..1 << self.g).all(|mask| {
            let s: i64 = (0..self.g)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| v.n[i])
                .sum();
            v.m + s >= 0
        })
    }

    pub fn satisfies_derived_bounds(&self, v: &ExponentVector) -> bool {
        self.single_bounds.iter().all(|&i| v.n[i].abs() <= 1)
            && self
                .pair_bounds
                .iter()
                .all(|&(i, j)| (v.n[i] + v.n[j]).abs() <= 1)
    }

    pub fn is_solution(&self, v: &ExponentVector) -> bool {
        self.satisfies_equality(v) && self.satisfies_subset_family(v)
    }
}

fn check_args(g: usize, bound: i64) -> Result<()> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::invalid(format!("g must be in [1, {MAX_GENUS}], got {g}")));
    }
    if bound < 1 {
        return Err(Error::invalid(format!("box bound must be at least 1, got {bound}")));
    }
    Ok(())
}

/// All `(m, n)` with `|m|, |n_i| ≤ bound` satisfying the system.
///
/// Depth-first over `n_1, n_2, …`. Taking `S` to be the set of negative
/// coordinates and substituting `m = (1 - Σn)/2` turns the subset family
/// into `Σ|n_i| ≤ 1`, and the partial sum of `|n_i|` only grows along a
/// branch, so branches exceeding 1 are cut. Every leaf is then checked
/// against the full equality and all `2^g` subset inequalities directly.
pub fn solve_constraints(g: usize, bound: i64) -> Result<Vec<ExponentVector>> {
    check_args(g, bound)?;
    let system = ConstraintSystem::instantiate(g);
    let mut out = Vec::new();
    let mut n = Vec::with_capacity(g);
    descend(&system, bound, &mut n, 0, &mut out);
    out.sort();
    Ok(out)
}

fn descend(system: &ConstraintSystem, bound: i64, n: &mut Vec<i64>, weight: i64, out: &mut Vec<ExponentVector>) {
    if n.len() == system.g {
        let sum: i64 = n.iter().sum();
        if (1 - sum) % 2 != 0 {
            return;
        }
        let m = (1 - sum) / 2;
        if m.abs() > bound {
            return;
        }
        let v = ExponentVector::new(m, n.clone());
        if system.is_solution(&v) {
            out.push(v);
        }
        return;
    }
    for x in -bound..=bound {
        let w = weight + x.abs();
        if w > 1 {
            continue;
        }
        n.push(x);
        descend(system, bound, n, w, out);
        n.pop();
    }
}

/// Lexicographic odometer step over `[lo, hi]^len`; false after the last.
fn advance(v: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in v.iter_mut().rev() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// Work of [`solve_constraints_exhaustive`]: `2^g (2B+1)^{g+1}`.
pub fn exhaustive_work(g: usize, bound: i64) -> u128 {
    let side = 2 * bound as u128 + 1;
    (0..=g).fold(1u128 << g.min(127), |acc, _| acc.saturating_mul(side))
}

/// Same contract as [`solve_constraints`] by brute force over the whole box,
/// with no pruning; refused when [`exhaustive_work`] exceeds `limit`.
pub fn solve_constraints_exhaustive(g: usize, bound: i64, limit: u128) -> Result<Vec<ExponentVector>> {
    check_args(g, bound)?;
    let work = exhaustive_work(g, bound);
    if work > limit {
        return Err(Error::Refused {
            what: format!("exhaustive constraint search for g = {g}, B = {bound}"),
            size: work,
            limit,
        });
    }
    let system = ConstraintSystem::instantiate(g);
    let mut out = Vec::new();
    let mut n = vec![-bound; g];
    loop {
        for m in -bound..=bound {
            let v = ExponentVector::new(m, n.clone());
            if system.is_solution(&v) {
                out.push(v);
            }
        }
        if !advance(&mut n, -bound, bound) {
            out.sort();
            return Ok(out);
        }
    }
}

/// Materializes the pointwise bounds and checks that every solution of the
/// subset family on a small box satisfies them.
pub fn derive_bounds(g: usize) -> Result<ConstraintSystem> {
    let system = ConstraintSystem::instantiate(g);
    let bound = 2;
    let solutions = if exhaustive_work(g, bound) <= 5_000_000 {
        solve_constraints_exhaustive(g, bound, u128::MAX)?
    } else {
        solve_constraints(g, bound)?
    };
    for v in &solutions {
        if !system.satisfies_derived_bounds(v) {
            return Err(Error::BoundNotImplied(format!("{v:?}")));
        }
    }
    Ok(system)
}

/// Why [`prop2_decide`] could not conclude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prop2Failure {
    NotWeil,
    RealRoot,
    NotOrdinary,
    GaloisUncertified { budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prop2Verdict {
    /// The `q`-Weil numbers in `Φ_π` are exactly the conjugates of `π`.
    ConjugatesOnly { ordinary: bool, galois: GaloisVerdict },
    Unknown(Prop2Failure),
}

impl Prop2Verdict {
    pub fn is_conjugates_only(&self) -> bool {
        matches!(self, Prop2Verdict::ConjugatesOnly { .. })
    }
}

/// Checks the three hypotheses in order: Weil without real roots, ordinary,
/// Galois group certified `W_{2g}` with auxiliary primes up to `y`.
pub fn prop2_decide(w: &WeilCoefficients, y: u64) -> Prop2Verdict {
    match weil_status(w) {
        WeilStatus::NotWeil => return Prop2Verdict::Unknown(Prop2Failure::NotWeil),
        WeilStatus::WeilWithRealRoot => return Prop2Verdict::Unknown(Prop2Failure::RealRoot),
        WeilStatus::WeilInterior => {}
    }
    if !is_ordinary(w) {
        return Prop2Verdict::Unknown(Prop2Failure::NotOrdinary);
    }
    let galois = certify_w2g(&expand_frobenius(w), y);
    if !galois.is_certified() {
        return Prop2Verdict::Unknown(Prop2Failure::GaloisUncertified { budget: y });
    }
    Prop2Verdict::ConjugatesOnly {
        ordinary: true,
        galois,
    }
}

/// Largest exponent bound accepted by [`relation_search`].
pub const MAX_RELATION_BOUND: i64 = 6;

/// One root from each pair `{π, q/π}` of the distinct roots of `f`: those
/// with positive imaginary part, then the real ones, sorted.
pub fn pair_representatives(f: &FrobeniusPolynomial) -> Result<Vec<Complex64>> {
    let q = f.q().to_f64().unwrap();
    let reduced = f.poly().squarefree_part();
    let roots = complex_roots(&reduced, q.sqrt())?;
    let eps = 1e-9 * q.sqrt();
    let mut reps: Vec<Complex64> = roots.iter().copied().filter(|z| z.im > eps).collect();
    reps.extend(roots.iter().copied().filter(|z| z.im.abs() <= eps).map(|z| Complex64::new(z.re, 0.0)));
    Ok(reps)
}

/// Searches `0 < max(|m|, |n_i|) ≤ bound` for `|q^m ∏ π_i^{n_i} - 1| < tol`
/// at one complex embedding, by increasing max-norm and then
/// lexicographically. A hit is a candidate relation; absence is evidence
/// that the roots generate a free group of rank `g + 1`.
pub fn relation_search(f: &FrobeniusPolynomial, bound: i64, tol: f64) -> Result<Option<ExponentVector>> {
    if !(1..=MAX_RELATION_BOUND).contains(&bound) {
        return Err(Error::invalid(format!(
            "relation bound must be in [1, {MAX_RELATION_BOUND}], got {bound}"
        )));
    }
    let q = f.q().to_f64().unwrap();
    let pis = pair_representatives(f)?;
    let residual = relative_residual(&f.poly().squarefree_part(), &pis);
    if residual > tol {
        return Err(Error::RootFinder { residual, tol });
    }
    let len = pis.len() + 1;
    for r in 1..=bound {
        let mut v = vec![-r; len];
        loop {
            if v.iter().any(|x| x.abs() == r) {
                let candidate = ExponentVector::new(v[0], v[1..].to_vec());
                if (candidate.evaluate(q, &pis) - 1.0).norm() < tol {
                    return Ok(Some(candidate));
                }
            }
            if !advance(&mut v, -r, r) {
                break;
            }
        }
    }
    Ok(None)
}
