//! One-sided certification that the Galois group of a `q`-symmetric
//! polynomial is the full hyperoctahedral group `W_{2g}`.
//!
//! If `f mod ℓ'` is squarefree and factors as `2g - ℓ` distinct linear
//! factors times one irreducible factor of degree `ℓ`, the Frobenius at `ℓ'`
//! acts on the roots as an `ℓ`-cycle (Dedekind). A subgroup of `W_{2g}`
//! containing a 2-, 4-, `(2g-2)`- and `2g`-cycle is all of `W_{2g}`.
//! Absence of witnesses proves nothing, hence [`GaloisVerdict::Unknown`].

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::{degree_pattern, DegreePattern};
use crate::primes::primes_up_to;
use crate::weilpoly::FrobeniusPolynomial;

/// An auxiliary prime whose factorization pattern exhibits an `ell`-cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleWitness {
    pub ell: usize,
    pub witness_prime: u64,
    pub pattern: DegreePattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certificate {
    /// One witness per required cycle length, ascending in `ell`.
    CycleWitnesses(Vec<CycleWitness>),
    /// `g = 1`: `X² + a_1 X + q` with non-square discriminant.
    IrreducibleQuadratic { discriminant: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisVerdict {
    CertifiedW2g(Certificate),
    /// No certificate within the prime budget `y`.
    Unknown { budget: u64 },
}

impl GaloisVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, GaloisVerdict::CertifiedW2g(_))
    }
}

/// Cycle lengths whose presence forces `W_{2g}`: `{2, 4}` for `g = 2`,
/// `{2, 4, 2g-2, 2g}` deduplicated for `g ≥ 3`, none for `g = 1`.
pub fn required_cycle_lengths(g: usize) -> Vec<usize> {
    match g {
        0 | 1 => Vec::new(),
        2 => vec![2, 4],
        _ => [2, 4, 2 * g - 2, 2 * g].into_iter().sorted().dedup().collect(),
    }
}

fn check_ell(g: usize, ell: usize) -> Result<()> {
    if ell < 2 || ell > 2 * g || !ell.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "cycle length {ell} must be even and in [2, {}]",
            2 * g
        )));
    }
    Ok(())
}

/// Auxiliary primes scanned for witnesses: ascending, `≤ y`, skipping `p`.
pub(crate) fn auxiliary_primes(p: u64, y: u64) -> Vec<u64> {
    primes_up_to(y).into_iter().filter(|&l| l != p).collect()
}

/// First auxiliary prime `≤ y` at which `f` exhibits an `ell`-cycle.
pub fn cycle_witness(f: &FrobeniusPolynomial, ell: usize, y: u64) -> Result<Option<CycleWitness>> {
    check_ell(f.g(), ell)?;
    for prime in auxiliary_primes(f.p(), y) {
        let pattern = degree_pattern(&f.reduce_mod(prime))?;
        if pattern.is_single_cycle(ell) {
            return Ok(Some(CycleWitness {
                ell,
                witness_prime: prime,
                pattern,
            }));
        }
    }
    Ok(None)
}

/// Certifies `Gal(f) = W_{2g}` or reports [`GaloisVerdict::Unknown`].
pub fn certify_w2g(f: &FrobeniusPolynomial, y: u64) -> GaloisVerdict {
    certify_with_primes(f, &auxiliary_primes(f.p(), y), y)
}

/// [`certify_w2g`] with a precomputed auxiliary prime list.
pub(crate) fn certify_with_primes(f: &FrobeniusPolynomial, primes: &[u64], budget: u64) -> GaloisVerdict {
    if f.g() == 1 {
        let a1 = f.poly().coeff(1);
        let disc = &a1 * &a1 - BigInt::from(4) * f.q();
        return if is_square(&disc) {
            GaloisVerdict::Unknown { budget }
        } else {
            GaloisVerdict::CertifiedW2g(Certificate::IrreducibleQuadratic {
                discriminant: disc.to_string(),
            })
        };
    }
    let reductions = primes.iter().map(|&l| (l, f.reduce_mod(l)));
    certify_from_reductions(f.g(), reductions, budget)
}

/// Shared scan: consumes `(prime, f mod prime)` pairs in ascending order
/// and stops once every required cycle length has a witness.
pub(crate) fn certify_from_reductions(
    g: usize,
    reductions: impl Iterator<Item = (u64, crate::intpoly::ModPolynomial)>,
    budget: u64,
) -> GaloisVerdict {
    let needed = required_cycle_lengths(g);
    let mut found: Vec<Option<CycleWitness>> = vec![None; needed.len()];
    for (prime, reduced) in reductions {
        let pattern = degree_pattern(&reduced).expect("auxiliary primes are prime and f is monic");
        if !pattern.squarefree {
            continue;
        }
        for (slot, &ell) in found.iter_mut().zip(&needed) {
            if slot.is_none() && pattern.is_single_cycle(ell) {
                *slot = Some(CycleWitness {
                    ell,
                    witness_prime: prime,
                    pattern: pattern.clone(),
                });
            }
        }
        if found.iter().all(Option::is_some) {
            return GaloisVerdict::CertifiedW2g(Certificate::CycleWitnesses(
                found.into_iter().flatten().collect(),
            ));
        }
    }
    GaloisVerdict::Unknown { budget }
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// `|W_{2g}| = 2^g · g!`.
pub fn weyl_order(g: usize) -> BigUint {
    (1..=g).fold(BigUint::from(1u32), |acc, i| acc * 2u32 * i)
}

/// Largest `g` accepted by [`count_l_cycles`].
pub const MAX_ENUMERATED_GENUS: usize = 7;

/// Elements of `W_{2g}` as permutations of `0..2g` preserving the pairs
/// `{2i, 2i+1}`: a permutation of the pairs combined with a swap mask.
pub fn hyperoctahedral_elements(g: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..g).permutations(g).flat_map(move |sigma| {
        (0u32..1 << g).map(move |mask| {
            let mut image = vec![0; 2 * g];
            for (i, &target) in sigma.iter().enumerate() {
                let flip = (mask >> i & 1) as usize;
                image[2 * i] = 2 * target + flip;
                image[2 * i + 1] = 2 * target + (1 - flip);
            }
            image
        })
    })
}

/// Cycle lengths of a permutation given as an image vector, descending.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Number of elements of `W_{2g}` that are a single `ell`-cycle on the
/// `2g` points (all other points fixed).
pub fn count_l_cycles(g: usize, ell: usize) -> Result<u64> {
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    if g > MAX_ENUMERATED_GENUS {
        return Err(Error::Refused {
            what: format!("enumeration of W_{}", 2 * g),
            size: weyl_order(g).try_into().unwrap_or(u128::MAX),
            limit: weyl_order(MAX_ENUMERATED_GENUS).try_into().unwrap(),
        });
    }
    if ell < 2 || ell > 2 * g {
        return Err(Error::invalid(format!("cycle length {ell} outside [2, {}]", 2 * g)));
    }
    let count = hyperoctahedral_elements(g)
        .filter(|perm| {
            let ct = cycle_type(perm);
            ct[0] == ell && ct[1..].iter().all(|&c| c == 1)
        })
        .count();
    Ok(count as u64)
}
