use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{validate_field, WeilCoefficients};
use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// `⌊C(2g, i) q^{i/2}⌋` for `i = 1..=g`, computed as `isqrt(C(2g,i)² q^i)`
/// so irrational bounds are floored exactly.
///
/// `a_i` is (up to sign) the `i`-th elementary symmetric function of `2g`
/// roots of absolute value `√q`, which gives the bound.
pub fn box_bounds(g: usize, p: u64, k: u32) -> Result<Vec<i64>> {
    let q = validate_field(g, p, k)?;
    (1..=g)
        .map(|i| {
            let c = binomial(2 * g, i);
            let radicand = &c * &c * BigUint::from(q).pow(i as u32);
            radicand
                .sqrt()
                .to_i64()
                .ok_or_else(|| Error::invalid(format!("box bound for a_{i} overflows")))
        })
        .collect()
}

/// The lattice box `R_{g,q}`: all `a` with `|a_i| ≤ ⌊C(2g,i) q^{i/2}⌋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilBox {
    g: usize,
    p: u64,
    k: u32,
    bounds: Vec<i64>,
}

impl WeilBox {
    pub fn new(g: usize, p: u64, k: u32) -> Result<Self> {
        Ok(Self {
            g,
            p,
            k,
            bounds: box_bounds(g, p, k)?,
        })
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

    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    /// Number of lattice points (saturating).
    pub fn cardinality(&self) -> u128 {
        self.bounds
            .iter()
            .fold(1u128, |acc, &b| acc.saturating_mul(2 * b as u128 + 1))
    }

    pub fn check_limit(&self, limit: u128) -> Result<()> {
        let size = self.cardinality();
        if size > limit {
            return Err(Error::Refused {
                what: format!("box R_{{{},{}}}", self.g, self.q()),
                size,
                limit,
            });
        }
        Ok(())
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        a.len() == self.g && a.iter().zip(&self.bounds).all(|(x, b)| x.abs() <= *b)
    }

    /// Values of `a_1`, one per slab.
    pub fn slab_values(&self) -> RangeInclusive<i64> {
        -self.bounds[0]..=self.bounds[0]
    }

    /// Lexicographic traversal of the whole box.
    pub fn iter(&self) -> BoxIter {
        BoxIter::new(self, None)
    }

    /// Lexicographic traversal of the points with the given `a_1`.
    pub fn slab(&self, a1: i64) -> BoxIter {
        BoxIter::new(self, Some(a1))
    }
}

/// Lexicographic odometer over a [`WeilBox`] (last coordinate fastest).
#[derive(Clone, Debug)]
pub struct BoxIter {
    p: u64,
    k: u32,
    lo: Vec<i64>,
    hi: Vec<i64>,
    current: Option<Vec<i64>>,
}

impl BoxIter {
    fn new(b: &WeilBox, first: Option<i64>) -> Self {
        let mut lo: Vec<i64> = b.bounds.iter().map(|x| -x).collect();
        let mut hi = b.bounds.clone();
        if let Some(a1) = first {
            lo[0] = a1;
            hi[0] = a1;
        }
        let current = (lo[0] <= hi[0]).then(|| lo.clone());
        Self {
            p: b.p,
            k: b.k,
            lo,
            hi,
            current,
        }
    }
}

impl Iterator for BoxIter {
    type Item = WeilCoefficients;

    fn next(&mut self) -> Option<WeilCoefficients> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = self.lo[i];
        }
        Some(WeilCoefficients::new_unchecked(self.p, self.k, out))
    }
}

/// The box for `(g, q = p^k)`, refused when its cardinality exceeds `limit`.
pub fn enumerate_box(g: usize, p: u64, k: u32, limit: u128) -> Result<WeilBox> {
    let b = WeilBox::new(g, p, k)?;
    b.check_limit(limit)?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_boxes() {
        let b = WeilBox::new(1, 5, 1).unwrap();
        assert_eq!(b.bounds(), &[4]);
        let pts: Vec<i64> = b.iter().map(|w| w.a()[0]).collect();
        assert_eq!(pts, (-4..=4).collect::<Vec<_>>());

        let b = WeilBox::new(2, 3, 1).unwrap();
        assert_eq!(b.bounds(), &[6, 18]);
        assert_eq!(b.iter().count(), 13 * 37);
        assert_eq!(b.cardinality(), 13 * 37);

        assert_eq!(WeilBox::new(1, 2, 1).unwrap().iter().count(), 5);
    }

    #[test]
    fn exact_floors() {
        // 2√4 = 4 exactly, 2√2 ≈ 2.83, 6√7 ≈ 15.87, 20·7^{3/2} ≈ 370.4
        assert_eq!(box_bounds(1, 2, 2).unwrap(), vec![4]);
        assert_eq!(box_bounds(1, 2, 1).unwrap(), vec![2]);
        assert_eq!(box_bounds(3, 7, 1).unwrap(), vec![15, 105, 370]);
    }

    #[test]
    fn lexicographic_and_slabs() {
        let b = WeilBox::new(2, 2, 1).unwrap();
        let all: Vec<Vec<i64>> = b.iter().map(|w| w.a().to_vec()).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        let mut from_slabs = Vec::new();
        for a1 in b.slab_values() {
            from_slabs.extend(b.slab(a1).map(|w| w.a().to_vec()));
        }
        assert_eq!(all, from_slabs);
    }

    #[test]
    fn refusal_reports_size() {
        let err = enumerate_box(3, 97, 1, 1000).unwrap_err();
        match err {
            Error::Refused { size, limit, .. } => {
                assert_eq!(limit, 1000);
                assert!(size > 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
