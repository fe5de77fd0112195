//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls into the library's algorithms.

#![allow(dead_code)]

use std::path::PathBuf;

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Legendre symbol as -1, 0, 1.
pub fn legendre(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `F_{p²} = F_p[w]/(w² - n)` with `n` a non-residue, `p` odd.
#[derive(Clone, Copy)]
pub struct Fp2 {
    pub p: u64,
    pub n: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Self {
        let n = (2..p).find(|&n| legendre(n, p) == -1).expect("odd prime");
        Self { p, n }
    }

    pub fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let p = self.p;
        (
            (a.0 * b.0 + a.1 * b.1 % p * self.n) % p,
            (a.0 * b.1 + a.1 * b.0) % p,
        )
    }

    pub fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        ((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    /// Quadratic character via the norm to `F_p`.
    pub fn chi(&self, a: (u64, u64)) -> i64 {
        let p = self.p;
        let norm = (a.0 * a.0 % p + p - a.1 * a.1 % p * self.n % p) % p;
        if a == (0, 0) {
            0
        } else {
            legendre(norm, p)
        }
    }
}

fn residues(f: &[i64], p: u64) -> Vec<u64> {
    f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect()
}

/// Points on the smooth model of `y² = f(x)` over `F_p` (`r = 1`) or
/// `F_{p²}` (`r = 2`), `f` squarefree mod `p`, constant term first.
pub fn count_points(f: &[i64], p: u64, r: u32) -> i64 {
    let c = residues(f, p);
    let deg = c.len() - 1;
    let lead = c[deg];
    match r {
        1 => {
            let affine: i64 = (0..p)
                .map(|x| {
                    let v = c.iter().rev().fold(0, |acc, &ci| (acc * x + ci) % p);
                    1 + legendre(v, p)
                })
                .sum();
            let infinity = if deg % 2 == 1 { 1 } else { 1 + legendre(lead, p) };
            affine + infinity
        }
        2 => {
            let k = Fp2::new(p);
            let mut affine = 0;
            for x0 in 0..p {
                for x1 in 0..p {
                    let x = (x0, x1);
                    let v = c.iter().rev().fold((0, 0), |acc, &ci| k.add(k.mul(acc, x), (ci, 0)));
                    affine += 1 + k.chi(v);
                }
            }
            // every element of F_p is a square in F_{p²}
            let infinity = if deg % 2 == 1 { 1 } else { 2 };
            affine + infinity
        }
        _ => unimplemented!("only r = 1, 2"),
    }
}

/// `(a_1, …, a_g)` of the Frobenius characteristic polynomial for genus
/// 1 or 2, from point counts.
pub fn frobenius_coefficients(f: &[i64], p: u64) -> Vec<i64> {
    let genus = (f.len() - 2) / 2;
    let p_i = p as i64;
    let n1 = count_points(f, p, 1);
    let s1 = p_i + 1 - n1;
    match genus {
        1 => vec![-s1],
        2 => {
            let n2 = count_points(f, p, 2);
            let s2 = p_i * p_i + 1 - n2;
            vec![-s1, (s1 * s1 - s2) / 2]
        }
        _ => unimplemented!("genus {genus}"),
    }
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.extend([d, -d, n / d, -(n / d)]);
        }
        d += 1;
    }
    out
}

fn eval(c: &[i128], x: i128) -> i128 {
    c.iter().rev().fold(0, |acc, &ci| acc * x + ci)
}

fn integer_roots(mut c: &[i128]) -> Vec<i128> {
    let mut roots = Vec::new();
    while c.len() > 1 && c[0] == 0 {
        roots.push(0);
        c = &c[1..];
    }
    roots.extend(divisors(c[0]).into_iter().filter(|&d| eval(c, d) == 0));
    roots.sort();
    roots.dedup();
    roots
}

fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).any(|s| s >= 0 && s * s == n)
}

/// Irreducibility over `Q` of a monic integer quartic, by rational roots
/// and an explicit search over quadratic splittings.
pub fn quartic_irreducible(c: &[i128; 5]) -> bool {
    assert_eq!(c[4], 1);
    if !integer_roots(c).is_empty() {
        return false;
    }
    let (d0, d1, d2, d3) = (c[0], c[1], c[2], c[3]);
    // (x² + αx + β)(x² + γx + δ)
    for beta in divisors(d0) {
        let delta = d0 / beta;
        // α + γ = d3, αγ = d2 - β - δ
        let s = d3;
        let prod = d2 - beta - delta;
        let disc = s * s - 4 * prod;
        if !is_square(disc) {
            continue;
        }
        let r = (disc as f64).sqrt().round() as i128;
        for (alpha, gamma) in [((s + r) / 2, (s - r) / 2), ((s - r) / 2, (s + r) / 2)] {
            if alpha + gamma == s && alpha * gamma == prod && alpha * delta + beta * gamma == d1 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarticGroup {
    Reducible,
    S4,
    A4,
    D4,
    C4,
    V4,
}

/// Galois group of a monic integer quartic via the resolvent cubic and
/// the Kappe–Warren test.
pub fn quartic_galois_group(c: &[i128; 5]) -> QuarticGroup {
    if !quartic_irreducible(c) {
        return QuarticGroup::Reducible;
    }
    let (d, cc, b, a) = (c[0], c[1], c[2], c[3]);
    // R(x) = x³ - b x² + (ac - 4d) x - (a² d - 4 b d + c²)
    let r = [-(a * a * d - 4 * b * d + cc * cc), a * cc - 4 * d, -b, 1];
    let (p2, p1, p0) = (r[2], r[1], r[0]);
    let disc = p2 * p2 * p1 * p1 - 4 * p1 * p1 * p1 - 4 * p2 * p2 * p2 * p0 - 27 * p0 * p0 + 18 * p2 * p1 * p0;
    let roots = integer_roots(&r);
    match roots.len() {
        0 => {
            if is_square(disc) {
                QuarticGroup::A4
            } else {
                QuarticGroup::S4
            }
        }
        1 => {
            let t = roots[0];
            let splits = |delta: i128| delta == 0 || is_square(delta) || is_square(delta * disc);
            if splits(t * t - 4 * d) && splits(a * a - 4 * (b - t)) {
                QuarticGroup::C4
            } else {
                QuarticGroup::D4
            }
        }
        _ => QuarticGroup::V4,
    }
}

/// Remainder of `f` by monic `m` over `F_p`, both constant term first.
pub fn rem(f: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        let shift = r.len() - dm;
        for i in 0..dm {
            r[shift + i] = (r[shift + i] + (p - lead) * m[i]) % p;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

pub fn quot(f: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dm = m.len() - 1;
    let mut q = vec![0; f.len() - dm];
    for top in (dm..f.len()).rev() {
        let lead = r[top];
        q[top - dm] = lead;
        for i in 0..=dm {
            r[top - dm + i] = (r[top - dm + i] + (p - lead) * m[i]) % p;
        }
    }
    q
}

/// Factor degrees (ascending, with multiplicity) of a monic polynomial by
/// trial division with every monic polynomial of each degree in turn, and
/// whether no factor repeats.
pub fn trial_division(f: &[u64], p: u64) -> (Vec<usize>, bool) {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut squarefree = true;
    let mut d = 1;
    while f.len() > 2 * d {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut m: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
            m.push(1);
            let mut hits = 0;
            while f.len() > d && rem(&f, &m, p).is_empty() {
                f = quot(&f, &m, p);
                out.push(d);
                hits += 1;
            }
            squarefree &= hits <= 1;
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out.sort();
    (out, squarefree)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

/// Compares `actual` with the golden file, or rewrites it when
/// `UPDATE_GOLDEN` is set. Returns a description of the mismatch.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| format!("write {}: {e}", path.display()))?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("read {}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs:\n--- expected\n{expected}--- actual\n{actual}", path.display()))
    }
}
