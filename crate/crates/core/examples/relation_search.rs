//! Search for small multiplicative relations `q^m ∏ π_i^{n_i} = 1` among
//! the Frobenius roots.
//!
//! ```text
//! cargo run --example relation_search -- <p> <k> <bound> <a_1> [a_2 ...]
//! ```

use weilcensus::weilgroup::{pair_representatives, relation_search};
use weilcensus::weilpoly::{expand_frobenius, WeilCoefficients};

fn main() -> weilcensus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, k, bound, a) = match args.as_slice() {
        [p, k, b, a @ ..] if !a.is_empty() => (*p as u64, *k as u32, *b, a.to_vec()),
        _ => (2, 2, 4, vec![4]),
    };
    let f = expand_frobenius(&WeilCoefficients::new(p, k, a)?);
    println!("f = {}", f.poly());
    for z in pair_representatives(&f)? {
        println!("  π = {:.6} {:+.6}i   |π| = {:.6}", z.re, z.im, z.norm());
    }
    match relation_search(&f, bound, 1e-8)? {
        Some(v) => println!("relation: m = {}, n = {:?}", v.m, v.n),
        None => println!("no relation with exponents up to {bound}"),
    }
    Ok(())
}
