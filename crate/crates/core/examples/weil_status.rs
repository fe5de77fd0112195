//! Classify one coefficient vector: Weil status, ordinarity, Newton slopes,
//! Galois certificate and the conjugates-only verdict.
//!
//! ```text
//! cargo run --example weil_status -- <p> <k> <a_1> [a_2 ...]
//! cargo run --example weil_status -- 5 1 1 3
//! ```

use weilcensus::census::{classify, default_sieve_y};
use weilcensus::weilpoly::WeilCoefficients;

fn main() -> weilcensus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, k, a) = match args.as_slice() {
        [p, k, a @ ..] if !a.is_empty() => (*p as u64, *k as u32, a.to_vec()),
        _ => (5, 1, vec![1, 3]),
    };
    let w = WeilCoefficients::new(p, k, a)?;
    let c = classify(&w, default_sieve_y(w.q()));
    println!("f      = {}", c.frobenius);
    println!("h      = {}", c.trace);
    println!("status   {:?}", c.weil_status);
    println!("ordinary {}", c.ordinary);
    println!("slopes   {}", c.newton_slopes.join(" "));
    println!("galois   {:?}", c.galois);
    println!("prop2    {:?}", c.prop2);
    Ok(())
}
