//! Both sides of the large-sieve variance inequality over the full box,
//! computed exactly in two independent orders.
//!
//! ```text
//! cargo run --release --example large_sieve -- [g] [p] [ell] [y]
//! ```

use weilcensus::sieve::{omega_table, variance_lhs_prime_major, variance_report, SieveConfig};

fn main() -> weilcensus::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let g = args.first().copied().unwrap_or(2) as usize;
    let p = args.get(1).copied().unwrap_or(3);
    let ell = args.get(2).copied().unwrap_or(4) as usize;
    let y = args.get(3).copied().unwrap_or(13);

    let cfg = SieveConfig::new(g, p, 1, ell, y)?;
    for e in omega_table(&cfg)?.entries {
        println!("ω({:3}) = {:?}  weight {:.5}", e.prime, e.omega, e.weight);
    }
    let report = variance_report(&cfg)?;
    let prime_major = variance_lhs_prime_major(&cfg)?;
    println!("box points     {}", report.box_count);
    println!("P(y)           {}", report.p_of_y);
    println!("lhs            {}", report.lhs);
    println!("lhs (by prime) {}/{}", prime_major.numer(), prime_major.denom());
    println!("rhs core       {:.3}", report.rhs_core);
    println!("ratio          {:.6}", report.ratio);
    Ok(())
}
