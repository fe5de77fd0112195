//! Density of `ℓ`-cycle patterns modulo auxiliary primes against the
//! proportion of `ℓ`-cycles in `W_{2g}`.
//!
//! ```text
//! cargo run --release --example chebotarev_density -- [g] [y]
//! ```

use weilcensus::galois::{count_l_cycles, required_cycle_lengths, weyl_order};
use weilcensus::sieve::{density_report, SieveConfig};

fn main() -> weilcensus::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let g = args.first().copied().unwrap_or(2) as usize;
    let y = args.get(1).copied().unwrap_or(500);

    println!("|W_{}| = {}", 2 * g, weyl_order(g));
    let lengths = if g == 1 { vec![2] } else { required_cycle_lengths(g) };
    for ell in lengths {
        println!("C_{ell} = {}", count_l_cycles(g, ell)?);
        let report = density_report(&SieveConfig::new(g, 3, 1, ell, y)?)?;
        println!(
            "  primes in [{}, {y}]: {}  empirical {:.5}  theoretical {} = {:.5}  deviation {:.5}",
            y.div_ceil(2),
            report.primes.len(),
            report.empirical,
            report.theoretical,
            report.theoretical_value,
            report.deviation
        );
    }
    Ok(())
}
