//! Census over q = 3^n for g = 2 and the growth-law fit.
//!
//! ```text
//! cargo run --release --example census_trend -- [g] [p] [n_max] [sieve_y]
//! ```

use weilcensus::census::{estimate_vg, trend};

fn main() -> weilcensus::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let g = args.first().copied().unwrap_or(2) as usize;
    let p = args.get(1).copied().unwrap_or(3);
    let n_max = args.get(2).copied().unwrap_or(4) as u32;
    let sieve_y = args.get(3).copied().or(Some(200));

    let series = trend(g, p, 1, n_max, sieve_y)?;
    println!("{:>6} {:>8} {:>7} {:>5} {:>8} {:>9} {:>7}  ratio_interior", "q", "box", "weil", "real", "ordinary", "certified", "both");
    for r in &series.records {
        let c = &r.counts;
        println!(
            "{:>6} {:>8} {:>7} {:>5} {:>8} {:>9} {:>7}  {} ({:.4}) [{:.2?}]",
            r.q,
            c.box_count,
            c.weil_count,
            c.real_root_count,
            c.ordinary_count,
            c.certified_w2g_count,
            c.both_count,
            r.ratio_interior,
            r.ratio_interior_value(),
            r.elapsed.unwrap_or_default(),
        );
    }
    match series.growth_exponent {
        Some(e) => println!("fitted exponent {e:.4} (expected {})", (g * (g + 1)) as f64 / 4.0),
        None => println!("a single point gives no exponent"),
    }
    if series.records.len() >= 2 {
        let v = estimate_vg(&series)?;
        println!("v_g from weil counts:     {:?}", v.weil_based);
        println!("v_g from ordinary counts: {:?}", v.ordinary_based);
    }
    Ok(())
}
