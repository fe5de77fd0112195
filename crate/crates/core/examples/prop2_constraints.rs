//! Solve the exponent constraint system and compare with the conjugate
//! pattern `(0, e_i)`, `(1, -e_j)`.
//!
//! ```text
//! cargo run --release --example prop2_constraints -- [g_max] [bound]
//! ```

use weilcensus::weilgroup::{conjugate_pattern, derive_bounds, solve_constraints};

fn main() -> weilcensus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let g_max = args.first().copied().unwrap_or(6) as usize;
    let bound = args.get(1).copied().unwrap_or(3);

    for g in 1..=g_max {
        let system = derive_bounds(g)?;
        let solutions = solve_constraints(g, bound)?;
        let matches = solutions == conjugate_pattern(g);
        println!(
            "g = {g:2}  subsets {:5}  solutions {:3}  conjugates only: {matches}",
            1u64 << g,
            solutions.len()
        );
        if g <= 2 {
            for s in &solutions {
                println!("    m = {:2}  n = {:?}", s.m, s.n);
            }
        }
        assert_eq!(system.g, g);
    }
    Ok(())
}
