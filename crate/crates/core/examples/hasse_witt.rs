//! Hasse–Witt matrices: Miller's parity criterion against the matrix, and
//! scans of the families `T_{t,u}` and `S_u`.
//!
//! ```text
//! cargo run --release --example hasse_witt -- [p] [g]
//! ```

use weilcensus::hassewitt::{compare_miller, hasse_witt, miller_curve, scan_family_s0, scan_family_t};

fn main() -> weilcensus::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let p = args.first().copied().unwrap_or(7);
    let g = args.get(1).copied().unwrap_or(2) as usize;

    let curve = miller_curve(p, g)?;
    let m = hasse_witt(&curve);
    println!("y^2 = x^{} + x over F_{p}", 2 * g + 1);
    for row in &m.entries {
        println!("  {row:?}");
    }
    println!("det = {}", m.det());
    let cmp = compare_miller(p, g)?;
    println!(
        "parity condition holds: {}  (r, t) solvable: {}  matrix says ordinary: {}",
        cmp.parity_condition_holds, cmp.parity_claims_ordinary, cmp.matrix_ordinary
    );

    let scan = scan_family_t(p, g, 10_000)?;
    println!(
        "T family: witness {:?} after {} curves ({} skipped)",
        scan.witness, scan.examined, scan.skipped
    );
    if g.is_multiple_of(2) && !(g as u64).is_multiple_of(p) {
        let table = scan_family_s0(p, g)?;
        let ordinary = table.rows.iter().filter(|(_, o)| *o).count();
        println!(
            "S family: {ordinary}/{} ordinary, excluded {:?}, singular {:?}",
            table.rows.len(),
            table.excluded,
            table.singular
        );
    }
    Ok(())
}
