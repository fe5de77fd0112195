//! Certify Galois group `W_{2g}` via cycle patterns modulo small primes, and
//! list the factorization patterns behind the certificate.
//!
//! ```text
//! cargo run --example galois_certificate -- <p> <k> <y> <a_1> [a_2 ...]
//! ```

use weilcensus::galois::{certify_w2g, required_cycle_lengths, Certificate, GaloisVerdict};
use weilcensus::intpoly::degree_pattern;
use weilcensus::weilpoly::{expand_frobenius, WeilCoefficients};

fn main() -> weilcensus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, k, y, a) = match args.as_slice() {
        [p, k, y, a @ ..] if !a.is_empty() => (*p as u64, *k as u32, *y as u64, a.to_vec()),
        _ => (3, 1, 100, vec![1, 1, 1]),
    };
    let w = WeilCoefficients::new(p, k, a)?;
    let f = expand_frobenius(&w);
    println!("f = {}", f.poly());
    println!("required cycle lengths: {:?}", required_cycle_lengths(w.g()));

    for prime in [2u64, 5, 7, 11, 13] {
        if prime != p {
            if let Ok(pat) = degree_pattern(&f.reduce_mod(prime)) {
                println!("  mod {prime:3}: {pat:?}");
            }
        }
    }

    match certify_w2g(&f, y) {
        GaloisVerdict::CertifiedW2g(Certificate::CycleWitnesses(ws)) => {
            for w in ws {
                println!("{}-cycle witnessed at p' = {}", w.ell, w.witness_prime);
            }
        }
        GaloisVerdict::CertifiedW2g(Certificate::IrreducibleQuadratic { discriminant }) => {
            println!("irreducible quadratic, discriminant {discriminant}");
        }
        GaloisVerdict::Unknown { budget } => println!("no certificate with primes up to {budget}"),
    }
    Ok(())
}
