//! Certifies 2n+1 ≤ p(n) ≤ 3n for a random (e,e,e) Gauss coding and prints
//! the chain of non-neutral bispecial factors behind it.

use trip::eee::certify_eee_seeded;

fn main() -> trip::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = certify_eee_seeded(seed, 60)?;
    println!("coding prefix {:?}", &report.coding[..report.coding.len().min(12)]);
    for c in &report.checks {
        println!("  {:<28} {}", c.name, if c.passed { "ok" } else { "FAILED" });
    }
    for b in report.non_neutral.iter().take(8) {
        println!("  non-neutral bispecial {} (m = {})", b.word, b.m);
    }
    println!("passed: {}", report.passed);
    Ok(())
}
