//! p(n) ≤ 3n for (e,23,e) on random pair codings and on long random words.

use trip::e23e::e23e_bound_check_seeded;
use trip::reproduction::e23e_word_experiment;

fn main() -> trip::Result<()> {
    for seed in 0..4 {
        let r = e23e_bound_check_seeded(seed, 80)?;
        let worst = (1..r.complexity.len()).map(|n| r.complexity[n] as f64 / n as f64).fold(0.0, f64::max);
        println!("seed {seed}: max p(n)/n = {worst:.3}, oracle diagrams {}, passed {}", r.oracle_checked, r.passed);
    }
    let exp = e23e_word_experiment(20, 3000, 40, 11);
    println!("{}", serde_json::to_string_pretty(&exp).expect("serializable"));
    Ok(())
}
