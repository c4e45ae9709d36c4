//! Orbits of random integer points under (e,13,e) until y > z.

use trip::reproduction::hidden_r2_experiment;

fn main() -> trip::Result<()> {
    let stats = hidden_r2_experiment(20_000, 1_000_000, 5, 100_000)?;
    println!("reached {} of {} ({:.4}), hit zero {}, exhausted {}", stats.reached, stats.num_points, stats.fraction_reached, stats.hit_zero, stats.exhausted);
    for (steps, count) in stats.step_histogram.iter().take(10) {
        println!("  {steps:>3} steps: {count}");
    }
    Ok(())
}
