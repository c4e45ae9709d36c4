//! The three complexity shapes of (e,13,e) Gauss languages: linear, capped
//! and bounded, predicted from right special chains and checked on a sample.

use trip::e13e::predict_and_verify;

fn main() -> trip::Result<()> {
    let alternating: Vec<u64> = (0..30).map(|i| 1 + i % 2).collect();
    let mut even_zero: Vec<u64> = (0..40).map(|i| if i % 2 == 1 { 1 + i % 3 } else { 0 }).collect();
    even_zero[2] = 2;
    let tail_zero = [vec![2, 1, 0, 3, 1], vec![0; 40]].concat();
    for (name, ks, n_max) in [("alternating", alternating, 60), ("even zeros", even_zero, 60), ("zero tail", tail_zero, 80)] {
        let r = predict_and_verify(&ks, n_max)?;
        println!("{name:>16}: predicted {:?}, fitted {:?}, passed {}", r.predicted, r.fitted, r.passed);
    }
    Ok(())
}
