//! Recomputes the Farey words whose complexity exceeds 3n, for both variants
//! of the base substitution, and runs a small exhaustive search.

use trip::reproduction::{reproduce_counterexample_tables, search_high_complexity};
use trip::word::Variant;

fn main() -> trip::Result<()> {
    for variant in [Variant::Canonical13, Variant::Variant31] {
        let report = reproduce_counterexample_tables(variant)?;
        for r in &report.rows {
            println!("{variant} {} {} n={} p={} ({})", r.row.triple, r.row.farey_bits, r.row.n, r.p_computed, if r.passed { "ok" } else { "mismatch" });
        }
    }
    let found = search_high_complexity("(e,12,12)".parse()?, Variant::Canonical13, 14, 1 << 15);
    println!("search (e,12,12): {:?} after {} strings", found.witness, found.examined);
    Ok(())
}
