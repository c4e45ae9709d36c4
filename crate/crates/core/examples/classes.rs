//! The 21 conjugacy and twinning classes of the 216 TRIP maps.

use trip::equivalence::enumerate_classes;

fn main() {
    for c in enumerate_classes() {
        let star = if c.starred { "*" } else { " " };
        println!("{:<14}{star} size {:>2}  {:?}", c.representative.to_string(), c.size, c.verdict);
    }
}
