//! Farey and Gauss codes of a rational point under a few TRIP maps.

use trip::algebra::TripTriple;
use trip::dynamics::{code_point, Point3};

fn main() -> trip::Result<()> {
    let p: Point3 = "1234/9973,5678/9973,3061/9973".parse()?;
    for map in ["(e,e,e)", "(e,13,e)", "(e,23,e)"] {
        let t: TripTriple = map.parse()?;
        let (farey, gauss) = code_point(&p, t, 40)?;
        let bits: String = farey.symbols.iter().map(|b| char::from(b'0' + b)).collect();
        println!("{map:>9}  farey {bits}  gauss {:?}", gauss.ks);
    }
    Ok(())
}
