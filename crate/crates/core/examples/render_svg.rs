//! Writes SVG drawings of the depth-4 Farey partition, the Gauss fan and the
//! (e,13,e) regions into the system temp directory.

use trip::algebra::TripTriple;
use trip::render::{render_gauss_svg, render_partition_svg, render_regions_svg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir();
    let files = [
        ("partition_eee.svg", render_partition_svg(TripTriple::EEE, 4)?),
        ("gauss_fan_eee.svg", render_gauss_svg(TripTriple::EEE, 6)?),
        ("regions_e13e.svg", render_regions_svg()),
    ];
    for (name, svg) in files {
        let path = dir.join(name);
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
