//! SVG drawings of the triangle and its subdivisions, with exact vertex labels.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::algebra::{farey_matrix, farey_product, IntMatrix3, Rational, TripTriple};
use crate::dynamics::Point3;
use crate::error::{Error, Result};

pub const MAX_DEPTH: usize = 12;

const SIZE: f64 = 640.0;

/// Vertices of `M Δ`: the columns of `M`, normalized.
pub fn subtriangle(m: &IntMatrix3) -> Result<[Point3; 3]> {
    let col = |j| Point3::projectivize(m.column(j).map(Rational::from_integer));
    Ok([col(0)?, col(1)?, col(2)?])
}

/// Δ_{i0…i_{d−1}}(t) for every bit string of length `depth`, in lexicographic order.
pub fn farey_partition(t: TripTriple, depth: usize) -> Result<Vec<(String, [Point3; 3])>> {
    if depth > MAX_DEPTH {
        return Err(Error::Domain(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    (0..1u32 << depth)
        .map(|code| {
            let bits: Vec<u8> = (0..depth).rev().map(|i| (code >> i & 1) as u8).collect();
            let label: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
            Ok((label, subtriangle(&farey_product(&bits, t))?))
        })
        .collect()
}

/// Δ_k^G(t) = F_1^k F_0 Δ for k < `k_count`.
pub fn gauss_fan(t: TripTriple, k_count: usize) -> Result<Vec<(String, [Point3; 3])>> {
    let f0 = farey_matrix(0, t);
    let f1 = farey_matrix(1, t);
    let mut power = IntMatrix3::identity();
    let mut out = Vec::with_capacity(k_count);
    for k in 0..k_count {
        out.push((format!("G{k}"), subtriangle(&(&power * &f0))?));
        power = &power * &f1;
    }
    Ok(out)
}

fn screen(p: &Point3) -> (f64, f64) {
    let f = |r: &Rational| r.to_f64().unwrap_or(0.0);
    let (x, y, z) = (f(&p.x), f(&p.y), f(&p.z));
    let m = 40.0;
    let (ax, ay) = (m, SIZE - m);
    let (bx, by) = (SIZE / 2.0, m + 40.0);
    let (cx, cy) = (SIZE - m, SIZE - m);
    (x * ax + y * bx + z * cx, x * ay + y * by + z * cy)
}

fn polygon(out: &mut String, pts: &[Point3], fill: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = screen(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"  <polygon points="{}" fill="{fill}" stroke="black" stroke-width="0.6"/>"#,
        coords.join(" ")
    );
}

fn label(out: &mut String, p: &Point3, text: &str, size: f64) {
    let (x, y) = screen(p);
    let _ = writeln!(
        out,
        r#"  <text x="{x:.2}" y="{y:.2}" font-size="{size}" font-family="monospace">{text}</text>"#
    );
}

fn centroid(t: &[Point3; 3]) -> Point3 {
    let third = Rational::new(1.into(), 3.into());
    Point3::new(
        (&t[0].x + &t[1].x + &t[2].x) * &third,
        (&t[0].y + &t[1].y + &t[2].y) * &third,
        (&t[0].z + &t[1].z + &t[2].z) * &third,
    )
    .expect("centroid of a subtriangle lies in Δ")
}

fn document(title: &str, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n  <title>{title}</title>\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

fn draw_pieces(title: &str, pieces: &[(String, [Point3; 3])]) -> String {
    let mut body = String::new();
    let palette = ["#e8f0fe", "#fde8e8", "#e8fde9", "#fdf6e3", "#efe8fd", "#e3fbfd"];
    for (i, (_, tri)) in pieces.iter().enumerate() {
        polygon(&mut body, tri, palette[i % palette.len()]);
    }
    let small = pieces.len() > 16;
    if !small {
        for (name, tri) in pieces {
            label(&mut body, &centroid(tri), name, 11.0);
        }
    }
    let vertices: BTreeMap<String, &Point3> = pieces.iter().flat_map(|(_, t)| t.iter().map(|p| (p.to_string(), p))).collect();
    let font = if small { 5.0 } else { 9.0 };
    for (name, p) in vertices {
        label(&mut body, p, &format!("({name})"), font);
    }
    document(title, &body)
}

pub fn render_partition_svg(t: TripTriple, depth: usize) -> Result<String> {
    let pieces = farey_partition(t, depth)?;
    Ok(draw_pieces(&format!("{t} depth {depth}"), &pieces))
}

pub fn render_gauss_svg(t: TripTriple, k_count: usize) -> Result<String> {
    let pieces = gauss_fan(t, k_count)?;
    Ok(draw_pieces(&format!("{t} Gauss subtriangles"), &pieces))
}

/// Regions A (z ≥ x+y), B (y ≥ z) and C of the (e,13,e) map.
pub fn render_regions_svg() -> String {
    let p = |s: &str| -> Point3 { s.parse().expect("fixed vertex") };
    let regions = [
        ("A", vec![p("1/2,0,1/2"), p("0,1/2,1/2"), p("0,0,1")]),
        ("B", vec![p("1,0,0"), p("0,1,0"), p("0,1/2,1/2")]),
        ("C", vec![p("1,0,0"), p("0,1/2,1/2"), p("1/2,0,1/2")]),
    ];
    let mut body = String::new();
    for ((name, pts), fill) in regions.iter().zip(["#fde8e8", "#e8fde9", "#e8f0fe"]) {
        polygon(&mut body, pts, fill);
        let c = centroid(&[pts[0].clone(), pts[1].clone(), pts[2].clone()]);
        label(&mut body, &c, name, 14.0);
    }
    for v in ["1,0,0", "0,1,0", "0,0,1", "0,1/2,1/2", "1/2,0,1/2"] {
        label(&mut body, &p(v), &format!("({v})"), 10.0);
    }
    document("(e,13,e) regions", &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point3 {
        s.parse().unwrap()
    }

    #[test]
    fn first_split_of_eee() {
        let parts = farey_partition(TripTriple::EEE, 1).unwrap();
        assert_eq!(parts.len(), 2);
        for (_, tri) in &parts {
            assert!(tri.contains(&pt("1/2,0,1/2")) && tri.contains(&pt("0,1,0")));
        }
        let svg = render_partition_svg(TripTriple::EEE, 1).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("(1/2,0,1/2)"));
        assert_eq!(svg.matches("<polygon").count(), 2);
    }

    #[test]
    fn gauss_fan_vertices() {
        for (k, (_, tri)) in gauss_fan(TripTriple::EEE, 6).unwrap().iter().enumerate() {
            let k = k as i64;
            assert!(tri.contains(&Point3::frac((k, k + 1), (0, 1), (1, k + 1)).unwrap()), "k = {k}");
        }
    }

    #[test]
    fn partition_sizes_and_regions() {
        let t: TripTriple = "(e,23,e)".parse().unwrap();
        assert_eq!(farey_partition(t, 5).unwrap().len(), 32);
        assert!(farey_partition(t, MAX_DEPTH + 1).is_err());
        let svg = render_regions_svg();
        assert!(svg.contains("(0,1/2,1/2)") && svg.contains("(1/2,0,1/2)"));
    }
}
