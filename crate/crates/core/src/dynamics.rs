//! Exact orbits of the triangle partition maps on the projective triangle.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{farey_matrix, IntMatrix2, Perm2, Rational, TripTriple};
use crate::error::{Error, Result};

/// A point of the triangle x + y + z = 1 with nonnegative rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Point3> {
        let p = Point3 { x, y, z };
        if p.coords().iter().any(|c| c.is_negative()) || p.sum() != Rational::one() {
            return Err(Error::OutsideSimplex(p.to_string()));
        }
        Ok(p)
    }

    /// Builds a point from small integer fractions, e.g. `Point3::frac((1, 6), (1, 3), (1, 2))`.
    pub fn frac(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Result<Point3> {
        Point3::new(ratio(x.0, x.1), ratio(y.0, y.1), ratio(z.0, z.1))
    }

    /// Normalizes a nonnegative, nonzero vector onto the triangle.
    pub fn projectivize(v: [Rational; 3]) -> Result<Point3> {
        let s = &v[0] + &v[1] + &v[2];
        if s.is_zero() {
            return Err(Error::UndefinedPoint);
        }
        let [x, y, z] = v.map(|c| c / &s);
        Point3::new(x, y, z)
    }

    pub fn from_integers(x: &BigInt, y: &BigInt, z: &BigInt) -> Result<Point3> {
        Point3::projectivize([x, y, z].map(|c| Rational::from_integer(c.clone())))
    }

    pub fn coords(&self) -> [Rational; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    fn sum(&self) -> Rational {
        &self.x + &self.y + &self.z
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.z)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl FromStr for Point3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Point3> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected x,y,z but got `{s}`")));
        }
        Point3::new(parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?)
    }
}

impl Serialize for Point3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyCode {
    pub symbols: Vec<u8>,
    pub truncated: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussCode {
    pub ks: Vec<u64>,
    pub truncated: bool,
}

impl GaussCode {
    /// Runs of 1s terminated by a 0; an unterminated trailing run is dropped.
    pub fn from_farey(symbols: &[u8]) -> GaussCode {
        let mut ks = Vec::new();
        let mut run = 0u64;
        for &s in symbols {
            if s == 1 {
                run += 1;
            } else {
                ks.push(run);
                run = 0;
            }
        }
        GaussCode { ks, truncated: run > 0 }
    }
}

fn barycentric(p: &Point3, branch: u8, t: TripTriple) -> [Rational; 3] {
    let inv = farey_matrix(branch, t)
        .unimodular_inverse()
        .expect("Farey matrices are unimodular");
    inv.mul_rational(&p.coords())
}

/// Which subtriangle contains `p`; points on both are given branch 1.
pub fn classify_branch(p: &Point3, t: TripTriple) -> u8 {
    if barycentric(p, 1, t).iter().all(|c| !c.is_negative()) {
        1
    } else {
        0
    }
}

pub fn trip_step(p: &Point3, t: TripTriple) -> Result<Point3> {
    let i = classify_branch(p, t);
    Point3::projectivize(barycentric(p, i, t))
}

/// First `n` Farey symbols of `p` and the Gauss code they determine.
pub fn code_point(p: &Point3, t: TripTriple, n: usize) -> Result<(FareyCode, GaussCode)> {
    let mut symbols = Vec::with_capacity(n);
    let mut q = p.clone();
    for step in 0..n {
        symbols.push(classify_branch(&q, t));
        if step + 1 < n {
            q = trip_step(&q, t)?;
        }
    }
    let gauss = GaussCode::from_farey(&symbols);
    let farey = FareyCode {
        symbols,
        truncated: n > 0,
    };
    Ok((farey, gauss))
}

fn gauss_index(p: &Point3) -> Result<(BigInt, Rational)> {
    if p.z.is_zero() {
        return Err(Error::GaussUndefined(format!("z = 0 at {p}")));
    }
    let k = (&p.x / &p.z).floor().to_integer();
    let d = &p.y + &p.z;
    Ok((k, d))
}

fn small(k: &BigInt) -> u64 {
    k.to_u64().expect("Gauss index fits in u64")
}

/// Closed-form Gauss map of (e,e,e).
pub fn gauss_step_eee(p: &Point3) -> Result<(u64, Point3)> {
    let (k, d) = gauss_index(p)?;
    let kr = Rational::from_integer(k.clone());
    let one = Rational::one();
    let img = [
        &p.y / &d,
        ((&kr + &one) * &p.z - &p.x) / &d,
        (&p.x - &kr * &p.z) / &d,
    ];
    Ok((small(&k), Point3::new(img[0].clone(), img[1].clone(), img[2].clone())?))
}

/// Closed-form Gauss map of (e,13,e).
pub fn gauss_step_e13e(p: &Point3) -> Result<(u64, Point3)> {
    let (k, d) = gauss_index(p)?;
    let kr = Rational::from_integer(k.clone());
    let one = Rational::one();
    let img = [
        (&p.x - &kr * &p.z) / &d,
        ((&kr + &one) * &p.z - &p.x) / &d,
        &p.y / &d,
    ];
    Ok((small(&k), Point3::new(img[0].clone(), img[1].clone(), img[2].clone())?))
}

/// Gauss step of any map, obtained by iterating the Farey map until a 0 occurs.
pub fn gauss_step(p: &Point3, t: TripTriple, max_run: u64) -> Result<(u64, Point3)> {
    let mut q = p.clone();
    let mut k = 0;
    loop {
        let i = classify_branch(&q, t);
        q = trip_step(&q, t)?;
        if i == 0 {
            return Ok((k, q));
        }
        k += 1;
        if k > max_run {
            return Err(Error::GaussUndefined(format!("no 0 within {max_run} Farey steps from {p}")));
        }
    }
}

/// A point of the plane cone spanned by (0,1) and (1,1), normalized so x + z = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point2 {
    pub x: Rational,
    pub z: Rational,
}

impl Point2 {
    pub fn new(x: Rational, z: Rational) -> Result<Point2> {
        if x.is_negative() || z < x {
            return Err(Error::OutsideSimplex(format!("{x},{z}")));
        }
        let s = &x + &z;
        if s.is_zero() {
            return Err(Error::UndefinedPoint);
        }
        Ok(Point2 { x: x / &s, z: z / s })
    }

    /// The point with ratio x/z = t, for t in [0,1].
    pub fn from_ratio(t: Rational) -> Result<Point2> {
        Point2::new(t, Rational::one())
    }

    pub fn ratio(&self) -> Rational {
        &self.x / &self.z
    }
}

pub type Triple2 = (Perm2, Perm2, Perm2);

const V2: IntMatrix2 = IntMatrix2([[0, 1], [1, 1]]);

/// `σ F_i τ_i` for the plane maps.
fn r2_farey(branch: u8, t2: Triple2) -> IntMatrix2 {
    let (base, tau) = if branch == 0 {
        (IntMatrix2([[0, 1], [1, 1]]), t2.1)
    } else {
        (IntMatrix2([[1, 1], [0, 1]]), t2.2)
    };
    t2.0.to_matrix() * base * tau.to_matrix()
}

fn apply2(m: &IntMatrix2, p: &Point2) -> [Rational; 2] {
    let e = |i: usize| {
        Rational::from_integer(m.0[i][0].into()) * &p.x + Rational::from_integer(m.0[i][1].into()) * &p.z
    };
    [e(0), e(1)]
}

pub fn r2_classify(p: &Point2, t2: Triple2) -> u8 {
    let cone = (V2 * r2_farey(1, t2)).unimodular_inverse().expect("unimodular");
    if apply2(&cone, p).iter().all(|c| !c.is_negative()) {
        1
    } else {
        0
    }
}

/// One step of a plane TRIP map T_i = V F_i⁻¹ V⁻¹.
pub fn r2_step(p: &Point2, t2: Triple2) -> Result<Point2> {
    let i = r2_classify(p, t2);
    let t = V2 * r2_farey(i, t2).unimodular_inverse()? * V2.unimodular_inverse()?;
    let [x, z] = apply2(&t, p);
    Point2::new(x, z)
}

pub fn r2_code(p: &Point2, t2: Triple2, n: usize) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(n);
    let mut q = p.clone();
    for step in 0..n {
        out.push(r2_classify(&q, t2));
        if step + 1 < n {
            q = r2_step(&q, t2)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionLabel {
    A,
    B,
    C,
}

pub fn region_of(p: &Point3) -> RegionLabel {
    if p.z >= &p.x + &p.y {
        RegionLabel::A
    } else if p.y >= p.z {
        RegionLabel::B
    } else {
        RegionLabel::C
    }
}

pub fn e13e_projection(p: &Point3, which: RegionLabel) -> Result<Rational> {
    let (num, den) = match which {
        RegionLabel::A => (&p.y, &p.x + &p.y),
        RegionLabel::B => (&p.z, &p.x + &p.z),
        RegionLabel::C => return Err(Error::Domain("no projection is defined on C".into())),
    };
    if den.is_zero() {
        return Err(Error::Domain(format!("projection undefined at the vertex {p}")));
    }
    Ok(num / den)
}

/// The interval map F(γ) = ⌈1/γ⌉ − 1/γ.
pub fn interval_map(gamma: &Rational) -> Result<Rational> {
    if !gamma.is_positive() {
        return Err(Error::Domain(format!("interval map needs γ > 0, got {gamma}")));
    }
    let inv = gamma.recip();
    Ok(inv.ceil() - inv)
}

/// The branch F_k(γ) = k + 2 − 1/γ.
pub fn interval_branch(k: u64, gamma: &Rational) -> Rational {
    Rational::from_integer(BigInt::from(k + 2)) - gamma.recip()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntOrbitState {
    pub x: BigUint,
    pub y: BigUint,
    pub z: BigUint,
    pub steps: u64,
}

impl IntOrbitState {
    pub fn new(x: impl Into<BigUint>, y: impl Into<BigUint>, z: impl Into<BigUint>) -> IntOrbitState {
        IntOrbitState {
            x: x.into(),
            y: y.into(),
            z: z.into(),
            steps: 0,
        }
    }

    /// (x, y, z) ↦ (x − kz, (k+1)z − x, y) with k = ⌊x/z⌋.
    pub fn step(&mut self) {
        let r = &self.x % &self.z;
        let y_new = &self.z - &r;
        self.z = std::mem::replace(&mut self.y, y_new);
        self.x = r;
        self.steps += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitOutcome {
    ReachedYgtZ(u64),
    HitZero(u64),
    Exhausted,
}

pub fn hidden_r2_orbit(mut s: IntOrbitState, max_steps: u64) -> OrbitOutcome {
    loop {
        if s.y > s.z {
            return OrbitOutcome::ReachedYgtZ(s.steps);
        }
        if s.x.is_zero() || s.y.is_zero() || s.z.is_zero() {
            return OrbitOutcome::HitZero(s.steps);
        }
        if s.steps >= max_steps {
            return OrbitOutcome::Exhausted;
        }
        s.step();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Perm3;

    fn pt(s: &str) -> Point3 {
        s.parse().unwrap()
    }

    const E13E: TripTriple = TripTriple::new(Perm3::E, Perm3::P13, Perm3::E);

    #[test]
    fn branches_and_steps() {
        let t = TripTriple::EEE;
        assert_eq!(classify_branch(&pt("1/6,1/3,1/2"), t), 0);
        assert_eq!(classify_branch(&pt("1/2,1/4,1/4"), t), 1);
        assert_eq!(classify_branch(&pt("1/4,1/2,1/4"), t), 1);
        assert_eq!(trip_step(&pt("1/6,1/3,1/2"), t).unwrap(), pt("2/5,2/5,1/5"));
        assert_eq!(trip_step(&pt("1/2,1/4,1/4"), t).unwrap(), pt("1/3,1/3,1/3"));
        assert_eq!(trip_step(&pt("0,1,0"), t).unwrap(), pt("0,1,0"));
        assert!("1/2,1/2,1/2".parse::<Point3>().is_err());
        assert!("-1/2,1,1/2".parse::<Point3>().is_err());
    }

    #[test]
    fn coding() {
        let t = TripTriple::EEE;
        let (f, g) = code_point(&pt("1/6,1/3,1/2"), t, 4).unwrap();
        assert_eq!(f.symbols, vec![0, 1, 1, 0]);
        assert_eq!(g.ks, vec![0, 2]);
        assert!(!g.truncated);
        let (f, g) = code_point(&pt("1/6,1/3,1/2"), t, 0).unwrap();
        assert!(f.symbols.is_empty() && g.ks.is_empty());
        let (f, _) = code_point(&pt("1/3,1/3,1/3"), t, 1).unwrap();
        assert_eq!(f.symbols, vec![1]);
        assert_eq!(GaussCode::from_farey(&[0, 1, 1]), GaussCode { ks: vec![0], truncated: true });
    }

    #[test]
    fn closed_form_gauss_maps() {
        assert_eq!(gauss_step_eee(&pt("3/7,2/7,2/7")).unwrap(), (1, pt("1/2,1/4,1/4")));
        assert_eq!(gauss_step_eee(&pt("1/6,1/3,1/2")).unwrap(), (0, pt("2/5,2/5,1/5")));
        assert_eq!(gauss_step_eee(&pt("0,1/2,1/2")).unwrap(), (0, pt("1/2,1/2,0")));
        assert_eq!(gauss_step_e13e(&pt("3/7,2/7,2/7")).unwrap(), (1, pt("1/4,1/4,1/2")));
        assert_eq!(gauss_step_e13e(&pt("1/2,0,1/2")).unwrap(), (1, pt("0,1,0")));
        assert_eq!(gauss_step_e13e(&pt("1/6,1/6,2/3")).unwrap().0, 0);
        assert!(matches!(gauss_step_eee(&pt("1/2,1/2,0")), Err(Error::GaussUndefined(_))));
        assert_eq!(gauss_step(&pt("3/7,2/7,2/7"), E13E, 100).unwrap(), (1, pt("1/4,1/4,1/2")));
    }

    #[test]
    fn regions_and_projections() {
        assert_eq!(region_of(&pt("1/6,1/6,2/3")), RegionLabel::A);
        assert_eq!(region_of(&pt("1/6,1/2,1/3")), RegionLabel::B);
        assert_eq!(region_of(&pt("2/5,1/5,2/5")), RegionLabel::C);
        assert_eq!(e13e_projection(&pt("1/6,1/6,2/3"), RegionLabel::A).unwrap(), ratio(1, 2));
        assert_eq!(e13e_projection(&pt("1/6,1/2,1/3"), RegionLabel::B).unwrap(), ratio(2, 3));
        assert!(e13e_projection(&pt("0,0,1"), RegionLabel::A).is_err());
        assert_eq!(interval_map(&ratio(2, 5)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn hidden_orbits() {
        assert_eq!(hidden_r2_orbit(IntOrbitState::new(2u32, 5u32, 3u32), 100), OrbitOutcome::ReachedYgtZ(0));
        assert_eq!(hidden_r2_orbit(IntOrbitState::new(3u32, 1u32, 5u32), 100), OrbitOutcome::ReachedYgtZ(1));
        assert_eq!(hidden_r2_orbit(IntOrbitState::new(5u32, 3u32, 4u32), 100), OrbitOutcome::HitZero(6));
        assert_eq!(hidden_r2_orbit(IntOrbitState::new(5u32, 3u32, 4u32), 3), OrbitOutcome::Exhausted);
        let mut s = IntOrbitState::new(5u32, 3u32, 4u32);
        s.step();
        assert_eq!((s.x.clone(), s.y.clone(), s.z.clone()), (1u32.into(), 3u32.into(), 3u32.into()));
    }

    /// Continued fraction digits by Euclid's algorithm.
    fn cf_digits(mut a: u64, mut b: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while a != 0 {
            out.push(b / a);
            (a, b) = (b % a, a);
        }
        out
    }

    #[test]
    fn plane_farey_map_matches_euclid() {
        let eee = (Perm2::E, Perm2::E, Perm2::E);
        for (a, b) in [(5u64, 13u64), (7, 10), (21, 34), (1, 7), (3, 5), (17, 60)] {
            let digits = cf_digits(a, b);
            let steps = digits.iter().sum::<u64>() as usize;
            let p = Point2::from_ratio(ratio(a as i64, b as i64)).unwrap();
            let code = r2_code(&p, eee, steps).unwrap();
            let runs: Vec<u64> = GaussCode::from_farey(&code).ks.iter().map(|k| k + 1).collect();
            assert_eq!(runs, digits, "{a}/{b}");
        }
    }

    #[test]
    fn plane_backward_map_matches_ceiling_expansion() {
        let t2 = (Perm2::E, Perm2::P12, Perm2::E);
        for (a, b) in [(5i64, 13i64), (7, 10), (13, 21), (3, 11), (8, 9)] {
            let mut y = ratio(a, b);
            let mut digits = Vec::new();
            while !y.is_zero() {
                let c = y.recip().ceil();
                y = &c - y.recip();
                digits.push(c.to_integer().to_u64().unwrap());
            }
            digits.pop();
            let steps = digits.iter().map(|c| c - 1).sum::<u64>() as usize;
            let p = Point2::from_ratio(ratio(a, b)).unwrap();
            let code = r2_code(&p, t2, steps).unwrap();
            let runs: Vec<u64> = GaussCode::from_farey(&code).ks.iter().map(|k| k + 2).collect();
            assert_eq!(runs, digits, "{a}/{b}");
        }
    }

    #[test]
    fn plane_fixed_point() {
        let eee = (Perm2::E, Perm2::E, Perm2::E);
        let zero = Point2::from_ratio(Rational::zero()).unwrap();
        assert_eq!(r2_step(&zero, eee).unwrap(), zero);
    }
}
