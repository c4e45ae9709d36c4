//! Permutations of two and three letters, small integer matrices and the
//! Farey matrices of the 216 triangle partition maps.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// A permutation of {1,2,3}, stored as the images of 1, 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3 {
    image: [u8; 3],
}

impl Perm3 {
    pub const E: Perm3 = Perm3 { image: [1, 2, 3] };
    pub const P12: Perm3 = Perm3 { image: [2, 1, 3] };
    pub const P13: Perm3 = Perm3 { image: [3, 2, 1] };
    pub const P23: Perm3 = Perm3 { image: [1, 3, 2] };
    pub const P123: Perm3 = Perm3 { image: [2, 3, 1] };
    pub const P132: Perm3 = Perm3 { image: [3, 1, 2] };

    /// The six elements in the order e, (12), (13), (23), (123), (132).
    pub const ALL: [Perm3; 6] = [
        Perm3::E,
        Perm3::P12,
        Perm3::P13,
        Perm3::P23,
        Perm3::P123,
        Perm3::P132,
    ];

    pub fn from_images(image: [u8; 3]) -> Result<Perm3> {
        let mut seen = [false; 3];
        for &c in &image {
            if !(1..=3).contains(&c) || seen[(c - 1) as usize] {
                return Err(Error::InvalidPerm(format!("{image:?}")));
            }
            seen[(c - 1) as usize] = true;
        }
        Ok(Perm3 { image })
    }

    pub fn images(self) -> [u8; 3] {
        self.image
    }

    #[inline]
    pub fn apply(self, c: u8) -> u8 {
        self.image[(c - 1) as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3 {
            image: [1, 2, 3].map(|c| self.apply(other.apply(c))),
        }
    }

    pub fn inverse(self) -> Perm3 {
        let mut image = [0; 3];
        for c in 1..=3u8 {
            image[(self.apply(c) - 1) as usize] = c;
        }
        Perm3 { image }
    }

    /// Cycle notation without parentheses: "e", "12", ..., "132".
    pub fn name(self) -> &'static str {
        match self.image {
            [1, 2, 3] => "e",
            [2, 1, 3] => "12",
            [3, 2, 1] => "13",
            [1, 3, 2] => "23",
            [2, 3, 1] => "123",
            _ => "132",
        }
    }

    /// The permutation matrix with `M e_c = e_{p(c)}`.
    pub fn to_matrix(self) -> IntMatrix3 {
        let mut m = IntMatrix3::zero();
        for c in 1..=3u8 {
            m.entries[(self.apply(c) - 1) as usize][(c - 1) as usize] = BigInt::one();
        }
        m
    }
}

pub fn perm_to_matrix(p: Perm3) -> IntMatrix3 {
    p.to_matrix()
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            "e" => f.write_str("e"),
            n => write!(f, "({n})"),
        }
    }
}

impl FromStr for Perm3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm3> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        Perm3::ALL
            .into_iter()
            .find(|p| p.name() == t)
            .ok_or_else(|| Error::InvalidPerm(s.to_string()))
    }
}

/// A permutation of {1,2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm2 {
    image: [u8; 2],
}

impl Perm2 {
    pub const E: Perm2 = Perm2 { image: [1, 2] };
    pub const P12: Perm2 = Perm2 { image: [2, 1] };
    pub const ALL: [Perm2; 2] = [Perm2::E, Perm2::P12];

    pub fn apply(self, c: u8) -> u8 {
        self.image[(c - 1) as usize]
    }

    pub fn to_matrix(self) -> IntMatrix2 {
        let mut m = [[0i64; 2]; 2];
        for c in 1..=2u8 {
            m[(self.apply(c) - 1) as usize][(c - 1) as usize] = 1;
        }
        IntMatrix2(m)
    }
}

impl fmt::Display for Perm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Perm2::E { "e" } else { "(12)" })
    }
}

impl FromStr for Perm2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm2> {
        match s.trim().trim_start_matches('(').trim_end_matches(')').trim() {
            "e" => Ok(Perm2::E),
            "12" => Ok(Perm2::P12),
            _ => Err(Error::InvalidPerm(s.to_string())),
        }
    }
}

/// 2×2 integer matrix; only ever holds the small Farey and permutation matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntMatrix2(pub [[i64; 2]; 2]);

impl IntMatrix2 {
    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn unimodular_inverse(&self) -> Result<IntMatrix2> {
        let d = self.det();
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d.into()));
        }
        let m = &self.0;
        Ok(IntMatrix2([[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]]))
    }
}

impl Mul for IntMatrix2 {
    type Output = IntMatrix2;

    fn mul(self, rhs: IntMatrix2) -> IntMatrix2 {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..2).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        IntMatrix2(out)
    }
}

/// 3×3 matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix3 {
    pub entries: [[BigInt; 3]; 3],
}

impl IntMatrix3 {
    pub fn zero() -> IntMatrix3 {
        IntMatrix3 {
            entries: Default::default(),
        }
    }

    pub fn identity() -> IntMatrix3 {
        Perm3::E.to_matrix()
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> IntMatrix3 {
        IntMatrix3 {
            entries: rows.map(|r| r.map(BigInt::from)),
        }
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<[[i64; 3]; 3]> {
        let mut out = [[0i64; 3]; 3];
        for (row, src) in out.iter_mut().zip(&self.entries) {
            for (x, e) in row.iter_mut().zip(src) {
                *x = i64::try_from(e).ok()?;
            }
        }
        Some(out)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn column(&self, j: usize) -> [BigInt; 3] {
        [0, 1, 2].map(|i| self.entries[i][j].clone())
    }

    pub fn det(&self) -> BigInt {
        let m = &self.entries;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_positive())
    }

    pub fn has_negative(&self) -> bool {
        self.entries.iter().flatten().any(|e| e.is_negative())
    }

    /// Exact inverse via the adjugate; requires determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix3> {
        let d = self.det();
        if d.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(d));
        }
        let m = &self.entries;
        let mut inv = IntMatrix3::zero();
        for i in 0..3 {
            for j in 0..3 {
                // cofactor of entry (j, i), so the result is the transposed cofactor matrix
                let (r0, r1) = others(j);
                let (c0, c1) = others(i);
                let minor = &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
                let sign = if (i + j) % 2 == 0 { &d } else { &-&d };
                inv.entries[i][j] = minor * sign;
            }
        }
        Ok(inv)
    }

    pub fn mul_vec(&self, v: &[BigInt; 3]) -> [BigInt; 3] {
        [0, 1, 2].map(|i| (0..3).map(|k| &self.entries[i][k] * &v[k]).sum())
    }

    pub fn mul_rational(&self, v: &[Rational; 3]) -> [Rational; 3] {
        [0, 1, 2].map(|i| {
            (0..3).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(self.entries[i][k].clone()) * &v[k]
            })
        })
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn unimodular_inverse(m: &IntMatrix3) -> Result<IntMatrix3> {
    m.unimodular_inverse()
}

impl Mul for &IntMatrix3 {
    type Output = IntMatrix3;

    fn mul(self, rhs: &IntMatrix3) -> IntMatrix3 {
        let mut out = IntMatrix3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = (0..3).map(|k| &self.entries[i][k] * &rhs.entries[k][j]).sum();
            }
        }
        out
    }
}

impl Mul for IntMatrix3 {
    type Output = IntMatrix3;

    fn mul(self, rhs: IntMatrix3) -> IntMatrix3 {
        &self * &rhs
    }
}

impl fmt::Display for IntMatrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A triple (σ, τ0, τ1) naming one of the 216 maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripTriple {
    pub sigma: Perm3,
    pub tau0: Perm3,
    pub tau1: Perm3,
}

impl TripTriple {
    pub const EEE: TripTriple = TripTriple::new(Perm3::E, Perm3::E, Perm3::E);

    pub const fn new(sigma: Perm3, tau0: Perm3, tau1: Perm3) -> TripTriple {
        TripTriple { sigma, tau0, tau1 }
    }

    pub fn all() -> impl Iterator<Item = TripTriple> {
        Perm3::ALL.into_iter().flat_map(|s| {
            Perm3::ALL
                .into_iter()
                .flat_map(move |t0| Perm3::ALL.into_iter().map(move |t1| TripTriple::new(s, t0, t1)))
        })
    }

    pub fn tau(&self, branch: u8) -> Perm3 {
        if branch == 0 {
            self.tau0
        } else {
            self.tau1
        }
    }
}

impl fmt::Display for TripTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.sigma.name(), self.tau0.name(), self.tau1.name())
    }
}

impl FromStr for TripTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<TripTriple> {
        let bad = || Error::InvalidTriple(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let p = |i: usize| parts[i].parse::<Perm3>().map_err(|_| bad());
        Ok(TripTriple::new(p(0)?, p(1)?, p(2)?))
    }
}

impl Serialize for TripTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TripTriple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The unpermuted Farey matrices F0 and F1.
pub fn base_farey(branch: u8) -> IntMatrix3 {
    if branch == 0 {
        IntMatrix3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
    } else {
        IntMatrix3::from_i64([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    }
}

/// `σ · F_i · τ_i`.
pub fn farey_matrix(branch: u8, t: TripTriple) -> IntMatrix3 {
    &(&t.sigma.to_matrix() * &base_farey(branch)) * &t.tau(branch).to_matrix()
}

pub fn farey_product(bits: &[u8], t: TripTriple) -> IntMatrix3 {
    bits.iter()
        .fold(IntMatrix3::identity(), |acc, &b| &acc * &farey_matrix(b, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_matrices_match_display() {
        assert_eq!(perm_to_matrix(Perm3::E), IntMatrix3::identity());
        assert_eq!(
            perm_to_matrix(Perm3::P12),
            IntMatrix3::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        );
        assert_eq!(
            perm_to_matrix(Perm3::P123),
            IntMatrix3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        );
    }

    #[test]
    fn composition_is_a_homomorphism() {
        for p in Perm3::ALL {
            assert_eq!(p.compose(p.inverse()), Perm3::E);
            for q in Perm3::ALL {
                assert_eq!((p.compose(q)).to_matrix(), &p.to_matrix() * &q.to_matrix());
                for r in Perm3::ALL {
                    assert_eq!(p.compose(q).compose(r), p.compose(q.compose(r)));
                }
            }
        }
    }

    #[test]
    fn farey_matrices() {
        let t = TripTriple::EEE;
        assert_eq!(farey_matrix(0, t), IntMatrix3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]]));
        assert_eq!(farey_matrix(1, t), IntMatrix3::from_i64([[1, 0, 1], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(
            farey_product(&[1, 1, 0], t),
            IntMatrix3::from_i64([[0, 2, 3], [1, 0, 0], [0, 1, 1]])
        );
        for t in TripTriple::all() {
            for i in 0..2 {
                assert_eq!(farey_matrix(i, t).det().abs(), BigInt::one());
            }
        }
        assert_eq!(TripTriple::all().count(), 216);
    }

    #[test]
    fn inverses() {
        let id = IntMatrix3::identity();
        assert_eq!(id.unimodular_inverse().unwrap(), id);
        let f0 = farey_matrix(0, TripTriple::EEE);
        assert_eq!(&f0 * &f0.unimodular_inverse().unwrap(), id);
        assert_eq!(
            farey_matrix(1, TripTriple::EEE).unimodular_inverse().unwrap(),
            IntMatrix3::from_i64([[1, 0, -1], [0, 1, 0], [0, 0, 1]])
        );
        let singular = IntMatrix3::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        assert!(matches!(singular.unimodular_inverse(), Err(Error::NotUnimodular(_))));
        let f = IntMatrix2([[0, 1], [1, 1]]);
        assert_eq!(f * f.unimodular_inverse().unwrap(), IntMatrix2([[1, 0], [0, 1]]));
    }

    #[test]
    fn parsing_round_trips() {
        for p in Perm3::ALL {
            assert_eq!(p.to_string().parse::<Perm3>().unwrap(), p);
        }
        let t: TripTriple = "(e,13,e)".parse().unwrap();
        assert_eq!(t, TripTriple::new(Perm3::E, Perm3::P13, Perm3::E));
        assert_eq!(t.to_string(), "(e,13,e)");
        assert_eq!("( 123 ,(13), 13)".parse::<TripTriple>().unwrap().to_string(), "(123,13,13)");
        assert!("(e,14,e)".parse::<TripTriple>().is_err());
        assert!("e,e,e".parse::<TripTriple>().is_err());
    }
}
