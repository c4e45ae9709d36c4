//! Words over {1,2,3}, substitutions, the TRIP and Gauss substitutions, and
//! coding sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{farey_matrix, IntMatrix3, Perm3, Rational, TripTriple};
use crate::error::{Error, Result};

/// A finite word over {1,2,3}, one byte per character.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_slice(s: &[u8]) -> Word {
        Word(s.to_vec())
    }

    /// `c^n`.
    pub fn power(c: u8, n: usize) -> Word {
        Word(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn relabel(&self, rho: Perm3) -> Word {
        Word(self.0.iter().map(|&c| rho.apply(c)).collect())
    }

    pub fn is_power_of(&self, c: u8) -> bool {
        self.0.iter().all(|&d| d == c)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "ε" || s == "e" {
            return Ok(Word::empty());
        }
        s.bytes()
            .map(|b| match b {
                b'1'..=b'3' => Ok(b - b'0'),
                _ => Err(Error::Parse(format!("invalid word `{s}` (digits 1-3 expected)"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Word {
        s.parse().expect("word literal over 1,2,3")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let digits: String = self.0.iter().map(|c| char::from(b'0' + c)).collect();
        s.serialize_str(&digits)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Character counts (|w|_1, |w|_2, |w|_3).
pub type Vec3 = [BigInt; 3];

pub fn abelianize_word(w: &[u8]) -> Vec3 {
    let mut counts = [0u64; 3];
    for &c in w {
        counts[(c - 1) as usize] += 1;
    }
    counts.map(BigInt::from)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Substitution {
    pub images: [Word; 3],
}

impl Substitution {
    pub fn new(one: &str, two: &str, three: &str) -> Substitution {
        Substitution {
            images: [one.into(), two.into(), three.into()],
        }
    }

    pub fn identity() -> Substitution {
        Substitution::new("1", "2", "3")
    }

    pub fn letter(p: Perm3) -> Substitution {
        Substitution {
            images: [1, 2, 3].map(|c| Word(vec![p.apply(c)])),
        }
    }

    #[inline]
    pub fn image(&self, c: u8) -> &Word {
        &self.images[(c - 1) as usize]
    }

    pub fn apply(&self, w: &[u8]) -> Word {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &c in w {
            out.extend_from_slice(&self.image(c).0);
        }
        Word(out)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        Substitution {
            images: [1, 2, 3].map(|c| self.apply(&other.image(c).0)),
        }
    }

    pub fn power(&self, n: usize) -> Substitution {
        (0..n).fold(Substitution::identity(), |acc, _| acc.compose(self))
    }

    /// Column j counts the characters of the image of j.
    pub fn abelianize(&self) -> IntMatrix3 {
        let mut m = IntMatrix3::zero();
        for j in 0..3 {
            let col = abelianize_word(&self.images[j].0);
            for (i, v) in col.into_iter().enumerate() {
                m.entries[i][j] = v;
            }
        }
        m
    }

    /// The substitution 1 ↦ 1^a 2^d 3^g, ... whose abelianization is `m`.
    pub fn canonical_from_matrix(m: &IntMatrix3) -> Result<Substitution> {
        if m.has_negative() {
            return Err(Error::NegativeEntry);
        }
        let mut images: [Word; 3] = Default::default();
        for (j, img) in images.iter_mut().enumerate() {
            for i in 0..3 {
                let n = m.entries[i][j]
                    .to_usize()
                    .ok_or_else(|| Error::Domain("matrix entry too large".into()))?;
                img.0.extend(std::iter::repeat_n(i as u8 + 1, n));
            }
        }
        Ok(Substitution { images })
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1↦{}, 2↦{}, 3↦{}", self.images[0], self.images[1], self.images[2])
    }
}

pub fn abelianize_substitution(s: &Substitution) -> IntMatrix3 {
    s.abelianize()
}

pub fn canonical_substitution_from_matrix(m: &IntMatrix3) -> Result<Substitution> {
    Substitution::canonical_from_matrix(m)
}

/// Whether the image of 3 under S1(e,e,e) is written 13 or 31.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Canonical13,
    Variant31,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "canonical13" | "13" => Ok(Variant::Canonical13),
            "variant31" | "31" => Ok(Variant::Variant31),
            _ => Err(Error::Parse(format!("unknown variant `{s}` (canonical13 or variant31)"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Canonical13 => "canonical13",
            Variant::Variant31 => "variant31",
        })
    }
}

fn base_substitution(branch: u8, variant: Variant) -> Substitution {
    match (branch, variant) {
        (0, _) => Substitution::new("2", "3", "13"),
        (_, Variant::Canonical13) => Substitution::new("1", "2", "13"),
        (_, Variant::Variant31) => Substitution::new("1", "2", "31"),
    }
}

/// `S_i(σ,τ0,τ1) = σ ∘ S_i(e,e,e) ∘ τ_i`.
pub fn trip_substitution(branch: u8, t: TripTriple, variant: Variant) -> Substitution {
    Substitution::letter(t.sigma)
        .compose(&base_substitution(branch, variant))
        .compose(&Substitution::letter(t.tau(branch)))
}

/// `S_1^k ∘ S_0`.
pub fn gauss_substitution(t: TripTriple, k: u64, variant: Variant) -> Substitution {
    trip_substitution(1, t, variant)
        .power(k as usize)
        .compose(&trip_substitution(0, t, variant))
}

/// A finite prefix of a coding sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CodingRepr", try_from = "CodingRepr")]
pub enum CodingSeq {
    Farey(Vec<u8>),
    Gauss(Vec<u64>),
    DoubleGauss(Vec<(u64, u64)>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CodingRepr {
    Farey { bits: String },
    Gauss { ks: Vec<u64> },
    DoubleGauss { pairs: Vec<(u64, u64)> },
}

impl From<CodingSeq> for CodingRepr {
    fn from(c: CodingSeq) -> CodingRepr {
        match c {
            CodingSeq::Farey(b) => CodingRepr::Farey {
                bits: b.iter().map(|&x| char::from(b'0' + x)).collect(),
            },
            CodingSeq::Gauss(ks) => CodingRepr::Gauss { ks },
            CodingSeq::DoubleGauss(pairs) => CodingRepr::DoubleGauss { pairs },
        }
    }
}

impl TryFrom<CodingRepr> for CodingSeq {
    type Error = Error;

    fn try_from(r: CodingRepr) -> Result<CodingSeq> {
        match r {
            CodingRepr::Farey { bits } => CodingSeq::parse_farey(&bits),
            CodingRepr::Gauss { ks } => Ok(CodingSeq::Gauss(ks)),
            CodingRepr::DoubleGauss { pairs } => Ok(CodingSeq::DoubleGauss(pairs)),
        }
    }
}

impl CodingSeq {
    pub fn parse_farey(bits: &str) -> Result<CodingSeq> {
        bits.trim()
            .bytes()
            .map(|b| match b {
                b'0' | b'1' => Ok(b - b'0'),
                _ => Err(Error::Parse(format!("invalid Farey bits `{bits}`"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(CodingSeq::Farey)
    }

    /// Comma-separated k-values, e.g. "0,2,1".
    pub fn parse_gauss(ks: &str) -> Result<CodingSeq> {
        ks.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid Gauss coding `{ks}`")))
            })
            .collect::<Result<Vec<u64>>>()
            .map(CodingSeq::Gauss)
    }

    /// Pairs the entries of a Gauss coding; an unpaired final entry is dropped and reported.
    pub fn pair_up(ks: &[u64]) -> (CodingSeq, bool) {
        let pairs = ks.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        (CodingSeq::DoubleGauss(pairs), ks.len() % 2 == 1)
    }

    pub fn len(&self) -> usize {
        match self {
            CodingSeq::Farey(v) => v.len(),
            CodingSeq::Gauss(v) => v.len(),
            CodingSeq::DoubleGauss(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The coding with its first `n` entries removed.
    pub fn shift(&self, n: usize) -> CodingSeq {
        match self {
            CodingSeq::Farey(v) => CodingSeq::Farey(v[n.min(v.len())..].to_vec()),
            CodingSeq::Gauss(v) => CodingSeq::Gauss(v[n.min(v.len())..].to_vec()),
            CodingSeq::DoubleGauss(v) => CodingSeq::DoubleGauss(v[n.min(v.len())..].to_vec()),
        }
    }

    pub fn prefix(&self, n: usize) -> CodingSeq {
        match self {
            CodingSeq::Farey(v) => CodingSeq::Farey(v[..n.min(v.len())].to_vec()),
            CodingSeq::Gauss(v) => CodingSeq::Gauss(v[..n.min(v.len())].to_vec()),
            CodingSeq::DoubleGauss(v) => CodingSeq::DoubleGauss(v[..n.min(v.len())].to_vec()),
        }
    }

    pub fn gauss_ks(&self) -> Option<&[u64]> {
        match self {
            CodingSeq::Gauss(v) => Some(v),
            _ => None,
        }
    }

    /// The substitution driven by each entry.
    pub fn substitutions(&self, t: TripTriple, variant: Variant) -> Vec<Substitution> {
        match self {
            CodingSeq::Farey(bits) => {
                let s = [0, 1].map(|i| trip_substitution(i, t, variant));
                bits.iter().map(|&b| s[b as usize].clone()).collect()
            }
            CodingSeq::Gauss(ks) => ks.iter().map(|&k| gauss_substitution(t, k, variant)).collect(),
            CodingSeq::DoubleGauss(pairs) => pairs
                .iter()
                .map(|&(j, k)| gauss_substitution(t, j, variant).compose(&gauss_substitution(t, k, variant)))
                .collect(),
        }
    }
}

impl fmt::Display for CodingSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodingSeq::Farey(b) => {
                for x in b {
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            CodingSeq::Gauss(ks) => {
                let s: Vec<String> = ks.iter().map(u64::to_string).collect();
                f.write_str(&s.join(","))
            }
            CodingSeq::DoubleGauss(p) => {
                let s: Vec<String> = p.iter().map(|(j, k)| format!("({j},{k})")).collect();
                f.write_str(&s.join(","))
            }
        }
    }
}

/// i.i.d. geometric(1/2) k-values, capped, from a seeded ChaCha stream.
///
/// Codings of different lengths drawn from the same seed share their prefix.
pub fn random_gauss(seed: u64, len: usize, cap: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let mut k = 0;
            while k < cap && rng.random_bool(0.5) {
                k += 1;
            }
            k
        })
        .collect()
}

pub const DEFAULT_K_CAP: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primitivity {
    PositiveAt(usize),
    NotWithinHorizon,
}

/// Smallest n ≤ horizon for which the product of the first n coding matrices is positive.
pub fn check_primitive(seq: &CodingSeq, t: TripTriple, horizon: usize) -> Primitivity {
    let mut prod = IntMatrix3::identity();
    for (n, s) in seq
        .substitutions(t, Variant::Canonical13)
        .iter()
        .take(horizon)
        .enumerate()
    {
        prod = &prod * &s.abelianize();
        if prod.is_positive() {
            return Primitivity::PositiveAt(n + 1);
        }
    }
    Primitivity::NotWithinHorizon
}

/// The first `limit` characters of `(σ0 ∘ … ∘ σ_{m−1})(c)`.
pub fn expansion_prefix(subs: &[Substitution], c: u8, limit: usize) -> Word {
    fn go(subs: &[Substitution], depth: usize, c: u8, limit: usize, out: &mut Vec<u8>) {
        if out.len() >= limit {
            return;
        }
        if depth == 0 {
            out.push(c);
            return;
        }
        for &d in &subs[depth - 1].image(c).0 {
            go(subs, depth - 1, d, limit, out);
            if out.len() >= limit {
                return;
            }
        }
    }
    let mut out = Vec::with_capacity(limit);
    go(subs, subs.len(), c, limit, &mut out);
    Word(out)
}

/// `(σ0 ∘ … ∘ σ_{m−1})(c)` in full.
pub fn expand(subs: &[Substitution], c: u8) -> Word {
    subs.iter()
        .rev()
        .fold(Word(vec![c]), |w, s| s.apply(&w.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyEstimate {
    pub depth: usize,
    pub prefix_len: usize,
    pub counts: [u64; 3],
    pub frequency: [Rational; 3],
    /// Normalized columns of the Farey matrix product: the corners of the nested subtriangle.
    pub subtriangle: [[Rational; 3]; 3],
    pub primitive: Primitivity,
}

impl FrequencyEstimate {
    /// Largest coordinate gap between two corners of the subtriangle.
    pub fn subtriangle_diameter(&self) -> Rational {
        let mut best = Rational::zero();
        for a in &self.subtriangle {
            for b in &self.subtriangle {
                for i in 0..3 {
                    let d = if a[i] > b[i] { &a[i] - &b[i] } else { &b[i] - &a[i] };
                    if d > best {
                        best = d;
                    }
                }
            }
        }
        best
    }
}

/// Character frequencies of a long prefix of the word generated from 1, next to
/// the subtriangle cut out by the same coding prefix.
pub fn estimate_frequency(seq: &CodingSeq, t: TripTriple, word_len: usize) -> Result<FrequencyEstimate> {
    let subs = seq.substitutions(t, Variant::Canonical13);
    let primitive = check_primitive(seq, t, seq.len());
    let mut prod = IntMatrix3::identity();
    let mut depth = 0;
    for s in &subs {
        if prod.column(0).iter().sum::<BigInt>() >= BigInt::from(word_len) {
            break;
        }
        prod = &prod * &s.abelianize();
        depth += 1;
    }
    let w = expansion_prefix(&subs[..depth], 1, word_len);
    if w.is_empty() {
        return Err(Error::CodingExhausted("empty expansion".into()));
    }
    let mut counts = [0u64; 3];
    for &c in &w.0 {
        counts[(c - 1) as usize] += 1;
    }
    let n = Rational::from_integer(BigInt::from(w.len()));
    let frequency = counts.map(|c| Rational::from_integer(c.into()) / &n);
    let subtriangle = [0, 1, 2].map(|j| {
        let col = prod.column(j);
        let s: BigInt = col.iter().sum();
        col.map(|v| Rational::new(v, s.clone()))
    });
    Ok(FrequencyEstimate {
        depth,
        prefix_len: w.len(),
        counts,
        frequency,
        subtriangle,
        primitive,
    })
}

/// Checks `ℓ(S_i(t)) = F_i(t)`.
pub fn abelianization_matches_farey(branch: u8, t: TripTriple) -> bool {
    trip_substitution(branch, t, Variant::Canonical13).abelianize() == farey_matrix(branch, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TripTriple {
        s.parse().unwrap()
    }

    #[test]
    fn trip_substitutions() {
        assert_eq!(trip_substitution(0, t("(e,13,e)"), Variant::Canonical13), Substitution::new("13", "3", "2"));
        assert_eq!(trip_substitution(0, t("(e,23,23)"), Variant::Canonical13), Substitution::new("2", "13", "3"));
        assert_eq!(trip_substitution(1, t("(e,23,23)"), Variant::Canonical13), Substitution::new("1", "13", "2"));
        assert_eq!(trip_substitution(1, TripTriple::EEE, Variant::Variant31).image(3), &Word::from("31"));
    }

    #[test]
    fn apply_and_compose() {
        let g0 = gauss_substitution(TripTriple::EEE, 0, Variant::Canonical13);
        assert_eq!(g0.apply(&[]), Word::empty());
        assert_eq!(g0.apply(&[1, 3]), Word::from("213"));
        assert_eq!(expand(&[g0.clone(), g0.clone(), g0.clone()], 1), Word::from("13"));
        let w = g0.apply(&g0.apply(&g0.apply(&[1, 3]).0).0);
        assert_eq!(w, Word::from("133213"));
        assert_eq!(g0.compose(&Substitution::identity()), g0);
        let e23e = t("(e,23,e)");
        let two = gauss_substitution(e23e, 1, Variant::Canonical13)
            .compose(&gauss_substitution(e23e, 2, Variant::Canonical13));
        assert_eq!(two, Substitution::new("113", "22213", "2213"));
        assert_eq!(gauss_substitution(TripTriple::EEE, 1, Variant::Canonical13), Substitution::new("2", "13", "113"));
    }

    #[test]
    fn gauss_substitution_closed_forms() {
        assert_eq!(gauss_substitution(TripTriple::EEE, 2, Variant::Canonical13).image(2), &Word::from("113"));
        let g = gauss_substitution(t("(e,13,e)"), 0, Variant::Canonical13);
        assert_eq!((g.image(1), g.image(3)), (&Word::from("13"), &Word::from("2")));
        assert_eq!(gauss_substitution(t("(e,23,e)"), 0, Variant::Canonical13).image(3), &Word::from("3"));
        for k in 0..=5usize {
            let ones = "1".repeat(k);
            let cases = [
                ("(e,e,e)", ["2".to_string(), format!("{ones}3"), format!("{ones}13")]),
                ("(e,13,e)", [format!("{ones}13"), format!("{ones}3"), "2".to_string()]),
                ("(e,23,e)", ["2".to_string(), format!("{ones}13"), format!("{ones}3")]),
            ];
            for (m, imgs) in cases {
                let g = gauss_substitution(t(m), k as u64, Variant::Canonical13);
                assert_eq!(g, Substitution::new(&imgs[0], &imgs[1], &imgs[2]), "{m} k={k}");
            }
        }
    }

    #[test]
    fn abelianization() {
        assert_eq!(abelianize_word(&[]), [0, 0, 0].map(BigInt::from));
        assert_eq!(abelianize_word(&Word::from("133213").0), [2, 1, 3].map(BigInt::from));
        assert_eq!(abelianize_word(&Word::from("1322").0), [1, 2, 1].map(BigInt::from));
        let m = IntMatrix3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 1]]);
        assert_eq!(Substitution::new("2", "3", "13").abelianize(), m);
        assert_eq!(Substitution::canonical_from_matrix(&m).unwrap(), Substitution::new("2", "3", "13"));
        assert_eq!(Substitution::identity().abelianize(), IntMatrix3::identity());
        let zero = Substitution::canonical_from_matrix(&IntMatrix3::zero()).unwrap();
        assert!(zero.images.iter().all(Word::is_empty));
        assert!(Substitution::canonical_from_matrix(&IntMatrix3::from_i64([[-1, 0, 0], [0, 0, 0], [0, 0, 0]])).is_err());
        for tr in TripTriple::all() {
            assert!(abelianization_matches_farey(0, tr) && abelianization_matches_farey(1, tr), "{tr}");
        }
    }

    #[test]
    fn primitivity() {
        for k0 in 0..4 {
            for k1 in 0..4 {
                for k2 in 0..4 {
                    for k3 in 0..4 {
                        let seq = CodingSeq::Gauss(vec![k0, k1, k2, k3]);
                        let expected = if k1 == 0 { 4 } else { 3 };
                        assert_eq!(check_primitive(&seq, TripTriple::EEE, 4), Primitivity::PositiveAt(expected));
                    }
                }
            }
        }
        let zeros = CodingSeq::Farey(vec![0; 40]);
        assert_eq!(check_primitive(&zeros, t("(e,13,e)"), 40), Primitivity::NotWithinHorizon);
        assert_eq!(check_primitive(&CodingSeq::Gauss(vec![]), TripTriple::EEE, 5), Primitivity::NotWithinHorizon);
    }

    #[test]
    fn coding_serialization() {
        let g = CodingSeq::Gauss(vec![0, 2, 1]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"kind":"gauss","ks":[0,2,1]}"#);
        let f = CodingSeq::parse_farey("0110").unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"kind":"farey","bits":"0110"}"#);
        assert_eq!(serde_json::from_str::<CodingSeq>(&json).unwrap(), f);
        assert_eq!(CodingSeq::parse_gauss("0, 2,1").unwrap(), g);
        assert_eq!(CodingSeq::pair_up(&[1, 2, 3]), (CodingSeq::DoubleGauss(vec![(1, 2)]), true));
    }

    #[test]
    fn random_codings_share_prefixes() {
        let short = random_gauss(7, 20, 8);
        let long = random_gauss(7, 50, 8);
        assert_eq!(&long[..20], &short[..]);
        assert!(long.iter().all(|&k| k <= 8));
    }

    #[test]
    fn constant_coding_frequency_tracks_perron_vector() {
        // power iteration on l(G_0) gives the dominant direction
        let m = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 1.0]];
        let mut v = [1.0f64, 1.0, 1.0];
        for _ in 0..200 {
            let w: Vec<f64> = (0..3).map(|i| (0..3).map(|k| m[i][k] * v[k]).sum()).collect();
            let s: f64 = w.iter().sum();
            v = [w[0] / s, w[1] / s, w[2] / s];
        }
        let est = estimate_frequency(&CodingSeq::Gauss(vec![0; 60]), TripTriple::EEE, 20000).unwrap();
        for (e, &vi) in est.frequency.iter().zip(&v) {
            let f = e.to_f64().unwrap();
            assert!((f - vi).abs() < 1e-3, "{f} vs {vi}");
        }
    }

    #[test]
    fn single_letter_frequency() {
        let est = estimate_frequency(&CodingSeq::Farey(vec![1; 10]), TripTriple::EEE, 100).unwrap();
        assert_eq!(est.counts, [1, 0, 0]);
    }
}
