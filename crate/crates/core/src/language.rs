//! Complexity functions, extension diagrams, bispecial factors and the first-
//! and second-difference identities.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sample::LanguageSample;
use crate::word::Word;

/// p(0..=n_max); every length must lie inside the reliable window.
pub fn complexity_profile(l: &LanguageSample, n_max: usize) -> Result<Vec<usize>> {
    l.require_window(n_max)?;
    Ok((0..=n_max).map(|n| l.count(n)).collect())
}

/// Distinct factors of each length 0..=n_max of one finite word, from sorted suffixes.
pub fn word_profile(w: &[u8], n_max: usize) -> Vec<usize> {
    let mut suffixes: Vec<&[u8]> = (0..w.len()).map(|i| &w[i..]).collect();
    suffixes.sort_unstable();
    // a suffix of length len starts a new factor of length n iff lcp < n ≤ len
    let mut diff = vec![0i64; n_max + 2];
    let mut prev: &[u8] = &[];
    for s in suffixes {
        let lcp = s.iter().zip(prev).take_while(|(a, b)| a == b).count();
        let lo = lcp + 1;
        let hi = s.len().min(n_max);
        if lo <= hi {
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
        prev = s;
    }
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = 0;
    for (n, d) in diff.iter().take(n_max + 1).enumerate() {
        acc += d;
        out.push(if n == 0 { 1 } else { acc as usize });
    }
    out
}

/// CSV with columns n, p(n), p(n) − p(n−1).
pub fn profile_csv(p: &[usize]) -> String {
    let mut out = String::from("n,p,dp\n");
    for (n, &v) in p.iter().enumerate() {
        let dp = if n == 0 { String::new() } else { (v as i64 - p[n - 1] as i64).to_string() };
        out.push_str(&format!("{n},{v},{dp}\n"));
    }
    out
}

/// Which pairs (a, b) have `a w b` in the language; rows are left letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtensionDiagram {
    pub word: Word,
    pub cells: [[bool; 3]; 3],
}

impl ExtensionDiagram {
    pub fn from_pairs(word: Word, pairs: &[(u8, u8)]) -> ExtensionDiagram {
        let mut cells = [[false; 3]; 3];
        for &(a, b) in pairs {
            cells[(a - 1) as usize][(b - 1) as usize] = true;
        }
        ExtensionDiagram { word, cells }
    }

    pub fn pairs(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for a in 1..=3u8 {
            for b in 1..=3u8 {
                if self.cells[(a - 1) as usize][(b - 1) as usize] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn left(&self) -> Vec<u8> {
        (1..=3u8).filter(|&a| self.cells[(a - 1) as usize].iter().any(|&x| x)).collect()
    }

    pub fn right(&self) -> Vec<u8> {
        (1..=3u8).filter(|&b| self.cells.iter().any(|row| row[(b - 1) as usize])).collect()
    }

    pub fn size(&self) -> usize {
        self.cells.iter().flatten().filter(|&&x| x).count()
    }

    pub fn multiplicity(&self) -> i64 {
        bilateral_multiplicity(self)
    }

    pub fn is_bispecial(&self) -> bool {
        self.left().len() >= 2 && self.right().len() >= 2
    }

    /// Image of the diagram under letter maps; `None` entries are dropped.
    pub fn map(&self, word: Word, left: impl Fn(u8) -> Option<u8>, right: impl Fn(u8) -> Option<u8>) -> ExtensionDiagram {
        let pairs: Vec<(u8, u8)> = self
            .pairs()
            .into_iter()
            .filter_map(|(a, b)| Some((left(a)?, right(b)?)))
            .collect();
        ExtensionDiagram::from_pairs(word, &pairs)
    }
}

pub fn bilateral_multiplicity(d: &ExtensionDiagram) -> i64 {
    d.size() as i64 - d.left().len() as i64 - d.right().len() as i64 + 1
}

impl fmt::Display for ExtensionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "E({})", self.word)?;
        writeln!(f, "    | 1 2 3")?;
        writeln!(f, "  --+------")?;
        for a in 0..3 {
            let row: Vec<&str> = self.cells[a].iter().map(|&x| if x { "x" } else { "." }).collect();
            writeln!(f, "  {} | {}", a + 1, row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtensionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({}) = {:?}", self.word, self.pairs())
    }
}

impl Serialize for ExtensionDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExtensionDiagram", 5)?;
        st.serialize_field("word", &self.word)?;
        st.serialize_field("cells", &self.pairs())?;
        st.serialize_field("left", &self.left())?;
        st.serialize_field("right", &self.right())?;
        st.serialize_field("m", &self.multiplicity())?;
        st.end()
    }
}

fn with_ends(a: Option<u8>, w: &[u8], b: Option<u8>) -> Vec<u8> {
    let mut v = Vec::with_capacity(w.len() + 2);
    v.extend(a);
    v.extend_from_slice(w);
    v.extend(b);
    v
}

/// Diagram read off a sample without window checks.
pub(crate) fn raw_diagram(l: &LanguageSample, w: &[u8]) -> ExtensionDiagram {
    let mut cells = [[false; 3]; 3];
    for a in 1..=3u8 {
        if !l.contains(&with_ends(Some(a), w, None)) {
            continue;
        }
        for b in 1..=3u8 {
            cells[(a - 1) as usize][(b - 1) as usize] = l.contains(&with_ends(Some(a), w, Some(b)));
        }
    }
    ExtensionDiagram {
        word: Word::from_slice(w),
        cells,
    }
}

pub fn extension_diagram(l: &LanguageSample, w: &Word) -> Result<ExtensionDiagram> {
    l.require_window(w.len() + 2)?;
    if !l.contains(w.as_slice()) {
        return Err(Error::NotAFactor(w.to_string()));
    }
    Ok(raw_diagram(l, w.as_slice()))
}

fn side_counts(l: &LanguageSample, w: &[u8]) -> (usize, usize) {
    let left = (1..=3u8).filter(|&a| l.contains(&with_ends(Some(a), w, None))).count();
    let right = (1..=3u8).filter(|&b| l.contains(&with_ends(None, w, Some(b)))).count();
    (left, right)
}

#[derive(Clone, Debug, Serialize)]
pub struct Bispecial {
    pub word: Word,
    pub diagram: ExtensionDiagram,
    pub m: i64,
}

pub fn enumerate_bispecial(l: &LanguageSample, len_max: usize) -> Result<Vec<Bispecial>> {
    l.require_window(len_max + 2)?;
    let mut out = Vec::new();
    for n in 0..=len_max {
        for w in l.factors(n) {
            let (left, right) = side_counts(l, w.as_slice());
            if left >= 2 && right >= 2 {
                let diagram = raw_diagram(l, w.as_slice());
                out.push(Bispecial {
                    m: diagram.multiplicity(),
                    word: w,
                    diagram,
                });
            }
        }
    }
    Ok(out)
}

/// Right special factors of length `n` (at least two right extensions).
pub fn right_special(l: &LanguageSample, n: usize) -> Result<Vec<Word>> {
    l.require_window(n + 1)?;
    Ok(l
        .factors(n)
        .into_iter()
        .filter(|w| side_counts(l, w.as_slice()).1 >= 2)
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferenceRow {
    pub n: usize,
    pub p: usize,
    pub first_difference: i64,
    pub left_sum: i64,
    pub right_sum: i64,
    pub second_difference: i64,
    pub m_sum: i64,
    pub extendable: bool,
}

impl DifferenceRow {
    pub fn holds(&self) -> bool {
        self.first_difference == self.left_sum
            && self.first_difference == self.right_sum
            && self.second_difference == self.m_sum
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferenceReport {
    pub rows: Vec<DifferenceRow>,
    pub passed: bool,
    /// Offending lengths with their factor lists.
    pub violations: Vec<(usize, Vec<Word>)>,
}

/// Checks p(n+1) − p(n) = Σ(|E^L|−1) = Σ(|E^R|−1) and
/// p(n+2) − 2p(n+1) + p(n) = Σ m(w) for every n ≤ n_max.
pub fn verify_difference_identities(l: &LanguageSample, n_max: usize) -> Result<DifferenceReport> {
    l.require_window(n_max + 2)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut violations = Vec::new();
    for n in 0..=n_max {
        let (mut left_sum, mut right_sum, mut m_sum) = (0i64, 0i64, 0i64);
        let mut extendable = true;
        let words = l.factors(n);
        for w in &words {
            let (left, right) = side_counts(l, w.as_slice());
            extendable &= left > 0 && right > 0;
            left_sum += left as i64 - 1;
            right_sum += right as i64 - 1;
            if left >= 2 && right >= 2 {
                m_sum += raw_diagram(l, w.as_slice()).multiplicity();
            }
        }
        let p = |k: usize| l.count(k) as i64;
        let row = DifferenceRow {
            n,
            p: l.count(n),
            first_difference: p(n + 1) - p(n),
            left_sum,
            right_sum,
            second_difference: p(n + 2) - 2 * p(n + 1) + p(n),
            m_sum,
            extendable,
        };
        if !row.holds() || !extendable {
            violations.push((n, words));
        }
        rows.push(row);
    }
    Ok(DifferenceReport {
        passed: violations.is_empty(),
        rows,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TripTriple;
    use crate::sample::expand_language_sample;
    use crate::word::{random_gauss, CodingSeq, Variant};

    #[test]
    fn word_profile_counts_distinct_factors() {
        let direct = |w: &[u8], n: usize| w.windows(n).collect::<std::collections::HashSet<_>>().len();
        for w in ["", "1", "1213", "111", "12312312", "2331312321133"] {
            let w = Word::from(w);
            let p = word_profile(w.as_slice(), 16);
            assert_eq!(p[0], 1);
            for (n, &pn) in p.iter().enumerate().skip(1) {
                assert_eq!(pn, direct(w.as_slice(), n), "{w} n = {n}");
            }
        }
    }

    fn eee(ks: Vec<u64>, max_len: usize) -> LanguageSample {
        expand_language_sample(&CodingSeq::Gauss(ks), TripTriple::EEE, Variant::Canonical13, max_len).unwrap()
    }

    fn with_tail(head: &[u64], seed: u64) -> Vec<u64> {
        let mut ks = head.to_vec();
        ks.extend(random_gauss(seed, 40, 8));
        ks
    }

    #[test]
    fn periodic_profile() {
        let l = LanguageSample::periodic(&Word::from("123"), 12);
        let p = complexity_profile(&l, 10).unwrap();
        assert_eq!(p[0], 1);
        assert_eq!(p[3], 3);
        let bis = enumerate_bispecial(&l, 8).unwrap();
        assert_eq!(bis.len(), 1);
        assert!(bis[0].word.is_empty());
        let d = extension_diagram(&l, &Word::from("23")).unwrap();
        assert_eq!(d.size(), 1);
        assert_eq!(d.multiplicity(), 0);
        assert!(complexity_profile(&l, 13).is_err());
    }

    #[test]
    fn empty_word_diagram() {
        let l = eee(with_tail(&[2, 1, 3], 5), 20);
        let d = extension_diagram(&l, &Word::empty()).unwrap();
        assert_eq!(d.multiplicity(), 1);
        let l = eee(with_tail(&[0, 0], 5), 20);
        assert_eq!(extension_diagram(&l, &Word::empty()).unwrap().multiplicity(), 0);
    }

    #[test]
    fn diagram_of_ones_block() {
        let l = eee(with_tail(&[2, 1], 9), 20);
        let d = extension_diagram(&l, &Word::from("11")).unwrap();
        assert_eq!(d.pairs(), vec![(1, 3), (2, 1), (3, 3)]);
        assert_eq!(d.multiplicity(), -1);
        assert!(extension_diagram(&l, &Word::from("12")).is_err());
    }

    #[test]
    fn identities_on_random_eee() {
        for seed in 0..5 {
            let l = eee(random_gauss(seed, 40, 8), 60);
            let report = verify_difference_identities(&l, l.reliable_window() - 2).unwrap();
            assert!(report.passed, "seed {seed}: {:?}", report.violations);
            let p = complexity_profile(&l, l.reliable_window()).unwrap();
            assert!(p.windows(2).skip(1).all(|w| (2..=3).contains(&(w[1] - w[0]))));
        }
    }

    #[test]
    fn single_letter_language() {
        let l = LanguageSample::periodic(&Word::from("2"), 10);
        let r = verify_difference_identities(&l, 8).unwrap();
        assert!(r.passed);
        assert!(r.rows.iter().all(|row| row.first_difference == 0 && row.second_difference == 0));
    }

    #[test]
    fn csv_profile() {
        assert_eq!(profile_csv(&[1, 3, 5]), "n,p,dp\n0,1,\n1,3,2\n2,5,2\n");
    }
}
