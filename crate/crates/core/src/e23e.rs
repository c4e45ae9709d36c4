//! The (e,23,e) languages, de-substituted two Gauss steps at a time.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Perm3, TripTriple};
use crate::error::{Error, Result};
use crate::language::{complexity_profile, enumerate_bispecial, raw_diagram, ExtensionDiagram};
use crate::sample::{expand_language_sample, LanguageSample};
use crate::word::{gauss_substitution, CodingSeq, Substitution, Variant, Word};

pub const E23E: TripTriple = TripTriple::new(Perm3::E, Perm3::P23, Perm3::E);

/// `G_j ∘ G_k`: 1 ↦ 1^{j+1}3, 2 ↦ 2^{k+1}1^j3, 3 ↦ 2^k1^j3.
pub fn sigma(j: u64, k: u64) -> Substitution {
    gauss_substitution(E23E, j, Variant::Canonical13).compose(&gauss_substitution(E23E, k, Variant::Canonical13))
}

fn run(c: u8, n: u64) -> Vec<u8> {
    vec![c; n as usize]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleGaussAntecedent {
    pub a: Word,
    pub v: Word,
    pub b: Word,
    pub j0: u64,
    pub k0: u64,
}

impl DoubleGaussAntecedent {
    pub fn reconstruct(&self) -> Word {
        self.a.concat(&sigma(self.j0, self.k0).apply(self.v.as_slice())).concat(&self.b)
    }
}

fn is_prefix_suffix_form(a: &[u8], j0: u64, k0: u64) -> bool {
    let ones = a.iter().take_while(|&&c| c == 1).count() as u64;
    if ones as usize == a.len() - 1 {
        return ones <= j0 + 1;
    }
    let twos = a.iter().take_while(|&&c| c == 2).count();
    let rest = &a[twos..];
    twos >= 1 && twos as u64 <= k0 + 1 && rest.len() as u64 == j0 + 1 && rest[..rest.len() - 1].iter().all(|&c| c == 1)
}

fn is_b_form(b: &[u8], j0: u64, k0: u64) -> bool {
    let twos = b.iter().take_while(|&&c| c == 2).count() as u64;
    let ones = b[twos as usize..].iter().take_while(|&&c| c == 1).count() as u64;
    if twos + ones != b.len() as u64 {
        return false;
    }
    match (twos, ones) {
        (0, p) => p <= j0 + 1,
        (t, 0) => t <= k0 + 1,
        (t, p) => (t == k0 || t == k0 + 1) && p <= j0,
    }
}

/// Splits `w` after every 3: `a` runs through the first 3, `b` follows the last.
pub fn double_gauss_antecedent(w: &Word, j0: u64, k0: u64) -> Result<DoubleGaussAntecedent> {
    let s = w.as_slice();
    let first = s
        .iter()
        .position(|&c| c == 3)
        .ok_or_else(|| Error::NoAntecedent(format!("{w} has no 3")))?;
    let last = s.iter().rposition(|&c| c == 3).unwrap();
    let bad = |why: &str| Error::NotAFactor(format!("{w} for (j0,k0) = ({j0},{k0}): {why}"));
    let a = &s[..=first];
    let b = &s[last + 1..];
    if !is_prefix_suffix_form(a, j0, k0) {
        return Err(bad("prefix is not a suffix of an image"));
    }
    if !is_b_form(b, j0, k0) {
        return Err(bad("suffix is not a proper prefix of an image"));
    }
    let images: Vec<Vec<u8>> = {
        let sg = sigma(j0, k0);
        (1..=3).map(|c| sg.image(c).0.clone()).collect()
    };
    let mut v = Vec::new();
    let mut start = first + 1;
    for i in first + 1..=last {
        if s[i] == 3 {
            let block = &s[start..=i];
            let c = images
                .iter()
                .position(|img| img.as_slice() == block)
                .ok_or_else(|| bad("middle is not a concatenation of images"))?;
            v.push(c as u8 + 1);
            start = i + 1;
        }
    }
    Ok(DoubleGaussAntecedent {
        a: Word::from_slice(a),
        v: Word(v),
        b: Word::from_slice(b),
        j0,
        k0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Prefix {
    OnesThree,
    TwosOnesThree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Suffix {
    Empty,
    Ones,
    Twos,
}

fn classify_prefix(a: &Word, j0: u64, k0: u64) -> Result<Prefix> {
    let ot = [run(1, j0), vec![3]].concat();
    let tot = [run(2, k0), run(1, j0), vec![3]].concat();
    if a.as_slice() == ot {
        Ok(Prefix::OnesThree)
    } else if k0 >= 1 && a.as_slice() == tot {
        Ok(Prefix::TwosOnesThree)
    } else {
        Err(Error::Disallowed(format!("a = {a} with (j0,k0) = ({j0},{k0})")))
    }
}

fn classify_suffix(b: &Word, j0: u64, k0: u64) -> Result<Suffix> {
    if b.is_empty() {
        Ok(Suffix::Empty)
    } else if j0 >= 1 && b.as_slice() == run(1, j0) {
        Ok(Suffix::Ones)
    } else if k0 >= 1 && b.as_slice() == run(2, k0) {
        Ok(Suffix::Twos)
    } else {
        Err(Error::Disallowed(format!("b = {b} with (j0,k0) = ({j0},{k0})")))
    }
}

fn alpha_left(p: Prefix, k0: u64, c: u8) -> Option<u8> {
    match (p, k0 >= 1, c) {
        (Prefix::TwosOnesThree, _, 1) => None,
        (Prefix::OnesThree, true, 3) => Some(2),
        (_, _, c) => Some(c),
    }
}

fn alpha_right(s: Suffix, j0: u64, k0: u64, d: u8) -> Option<u8> {
    let row = match (s, j0 >= 1, k0 >= 1) {
        (Suffix::Empty, false, false) => [Some(1), Some(2), Some(3)],
        (Suffix::Empty, false, true) => [Some(1), Some(2), Some(2)],
        (Suffix::Twos, false, true) => [None, Some(2), Some(3)],
        (Suffix::Empty, true, false) => [Some(1), Some(2), Some(1)],
        (Suffix::Ones, true, false) => [Some(1), None, Some(3)],
        (Suffix::Empty, true, true) => [Some(1), Some(2), Some(2)],
        (Suffix::Twos, true, true) => [None, Some(2), Some(1)],
        // b = 1^{j0} with k0 ≥ 1: only σ(1) starts with 1^{j0}.
        (Suffix::Ones, true, true) => [Some(1), None, None],
        _ => unreachable!("suffix classes are checked against (j0,k0)"),
    };
    row[(d - 1) as usize]
}

/// Predicted `E(a σ0(v) b)` from `E(v)`.
pub fn e23e_extension_image(ev: &ExtensionDiagram, a: &Word, b: &Word, j0: u64, k0: u64) -> Result<ExtensionDiagram> {
    let p = classify_prefix(a, j0, k0)?;
    let s = classify_suffix(b, j0, k0)?;
    let w = a.concat(&sigma(j0, k0).apply(ev.word.as_slice())).concat(b);
    Ok(ev.map(w, |c| alpha_left(p, k0, c), |d| alpha_right(s, j0, k0, d)))
}

/// The allowed `(a, b)` pairs for bispecial extended images.
pub fn allowed_affixes(j0: u64, k0: u64) -> Vec<(Word, Word)> {
    let mut prefixes = vec![Word([run(1, j0), vec![3]].concat())];
    if k0 >= 1 {
        prefixes.push(Word([run(2, k0), run(1, j0), vec![3]].concat()));
    }
    let mut suffixes = vec![Word::empty()];
    if j0 >= 1 {
        suffixes.push(Word(run(1, j0)));
    }
    if k0 >= 1 {
        suffixes.push(Word(run(2, k0)));
    }
    prefixes
        .iter()
        .flat_map(|a| suffixes.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MultiImageCounts {
    /// |E^L(v)| = |E^R(v)| = 3 and k0 ≥ 1.
    pub full_k_positive: usize,
    /// |E^L(v)| = |E^R(v)| = 3, j0 ≥ 1, k0 = 0.
    pub full_j_only: usize,
    /// |E^L(v)| = 3, |E^R(v)| = 2, k0 ≥ 1.
    pub left_full_k_positive: usize,
    /// Several bispecial images outside the three situations above.
    pub other: usize,
    /// Largest number of bispecial images of one word.
    pub max_images: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct E23eReport {
    pub coding: Vec<(u64, u64)>,
    pub n_max: usize,
    pub complexity: Vec<usize>,
    pub bound_holds: bool,
    pub increment_holds: bool,
    pub witness: Option<String>,
    pub multi_image: MultiImageCounts,
    /// Number of predicted extended-image diagrams compared with the sample.
    pub oracle_checked: usize,
    pub oracle_mismatch: Option<String>,
    pub passed: bool,
}

/// Checks p(n) ≤ 3n and p(n) − p(n−1) ≤ 3 for 2 ≤ n ≤ `n_max`, and compares
/// extended-image predictions for bispecial factors of `L^{(1)}` with the sample.
pub fn e23e_bound_check(pairs: &[(u64, u64)], n_max: usize) -> Result<E23eReport> {
    let (j0, k0) = *pairs.first().ok_or_else(|| Error::CodingExhausted("empty coding".into()))?;
    let seq = CodingSeq::DoubleGauss(pairs.to_vec());
    let l = expand_language_sample(&seq, E23E, Variant::Canonical13, n_max + 2)?;
    let p = complexity_profile(&l, n_max)?;
    let bound = (2..=n_max).find(|&n| p[n] > 3 * n);
    let step = (2..=n_max).find(|&n| p[n] - p[n - 1] > 3);
    let witness = bound
        .map(|n| format!("p({n}) = {} > {}", p[n], 3 * n))
        .or_else(|| step.map(|n| format!("p({n}) − p({}) = {}", n - 1, p[n] - p[n - 1])));

    let mut multi = MultiImageCounts::default();
    let mut checked = 0;
    let mut mismatch = None;
    if pairs.len() >= 2 {
        let l1 = expand_language_sample(&seq.shift(1), E23E, Variant::Canonical13, n_max + 2)?;
        let limit = l.reliable_window().saturating_sub(2);
        let v_max = (l1.reliable_window().saturating_sub(2)).min(limit / 2);
        for bv in enumerate_bispecial(&l1, v_max)? {
            let images = bispecial_images(&bv.diagram, j0, k0)?;
            for img in &images {
                if img.word.len() < limit {
                    checked += 1;
                    let seen = raw_diagram(&l, img.word.as_slice());
                    if seen.cells != img.cells && mismatch.is_none() {
                        mismatch = Some(format!("predicted {img:?}, sampled {seen:?}"));
                    }
                }
            }
            tally(&mut multi, &bv.diagram, images.len(), j0, k0);
        }
    }
    let passed = witness.is_none() && mismatch.is_none();
    Ok(E23eReport {
        coding: pairs.to_vec(),
        n_max,
        complexity: p,
        bound_holds: bound.is_none(),
        increment_holds: step.is_none(),
        witness,
        multi_image: multi,
        oracle_checked: checked,
        oracle_mismatch: mismatch,
        passed,
    })
}

fn bispecial_images(ev: &ExtensionDiagram, j0: u64, k0: u64) -> Result<Vec<ExtensionDiagram>> {
    let mut out = Vec::new();
    for (a, b) in allowed_affixes(j0, k0) {
        let d = e23e_extension_image(ev, &a, &b, j0, k0)?;
        if d.is_bispecial() {
            out.push(d);
        }
    }
    Ok(out)
}

fn tally(m: &mut MultiImageCounts, ev: &ExtensionDiagram, n: usize, j0: u64, k0: u64) {
    m.max_images = m.max_images.max(n);
    if n < 2 {
        return;
    }
    match (ev.left().len(), ev.right().len()) {
        (3, 3) if k0 >= 1 => m.full_k_positive += 1,
        (3, 3) if j0 >= 1 => m.full_j_only += 1,
        (3, 2) if k0 >= 1 => m.left_full_k_positive += 1,
        _ => m.other += 1,
    }
}

/// Seeded random pair codings, each entry geometric(1/2) capped at `cap`.
pub fn random_pairs(seed: u64, len: usize, cap: u64) -> Vec<(u64, u64)> {
    let ks = crate::word::random_gauss(seed, 2 * len, cap);
    ks.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// Seeded bound check, lengthening the coding until the window reaches `n_max`.
pub fn e23e_bound_check_seeded(seed: u64, n_max: usize) -> Result<E23eReport> {
    let mut len = 12;
    loop {
        match e23e_bound_check(&random_pairs(seed, len, crate::word::DEFAULT_K_CAP), n_max) {
            Err(Error::WindowExceeded { .. }) if len < 2048 => len *= 2,
            r => return r,
        }
    }
}

/// Sampled `(v, w)` antecedent pairs keyed by word, for invariant checks.
pub fn antecedent_pairs(l: &LanguageSample, l1: &LanguageSample, j0: u64, k0: u64, len: usize) -> BTreeMap<Word, DoubleGaussAntecedent> {
    let mut out = BTreeMap::new();
    for n in 1..=len {
        for w in l.factors(n) {
            if !w.as_slice().contains(&3) {
                continue;
            }
            if let Ok(ante) = double_gauss_antecedent(&w, j0, k0) {
                if l1.contains(ante.v.as_slice()) {
                    out.insert(w, ante);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(pairs: &[(u64, u64)], n: usize) -> LanguageSample {
        expand_language_sample(&CodingSeq::DoubleGauss(pairs.to_vec()), E23E, Variant::Canonical13, n).unwrap()
    }

    #[test]
    fn double_images() {
        assert_eq!(sigma(1, 2), Substitution::new("113", "22213", "2213"));
        assert_eq!(sigma(0, 0), Substitution::new("13", "23", "3"));
    }

    #[test]
    fn worked_antecedent() {
        let w = Word::from("311322");
        let ante = double_gauss_antecedent(&w, 1, 2).unwrap();
        assert_eq!((ante.a, ante.v, ante.b), (Word::from("3"), Word::from("1"), Word::from("22")));
        for c in 1..=3 {
            let img = sigma(2, 1).image(c).clone();
            let ante = double_gauss_antecedent(&img, 2, 1).unwrap();
            assert_eq!(ante.a, img);
            assert!(ante.v.is_empty() && ante.b.is_empty());
            assert_eq!(ante.reconstruct(), img);
        }
        assert!(double_gauss_antecedent(&Word::from("1122"), 1, 2).is_err());
        assert!(double_gauss_antecedent(&Word::from("3123"), 1, 2).is_err());
        assert!(double_gauss_antecedent(&Word::from("11113"), 1, 2).is_err());
    }

    #[test]
    fn alpha_table_columns() {
        let l = |p, k0| [1, 2, 3].map(|c| alpha_left(p, k0, c));
        assert_eq!(l(Prefix::OnesThree, 0), [Some(1), Some(2), Some(3)]);
        assert_eq!(l(Prefix::OnesThree, 2), [Some(1), Some(2), Some(2)]);
        assert_eq!(l(Prefix::TwosOnesThree, 2), [None, Some(2), Some(3)]);
        let r = |s, j0, k0| [1, 2, 3].map(|d| alpha_right(s, j0, k0, d));
        assert_eq!(r(Suffix::Ones, 1, 0), [Some(1), None, Some(3)]);
        assert_eq!(r(Suffix::Twos, 1, 1), [None, Some(2), Some(1)]);
        assert_eq!(r(Suffix::Empty, 0, 1), [Some(1), Some(2), Some(2)]);
    }

    /// Letter before `a` or after `b`, read directly off the images.
    fn derived_left(a: &[u8], j0: u64, k0: u64, c: u8) -> Option<u8> {
        let img = sigma(j0, k0).image(c).0.clone();
        if img == a {
            Some(3)
        } else if img.ends_with(a) {
            Some(img[img.len() - a.len() - 1])
        } else {
            None
        }
    }

    fn derived_right(b: &[u8], j0: u64, k0: u64, d: u8) -> Option<u8> {
        let img = sigma(j0, k0).image(d).0.clone();
        img.starts_with(b).then(|| img[b.len()])
    }

    #[test]
    fn tables_agree_with_images() {
        for j0 in 0..3 {
            for k0 in 0..3 {
                for (a, b) in allowed_affixes(j0, k0) {
                    let p = classify_prefix(&a, j0, k0).unwrap();
                    let s = classify_suffix(&b, j0, k0).unwrap();
                    for c in 1..=3 {
                        assert_eq!(alpha_left(p, k0, c), derived_left(a.as_slice(), j0, k0, c), "{a} ({j0},{k0})");
                        assert_eq!(alpha_right(s, j0, k0, c), derived_right(b.as_slice(), j0, k0, c), "{b} ({j0},{k0})");
                    }
                }
            }
        }
    }

    #[test]
    fn disallowed_affixes() {
        let ev = ExtensionDiagram::from_pairs(Word::from("1"), &[(1, 1)]);
        assert!(e23e_extension_image(&ev, &Word::from("3"), &Word::empty(), 1, 0).is_err());
        assert!(e23e_extension_image(&ev, &Word::from("13"), &Word::from("2"), 1, 0).is_err());
        assert!(e23e_extension_image(&ev, &Word::from("213"), &Word::empty(), 1, 0).is_err());
        assert!(e23e_extension_image(&ev, &Word::from("2213"), &Word::from("22"), 1, 2).is_ok());
    }

    #[test]
    fn antecedent_invariants() {
        for seed in 0..6 {
            let pairs = random_pairs(seed, 14, 3);
            let (j0, k0) = pairs[0];
            let l = sample(&pairs, 30);
            let l1 = sample(&pairs[1..], 30);
            let found = antecedent_pairs(&l, &l1, j0, k0, 16);
            for n in 1..=16 {
                for w in l.factors(n) {
                    if w.as_slice().contains(&3) {
                        let ante = found.get(&w).unwrap_or_else(|| panic!("seed {seed}: no antecedent for {w}"));
                        assert_eq!(ante.reconstruct(), w);
                        let again = double_gauss_antecedent(&ante.reconstruct(), j0, k0).unwrap();
                        assert_eq!(&again, ante);
                    }
                }
            }
            for (w, ante) in &found {
                if w.len() + 2 >= 28 || ante.v.len() + 2 >= 28 {
                    continue;
                }
                let ew = raw_diagram(&l, w.as_slice());
                let ev = raw_diagram(&l1, ante.v.as_slice());
                assert!(ew.left().len() <= ev.left().len().max(1), "seed {seed}: {w}");
                assert!(ew.right().len() <= ev.right().len().max(1), "seed {seed}: {w}");
            }
        }
    }

    #[test]
    fn extension_images_match_samples() {
        for seed in 0..8 {
            let pairs = random_pairs(seed, 16, 3);
            let (j0, k0) = pairs[0];
            let l = sample(&pairs, 60);
            let l1 = sample(&pairs[1..], 60);
            for b in enumerate_bispecial(&l, 40).unwrap() {
                if !b.word.as_slice().contains(&3) {
                    continue;
                }
                let ante = double_gauss_antecedent(&b.word, j0, k0).unwrap();
                let ev = raw_diagram(&l1, ante.v.as_slice());
                let predicted = e23e_extension_image(&ev, &ante.a, &ante.b, j0, k0).unwrap();
                assert_eq!(predicted.cells, b.diagram.cells, "seed {seed}: {}", b.word);
            }
        }
    }

    #[test]
    fn bound_on_small_and_extreme_codings() {
        let r = e23e_bound_check(&[(0, 0); 200], 60).unwrap();
        assert!(r.passed, "{r:?}");
        let mix: Vec<(u64, u64)> = (0..20).map(|i| if i % 3 == 0 { (7, 0) } else { (0, 6) }).collect();
        let r = e23e_bound_check(&mix, 120).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn bound_on_random_codings() {
        for seed in 0..10 {
            let r = e23e_bound_check_seeded(seed, 120).unwrap();
            assert!(r.passed, "seed {seed}: {:?} {:?}", r.witness, r.oracle_mismatch);
            assert!(r.oracle_checked > 0);
        }
    }
}
