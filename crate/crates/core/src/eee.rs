//! The (e,e,e) Gauss languages: antecedents, extension images, ages and the
//! chain of non-neutral bispecial factors that certifies 2n+1 ≤ p(n) ≤ 3n.

use serde::Serialize;

use crate::algebra::TripTriple;
use crate::error::{Error, Result};
use crate::language::{complexity_profile, enumerate_bispecial, raw_diagram, Bispecial, ExtensionDiagram};
use crate::sample::{expand_language_sample, LanguageSample};
use crate::word::{gauss_substitution, CodingSeq, Substitution, Variant, Word};

/// `G_k = S_1^k ∘ S_0` for (e,e,e): 1 ↦ 2, 2 ↦ 1^k 3, 3 ↦ 1^{k+1} 3.
pub fn g(k: u64) -> Substitution {
    gauss_substitution(TripTriple::EEE, k, Variant::Canonical13)
}

fn ones(n: u64) -> Word {
    Word::power(1, n as usize)
}

fn ones_three(n: u64) -> Word {
    let mut w = ones(n);
    w.0.push(3);
    w
}

/// Two-letter factors of a language whose first two exponents are k0, k1.
pub fn allowed_two_words(k0: u64, k1: u64) -> Vec<Word> {
    two_word_pairs(k0, k1)
        .into_iter()
        .map(|(a, b)| Word(vec![a, b]))
        .collect()
}

fn two_word_pairs(k0: u64, k1: u64) -> Vec<(u8, u8)> {
    match (k0 > 0, k1 > 0) {
        (false, false) => vec![(1, 3), (2, 1), (3, 1), (3, 2), (3, 3)],
        (false, true) => vec![(1, 3), (2, 1), (2, 2), (3, 2), (3, 3)],
        (true, false) => vec![(1, 1), (1, 3), (2, 1), (3, 1), (3, 2)],
        (true, true) => vec![(1, 1), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)],
    }
}

/// Decomposition `w = a · G_{k0}(v) · b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Antecedent {
    pub a: Word,
    pub v: Word,
    pub b: Word,
    pub k0: u64,
}

impl Antecedent {
    pub fn reconstruct(&self) -> Word {
        self.a.concat(&g(self.k0).apply(self.v.as_slice())).concat(&self.b)
    }

    /// Whether `w` lies in L, read off from extensions of `v` in `l1`.
    pub fn member_of(&self, l1: &LanguageSample) -> bool {
        let with = |left: Option<u8>, right: Option<u8>| {
            let mut x = Vec::with_capacity(self.v.len() + 2);
            x.extend(left);
            x.extend_from_slice(self.v.as_slice());
            x.extend(right);
            l1.contains(&x)
        };
        let lefts: &[Option<u8>] = if self.a.is_empty() { &[None] } else { &[Some(2), Some(3)] };
        let b = self.b.len() as u64;
        let rights: &[Option<u8>] = if b == 0 {
            &[None]
        } else if b <= self.k0 {
            &[Some(2), Some(3)]
        } else {
            &[Some(3)]
        };
        lefts.iter().any(|&x| rights.iter().any(|&y| with(x, y)))
    }
}

/// Splits `w` after every 2 or 3 and de-substitutes the blocks.
pub fn eee_antecedent(w: &Word, k0: u64) -> Result<Antecedent> {
    let bad = || Error::NoAntecedent(format!("{w} (k0 = {k0})"));
    let s = w.as_slice();
    let end = match s.iter().rposition(|&c| c != 1) {
        Some(i) => i + 1,
        None => return Err(bad()),
    };
    let b = &s[end..];
    if b.len() as u64 > k0 + 1 {
        return Err(bad());
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 0..end {
        if s[i] != 1 {
            blocks.push(&s[start..=i]);
            start = i + 1;
        }
    }
    let desub = |block: &[u8]| -> Option<u8> {
        let j = (block.len() - 1) as u64;
        match block[block.len() - 1] {
            2 if j == 0 => Some(1),
            3 if j == k0 => Some(2),
            3 if j == k0 + 1 => Some(3),
            _ => None,
        }
    };
    let first = blocks[0];
    let j = (first.len() - 1) as u64;
    let (a, rest) = if first[first.len() - 1] == 3 && j <= k0 {
        (Word::from_slice(first), &blocks[1..])
    } else {
        (Word::empty(), &blocks[..])
    };
    let v = rest.iter().map(|blk| desub(blk)).collect::<Option<Vec<u8>>>().ok_or_else(bad)?;
    Ok(Antecedent {
        a,
        v: Word(v),
        b: Word::from_slice(b),
        k0,
    })
}

/// `α^L_a`: left extension of `v` to left extension of `w`.
pub fn alpha_left(a_full: bool, c: u8) -> Option<u8> {
    match (a_full, c) {
        (false, 1) => Some(2),
        (false, _) => Some(3),
        (true, 1) => None,
        (true, 2) => Some(3),
        (true, _) => Some(1),
    }
}

/// `α^R_{b,k0}`: right extension of `v` to right extension of `w`.
pub fn alpha_right(k0: u64, b_full: bool, d: u8) -> Option<u8> {
    match (b_full && k0 > 0, d) {
        (false, 1) => Some(2),
        (false, 2) => Some(if k0 == 0 { 3 } else { 1 }),
        (false, _) => Some(1),
        (true, 1) => None,
        (true, 2) => Some(3),
        (true, _) => Some(1),
    }
}

fn classify_a(a: &Word, k0: u64) -> Result<bool> {
    if a.is_empty() {
        Ok(false)
    } else if *a == ones_three(k0) {
        Ok(true)
    } else {
        Err(Error::Disallowed(format!("a = {a} with k0 = {k0}")))
    }
}

fn classify_b(b: &Word, k0: u64) -> Result<bool> {
    if b.is_empty() {
        Ok(false)
    } else if *b == ones(k0) {
        Ok(true)
    } else {
        Err(Error::Disallowed(format!("b = {b} with k0 = {k0}")))
    }
}

/// Predicted `E(a G_{k0}(v) b)` from `E(v)`.
pub fn eee_extension_image(ev: &ExtensionDiagram, a: &Word, b: &Word, k0: u64) -> Result<ExtensionDiagram> {
    let a_full = classify_a(a, k0)?;
    let b_full = classify_b(b, k0)?;
    let w = a.concat(&g(k0).apply(ev.word.as_slice())).concat(b);
    if w.is_power_of(1) {
        return Err(Error::Disallowed(format!("{w} has no 2 or 3")));
    }
    Ok(ev.map(w, |c| alpha_left(a_full, c), |d| alpha_right(k0, b_full, d)))
}

/// Number of antecedent steps from `w` down to ε or 1^j, and that terminal word.
pub fn bispecial_age(l: &LanguageSample, w: &Word, ks: &[u64]) -> Result<(usize, Word)> {
    if !l.contains(w.as_slice()) {
        return Err(Error::NotAFactor(w.to_string()));
    }
    age_of(w, ks)
}

fn age_of(w: &Word, ks: &[u64]) -> Result<(usize, Word)> {
    let mut cur = w.clone();
    let mut age = 0;
    while !cur.is_power_of(1) {
        let k = *ks
            .get(age)
            .ok_or_else(|| Error::CodingExhausted(format!("age of {w} exceeds {} levels", ks.len())))?;
        cur = eee_antecedent(&cur, k)?.v;
        age += 1;
    }
    Ok((age, cur))
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub word: Word,
    pub diagram: ExtensionDiagram,
    pub m: i64,
}

fn entry(word: Word, pairs: &[(u8, u8)]) -> TableEntry {
    let diagram = ExtensionDiagram::from_pairs(word.clone(), pairs);
    TableEntry { m: diagram.multiplicity(), word, diagram }
}

/// Rows `(left, rights)` into cell pairs.
fn rows(r: &[(u8, &[u8])]) -> Vec<(u8, u8)> {
    r.iter().flat_map(|&(a, bs)| bs.iter().map(move |&b| (a, b))).collect()
}

fn age_zero(k0: u64, k1: u64) -> Vec<TableEntry> {
    let mut out = vec![entry(Word::empty(), &two_word_pairs(k0, k1))];
    for j in 1..k0 {
        out.push(entry(ones(j), &[(1, 1), (1, 3), (2, 1), (3, 1)]));
    }
    if k0 > 0 {
        let pairs: &[(u8, u8)] = if k1 == 0 {
            &[(1, 3), (2, 1), (3, 1), (3, 3)]
        } else {
            &[(1, 3), (2, 1), (3, 3)]
        };
        out.push(entry(ones(k0), pairs));
    }
    out
}

fn diagram_1k3(k0: u64, k1: u64, k2: u64) -> Vec<(u8, u8)> {
    let r: &[(u8, &[u8])] = match (k0 > 0, k1 > 0, k2 > 0) {
        (false, false, false) => &[(1, &[1, 2, 3]), (3, &[2])],
        (false, false, true) => &[(1, &[1, 3]), (3, &[2, 3])],
        (false, true, false) => &[(1, &[2, 3]), (3, &[2])],
        (false, true, true) => &[(1, &[2, 3]), (3, &[2, 3])],
        (true, false, false) => &[(1, &[1, 2]), (3, &[2])],
        (true, false, true) => &[(1, &[1]), (3, &[1, 2])],
        (true, true, false) => &[(1, &[1, 2]), (3, &[2])],
        (true, true, true) => &[(1, &[1, 2]), (3, &[1, 2])],
    };
    rows(r)
}

fn diagram_1k32k(k2: u64) -> Vec<(u8, u8)> {
    if k2 == 0 {
        rows(&[(1, &[1, 2]), (3, &[2])])
    } else {
        rows(&[(1, &[1]), (3, &[2])])
    }
}

fn diagram_1k31k(k1: u64, k2: u64) -> Vec<(u8, u8)> {
    let r: &[(u8, &[u8])] = match (k1 > 0, k2 > 0) {
        (false, false) => &[(1, &[1, 3])],
        (false, true) => &[(1, &[1, 3]), (3, &[3])],
        (true, false) => &[(1, &[3])],
        (true, true) => &[(1, &[3]), (3, &[3])],
    };
    rows(r)
}

fn age_one(k0: u64, k1: u64, k2: u64) -> Vec<TableEntry> {
    let mut out = Vec::new();
    for j in 1..k1 {
        out.push(entry(Word::power(2, j as usize), &rows(&[(2, &[1, 2]), (3, &[2])])));
    }
    if k1 > 0 {
        out.push(entry(Word::power(2, k1 as usize), &rows(&[(2, &[1]), (3, &[1, 2])])));
    }
    let w1 = ones_three(k0);
    out.push(entry(w1.clone(), &diagram_1k3(k0, k1, k2)));
    if k0 > 0 {
        out.push(entry(w1.concat(&ones(k0)), &diagram_1k31k(k1, k2)));
    }
    if k1 > 0 {
        out.push(entry(w1.concat(&Word::power(2, k1 as usize)), &diagram_1k32k(k2)));
    }
    out
}

/// Tabulated bispecial candidates of age 0 or 1 with their diagrams.
///
/// Some age-1 rows (1^{k0}31^{k0} outside k1 = 0 < k2) are listed with
/// diagrams that are not bispecial, matching the tabulation.
pub fn age_table_lookup(age: u8, k0: u64, k1: u64, k2: u64) -> Result<Vec<TableEntry>> {
    match age {
        0 => Ok(age_zero(k0, k1)),
        1 => Ok(age_one(k0, k1, k2)),
        _ => Err(Error::Domain(format!("ages 0 and 1 are tabulated, got {age}"))),
    }
}

/// One step of the non-neutral chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainEntry {
    pub index: usize,
    pub w_plus: Word,
    pub w_minus: Word,
    pub diagram_plus: ExtensionDiagram,
    pub diagram_minus: ExtensionDiagram,
    pub m_plus: i64,
    pub m_minus: i64,
    /// `A_m^±`: whether the prefix is `1^{k0}3`.
    pub a_plus: bool,
    pub a_minus: bool,
    /// `B_m^±`: whether the suffix is `1^{k0}`.
    pub b_plus: bool,
    pub b_minus: bool,
}

struct Image {
    word: Word,
    diagram: ExtensionDiagram,
    a: bool,
    b: bool,
}

impl ChainEntry {
    fn from_images(index: usize, plus: Image, minus: Image) -> ChainEntry {
        ChainEntry {
            index,
            m_plus: plus.diagram.multiplicity(),
            m_minus: minus.diagram.multiplicity(),
            w_plus: plus.word,
            w_minus: minus.word,
            diagram_plus: plus.diagram,
            diagram_minus: minus.diagram,
            a_plus: plus.a,
            a_minus: minus.a,
            b_plus: plus.b,
            b_minus: minus.b,
        }
    }

    fn zero(k0: u64, k1: u64) -> ChainEntry {
        let table = age_zero(k0, k1);
        let eps = &table[0];
        let last = table.last().unwrap();
        let image = |t: &TableEntry, b| Image { word: t.word.clone(), diagram: t.diagram.clone(), a: false, b };
        ChainEntry::from_images(0, image(eps, false), image(last, k0 > 0))
    }

    fn one(k0: u64, k1: u64, k2: u64) -> ChainEntry {
        let plus_word = ones_three(k0);
        let plus = Image {
            diagram: ExtensionDiagram::from_pairs(plus_word.clone(), &diagram_1k3(k0, k1, k2)),
            word: plus_word,
            a: true,
            b: false,
        };
        let minus = if k1 == 0 {
            Image { word: plus.word.clone(), diagram: plus.diagram.clone(), a: true, b: false }
        } else {
            let w = plus.word.concat(&Word::power(2, k1 as usize));
            Image { diagram: ExtensionDiagram::from_pairs(w.clone(), &diagram_1k32k(k2)), word: w, a: true, b: false }
        };
        ChainEntry::from_images(1, plus, minus)
    }

    pub fn words(&self) -> [&Word; 2] {
        [&self.w_plus, &self.w_minus]
    }
}

/// Bispecial extended images of `v`; `index` is the chain index of the images.
fn extended_images(ev: &ExtensionDiagram, k0: u64, gk: &Substitution, index: usize) -> Vec<Image> {
    let spread = |a_full: bool| {
        let mut s: Vec<u8> = ev.left().into_iter().filter_map(|c| alpha_left(a_full, c)).collect();
        s.sort_unstable();
        s.dedup();
        s.len() >= 2
    };
    let a = match (spread(false), spread(true)) {
        (true, false) => false,
        (false, true) => true,
        _ => index % 2 == 1,
    };
    let core = gk.apply(ev.word.as_slice());
    let make = |b: bool| {
        let mut word = if a { ones_three(k0) } else { Word::empty() };
        word = word.concat(&core);
        if b {
            word = word.concat(&ones(k0));
        }
        let diagram = ev.map(word.clone(), |c| alpha_left(a, c), |d| alpha_right(k0, b, d));
        Image { word, diagram, a, b }
    };
    let candidates: Vec<Image> = if k0 == 0 { vec![make(false)] } else { vec![make(false), make(true)] };
    let special: Vec<Image> = candidates.into_iter().filter(|i| i.diagram.right().len() >= 2).collect();
    if special.is_empty() {
        vec![make(false)]
    } else {
        special
    }
}

fn lift(src: &ChainEntry, k0: u64) -> ChainEntry {
    let gk = g(k0);
    let index = src.index + 1;
    if src.w_plus == src.w_minus {
        let mut imgs = extended_images(&src.diagram_plus, k0, &gk, index);
        if imgs.len() == 2 {
            let minus = imgs.pop().unwrap();
            let plus = imgs.pop().unwrap();
            return ChainEntry::from_images(index, plus, minus);
        }
        let only = imgs.pop().unwrap();
        let copy = Image { word: only.word.clone(), diagram: only.diagram.clone(), ..only };
        return ChainEntry::from_images(index, only, copy);
    }
    let plus = extended_images(&src.diagram_plus, k0, &gk, index).remove(0);
    let minus = extended_images(&src.diagram_minus, k0, &gk, index).remove(0);
    ChainEntry::from_images(index, plus, minus)
}

/// Chain entries 0..=M. Entry m at level 0 is entry 1 at level m − 1 lifted
/// m − 1 times, so the coding needs at least M + 2 exponents.
pub fn build_chain(ks: &[u64], m_max: usize) -> Result<Vec<ChainEntry>> {
    if ks.len() < m_max.max(1) + 2 {
        return Err(Error::CodingExhausted(format!(
            "chain depth {m_max} needs {} exponents, have {}",
            m_max.max(1) + 2,
            ks.len()
        )));
    }
    let mut out = vec![ChainEntry::zero(ks[0], ks[1])];
    for m in 1..=m_max {
        let base = m - 1;
        let mut e = ChainEntry::one(ks[base], ks[base + 1], ks[base + 2]);
        for level in (0..base).rev() {
            e = lift(&e, ks[level]);
        }
        out.push(e);
    }
    Ok(out)
}

/// Chain entries until `|w_M^+|` exceeds `n_max`.
pub fn build_chain_to_length(ks: &[u64], n_max: usize) -> Result<Vec<ChainEntry>> {
    let mut out = build_chain(ks, 1)?;
    while out.last().unwrap().w_plus.len() <= n_max {
        let m = out.len();
        if ks.len() < m + 2 {
            return Err(Error::CodingExhausted(format!(
                "chain reached |w+| = {} at depth {} but n_max = {n_max}",
                out.last().unwrap().w_plus.len(),
                m - 1
            )));
        }
        let mut e = ChainEntry::one(ks[m - 1], ks[m], ks[m + 1]);
        for level in (0..m - 1).rev() {
            e = lift(&e, ks[level]);
        }
        out.push(e);
    }
    Ok(out)
}

/// The six (full row, other row) column patterns of diagrams with three
/// right extensions at age ≥ 1.
pub fn three_right_patterns() -> Vec<([bool; 3], [bool; 3])> {
    let bases: [(&[u8], &[u8]); 2] = [(&[1, 2, 3], &[2]), (&[1, 3], &[2, 3])];
    let mut out = Vec::new();
    for (top, bottom) in bases {
        for shift in 0..3u8 {
            let row = |ds: &[u8]| {
                let mut r = [false; 3];
                for &d in ds {
                    r[((d - 1 + shift) % 3) as usize] = true;
                }
                r
            };
            out.push((row(top), row(bottom)));
        }
    }
    out
}

/// Whether `cells` has exactly two nonempty rows forming one of the six
/// patterns, in either row order.
pub fn is_three_right_form(cells: &[[bool; 3]; 3]) -> bool {
    let nonempty: Vec<usize> = (0..3).filter(|&r| cells[r].iter().any(|&x| x)).collect();
    if nonempty.len() != 2 {
        return false;
    }
    let (x, y) = (cells[nonempty[0]], cells[nonempty[1]]);
    three_right_patterns().iter().any(|&(p, q)| (p, q) == (x, y) || (p, q) == (y, x))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

fn check(name: &'static str, failure: Option<String>) -> CheckResult {
    CheckResult { name, passed: failure.is_none(), witness: failure }
}

#[derive(Clone, Debug, Serialize)]
pub struct EeeReport {
    pub coding: Vec<u64>,
    pub n_max: usize,
    pub reliable_window: usize,
    pub complexity: Vec<usize>,
    pub chain: Vec<ChainEntry>,
    pub non_neutral: Vec<Bispecial>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Samples the language of `ks` and checks the complexity bounds and the
/// chain claims against brute force.
pub fn certify_eee(ks: &[u64], n_max: usize) -> Result<EeeReport> {
    let l = expand_language_sample(&CodingSeq::Gauss(ks.to_vec()), TripTriple::EEE, Variant::Canonical13, n_max + 3)?;
    certify_sample(&l, ks, n_max)
}

/// Same as [`certify_eee`] on a seeded random coding, lengthened until the
/// sample and the chain both reach `n_max`.
pub fn certify_eee_seeded(seed: u64, n_max: usize) -> Result<EeeReport> {
    let mut len = 24;
    loop {
        let ks = crate::word::random_gauss(seed, len, crate::word::DEFAULT_K_CAP);
        match certify_eee(&ks, n_max) {
            Err(Error::WindowExceeded { .. } | Error::CodingExhausted(_)) if len < 4096 => len *= 2,
            r => return r,
        }
    }
}

pub fn certify_sample(l: &LanguageSample, ks: &[u64], n_max: usize) -> Result<EeeReport> {
    l.require_window(n_max + 2)?;
    let complexity = complexity_profile(l, n_max)?;
    let chain = build_chain_to_length(ks, n_max)?;
    let non_neutral: Vec<Bispecial> = enumerate_bispecial(l, n_max.saturating_sub(1))?
        .into_iter()
        .filter(|b| b.m != 0)
        .collect();

    // 2n+1 ≤ p(n) ≤ 3n, then p(n+1) − p(n) ∈ {2, 3}
    let bounds = (1..=n_max)
        .find(|&n| complexity[n] < 2 * n + 1 || complexity[n] > 3 * n)
        .map(|n| format!("p({n}) = {}", complexity[n]))
        .or_else(|| {
            (1..n_max)
                .find(|&n| !(2..=3).contains(&(complexity[n + 1] as i64 - complexity[n] as i64)))
                .map(|n| format!("p({}) − p({n}) = {}", n + 1, complexity[n + 1] as i64 - complexity[n] as i64))
        });

    let covered = non_neutral
        .iter()
        .find(|b| {
            !chain.iter().any(|e| {
                (e.w_plus == b.word && e.m_plus == b.m) || (e.w_minus == b.word && e.m_minus == b.m)
            })
        })
        .map(|b| format!("{} (m = {}) is not in the chain", b.word, b.m));

    let multiplicities = chain
        .iter()
        .find(|e| !(0..=1).contains(&e.m_plus) || e.m_plus != -e.m_minus)
        .map(|e| format!("entry {}: m+ = {}, m- = {}", e.index, e.m_plus, e.m_minus));

    let interleave = chain
        .windows(2)
        .find(|p| p[0].w_plus.len() > p[0].w_minus.len() || p[0].w_minus.len() >= p[1].w_plus.len())
        .map(|p| {
            format!(
                "|w{}+| = {}, |w{}-| = {}, |w{}+| = {}",
                p[0].index,
                p[0].w_plus.len(),
                p[0].index,
                p[0].w_minus.len(),
                p[1].index,
                p[1].w_plus.len()
            )
        });

    let parity = chain
        .iter()
        .skip(1)
        .find(|e| e.a_plus != (e.index % 2 == 1) || e.a_minus != (e.index % 2 == 1))
        .map(|e| format!("entry {}: A+ = {}, A- = {}", e.index, e.a_plus, e.a_minus));

    let limit = l.reliable_window().saturating_sub(2);
    let diagrams = chain
        .iter()
        .flat_map(|e| [(&e.w_plus, &e.diagram_plus, e.index), (&e.w_minus, &e.diagram_minus, e.index)])
        .find_map(|(w, d, index)| {
            if w.len() >= limit {
                return None;
            }
            if !l.contains(w.as_slice()) {
                return Some(format!("{w} is not a factor"));
            }
            let seen = raw_diagram(l, w.as_slice());
            if seen.cells != d.cells {
                return Some(format!("predicted {d:?}, sampled {seen:?}"));
            }
            (index >= 1 && d.right().len() == 3 && !is_three_right_form(&d.cells))
                .then(|| format!("{w}: {d:?} is not one of the six three-right forms"))
        });

    let checks = vec![
        check("complexity_bounds", bounds),
        check("non_neutral_in_chain", covered),
        check("chain_multiplicities", multiplicities),
        check("length_interleaving", interleave),
        check("prefix_parity", parity),
        check("chain_diagrams", diagrams),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(EeeReport {
        coding: ks.to_vec(),
        n_max,
        reliable_window: l.reliable_window(),
        complexity,
        chain,
        non_neutral,
        checks,
        passed,
    })
}
