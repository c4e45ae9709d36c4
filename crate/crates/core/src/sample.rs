//! Finite samples of S-adic languages: factor-closed sets of factors up to a
//! length bound, with a certified reliable window.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::algebra::{Perm3, TripTriple};
use crate::error::{Error, Result};
use crate::word::{CodingSeq, Substitution, Variant, Word};

/// Factors up to this length are packed two bits per character into a `u128`.
const PACK_MAX: usize = 64;

/// Number of consecutive expansion depths without short new factors needed to
/// certify a window.
pub const STABILITY_MARGIN: usize = 3;

#[inline]
fn pack(w: &[u8]) -> u128 {
    w.iter().fold(0u128, |acc, &c| (acc << 2) | c as u128)
}

fn unpack(mut key: u128, n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for slot in out.iter_mut().rev() {
        *slot = (key & 3) as u8;
        key >>= 2;
    }
    out
}

#[inline]
fn low_mask(n: usize) -> u128 {
    if n >= PACK_MAX {
        u128::MAX
    } else {
        (1u128 << (2 * n)) - 1
    }
}

/// Per-length sets of factors, closed under taking factors.
#[derive(Clone, Debug)]
pub struct FactorSet {
    packed: Vec<FxHashSet<u128>>,
    long: Vec<FxHashSet<Box<[u8]>>>,
    max_len: usize,
}

impl FactorSet {
    pub fn new(max_len: usize) -> FactorSet {
        let mut packed = vec![FxHashSet::default(); max_len.min(PACK_MAX) + 1];
        packed[0].insert(0);
        let long = vec![FxHashSet::default(); max_len.saturating_sub(PACK_MAX)];
        FactorSet { packed, long, max_len }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        let n = w.len();
        if n > self.max_len {
            false
        } else if n <= PACK_MAX {
            self.packed[n].contains(&pack(w))
        } else {
            self.long[n - PACK_MAX - 1].contains(w)
        }
    }

    pub fn count(&self, n: usize) -> usize {
        if n > self.max_len {
            0
        } else if n <= PACK_MAX {
            self.packed[n].len()
        } else {
            self.long[n - PACK_MAX - 1].len()
        }
    }

    /// All stored factors of length `n`, sorted.
    pub fn factors(&self, n: usize) -> Vec<Word> {
        let mut out: Vec<Word> = if n > self.max_len {
            Vec::new()
        } else if n <= PACK_MAX {
            self.packed[n].iter().map(|&k| Word(unpack(k, n))).collect()
        } else {
            self.long[n - PACK_MAX - 1].iter().map(|w| Word(w.to_vec())).collect()
        };
        out.sort();
        out
    }

    /// Inserts `w` (truncated to the length bound by the caller) and all its
    /// factors; returns the length of the shortest factor that was new.
    pub fn insert_closed(&mut self, w: &[u8]) -> Option<usize> {
        let mut shortest = usize::MAX;
        self.insert_rec(w, &mut shortest);
        (shortest != usize::MAX).then_some(shortest)
    }

    fn insert_rec(&mut self, w: &[u8], shortest: &mut usize) {
        let n = w.len();
        debug_assert!(n <= self.max_len);
        if n <= PACK_MAX {
            self.insert_packed(n, pack(w), shortest);
            return;
        }
        let set = &mut self.long[n - PACK_MAX - 1];
        if set.contains(w) {
            return;
        }
        set.insert(w.into());
        *shortest = (*shortest).min(n);
        self.insert_rec(&w[..n - 1], shortest);
        self.insert_rec(&w[1..], shortest);
    }

    fn insert_packed(&mut self, n: usize, key: u128, shortest: &mut usize) {
        if n == 0 || !self.packed[n].insert(key) {
            return;
        }
        *shortest = (*shortest).min(n);
        self.insert_packed(n - 1, key >> 2, shortest);
        self.insert_packed(n - 1, key & low_mask(n - 1), shortest);
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Provenance {
    pub coding: Option<CodingSeq>,
    pub triple: Option<TripTriple>,
    pub variant: Option<Variant>,
    pub note: String,
}

/// A deduplicated, factor-closed set of factors of a language.
#[derive(Clone, Debug)]
pub struct LanguageSample {
    factors: FactorSet,
    reliable_window: usize,
    stabilized: bool,
    shortest_new_by_depth: Vec<Option<usize>>,
    pub provenance: Provenance,
}

/// Compressed image of a letter: short images in full, long ones by their ends.
enum Image {
    Full(Vec<u8>),
    Cut { head: Vec<u8>, tail: Vec<u8> },
}

impl LanguageSample {
    /// Factors of length ≤ `max_len` of `(σ0 ∘ … ∘ σ_{m−1})(c)` for every
    /// letter c and every m up to the number of substitutions.
    pub fn from_substitutions(subs: &[Substitution], max_len: usize, provenance: Provenance) -> LanguageSample {
        let mut factors = FactorSet::new(max_len);
        let keep = max_len.max(1);
        let full_limit = 4 * keep;
        let mut images: Vec<Image> = (1..=3u8).map(|c| Image::Full(vec![c])).collect();
        let mut shortest_new_by_depth = Vec::with_capacity(subs.len() + 1);
        let mut first = usize::MAX;
        if max_len > 0 {
            for c in 1..=3u8 {
                if let Some(n) = factors.insert_closed(&[c]) {
                    first = first.min(n);
                }
            }
        }
        shortest_new_by_depth.push((first != usize::MAX).then_some(first));

        let mut buf = Vec::new();
        for s in subs {
            let mut shortest = usize::MAX;
            let mut next = Vec::with_capacity(3);
            for c in 1..=3u8 {
                buf.clear();
                let mut cut = false;
                for &d in s.image(c).as_slice() {
                    match &images[(d - 1) as usize] {
                        Image::Full(w) => buf.extend_from_slice(w),
                        Image::Cut { head, tail } => {
                            buf.extend_from_slice(head);
                            buf.push(0);
                            buf.extend_from_slice(tail);
                            cut = true;
                        }
                    }
                }
                if max_len > 0 {
                    for seg in buf.split(|&b| b == 0) {
                        for i in 0..seg.len() {
                            let end = (i + max_len).min(seg.len());
                            if let Some(n) = factors.insert_closed(&seg[i..end]) {
                                shortest = shortest.min(n);
                            }
                        }
                    }
                }
                next.push(if !cut && buf.len() <= full_limit {
                    Image::Full(buf.clone())
                } else {
                    // a break can only follow `keep` intact characters, so both ends are exact
                    Image::Cut {
                        head: buf[..keep].to_vec(),
                        tail: buf[buf.len() - keep..].to_vec(),
                    }
                });
            }
            images = next;
            shortest_new_by_depth.push((shortest != usize::MAX).then_some(shortest));
        }

        let depths = shortest_new_by_depth.len();
        let (reliable_window, stabilized) = if depths <= STABILITY_MARGIN {
            (0, false)
        } else {
            let w = shortest_new_by_depth[depths - STABILITY_MARGIN..]
                .iter()
                .map(|s| s.map_or(max_len, |n| n - 1))
                .min()
                .unwrap_or(max_len);
            (w, w > 0)
        };
        LanguageSample {
            factors,
            reliable_window,
            stabilized,
            shortest_new_by_depth,
            provenance,
        }
    }

    /// All factors of length ≤ `max_len` of the given words.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a Word>, max_len: usize, note: &str) -> LanguageSample {
        let mut factors = FactorSet::new(max_len);
        for w in words {
            let w = w.as_slice();
            for i in 0..w.len() {
                factors.insert_closed(&w[i..(i + max_len).min(w.len())]);
            }
        }
        LanguageSample {
            factors,
            reliable_window: max_len,
            stabilized: true,
            shortest_new_by_depth: Vec::new(),
            provenance: Provenance {
                note: note.to_string(),
                ..Provenance::default()
            },
        }
    }

    /// The language of the periodic word `period period period …`.
    pub fn periodic(period: &Word, max_len: usize) -> LanguageSample {
        let reps = max_len / period.len().max(1) + 2;
        let long = Word(period.as_slice().repeat(reps));
        LanguageSample::from_words([&long], max_len, &format!("periodic {period}"))
    }

    /// Applies a letter-wise map to every stored factor.
    pub fn map_factors(&self, f: impl Fn(&Word) -> Word, note: &str) -> LanguageSample {
        let mut factors = FactorSet::new(self.factors.max_len);
        for n in (1..=self.factors.max_len).rev() {
            for w in self.factors.factors(n) {
                factors.insert_closed(f(&w).as_slice());
            }
        }
        LanguageSample {
            factors,
            reliable_window: self.reliable_window,
            stabilized: self.stabilized,
            shortest_new_by_depth: self.shortest_new_by_depth.clone(),
            provenance: Provenance {
                note: note.to_string(),
                ..self.provenance.clone()
            },
        }
    }

    pub fn relabel(&self, rho: Perm3) -> LanguageSample {
        self.map_factors(|w| w.relabel(rho), &format!("relabeled by {rho}"))
    }

    pub fn reverse(&self) -> LanguageSample {
        self.map_factors(Word::reverse, "reversed")
    }

    pub fn reliable_window(&self) -> usize {
        self.reliable_window
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn max_factor_len(&self) -> usize {
        self.factors.max_len
    }

    /// Shortest newly found factor at each expansion depth.
    pub fn shortest_new_by_depth(&self) -> &[Option<usize>] {
        &self.shortest_new_by_depth
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.factors.contains(w)
    }

    pub fn count(&self, n: usize) -> usize {
        self.factors.count(n)
    }

    pub fn factors(&self, n: usize) -> Vec<Word> {
        self.factors.factors(n)
    }

    /// Errors unless factors of length `n` are inside the reliable window.
    pub fn require_window(&self, n: usize) -> Result<()> {
        if n > self.reliable_window {
            Err(Error::WindowExceeded {
                requested: n,
                reliable: self.reliable_window,
            })
        } else {
            Ok(())
        }
    }

    /// Same factor sets for every length up to `n`.
    pub fn same_factors(&self, other: &LanguageSample, n: usize) -> bool {
        (0..=n).all(|k| self.factors(k) == other.factors(k))
    }
}

/// Samples the language of a coding sequence for the map `t`.
pub fn expand_language_sample(
    seq: &CodingSeq,
    t: TripTriple,
    variant: Variant,
    max_factor_len: usize,
) -> Result<LanguageSample> {
    if seq.is_empty() {
        return Err(Error::CodingExhausted("empty coding sequence".into()));
    }
    let subs = seq.substitutions(t, variant);
    let provenance = Provenance {
        coding: Some(seq.clone()),
        triple: Some(t),
        variant: Some(variant),
        note: String::new(),
    };
    Ok(LanguageSample::from_substitutions(&subs, max_factor_len, provenance))
}

/// Samples a seeded random Gauss coding, lengthening it (same random stream)
/// until the reliable window reaches `window`.
pub fn sample_random_gauss(
    t: TripTriple,
    variant: Variant,
    seed: u64,
    window: usize,
    slack: usize,
) -> Result<LanguageSample> {
    let mut len = 24;
    loop {
        let ks = crate::word::random_gauss(seed, len, crate::word::DEFAULT_K_CAP);
        let s = expand_language_sample(&CodingSeq::Gauss(ks), t, variant, window + slack)?;
        if s.reliable_window() >= window {
            return Ok(s);
        }
        if len >= 4096 {
            return Err(Error::CodingExhausted(format!(
                "window {} not reached for {t} with seed {seed} (got {})",
                window,
                s.reliable_window()
            )));
        }
        len *= 2;
    }
}
