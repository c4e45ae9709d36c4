//! Golden counterexample tables, class verdicts, the (e,23,e) word experiment,
//! the hidden-ℝ² orbit experiment and a search for words above 3n.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::TripTriple;
use crate::dynamics::{hidden_r2_orbit, IntOrbitState, OrbitOutcome};
use crate::e23e::sigma;
use crate::error::{Error, Result};
use crate::language::{complexity_profile, word_profile};
use crate::sample::sample_random_gauss;
use crate::word::{expand, trip_substitution, Variant, Word, DEFAULT_K_CAP};

const CANONICAL_TABLE: &str = include_str!("../tests/fixtures/large_complexity_canonical13.csv");
const VARIANT_TABLE: &str = include_str!("../tests/fixtures/large_complexity_variant31.csv");

/// Seed of trial `index` under `master`, independent of how trials are scheduled.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub triple: TripTriple,
    pub farey_bits: String,
    pub n: usize,
    pub p_expected: usize,
}

#[derive(Deserialize)]
struct CsvRow {
    triple: String,
    bits: String,
    n: usize,
    p: usize,
}

pub fn golden_table(variant: Variant) -> Result<Vec<TableRow>> {
    let text = match variant {
        Variant::Canonical13 => CANONICAL_TABLE,
        Variant::Variant31 => VARIANT_TABLE,
    };
    parse_table(text)
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize::<CsvRow>()
        .map(|r| {
            let r = r.map_err(|e| Error::Parse(format!("golden table: {e}")))?;
            if r.p <= 3 * r.n || r.bits.bytes().any(|b| b != b'0' && b != b'1') {
                return Err(Error::Parse(format!("malformed golden row {} {}", r.triple, r.bits)));
            }
            Ok(TableRow {
                triple: r.triple.parse()?,
                farey_bits: r.bits,
                n: r.n,
                p_expected: r.p,
            })
        })
        .collect()
}

/// `(σ_{i0} ∘ … ∘ σ_{i_{m−1}})(1)` for a Farey bit string.
pub fn farey_word(t: TripTriple, variant: Variant, bits: &str) -> Word {
    let subs: Vec<_> = bits.bytes().map(|b| trip_substitution(b - b'0', t, variant)).collect();
    expand(&subs, 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    #[serde(flatten)]
    pub row: TableRow,
    pub p_computed: usize,
    pub word_len: usize,
    pub passed: bool,
    /// The expanded word, kept only on a mismatch.
    pub word: Option<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub variant: Variant,
    pub rows: Vec<RowResult>,
    pub passed: bool,
}

pub fn reproduce_counterexample_tables(variant: Variant) -> Result<TableReport> {
    let rows: Vec<RowResult> = golden_table(variant)?
        .into_iter()
        .map(|row| {
            let w = farey_word(row.triple, variant, &row.farey_bits);
            let p = word_profile(w.as_slice(), row.n)[row.n];
            let passed = p == row.p_expected;
            RowResult {
                p_computed: p,
                word_len: w.len(),
                passed,
                word: (!passed).then_some(w),
                row,
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    Ok(TableReport { variant, rows, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub bits: String,
    pub n: usize,
    pub p: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub triple: TripTriple,
    pub variant: Variant,
    pub max_bits: usize,
    pub examined: usize,
    pub witness: Option<Witness>,
}

/// First bit string, by length then lexicographically, whose word has p_w(n) > 3n.
/// At most `budget` strings are expanded.
pub fn search_high_complexity(t: TripTriple, variant: Variant, max_bits: usize, budget: usize) -> SearchReport {
    let subs = [0, 1].map(|i| trip_substitution(i, t, variant));
    let mut examined = 0;
    let mut witness = None;
    'outer: for len in 1..=max_bits {
        for code in 0..(1u64 << len) {
            if examined == budget {
                break 'outer;
            }
            examined += 1;
            let bits: String = (0..len).rev().map(|i| if code >> i & 1 == 1 { '1' } else { '0' }).collect();
            let mut w = Word(vec![1]);
            for b in bits.bytes().rev() {
                w = subs[(b - b'0') as usize].apply(w.as_slice());
            }
            let n_top = (w.len() + 1) / 4;
            let p = word_profile(w.as_slice(), n_top);
            if let Some(n) = (1..=n_top).find(|&n| p[n] > 3 * n) {
                witness = Some(Witness { bits, n, p: p[n] });
                break 'outer;
            }
        }
    }
    SearchReport {
        triple: t,
        variant,
        max_bits,
        examined,
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Degenerate,
    TwoNPlusOne,
    BetweenTwoNAndThreeN,
}

impl Expectation {
    fn violation(self, p: &[usize], l: &crate::sample::LanguageSample) -> Option<String> {
        let n_max = p.len() - 1;
        match self {
            Expectation::Degenerate => {
                if p[1] != 3 {
                    return Some(format!("p(1) = {}", p[1]));
                }
                if let Some(n) = (2..=n_max).find(|&n| p[n] != n + 1) {
                    return Some(format!("p({n}) = {}", p[n]));
                }
                (2..=n_max)
                    .flat_map(|n| l.factors(n))
                    .find(|w| w.as_slice().contains(&2))
                    .map(|w| format!("factor {w} contains 2"))
            }
            Expectation::TwoNPlusOne => (1..=n_max)
                .find(|&n| p[n] != 2 * n + 1)
                .map(|n| format!("p({n}) = {}", p[n])),
            Expectation::BetweenTwoNAndThreeN => (1..=n_max)
                .find(|&n| p[n] < 2 * n + 1 || p[n] > 3 * n)
                .map(|n| format!("p({n}) = {}", p[n])),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRow {
    pub triple: TripTriple,
    pub expectation: Expectation,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub n_max: usize,
    pub seed: u64,
    pub rows: Vec<VerdictRow>,
    pub passed: bool,
}

/// The triples checked by [`class_verdict_suite`]: the three degenerate
/// representatives, (e,23,23) with one conjugate, and (e,e,e).
pub fn verdict_targets() -> Vec<(TripTriple, Expectation)> {
    [
        ("(e,12,e)", Expectation::Degenerate),
        ("(e,12,13)", Expectation::Degenerate),
        ("(e,132,e)", Expectation::Degenerate),
        ("(e,23,23)", Expectation::TwoNPlusOne),
        ("(12,132,132)", Expectation::TwoNPlusOne),
        ("(e,e,e)", Expectation::BetweenTwoNAndThreeN),
    ]
    .into_iter()
    .map(|(s, e)| (s.parse().unwrap(), e))
    .collect()
}

pub fn check_expectation(t: TripTriple, e: Expectation, n_max: usize, trials: usize, seed: u64) -> Result<VerdictRow> {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let l = sample_random_gauss(t, Variant::Canonical13, trial_seed(seed, i as u64), n_max, 2)?;
            let p = complexity_profile(&l, n_max)?;
            Ok(e.violation(&p, &l).map(|v| format!("trial {i}: {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    Ok(VerdictRow {
        triple: t,
        expectation: e,
        trials,
        failures: failures.len(),
        first_failure: failures.into_iter().next(),
    })
}

pub fn class_verdict_suite(n_max: usize, trials: usize, seed: u64) -> Result<VerdictReport> {
    let rows = verdict_targets()
        .into_iter()
        .map(|(t, e)| check_expectation(t, e, n_max, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.failures == 0);
    Ok(VerdictReport { n_max, seed, rows, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct WordTrial {
    pub seed: u64,
    pub pairs: Vec<(u64, u64)>,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct E23eExperiment {
    pub trials: usize,
    pub word_len: usize,
    pub n_max: usize,
    pub seed: u64,
    pub violations: usize,
    pub max_ratio: f64,
    pub max_increment: usize,
    pub failing: Vec<WordTrial>,
    pub passed: bool,
}

/// Starting from `1`, applies seeded random `G_j ∘ G_k` until the word reaches
/// `word_len`, then truncates. The pairs are listed innermost first.
pub fn e23e_random_word(seed: u64, word_len: usize) -> (Vec<(u64, u64)>, Word) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let mut k = 0;
        while k < DEFAULT_K_CAP && rng.random_bool(0.5) {
            k += 1;
        }
        k
    };
    let mut w = Word(vec![1]);
    let mut pairs = Vec::new();
    while w.len() < word_len {
        let pair = (draw(), draw());
        w = sigma(pair.0, pair.1).apply(w.as_slice());
        pairs.push(pair);
    }
    w.0.truncate(word_len);
    (pairs, w)
}

/// p_w(n) ≤ 3n and p_w(n) − p_w(n−1) ≤ 3 for 2 ≤ n ≤ `n_max` on seeded words.
pub fn e23e_word_experiment(trials: usize, word_len: usize, n_max: usize, seed: u64) -> E23eExperiment {
    let results: Vec<(WordTrial, f64, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let (pairs, w) = e23e_random_word(s, word_len);
            let p = word_profile(w.as_slice(), n_max);
            let ratio = (1..=n_max).map(|n| p[n] as f64 / n as f64).fold(0.0, f64::max);
            let inc = (2..=n_max).map(|n| p[n].saturating_sub(p[n - 1])).max().unwrap_or(0);
            let violation = (2..=n_max)
                .find(|&n| p[n] > 3 * n || p[n] > p[n - 1] + 3)
                .map(|n| format!("p({}) = {}, p({n}) = {}", n - 1, p[n - 1], p[n]));
            (WordTrial { seed: s, pairs, violation }, ratio, inc)
        })
        .collect();
    let max_ratio = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let max_increment = results.iter().map(|r| r.2).max().unwrap_or(0);
    let failing: Vec<WordTrial> = results.into_iter().map(|r| r.0).filter(|t| t.violation.is_some()).collect();
    E23eExperiment {
        trials,
        word_len,
        n_max,
        seed,
        violations: failing.len(),
        max_ratio,
        max_increment,
        passed: failing.is_empty(),
        failing,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HiddenR2Stats {
    pub num_points: usize,
    pub sum_bound: u64,
    pub seed: u64,
    pub max_steps: u64,
    pub reached: usize,
    pub hit_zero: usize,
    pub exhausted: usize,
    pub fraction_reached: f64,
    /// Steps taken before y > z, over the points that got there.
    pub step_histogram: BTreeMap<u64, usize>,
}

/// Uniform positive integer point with x + y + z ≤ `sum_bound`.
pub fn random_integer_point(rng: &mut impl Rng, sum_bound: u64) -> (u64, u64, u64) {
    loop {
        let x = rng.random_range(1..=sum_bound);
        let y = rng.random_range(1..=sum_bound);
        let z = rng.random_range(1..=sum_bound);
        if x as u128 + y as u128 + z as u128 <= sum_bound as u128 {
            return (x, y, z);
        }
    }
}

pub fn hidden_r2_experiment(num_points: usize, sum_bound: u64, seed: u64, max_steps: u64) -> Result<HiddenR2Stats> {
    if sum_bound < 3 {
        return Err(Error::Domain(format!("sum bound {sum_bound} admits no positive point")));
    }
    let outcomes: Vec<OrbitOutcome> = (0..num_points as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let (x, y, z) = random_integer_point(&mut rng, sum_bound);
            hidden_r2_orbit(IntOrbitState::new(x, y, z), max_steps)
        })
        .collect();
    let mut stats = HiddenR2Stats {
        num_points,
        sum_bound,
        seed,
        max_steps,
        reached: 0,
        hit_zero: 0,
        exhausted: 0,
        fraction_reached: 0.0,
        step_histogram: BTreeMap::new(),
    };
    for o in outcomes {
        match o {
            OrbitOutcome::ReachedYgtZ(s) => {
                stats.reached += 1;
                *stats.step_histogram.entry(s).or_default() += 1;
            }
            OrbitOutcome::HitZero(_) => stats.hit_zero += 1,
            OrbitOutcome::Exhausted => stats.exhausted += 1,
        }
    }
    stats.fraction_reached = stats.reached as f64 / num_points.max(1) as f64;
    Ok(stats)
}
