//! The (e,13,e) Gauss languages: two-letter factors, the parity conditions
//! (I)/(II), the right special chains v_m, w_m and the three complexity forms.

use serde::Serialize;

use crate::algebra::{Perm3, TripTriple};
use crate::error::{Error, Result};
use crate::language::{complexity_profile, right_special};
use crate::sample::expand_language_sample;
use crate::word::{gauss_substitution, CodingSeq, Substitution, Variant, Word};

pub const E13E: TripTriple = TripTriple::new(Perm3::E, Perm3::P13, Perm3::E);

/// `S^G_k`: 1 ↦ 1^{k+1}3, 2 ↦ 1^k3, 3 ↦ 2.
pub fn g(k: u64) -> Substitution {
    gauss_substitution(E13E, k, Variant::Canonical13)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    In,
    Out,
    /// Depends on coding entries beyond the prefix.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub horizon: usize,
    /// (I): every even-index entry of the prefix is 0.
    pub holds_i: bool,
    /// (II): every odd-index entry of the prefix is 0.
    pub holds_ii: bool,
    pub last_violation_even: Option<usize>,
    pub last_violation_odd: Option<usize>,
}

pub fn classify_conditions(ks: &[u64]) -> ConditionReport {
    let last = |parity: usize| (0..ks.len()).rev().find(|&i| i % 2 == parity && ks[i] > 0);
    let last_violation_even = last(0);
    let last_violation_odd = last(1);
    ConditionReport {
        horizon: ks.len(),
        holds_i: last_violation_even.is_none(),
        holds_ii: last_violation_odd.is_none(),
        last_violation_even,
        last_violation_odd,
    }
}

/// Membership of each two-letter word, for a language whose coding starts with `ks`.
pub fn e13e_two_letter_table(ks: &[u64]) -> Result<Vec<(Word, Membership)>> {
    let k0 = *ks.first().ok_or_else(|| Error::CodingExhausted("empty coding".into()))?;
    let c = classify_conditions(ks);
    let verdict = |b: bool| if b { Membership::In } else { Membership::Out };
    let open = |holds: bool| if holds { Membership::Indeterminate } else { Membership::In };
    let mut out = Vec::new();
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            let m = match (a, b) {
                (1, 3) | (3, 2) => Membership::In,
                (1, 2) | (2, 2) | (3, 3) => Membership::Out,
                (1, 1) => verdict(k0 >= 1),
                (2, 3) => verdict(k0 == 0),
                (2, 1) => open(c.holds_i),
                _ => open(c.holds_ii),
            };
            out.push((Word(vec![a, b]), m));
        }
    }
    Ok(out)
}

/// A chain word kept as its last `cap` letters plus exact letter counts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Tail {
    tail: Vec<u8>,
    counts: [u64; 3],
}

impl Tail {
    fn empty() -> Tail {
        Tail { tail: Vec::new(), counts: [0; 3] }
    }

    fn len(&self) -> u64 {
        self.counts.iter().fold(0u64, |a, &b| a.saturating_add(b))
    }

    /// `S^G_k(self) 1^{extra}`, truncated to `cap` letters.
    fn image(&self, k: u64, extra: u64, cap: usize) -> Tail {
        let s = g(k);
        let mut tail = Vec::new();
        for &c in self.tail.iter().rev() {
            if tail.len() >= cap {
                break;
            }
            tail.extend(s.image(c).as_slice().iter().rev());
        }
        tail.truncate(cap);
        tail.reverse();
        let [n1, n2, n3] = self.counts;
        let ones = n1.saturating_mul(k + 1).saturating_add(n2.saturating_mul(k)).saturating_add(extra);
        let mut t = Tail { tail, counts: [ones, n3, n1.saturating_add(n2)] };
        for _ in 0..extra.min(cap as u64) {
            t.tail.push(1);
        }
        if t.tail.len() > cap {
            t.tail.drain(..t.tail.len() - cap);
        }
        t
    }
}

fn chains_capped(ks: &[u64], m_max: usize, cap: usize) -> Result<(Vec<Tail>, Vec<Tail>)> {
    if ks.len() < 2 * m_max + 1 {
        return Err(Error::CodingExhausted(format!(
            "chains to depth {m_max} need {} exponents, have {}",
            2 * m_max + 1,
            ks.len()
        )));
    }
    // v[d], w[d]: the current entry of each chain at level d.
    let levels = 2 * m_max + 1;
    let mut v = vec![Tail::empty(); levels + 1];
    let mut w = vec![Tail::empty(); levels + 1];
    let mut vs = vec![Tail::empty()];
    let mut ws = vec![Tail::empty()];
    for m in 1..=m_max {
        let mut nv = v.clone();
        let mut nw = w.clone();
        for d in (0..levels - 1).rev() {
            nv[d] = w[d + 1].image(ks[d], ks[d], cap);
            nw[d] = nv[d + 1].image(ks[d], 0, cap);
        }
        v = nv;
        w = nw;
        vs.push(v[0].clone());
        ws.push(w[0].clone());
        let _ = m;
    }
    Ok((vs, ws))
}

#[derive(Clone, Debug, Serialize)]
pub struct RightSpecialChains {
    pub v_list: Vec<Word>,
    pub w_list: Vec<Word>,
    pub v_lengths: Vec<u64>,
    pub w_lengths: Vec<u64>,
    /// Whether the words were cut to their last `cap` letters.
    pub truncated: bool,
    /// The chain did not change over the second half of the computed entries.
    pub v_limit_finite: bool,
    pub w_limit_finite: bool,
}

/// `v_0 = w_0 = ε`, `v_m = S^G_{k0}(w_{m−1}(L^{(1)})) 1^{k0}`,
/// `w_m = S^G_{k0}(v_m(L^{(1)}))`, for m ≤ `m_max`.
pub fn right_special_chains(ks: &[u64], m_max: usize) -> Result<RightSpecialChains> {
    build_chains(ks, m_max, usize::MAX)
}

fn build_chains(ks: &[u64], m_max: usize, cap: usize) -> Result<RightSpecialChains> {
    let (vs, ws) = chains_capped(ks, m_max, cap)?;
    let stable = |xs: &[Tail]| {
        let half = xs.len() / 2;
        xs[half..].windows(2).all(|p| p[0] == p[1])
    };
    Ok(RightSpecialChains {
        truncated: vs.iter().chain(&ws).any(|t| (t.tail.len() as u64) < t.len()),
        v_limit_finite: stable(&vs),
        w_limit_finite: stable(&ws),
        v_lengths: vs.iter().map(Tail::len).collect(),
        w_lengths: ws.iter().map(Tail::len).collect(),
        v_list: vs.into_iter().map(|t| Word(t.tail)).collect(),
        w_list: ws.into_iter().map(|t| Word(t.tail)).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ComplexityForm {
    /// p(n) = 2n + 1.
    Linear,
    /// p(n) = min{2n+1, n+c}.
    Capped { c: u64 },
    /// p(n) = min{2n+1, n+c1, c2}.
    Bounded { c1: u64, c2: u64 },
}

impl ComplexityForm {
    pub fn eval(&self, n: u64) -> u64 {
        match *self {
            ComplexityForm::Linear => 2 * n + 1,
            ComplexityForm::Capped { c } => (2 * n + 1).min(n + c),
            ComplexityForm::Bounded { c1, c2 } => (2 * n + 1).min(n + c1).min(c2),
        }
    }
}

/// Reads the form off a profile `p(0..=n)`; `None` if no form fits.
pub fn fit_form(p: &[usize]) -> Option<ComplexityForm> {
    let n_max = p.len().checked_sub(1)?;
    let dp: Vec<usize> = (1..n_max).map(|n| p[n + 1] - p[n]).collect();
    let twos = dp.iter().take_while(|&&d| d == 2).count();
    let ones = dp[twos..].iter().take_while(|&&d| d == 1).count();
    let form = if twos == dp.len() {
        ComplexityForm::Linear
    } else if twos + ones == dp.len() {
        ComplexityForm::Capped { c: twos as u64 + 2 }
    } else {
        ComplexityForm::Bounded { c1: twos as u64 + 2, c2: p[n_max] as u64 }
    };
    (0..=n_max).all(|n| form.eval(n as u64) == p[n] as u64).then_some(form)
}

#[derive(Clone, Debug, Serialize)]
pub struct E13eReport {
    pub coding: Vec<u64>,
    pub n_max: usize,
    pub conditions: ConditionReport,
    pub chains: RightSpecialChains,
    pub v_len: u64,
    pub w_len: u64,
    pub complexity: Vec<usize>,
    pub fitted: Option<ComplexityForm>,
    /// Form implied by the chain lengths: c1 = min(|v|,|w|) + 2, c2 = |v| + |w| + 3.
    pub predicted: ComplexityForm,
    /// Per n: sampled p(n+1) − p(n) minus the number of chain limits of length ≥ n.
    pub residuals: Vec<i64>,
    pub right_special_ok: bool,
    pub witness: Option<String>,
    pub passed: bool,
}

fn predicted_form(v: u64, w: u64, n_max: usize) -> ComplexityForm {
    let big = n_max as u64 + 1;
    let (a, b) = (v.min(w), v.max(w));
    if a >= big {
        ComplexityForm::Linear
    } else if b >= big {
        ComplexityForm::Capped { c: a + 2 }
    } else {
        ComplexityForm::Bounded { c1: a + 2, c2: a + b + 3 }
    }
}

/// Samples the language of `ks`, fits its complexity and checks it against
/// the right special chains.
pub fn predict_and_verify(ks: &[u64], n_max: usize) -> Result<E13eReport> {
    let l = expand_language_sample(&CodingSeq::Gauss(ks.to_vec()), E13E, Variant::Canonical13, n_max + 3)?;
    l.require_window(n_max + 2)?;
    let p = complexity_profile(&l, n_max + 1)?;
    let m_max = (ks.len() - 1) / 2;
    let chains = build_chains(ks, m_max, n_max + 2)?;
    let v = chains.v_list.last().unwrap().clone();
    let w = chains.w_list.last().unwrap().clone();
    let v_len = *chains.v_lengths.last().unwrap();
    let w_len = *chains.w_lengths.last().unwrap();

    let mut residuals = Vec::new();
    for n in 1..=n_max {
        let expected = (v_len >= n as u64) as i64 + (w_len >= n as u64) as i64;
        residuals.push((p[n + 1] - p[n]) as i64 - expected);
    }

    let mut witness = None;
    'outer: for n in 1..=n_max {
        for r in right_special(&l, n)? {
            let last = *r.as_slice().last().unwrap();
            let (chain, want) = if last == 3 { (&w, vec![1, 2]) } else { (&v, vec![1, 3]) };
            if !chain.as_slice().ends_with(r.as_slice()) {
                witness = Some(format!("{r} is not a suffix of its chain limit"));
                break 'outer;
            }
            let right: Vec<u8> = (1..=3u8)
                .filter(|&d| l.contains(&[r.as_slice(), &[d]].concat()))
                .collect();
            if right != want {
                witness = Some(format!("{r} has right extensions {right:?}"));
                break 'outer;
            }
        }
    }
    let right_special_ok = witness.is_none();
    let fitted = fit_form(&p[..=n_max]);
    let predicted = predicted_form(v_len, w_len, n_max);
    let passed = right_special_ok && residuals.iter().all(|&r| r == 0) && fitted == Some(predicted);
    Ok(E13eReport {
        coding: ks.to_vec(),
        n_max,
        conditions: classify_conditions(ks),
        chains,
        v_len,
        w_len,
        complexity: p[..=n_max].to_vec(),
        fitted,
        predicted,
        residuals,
        right_special_ok,
        witness,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{gauss_step_e13e, Point3};
    use crate::sample::LanguageSample;

    fn sample(ks: &[u64], n: usize) -> LanguageSample {
        expand_language_sample(&CodingSeq::Gauss(ks.to_vec()), E13E, Variant::Canonical13, n).unwrap()
    }

    #[test]
    fn gauss_images() {
        assert_eq!(g(2), Substitution::new("1113", "113", "2"));
        assert_eq!(g(0), Substitution::new("13", "3", "2"));
    }

    #[test]
    fn two_letter_table_matches_samples() {
        let codings: [&[u64]; 5] = [
            &[1, 0, 2, 1, 0, 3, 1, 1, 2, 0, 1, 1, 0, 2, 1, 1],
            &[0, 2, 0, 1, 0, 3, 0, 1, 0, 2, 0, 1, 0, 1, 0, 2],
            &[2, 0, 1, 0, 3, 0, 1, 0, 2, 0, 1, 0, 1, 0, 2, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 1, 1, 0, 0, 2, 1, 0, 2, 1, 0, 1, 1, 0, 1, 2],
        ];
        for ks in codings {
            let l = sample(ks, 8);
            for (w, m) in e13e_two_letter_table(ks).unwrap() {
                let seen = l.contains(w.as_slice());
                match m {
                    Membership::In => assert!(seen, "{ks:?} {w}"),
                    Membership::Out | Membership::Indeterminate => assert!(!seen, "{ks:?} {w}"),
                }
            }
        }
        let t = e13e_two_letter_table(&[0; 10]).unwrap();
        let get = |s: &str| t.iter().find(|(w, _)| *w == Word::from(s)).unwrap().1;
        assert_eq!((get("21"), get("31")), (Membership::Indeterminate, Membership::Indeterminate));
        let t = e13e_two_letter_table(&[1, 0, 2]).unwrap();
        let get = |s: &str| t.iter().find(|(w, _)| *w == Word::from(s)).unwrap().1;
        assert_eq!((get("11"), get("23"), get("21")), (Membership::In, Membership::Out, Membership::In));
    }

    #[test]
    fn conditions() {
        let c = classify_conditions(&[0, 2, 0, 5, 0, 1]);
        assert!(c.holds_i && !c.holds_ii);
        let c = classify_conditions(&[1, 0, 1, 0, 1, 0]);
        assert!(c.holds_ii && !c.holds_i);
        assert_eq!(c.last_violation_even, Some(4));
        let mut p = Point3::frac((1, 7), (2, 7), (4, 7)).unwrap();
        let mut ks = Vec::new();
        for _ in 0..12 {
            let (k, q) = gauss_step_e13e(&p).unwrap();
            ks.push(k);
            p = q;
        }
        assert!(classify_conditions(&ks).holds_i, "{ks:?}");
    }

    #[test]
    fn worked_chain() {
        let mut ks = vec![1];
        ks.extend([0; 20]);
        let c = right_special_chains(&ks, 10).unwrap();
        assert!(c.v_list[1..].iter().all(|v| *v == Word::from("1")));
        assert!(c.w_list.iter().all(|w| w.is_empty()));
        let ks = [3, 1, 2, 0, 1, 4, 0, 2, 1];
        assert_eq!(right_special_chains(&ks, 4).unwrap().v_list[1], Word::from("111"));
        let c = right_special_chains(&[0, 3, 0, 1, 0, 2, 0, 5, 0, 1, 0], 5).unwrap();
        assert!(c.v_list.iter().all(Word::is_empty));
        assert!(right_special_chains(&[1, 2, 3], 2).is_err());
    }

    #[test]
    fn chain_recursions() {
        for seed in 0..10 {
            let ks = crate::word::random_gauss(seed, 15, 3);
            let c = right_special_chains(&ks, 6).unwrap();
            let c2 = right_special_chains(&ks[2..], 5).unwrap();
            let gg = g(ks[0]).compose(&g(ks[1]));
            let tail = Word::power(1, ks[0] as usize + 1).concat(&Word::from("3"));
            for m in 0..5 {
                let v = gg.apply(c2.v_list[m].as_slice()).concat(&Word::power(1, ks[0] as usize));
                assert_eq!(c.v_list[m + 1], v);
                let mut w = gg.apply(c2.w_list[m].as_slice());
                for _ in 0..ks[1] {
                    w = w.concat(&tail);
                }
                assert_eq!(c.w_list[m + 1], w);
            }
            for m in 0..6 {
                assert!(c.v_list[m + 1].as_slice().ends_with(c.v_list[m].as_slice()));
                assert!(c.w_list[m + 1].as_slice().ends_with(c.w_list[m].as_slice()));
                assert!(c.v_lengths[m + 1] >= c.v_lengths[m] + ks[2 * m]);
            }
        }
    }

    #[test]
    fn capped_chains_keep_suffixes() {
        let ks = crate::word::random_gauss(3, 21, 4);
        let full = right_special_chains(&ks, 10).unwrap();
        let cut = build_chains(&ks, 10, 25).unwrap();
        for (a, b) in full.v_list.iter().zip(&cut.v_list).chain(full.w_list.iter().zip(&cut.w_list)) {
            assert!(a.as_slice().ends_with(b.as_slice()));
            assert_eq!(b.len(), a.len().min(25));
        }
        assert_eq!(full.v_lengths, cut.v_lengths);
    }

    #[test]
    fn fit_forms() {
        let p: Vec<usize> = (0..20).map(|n| 2 * n + 1).collect();
        assert_eq!(fit_form(&p), Some(ComplexityForm::Linear));
        let p: Vec<usize> = (0..20u64).map(|n| ComplexityForm::Capped { c: 5 }.eval(n) as usize).collect();
        assert_eq!(fit_form(&p), Some(ComplexityForm::Capped { c: 5 }));
        let f = ComplexityForm::Bounded { c1: 4, c2: 9 };
        let p: Vec<usize> = (0..20u64).map(|n| f.eval(n) as usize).collect();
        assert_eq!(fit_form(&p), Some(f));
        assert_eq!(fit_form(&[1, 3, 4, 6]), None);
    }

    #[test]
    fn three_regimes() {
        let neither: Vec<u64> = (0..30).map(|i| 1 + i % 2).collect();
        let r = predict_and_verify(&neither, 60).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.fitted, Some(ComplexityForm::Linear));

        let mut only_i: Vec<u64> = (0..40).map(|i| if i % 2 == 1 { 1 + i % 3 } else { 0 }).collect();
        only_i[2] = 2;
        let r = predict_and_verify(&only_i, 60).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(matches!(r.fitted, Some(ComplexityForm::Capped { .. })));

        let mut both = vec![2, 1, 0, 3, 1];
        both.extend([0; 40]);
        let r = predict_and_verify(&both, 80).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(matches!(r.fitted, Some(ComplexityForm::Bounded { .. })));

        let r = predict_and_verify(&[0; 80], 40).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.fitted, Some(ComplexityForm::Bounded { c1: 2, c2: 3 }));
    }

    #[test]
    fn random_codings_verify() {
        for seed in 0..6 {
            let ks = crate::word::random_gauss(seed, 41, 4);
            let r = predict_and_verify(&ks, 80).unwrap();
            assert!(r.passed, "seed {seed}: {:?} {:?} {:?}", r.witness, r.fitted, r.predicted);
        }
    }
}
