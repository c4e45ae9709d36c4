//! Conjugacy and twinning: the 216 TRIP maps fall into 21 language classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Perm3, TripTriple};
use crate::sample::LanguageSample;

/// Letter permutations in listing order; classes are keyed by these ranks.
const ORDER: [Perm3; 6] = [Perm3::E, Perm3::P12, Perm3::P13, Perm3::P23, Perm3::P123, Perm3::P132];

fn rank(p: Perm3) -> usize {
    ORDER.iter().position(|&q| q == p).unwrap()
}

pub fn relabel_language(l: &LanguageSample, rho: Perm3) -> LanguageSample {
    l.relabel(rho)
}

pub fn reverse_language(l: &LanguageSample) -> LanguageSample {
    l.reverse()
}

/// The σ-free conjugate: relabeling the `(e, τ0∘σ, τ1∘σ)` language by σ gives the `(σ, τ0, τ1)` language.
pub fn conjugate_normal_form(t: TripTriple) -> TripTriple {
    TripTriple::new(Perm3::E, t.tau0.compose(t.sigma), t.tau1.compose(t.sigma))
}

/// The six triples sharing a normal form with `(e, τ0, τ1)`.
pub fn conjugates(t: TripTriple) -> Vec<TripTriple> {
    let n = conjugate_normal_form(t);
    ORDER
        .iter()
        .map(|&rho| TripTriple::new(rho, n.tau0.compose(rho.inverse()), n.tau1.compose(rho.inverse())))
        .collect()
}

/// `(σ∘(13), (12)∘τ1, (12)∘τ0)`; reverses words and swaps the two branches.
pub fn twin(t: TripTriple) -> TripTriple {
    TripTriple::new(
        t.sigma.compose(Perm3::P13),
        Perm3::P12.compose(t.tau1),
        Perm3::P12.compose(t.tau0),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// 2n+1 ≤ p(n) ≤ 3n.
    ThreeN,
    /// p(n) = 2n+1.
    TwoNPlusOne,
    /// One extra letter plus a Sturmian language: p(n) = n+1 for n ≥ 2.
    Degenerate,
    /// The (e,13,e) trichotomy.
    HiddenR2,
    /// Some language exceeds 3n.
    AboveThreeN,
    /// Conjectured ≤ 3n.
    Open,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivClass {
    pub representative: TripTriple,
    pub members: Vec<TripTriple>,
    pub size: usize,
    /// The class is closed under conjugacy alone: its twin is a conjugate.
    pub starred: bool,
    pub verdict: Verdict,
}

fn key(t: TripTriple) -> (usize, usize) {
    let n = conjugate_normal_form(t);
    (rank(n.tau1), rank(n.tau0))
}

/// Classes of all 216 triples, ordered by representative. The representative is
/// the σ = e member that comes first by (τ1, τ0) in listing order.
pub fn enumerate_classes() -> Vec<EquivClass> {
    let mut by_rep: BTreeMap<(usize, usize), Vec<TripTriple>> = BTreeMap::new();
    for t in TripTriple::all() {
        let k = key(t).min(key(twin(t)));
        by_rep.entry(k).or_default().push(t);
    }
    by_rep
        .into_iter()
        .map(|((t1, t0), mut members)| {
            members.sort_by_key(|&m| (m != conjugate_normal_form(m), rank(m.sigma), key(m)));
            let representative = TripTriple::new(Perm3::E, ORDER[t0], ORDER[t1]);
            EquivClass {
                representative,
                size: members.len(),
                starred: members.len() == 6,
                verdict: verdict(representative),
                members,
            }
        })
        .collect()
}

pub fn class_of(t: TripTriple) -> EquivClass {
    enumerate_classes()
        .into_iter()
        .find(|c| c.members.contains(&t))
        .expect("every triple is in a class")
}

fn verdict(rep: TripTriple) -> Verdict {
    let same = |s: &str| class_contains(rep, s.parse().unwrap());
    if same("(e,e,e)") {
        Verdict::ThreeN
    } else if same("(e,23,23)") {
        Verdict::TwoNPlusOne
    } else if same("(e,12,e)") || same("(e,12,13)") || same("(e,132,e)") {
        Verdict::Degenerate
    } else if same("(e,13,e)") {
        Verdict::HiddenR2
    } else if same("(e,23,e)") {
        Verdict::Open
    } else {
        Verdict::AboveThreeN
    }
}

fn class_contains(rep: TripTriple, t: TripTriple) -> bool {
    let n = conjugate_normal_form(t);
    let m = conjugate_normal_form(twin(t));
    rep == n || rep == m
}
