//! Sampled complexity p(n) of an (e,e,e) Gauss language and of the language
//! of a conjugate map, which share one profile.

use trip::algebra::TripTriple;
use trip::equivalence::conjugates;
use trip::language::{complexity_profile, profile_csv};
use trip::sample::expand_language_sample;
use trip::word::{random_gauss, CodingSeq, Variant};

fn main() -> trip::Result<()> {
    let seq = CodingSeq::Gauss(random_gauss(7, 200, 5));
    let n_max = 20;
    for t in conjugates(TripTriple::EEE).into_iter().take(3) {
        let l = expand_language_sample(&seq, t, Variant::Canonical13, n_max + 2)?;
        let p = complexity_profile(&l, n_max)?;
        println!("{t}: p(1..={n_max}) = {:?}", &p[1..]);
    }
    let l = expand_language_sample(&seq, TripTriple::EEE, Variant::Canonical13, n_max + 2)?;
    print!("{}", profile_csv(&complexity_profile(&l, n_max)?));
    Ok(())
}
