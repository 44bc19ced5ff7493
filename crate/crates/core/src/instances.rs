//! Seeded random instance generation for tests, sweeps and the command-line
//! generator. Everything is deterministic in the caller's RNG state.

use rand::Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::basis::Basis;
use crate::dfa::Dfa;
use crate::error::Result;
use crate::parikh::VecBasis;
use crate::star::{Atom, StarProduct};
use crate::word::Word;

/// Random quasi-ordered alphabet on `k` letters: each ordered pair is related
/// with probability `density`, then closed reflexively and transitively.
/// Density 0 gives the discrete order, density 1 makes all letters
/// equivalent.
pub fn random_alphabet(rng: &mut impl Rng, k: usize, density: f64) -> Result<Alphabet> {
    let names: Vec<String> = if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("x{i}")).collect()
    };
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b && rng.gen_bool(density) {
                pairs.push((a, b));
            }
        }
    }
    Alphabet::with_pairs(names, &pairs)
}

pub fn random_word(rng: &mut impl Rng, alpha: &Alphabet, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.gen_range(0..alpha.len())).collect())
}

/// Random basis with up to `max_words` words of length up to `max_len`.
pub fn random_basis(
    rng: &mut impl Rng,
    alpha: &Alphabet,
    max_words: usize,
    max_len: usize,
) -> Basis {
    let count = rng.gen_range(0..=max_words);
    Basis::from_words(
        (0..count)
            .map(|_| {
                let len = rng.gen_range(0..=max_len);
                random_word(rng, alpha, len)
            })
            .collect(),
    )
}

/// Random complete DFA with up to `max_states` states, trimmed to its
/// reachable part.
pub fn random_dfa(rng: &mut impl Rng, alpha: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let delta = (0..n)
        .map(|_| (0..alpha.len()).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alpha.len(), 0, accepting, delta)
        .expect("random automaton is well-formed")
        .trim_reachable()
}

/// Random `*`-product with up to `max_atoms` atoms; star atoms use random
/// downward-closed letter sets.
pub fn random_star_product(rng: &mut impl Rng, alpha: &Alphabet, max_atoms: usize) -> StarProduct {
    let count = rng.gen_range(0..=max_atoms);
    let atoms = (0..count)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Atom::LetterOpt(rng.gen_range(0..alpha.len()))
            } else {
                let seed: Vec<Letter> =
                    (0..alpha.len()).filter(|_| rng.gen_bool(0.5)).collect();
                let seed = if seed.is_empty() { vec![rng.gen_range(0..alpha.len())] } else { seed };
                Atom::star(alpha, alpha.down_close(&seed)).expect("closed set is valid")
            }
        })
        .collect();
    StarProduct::new(alpha, atoms).expect("random product is valid")
}

/// Random vector basis for the componentwise order on `N^k`.
pub fn random_vec_basis(
    rng: &mut impl Rng,
    k: usize,
    max_rows: usize,
    max_entry: u64,
) -> VecBasis {
    let count = rng.gen_range(0..=max_rows);
    VecBasis::from_rows(
        (0..count)
            .map(|_| (0..k).map(|_| rng.gen_range(0..=max_entry)).collect())
            .collect(),
    )
}
