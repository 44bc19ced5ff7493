use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::word::Word;

/// A finite set of words, standing for the upward closure of its members.
/// Stored sorted in length-lexicographic order without duplicates, so equal
/// bases compare equal structurally.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Basis {
    words: Vec<Word>,
}

impl Basis {
    pub fn empty() -> Self {
        Basis { words: Vec::new() }
    }

    pub fn from_words(mut words: Vec<Word>) -> Self {
        words.sort();
        words.dedup();
        Basis { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Inserts a word, keeping the sorted-dedup representation.
    /// Returns false when the word was already present.
    pub fn insert(&mut self, w: Word) -> bool {
        match self.words.binary_search(&w) {
            Ok(_) => false,
            Err(pos) => {
                self.words.insert(pos, w);
                true
            }
        }
    }

    /// Membership in the upward closure: true iff some basis word embeds
    /// into `w`.
    pub fn closure_contains(&self, alpha: &Alphabet, w: &Word) -> bool {
        self.words.iter().any(|b| alpha.subword_leq(b, w))
    }

    /// Removes every word dominated by another kept word. Among words that
    /// are mutually embeddable the length-lexicographically least one is
    /// kept. The upward closure is unchanged.
    pub fn minimized(&self, alpha: &Alphabet) -> Basis {
        let ws = &self.words; // already sorted length-lex
        let mut kept = Vec::new();
        'outer: for (i, w) in ws.iter().enumerate() {
            for (j, v) in ws.iter().enumerate() {
                if i == j || !alpha.subword_leq(v, w) {
                    continue;
                }
                if !alpha.subword_leq(w, v) {
                    continue 'outer; // strictly dominated
                }
                if j < i {
                    continue 'outer; // equivalent to an earlier (smaller) word
                }
            }
            kept.push(w.clone());
        }
        Basis { words: kept }
    }

    /// Parses one word per line; an empty line is the empty word, an empty
    /// file the empty basis.
    pub fn parse(alpha: &Alphabet, text: &str) -> Result<Basis> {
        if text.is_empty() {
            return Ok(Basis::empty());
        }
        let body = text.strip_suffix('\n').unwrap_or(text);
        let words = body
            .split('\n')
            .map(|line| Word::parse(alpha, line))
            .collect::<Result<Vec<_>>>()?;
        Ok(Basis::from_words(words))
    }

    /// Renders one word per line in length-lexicographic order.
    pub fn render(&self, alpha: &Alphabet) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(&w.render(alpha));
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Word> for Basis {
    fn from_iter<T: IntoIterator<Item = Word>>(iter: T) -> Self {
        Basis::from_words(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{abc, brute_subword_leq, chain_ab, parse_words};

    #[test]
    fn minimize_drops_dominated_words() {
        let alpha = abc();
        let basis = parse_words(&alpha, &["a", "aa"]);
        assert_eq!(basis.minimized(&alpha), parse_words(&alpha, &["a"]));
    }

    #[test]
    fn minimize_keeps_antichain() {
        let alpha = abc();
        let basis = parse_words(&alpha, &["a", "bb", "ccc"]);
        assert_eq!(basis.minimized(&alpha), basis);
    }

    #[test]
    fn minimize_uses_letter_order() {
        let alpha = chain_ab();
        let basis = parse_words(&alpha, &["a", "b"]);
        assert_eq!(basis.minimized(&alpha), parse_words(&alpha, &["a"]));
    }

    #[test]
    fn minimize_keeps_least_equivalent_representative() {
        // a and b equivalent: {b} minimizes to {a}? No: only words present in
        // the basis are candidates, so {b} stays {b}; {a, b} keeps a.
        let alpha = crate::alphabet::Alphabet::with_pairs(vec!["a", "b"], &[(0, 1), (1, 0)]).unwrap();
        let basis = parse_words(&alpha, &["b", "a"]);
        assert_eq!(basis.minimized(&alpha), parse_words(&alpha, &["a"]));
        let only_b = parse_words(&alpha, &["b"]);
        assert_eq!(only_b.minimized(&alpha), only_b);
    }

    #[test]
    fn closure_membership_brute_checked() {
        let alpha = abc();
        let basis = parse_words(&alpha, &["a", "bb", "ccc"]);
        // cbc contains no a, only one b, only two c
        let cbc = crate::word::Word::parse(&alpha, "cbc").unwrap();
        let cbcb = crate::word::Word::parse(&alpha, "cbcb").unwrap();
        for (word, expect) in [(&cbc, false), (&cbcb, true)] {
            let brute = basis
                .words()
                .iter()
                .any(|b| brute_subword_leq(&alpha, b, word));
            assert_eq!(brute, expect);
            assert_eq!(basis.closure_contains(&alpha, word), expect);
        }
    }

    #[test]
    fn empty_basis_contains_nothing() {
        let alpha = abc();
        let basis = Basis::empty();
        for w in alpha.words().take(20) {
            assert!(!basis.closure_contains(&alpha, &w));
        }
    }

    #[test]
    fn minimize_idempotent_and_closure_preserving() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let k = rng.gen_range(1..=3);
            let alpha = crate::instances::random_alphabet(&mut rng, k, 0.4).unwrap();
            let basis = crate::instances::random_basis(&mut rng, &alpha, 5, 4);
            let min = basis.minimized(&alpha);
            assert_eq!(min.minimized(&alpha), min);
            for w in alpha.words().take_while(|w| w.len() <= 6).take(400) {
                assert_eq!(
                    basis.closure_contains(&alpha, &w),
                    min.closure_contains(&alpha, &w)
                );
            }
        }
    }

    #[test]
    fn parse_render_round_trip_with_empty_word() {
        let alpha = abc();
        let basis = parse_words(&alpha, &["", "a", "bb"]);
        let text = basis.render(&alpha);
        assert_eq!(text, "\na\nbb\n");
        assert_eq!(Basis::parse(&alpha, &text).unwrap(), basis);
        assert_eq!(Basis::parse(&alpha, "").unwrap(), Basis::empty());
    }
}
