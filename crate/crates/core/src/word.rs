use std::cmp::Ordering;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// A finite word: a sequence of letter indices, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, a: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    /// All prefixes, shortest first, including the empty word and `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.0.len()).map(move |i| Word(self.0[..i].to_vec()))
    }

    /// Renders using the alphabet's letter names: concatenated when all names
    /// are single characters, comma-separated otherwise. The empty word
    /// renders as the empty string.
    pub fn render(&self, alpha: &Alphabet) -> String {
        let names: Vec<&str> = self.0.iter().map(|&a| alpha.name(a)).collect();
        if alpha.single_char_names() {
            names.concat()
        } else {
            names.join(",")
        }
    }

    /// Inverse of [`Word::render`]; the empty string parses to the empty word.
    pub fn parse(alpha: &Alphabet, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if alpha.single_char_names() && !text.contains(',') {
            for c in text.chars() {
                let s = c.to_string();
                letters.push(
                    alpha
                        .index_of(&s)
                        .ok_or_else(|| Error::UnknownLetter(s.clone()))?,
                );
            }
        } else {
            for part in text.split(',') {
                let part = part.trim();
                letters.push(
                    alpha
                        .index_of(part)
                        .ok_or_else(|| Error::UnknownLetter(part.to_string()))?,
                );
            }
        }
        Ok(Word(letters))
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "w[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Length-lexicographic order: length first, then lexicographic by letter
/// index. This is the canonical order used everywhere words are sorted or
/// streamed.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Alphabet {
    /// The subword embedding order: `u` embeds into `w` when some
    /// increasing choice of positions in `w` dominates `u` letter by letter.
    /// Decided by a left-greedy scan, whose correctness against exhaustive
    /// search is a test obligation.
    pub fn subword_leq(&self, u: &Word, w: &Word) -> bool {
        let mut sought = u.letters().iter();
        let mut next = sought.next();
        for &c in w.letters() {
            match next {
                Some(&n) => {
                    if self.leq(n, c) {
                        next = sought.next();
                    }
                }
                None => break,
            }
        }
        next.is_none()
    }

    /// Two words are equivalent when each embeds into the other.
    pub fn subword_equiv(&self, u: &Word, w: &Word) -> bool {
        self.subword_leq(u, w) && self.subword_leq(w, u)
    }

    /// Streams every word over this alphabet exactly once, in
    /// length-lexicographic order, starting from the empty word.
    pub fn words(&self) -> Words {
        Words { k: self.len(), next: Some(Vec::new()) }
    }
}

/// Infinite length-lexicographic word stream (see [`Alphabet::words`]).
pub struct Words {
    k: usize,
    next: Option<Vec<Letter>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let out = Word::new(current.clone());
        // Increment as a base-k numeral, most significant digit first;
        // on overflow move to the next length.
        let mut digits = current;
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits = vec![0; digits.len() + 1];
                break;
            }
            i -= 1;
            if digits[i] + 1 < self.k {
                digits[i] += 1;
                for d in digits.iter_mut().skip(i + 1) {
                    *d = 0;
                }
                break;
            }
        }
        self.next = Some(digits);
        Some(out)
    }
}
