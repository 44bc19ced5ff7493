use crate::alphabet::{Alphabet, Letter};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::word::Word;

/// One factor of a `*`-product: either an optional letter (the empty word or
/// any letter below `sigma`), or arbitrary words over a non-empty
/// downwards-closed letter set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    LetterOpt(Letter),
    Star(Vec<Letter>), // sorted ascending, non-empty, downwards-closed
}

impl Atom {
    /// Builds a star atom, checking the letter-set invariant.
    pub fn star(alpha: &Alphabet, mut letters: Vec<Letter>) -> Result<Atom> {
        letters.sort_unstable();
        letters.dedup();
        alpha.check_down_closed(&letters)?;
        Ok(Atom::Star(letters))
    }

    /// Does this atom's language contain the single letter `c`?
    fn admits_letter(&self, alpha: &Alphabet, c: Letter) -> bool {
        match self {
            Atom::LetterOpt(s) => alpha.leq(c, *s),
            Atom::Star(set) => set.binary_search(&c).is_ok(),
        }
    }
}

/// A concatenation of atoms; the empty product denotes `{ε}`. Its language
/// is an ideal (non-empty, downwards-closed, directed) of the subword order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct StarProduct {
    atoms: Vec<Atom>,
}

impl StarProduct {
    pub fn new(alpha: &Alphabet, atoms: Vec<Atom>) -> Result<StarProduct> {
        for atom in &atoms {
            match atom {
                Atom::LetterOpt(s) => {
                    if *s >= alpha.len() {
                        return Err(Error::Parse(format!("letter index {s} out of range")));
                    }
                }
                Atom::Star(set) => alpha.check_down_closed(set)?,
            }
        }
        Ok(StarProduct { atoms })
    }

    pub fn epsilon() -> StarProduct {
        StarProduct { atoms: Vec::new() }
    }

    /// `sigma_1^? ... sigma_n^?`: the principal ideal (downward closure) of a
    /// word.
    pub fn principal(w: &Word) -> StarProduct {
        StarProduct { atoms: w.letters().iter().map(|&a| Atom::LetterOpt(a)).collect() }
    }

    /// `(all letters)^*`: the full language, legal because the whole alphabet
    /// is downwards-closed in itself.
    pub fn full(alpha: &Alphabet) -> StarProduct {
        StarProduct { atoms: vec![Atom::Star((0..alpha.len()).collect())] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_epsilon(&self) -> bool {
        self.atoms.is_empty()
    }

    pub(crate) fn prepend(&self, atom: Atom) -> StarProduct {
        let mut atoms = Vec::with_capacity(self.atoms.len() + 1);
        atoms.push(atom);
        atoms.extend_from_slice(&self.atoms);
        StarProduct { atoms }
    }

    pub(crate) fn from_atoms_unchecked(atoms: Vec<Atom>) -> StarProduct {
        StarProduct { atoms }
    }

    /// Membership by dynamic programming over (atom index, word position):
    /// after each atom we keep the set of word positions reachable so far.
    pub fn contains(&self, alpha: &Alphabet, w: &Word) -> bool {
        let n = w.len();
        let letters = w.letters();
        let mut reachable = vec![false; n + 1];
        reachable[0] = true;
        for atom in &self.atoms {
            let mut next = vec![false; n + 1];
            match atom {
                Atom::LetterOpt(s) => {
                    for pos in 0..=n {
                        if reachable[pos] {
                            next[pos] = true; // epsilon
                            if pos < n && alpha.leq(letters[pos], *s) {
                                next[pos + 1] = true;
                            }
                        }
                    }
                }
                Atom::Star(set) => {
                    for pos in 0..=n {
                        if reachable[pos] && !next[pos] {
                            next[pos] = true;
                            let mut p = pos;
                            while p < n && set.binary_search(&letters[p]).is_ok() {
                                p += 1;
                                next[p] = true;
                            }
                        }
                    }
                }
            }
            reachable = next;
        }
        reachable[n]
    }

    /// A complete DFA for the same language.
    ///
    /// States track how far into the atom sequence a run can be. Every atom
    /// contains the empty word, so the set of simultaneously-possible
    /// boundaries is always a full suffix `{i..=n}` of the atom boundaries and
    /// can be represented by its minimum; the construction below is the
    /// subset construction collapsed accordingly, followed by minimization.
    pub fn to_dfa(&self, alpha: &Alphabet) -> Dfa {
        let n = self.atoms.len();
        let k = alpha.len();
        let dead = n + 1; // boundary states 0..=n, then the sink
        let mut delta = vec![vec![dead; k]; n + 2];
        for boundary in 0..=n {
            for c in 0..k {
                // moves available anywhere in the suffix {boundary..n}
                let mut best = dead;
                for (j, atom) in self.atoms.iter().enumerate().skip(boundary) {
                    if atom.admits_letter(alpha, c) {
                        let target = match atom {
                            Atom::LetterOpt(_) => j + 1,
                            Atom::Star(_) => j,
                        };
                        best = target;
                        break; // smallest reachable boundary wins
                    }
                }
                delta[boundary][c] = best;
            }
        }
        let mut accepting = vec![true; n + 2];
        accepting[dead] = false;
        Dfa::new(k, 0, accepting, delta).expect("star product DFA is well-formed").minimized()
    }

    /// Streams the language in length-lexicographic order. The stream is
    /// finite exactly when the product has no star atom.
    pub fn words<'a>(&'a self, alpha: &'a Alphabet) -> impl Iterator<Item = Word> + 'a {
        let max_len = if self.atoms.iter().any(|a| matches!(a, Atom::Star(_))) {
            None
        } else {
            Some(self.atoms.len())
        };
        alpha
            .words()
            .take_while(move |w| max_len.map_or(true, |m| w.len() <= m))
            .filter(move |w| self.contains(alpha, w))
    }

    /// Text form: whitespace-separated atoms, `x?` and `(xy)*`; the empty
    /// product renders as the empty string.
    pub fn render(&self, alpha: &Alphabet) -> String {
        let single = alpha.single_char_names();
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|atom| match atom {
                Atom::LetterOpt(s) => format!("{}?", alpha.name(*s)),
                Atom::Star(set) => {
                    let names: Vec<&str> = set.iter().map(|&a| alpha.name(a)).collect();
                    if single {
                        format!("({})*", names.concat())
                    } else {
                        format!("({})*", names.join(","))
                    }
                }
            })
            .collect();
        parts.join(" ")
    }

    pub fn parse(alpha: &Alphabet, text: &str) -> Result<StarProduct> {
        let mut atoms = Vec::new();
        for token in text.split_whitespace() {
            if let Some(body) = token.strip_suffix('?') {
                let a = alpha
                    .index_of(body)
                    .ok_or_else(|| Error::UnknownLetter(body.to_string()))?;
                atoms.push(Atom::LetterOpt(a));
            } else if let Some(body) =
                token.strip_prefix('(').and_then(|t| t.strip_suffix(")*"))
            {
                let names: Vec<String> = if body.contains(',') || !alpha.single_char_names() {
                    body.split(',').map(|s| s.trim().to_string()).collect()
                } else {
                    body.chars().map(|c| c.to_string()).collect()
                };
                let mut set = Vec::new();
                for name in names {
                    set.push(
                        alpha
                            .index_of(&name)
                            .ok_or_else(|| Error::UnknownLetter(name.clone()))?,
                    );
                }
                atoms.push(Atom::star(alpha, set)?);
            } else {
                return Err(Error::Parse(format!("unrecognized atom `{token}`")));
            }
        }
        StarProduct::new(alpha, atoms)
    }
}

/// A finite union of `*`-products, standing for a downwards-closed language.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IdealUnion {
    products: Vec<StarProduct>,
}

impl IdealUnion {
    pub fn empty() -> IdealUnion {
        IdealUnion { products: Vec::new() }
    }

    pub fn from_products(mut products: Vec<StarProduct>) -> IdealUnion {
        products.sort();
        products.dedup();
        IdealUnion { products }
    }

    pub fn products(&self) -> &[StarProduct] {
        &self.products
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn contains(&self, alpha: &Alphabet, w: &Word) -> bool {
        self.products.iter().any(|p| p.contains(alpha, w))
    }

    /// A complete DFA for the union language.
    pub fn to_dfa(&self, alpha: &Alphabet) -> Dfa {
        let mut acc = Dfa::constant(alpha.len(), false);
        for p in &self.products {
            acc = acc.unioned(&p.to_dfa(alpha)).minimized();
        }
        acc
    }

    /// One product per line; an empty line is the empty product. An empty
    /// union renders as the empty string.
    pub fn render(&self, alpha: &Alphabet) -> String {
        let mut out = String::new();
        for p in &self.products {
            out.push_str(&p.render(alpha));
            out.push('\n');
        }
        out
    }

    pub fn parse(alpha: &Alphabet, text: &str) -> Result<IdealUnion> {
        if text.is_empty() {
            return Ok(IdealUnion::empty());
        }
        let body = text.strip_suffix('\n').unwrap_or(text);
        let products = body
            .split('\n')
            .map(|line| StarProduct::parse(alpha, line))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealUnion::from_products(products))
    }
}

impl FromIterator<StarProduct> for IdealUnion {
    fn from_iter<T: IntoIterator<Item = StarProduct>>(iter: T) -> Self {
        IdealUnion::from_products(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ab, abc, chain_ab};

    fn sp(alpha: &Alphabet, text: &str) -> StarProduct {
        StarProduct::parse(alpha, text).unwrap()
    }

    #[test]
    fn every_product_contains_epsilon() {
        let alpha = ab();
        for text in ["", "a?", "(ab)* b?", "b? (a)* a?"] {
            assert!(sp(&alpha, text).contains(&alpha, &Word::empty()));
        }
    }

    #[test]
    fn membership_examples() {
        let alpha = ab();
        let p = sp(&alpha, "(b)* a? (a)*");
        assert!(p.contains(&alpha, &Word::parse(&alpha, "bba").unwrap()));
        assert!(!p.contains(&alpha, &Word::parse(&alpha, "ab").unwrap()));
        let eps = StarProduct::epsilon();
        assert!(eps.contains(&alpha, &Word::empty()));
        assert!(!eps.contains(&alpha, &Word::parse(&alpha, "a").unwrap()));
    }

    #[test]
    fn principal_ideal_is_downward_closure() {
        let alpha = chain_ab();
        // w = b over a <= b: language of b? is {eps, a, b}
        let p = StarProduct::principal(&Word::parse(&alpha, "b").unwrap());
        let members: Vec<Word> = p.words(&alpha).collect();
        assert_eq!(
            members,
            vec![
                Word::empty(),
                Word::parse(&alpha, "a").unwrap(),
                Word::parse(&alpha, "b").unwrap()
            ]
        );
        assert_eq!(StarProduct::principal(&Word::empty()), StarProduct::epsilon());
    }

    #[test]
    fn star_atom_must_be_downwards_closed() {
        let alpha = chain_ab();
        assert!(Atom::star(&alpha, vec![1]).is_err()); // {b} misses a <= b
        assert!(Atom::star(&alpha, vec![0, 1]).is_ok());
        assert!(Atom::star(&alpha, vec![]).is_err());
    }

    #[test]
    fn dfa_agrees_with_membership() {
        let alpha = ab();
        for text in ["", "a?", "(b)* a? (a)*", "(ab)* a?", "b? b?"] {
            let p = sp(&alpha, text);
            let dfa = p.to_dfa(&alpha);
            for w in alpha.words().take_while(|w| w.len() <= 6) {
                assert_eq!(dfa.accepts(&w), p.contains(&alpha, &w), "product {text} word {w:?}");
            }
        }
    }

    #[test]
    fn dfa_of_epsilon_product_has_two_states() {
        let alpha = ab();
        assert_eq!(StarProduct::epsilon().to_dfa(&alpha).state_count(), 2);
        assert_eq!(StarProduct::full(&alpha).to_dfa(&alpha).state_count(), 1);
    }

    #[test]
    fn enumeration_is_finite_without_star_atoms() {
        let alpha = ab();
        let words: Vec<Word> = sp(&alpha, "a?").words(&alpha).collect();
        assert_eq!(words, vec![Word::empty(), Word::parse(&alpha, "a").unwrap()]);
    }

    #[test]
    fn enumeration_matches_filtered_stream() {
        let alpha = ab();
        let p = sp(&alpha, "(b)* a?");
        let got: Vec<Word> = p.words(&alpha).take(6).collect();
        let expect: Vec<Word> = alpha
            .words()
            .filter(|w| p.contains(&alpha, w))
            .take(6)
            .collect();
        assert_eq!(got, expect);
        let rendered: Vec<String> = got.iter().map(|w| w.render(&alpha)).collect();
        assert_eq!(rendered, vec!["", "a", "b", "ba", "bb", "bba"]);
    }

    #[test]
    fn downward_closedness_of_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let k = rng.gen_range(1..=3);
            let alpha = crate::instances::random_alphabet(&mut rng, k, 0.4).unwrap();
            let p = crate::instances::random_star_product(&mut rng, &alpha, 4);
            let len = rng.gen_range(0..=5);
            let w = crate::instances::random_word(&mut rng, &alpha, len);
            if p.contains(&alpha, &w) {
                // every subword stays inside
                for u in alpha.words().take_while(|u| u.len() <= w.len()) {
                    if alpha.subword_leq(&u, &w) {
                        assert!(p.contains(&alpha, &u));
                    }
                }
            }
        }
    }

    #[test]
    fn directedness_of_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..40 {
            let k = rng.gen_range(1..=3);
            let alpha = crate::instances::random_alphabet(&mut rng, k, 0.4).unwrap();
            let p = crate::instances::random_star_product(&mut rng, &alpha, 3);
            let small: Vec<Word> = p
                .words(&alpha)
                .take_while(|w| w.len() <= 4)
                .take(12)
                .collect();
            for u in &small {
                for v in &small {
                    let bound = u.len() + v.len();
                    let dominator = p
                        .words(&alpha)
                        .take_while(|z| z.len() <= bound)
                        .find(|z| alpha.subword_leq(u, z) && alpha.subword_leq(v, z));
                    assert!(
                        dominator.is_some(),
                        "no common dominator for {u:?}, {v:?} in {}",
                        p.render(&alpha)
                    );
                }
            }
        }
    }

    #[test]
    fn parse_render_round_trip() {
        let alpha = abc();
        for text in ["", "a? b? c?", "(ab)* c? (abc)*"] {
            let p = sp(&alpha, text);
            assert_eq!(p, StarProduct::parse(&alpha, &p.render(&alpha)).unwrap());
        }
        let union = IdealUnion::from_products(vec![sp(&alpha, "a?"), sp(&alpha, "(ab)*")]);
        let text = union.render(&alpha);
        assert_eq!(IdealUnion::parse(&alpha, &text).unwrap(), union);
    }
}
