//! Quotients of the word order along monotone surjective monoid maps, and
//! the letter-counting instance onto vectors of naturals. Running the word
//! algorithms through a lifted oracle recovers basis computation for
//! componentwise-ordered tuples.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::oracle::IdealOracle;
use crate::star::{Atom, StarProduct};
use crate::word::Word;

/// A finitely generated monoid quotient of the word monoid: a surjective,
/// order-monotone evaluation map together with the induced image of word
/// ideals. Only the two capabilities the lifting argument needs are exposed.
pub trait MonoidQuotient {
    type Element;
    type Ideal;

    fn alphabet(&self) -> &Alphabet;
    fn eval(&self, w: &Word) -> Self::Element;
    /// The downward closure of the image of the product's language, as an
    /// ideal of the target order.
    fn ideal_image(&self, p: &StarProduct) -> Self::Ideal;
    /// Decidable target order when available; None means undecidable, in
    /// which case image bases cannot be minimized.
    fn element_leq(&self, a: &Self::Element, b: &Self::Element) -> Option<bool>;
}

/// Upper bound of one vector-ideal component: every natural below a finite
/// bound (which is at least 1), or everything.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    fn admits(&self, x: u64) -> bool {
        match self {
            Bound::Finite(z) => x < *z,
            Bound::Infinite => true,
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Finite(z) => write!(f, "{z}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// An ideal of componentwise-ordered vectors of naturals: all vectors
/// strictly below the bounds in every component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NatIdeal {
    bounds: Vec<Bound>,
}

impl NatIdeal {
    pub fn new(bounds: Vec<Bound>) -> Result<Self> {
        for (i, b) in bounds.iter().enumerate() {
            if matches!(b, Bound::Finite(0)) {
                return Err(Error::ZeroIdealBound(i));
            }
        }
        Ok(NatIdeal { bounds })
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.bounds.len() && v.iter().zip(&self.bounds).all(|(&x, b)| b.admits(x))
    }

    /// Comma-separated bounds, `inf` for unbounded components.
    pub fn render(&self) -> String {
        self.bounds.iter().map(Bound::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bounds = text
            .trim()
            .split(',')
            .map(|part| {
                let part = part.trim();
                if part == "inf" {
                    Ok(Bound::Infinite)
                } else {
                    part.parse::<u64>()
                        .map(Bound::Finite)
                        .map_err(|_| Error::Parse(format!("bad bound `{part}`")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        NatIdeal::new(bounds)
    }
}

/// Letter occurrence counts: a monoid homomorphism from words under
/// concatenation to vectors of naturals under addition.
pub fn parikh(w: &Word, k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; k];
    for &a in w.letters() {
        counts[a] += 1;
    }
    counts
}

/// The letter-counting quotient onto `N^k`. Requires a discrete alphabet:
/// the image formula below reads letter occurrences off the product
/// syntactically, which is only valid for the equality order.
pub struct ParikhMap {
    alpha: Alphabet,
}

impl ParikhMap {
    pub fn new(alpha: Alphabet) -> Result<Self> {
        if !alpha.is_discrete() {
            return Err(Error::NonDiscreteAlphabet);
        }
        Ok(ParikhMap { alpha })
    }
}

impl MonoidQuotient for ParikhMap {
    type Element = Vec<u64>;
    type Ideal = NatIdeal;

    fn alphabet(&self) -> &Alphabet {
        &self.alpha
    }

    fn eval(&self, w: &Word) -> Vec<u64> {
        parikh(w, self.alpha.len())
    }

    /// Component `i` is unbounded when letter `i` occurs in some star atom,
    /// and otherwise bounded by one more than its count among the optional
    /// letters.
    fn ideal_image(&self, p: &StarProduct) -> NatIdeal {
        let k = self.alpha.len();
        let mut bounds = Vec::with_capacity(k);
        for i in 0..k {
            let starred = p.atoms().iter().any(|a| match a {
                Atom::Star(set) => set.contains(&i),
                Atom::LetterOpt(_) => false,
            });
            if starred {
                bounds.push(Bound::Infinite);
            } else {
                let count = p
                    .atoms()
                    .iter()
                    .filter(|a| matches!(a, Atom::LetterOpt(s) if *s == i))
                    .count() as u64;
                bounds.push(Bound::Finite(count + 1));
            }
        }
        NatIdeal { bounds }
    }

    fn element_leq(&self, a: &Vec<u64>, b: &Vec<u64>) -> Option<bool> {
        Some(a.iter().zip(b).all(|(x, y)| x <= y))
    }
}

/// A finite set of vectors standing for its componentwise upward closure.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VecBasis {
    rows: Vec<Vec<u64>>,
}

impl VecBasis {
    pub fn empty() -> Self {
        VecBasis { rows: Vec::new() }
    }

    pub fn from_rows(mut rows: Vec<Vec<u64>>) -> Self {
        rows.sort();
        rows.dedup();
        VecBasis { rows }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn width(&self) -> Option<usize> {
        self.rows.first().map(Vec::len)
    }

    /// Componentwise antichain: drops any vector dominating another member.
    pub fn minimized(&self) -> VecBasis {
        let dominated = |v: &Vec<u64>| {
            self.rows
                .iter()
                .any(|u| u != v && u.iter().zip(v).all(|(x, y)| x <= y))
        };
        VecBasis { rows: self.rows.iter().filter(|v| !dominated(v)).cloned().collect() }
    }

    pub fn closure_contains(&self, v: &[u64]) -> bool {
        self.rows
            .iter()
            .any(|b| b.len() == v.len() && b.iter().zip(v).all(|(x, y)| x <= y))
    }

    /// One comma-separated tuple per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(
                &row.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            );
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("line {}: bad entry `{p}`", no + 1)))
                })
                .collect::<Result<Vec<u64>>>()?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::Parse(format!("line {}: expected {w} entries", no + 1)))
                }
                _ => {}
            }
            rows.push(row);
        }
        Ok(VecBasis::from_rows(rows))
    }
}

/// Oracle on vector ideals for `U = ↑rows`: an ideal meets the closure iff it
/// contains a basis row (vector ideals are downwards-closed).
pub fn vec_oracle(basis: &VecBasis) -> impl Fn(&NatIdeal) -> bool + Sync + '_ {
    move |ideal| basis.rows().iter().any(|row| ideal.contains(row))
}

/// Ideal oracle over words obtained by composing a quotient's ideal image
/// with an oracle on target ideals: a product meets the preimage of `U`
/// exactly when its image ideal meets `U`.
pub struct LiftedOracle<Q, F> {
    quotient: Q,
    target_oracle: F,
    count: AtomicU64,
}

impl<Q, F> LiftedOracle<Q, F> {
    pub fn new(quotient: Q, target_oracle: F) -> Self {
        LiftedOracle { quotient, target_oracle, count: AtomicU64::new(0) }
    }
}

impl<Q, F> IdealOracle for LiftedOracle<Q, F>
where
    Q: MonoidQuotient + Sync,
    Q::Ideal: Sync,
    F: Fn(&Q::Ideal) -> bool + Sync,
{
    fn alphabet(&self) -> &Alphabet {
        self.quotient.alphabet()
    }

    fn intersects(&self, p: &StarProduct) -> bool {
        self.count.fetch_add(1, Ordering::Relaxed);
        (self.target_oracle)(&self.quotient.ideal_image(p))
    }

    fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

/// Algorithm selector for [`vector_basis`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VectorAlgo {
    Learning,
    Rewriting,
}

/// Computes the minimal componentwise basis of an upwards-closed subset of
/// `N^k` from an oracle on vector ideals, by lifting to words over a
/// discrete `k`-letter alphabet, running the selected word algorithm, and
/// mapping the word basis through the letter counts. Minimizing the image is
/// sound here because the componentwise order is decidable.
pub fn vector_basis<F>(target_oracle: F, k: usize, algo: VectorAlgo) -> Result<VecBasis>
where
    F: Fn(&NatIdeal) -> bool + Sync,
{
    let alpha = discrete_alphabet(k)?;
    let quotient = ParikhMap::new(alpha)?;
    let width = quotient.alphabet().len();
    let oracle = LiftedOracle::new(quotient, target_oracle);
    let words = match algo {
        VectorAlgo::Rewriting => crate::algorithms::rewriting_basis(&oracle),
        VectorAlgo::Learning => crate::algorithms::learning_basis(&oracle)?.0,
    };
    let rows = words.words().iter().map(|w| parikh(w, width)).collect();
    Ok(VecBasis::from_rows(rows).minimized())
}

/// `k` single-character letters when possible, `x0..` names otherwise.
pub fn discrete_alphabet(k: usize) -> Result<Alphabet> {
    let names: Vec<String> = if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("x{i}")).collect()
    };
    Alphabet::discrete(names)
}
