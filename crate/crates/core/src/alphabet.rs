use crate::error::{Error, Result};

/// Index into an [`Alphabet`]'s letter table.
pub type Letter = usize;

/// A finite set of named letters together with a quasi-order (a reflexive
/// and transitive relation) on them.
///
/// The relation is stored as a dense `k x k` boolean matrix whose closure
/// properties are checked at construction time, so lookups are plain reads.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    leq: Vec<bool>, // row-major: leq[a * k + b] <=> a <= b
}

impl Alphabet {
    /// Builds an alphabet from letter names and an explicit relation matrix.
    /// The matrix must already be reflexive and transitive.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let k = names.len();
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains(',') {
                return Err(Error::Parse(format!("invalid letter name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        if leq.len() != k || leq.iter().any(|row| row.len() != k) {
            return Err(Error::Parse("order matrix has wrong shape".into()));
        }
        let flat: Vec<bool> = leq.into_iter().flatten().collect();
        for i in 0..k {
            if !flat[i * k + i] {
                return Err(Error::NotReflexive(i));
            }
        }
        for a in 0..k {
            for b in 0..k {
                if !flat[a * k + b] {
                    continue;
                }
                for c in 0..k {
                    if flat[b * k + c] && !flat[a * k + c] {
                        return Err(Error::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(Alphabet { names, leq: flat })
    }

    /// Builds an alphabet with the discrete (equality) order.
    pub fn discrete<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let k = names.len();
        let leq = (0..k).map(|i| (0..k).map(|j| i == j).collect()).collect();
        Alphabet::new(names, leq)
    }

    /// Builds an alphabet from `a <= b` pairs; the reflexive-transitive
    /// closure of the pairs is computed here.
    pub fn with_pairs<S: Into<String>>(names: Vec<S>, pairs: &[(Letter, Letter)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let k = names.len();
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for &(a, b) in pairs {
            if a >= k || b >= k {
                return Err(Error::Parse(format!("letter index {} out of range", a.max(b))));
            }
            leq[a * k + b] = true;
        }
        // Floyd-Warshall closure.
        for m in 0..k {
            for a in 0..k {
                if leq[a * k + m] {
                    for b in 0..k {
                        if leq[m * k + b] {
                            leq[a * k + b] = true;
                        }
                    }
                }
            }
        }
        let rows = (0..k).map(|a| leq[a * k..(a + 1) * k].to_vec()).collect();
        Alphabet::new(names, rows)
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one letter
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name)
    }

    /// Letter order lookup. Panics if an index is out of range.
    pub fn leq(&self, a: Letter, b: Letter) -> bool {
        let k = self.len();
        assert!(a < k && b < k, "letter index out of range");
        self.leq[a * k + b]
    }

    /// Two letters are equivalent when each is below the other.
    pub fn equivalent(&self, a: Letter, b: Letter) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// True when the order is equality only.
    pub fn is_discrete(&self) -> bool {
        let k = self.len();
        (0..k).all(|a| (0..k).all(|b| self.leq[a * k + b] == (a == b)))
    }

    /// All letters below `a`, in index order.
    pub fn down(&self, a: Letter) -> Vec<Letter> {
        (0..self.len()).filter(|&b| self.leq(b, a)).collect()
    }

    /// All letters above `a`, in index order.
    pub fn up(&self, a: Letter) -> Vec<Letter> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    /// Downward closure of a letter set, in index order.
    pub fn down_close(&self, set: &[Letter]) -> Vec<Letter> {
        (0..self.len())
            .filter(|&b| set.iter().any(|&a| self.leq(b, a)))
            .collect()
    }

    /// Checks that `set` is non-empty and downwards-closed.
    pub fn check_down_closed(&self, set: &[Letter]) -> Result<()> {
        if set.is_empty() {
            return Err(Error::EmptyStarAtom);
        }
        for &a in set {
            for b in 0..self.len() {
                if self.leq(b, a) && !set.contains(&b) {
                    return Err(Error::StarAtomNotClosed { present: a, missing: b });
                }
            }
        }
        Ok(())
    }

    /// Minimal elements of `set` under the letter order (all representatives
    /// of minimal equivalence classes are kept).
    pub fn minimal_of(&self, set: &[Letter]) -> Vec<Letter> {
        set.iter()
            .copied()
            .filter(|&a| set.iter().all(|&b| !self.leq(b, a) || self.leq(a, b)))
            .collect()
    }

    /// Maximal elements of `set` under the letter order.
    pub fn maximal_of(&self, set: &[Letter]) -> Vec<Letter> {
        set.iter()
            .copied()
            .filter(|&a| set.iter().all(|&b| !self.leq(a, b) || self.leq(b, a)))
            .collect()
    }

    /// True when every letter name is a single character; words then render
    /// without separators.
    pub fn single_char_names(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses the alphabet text format:
    ///
    /// ```text
    /// letters: a b c
    /// le: a b
    /// ```
    ///
    /// One `le:` line per non-reflexive related pair; the reflexive-transitive
    /// closure is applied on load.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut pairs: Vec<(Letter, Letter)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("letters:") {
                if names.is_some() {
                    return Err(Error::Parse(format!("line {}: duplicate letters line", no + 1)));
                }
                names = Some(rest.split_whitespace().map(String::from).collect());
            } else if let Some(rest) = line.strip_prefix("le:") {
                let names = names
                    .as_ref()
                    .ok_or_else(|| Error::Parse(format!("line {}: le before letters", no + 1)))?;
                let mut it = rest.split_whitespace();
                let (x, y) = match (it.next(), it.next(), it.next()) {
                    (Some(x), Some(y), None) => (x, y),
                    _ => return Err(Error::Parse(format!("line {}: expected `le: x y`", no + 1))),
                };
                let ix = names
                    .iter()
                    .position(|n| n == x)
                    .ok_or_else(|| Error::UnknownLetter(x.to_string()))?;
                let iy = names
                    .iter()
                    .position(|n| n == y)
                    .ok_or_else(|| Error::UnknownLetter(y.to_string()))?;
                pairs.push((ix, iy));
            } else {
                return Err(Error::Parse(format!("line {}: unrecognized line `{line}`", no + 1)));
            }
        }
        let names = names.ok_or_else(|| Error::Parse("missing letters line".into()))?;
        Alphabet::with_pairs(names, &pairs)
    }

    /// Renders the canonical text form (full non-reflexive relation).
    pub fn render(&self) -> String {
        let mut out = format!("letters: {}\n", self.names.join(" "));
        let k = self.len();
        for a in 0..k {
            for b in 0..k {
                if a != b && self.leq(a, b) {
                    out.push_str(&format!("le: {} {}\n", self.names[a], self.names[b]));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Alphabet({})", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn ab() -> Alphabet {
        Alphabet::discrete(vec!["a", "b"]).unwrap()
    }

    #[test]
    fn reflexivity_on_equality_alphabet() {
        let alpha = ab();
        assert!(alpha.leq(0, 0));
        assert!(alpha.leq(1, 1));
        assert!(!alpha.leq(0, 1));
        assert!(!alpha.leq(1, 0));
    }

    #[test]
    fn chain_order() {
        // a <= b
        let alpha = Alphabet::with_pairs(vec!["a", "b"], &[(0, 1)]).unwrap();
        assert!(alpha.leq(0, 1));
        assert!(!alpha.leq(1, 0));
        assert_eq!(alpha.down(1), vec![0, 1]);
        assert_eq!(alpha.up(0), vec![0, 1]);
    }

    #[test]
    #[should_panic(expected = "letter index out of range")]
    fn leq_index_out_of_range_panics() {
        ab().leq(0, 2);
    }

    #[test]
    fn transitive_closure_applied() {
        let alpha = Alphabet::with_pairs(vec!["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
        assert!(alpha.leq(0, 2));
    }

    #[test]
    fn rejects_non_transitive_matrix() {
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let mut rows = vec![vec![false; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = true;
        }
        rows[0][1] = true;
        rows[1][2] = true; // missing 0 <= 2
        assert!(matches!(Alphabet::new(names, rows), Err(Error::NotTransitive(0, 1, 2))));
    }

    #[test]
    fn rejects_empty_alphabet() {
        assert!(matches!(Alphabet::discrete(Vec::<String>::new()), Err(Error::EmptyAlphabet)));
    }

    #[test]
    fn equivalent_letters_allowed() {
        let alpha = Alphabet::with_pairs(vec!["a", "b"], &[(0, 1), (1, 0)]).unwrap();
        assert!(alpha.equivalent(0, 1));
        assert!(!alpha.is_discrete());
    }

    #[test]
    fn parse_render_round_trip() {
        let alpha = Alphabet::parse("letters: a b c\nle: a b\nle: b c\n").unwrap();
        assert!(alpha.leq(0, 2)); // closure
        let text = alpha.render();
        let again = Alphabet::parse(&text).unwrap();
        assert_eq!(alpha, again);
        assert_eq!(text, again.render());
    }

    #[test]
    fn parse_rejects_unknown_letter() {
        assert!(Alphabet::parse("letters: a\nle: a z\n").is_err());
    }

    #[test]
    fn minimal_and_maximal_respect_equivalences() {
        let alpha = Alphabet::with_pairs(vec!["a", "b", "c"], &[(0, 1), (1, 0), (0, 2)]).unwrap();
        // a and b are equivalent, both below c
        let min = alpha.minimal_of(&[0, 1, 2]);
        assert_eq!(min, vec![0, 1]);
        let max = alpha.maximal_of(&[0, 1, 2]);
        assert_eq!(max, vec![2]);
    }
}
