use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

pub type StateId = usize;

/// A complete deterministic finite automaton: every state has exactly one
/// transition per letter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    letter_count: usize,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<Vec<StateId>>, // delta[state][letter]
}

impl Dfa {
    pub fn new(
        letter_count: usize,
        initial: StateId,
        accepting: Vec<bool>,
        delta: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if accepting.len() != n {
            return Err(Error::InvalidAutomaton("accepting vector length mismatch".into()));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != letter_count {
                return Err(Error::IncompleteAutomaton { state: q, letter: row.len() });
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition from {q} to missing state {bad}"
                )));
            }
        }
        Ok(Dfa { letter_count, initial, accepting, delta })
    }

    /// One-state automaton accepting everything or nothing.
    pub fn constant(letter_count: usize, accept: bool) -> Self {
        Dfa {
            letter_count,
            initial: 0,
            accepting: vec![accept],
            delta: vec![vec![0; letter_count]],
        }
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn letter_count(&self) -> usize {
        self.letter_count
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn next(&self, q: StateId, a: Letter) -> StateId {
        self.delta[q][a]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn run_from(&self, q: StateId, w: &Word) -> StateId {
        w.letters().iter().fold(q, |s, &a| self.delta[s][a])
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.accepting[self.run_from(self.initial, w)]
    }

    /// True when every state is reachable from the initial state.
    pub fn is_reachable(&self) -> bool {
        self.reachable_mask().iter().all(|&r| r)
    }

    fn reachable_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for a in 0..self.letter_count {
                let t = self.delta[q][a];
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Restricts to reachable states and renumbers them in breadth-first
    /// order from the initial state (letters in index order), which makes
    /// the numbering canonical.
    pub fn trim_reachable(&self) -> Dfa {
        let n = self.state_count();
        let mut order: Vec<StateId> = Vec::with_capacity(n);
        let mut index = vec![usize::MAX; n];
        let mut queue = VecDeque::from([self.initial]);
        index[self.initial] = 0;
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.letter_count {
                let t = self.delta[q][a];
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = order
            .iter()
            .map(|&q| (0..self.letter_count).map(|a| index[self.delta[q][a]]).collect())
            .collect();
        let accepting = order.iter().map(|&q| self.accepting[q]).collect();
        Dfa { letter_count: self.letter_count, initial: 0, accepting, delta }
    }

    /// The unique minimal complete DFA for the same language, with canonical
    /// breadth-first state numbering. Moore partition refinement.
    pub fn minimized(&self) -> Dfa {
        let trimmed = self.trim_reachable();
        let n = trimmed.state_count();
        let mut class: Vec<usize> = trimmed.accepting.iter().map(|&a| a as usize).collect();
        let mut class_count = 1 + class.iter().copied().max().unwrap_or(0);
        loop {
            // signature: own class + class of each successor
            let mut next_class = vec![0usize; n];
            let mut signatures: Vec<(Vec<usize>, usize)> = Vec::new();
            for q in 0..n {
                let mut sig = Vec::with_capacity(trimmed.letter_count + 1);
                sig.push(class[q]);
                for a in 0..trimmed.letter_count {
                    sig.push(class[trimmed.delta[q][a]]);
                }
                let id = match signatures.iter().position(|(s, _)| *s == sig) {
                    Some(pos) => signatures[pos].1,
                    None => {
                        let id = signatures.len();
                        signatures.push((sig, id));
                        id
                    }
                };
                next_class[q] = id;
            }
            let next_count = signatures.len();
            if next_count == class_count {
                class = next_class;
                break;
            }
            class = next_class;
            class_count = next_count;
        }
        let m = class_count;
        let mut delta = vec![vec![0usize; trimmed.letter_count]; m];
        let mut accepting = vec![false; m];
        let mut seen = vec![false; m];
        for q in 0..n {
            let c = class[q];
            if seen[c] {
                continue;
            }
            seen[c] = true;
            accepting[c] = trimmed.accepting[q];
            for a in 0..trimmed.letter_count {
                delta[c][a] = class[trimmed.delta[q][a]];
            }
        }
        let quotient = Dfa {
            letter_count: trimmed.letter_count,
            initial: class[0],
            accepting,
            delta,
        };
        quotient.trim_reachable()
    }

    /// Complement: flips acceptance (sound because the automaton is complete).
    pub fn complemented(&self) -> Dfa {
        let mut out = self.clone();
        for a in out.accepting.iter_mut() {
            *a = !*a;
        }
        out
    }

    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.letter_count, other.letter_count, "alphabet size mismatch");
        let cols = other.state_count();
        let mut index = vec![usize::MAX; self.state_count() * cols];
        let mut states: Vec<(StateId, StateId)> = Vec::new();
        let start = (self.initial, other.initial);
        index[start.0 * cols + start.1] = 0;
        states.push(start);
        let mut queue = VecDeque::from([start]);
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.letter_count);
            for a in 0..self.letter_count {
                let t = (self.delta[p][a], other.delta[q][a]);
                let slot = &mut index[t.0 * cols + t.1];
                if *slot == usize::MAX {
                    *slot = states.len();
                    states.push(t);
                    queue.push_back(t);
                }
                row.push(*slot);
            }
            delta.push(row);
        }
        let accepting = states
            .iter()
            .map(|&(p, q)| accept(self.accepting[p], other.accepting[q]))
            .collect();
        Dfa { letter_count: self.letter_count, initial: 0, accepting, delta }
    }

    /// Product automaton for the intersection of the two languages.
    pub fn intersected(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }

    /// Product automaton for the union of the two languages.
    pub fn unioned(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a || b)
    }

    /// Shortest accepted word (breadth-first, letters in index order), or
    /// None when the language is empty.
    pub fn shortest_accepted(&self) -> Option<Word> {
        self.shortest_from(self.initial)
    }

    fn shortest_from(&self, start: StateId) -> Option<Word> {
        let n = self.state_count();
        let mut parent: Vec<Option<(StateId, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut hit = if self.accepting[start] { Some(start) } else { None };
        while hit.is_none() {
            let Some(q) = queue.pop_front() else { break };
            for a in 0..self.letter_count {
                let t = self.delta[q][a];
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    if self.accepting[t] {
                        hit = Some(t);
                        break;
                    }
                    queue.push_back(t);
                }
            }
        }
        let mut q = hit?;
        let mut letters = Vec::new();
        while let Some((p, a)) = parent[q] {
            letters.push(a);
            q = p;
        }
        letters.reverse();
        Some(Word::new(letters))
    }

    pub fn is_language_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Decides `L(self) (from state q) ⊆ L(self) (from state r)` by searching
    /// for a product state that accepts on the left and rejects on the right.
    pub fn included_from(&self, q: StateId, r: StateId) -> bool {
        self.inclusion_witness_from(q, r).is_none()
    }

    /// Word accepted from `q` but rejected from `r`, shortest first, or None
    /// when the inclusion holds.
    pub fn inclusion_witness_from(&self, q: StateId, r: StateId) -> Option<Word> {
        let n = self.state_count();
        let idx = |p: StateId, s: StateId| p * n + s;
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n * n];
        let mut seen = vec![false; n * n];
        let start = idx(q, r);
        seen[start] = true;
        let bad = |p: StateId, s: StateId| self.accepting[p] && !self.accepting[s];
        let mut hit = if bad(q, r) { Some(start) } else { None };
        let mut queue = VecDeque::from([(q, r)]);
        while hit.is_none() {
            let Some((p, s)) = queue.pop_front() else { break };
            for a in 0..self.letter_count {
                let t = (self.delta[p][a], self.delta[s][a]);
                let ti = idx(t.0, t.1);
                if !seen[ti] {
                    seen[ti] = true;
                    parent[ti] = Some((idx(p, s), a));
                    if bad(t.0, t.1) {
                        hit = Some(ti);
                        break;
                    }
                    queue.push_back(t);
                }
            }
        }
        let mut cur = hit?;
        let mut letters = Vec::new();
        while let Some((p, a)) = parent[cur] {
            letters.push(a);
            cur = p;
        }
        letters.reverse();
        Some(Word::new(letters))
    }

    /// Word in `L(self) \ L(other)`, or None when `L(self) ⊆ L(other)`.
    pub fn inclusion_witness(&self, other: &Dfa) -> Option<Word> {
        self.intersected(&other.complemented()).shortest_accepted()
    }

    pub fn included_in(&self, other: &Dfa) -> bool {
        self.inclusion_witness(other).is_none()
    }

    /// Witness of language difference in either direction: shortest overall,
    /// preferring the `self \ other` witness on ties. None when equivalent.
    pub fn equivalence_witness(&self, other: &Dfa) -> Option<Word> {
        match (self.inclusion_witness(other), other.inclusion_witness(self)) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w),
            (Some(w1), Some(w2)) => Some(if w2 < w1 { w2 } else { w1 }),
        }
    }

    pub fn equivalent_to(&self, other: &Dfa) -> bool {
        self.equivalence_witness(other).is_none()
    }

    /// Shortest word leading from the initial state to each state; entry `q`
    /// is None when `q` is unreachable.
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let n = self.state_count();
        let mut out: Vec<Option<Word>> = vec![None; n];
        out[self.initial] = Some(Word::empty());
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.letter_count {
                let t = self.delta[q][a];
                if out[t].is_none() {
                    out[t] = Some(out[q].as_ref().unwrap().push(a));
                    queue.push_back(t);
                }
            }
        }
        out
    }

    /// Parses the automaton text format:
    ///
    /// ```text
    /// states: 2
    /// initial: 0
    /// accepting: 1
    /// trans: 0 a 1
    /// ...
    /// ```
    ///
    /// All `states x letters` transition lines are required.
    pub fn parse(alpha: &Alphabet, text: &str) -> Result<Dfa> {
        let mut states: Option<usize> = None;
        let mut initial: Option<usize> = None;
        let mut accepting: Option<Vec<usize>> = None;
        let mut trans: Vec<(usize, Letter, usize)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", no + 1));
            if let Some(rest) = line.strip_prefix("states:") {
                states = Some(rest.trim().parse().map_err(|_| err("bad state count"))?);
            } else if let Some(rest) = line.strip_prefix("initial:") {
                initial = Some(rest.trim().parse().map_err(|_| err("bad initial state"))?);
            } else if let Some(rest) = line.strip_prefix("accepting:") {
                let ids = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| err("bad accepting state")))
                    .collect::<Result<Vec<_>>>()?;
                accepting = Some(ids);
            } else if let Some(rest) = line.strip_prefix("trans:") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(err("expected `trans: q letter q'`"));
                }
                let q = parts[0].parse::<usize>().map_err(|_| err("bad source state"))?;
                let a = alpha
                    .index_of(parts[1])
                    .ok_or_else(|| Error::UnknownLetter(parts[1].to_string()))?;
                let t = parts[2].parse::<usize>().map_err(|_| err("bad target state"))?;
                trans.push((q, a, t));
            } else {
                return Err(err(&format!("unrecognized line `{line}`")));
            }
        }
        let n = states.ok_or_else(|| Error::Parse("missing states line".into()))?;
        let initial = initial.ok_or_else(|| Error::Parse("missing initial line".into()))?;
        let acc_ids = accepting.ok_or_else(|| Error::Parse("missing accepting line".into()))?;
        let k = alpha.len();
        let mut delta = vec![vec![usize::MAX; k]; n];
        for (q, a, t) in trans {
            if q >= n || t >= n {
                return Err(Error::Parse(format!("transition {q} -> {t} out of range")));
            }
            if delta[q][a] != usize::MAX {
                return Err(Error::Parse(format!("duplicate transition from {q} on letter {a}")));
            }
            delta[q][a] = t;
        }
        for (q, row) in delta.iter().enumerate() {
            if let Some(a) = row.iter().position(|&t| t == usize::MAX) {
                return Err(Error::IncompleteAutomaton { state: q, letter: a });
            }
        }
        let mut acc = vec![false; n];
        for id in acc_ids {
            if id >= n {
                return Err(Error::Parse(format!("accepting state {id} out of range")));
            }
            acc[id] = true;
        }
        Dfa::new(k, initial, acc, delta)
    }

    /// Renders the canonical text form (states ascending, letters in index
    /// order).
    pub fn render(&self, alpha: &Alphabet) -> String {
        let mut out = format!("states: {}\ninitial: {}\naccepting:", self.state_count(), self.initial);
        for q in self.accepting_states() {
            out.push_str(&format!(" {q}"));
        }
        out.push('\n');
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                out.push_str(&format!("trans: {} {} {}\n", q, alpha.name(a), t));
            }
        }
        out
    }

    /// Graphviz DOT export. Accepting states are double circles, the initial
    /// state gets an incoming arrow from a point node, and parallel edges are
    /// merged with comma-joined labels. With `compact`, self-loops are left
    /// out (undrawn transitions loop by convention).
    pub fn to_dot(&self, alpha: &Alphabet, compact: bool) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            out.push_str(&format!("  q{q} [shape={shape}];\n"));
        }
        out.push_str(&format!("  start -> q{};\n", self.initial));
        for q in 0..self.state_count() {
            let mut by_target: Vec<(StateId, Vec<&str>)> = Vec::new();
            for a in 0..self.letter_count {
                let t = self.delta[q][a];
                if compact && t == q {
                    continue;
                }
                match by_target.iter_mut().find(|(s, _)| *s == t) {
                    Some((_, labels)) => labels.push(alpha.name(a)),
                    None => by_target.push((t, vec![alpha.name(a)])),
                }
            }
            for (t, labels) in by_target {
                out.push_str(&format!("  q{q} -> q{t} [label=\"{}\"];\n", labels.join(",")));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ab, abc, parse_words, upward_dfa_for};
    use crate::word::Word;

    #[test]
    fn complement_of_full_is_empty() {
        let full = Dfa::constant(2, true);
        assert!(full.complemented().is_language_empty());
        assert!(!full.is_language_empty());
    }

    #[test]
    fn minimized_length_threshold_automaton_has_three_states() {
        // words of length >= 2 over a discrete two-letter alphabet
        let alpha = ab();
        let dfa = upward_dfa_for(&alpha, &["aa", "ab", "ba", "bb"]);
        assert_eq!(dfa.minimized().state_count(), 3);
    }

    #[test]
    fn inclusion_witness_is_shortest() {
        let alpha = ab();
        let ab_only = upward_dfa_for(&alpha, &["ab"]); // actually up-closure of ab
        // exact-language automaton for {ab}: build manually
        // states: 0 -a-> 1 -b-> 2(acc), everything else -> 3 sink
        let exact = Dfa::new(
            2,
            0,
            vec![false, false, true, false],
            vec![vec![1, 3], vec![3, 2], vec![3, 3], vec![3, 3]],
        )
        .unwrap();
        let eps_only = Dfa::new(2, 0, vec![true, false], vec![vec![1, 1], vec![1, 1]]).unwrap();
        let witness = exact.inclusion_witness(&eps_only).unwrap();
        assert_eq!(witness, Word::parse(&alpha, "ab").unwrap());
        assert!(eps_only.inclusion_witness(&exact).is_some());
        let _ = ab_only;
    }

    #[test]
    fn minimization_preserves_language_and_is_idempotent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let k = rng.gen_range(1..=3);
            let alpha = crate::instances::random_alphabet(&mut rng, k, 0.3).unwrap();
            let dfa = crate::instances::random_dfa(&mut rng, &alpha, 6);
            let min = dfa.minimized();
            assert!(min.state_count() <= dfa.trim_reachable().state_count());
            assert_eq!(min.minimized(), min);
            for w in alpha.words().take_while(|w| w.len() <= 6).take(500) {
                assert_eq!(dfa.accepts(&w), min.accepts(&w));
            }
        }
    }

    #[test]
    fn product_operations_match_boolean_semantics() {
        let alpha = abc();
        let u1 = upward_dfa_for(&alpha, &["a"]);
        let u2 = upward_dfa_for(&alpha, &["bb"]);
        let both = u1.intersected(&u2);
        let either = u1.unioned(&u2);
        for w in alpha.words().take(300) {
            assert_eq!(both.accepts(&w), u1.accepts(&w) && u2.accepts(&w));
            assert_eq!(either.accepts(&w), u1.accepts(&w) || u2.accepts(&w));
        }
    }

    #[test]
    fn upward_closure_dfa_matches_basis_membership() {
        let alpha = abc();
        let basis = parse_words(&alpha, &["a", "bb", "ccc"]);
        let dfa = upward_dfa_for(&alpha, &["a", "bb", "ccc"]);
        for w in alpha.words().take(1000) {
            assert_eq!(dfa.accepts(&w), basis.closure_contains(&alpha, &w));
        }
    }

    #[test]
    fn parse_requires_completeness() {
        let alpha = ab();
        let text = "states: 1\ninitial: 0\naccepting: 0\ntrans: 0 a 0\n";
        assert!(matches!(
            Dfa::parse(&alpha, text),
            Err(Error::IncompleteAutomaton { state: 0, letter: 1 })
        ));
    }

    #[test]
    fn parse_render_round_trip() {
        let alpha = ab();
        let dfa = upward_dfa_for(&alpha, &["ab"]).minimized();
        let text = dfa.render(&alpha);
        let again = Dfa::parse(&alpha, &text).unwrap();
        assert_eq!(dfa, again);
    }

    #[test]
    fn dot_output_shapes() {
        let alpha = ab();
        let dfa = Dfa::constant(2, true);
        let dot = dfa.to_dot(&alpha, false);
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("start -> q0"));
        assert!(dot.contains("q0 -> q0 [label=\"a,b\"]"));
        let compact = dfa.to_dot(&alpha, true);
        assert!(!compact.contains("q0 -> q0 [label"));
    }
}
