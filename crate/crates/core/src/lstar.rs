//! Active learning of complete DFAs from a membership/equivalence teacher,
//! plus the wrapper that learns quasi-ordered automata by screening
//! hypotheses through the upward-closedness check.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::ordered::{check_quasi_ordered, compute_state_order, OrderCheckOutcome, QoAutomaton};
use crate::word::Word;

/// Answer to an equivalence query.
#[derive(Clone, Debug)]
pub enum Equivalence {
    Equal,
    Counterexample(Word),
}

/// A minimally adequate teacher for a regular language.
pub trait Teacher {
    fn membership(&self, w: &Word) -> bool;
    /// The hypothesis is minimal and reachable for its own language.
    fn equivalence(&self, hypothesis: &Dfa) -> Result<Equivalence>;
    fn membership_queries(&self) -> u64;
    fn equivalence_queries(&self) -> u64;
}

/// A teacher for an upwards-closed language whose equivalence queries take
/// quasi-ordered hypotheses (minimal, structure-validated).
pub trait QoTeacher {
    fn membership(&self, w: &Word) -> bool;
    fn equivalence(&self, hypothesis: &QoAutomaton) -> Result<Equivalence>;
    fn membership_queries(&self) -> u64;
    fn equivalence_queries(&self) -> u64;
}

/// Query counts observed at the learner/teacher boundary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LearnerStats {
    pub membership_queries: u64,
    pub equivalence_queries: u64,
}

struct ObservationTable<'a, T: Teacher + ?Sized> {
    teacher: &'a T,
    alpha: &'a Alphabet,
    prefixes: Vec<Word>, // prefix-closed, insertion order, starts with the empty word
    suffixes: Vec<Word>, // starts with the empty word
    cache: HashMap<Word, bool>,
}

impl<'a, T: Teacher + ?Sized> ObservationTable<'a, T> {
    fn new(teacher: &'a T, alpha: &'a Alphabet) -> Self {
        ObservationTable {
            teacher,
            alpha,
            prefixes: vec![Word::empty()],
            suffixes: vec![Word::empty()],
            cache: HashMap::new(),
        }
    }

    fn entry(&mut self, w: Word) -> bool {
        if let Some(&v) = self.cache.get(&w) {
            return v;
        }
        let v = self.teacher.membership(&w);
        self.cache.insert(w, v);
        v
    }

    fn row(&mut self, prefix: &Word) -> Vec<bool> {
        let suffixes = self.suffixes.clone();
        suffixes.iter().map(|e| self.entry(prefix.concat(e))).collect()
    }

    fn add_prefix(&mut self, w: Word) {
        if !self.prefixes.contains(&w) {
            self.prefixes.push(w);
        }
    }

    fn add_suffix(&mut self, w: Word) {
        if !self.suffixes.contains(&w) {
            self.suffixes.push(w);
        }
    }

    /// Restores closedness and consistency, then builds the hypothesis.
    fn hypothesis(&mut self) -> Dfa {
        let k = self.alpha.len();
        loop {
            // closedness: every one-letter extension's row appears among rows
            let mut changed = false;
            let mut rows: Vec<Vec<bool>> = Vec::new();
            for i in 0..self.prefixes.len() {
                let p = self.prefixes[i].clone();
                rows.push(self.row(&p));
            }
            'closed: for i in 0..self.prefixes.len() {
                for a in 0..k {
                    let ext = self.prefixes[i].push(a);
                    let r = self.row(&ext);
                    if !rows.contains(&r) {
                        self.add_prefix(ext);
                        changed = true;
                        break 'closed;
                    }
                }
            }
            if changed {
                continue;
            }
            // consistency: equal rows must have equal one-letter extensions
            'consistent: for i in 0..self.prefixes.len() {
                for j in i + 1..self.prefixes.len() {
                    if rows[i] != rows[j] {
                        continue;
                    }
                    for a in 0..k {
                        let ri = self.row(&self.prefixes[i].push(a));
                        let rj = self.row(&self.prefixes[j].push(a));
                        if ri != rj {
                            let col = ri.iter().zip(&rj).position(|(x, y)| x != y).unwrap();
                            let suffix = Word::new(
                                std::iter::once(a)
                                    .chain(self.suffixes[col].letters().iter().copied())
                                    .collect(),
                            );
                            self.add_suffix(suffix);
                            changed = true;
                            break 'consistent;
                        }
                    }
                }
            }
            if changed {
                continue;
            }
            // rows are stable: build the automaton over distinct rows
            let mut distinct: Vec<Vec<bool>> = Vec::new();
            let state_of_row = |r: &Vec<bool>, distinct: &mut Vec<Vec<bool>>| match distinct
                .iter()
                .position(|x| x == r)
            {
                Some(s) => s,
                None => {
                    distinct.push(r.clone());
                    distinct.len() - 1
                }
            };
            let mut prefix_state = Vec::with_capacity(self.prefixes.len());
            for r in &rows {
                prefix_state.push(state_of_row(r, &mut distinct));
            }
            let n = distinct.len();
            let mut delta = vec![vec![usize::MAX; k]; n];
            for (i, p) in self.prefixes.clone().iter().enumerate() {
                for a in 0..k {
                    let r = self.row(&p.push(a));
                    let target = distinct
                        .iter()
                        .position(|x| *x == r)
                        .expect("closedness guarantees the row exists");
                    delta[prefix_state[i]][a] = target;
                }
            }
            let accepting = (0..n).map(|s| distinct[s][0]).collect();
            let initial = prefix_state[0];
            debug_assert!(delta.iter().all(|row| row.iter().all(|&t| t != usize::MAX)));
            return Dfa::new(k, initial, accepting, delta).expect("table hypothesis well-formed");
        }
    }
}

/// Classic observation-table learning. Returns the minimal complete DFA for
/// the teacher's language, with canonical state numbering.
/// Counterexamples are processed by adding all their prefixes to the table.
pub fn learn<T: Teacher + ?Sized>(alpha: &Alphabet, teacher: &T) -> Result<Dfa> {
    let mut table = ObservationTable::new(teacher, alpha);
    loop {
        let hypothesis = table.hypothesis();
        match teacher.equivalence(&hypothesis)? {
            Equivalence::Equal => return Ok(hypothesis.minimized()),
            Equivalence::Counterexample(cex) => {
                // a genuine counterexample is misclassified by the hypothesis
                let truth = table.entry(cex.clone());
                if hypothesis.accepts(&cex) == truth {
                    return Err(Error::InconsistentTeacher(cex));
                }
                for p in cex.prefixes() {
                    table.add_prefix(p);
                }
            }
        }
    }
}

/// Adapter that turns a quasi-ordered teacher into a plain DFA teacher:
/// memberships are forwarded; a hypothesis is first screened by the
/// upward-closedness check, and only ordered hypotheses reach the inner
/// teacher. A violation pair is resolved into a counterexample with one
/// membership query.
struct OrderScreen<'a, Q: QoTeacher + ?Sized> {
    alpha: &'a Alphabet,
    inner: &'a Q,
    membership_count: AtomicU64,
    equivalence_count: AtomicU64,
}

impl<Q: QoTeacher + ?Sized> Teacher for OrderScreen<'_, Q> {
    fn membership(&self, w: &Word) -> bool {
        self.membership_count.fetch_add(1, Ordering::Relaxed);
        self.inner.membership(w)
    }

    fn equivalence(&self, hypothesis: &Dfa) -> Result<Equivalence> {
        self.equivalence_count.fetch_add(1, Ordering::Relaxed);
        let trimmed = hypothesis.minimized();
        match check_quasi_ordered(self.alpha, &trimmed)? {
            OrderCheckOutcome::Violation(accepted, rejected) => {
                // accepted embeds into rejected; whichever the language
                // disagrees with is the counterexample
                let cex = if self.inner.membership(&accepted) { rejected } else { accepted };
                Ok(Equivalence::Counterexample(cex))
            }
            OrderCheckOutcome::Ordered(order) => {
                self.inner.equivalence(&QoAutomaton { dfa: trimmed, order })
            }
        }
    }

    fn membership_queries(&self) -> u64 {
        self.membership_count.load(Ordering::Relaxed)
    }

    fn equivalence_queries(&self) -> u64 {
        self.equivalence_count.load(Ordering::Relaxed)
    }
}

/// Learns the minimal quasi-ordered automaton for the teacher's
/// upwards-closed language. Also reports the query counts the inner DFA
/// learner issued at its boundary.
pub fn learn_ordered<Q: QoTeacher + ?Sized>(
    alpha: &Alphabet,
    teacher: &Q,
) -> Result<(QoAutomaton, LearnerStats)> {
    let screen = OrderScreen {
        alpha,
        inner: teacher,
        membership_count: AtomicU64::new(0),
        equivalence_count: AtomicU64::new(0),
    };
    let dfa = learn(alpha, &screen)?;
    let stats = LearnerStats {
        membership_queries: screen.membership_queries(),
        equivalence_queries: screen.equivalence_queries(),
    };
    let order = compute_state_order(&dfa);
    Ok((QoAutomaton { dfa, order }, stats))
}
