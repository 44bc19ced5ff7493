//! Quasi-ordered automata: the state order by language inclusion, the
//! decision procedure for upward-closedness with violation witnesses, and the
//! structural checks satisfied by minimal ordered automata.

use crate::alphabet::Alphabet;
use crate::basis::Basis;
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::par;
use crate::word::Word;

/// A reflexive-transitive relation on the states of a DFA, stored densely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateOrder {
    n: usize,
    leq: Vec<bool>,
}

impl StateOrder {
    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn leq(&self, q: StateId, r: StateId) -> bool {
        self.leq[q * self.n + r]
    }

    pub fn strictly_less(&self, q: StateId, r: StateId) -> bool {
        q != r && self.leq(q, r)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|q| (q + 1..self.n).all(|r| !(self.leq(q, r) && self.leq(r, q))))
    }

    /// Related pairs `(q, r)` with `q != r`, in index order.
    pub fn related_pairs(&self) -> Vec<(StateId, StateId)> {
        let mut out = Vec::new();
        for q in 0..self.n {
            for r in 0..self.n {
                if q != r && self.leq(q, r) {
                    out.push((q, r));
                }
            }
        }
        out
    }
}

/// State order of a reachable DFA: `q <= r` iff the language accepted from
/// `q` is included in the language accepted from `r`. Each of the `|Q|^2`
/// inclusions is decided independently by a product-automaton search, so the
/// matrix computation is data-parallel.
pub fn compute_state_order(dfa: &Dfa) -> StateOrder {
    compute_state_order_impl(dfa, false)
}

/// Sequential twin of [`compute_state_order`], kept callable for baselines.
pub fn compute_state_order_seq(dfa: &Dfa) -> StateOrder {
    compute_state_order_impl(dfa, true)
}

fn compute_state_order_impl(dfa: &Dfa, force_seq: bool) -> StateOrder {
    let n = dfa.state_count();
    let one = |idx: usize| dfa.included_from(idx / n, idx % n);
    let leq = if force_seq {
        par::map_indexed_seq(n * n, &one)
    } else {
        par::map_indexed(n * n, &one)
    };
    StateOrder { n, leq }
}

/// Outcome of the upward-closedness decision.
#[derive(Clone, Debug)]
pub enum OrderCheckOutcome {
    /// The language is upwards-closed; the inclusion order on states is
    /// attached.
    Ordered(StateOrder),
    /// Two words witnessing failure: the first embeds into the second, the
    /// automaton accepts the first and rejects the second.
    Violation(Word, Word),
}

/// Decides whether a reachable complete DFA recognizes an upwards-closed
/// language.
///
/// The inclusion order always makes the acceptance set upwards-closed and
/// the transition function monotone in the state argument; those two cases
/// are still checked defensively. The two falsifiable conditions are tested
/// in a fixed order (letter-monotonicity first, then inflation), states and
/// letters ascending, so the returned violation is deterministic.
pub fn check_quasi_ordered(alpha: &Alphabet, dfa: &Dfa) -> Result<OrderCheckOutcome> {
    let access_words = dfa.access_words();
    if let Some(unreachable) = access_words.iter().position(|w| w.is_none()) {
        return Err(Error::UnreachableState(unreachable));
    }
    let order = compute_state_order(dfa);
    let n = dfa.state_count();
    let k = alpha.len();

    // Defensive: acceptance upwards-closed w.r.t. the inclusion order.
    for q in 0..n {
        for r in 0..n {
            if order.leq(q, r) && dfa.is_accepting(q) && !dfa.is_accepting(r) {
                return Err(Error::Internal(format!(
                    "inclusion order left acceptance not upwards-closed at ({q},{r})"
                )));
            }
        }
    }
    // Defensive: monotonicity in the state argument.
    for q in 0..n {
        for r in 0..n {
            if !order.leq(q, r) {
                continue;
            }
            for a in 0..k {
                if !order.leq(dfa.next(q, a), dfa.next(r, a)) {
                    return Err(Error::Internal(format!(
                        "inclusion order not monotone in the state at ({q},{r}) letter {a}"
                    )));
                }
            }
        }
    }

    let access = |q: StateId| access_words[q].clone().expect("reachable state");

    // (i) monotonicity in the letter argument
    for q in 0..n {
        for a in 0..k {
            for b in 0..k {
                if a == b || !alpha.leq(a, b) {
                    continue;
                }
                let (ta, tb) = (dfa.next(q, a), dfa.next(q, b));
                if order.leq(ta, tb) {
                    continue;
                }
                let suffix = dfa
                    .inclusion_witness_from(ta, tb)
                    .ok_or_else(|| Error::Internal("missing inclusion witness".into()))?;
                let u = access(q);
                let accepted = u.push(a).concat(&suffix);
                let rejected = u.push(b).concat(&suffix);
                debug_assert!(alpha.subword_leq(&accepted, &rejected));
                debug_assert!(dfa.accepts(&accepted) && !dfa.accepts(&rejected));
                return Ok(OrderCheckOutcome::Violation(accepted, rejected));
            }
        }
    }
    // (ii) inflation: each state below its successors
    for q in 0..n {
        for a in 0..k {
            let t = dfa.next(q, a);
            if order.leq(q, t) {
                continue;
            }
            let suffix = dfa
                .inclusion_witness_from(q, t)
                .ok_or_else(|| Error::Internal("missing inclusion witness".into()))?;
            let u = access(q);
            let accepted = u.concat(&suffix);
            let rejected = u.push(a).concat(&suffix);
            debug_assert!(alpha.subword_leq(&accepted, &rejected));
            debug_assert!(dfa.accepts(&accepted) && !dfa.accepts(&rejected));
            return Ok(OrderCheckOutcome::Violation(accepted, rejected));
        }
    }
    Ok(OrderCheckOutcome::Ordered(order))
}

/// A complete DFA together with a state order satisfying the quasi-ordered
/// automaton conditions (checked by [`QoAutomaton::validate`]).
#[derive(Clone, Debug)]
pub struct QoAutomaton {
    pub dfa: Dfa,
    pub order: StateOrder,
}

impl QoAutomaton {
    /// Checks all four defining conditions: the order is reflexive and
    /// transitive, acceptance is upwards-closed, the transition function is
    /// monotone in both arguments, and every transition inflates its source.
    pub fn validate(&self, alpha: &Alphabet) -> Result<()> {
        let n = self.dfa.state_count();
        let k = alpha.len();
        if self.order.n != n {
            return Err(Error::InvalidAutomaton("order size mismatch".into()));
        }
        let ord = &self.order;
        for q in 0..n {
            if !ord.leq(q, q) {
                return Err(Error::InvalidAutomaton(format!("order not reflexive at {q}")));
            }
        }
        for q in 0..n {
            for r in 0..n {
                if !ord.leq(q, r) {
                    continue;
                }
                for s in 0..n {
                    if ord.leq(r, s) && !ord.leq(q, s) {
                        return Err(Error::InvalidAutomaton(format!(
                            "order not transitive at ({q},{r},{s})"
                        )));
                    }
                }
                if self.dfa.is_accepting(q) && !self.dfa.is_accepting(r) {
                    return Err(Error::InvalidAutomaton(format!(
                        "acceptance not upwards-closed at ({q},{r})"
                    )));
                }
            }
        }
        for q in 0..n {
            for r in 0..n {
                for a in 0..k {
                    for b in 0..k {
                        if ord.leq(q, r)
                            && alpha.leq(a, b)
                            && !ord.leq(self.dfa.next(q, a), self.dfa.next(r, b))
                        {
                            return Err(Error::InvalidAutomaton(format!(
                                "transitions not monotone at ({q},{r}) letters ({a},{b})"
                            )));
                        }
                    }
                }
            }
        }
        for q in 0..n {
            for a in 0..k {
                if !ord.leq(q, self.dfa.next(q, a)) {
                    return Err(Error::InvalidAutomaton(format!(
                        "transition not inflationary at state {q} letter {a}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Structural clauses satisfied by minimal quasi-ordered automata.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StructureClause {
    /// Two distinct states are mutually included.
    NotAntisymmetric(StateId, StateId),
    /// The transition graph has a cycle through distinct states.
    CyclicTransitions(StateId),
    /// The initial state is not below this state.
    InitialNotMinimum(StateId),
    /// The (non-empty) language's accepting state is unreachable from here.
    AcceptingUnreachableFrom(StateId),
    /// More than one accepting state.
    MultipleAcceptingStates(usize),
    /// The accepting state is not above this state.
    AcceptingNotMaximum(StateId),
}

impl std::fmt::Display for StructureClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructureClause::NotAntisymmetric(q, r) => {
                write!(f, "states {q} and {r} are mutually included")
            }
            StructureClause::CyclicTransitions(q) => {
                write!(f, "transition cycle through state {q}")
            }
            StructureClause::InitialNotMinimum(q) => {
                write!(f, "initial state is not below state {q}")
            }
            StructureClause::AcceptingUnreachableFrom(q) => {
                write!(f, "accepting state unreachable from state {q}")
            }
            StructureClause::MultipleAcceptingStates(c) => {
                write!(f, "{c} accepting states")
            }
            StructureClause::AcceptingNotMaximum(q) => {
                write!(f, "accepting state is not above state {q}")
            }
        }
    }
}

/// Checks the structure of a minimal ordered automaton: the state order is
/// antisymmetric and transitions are acyclic apart from self-loops, the
/// initial state is the minimum, the accepting state (at most one, the
/// maximum) is reachable from every state unless the language is empty.
/// Returns the violated clauses, empty when all hold.
pub fn validate_minimal_structure(aut: &QoAutomaton) -> Vec<StructureClause> {
    let dfa = &aut.dfa;
    let ord = &aut.order;
    let n = dfa.state_count();
    let mut out = Vec::new();
    for q in 0..n {
        for r in q + 1..n {
            if ord.leq(q, r) && ord.leq(r, q) {
                out.push(StructureClause::NotAntisymmetric(q, r));
            }
        }
    }
    // cycle through distinct states: DFS over edges q -> delta(q, a), q != target
    let mut color = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
    fn dfs(dfa: &Dfa, q: StateId, color: &mut [u8]) -> Option<StateId> {
        color[q] = 1;
        for a in 0..dfa.letter_count() {
            let t = dfa.next(q, a);
            if t == q {
                continue;
            }
            match color[t] {
                0 => {
                    if let Some(c) = dfs(dfa, t, color) {
                        return Some(c);
                    }
                }
                1 => return Some(t),
                _ => {}
            }
        }
        color[q] = 2;
        None
    }
    for q in 0..n {
        if color[q] == 0 {
            if let Some(c) = dfs(dfa, q, &mut color) {
                out.push(StructureClause::CyclicTransitions(c));
                break;
            }
        }
    }
    let q0 = dfa.initial();
    for q in 0..n {
        if !ord.leq(q0, q) {
            out.push(StructureClause::InitialNotMinimum(q));
        }
    }
    let accepting: Vec<StateId> = dfa.accepting_states().collect();
    if accepting.len() > 1 {
        out.push(StructureClause::MultipleAcceptingStates(accepting.len()));
    }
    if let Some(&f) = accepting.first() {
        for q in 0..n {
            if !ord.leq(q, f) {
                out.push(StructureClause::AcceptingNotMaximum(q));
            }
        }
        // reachability of some accepting state from every state
        for q in 0..n {
            let mut seen = vec![false; n];
            let mut stack = vec![q];
            seen[q] = true;
            let mut ok = false;
            while let Some(s) = stack.pop() {
                if dfa.is_accepting(s) {
                    ok = true;
                    break;
                }
                for a in 0..dfa.letter_count() {
                    let t = dfa.next(s, a);
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            if !ok {
                out.push(StructureClause::AcceptingUnreachableFrom(q));
            }
        }
    }
    out
}

/// A complete DFA for the upward closure of a basis, built directly: per
/// basis word a greedy-matching chain automaton, then a product union,
/// minimized. Independent of the `*`-product machinery, which makes it the
/// cross-checking route in tests and the ground truth behind automaton
/// oracles.
pub fn upward_closure_dfa(alpha: &Alphabet, basis: &Basis) -> Dfa {
    let mut acc = Dfa::constant(alpha.len(), false);
    for w in basis.words() {
        acc = acc.unioned(&word_closure_dfa(alpha, w)).minimized();
    }
    acc
}

/// The (n+1)-state chain automaton for the upward closure of one word:
/// state i counts greedily matched letters, letter `c` advances from i when
/// `w[i] <= c`.
fn word_closure_dfa(alpha: &Alphabet, w: &Word) -> Dfa {
    let n = w.len();
    let k = alpha.len();
    let delta = (0..=n)
        .map(|i| {
            (0..k)
                .map(|c| if i < n && alpha.leq(w.letters()[i], c) { i + 1 } else { i })
                .collect()
        })
        .collect();
    let accepting = (0..=n).map(|i| i == n).collect();
    Dfa::new(k, 0, accepting, delta).expect("chain automaton is well-formed")
}
