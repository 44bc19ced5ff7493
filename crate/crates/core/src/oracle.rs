use std::sync::atomic::{AtomicU64, Ordering};

use crate::alphabet::Alphabet;
use crate::basis::Basis;
use crate::ordered::QoAutomaton;
use crate::star::StarProduct;

/// Decides whether a fixed upwards-closed language intersects the ideal
/// denoted by a `*`-product. The query counter is the only mutable state, so
/// oracles can be shared read-only across threads.
pub trait IdealOracle: Sync {
    fn alphabet(&self) -> &Alphabet;
    fn intersects(&self, p: &StarProduct) -> bool;
    fn queries(&self) -> u64;
}

/// Ground-truth oracle for `U = ↑B`. Since a product's language is
/// downwards-closed, `↑b` meets it exactly when `b` itself does, so the
/// query reduces to product membership of the basis words.
pub struct BasisOracle {
    alpha: Alphabet,
    basis: Basis,
    count: AtomicU64,
}

impl BasisOracle {
    pub fn new(alpha: Alphabet, basis: Basis) -> Self {
        BasisOracle { alpha, basis, count: AtomicU64::new(0) }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }
}

impl IdealOracle for BasisOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alpha
    }

    fn intersects(&self, p: &StarProduct) -> bool {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.basis.words().iter().any(|b| p.contains(&self.alpha, b))
    }

    fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

/// Oracle backed by an automaton for `U`: the query is emptiness of the
/// product with the `*`-product's DFA.
pub struct AutomatonOracle {
    alpha: Alphabet,
    automaton: QoAutomaton,
    count: AtomicU64,
}

impl AutomatonOracle {
    pub fn new(alpha: Alphabet, automaton: QoAutomaton) -> Self {
        AutomatonOracle { alpha, automaton, count: AtomicU64::new(0) }
    }

    pub fn automaton(&self) -> &QoAutomaton {
        &self.automaton
    }
}

impl IdealOracle for AutomatonOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alpha
    }

    fn intersects(&self, p: &StarProduct) -> bool {
        self.count.fetch_add(1, Ordering::Relaxed);
        !self.automaton.dfa.intersected(&p.to_dfa(&self.alpha)).is_language_empty()
    }

    fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::{compute_state_order, upward_closure_dfa};
    use crate::testutil::{abc, parse_words};
    use crate::word::Word;

    fn automaton_oracle_for(alpha: &Alphabet, basis: &Basis) -> AutomatonOracle {
        let dfa = upward_closure_dfa(alpha, basis);
        let order = compute_state_order(&dfa);
        AutomatonOracle::new(alpha.clone(), QoAutomaton { dfa, order })
    }

    #[test]
    fn basis_oracle_matches_closure_membership_on_principals() {
        let alpha = abc();
        let basis = parse_words(&alpha, &["a", "bb", "ccc"]);
        let oracle = BasisOracle::new(alpha.clone(), basis.clone());
        for w in alpha.words().take(200) {
            assert_eq!(
                oracle.intersects(&StarProduct::principal(&w)),
                basis.closure_contains(&alpha, &w)
            );
        }
        assert_eq!(oracle.queries(), 200);
    }

    #[test]
    fn oracles_agree_on_random_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..30 {
            let k = rng.gen_range(1..=3);
            let alpha = crate::instances::random_alphabet(&mut rng, k, 0.4).unwrap();
            let basis = crate::instances::random_basis(&mut rng, &alpha, 4, 3);
            let b = BasisOracle::new(alpha.clone(), basis.clone());
            let a = automaton_oracle_for(&alpha, &basis);
            for _ in 0..20 {
                let p = crate::instances::random_star_product(&mut rng, &alpha, 4);
                assert_eq!(b.intersects(&p), a.intersects(&p), "product {}", p.render(&alpha));
            }
        }
    }

    #[test]
    fn empty_language_intersects_nothing() {
        let alpha = abc();
        let oracle = BasisOracle::new(alpha.clone(), Basis::empty());
        assert!(!oracle.intersects(&StarProduct::full(&alpha)));
        assert!(!oracle.intersects(&StarProduct::principal(&Word::empty())));
    }
}
