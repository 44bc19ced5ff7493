//! Finite bases of upward-closed word languages over quasi-ordered
//! alphabets, computed from an ideal-intersection oracle.
//!
//! The crate provides two interchangeable algorithms: word enumeration with
//! complement rechecks ([`algorithms::rewriting_basis`]) and active learning
//! of the minimal quasi-ordered automaton ([`algorithms::learning_automaton`]),
//! together with the supporting machinery: the subword embedding order
//! ([`alphabet`], [`word`], [`basis`]), `*`-product ideals and their
//! complement/intersection calculus ([`star`], [`rewrite`]), complete DFAs
//! and the upward-closedness decision ([`dfa`], [`ordered`]), an
//! observation-table learner ([`lstar`]), and the letter-counting quotient
//! onto vectors of naturals ([`parikh`]).
//!
//! Data-parallel kernels (state-order matrices, union normalization, batch
//! sweeps) run on rayon when the default `parallel` feature is enabled and
//! fall back to sequential loops otherwise; `*_seq` twins stay available for
//! baseline comparisons either way.

pub mod algorithms;
pub mod alphabet;
pub mod basis;
pub mod dfa;
pub mod error;
pub mod instances;
pub mod lstar;
pub mod oracle;
pub mod ordered;
pub mod par;
pub mod parikh;
pub mod rewrite;
pub mod star;
pub mod word;

pub use alphabet::{Alphabet, Letter};
pub use basis::Basis;
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use ordered::QoAutomaton;
pub use star::{Atom, IdealUnion, StarProduct};
pub use word::Word;
