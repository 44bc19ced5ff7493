//! Rewriting of upward-closure complements and product intersections into
//! unions of `*`-products. Correctness of these constructions is discharged
//! by automata-based language-equivalence tests rather than taken on trust.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter};
use crate::basis::Basis;
use crate::par;
use crate::star::{Atom, IdealUnion, StarProduct};
use crate::word::Word;

/// The complement of the upward closure of a single word, as a union of
/// `*`-products.
///
/// A word avoids `↑w` exactly when the greedy embedding of `w = a_1..a_n`
/// stops after matching some prefix of length `m < n`. Each stopping level
/// contributes the products
/// `(Σ∖↑a_1)* c_1? (Σ∖↑a_2)* c_2? .. c_m? (Σ∖↑a_{m+1})*`
/// over all choices of matched letters `c_j ⪰ a_j`, star atoms with empty
/// sets omitted.
pub fn complement_up_word(alpha: &Alphabet, w: &Word) -> IdealUnion {
    let letters = w.letters();
    let n = letters.len();
    let mut products = Vec::new();
    // avoid[j] = Σ ∖ ↑a_j, the letters that cannot serve as the j-th match
    let avoid: Vec<Vec<Letter>> = letters
        .iter()
        .map(|&a| (0..alpha.len()).filter(|&b| !alpha.leq(a, b)).collect())
        .collect();
    for m in 0..n {
        // all choices of c_1..c_m with c_j in ↑a_j
        let choices: Vec<Vec<Letter>> = letters[..m].iter().map(|&a| alpha.up(a)).collect();
        let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == m {
                let mut atoms = Vec::new();
                for (j, c) in prefix.iter().enumerate() {
                    if !avoid[j].is_empty() {
                        atoms.push(Atom::Star(avoid[j].clone()));
                    }
                    atoms.push(Atom::LetterOpt(*c));
                }
                if !avoid[m].is_empty() {
                    atoms.push(Atom::Star(avoid[m].clone()));
                }
                products.push(StarProduct::from_atoms_unchecked(atoms));
            } else {
                // push in reverse so letters are explored in index order
                for &c in choices[prefix.len()].iter().rev() {
                    let mut next = prefix.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
    }
    IdealUnion::from_products(products)
}

/// Intersection of two `*`-products as a union of `*`-products.
///
/// Recursion on the leading atoms, memoized over suffix pairs; every
/// recursive call strictly shrinks one suffix, so the table stays finite.
pub fn intersect(alpha: &Alphabet, p: &StarProduct, q: &StarProduct) -> IdealUnion {
    let mut memo: HashMap<(usize, usize), Vec<StarProduct>> = HashMap::new();
    let out = intersect_suffixes(alpha, p.atoms(), q.atoms(), 0, 0, &mut memo);
    IdealUnion::from_products(out)
}

fn intersect_suffixes(
    alpha: &Alphabet,
    p: &[Atom],
    q: &[Atom],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), Vec<StarProduct>>,
) -> Vec<StarProduct> {
    if let Some(hit) = memo.get(&(i, j)) {
        return hit.clone();
    }
    let result: Vec<StarProduct> = match (p.get(i), q.get(j)) {
        (None, _) | (_, None) => vec![StarProduct::epsilon()],
        (Some(Atom::LetterOpt(a)), Some(Atom::LetterOpt(b))) => {
            let mut out = intersect_suffixes(alpha, p, q, i + 1, j, memo);
            out.extend(intersect_suffixes(alpha, p, q, i, j + 1, memo));
            let meet: Vec<Letter> = (0..alpha.len())
                .filter(|&c| alpha.leq(c, *a) && alpha.leq(c, *b))
                .collect();
            for c in alpha.maximal_of(&meet) {
                for rest in intersect_suffixes(alpha, p, q, i + 1, j + 1, memo) {
                    out.push(rest.prepend(Atom::LetterOpt(c)));
                }
            }
            out
        }
        (Some(Atom::Star(s)), Some(Atom::LetterOpt(b))) => {
            let mut out = intersect_suffixes(alpha, p, q, i, j + 1, memo);
            out.extend(intersect_suffixes(alpha, p, q, i + 1, j, memo));
            let meet: Vec<Letter> = s.iter().copied().filter(|&c| alpha.leq(c, *b)).collect();
            for c in alpha.maximal_of(&meet) {
                for rest in intersect_suffixes(alpha, p, q, i, j + 1, memo) {
                    out.push(rest.prepend(Atom::LetterOpt(c)));
                }
            }
            out
        }
        (Some(Atom::LetterOpt(a)), Some(Atom::Star(s))) => {
            let mut out = intersect_suffixes(alpha, p, q, i + 1, j, memo);
            out.extend(intersect_suffixes(alpha, p, q, i, j + 1, memo));
            let meet: Vec<Letter> = s.iter().copied().filter(|&c| alpha.leq(c, *a)).collect();
            for c in alpha.maximal_of(&meet) {
                for rest in intersect_suffixes(alpha, p, q, i + 1, j, memo) {
                    out.push(rest.prepend(Atom::LetterOpt(c)));
                }
            }
            out
        }
        (Some(Atom::Star(s1)), Some(Atom::Star(s2))) => {
            let mut tails = intersect_suffixes(alpha, p, q, i + 1, j, memo);
            tails.extend(intersect_suffixes(alpha, p, q, i, j + 1, memo));
            let common: Vec<Letter> =
                s1.iter().copied().filter(|c| s2.binary_search(c).is_ok()).collect();
            if common.is_empty() {
                tails
            } else {
                tails
                    .into_iter()
                    .map(|rest| rest.prepend(Atom::Star(common.clone())))
                    .collect()
            }
        }
    };
    memo.insert((i, j), result.clone());
    result
}

/// Intersection of two unions, distributing [`intersect`] over all pairs.
pub fn intersect_unions(alpha: &Alphabet, u: &IdealUnion, v: &IdealUnion) -> IdealUnion {
    intersect_unions_impl(alpha, u, v, false)
}

/// Sequential twin of [`intersect_unions`], kept callable for baselines.
pub fn intersect_unions_seq(alpha: &Alphabet, u: &IdealUnion, v: &IdealUnion) -> IdealUnion {
    intersect_unions_impl(alpha, u, v, true)
}

fn intersect_unions_impl(
    alpha: &Alphabet,
    u: &IdealUnion,
    v: &IdealUnion,
    force_seq: bool,
) -> IdealUnion {
    let pairs: Vec<(&StarProduct, &StarProduct)> = u
        .products()
        .iter()
        .flat_map(|p| v.products().iter().map(move |q| (p, q)))
        .collect();
    let one = |idx: usize| {
        let (p, q) = pairs[idx];
        intersect(alpha, p, q)
    };
    let parts = if force_seq {
        par::map_indexed_seq(pairs.len(), &one)
    } else {
        par::map_indexed(pairs.len(), &one)
    };
    IdealUnion::from_products(parts.into_iter().flat_map(|u| u.products().to_vec()).collect())
}

/// The complement of `↑B` as a union of `*`-products: the intersection of the
/// per-word complements. For the empty basis the complement is the full
/// language `(Σ)*`.
pub fn complement_up_basis(alpha: &Alphabet, basis: &Basis) -> IdealUnion {
    let mut acc = IdealUnion::from_products(vec![StarProduct::full(alpha)]);
    for w in basis.words() {
        let next = intersect_unions(alpha, &acc, &complement_up_word(alpha, w));
        // normalizing intermediates keeps the union from ballooning
        acc = normalize(alpha, &next);
    }
    acc
}

/// Removes duplicate products and any product whose language is included in
/// another member's, deciding inclusions on the product DFAs. Among products
/// with equal languages the canonically least is kept.
pub fn normalize(alpha: &Alphabet, u: &IdealUnion) -> IdealUnion {
    normalize_impl(alpha, u, false)
}

/// Sequential twin of [`normalize`], kept callable for baselines.
pub fn normalize_seq(alpha: &Alphabet, u: &IdealUnion) -> IdealUnion {
    normalize_impl(alpha, u, true)
}

fn normalize_impl(alpha: &Alphabet, u: &IdealUnion, force_seq: bool) -> IdealUnion {
    let products = u.products(); // already sorted, deduplicated
    let n = products.len();
    if n <= 1 {
        return u.clone();
    }
    let dfas: Vec<crate::dfa::Dfa> = products.iter().map(|p| p.to_dfa(alpha)).collect();
    let one = |idx: usize| {
        let (i, j) = (idx / n, idx % n);
        i != j && dfas[i].included_in(&dfas[j])
    };
    let included = if force_seq {
        par::map_indexed_seq(n * n, &one)
    } else {
        par::map_indexed(n * n, &one)
    };
    let inc = |i: usize, j: usize| included[i * n + j];
    let kept = (0..n)
        .filter(|&i| !(0..n).any(|j| j != i && inc(i, j) && (!inc(j, i) || j < i)))
        .map(|i| products[i].clone())
        .collect();
    IdealUnion::from_products(kept)
}
