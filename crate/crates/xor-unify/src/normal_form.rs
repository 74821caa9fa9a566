//! Flat-list representation of XOR sums and the canonical normal form.
//!
//! A term is flattened into the sequence of its leaves, then rewritten into a
//! canonical form: sorted by the atom order, duplicates cancelled in pairs,
//! unit atoms dropped. Two terms are equivalent modulo associativity,
//! commutativity, unit, and nilpotency exactly when their canonical forms are
//! syntactically equal, which turns the equivalence decision into a list
//! comparison.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;

use crate::term::{Atom, ConstTable, Term};

/// An XOR of atoms in sequence order, not yet canonical: duplicates and unit
/// atoms are allowed. The empty sum denotes the unit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XorSum {
    atoms: Vec<Atom>,
}

impl XorSum {
    pub fn new() -> XorSum {
        XorSum::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn push(&mut self, atom: Atom) {
        self.atoms.push(atom);
    }

    pub fn extend_from(&mut self, other: &XorSum) {
        self.atoms.extend_from_slice(&other.atoms);
    }

    /// Rebuilds a term: the empty sum is the unit, a singleton is its atom,
    /// anything longer is the left-associated XOR of the atoms in order.
    pub fn to_term(&self) -> Term {
        rebuild(&self.atoms)
    }

    /// Rewrites into the canonical form: sort by the atom order, delete atoms
    /// occurring an even number of times, keep one copy of those occurring an
    /// odd number of times, and drop unit atoms.
    pub fn reduce(&self) -> NormalForm {
        let mut atoms = self.atoms.clone();
        atoms.sort();
        let mut out = Vec::new();
        let mut i = 0;
        while i < atoms.len() {
            let mut j = i + 1;
            while j < atoms.len() && atoms[j] == atoms[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 && !atoms[i].is_unit() {
                out.push(atoms[i].clone());
            }
            i = j;
        }
        NormalForm { atoms: out }
    }
}

impl From<Vec<Atom>> for XorSum {
    fn from(atoms: Vec<Atom>) -> XorSum {
        XorSum { atoms }
    }
}

impl FromIterator<Atom> for XorSum {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> XorSum {
        XorSum {
            atoms: iter.into_iter().collect(),
        }
    }
}

/// A canonical XOR sum: strictly ascending in the atom order (hence
/// duplicate-free) and containing no unit atom. The empty form denotes the
/// unit, so a term is equivalent to 0 exactly when its normal form is empty.
///
/// Values can only be produced by [`XorSum::reduce`], which establishes the
/// invariants by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    atoms: Vec<Atom>,
}

impl NormalForm {
    pub fn empty() -> NormalForm {
        NormalForm::default()
    }

    /// Canonicalizes an arbitrary atom sequence.
    pub fn from_atoms(atoms: Vec<Atom>) -> NormalForm {
        XorSum::from(atoms).reduce()
    }

    /// Canonicalizes a term.
    pub fn of_term(t: &Term) -> NormalForm {
        flatten(t).reduce()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.binary_search(atom).is_ok()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.atoms.iter().any(|a| a.as_var() == Some(name))
    }

    /// The variable atoms of the form, in ascending order.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().filter_map(|a| a.as_var())
    }

    pub fn to_xor_sum(&self) -> XorSum {
        XorSum {
            atoms: self.atoms.clone(),
        }
    }

    pub fn to_term(&self) -> Term {
        rebuild(&self.atoms)
    }

    /// Renders as a `+`-joined atom list, or `0` for the empty form.
    pub fn render(&self, consts: &ConstTable) -> String {
        if self.atoms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| match a {
                Atom::Const(id) => consts
                    .name(*id)
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("c{id}")),
                Atom::Var(name) => name.clone(),
            })
            .collect();
        parts.join(" + ")
    }
}

fn rebuild(atoms: &[Atom]) -> Term {
    let mut it = atoms.iter();
    let Some(first) = it.next() else {
        return Term::unit();
    };
    it.fold(first.to_term(), |acc, a| Term::xor(acc, a.to_term()))
}

/// Flattens a term into the sequence of its leaves in left-to-right order.
/// Every leaf appears exactly once; unit leaves are retained at this stage.
pub fn flatten(t: &Term) -> XorSum {
    let mut atoms = Vec::new();
    // Explicit stack, so deeply nested input from the parser cannot overflow.
    let mut stack = vec![t];
    while let Some(node) = stack.pop() {
        match node {
            Term::Const(id) => atoms.push(Atom::Const(*id)),
            Term::Var(name) => atoms.push(Atom::Var(name.clone())),
            Term::Xor(l, r) => {
                stack.push(r);
                stack.push(l);
            }
        }
    }
    XorSum { atoms }
}

/// Decides equivalence modulo XOR: `t1` and `t2` are equivalent exactly when
/// their combined sum cancels to the empty form.
pub fn equiv(t1: &Term, t2: &Term) -> bool {
    let mut combined = flatten(t1);
    combined.extend_from(&flatten(t2));
    combined.reduce().is_empty()
}

/// The basis handed to [`parity_vector`] lacked an atom of the term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingAtom {
    pub atom: Atom,
}

impl fmt::Display for MissingAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis does not contain atom {:?}", self.atom)
    }
}

impl Error for MissingAtom {}

/// Occurrence parity of each basis atom among the leaves of `t`, computed by
/// a direct tree walk. This deliberately avoids [`flatten`] and
/// [`XorSum::reduce`] so it can serve as an independent check on them.
///
/// `basis` must contain every non-unit atom of `t`; unit leaves carry no
/// parity and are ignored.
pub fn parity_vector(t: &Term, basis: &[Atom]) -> Result<Vec<bool>, MissingAtom> {
    let index: HashMap<&Atom, usize> = basis.iter().zip(0..).collect();
    let mut bits = vec![false; basis.len()];
    let mut stack = vec![t];
    while let Some(node) = stack.pop() {
        let atom = match node {
            Term::Const(0) => continue,
            Term::Const(id) => Atom::Const(*id),
            Term::Var(name) => Atom::Var(name.clone()),
            Term::Xor(l, r) => {
                stack.push(l);
                stack.push(r);
                continue;
            }
        };
        match index.get(&atom) {
            Some(&i) => bits[i] = !bits[i],
            None => return Err(MissingAtom { atom }),
        }
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_term, ConstTable};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    // Two nested ways of writing zero, awkward to simplify by hand.
    const NESTED_ZERO_A: &str = "Z + a + (b + c) + a + (b + c) + Z";
    const NESTED_ZERO_B: &str = "d + (a + e) + ((b + (d + e)) + c) + a + (b + c)";

    fn parse(text: &str) -> Term {
        let mut consts = ConstTable::new();
        parse_term(text, &mut consts).expect("test term must parse")
    }

    fn consts(n: u64) -> Vec<Atom> {
        (1..=n).map(Atom::Const).collect()
    }

    #[test]
    fn flatten_keeps_single_unit_leaf() {
        let sum = flatten(&Term::unit());
        assert_eq!(sum.atoms(), &[Atom::Const(0)]);
    }

    #[test]
    fn flatten_preserves_leaf_order() {
        let t = Term::xor(
            Term::xor(Term::var("X"), Term::Const(1)),
            Term::Const(2),
        );
        assert_eq!(
            flatten(&t).atoms(),
            &[Atom::Var("X".into()), Atom::Const(1), Atom::Const(2)]
        );
    }

    #[test]
    fn rebuild_empty_singleton_and_chain() {
        assert_eq!(XorSum::new().to_term(), Term::unit());
        let single = XorSum::from(vec![Atom::Var("X".into())]);
        assert_eq!(single.to_term(), Term::var("X"));
        let chain = XorSum::from(vec![Atom::Const(1), Atom::Const(2), Atom::Var("X".into())]);
        assert_eq!(
            chain.to_term(),
            Term::xor(
                Term::xor(Term::Const(1), Term::Const(2)),
                Term::var("X")
            )
        );
    }

    #[test]
    fn nested_zero_terms_reduce_to_empty() {
        assert!(NormalForm::of_term(&parse(NESTED_ZERO_A)).is_empty());
        assert!(NormalForm::of_term(&parse(NESTED_ZERO_B)).is_empty());
    }

    #[test]
    fn reduce_cancels_pairs_and_drops_units() {
        let nf = NormalForm::from_atoms(vec![Atom::Const(1), Atom::Const(2), Atom::Const(1)]);
        assert_eq!(nf.atoms(), &[Atom::Const(2)]);

        let nf = NormalForm::from_atoms(vec![Atom::Const(0), Atom::Var("X".into())]);
        assert_eq!(nf.atoms(), &[Atom::Var("X".into())]);
    }

    #[test]
    fn equiv_on_fixed_cases() {
        assert!(equiv(&parse(NESTED_ZERO_A), &Term::unit()));
        assert!(equiv(&Term::var("X"), &Term::var("X")));
        // Distinct constants have different parity vectors, so they must not
        // be equivalent.
        let basis = consts(2);
        assert_ne!(
            parity_vector(&Term::Const(1), &basis).unwrap(),
            parity_vector(&Term::Const(2), &basis).unwrap()
        );
        assert!(!equiv(&Term::Const(1), &Term::Const(2)));
    }

    #[test]
    fn parity_vector_fixed_cases() {
        assert_eq!(
            parity_vector(&Term::unit(), &consts(3)).unwrap(),
            vec![false, false, false]
        );
        let t = Term::xor(Term::xor(Term::Const(1), Term::Const(2)), Term::Const(1));
        assert_eq!(parity_vector(&t, &consts(2)).unwrap(), vec![false, true]);
    }

    #[test]
    fn parity_vector_reports_missing_atom() {
        let t = Term::xor(Term::Const(1), Term::var("X"));
        let err = parity_vector(&t, &consts(1)).unwrap_err();
        assert_eq!(err.atom, Atom::Var("X".into()));
    }

    fn union_basis(t1: &Term, t2: &Term) -> Vec<Atom> {
        let mut set: BTreeSet<Atom> = t1.atoms();
        set.extend(t2.atoms());
        set.into_iter().collect()
    }

    // Independent leaf counter for the flattening oracle: plain structural
    // recursion, no sharing with `flatten`.
    fn leaf_count(t: &Term) -> usize {
        match t {
            Term::Const(_) | Term::Var(_) => 1,
            Term::Xor(l, r) => leaf_count(l) + leaf_count(r),
        }
    }

    use crate::term::tests::term_strategy;

    proptest! {
        #[test]
        fn flatten_emits_every_leaf_once(t in term_strategy()) {
            prop_assert_eq!(flatten(&t).len(), leaf_count(&t));
        }

        #[test]
        fn reduce_is_idempotent(t in term_strategy()) {
            let nf = NormalForm::of_term(&t);
            prop_assert_eq!(nf.to_xor_sum().reduce(), nf);
        }

        #[test]
        fn normal_form_invariants(t in term_strategy()) {
            let nf = NormalForm::of_term(&t);
            for w in nf.atoms().windows(2) {
                prop_assert!(w[0] < w[1], "atoms must be strictly ascending");
            }
            prop_assert!(nf.atoms().iter().all(|a| !a.is_unit()));
        }

        #[test]
        fn reduce_preserves_meaning_by_parity(t in term_strategy()) {
            let basis: Vec<Atom> = t.atoms().into_iter().collect();
            let reduced = NormalForm::of_term(&t).to_term();
            prop_assert_eq!(
                parity_vector(&reduced, &basis).unwrap(),
                parity_vector(&t, &basis).unwrap()
            );
        }

        #[test]
        fn canonicity_matches_parity_oracle(t1 in term_strategy(), t2 in term_strategy()) {
            let basis = union_basis(&t1, &t2);
            let same_nf = NormalForm::of_term(&t1) == NormalForm::of_term(&t2);
            let same_parity =
                parity_vector(&t1, &basis).unwrap() == parity_vector(&t2, &basis).unwrap();
            prop_assert_eq!(same_nf, same_parity);
        }

        #[test]
        fn equiv_agrees_with_per_side_reduction(t1 in term_strategy(), t2 in term_strategy()) {
            let by_sides = NormalForm::of_term(&t1) == NormalForm::of_term(&t2);
            prop_assert_eq!(equiv(&t1, &t2), by_sides);
        }

        #[test]
        fn equiv_is_reflexive_and_symmetric(t1 in term_strategy(), t2 in term_strategy()) {
            prop_assert!(equiv(&t1, &t1));
            prop_assert_eq!(equiv(&t1, &t2), equiv(&t2, &t1));
        }

        #[test]
        fn equiv_is_a_congruence_for_xor(
            a in term_strategy(),
            b in term_strategy(),
            c in term_strategy(),
            d in term_strategy(),
        ) {
            if equiv(&a, &b) && equiv(&c, &d) {
                prop_assert!(equiv(
                    &Term::xor(a.clone(), c.clone()),
                    &Term::xor(b.clone(), d.clone())
                ));
            }
            // Transitivity, on the same samples.
            if equiv(&a, &b) && equiv(&b, &c) {
                prop_assert!(equiv(&a, &c));
            }
        }
    }
}
