//! Substitutions: finite maps from variables to canonical XOR sums, with
//! application, composition, and idempotence checks.
//!
//! Binding values are stored in normal form, so substitution equality,
//! idempotence, and solved-form checks are all plain syntactic comparisons.

use std::collections::{BTreeMap, BTreeSet};

use crate::normal_form::{flatten, NormalForm, XorSum};
use crate::term::{Atom, ConstTable, Term};

/// A finite map from variable names to normal forms.
///
/// Kept canonical: values are reduced, and a variable is never bound to the
/// singleton sum of itself (such a binding is the identity and is dropped on
/// insertion). Map equality therefore coincides with substitution equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substitution {
    bindings: BTreeMap<String, NormalForm>,
}

impl Substitution {
    /// The identity substitution.
    pub fn identity() -> Substitution {
        Substitution::default()
    }

    pub fn singleton(var: impl Into<String>, value: NormalForm) -> Substitution {
        let mut s = Substitution::identity();
        s.insert(var, value);
        s
    }

    pub fn from_bindings<I>(bindings: I) -> Substitution
    where
        I: IntoIterator<Item = (String, NormalForm)>,
    {
        let mut s = Substitution::identity();
        for (var, value) in bindings {
            s.insert(var, value);
        }
        s
    }

    /// Adds a binding, replacing any previous one for the same variable.
    /// A binding of a variable to exactly itself is dropped.
    pub fn insert(&mut self, var: impl Into<String>, value: NormalForm) {
        let var = var.into();
        if value.atoms() == [Atom::Var(var.clone())] {
            self.bindings.remove(&var);
            return;
        }
        self.bindings.insert(var, value);
    }

    pub fn get(&self, var: &str) -> Option<&NormalForm> {
        self.bindings.get(var)
    }

    pub fn is_identity(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, &NormalForm)> {
        self.bindings.iter().map(|(v, nf)| (v.as_str(), nf))
    }

    /// The bound variables, in ascending name order.
    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    /// Every variable occurring in some binding value.
    pub fn range_vars(&self) -> BTreeSet<&str> {
        self.bindings
            .values()
            .flat_map(|nf| nf.variables())
            .collect()
    }

    /// Applies the substitution to a normal form: bound variable atoms are
    /// spliced out for their values, everything else passes through, and the
    /// result is re-reduced. Application distributes over XOR.
    pub fn apply(&self, nf: &NormalForm) -> NormalForm {
        let mut sum = XorSum::new();
        for atom in nf.atoms() {
            match atom.as_var().and_then(|v| self.bindings.get(v)) {
                Some(value) => sum.extend_from(&value.to_xor_sum()),
                None => sum.push(atom.clone()),
            }
        }
        sum.reduce()
    }

    /// Applies the substitution to a term by normalizing it first; the result
    /// is the canonical term of the substituted sum.
    pub fn apply_term(&self, t: &Term) -> Term {
        self.apply(&flatten(t).reduce()).to_term()
    }

    /// Composition `outer after inner`: applying the result is equivalent to
    /// applying `inner` first and `outer` second. Bindings collapsing to the
    /// bound variable itself are pruned.
    pub fn compose(outer: &Substitution, inner: &Substitution) -> Substitution {
        let mut out = Substitution::identity();
        for (var, value) in &inner.bindings {
            out.insert(var.clone(), outer.apply(value));
        }
        for (var, value) in &outer.bindings {
            if !inner.bindings.contains_key(var) {
                out.insert(var.clone(), value.clone());
            }
        }
        out
    }

    /// True when applying the substitution to each binding value leaves it
    /// unchanged, i.e. the substitution equals its own composition with
    /// itself.
    ///
    /// This is implied by [`Substitution::domain_range_disjoint`] but is
    /// slightly weaker: XOR cancellation admits fixpoints such as
    /// `{Y -> Y + Z, Z -> 0}` whose domain and range still overlap. Solver
    /// results always satisfy both.
    pub fn is_idempotent(&self) -> bool {
        self.bindings.values().all(|value| self.apply(value) == *value)
    }

    /// True when no bound variable occurs in any binding value: the
    /// solved-form shape of an idempotent substitution.
    pub fn domain_range_disjoint(&self) -> bool {
        self.bindings
            .values()
            .all(|value| value.variables().all(|v| !self.bindings.contains_key(v)))
    }

    /// Renders as `Var := value` lines sorted by variable name, or `{}` for
    /// the identity.
    pub fn render(&self, consts: &ConstTable) -> String {
        if self.bindings.is_empty() {
            return "{}".to_string();
        }
        let lines: Vec<String> = self
            .bindings
            .iter()
            .map(|(var, value)| format!("{var} := {}", value.render(consts)))
            .collect();
        lines.join("\n")
    }
}
