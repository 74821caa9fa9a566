//! Unification modulo XOR: equations are normalized into `sum = 0` form and
//! solved by two inference rules, deleting trivial equations and eliminating
//! one variable at a time. At quiescence the accumulated bindings form an
//! idempotent most general unifier, or the residue is ground and nonempty and
//! the system is unsolvable.

use std::collections::BTreeSet;

use crate::normal_form::{flatten, NormalForm};
use crate::oracle::SplitMix64;
use crate::substitution::Substitution;
use crate::term::{Atom, Term};

/// One equation `lhs = rhs`, kept both in surface form and as the normal form
/// of `lhs + rhs`, which is equivalent to zero exactly when the equation
/// holds. Nilpotency justifies moving the right side over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    lhs: Term,
    rhs: Term,
    nf: NormalForm,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        let mut sum = flatten(&lhs);
        sum.extend_from(&flatten(&rhs));
        let nf = sum.reduce();
        Equation { lhs, rhs, nf }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// The equation as a single sum equivalent to zero.
    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }
}

/// An ordered collection of equations. Duplicates are permitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProblemSet {
    equations: Vec<Equation>,
}

impl ProblemSet {
    pub fn new() -> ProblemSet {
        ProblemSet::default()
    }

    pub fn push(&mut self, eq: Equation) {
        self.equations.push(eq);
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// The distinct variables occurring in the equations as stated, in
    /// ascending name order. Variables that cancel out of an equation's
    /// normal form still count as problem variables.
    pub fn variables(&self) -> BTreeSet<String> {
        self.surface_atoms()
            .filter_map(|a| match a {
                Atom::Var(name) => Some(name),
                Atom::Const(_) => None,
            })
            .collect()
    }

    /// The distinct non-unit constant ids occurring in the equations as
    /// stated, ascending.
    pub fn constants(&self) -> BTreeSet<u64> {
        self.surface_atoms()
            .filter_map(|a| match a {
                Atom::Const(id) => Some(id),
                Atom::Var(_) => None,
            })
            .collect()
    }

    fn surface_atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.equations
            .iter()
            .flat_map(|eq| eq.lhs.atoms().into_iter().chain(eq.rhs.atoms()))
    }
}

impl FromIterator<Equation> for ProblemSet {
    fn from_iter<I: IntoIterator<Item = Equation>>(iter: I) -> ProblemSet {
        ProblemSet {
            equations: iter.into_iter().collect(),
        }
    }
}

/// Solver state: the unsolved sums (each meaning `sum = 0`), the solved
/// bindings accumulated so far, and a step counter.
///
/// Invariants, checked on every rule application:
/// - solved variables are pairwise distinct;
/// - no solved variable occurs in any unsolved sum or solved value, because
///   each binding is applied to the whole state when it is made;
/// - `unsolved.len()` plus the number of distinct unsolved variables strictly
///   decreases at every step, so the run takes at most its initial value,
///   the number of equations plus the number of distinct variables.
#[derive(Debug, Clone)]
pub struct Solver {
    unsolved: Vec<NormalForm>,
    solved: Vec<(String, NormalForm)>,
    steps: usize,
    step_limit: usize,
}

impl Solver {
    pub fn new(problems: &ProblemSet) -> Solver {
        let unsolved: Vec<NormalForm> = problems
            .equations
            .iter()
            .map(|eq| eq.nf.clone())
            .collect();
        let vars: BTreeSet<&str> = unsolved.iter().flat_map(|nf| nf.variables()).collect();
        let step_limit = unsolved.len() + vars.len();
        Solver {
            unsolved,
            solved: Vec::new(),
            steps: 0,
            step_limit,
        }
    }

    pub fn unsolved(&self) -> &[NormalForm] {
        &self.unsolved
    }

    pub fn solved(&self) -> &[(String, NormalForm)] {
        &self.solved
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step_limit(&self) -> usize {
        self.step_limit
    }

    fn measure(&self) -> usize {
        let vars: BTreeSet<&str> = self
            .unsolved
            .iter()
            .flat_map(|nf| nf.variables())
            .collect();
        self.unsolved.len() + vars.len()
    }

    fn count_step(&mut self, measure_before: usize) {
        self.steps += 1;
        let after = self.measure();
        assert!(
            after < measure_before,
            "termination measure failed to decrease: {measure_before} -> {after}"
        );
        assert!(
            self.steps <= self.step_limit,
            "step counter {} exceeded the bound {}",
            self.steps,
            self.step_limit
        );
    }

    /// Deletes the first unsolved sum that is already empty, i.e. an equation
    /// `0 = 0`. Returns false when no such sum exists.
    pub fn remove_trivial(&mut self) -> bool {
        match self.unsolved.iter().position(|nf| nf.is_empty()) {
            Some(pos) => {
                let before = self.measure();
                self.unsolved.remove(pos);
                self.count_step(before);
                true
            }
            None => false,
        }
    }

    /// Isolates the least variable of the first unsolved sum containing one:
    /// for a sum `x + rest`, binds `x` to `rest`, applies the binding to every
    /// other unsolved sum and every solved value, and records the binding.
    /// Returns false when every unsolved sum is ground.
    pub fn eliminate_variable(&mut self) -> bool {
        let found = self.unsolved.iter().enumerate().find_map(|(pos, nf)| {
            nf.variables().next().map(|v| (pos, v.to_string()))
        });
        match found {
            Some((pos, var)) => {
                self.eliminate_at(pos, &var);
                true
            }
            None => false,
        }
    }

    /// Applies one variable elimination at an explicit position. The chosen
    /// sum must contain `var`.
    fn eliminate_at(&mut self, pos: usize, var: &str) {
        let before = self.measure();
        let chosen = self.unsolved.remove(pos);
        let value = NormalForm::from_atoms(
            chosen
                .atoms()
                .iter()
                .filter(|a| a.as_var() != Some(var))
                .cloned()
                .collect(),
        );
        // Occurs check: normal forms are duplicate-free, so removing the one
        // occurrence of `var` must remove all of them. A failure here means
        // normalization is broken, not that the input is bad.
        assert!(
            !value.contains_var(var),
            "occurs check failed for {var}: normalization bug"
        );
        let binding = Substitution::singleton(var.to_string(), value.clone());
        for nf in &mut self.unsolved {
            *nf = binding.apply(nf);
        }
        for (_, solved_value) in &mut self.solved {
            *solved_value = binding.apply(solved_value);
        }
        debug_assert!(
            self.solved.iter().all(|(v, _)| v != var),
            "{var} was already solved"
        );
        self.solved.push((var.to_string(), value));
        debug_assert!(
            self.unsolved.iter().all(|nf| !nf.contains_var(var))
                && self.solved.iter().all(|(_, v)| !v.contains_var(var)),
            "{var} must be fully eliminated from the state"
        );
        self.count_step(before);
    }

    /// Runs rules to quiescence with the deterministic strategy: trivial
    /// deletion first, otherwise variable elimination on the leftmost
    /// eligible sum.
    pub fn run(&mut self) {
        loop {
            if self.remove_trivial() {
                continue;
            }
            if self.eliminate_variable() {
                continue;
            }
            break;
        }
    }

    /// Runs rules to quiescence, picking uniformly among all applicable rule
    /// instances: any empty sum may be deleted, and any (sum, variable) pair
    /// may be eliminated. Used to check that the strategy order does not
    /// affect solvability.
    pub fn run_randomized(&mut self, rng: &mut SplitMix64) {
        loop {
            enum Action {
                Trivial(usize),
                Eliminate(usize, String),
            }
            let mut actions = Vec::new();
            for (pos, nf) in self.unsolved.iter().enumerate() {
                if nf.is_empty() {
                    actions.push(Action::Trivial(pos));
                } else {
                    for v in nf.variables() {
                        actions.push(Action::Eliminate(pos, v.to_string()));
                    }
                }
            }
            if actions.is_empty() {
                break;
            }
            let pick = rng.below(actions.len() as u64) as usize;
            match &actions[pick] {
                Action::Trivial(pos) => {
                    let before = self.measure();
                    self.unsolved.remove(*pos);
                    self.count_step(before);
                }
                Action::Eliminate(pos, var) => {
                    let var = var.clone();
                    self.eliminate_at(*pos, &var);
                }
            }
        }
    }

    /// After quiescence: the accumulated bindings when every equation was
    /// solved, or `None` when a ground nonzero residue remains.
    pub fn into_solution(self) -> Option<Substitution> {
        if !self.unsolved.is_empty() {
            debug_assert!(
                self.unsolved
                    .iter()
                    .all(|nf| !nf.is_empty() && nf.variables().next().is_none()),
                "quiescent residue must be ground and nonzero"
            );
            return None;
        }
        let mut seen = BTreeSet::new();
        for (var, _) in &self.solved {
            assert!(seen.insert(var.clone()), "variable {var} bound twice");
        }
        for (_, value) in &self.solved {
            for v in value.variables() {
                assert!(
                    !seen.contains(v),
                    "solved form leak: bound variable {v} occurs in a value"
                );
            }
        }
        Some(Substitution::from_bindings(self.solved))
    }
}

/// Solves a problem set: returns an idempotent most general unifier, or
/// `None` when the system has no unifier. The empty problem set is vacuously
/// solvable by the identity.
pub fn solve(problems: &ProblemSet) -> Option<Substitution> {
    let mut solver = Solver::new(problems);
    solver.run();
    solver.into_solution()
}

/// True when `sub` solves every equation: each equation's sum cancels to the
/// empty form under `sub`.
pub fn is_unifier(sub: &Substitution, problems: &ProblemSet) -> bool {
    problems
        .equations
        .iter()
        .all(|eq| sub.apply(&eq.nf).is_empty())
}

/// Checks that `sub` is at least as general as every candidate unifier:
/// for each candidate `theta` and each problem variable `v`, applying
/// `theta` after `sub` agrees with `theta` alone on `v`.
///
/// # Panics
///
/// Panics when a candidate is not actually a unifier of `problems`.
pub fn generalizes(
    sub: &Substitution,
    problems: &ProblemSet,
    candidates: &[Substitution],
) -> bool {
    let vars = problems.variables();
    for theta in candidates {
        assert!(
            is_unifier(theta, problems),
            "generalizes: candidate does not solve the problem set"
        );
        for v in &vars {
            let probe = NormalForm::from_atoms(vec![Atom::Var(v.clone())]);
            let through_sub = theta.apply(&sub.apply(&probe));
            let direct = theta.apply(&probe);
            if through_sub != direct {
                return false;
            }
        }
    }
    true
}
