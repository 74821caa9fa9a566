//! Unification modulo exclusive-or.
//!
//! XOR terms are built from constants, variables, and a binary `+` operator
//! satisfying associativity, commutativity, a unit (`x + 0 = x`), and
//! nilpotency (`x + x = 0`). This crate decides equivalence of such terms
//! through a canonical normal form, solves systems of equations by computing
//! an idempotent most general unifier, and cross-checks solvability with an
//! independent Gaussian-elimination oracle over GF(2).
//!
//! ```
//! use xor_unify::{parse_term, ConstTable, Equation, ProblemSet, solve};
//!
//! let mut consts = ConstTable::new();
//! let lhs = parse_term("X + key", &mut consts).unwrap();
//! let rhs = parse_term("cipher", &mut consts).unwrap();
//! let problems: ProblemSet = [Equation::new(lhs, rhs)].into_iter().collect();
//!
//! let unifier = solve(&problems).expect("solvable");
//! assert_eq!(unifier.render(&consts), "X := key + cipher");
//! ```
//!
//! The `examples/` directory has one runnable program per capability:
//! normalization, equivalence checking, equation solving, oracle
//! cross-checking, problem generation, and a one-time-pad walkthrough.
//! The same functionality is scriptable through the `xor-unify` binary.

pub mod cli;
pub mod normal_form;
pub mod oracle;
pub mod substitution;
pub mod term;
pub mod unify;

pub use normal_form::{equiv, flatten, parity_vector, MissingAtom, NormalForm, XorSum};
pub use oracle::{
    default_const_name, default_var_name, generate_problem_set, random_term, GenParams,
    Gf2Solution, LinearSystem, SplitMix64,
};
pub use substitution::Substitution;
pub use term::{parse_term, print_term, Atom, ConstTable, ParseError, Term};
pub use unify::{generalizes, is_unifier, solve, Equation, ProblemSet, Solver};
