//! Solving equation systems: compute an idempotent most general unifier or
//! learn that none exists.
//!
//! Run with: cargo run --example solve_equations

use xor_unify::{is_unifier, solve, ConstTable, Equation, ProblemSet};

fn system(lines: &[&str], consts: &mut ConstTable) -> ProblemSet {
    lines
        .iter()
        .map(|line| {
            let (lhs, rhs) = line.split_once('=').expect("equation needs '='");
            Equation::new(
                xor_unify::parse_term(lhs, consts).expect("lhs parses"),
                xor_unify::parse_term(rhs, consts).expect("rhs parses"),
            )
        })
        .collect()
}

fn main() {
    let systems: &[&[&str]] = &[
        &["X + a = b"],
        &["X + Y = a", "Y = b + c"],
        // The same variable on both sides cancels, so this holds for any X.
        &["X + a = X + a"],
        // No substitution makes two distinct constants equal.
        &["a = b"],
        // Inconsistent: the first two force a + b = c + d, the third denies it.
        &["X = a + b", "X = c + d", "a + b + c + d = a"],
    ];

    for lines in systems {
        let mut consts = ConstTable::new();
        let problems = system(lines, &mut consts);
        println!("system:");
        for line in *lines {
            println!("    {line}");
        }
        match solve(&problems) {
            Some(unifier) => {
                assert!(is_unifier(&unifier, &problems));
                assert!(unifier.is_idempotent());
                println!("mgu:");
                for line in unifier.render(&consts).lines() {
                    println!("    {line}");
                }
            }
            None => println!("    unsolvable"),
        }
        println!();
    }
}
