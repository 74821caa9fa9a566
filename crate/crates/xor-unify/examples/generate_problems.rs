//! Reproducible random problem generation: the same seed always yields the
//! same systems, which keeps test corpora and bug reports replayable.
//!
//! Run with: cargo run --example generate_problems

use xor_unify::{generate_problem_set, solve, ConstTable, GenParams};

fn main() {
    let mut consts = ConstTable::new();
    for id in 1..=6 {
        consts.intern(&xor_unify::default_const_name(id));
    }

    for seed in 1..=5 {
        let params = GenParams {
            max_equations: 3,
            max_atoms_per_eq: 5,
            seed,
            ..GenParams::default()
        };
        let problems = generate_problem_set(&params);
        println!("# seed {seed}");
        for eq in problems.equations() {
            println!(
                "{} = {}",
                xor_unify::print_term(eq.lhs(), &consts),
                xor_unify::print_term(eq.rhs(), &consts)
            );
        }
        match solve(&problems) {
            Some(unifier) => println!("# mgu: {}", unifier.render(&consts).replace('\n', ", ")),
            None => println!("# unsolvable"),
        }
        println!();
    }
}
