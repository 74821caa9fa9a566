//! Acceptance suite: one test per criterion, each printing a pass line with
//! its elapsed time (visible with `--nocapture`).
//!
//! The corpora are seeded and fixed, so every run checks the same 1,000
//! random terms and the same 1,000 random problem sets.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use xor_unify::{
    generalizes, is_unifier, parity_vector, random_term, solve, Atom, ConstTable, GenParams,
    LinearSystem, NormalForm, ProblemSet, Solver, SplitMix64, Term,
};

const TERM_PAIRS: usize = 1_000;
const PROBLEMS: usize = 1_000;
const MGU_PROBLEMS: usize = 200;
const MGU_SAMPLES: usize = 10;
const ORDER_PROBLEMS: usize = 200;

// Two nested spellings of zero used as golden normalization inputs.
const NESTED_ZERO_A: &str = "Z + a + (b + c) + a + (b + c) + Z";
const NESTED_ZERO_B: &str = "d + (a + e) + ((b + (d + e)) + c) + a + (b + c)";

fn pass(number: u32, name: &str, start: Instant) {
    println!(
        "criterion {number:2} {name}: PASS ({:?})",
        start.elapsed()
    );
}

fn parse(text: &str) -> Term {
    let mut consts = ConstTable::new();
    xor_unify::parse_term(text, &mut consts).expect("acceptance term parses")
}

// ---------------------------------------------------------------------------
// Seeded corpora
// ---------------------------------------------------------------------------

fn leaf_terms(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::Xor(l, r) => {
            leaf_terms(l, out);
            leaf_terms(r, out);
        }
        leaf => out.push(leaf.clone()),
    }
}

fn random_tree(rng: &mut SplitMix64, leaves: &[Term]) -> Term {
    if leaves.len() == 1 {
        return leaves[0].clone();
    }
    let split = 1 + rng.below(leaves.len() as u64 - 1) as usize;
    Term::xor(
        random_tree(rng, &leaves[..split]),
        random_tree(rng, &leaves[split..]),
    )
}

/// An equivalent restatement of `t`: same leaves plus a doubled random term
/// and a unit, shuffled into a fresh tree shape. Doubling and the unit leave
/// every atom's occurrence parity unchanged.
fn equivalent_variant(rng: &mut SplitMix64, t: &Term) -> Term {
    let mut leaves = Vec::new();
    leaf_terms(t, &mut leaves);
    let extra = random_term(rng, 3, 6, 6);
    leaf_terms(&extra, &mut leaves);
    leaf_terms(&extra, &mut leaves);
    leaves.push(Term::unit());
    rng.shuffle(&mut leaves);
    random_tree(rng, &leaves)
}

/// 1,000 seeded term pairs within depth 8, 6 constants, 6 variables. Half
/// the pairs are equivalent by construction so both directions of the
/// canonicity equivalence get exercised.
fn term_pair_corpus() -> Vec<(Term, Term)> {
    let mut rng = SplitMix64::new(0xC0FFEE);
    (0..TERM_PAIRS)
        .map(|_| {
            let t1 = random_term(&mut rng, 8, 6, 6);
            let t2 = if rng.flip() {
                equivalent_variant(&mut rng, &t1)
            } else {
                random_term(&mut rng, 8, 6, 6)
            };
            (t1, t2)
        })
        .collect()
}

/// 1,000 seeded problem sets within 5 equations, 6 variables, 6 constants,
/// and 8 atoms per equation.
fn problem_corpus() -> Vec<ProblemSet> {
    (0..PROBLEMS as u64)
        .map(|seed| {
            xor_unify::generate_problem_set(&GenParams {
                seed,
                ..GenParams::default()
            })
        })
        .collect()
}

fn union_basis(t1: &Term, t2: &Term) -> Vec<Atom> {
    let mut set: BTreeSet<Atom> = t1.atoms();
    set.extend(t2.atoms());
    set.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_golden_normalization() {
    let start = Instant::now();
    for text in [NESTED_ZERO_A, NESTED_ZERO_B] {
        let t = parse(text);
        let clock = Instant::now();
        let nf = NormalForm::of_term(&t);
        let elapsed = clock.elapsed();
        assert!(nf.is_empty(), "{text} must normalize to 0");
        assert!(
            elapsed < Duration::from_millis(1),
            "normalization took {elapsed:?}, expected under 1ms"
        );

        let out = xor_unify::cli::cmd_equiv(text, "0");
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "EQUIV\n");
    }
    pass(1, "golden nested terms normalize to zero", start);
}

#[test]
fn criterion_02_canonicity_matches_parity_oracle() {
    let start = Instant::now();
    let pairs = term_pair_corpus();
    let mut equal = 0usize;
    let mut different = 0usize;
    for (t1, t2) in &pairs {
        let basis = union_basis(t1, t2);
        let nf_equal = NormalForm::of_term(t1) == NormalForm::of_term(t2);
        let parity_equal =
            parity_vector(t1, &basis).unwrap() == parity_vector(t2, &basis).unwrap();
        assert_eq!(
            nf_equal, parity_equal,
            "canonicity counterexample: {t1:?} vs {t2:?}"
        );
        if nf_equal {
            equal += 1;
        } else {
            different += 1;
        }
    }
    assert!(
        equal >= 100 && different >= 100,
        "corpus must exercise both directions: {equal} equal, {different} different"
    );
    assert!(
        start.elapsed() < Duration::from_secs(5),
        "canonicity suite took {:?}, expected under 5s",
        start.elapsed()
    );
    pass(2, "canonical equality matches the parity oracle", start);
}

#[test]
fn criterion_03_normal_form_invariants() {
    let start = Instant::now();
    for (t1, t2) in &term_pair_corpus() {
        for t in [t1, t2] {
            let nf = NormalForm::of_term(t);
            for w in nf.atoms().windows(2) {
                assert!(w[0] < w[1], "atoms not strictly ascending in {nf:?}");
            }
            assert!(
                nf.atoms().iter().all(|a| !a.is_unit()),
                "unit atom left in {nf:?}"
            );
            assert_eq!(nf.to_xor_sum().reduce(), nf, "reduce not idempotent");
        }
    }
    pass(3, "reduce is idempotent, sorted, duplicate- and unit-free", start);
}

#[test]
fn criterion_04_solutions_solve_their_problems() {
    let start = Instant::now();
    let mut solved = 0usize;
    for (seed, ps) in problem_corpus().iter().enumerate() {
        if let Some(sub) = solve(ps) {
            assert!(is_unifier(&sub, ps), "unsound result on seed {seed}");
            solved += 1;
        }
    }
    assert!(solved > 0, "corpus produced no solvable problems");
    assert!(
        start.elapsed() < Duration::from_secs(10),
        "soundness suite took {:?}, expected under 10s",
        start.elapsed()
    );
    pass(4, "every returned unifier solves its system", start);
}

#[test]
fn criterion_05_solutions_are_idempotent() {
    let start = Instant::now();
    for (seed, ps) in problem_corpus().iter().enumerate() {
        if let Some(sub) = solve(ps) {
            let pointwise = sub.is_idempotent();
            let structural = sub.domain_range_disjoint();
            assert!(pointwise, "non-idempotent result on seed {seed}");
            assert_eq!(
                pointwise, structural,
                "idempotence characterizations disagree on seed {seed}"
            );
        }
    }
    pass(5, "every returned unifier is idempotent, both checks agree", start);
}

#[test]
fn criterion_06_solver_agrees_with_gf2_oracle() {
    let start = Instant::now();
    let mut solvable = 0usize;
    let mut unsolvable = 0usize;
    for (seed, ps) in problem_corpus().iter().enumerate() {
        let solver_says = solve(ps).is_some();
        let oracle_says = LinearSystem::from_problems(ps).is_solvable();
        assert_eq!(
            solver_says, oracle_says,
            "completeness disagreement on seed {seed}"
        );
        if solver_says {
            solvable += 1;
        } else {
            unsolvable += 1;
        }
    }
    assert!(
        solvable >= 100 && unsolvable >= 100,
        "corpus must exercise both outcomes: {solvable} solvable, {unsolvable} unsolvable"
    );
    pass(6, "solvability agrees with GF(2) elimination both ways", start);
}

#[test]
fn criterion_07_results_generalize_sampled_unifiers() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut seed = 0u64;
    while checked < MGU_PROBLEMS {
        let ps = xor_unify::generate_problem_set(&GenParams {
            seed,
            ..GenParams::default()
        });
        seed += 1;
        let sys = LinearSystem::from_problems(&ps);
        if !sys.is_solvable() {
            continue;
        }
        let sub = solve(&ps).expect("oracle-solvable problem must unify");
        let samples = sys.sample_unifiers(MGU_SAMPLES, seed ^ 0x5EED);
        assert!(
            generalizes(&sub, &ps, &samples),
            "result fails to generalize a sampled unifier (generation seed {})",
            seed - 1
        );
        checked += 1;
    }
    assert!(
        start.elapsed() < Duration::from_secs(10),
        "mgu suite took {:?}, expected under 10s",
        start.elapsed()
    );
    pass(7, "every unifier generalizes 10 sampled unifiers per problem", start);
}

#[test]
fn criterion_08_termination_bound_holds() {
    let start = Instant::now();
    for (seed, ps) in problem_corpus().iter().enumerate() {
        let mut solver = Solver::new(ps);
        // The solver itself asserts that the measure strictly decreases at
        // every rule application, so finishing at all means no violation.
        solver.run();
        let bound = ps.len() + ps.variables().len();
        assert!(
            solver.steps() <= bound,
            "seed {seed}: {} steps exceeded bound {bound}",
            solver.steps()
        );
    }
    pass(8, "rule applications stay within equations + variables", start);
}

#[test]
fn criterion_09_selection_order_does_not_change_solvability() {
    let start = Instant::now();
    let corpus = problem_corpus();
    for (seed, ps) in corpus.iter().take(ORDER_PROBLEMS).enumerate() {
        let deterministic = solve(ps);
        for round in 0..2u64 {
            let mut rng = SplitMix64::new((seed as u64) ^ (round << 32) ^ 0x0DD5);
            let mut solver = Solver::new(ps);
            solver.run_randomized(&mut rng);
            let randomized = solver.into_solution();
            assert_eq!(
                randomized.is_some(),
                deterministic.is_some(),
                "order sensitivity on seed {seed}"
            );
            if let Some(sub) = &randomized {
                assert!(is_unifier(sub, ps), "randomized result unsound on seed {seed}");
            }
        }
        if let Some(sub) = &deterministic {
            assert!(is_unifier(sub, ps));
        }
    }
    pass(9, "randomized rule order agrees with the deterministic order", start);
}

#[test]
fn criterion_10_cli_contract() {
    let start = Instant::now();
    let golden = |name: &str| -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name)
    };
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_xor-unify"))
            .args(args)
            .output()
            .expect("binary runs")
    };

    // Exit 0 with the text format.
    let out = run(&["solve", golden("sat.xor").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"SOLUTION\nX := a + b\nY := a + b + c\n");

    // Exit 1.
    let out = run(&["solve", golden("unsat.xor").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(out.stdout, b"UNSATISFIABLE\n");

    // Exit 2 on malformed input.
    let out = run(&["solve", golden("bad.xor").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // JSON output is byte-stable against the golden files.
    let out = run(&["solve", "--json", golden("sat.xor").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(golden("solve_sat.json")).unwrap());
    let out = run(&["solve", "--json", golden("unsat.xor").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(out.stdout, std::fs::read(golden("solve_unsat.json")).unwrap());

    // Normalize and equiv, both outcomes.
    let out = run(&["normalize", NESTED_ZERO_A]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"0\n");
    let out = run(&["equiv", NESTED_ZERO_B, "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"EQUIV\n");
    let out = run(&["equiv", "X", "Y"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(out.stdout, b"NOT-EQUIV\n");

    // gen is deterministic and its output always re-parses.
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.xor");
    let b = dir.path().join("b.xor");
    for path in [&a, &b] {
        let out = run(&["gen", path.to_str().unwrap(), "--seed", "3"]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let out = run(&["solve", "--check", "--oracle", a.to_str().unwrap()]);
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 1, "generated file must not exit {code}");

    pass(10, "CLI exit codes and output formats behave as documented", start);
}
