//! One-time-pad walkthrough: each ciphertext digit is the message digit XOR
//! the key digit. Recovering the message is a unification problem, and the
//! self-cancellation law is exactly why decryption works.
//!
//! Run with: cargo run --example vernam

use xor_unify::{equiv, solve, ConstTable, Equation, ProblemSet};

fn main() {
    // Three digits of traffic: ciphertext c_i was produced as m_i + k_i.
    // Treat the intercepted ciphertext and the captured key as constants and
    // ask which message digits M1..M3 are consistent with them.
    let equations = ["M1 + k1 = c1", "M2 + k2 = c2", "M3 + k3 = c3"];

    let mut consts = ConstTable::new();
    let problems: ProblemSet = equations
        .iter()
        .map(|line| {
            let (lhs, rhs) = line.split_once('=').unwrap();
            Equation::new(
                xor_unify::parse_term(lhs, &mut consts).unwrap(),
                xor_unify::parse_term(rhs, &mut consts).unwrap(),
            )
        })
        .collect();

    println!("intercepted equations:");
    for line in equations {
        println!("    {line}");
    }

    let unifier = solve(&problems).expect("ciphertext determines the message");
    println!("recovered message digits:");
    for line in unifier.render(&consts).lines() {
        println!("    {line}");
    }

    // Decryption is re-encryption: applying the pad twice is the identity.
    let mut session = ConstTable::new();
    let encrypt_twice = xor_unify::parse_term("(Msg + key) + key", &mut session).unwrap();
    let original = xor_unify::parse_term("Msg", &mut session).unwrap();
    assert!(equiv(&encrypt_twice, &original));
    println!("and (Msg + key) + key is equivalent to Msg, as a pad demands");
}
