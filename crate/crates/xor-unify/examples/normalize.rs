//! Canonical normal forms: flatten a nested XOR term and reduce it until
//! equivalent terms become syntactically identical.
//!
//! Run with: cargo run --example normalize

use xor_unify::{flatten, ConstTable, NormalForm};

fn main() {
    let inputs = [
        "Z + a + (b + c) + a + (b + c) + Z",
        "d + (a + e) + ((b + (d + e)) + c) + a + (b + c)",
        "X + a + (b + a)",
        "0 + X + 0",
    ];

    for text in inputs {
        let mut consts = ConstTable::new();
        let term = xor_unify::parse_term(text, &mut consts).expect("example input parses");

        // Flattening preserves every leaf; reduction sorts, cancels pairs,
        // and drops units.
        let flat = flatten(&term);
        let normal = NormalForm::of_term(&term);

        println!("input:   {text}");
        println!("leaves:  {}", flat.len());
        println!("normal:  {}", normal.render(&consts));
        println!();
    }
}
