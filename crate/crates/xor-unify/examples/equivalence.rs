//! Deciding equivalence modulo XOR: two terms are equivalent exactly when
//! their combined sum cancels to zero, so no search is needed.
//!
//! Run with: cargo run --example equivalence

use xor_unify::{equiv, ConstTable};

fn main() {
    let pairs = [
        // Rebracketing and reordering do not matter.
        ("a + (b + c)", "(c + a) + b"),
        // Self-cancellation: everything here collapses.
        ("Z + a + (b + c) + a + (b + c) + Z", "0"),
        // A shared variable on both sides cancels too.
        ("X + a", "a + X"),
        // Distinct constants stay distinct.
        ("a", "b"),
        // Encrypt twice with the same pad and you are back where you started.
        ("(Msg + pad) + pad", "Msg"),
    ];

    for (left, right) in pairs {
        // One table per pair: both sides must agree on what 'a' means.
        let mut consts = ConstTable::new();
        let l = xor_unify::parse_term(left, &mut consts).expect("left parses");
        let r = xor_unify::parse_term(right, &mut consts).expect("right parses");
        let verdict = if equiv(&l, &r) { "equivalent" } else { "different" };
        println!("{left}  vs  {right}  ->  {verdict}");
    }
}
