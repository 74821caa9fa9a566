use std::process::exit;

fn main() {
    exit(xor_unify::cli::run(std::env::args()))
}
