//! Independent solvability check via Gaussian elimination over GF(2), plus
//! seeded random generation of terms and problem sets for testing.
//!
//! An XOR equation is a linear equation over the two-element field: variables
//! are unknowns, constants are right-hand-side coordinates. Row reduction
//! decides solvability and yields ground unifiers without going anywhere near
//! the unification rules, which is what makes it a useful cross-check.
//!
//! The oracle only produces ground solutions over the problem's own
//! constants. That is enough for the solvability question: a solvable system
//! always has such a ground solution, obtained from any unifier by mapping
//! its remaining variables to 0.

use crate::normal_form::NormalForm;
use crate::substitution::Substitution;
use crate::term::{Atom, Term};
use crate::unify::{Equation, ProblemSet};

/// Splitmix64 generator. The `gen` command promises byte-identical output
/// for a given seed, so the stream must stay stable across builds and
/// dependency upgrades; a local implementation guarantees that.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..n`. Modulo bias is irrelevant at the sizes
    /// used here.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is meaningless");
        self.next_u64() % n
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// The GF(2) view of a problem set: one row per equation, a coefficient bit
/// per variable and a right-hand-side bit per constant, both indexed in atom
/// order. A set bit means the atom occurs in that equation's normal form.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    vars: Vec<String>,
    consts: Vec<u64>,
    coeff: Vec<Vec<bool>>,
    rhs: Vec<Vec<bool>>,
}

/// Result of row reduction on a solvable system: one particular assignment
/// (per variable, a bit vector over the constant index) and a basis of the
/// coefficient matrix's nullspace (bit vectors over the variable index).
#[derive(Debug, Clone)]
pub struct Gf2Solution {
    particular: Vec<Vec<bool>>,
    nullspace: Vec<Vec<bool>>,
}

impl Gf2Solution {
    pub fn particular(&self) -> &[Vec<bool>] {
        &self.particular
    }

    pub fn nullspace_dim(&self) -> usize {
        self.nullspace.len()
    }
}

impl LinearSystem {
    pub fn from_problems(problems: &ProblemSet) -> LinearSystem {
        let vars: Vec<String> = problems.variables().into_iter().collect();
        let consts: Vec<u64> = problems.constants().into_iter().collect();
        let mut coeff = Vec::with_capacity(problems.len());
        let mut rhs = Vec::with_capacity(problems.len());
        for eq in problems.equations() {
            let mut crow = vec![false; vars.len()];
            let mut rrow = vec![false; consts.len()];
            for atom in eq.normal_form().atoms() {
                match atom {
                    Atom::Var(name) => {
                        let i = vars.binary_search(name).expect("variable indexed");
                        crow[i] = true;
                    }
                    Atom::Const(id) => {
                        let j = consts.binary_search(id).expect("constant indexed");
                        rrow[j] = true;
                    }
                }
            }
            coeff.push(crow);
            rhs.push(rrow);
        }
        LinearSystem {
            vars,
            consts,
            coeff,
            rhs,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn consts(&self) -> &[u64] {
        &self.consts
    }

    pub fn num_equations(&self) -> usize {
        self.coeff.len()
    }

    /// Reconstructs the normal form encoded by one row.
    #[cfg(test)]
    fn decode_row(&self, row: usize) -> NormalForm {
        let mut atoms = Vec::new();
        for (j, &bit) in self.rhs[row].iter().enumerate() {
            if bit {
                atoms.push(Atom::Const(self.consts[j]));
            }
        }
        for (i, &bit) in self.coeff[row].iter().enumerate() {
            if bit {
                atoms.push(Atom::Var(self.vars[i].clone()));
            }
        }
        NormalForm::from_atoms(atoms)
    }

    /// Gauss-Jordan elimination with pivots chosen in column order. Returns
    /// `None` exactly when some equation reduces to `0 = nonzero`.
    pub fn solve(&self) -> Option<Gf2Solution> {
        let rows = self.coeff.len();
        let nv = self.vars.len();
        let nc = self.consts.len();
        let mut coeff = self.coeff.clone();
        let mut rhs = self.rhs.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();

        for col in 0..nv {
            let rank = pivots.len();
            let Some(p) = (rank..rows).find(|&r| coeff[r][col]) else {
                continue;
            };
            coeff.swap(rank, p);
            rhs.swap(rank, p);
            let pivot_coeff = coeff[rank].clone();
            let pivot_rhs = rhs[rank].clone();
            for r in 0..rows {
                if r != rank && coeff[r][col] {
                    for (dst, &src) in coeff[r].iter_mut().zip(&pivot_coeff) {
                        *dst ^= src;
                    }
                    for (dst, &src) in rhs[r].iter_mut().zip(&pivot_rhs) {
                        *dst ^= src;
                    }
                }
            }
            pivots.push((rank, col));
        }

        // Every row below the rank has an all-zero coefficient part; a
        // nonzero right-hand side there is a contradiction.
        if rhs[pivots.len()..].iter().any(|row| row.contains(&true)) {
            return None;
        }

        let mut particular = vec![vec![false; nc]; nv];
        for &(row, col) in &pivots {
            particular[col] = rhs[row].clone();
        }

        let mut is_pivot_col = vec![false; nv];
        for &(_, col) in &pivots {
            is_pivot_col[col] = true;
        }
        let mut nullspace = Vec::new();
        for free in 0..nv {
            if is_pivot_col[free] {
                continue;
            }
            let mut v = vec![false; nv];
            v[free] = true;
            for &(row, col) in &pivots {
                if coeff[row][free] {
                    v[col] = true;
                }
            }
            nullspace.push(v);
        }

        Some(Gf2Solution {
            particular,
            nullspace,
        })
    }

    pub fn is_solvable(&self) -> bool {
        self.solve().is_some()
    }

    /// Decodes a per-variable bit assignment into a ground substitution.
    pub fn substitution_from(&self, assignment: &[Vec<bool>]) -> Substitution {
        let mut sub = Substitution::identity();
        for (i, var) in self.vars.iter().enumerate() {
            let atoms: Vec<Atom> = assignment[i]
                .iter()
                .zip(&self.consts)
                .filter(|&(&bit, _)| bit)
                .map(|(_, &id)| Atom::Const(id))
                .collect();
            sub.insert(var.clone(), NormalForm::from_atoms(atoms));
        }
        sub
    }

    /// Draws `count` ground unifiers: the particular solution plus a random
    /// nullspace combination chosen independently for each constant
    /// coordinate. Every sample solves the source problem set.
    ///
    /// # Panics
    ///
    /// Panics when the system is unsolvable.
    pub fn sample_unifiers(&self, count: usize, seed: u64) -> Vec<Substitution> {
        let solution = self
            .solve()
            .expect("sample_unifiers requires a solvable system");
        let nc = self.consts.len();
        let mut rng = SplitMix64::new(seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut assignment = solution.particular.clone();
            for basis_vec in &solution.nullspace {
                // One independent coin per constant coordinate.
                let use_col: Vec<bool> = (0..nc).map(|_| rng.flip()).collect();
                for (row, &in_vec) in assignment.iter_mut().zip(basis_vec) {
                    if in_vec {
                        for (bit, &flip) in row.iter_mut().zip(&use_col) {
                            *bit ^= flip;
                        }
                    }
                }
            }
            out.push(self.substitution_from(&assignment));
        }
        out
    }
}

/// Bounds and seed for random problem generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub max_equations: usize,
    pub max_vars: usize,
    pub max_consts: u64,
    pub max_atoms_per_eq: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> GenParams {
        GenParams {
            max_equations: 5,
            max_vars: 6,
            max_consts: 6,
            max_atoms_per_eq: 8,
            seed: 1,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_vars < 1 {
            return Err("max-vars must be at least 1".to_string());
        }
        if self.max_consts < 1 {
            return Err("max-consts must be at least 1".to_string());
        }
        if self.max_atoms_per_eq < 1 {
            return Err("max-atoms must be at least 1".to_string());
        }
        Ok(())
    }
}

/// Variable names handed out by the generators: a conventional pool first,
/// then numbered fallbacks.
pub fn default_var_name(i: usize) -> String {
    const POOL: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
    match POOL.get(i) {
        Some(name) => (*name).to_string(),
        None => format!("V{i}"),
    }
}

/// Constant names handed out by the generators: letters for the first 26
/// ids, numbered fallbacks after.
pub fn default_const_name(id: u64) -> String {
    assert!(id >= 1, "constant ids start at 1");
    if id <= 26 {
        ((b'a' + (id - 1) as u8) as char).to_string()
    } else {
        format!("c{id}")
    }
}

/// Generates a reproducible random problem set within the given bounds.
/// The same parameters always produce the same problems.
///
/// # Panics
///
/// Panics when the parameters fail [`GenParams::validate`].
pub fn generate_problem_set(params: &GenParams) -> ProblemSet {
    params.validate().expect("invalid generator parameters");
    let mut rng = SplitMix64::new(params.seed);
    let n_eq = if params.max_equations == 0 {
        0
    } else {
        rng.below(params.max_equations as u64 + 1) as usize
    };
    (0..n_eq).map(|_| random_equation(&mut rng, params)).collect()
}

fn random_equation(rng: &mut SplitMix64, params: &GenParams) -> Equation {
    // A slice of purely ground equations keeps the corpus roughly balanced
    // between solvable and unsolvable systems.
    let ground_only = rng.chance(1, 4);
    let n_atoms = 1 + rng.below(params.max_atoms_per_eq as u64) as usize;
    let atoms: Vec<Term> = (0..n_atoms)
        .map(|_| {
            if ground_only || rng.flip() {
                Term::Const(1 + rng.below(params.max_consts))
            } else {
                Term::Var(default_var_name(rng.below(params.max_vars as u64) as usize))
            }
        })
        .collect();
    let split = rng.below(n_atoms as u64 + 1) as usize;
    let lhs = side_term(rng, &atoms[..split]);
    let rhs = side_term(rng, &atoms[split..]);
    Equation::new(lhs, rhs)
}

fn side_term(rng: &mut SplitMix64, leaves: &[Term]) -> Term {
    let mut leaves: Vec<Term> = leaves.to_vec();
    if leaves.is_empty() || rng.chance(1, 8) {
        leaves.push(Term::unit());
    }
    rng.shuffle(&mut leaves);
    random_tree(rng, &leaves)
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

/// Generates one random term: XOR nodes down to `max_depth`, leaves drawn
/// from the unit, `max_consts` constants, and `max_vars` variable names.
pub fn random_term(
    rng: &mut SplitMix64,
    max_depth: usize,
    max_consts: u64,
    max_vars: usize,
) -> Term {
    if max_depth > 0 && rng.chance(3, 5) {
        let left = random_term(rng, max_depth - 1, max_consts, max_vars);
        let right = random_term(rng, max_depth - 1, max_consts, max_vars);
        return Term::xor(left, right);
    }
    if rng.chance(1, 10) {
        Term::unit()
    } else if rng.flip() {
        Term::Const(1 + rng.below(max_consts))
    } else {
        Term::Var(default_var_name(rng.below(max_vars as u64) as usize))
    }
}
