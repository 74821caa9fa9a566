//! Command-line front end: `solve`, `normalize`, `equiv`, and `gen`.
//!
//! Problem files are UTF-8 text with one `term = term` equation per line;
//! `#` starts a comment and blank lines are ignored. Remember the case
//! convention: `X` is a variable, `x` is a constant.
//!
//! Exit codes: 0 solvable (or equivalent), 1 unsolvable (or not equivalent),
//! 2 input error, 3 internal check failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser as ClapParser, Subcommand};
use serde::Serialize;

use crate::normal_form::NormalForm;
use crate::oracle::{default_const_name, generate_problem_set, GenParams, LinearSystem};
use crate::term::{parse_term, print_term, ConstTable, ParseError};
use crate::unify::{is_unifier, Equation, ProblemSet, Solver};

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_UNSOLVABLE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Captured result of one command, so commands stay testable without
/// spawning processes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    fn ok(stdout: String) -> CmdOutput {
        CmdOutput {
            code: EXIT_SOLVED,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> CmdOutput {
        CmdOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: String) -> CmdOutput {
        CmdOutput {
            code: EXIT_INPUT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }

    fn check_failed(message: String) -> CmdOutput {
        CmdOutput {
            code: EXIT_CHECK_FAILED,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveFlags {
    pub json: bool,
    pub check: bool,
    pub oracle: bool,
}

#[derive(Serialize)]
struct SolveReport {
    status: &'static str,
    substitution: Option<BTreeMap<String, String>>,
    steps: usize,
}

/// Parses a problem file: one `term = term` per line, `#` comments, blank
/// lines ignored. Errors carry the file line and column.
pub fn parse_problem_file(
    text: &str,
    consts: &mut ConstTable,
) -> Result<ProblemSet, ParseError> {
    let mut problems = ProblemSet::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let eq_positions: Vec<usize> = line
            .char_indices()
            .filter(|&(_, c)| c == '=')
            .map(|(i, _)| i)
            .collect();
        match eq_positions.as_slice() {
            [] => {
                return Err(ParseError {
                    message: "expected an equation 'term = term'".to_string(),
                    line: line_no,
                    col: line.chars().count() + 1,
                });
            }
            [pos] => {
                let (lhs_text, rest) = line.split_at(*pos);
                let rhs_text = &rest[1..];
                let lhs = parse_term(lhs_text, consts).map_err(|e| e.at_line(line_no))?;
                let rhs = parse_term(rhs_text, consts)
                    .map_err(|e| e.offset_col(lhs_text.chars().count() + 1).at_line(line_no))?;
                problems.push(Equation::new(lhs, rhs));
            }
            [_, second, ..] => {
                return Err(ParseError {
                    message: "more than one '=' on this line".to_string(),
                    line: line_no,
                    col: line[..*second].chars().count() + 1,
                });
            }
        }
    }
    Ok(problems)
}

/// Solves a problem file and reports the unifier or unsolvability.
pub fn cmd_solve(path: &Path, flags: &SolveFlags) -> CmdOutput {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => return CmdOutput::input_error(format!("{}: {e}", path.display())),
    };
    let mut consts = ConstTable::new();
    let problems = match parse_problem_file(&text, &mut consts) {
        Ok(ps) => ps,
        Err(e) => return CmdOutput::input_error(format!("{}: {e}", path.display())),
    };

    let mut solver = Solver::new(&problems);
    solver.run();
    let steps = solver.steps();
    let solution = solver.into_solution();

    if flags.check {
        if let Some(sub) = &solution {
            if !is_unifier(sub, &problems) {
                return CmdOutput::check_failed(
                    "self-check failed: result does not solve the system".to_string(),
                );
            }
            if !sub.is_idempotent() || !sub.domain_range_disjoint() {
                return CmdOutput::check_failed(
                    "self-check failed: result is not idempotent".to_string(),
                );
            }
        }
    }
    if flags.oracle {
        let oracle_solvable = LinearSystem::from_problems(&problems).is_solvable();
        if oracle_solvable != solution.is_some() {
            return CmdOutput::check_failed(format!(
                "oracle disagreement: solver says {}, elimination says {}",
                if solution.is_some() { "solvable" } else { "unsolvable" },
                if oracle_solvable { "solvable" } else { "unsolvable" },
            ));
        }
    }

    if flags.json {
        let report = match &solution {
            Some(sub) => SolveReport {
                status: "sat",
                substitution: Some(
                    sub.bindings()
                        .map(|(var, value)| (var.to_string(), value.render(&consts)))
                        .collect(),
                ),
                steps,
            },
            None => SolveReport {
                status: "unsat",
                substitution: None,
                steps,
            },
        };
        let line = serde_json::to_string(&report).expect("report serializes");
        let code = if solution.is_some() {
            EXIT_SOLVED
        } else {
            EXIT_UNSOLVABLE
        };
        return CmdOutput::with_code(code, format!("{line}\n"));
    }

    match solution {
        Some(sub) => CmdOutput::ok(format!("SOLUTION\n{}\n", sub.render(&consts))),
        None => CmdOutput::with_code(EXIT_UNSOLVABLE, "UNSATISFIABLE\n".to_string()),
    }
}

/// Prints the canonical form of one term.
pub fn cmd_normalize(term_text: &str) -> CmdOutput {
    let mut consts = ConstTable::new();
    match parse_term(term_text, &mut consts) {
        Ok(t) => CmdOutput::ok(format!("{}\n", NormalForm::of_term(&t).render(&consts))),
        Err(e) => CmdOutput::input_error(e.to_string()),
    }
}

/// Decides equivalence of two terms parsed in one shared session.
pub fn cmd_equiv(left_text: &str, right_text: &str) -> CmdOutput {
    let mut consts = ConstTable::new();
    let left = match parse_term(left_text, &mut consts) {
        Ok(t) => t,
        Err(e) => return CmdOutput::input_error(format!("left term: {e}")),
    };
    let right = match parse_term(right_text, &mut consts) {
        Ok(t) => t,
        Err(e) => return CmdOutput::input_error(format!("right term: {e}")),
    };
    if crate::normal_form::equiv(&left, &right) {
        CmdOutput::ok("EQUIV\n".to_string())
    } else {
        CmdOutput::with_code(EXIT_UNSOLVABLE, "NOT-EQUIV\n".to_string())
    }
}

/// Generates a reproducible problem file and prints the seed used.
pub fn cmd_gen(params: &GenParams, out_path: &Path) -> CmdOutput {
    if let Err(message) = params.validate() {
        return CmdOutput::input_error(message);
    }
    let problems = generate_problem_set(params);
    let mut consts = ConstTable::new();
    for id in 1..=params.max_consts {
        let assigned = consts.intern(&default_const_name(id));
        debug_assert_eq!(assigned, id);
    }
    let mut file = String::new();
    file.push_str("# generated XOR unification problems\n");
    file.push_str(&format!("# seed: {}\n", params.seed));
    for eq in problems.equations() {
        file.push_str(&format!(
            "{} = {}\n",
            print_term(eq.lhs(), &consts),
            print_term(eq.rhs(), &consts)
        ));
    }
    if let Err(e) = fs::write(out_path, &file) {
        return CmdOutput::input_error(format!("{}: {e}", out_path.display()));
    }
    CmdOutput::ok(format!("seed: {}\n", params.seed))
}

#[derive(ClapParser)]
#[command(
    name = "xor-unify",
    version,
    about = "Unification and equivalence modulo exclusive-or"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print a most general unifier
    Solve {
        /// Problem file: one 'term = term' equation per line
        path: PathBuf,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
        /// Re-verify the solution and its idempotence before reporting
        #[arg(long)]
        check: bool,
        /// Cross-check solvability against GF(2) elimination
        #[arg(long)]
        oracle: bool,
    },
    /// Print the canonical form of a term
    Normalize {
        /// Term text, e.g. 'X + a + (b + a)'
        term: String,
    },
    /// Decide whether two terms are equivalent modulo XOR
    Equiv {
        left: String,
        right: String,
    },
    /// Generate a reproducible random problem file
    Gen {
        /// Output path for the problem file
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_equations: usize,
        #[arg(long, default_value_t = 6)]
        max_vars: usize,
        #[arg(long, default_value_t = 6)]
        max_consts: u64,
        /// Upper bound on non-unit atoms per equation
        #[arg(long, default_value_t = 8)]
        max_atoms: usize,
    },
}

/// Parses arguments, runs the chosen command, prints its output, and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
        }
    };
    let output = match cli.command {
        Command::Solve {
            path,
            json,
            check,
            oracle,
        } => cmd_solve(&path, &SolveFlags { json, check, oracle }),
        Command::Normalize { term } => cmd_normalize(&term),
        Command::Equiv { left, right } => cmd_equiv(&left, &right),
        Command::Gen {
            out,
            seed,
            max_equations,
            max_vars,
            max_consts,
            max_atoms,
        } => cmd_gen(
            &GenParams {
                max_equations,
                max_vars,
                max_consts,
                max_atoms_per_eq: max_atoms,
                seed,
            },
            &out,
        ),
    };
    print!("{}", output.stdout);
    eprint!("{}", output.stderr);
    output.code
}
