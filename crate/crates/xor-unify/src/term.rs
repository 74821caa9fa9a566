//! Term syntax for XOR formulas: constants, variables, and binary XOR nodes,
//! plus the concrete-syntax parser and printer.
//!
//! Concrete syntax follows the Prolog capitalization convention: an
//! uppercase-initial identifier is a variable, a lowercase-initial identifier
//! is a constant, `0` is the unit, and `+` (left-associative) is XOR.
//! Whitespace is insignificant and `#` starts a line comment.

use std::collections::{BTreeSet, HashMap};
use std::error::Error;
use std::fmt;

/// A formula over the signature `{xor, 0}`: a binary tree whose leaves are
/// constants and variables.
///
/// `Const(0)` is the distinguished unit; there is no other encoding of it.
/// Values are immutable and structural equality is decidable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// A constant, identified by a session-scoped natural number.
    Const(u64),
    /// A variable. The library accepts any nonempty name; only
    /// uppercase-initial identifiers survive a print/parse round trip.
    Var(String),
    /// XOR of two subterms.
    Xor(Box<Term>, Box<Term>),
}

impl Term {
    /// The unit term, `Const(0)`.
    pub fn unit() -> Term {
        Term::Const(0)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Term::Const(0))
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn xor(left: Term, right: Term) -> Term {
        Term::Xor(Box::new(left), Box::new(right))
    }

    /// Views a non-XOR term as an atom. The unit maps to `Atom::Const(0)`.
    pub fn as_atom(&self) -> Option<Atom> {
        match self {
            Term::Const(id) => Some(Atom::Const(*id)),
            Term::Var(name) => Some(Atom::Var(name.clone())),
            Term::Xor(_, _) => None,
        }
    }

    /// The set of non-unit atoms occurring at the leaves of this term.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Const(0) => {}
                Term::Const(id) => {
                    out.insert(Atom::Const(*id));
                }
                Term::Var(name) => {
                    out.insert(Atom::Var(name.clone()));
                }
                Term::Xor(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        out
    }
}

/// A non-XOR leaf: a constant or a variable.
///
/// The derived order is the total atom order used throughout the crate:
/// every constant precedes every variable, constants are ordered by id,
/// variables lexicographically by name. Canonical forms rely on it being
/// a strict total order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Const(u64),
    Var(String),
}

impl Atom {
    pub fn is_unit(&self) -> bool {
        matches!(self, Atom::Const(0))
    }

    pub fn to_term(&self) -> Term {
        match self {
            Atom::Const(id) => Term::Const(*id),
            Atom::Var(name) => Term::Var(name.clone()),
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Atom::Var(name) => Some(name),
            Atom::Const(_) => None,
        }
    }
}

/// Session-scoped mapping between constant names and their numeric ids.
///
/// Ids start at 1 and are assigned in first-occurrence order, so parsing the
/// same text always yields the same numbering. Id 0 is reserved for the unit
/// and never appears in the table.
#[derive(Debug, Clone, Default)]
pub struct ConstTable {
    names: Vec<String>,
    ids: HashMap<String, u64>,
}

impl ConstTable {
    pub fn new() -> ConstTable {
        ConstTable::default()
    }

    /// Returns the id for `name`, allocating the next id on first sight.
    pub fn intern(&mut self, name: &str) -> u64 {
        if let Some(id) = self.ids.get(name) {
            return *id;
        }
        self.names.push(name.to_string());
        let id = self.names.len() as u64;
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn name(&self, id: u64) -> Option<&str> {
        if id == 0 {
            return None;
        }
        self.names.get(id as usize - 1).map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A syntax error with its 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    fn new(message: impl Into<String>, line: usize, col: usize) -> ParseError {
        ParseError {
            message: message.into(),
            line,
            col,
        }
    }

    /// Shifts the reported column, for inputs that are slices of a larger line.
    pub fn offset_col(mut self, by: usize) -> ParseError {
        if self.line == 1 {
            self.col += by;
        }
        self
    }

    /// Rebases the reported line, for inputs that are single lines of a file.
    pub fn at_line(mut self, line: usize) -> ParseError {
        self.line = line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    LParen,
    RParen,
    Zero,
    LowerIdent(String),
    UpperIdent(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Plus => "'+'".to_string(),
            Token::LParen => "'('".to_string(),
            Token::RParen => "')'".to_string(),
            Token::Zero => "'0'".to_string(),
            Token::LowerIdent(s) | Token::UpperIdent(s) => format!("'{s}'"),
        }
    }
}

struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();

    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let start_col = col;
        match c {
            '+' => {
                chars.next();
                col += 1;
                tokens.push(Spanned {
                    token: Token::Plus,
                    line,
                    col: start_col,
                });
            }
            '(' => {
                chars.next();
                col += 1;
                tokens.push(Spanned {
                    token: Token::LParen,
                    line,
                    col: start_col,
                });
            }
            ')' => {
                chars.next();
                col += 1;
                tokens.push(Spanned {
                    token: Token::RParen,
                    line,
                    col: start_col,
                });
            }
            c if c.is_ascii_digit() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                if word == "0" {
                    tokens.push(Spanned {
                        token: Token::Zero,
                        line,
                        col: start_col,
                    });
                } else {
                    return Err(ParseError::new(
                        format!("invalid token '{word}': the only numeric literal is the unit '0'"),
                        line,
                        start_col,
                    ));
                }
            }
            c if c.is_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let first = word.chars().next().unwrap();
                let token = if first.is_uppercase() {
                    Token::UpperIdent(word)
                } else if first.is_lowercase() {
                    Token::LowerIdent(word)
                } else {
                    return Err(ParseError::new(
                        format!("identifier '{word}' has no case: cannot tell variable from constant"),
                        line,
                        start_col,
                    ));
                };
                tokens.push(Spanned { token, line, col: start_col });
            }
            other => {
                return Err(ParseError::new(
                    format!("unexpected character '{other}'"),
                    line,
                    start_col,
                ));
            }
        }
    }
    Ok((tokens, (line, col)))
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    consts: &'a mut ConstTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => self.end,
        }
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primary()?;
        while matches!(self.peek(), Some(t) if t.token == Token::Plus) {
            self.pos += 1;
            let rhs = self.primary()?;
            acc = Term::xor(acc, rhs);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let (line, col) = self.here();
        let Some(spanned) = self.peek() else {
            return Err(ParseError::new("expected a term, found end of input", line, col));
        };
        match spanned.token.clone() {
            Token::Zero => {
                self.pos += 1;
                Ok(Term::unit())
            }
            Token::LowerIdent(name) => {
                let id = self.consts.intern(&name);
                self.pos += 1;
                Ok(Term::Const(id))
            }
            Token::UpperIdent(name) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            Token::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(t) if t.token == Token::RParen => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => {
                        let (line, col) = self.here();
                        Err(ParseError::new("expected ')'", line, col))
                    }
                }
            }
            other => Err(ParseError::new(
                format!("expected a term, found {}", other.describe()),
                line,
                col,
            )),
        }
    }
}

/// Parses one term. Constants are interned into `consts` in first-occurrence
/// order, so the table doubles as the parse session.
pub fn parse_term(text: &str, consts: &mut ConstTable) -> Result<Term, ParseError> {
    let (tokens, end) = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new("empty term", end.0, end.1));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        consts,
    };
    let term = parser.expr()?;
    if let Some(extra) = parser.peek() {
        return Err(ParseError::new(
            format!("expected '+' or end of input, found {}", extra.token.describe()),
            extra.line,
            extra.col,
        ));
    }
    Ok(term)
}

/// Renders a term so that reparsing it with the same table reproduces the
/// term structurally. Only right operands of XOR need parentheses because
/// `+` parses left-associatively. Constants missing from the table render
/// as `c<id>`.
pub fn print_term(t: &Term, consts: &ConstTable) -> String {
    let mut out = String::new();
    render(t, consts, false, &mut out);
    out
}

fn render(t: &Term, consts: &ConstTable, as_right_operand: bool, out: &mut String) {
    match t {
        Term::Const(0) => out.push('0'),
        Term::Const(id) => match consts.name(*id) {
            Some(name) => out.push_str(name),
            None => out.push_str(&format!("c{id}")),
        },
        Term::Var(name) => out.push_str(name),
        Term::Xor(l, r) => {
            if as_right_operand {
                out.push('(');
            }
            render(l, consts, false, out);
            out.push_str(" + ");
            render(r, consts, true, out);
            if as_right_operand {
                out.push(')');
            }
        }
    }
}
