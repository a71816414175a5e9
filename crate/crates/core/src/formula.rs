//! Propositional formulas over atoms, `true`/`false`, `¬`, `∨` and `∧`.
//!
//! Concrete syntax: `!` or `~` for negation, `&` for conjunction, `|` for
//! disjunction, keywords `true` and `false`. Negation binds tightest, then
//! `&`, then `|`; both binary operators associate to the left.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A propositional formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
}

/// Malformed formula text.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at position {position}: expected {expected}")]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: String,
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    /// Left-associated disjunction of a non-empty list.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::or)
    }

    /// Height of the tree; atoms and constants have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 1,
            Formula::Not(c) => 1 + c.depth(),
            Formula::Or(l, r) | Formula::And(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 1,
            Formula::Not(c) => 1 + c.node_count(),
            Formula::Or(l, r) | Formula::And(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// The atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::True | Formula::False => {}
            Formula::Not(c) => c.collect_atoms(out),
            Formula::Or(l, r) | Formula::And(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) => 3,
            _ => 4,
        }
    }

    /// Minimal-parentheses rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Formula::Atom(a) => out.push_str(a),
            Formula::True => out.push_str("true"),
            Formula::False => out.push_str("false"),
            Formula::Not(c) => {
                out.push('!');
                render_child(c, c.precedence() < 3, out);
            }
            Formula::Or(l, r) => {
                render_child(l, false, out);
                out.push_str(" | ");
                render_child(r, r.precedence() <= 1, out);
            }
            Formula::And(l, r) => {
                render_child(l, l.precedence() < 2, out);
                out.push_str(" & ");
                render_child(r, r.precedence() <= 2, out);
            }
        }
    }

    /// Canonical order: rendered length first, then lexicographic.
    pub fn canonical_cmp(&self, other: &Formula) -> Ordering {
        canonical_text_cmp(&self.render(), &other.render())
    }
}

fn render_child(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        f.render_into(out);
        out.push(')');
    } else {
        f.render_into(out);
    }
}

/// Total order on rendered strings: shorter first, ties broken lexicographically.
pub fn canonical_text_cmp(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parse a single formula.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.disjunction()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("end of input or a binary operator"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &str) -> SyntaxError {
        SyntaxError { position: self.pos, expected: expected.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(b'!') | Some(b'~') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_lowercase()
                        || self.src[self.pos].is_ascii_digit()
                        || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                // Safe: the scanned range is ASCII.
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(match word {
                    "true" => Formula::True,
                    "false" => Formula::False,
                    _ => Formula::Atom(word.to_string()),
                })
            }
            _ => Err(self.error("an atom, 'true', 'false', '!', '~' or '('")),
        }
    }
}

/// Whether `name` is a valid atom identifier (`[a-z][a-z0-9_]*`, not a keyword).
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && name != "true"
        && name != "false"
}

/// Parse a knowledge-base text: one formula per line, `#` starts a comment,
/// blank lines ignored. Errors carry the 1-based line number.
pub fn parse_kb(text: &str) -> Result<Vec<Formula>, (usize, SyntaxError)> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse(body).map_err(|e| (n + 1, e))?);
    }
    Ok(out)
}
