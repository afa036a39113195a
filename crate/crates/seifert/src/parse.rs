//! Text grammars for Seifert symbols and orbifolds.
//!
//! Symbol grammar (whitespace-insensitive):
//!
//! ```text
//! symbol := "{" "b=" INT ";" "g=" UINT ["n"] ";" fibers "}"
//! fibers := "-" | pair+
//! pair   := "(" UINT "," INT ")"
//! ```
//!
//! `"n"` after the genus marks a nonorientable base; fibers `-` means no
//! exceptional fibers. Example: `{b=-1; g=0; (2,1)(3,1)(5,1)}`.
//!
//! Orbifold grammar (whitespace-insensitive):
//!
//! ```text
//! orbifold := "g=" UINT ("o" | "n") ["cones=" UINT ("," UINT)*]
//! ```
//!
//! Example: `g=0 o cones=2,2,3,3`.

use crate::orbifold::{Orbifold2D, OrbifoldError};
use crate::symbol::RawSeifertSymbol;
use std::fmt;

/// Parse failure at a byte offset, with the expected token.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(&format!("'{}'", token)))
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self, signed: bool) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[self.pos..];
        let mut chars = rest.char_indices().peekable();
        let mut end = 0;
        if signed {
            if let Some(&(_, c)) = chars.peek() {
                if c == '-' || c == '+' {
                    chars.next();
                    end = 1;
                }
            }
        }
        let mut saw_digit = false;
        for (i, c) in chars {
            if c.is_ascii_digit() {
                saw_digit = true;
                end = i + 1;
            } else {
                break;
            }
        }
        if !saw_digit {
            return Err(self.err(if signed { "an integer" } else { "a nonnegative integer" }));
        }
        let slice = &rest[..end];
        let value: i64 = slice
            .parse()
            .map_err(|_| self.err("an integer within range"))?;
        self.pos = start + end;
        Ok(value)
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("end of input"))
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }
}

/// Parses the symbol grammar. The result is unnormalized; call
/// [`RawSeifertSymbol::normalize`] to obtain a [`crate::SeifertSymbol`].
pub fn parse_symbol(text: &str) -> Result<RawSeifertSymbol, ParseError> {
    let mut c = Cursor::new(text);
    c.expect("{")?;
    c.expect("b")?;
    c.expect("=")?;
    let b = c.integer(true)?;
    c.expect(";")?;
    c.expect("g")?;
    c.expect("=")?;
    let genus = c.integer(false)?;
    let genus = u32::try_from(genus).map_err(|_| c.err("a genus within range"))?;
    let orientable = !c.eat("n");
    c.expect(";")?;
    let mut fibers = Vec::new();
    if !c.eat("-") {
        loop {
            c.expect("(")?;
            let p = c.integer(false)?;
            c.expect(",")?;
            let q = c.integer(true)?;
            c.expect(")")?;
            fibers.push((p, q));
            if c.peek() != Some('(') {
                break;
            }
        }
    }
    c.expect("}")?;
    c.end()?;
    Ok(RawSeifertSymbol {
        base_genus: genus,
        base_orientable: orientable,
        b,
        fibers,
    })
}

/// Errors from the orbifold grammar: either a syntax error or data that
/// fails orbifold validation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] OrbifoldError),
}

/// Parses the orbifold grammar into a validated [`Orbifold2D`].
pub fn parse_orbifold(text: &str) -> Result<Orbifold2D, OrbifoldParseError> {
    let mut c = Cursor::new(text);
    c.expect("g")?;
    c.expect("=")?;
    let genus = c.integer(false)?;
    let genus = u32::try_from(genus).map_err(|_| c.err("a genus within range"))?;
    let orientable = if c.eat("o") {
        true
    } else if c.eat("n") {
        false
    } else {
        return Err(c.err("'o' or 'n'").into());
    };
    let mut cones = Vec::new();
    if c.eat("cones") {
        c.expect("=")?;
        loop {
            cones.push(c.integer(false)?);
            if !c.eat(",") {
                break;
            }
        }
    }
    c.end()?;
    Ok(Orbifold2D::new(genus, orientable, cones)?)
}

impl fmt::Display for RawSeifertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{b={}; g={}{}; ",
            self.b,
            self.base_genus,
            if self.base_orientable { "" } else { "n" }
        )?;
        if self.fibers.is_empty() {
            write!(f, "-")?;
        } else {
            for &(p, q) in &self.fibers {
                write!(f, "({},{})", p, q)?;
            }
        }
        write!(f, "}}")
    }
}
