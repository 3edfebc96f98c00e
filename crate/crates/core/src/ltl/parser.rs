//! Recursive-descent parser for the formula concrete syntax.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! implies :=  or  ('->' implies)?            right-associative, desugared
//! or      :=  and ('|' and)*                 collected n-ary
//! and     :=  until ('&' until)*             collected n-ary
//! until   :=  unary ('U' until)?             right-associative
//! unary   :=  ('!' | 'X' | 'F' | 'G') unary | atom
//! atom    :=  'true' | 'false' | ident | '(' implies ')'
//! ident   :=  [a-z_][a-zA-Z0-9_]*
//! ```
//!
//! `F f` desugars to `true U f`, `G f` to `!(true U !f)`, `a -> b` to
//! `!a | b`; the returned tree is desugared but not canonicalized. `#`
//! starts a comment that runs to end of line.

use super::alphabet::Alphabet;
use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Bang,
    Next,
    Finally,
    Globally,
    Until,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn next_token(&mut self) -> Result<Spanned> {
        loop {
            match self.peek() {
                Some(c) if (c as char).is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let tok = match self.peek() {
            None => Tok::Eof,
            Some(b'(') => {
                self.bump();
                Tok::LParen
            }
            Some(b')') => {
                self.bump();
                Tok::RParen
            }
            Some(b'!') => {
                self.bump();
                Tok::Bang
            }
            Some(b'&') => {
                self.bump();
                Tok::Amp
            }
            Some(b'|') => {
                self.bump();
                Tok::Pipe
            }
            Some(b'-') => {
                self.bump();
                if self.peek() == Some(b'>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    return Err(self.err("expected `>` after `-`"));
                }
            }
            Some(c) if (c as char).is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if (c as char).is_ascii_alphanumeric() || c == b'_' {
                        self.bump();
                    } else {
                        break;
                    }
                }
                let word = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii word");
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" => Tok::Next,
                    "F" => Tok::Finally,
                    "G" => Tok::Globally,
                    "U" => Tok::Until,
                    w if w.as_bytes()[0].is_ascii_uppercase() => {
                        return Err(Error::Syntax {
                            line,
                            col,
                            msg: format!(
                                "unknown operator `{w}` (atoms start with a lowercase letter or `_`)"
                            ),
                        });
                    }
                    w => Tok::Ident(w.to_string()),
                }
            }
            Some(c) => return Err(self.err(format!("unexpected character `{}`", c as char))),
        };
        Ok(Spanned { tok, line, col })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    look: Spanned,
    alphabet: &'a mut Alphabet,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, alphabet: &'a mut Alphabet) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let look = lexer.next_token()?;
        Ok(Parser { lexer, look, alphabet })
    }

    fn advance(&mut self) -> Result<Spanned> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.look, next))
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.look.line, col: self.look.col, msg: msg.into() }
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.look.tok == Tok::Arrow {
            self.advance()?;
            let rhs = self.implies()?;
            return Ok(Formula::or(vec![Formula::not(lhs), rhs]));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut items = vec![self.and()?];
        while self.look.tok == Tok::Pipe {
            self.advance()?;
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Formula::or(items) })
    }

    fn and(&mut self) -> Result<Formula> {
        let mut items = vec![self.until()?];
        while self.look.tok == Tok::Amp {
            self.advance()?;
            items.push(self.until()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Formula::and(items) })
    }

    fn until(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        if self.look.tok == Tok::Until {
            self.advance()?;
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.look.tok {
            Tok::Bang => {
                self.advance()?;
                Ok(Formula::not(self.unary()?))
            }
            Tok::Next => {
                self.advance()?;
                Ok(Formula::next(self.unary()?))
            }
            Tok::Finally => {
                self.advance()?;
                Ok(Formula::eventually(self.unary()?))
            }
            Tok::Globally => {
                self.advance()?;
                Ok(Formula::always(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.look.tok.clone() {
            Tok::True => {
                self.advance()?;
                Ok(Formula::True)
            }
            Tok::False => {
                self.advance()?;
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.advance()?;
                Ok(Formula::atom(self.alphabet.intern(&name)?))
            }
            Tok::LParen => {
                self.advance()?;
                let f = self.implies()?;
                if self.look.tok != Tok::RParen {
                    return Err(self.err_here("expected `)`"));
                }
                self.advance()?;
                Ok(f)
            }
            Tok::Until => Err(self.err_here("`U` is infix; it needs a left operand")),
            Tok::Eof => Err(self.err_here("unexpected end of input")),
            t => Err(self.err_here(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse one formula; new identifiers are interned into `alphabet`.
pub fn parse(text: &str, alphabet: &mut Alphabet) -> Result<Formula> {
    let mut p = Parser::new(text, alphabet)?;
    let f = p.implies()?;
    if p.look.tok != Tok::Eof {
        return Err(p.err_here("trailing input after formula"));
    }
    Ok(f)
}

/// Parse a batch file: one formula per line, `#` comments, blank lines
/// skipped. Returns each formula with its 1-based line number.
pub fn parse_batch(text: &str, alphabet: &mut Alphabet) -> Result<Vec<(usize, Formula)>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let f = parse(body, alphabet).map_err(|e| match e {
            Error::Syntax { col, msg, .. } => Error::Syntax { line: idx + 1, col, msg },
            other => other,
        })?;
        out.push((idx + 1, f));
    }
    Ok(out)
}
