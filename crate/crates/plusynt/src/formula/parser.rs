//! Hand-rolled lexer and recursive-descent parser for the surface syntax.
//!
//! Grammar (EBNF, whitespace and `#` line comments ignored):
//!
//! ```text
//! plus     ::= plus-or ( "->" plus )?
//! plus-or  ::= plus-and ( ("||" | "|") plus-and )*
//! plus-and ::= plus-un  ( ("&&" | "&") plus-un )*
//! plus-un  ::= "!" plus-un | plus-atom
//! plus-atom::= "(" plus ")" | "true" | "false"
//!            | ("E" | "A" | "AE" | "EA") "[" trace "]"
//!
//! trace    ::= trace-or ( "->" trace )?
//! trace-or ::= trace-and ( ("||" | "|") trace-and )*
//! trace-and::= trace-bin ( ("&&" | "&") trace-bin )*
//! trace-bin::= trace-un ( ("U" | "R" | "S") trace-bin )?
//! trace-un ::= ("!"|"X"|"WX"|"X[!]"|"X!"|"F"|"G"
//!              |"Y"|"WY"|"Y[!]"|"Y!"|"O"|"H") trace-un | trace-prim
//! trace-prim ::= "(" trace ")" | "true" | "false" | "last" | "first" | IDENT
//! ```
//!
//! `IDENT` is `[a-zA-Z_][a-zA-Z0-9_]*` minus the reserved words
//! `true false X WX F G U R Y WY S O H last first E A AE EA`.
//! `X`/`Y` are the weak operators, `X[!]`/`Y[!]` (ASCII `X!`/`Y!`) the
//! strong ones. `->` associates to the right and is desugared to `!p || q`
//! at construction.

use crate::formula::{Dialect, PlusFormula, Quantifier, TraceFormula};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Not,
    And,
    Or,
    Implies,
    True,
    False,
    Last,
    First,
    Quant(Quantifier),
    WeakNext,
    StrongNext,
    Eventually,
    Always,
    Until,
    Release,
    WeakYesterday,
    StrongYesterday,
    Once,
    Historically,
    Since,
    Ident(String),
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

struct Token {
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

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b'#' {
                while let Some(c) = self.peek() {
                    self.bump();
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Consumes `[!]` or `!` after `X`/`Y` if present.
    fn strong_suffix(&mut self) -> bool {
        if self.peek() == Some(b'!') {
            self.bump();
            true
        } else if self.src[self.pos..].starts_with(b"[!]") {
            self.bump();
            self.bump();
            self.bump();
            true
        } else {
            false
        }
    }

    fn next_token(&mut self) -> Result<Token> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let mk = |tok| Ok(Token { tok, line, col });
        let c = match self.peek() {
            None => return mk(Tok::Eof),
            Some(c) => c,
        };
        match c {
            b'(' => {
                self.bump();
                mk(Tok::LParen)
            }
            b')' => {
                self.bump();
                mk(Tok::RParen)
            }
            b'[' => {
                self.bump();
                mk(Tok::LBracket)
            }
            b']' => {
                self.bump();
                mk(Tok::RBracket)
            }
            b'!' => {
                self.bump();
                mk(Tok::Not)
            }
            b'&' => {
                self.bump();
                if self.peek() == Some(b'&') {
                    self.bump();
                }
                mk(Tok::And)
            }
            b'|' => {
                self.bump();
                if self.peek() == Some(b'|') {
                    self.bump();
                }
                mk(Tok::Or)
            }
            b'-' => {
                self.bump();
                if self.peek() == Some(b'>') {
                    self.bump();
                    mk(Tok::Implies)
                } else {
                    Err(self.err("expected '>' after '-'"))
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        self.bump();
                    } else {
                        break;
                    }
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "last" => Tok::Last,
                    "first" => Tok::First,
                    "X" => {
                        if self.strong_suffix() {
                            Tok::StrongNext
                        } else {
                            Tok::WeakNext
                        }
                    }
                    "WX" => Tok::WeakNext,
                    "Y" => {
                        if self.strong_suffix() {
                            Tok::StrongYesterday
                        } else {
                            Tok::WeakYesterday
                        }
                    }
                    "WY" => Tok::WeakYesterday,
                    "F" => Tok::Eventually,
                    "G" => Tok::Always,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    "S" => Tok::Since,
                    "O" => Tok::Once,
                    "H" => Tok::Historically,
                    "E" => Tok::Quant(Quantifier::Exists),
                    "A" => Tok::Quant(Quantifier::Forall),
                    "AE" => Tok::Quant(Quantifier::ForallExists),
                    "EA" => Tok::Quant(Quantifier::ExistsForall),
                    _ => Tok::Ident(word.to_string()),
                };
                mk(tok)
            }
            c => Err(self.err(format!("unexpected character '{}'", c as char))),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let mut tokens = Vec::new();
        loop {
            let t = lexer.next_token()?;
            let eof = t.tok == Tok::Eof;
            tokens.push(t);
            if eof {
                break;
            }
        }
        Ok(Parser { tokens, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn bump(&mut self) -> &Tok {
        let t = &self.tokens[self.at].tok;
        self.at += 1;
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let t = &self.tokens[self.at];
        Error::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err_here(format!("expected {what}")))
        }
    }

    fn plus(&mut self) -> Result<PlusFormula> {
        let lhs = self.plus_or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.plus()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn plus_or(&mut self) -> Result<PlusFormula> {
        let mut lhs = self.plus_and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.plus_and()?);
        }
        Ok(lhs)
    }

    fn plus_and(&mut self) -> Result<PlusFormula> {
        let mut lhs = self.plus_unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.plus_unary()?);
        }
        Ok(lhs)
    }

    fn plus_unary(&mut self) -> Result<PlusFormula> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(self.plus_unary()?.not());
        }
        self.plus_primary()
    }

    fn plus_primary(&mut self) -> Result<PlusFormula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.plus()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::True => {
                self.bump();
                Ok(PlusFormula::True)
            }
            Tok::False => {
                self.bump();
                Ok(PlusFormula::False)
            }
            Tok::Quant(q) => {
                self.bump();
                self.expect(Tok::LBracket, "'[' after quantifier")?;
                let body = self.trace()?;
                self.expect(Tok::RBracket, "']' closing quantified atom")?;
                Ok(PlusFormula::Atom(q, body))
            }
            _ => Err(self.err_here("expected a quantified atom, constant, '!' or '('")),
        }
    }

    fn trace(&mut self) -> Result<TraceFormula> {
        let lhs = self.trace_or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.trace()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn trace_or(&mut self) -> Result<TraceFormula> {
        let mut lhs = self.trace_and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.trace_and()?);
        }
        Ok(lhs)
    }

    fn trace_and(&mut self) -> Result<TraceFormula> {
        let mut lhs = self.trace_bin()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.trace_bin()?);
        }
        Ok(lhs)
    }

    fn trace_bin(&mut self) -> Result<TraceFormula> {
        let lhs = self.trace_unary()?;
        let op = match self.peek() {
            Tok::Until => TraceFormula::Until as fn(_, _) -> _,
            Tok::Release => TraceFormula::Release as fn(_, _) -> _,
            Tok::Since => TraceFormula::Since as fn(_, _) -> _,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.trace_bin()?;
        Ok(op(Box::new(lhs), Box::new(rhs)))
    }

    fn trace_unary(&mut self) -> Result<TraceFormula> {
        let wrap = match self.peek() {
            Tok::Not => {
                self.bump();
                return Ok(self.trace_unary()?.not());
            }
            Tok::WeakNext => TraceFormula::WeakNext as fn(_) -> _,
            Tok::StrongNext => TraceFormula::StrongNext as fn(_) -> _,
            Tok::Eventually => TraceFormula::Eventually as fn(_) -> _,
            Tok::Always => TraceFormula::Always as fn(_) -> _,
            Tok::WeakYesterday => TraceFormula::WeakYesterday as fn(_) -> _,
            Tok::StrongYesterday => TraceFormula::StrongYesterday as fn(_) -> _,
            Tok::Once => TraceFormula::Once as fn(_) -> _,
            Tok::Historically => TraceFormula::Historically as fn(_) -> _,
            _ => return self.trace_primary(),
        };
        self.bump();
        Ok(wrap(Box::new(self.trace_unary()?)))
    }

    fn trace_primary(&mut self) -> Result<TraceFormula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.trace()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::True => {
                self.bump();
                Ok(TraceFormula::True)
            }
            Tok::False => {
                self.bump();
                Ok(TraceFormula::False)
            }
            Tok::Last => {
                self.bump();
                Ok(TraceFormula::last())
            }
            Tok::First => {
                self.bump();
                Ok(TraceFormula::first())
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(TraceFormula::Prop(name))
            }
            _ => Err(self.err_here("expected a proposition, constant, unary operator or '('")),
        }
    }
}

/// Parses a specification-level formula and checks all atom bodies
/// against the requested dialect.
pub fn parse_plus(src: &str, dialect: Dialect) -> Result<PlusFormula> {
    let mut parser = Parser::new(src)?;
    let psi = parser.plus()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.err_here("trailing input after formula"));
    }
    for (_, body) in psi.atoms() {
        if body.uses_future() && body.uses_past() {
            return Err(Error::MixedDialect(format!("atom body mixes future and past: {body}")));
        }
        body.check_dialect(dialect)?;
    }
    Ok(psi)
}

/// Parses a bare finite-trace formula.
pub fn parse_trace_formula(src: &str, dialect: Dialect) -> Result<TraceFormula> {
    let mut parser = Parser::new(src)?;
    let phi = parser.trace()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.err_here("trailing input after formula"));
    }
    phi.check_dialect(dialect)?;
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Quantifier as Q;

    #[test]
    fn parses_pattern_instance() {
        // (AE -> E) pattern at n=1.
        let psi = parse_plus("AE[F(e1 && X(false))] -> E[F(a1 && X(false))]", Dialect::Ltlf).unwrap();
        let atoms = psi.atoms();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0].0, Q::ForallExists);
        assert_eq!(atoms[1].0, Q::Exists);
        // -> is desugared at construction
        assert!(matches!(psi, PlusFormula::Or(_, _)));
    }

    #[test]
    fn parses_trivial_atom() {
        let psi = parse_plus("E[true]", Dialect::Ltlf).unwrap();
        assert_eq!(psi, PlusFormula::Atom(Q::Exists, TraceFormula::True));
    }

    #[test]
    fn negation_node_is_kept() {
        let psi = parse_plus("A[G(d)] && (!(A[G(d)]))", Dialect::Ltlf).unwrap();
        match &psi {
            PlusFormula::And(_, b) => assert!(matches!(**b, PlusFormula::Not(_))),
            other => panic!("unexpected shape: {other:?}"),
        }
        // syntactic round-trip
        let printed = psi.to_string();
        assert_eq!(parse_plus(&printed, Dialect::Ltlf).unwrap(), psi);
    }

    #[test]
    fn strong_next_aliases() {
        for src in ["E[X[!] a]", "E[X! a]"] {
            let psi = parse_plus(src, Dialect::Ltlf).unwrap();
            let atoms = psi.atoms();
            assert!(matches!(atoms[0].1, TraceFormula::StrongNext(_)), "{src}");
        }
        let weak = parse_plus("E[WX a]", Dialect::Ltlf).unwrap();
        assert!(matches!(weak.atoms()[0].1, TraceFormula::WeakNext(_)));
    }

    #[test]
    fn dialect_violations_are_rejected() {
        assert!(parse_plus("E[O a]", Dialect::Ltlf).is_err());
        assert!(parse_plus("E[F a]", Dialect::Ppltl).is_err());
        assert!(parse_plus("E[F a && O a]", Dialect::Ltlf).is_err());
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_plus("E[a &&\n  %b]", Dialect::Ltlf).unwrap_err();
        match err {
            Error::Syntax { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 3);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn last_expands_on_construction() {
        let phi = parse_trace_formula("last", Dialect::Ltlf).unwrap();
        assert_eq!(phi, TraceFormula::StrongNext(Box::new(TraceFormula::True)).not());
        let first = parse_trace_formula("first", Dialect::Ppltl).unwrap();
        assert_eq!(first, TraceFormula::StrongYesterday(Box::new(TraceFormula::True)).not());
    }
}
