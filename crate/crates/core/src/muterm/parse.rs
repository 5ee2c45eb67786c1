use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Fixpoint, MuTerm, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd { expected: &'static str },
    Unexpected { found: String, expected: &'static str },
    UnknownOperator(String),
    ArityMismatch { symbol: String, expected: usize, found: usize },
    DuplicateBinding(String),
    /// A declared operator in a variable position.
    OperatorAsVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "syntax error at end of input: expected {expected}")
            }
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "syntax error: expected {expected}, found `{found}`")
            }
            ParseErrorKind::UnknownOperator(s) => write!(f, "unknown operator `{s}`"),
            ParseErrorKind::ArityMismatch { symbol, expected, found } => {
                write!(f, "operator `{symbol}` takes {expected} arguments, got {found}")
            }
            ParseErrorKind::DuplicateBinding(x) => write!(f, "`{x}` bound twice in one substitution"),
            ParseErrorKind::OperatorAsVariable(x) => write!(f, "operator `{x}` used as a variable"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (offset {})", self.kind, self.offset)
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Mu,
    Nu,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Assign,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::Ident(x) => x,
            Token::Mu => "mu",
            Token::Nu => "nu",
            Token::LParen => "(",
            Token::RParen => ")",
            Token::LBracket => "[",
            Token::RBracket => "]",
            Token::Comma => ",",
            Token::Dot => ".",
            Token::Assign => ":=",
        };
        f.write_str(s)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ',' => Some(Token::Comma),
            '.' => Some(Token::Dot),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            out.push((tok, at));
        } else if c == ':' {
            chars.next();
            match chars.next() {
                Some((_, '=')) => out.push((Token::Assign, at)),
                _ => {
                    return Err(ParseError {
                        kind: ParseErrorKind::Unexpected { found: ":".into(), expected: "`:=`" },
                        offset: at,
                    })
                }
            }
        } else if is_ident_start(c) {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !is_ident_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let word = &text[at..end];
            let tok = match word {
                "mu" => Token::Mu,
                "nu" => Token::Nu,
                _ => Token::Ident(word.to_string()),
            };
            out.push((tok, at));
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Unexpected { found: c.to_string(), expected: "a term" },
                offset: at,
            });
        }
    }
    Ok(out)
}

struct Parser<'s> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    signature: &'s Signature,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, at)| at)
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let kind = match self.peek() {
            None => ParseErrorKind::UnexpectedEnd { expected },
            Some(t) => ParseErrorKind::Unexpected { found: t.to_string(), expected },
        };
        ParseError { kind, offset: self.offset() }
    }

    fn expect(&mut self, tok: Token, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    /// An identifier in a variable position.
    fn variable(&mut self) -> Result<String, ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Token::Ident(x)) => {
                let x = x.clone();
                if self.signature.contains_key(&x) {
                    return Err(ParseError { kind: ParseErrorKind::OperatorAsVariable(x), offset: at });
                }
                self.pos += 1;
                Ok(x)
            }
            _ => Err(self.error("a variable")),
        }
    }

    fn term(&mut self) -> Result<MuTerm, ParseError> {
        let theta = match self.peek() {
            Some(Token::Mu) => Fixpoint::Mu,
            Some(Token::Nu) => Fixpoint::Nu,
            _ => return self.postfix(),
        };
        self.pos += 1;
        let x = self.variable()?;
        self.expect(Token::Dot, "`.`")?;
        let body = self.term()?;
        Ok(MuTerm::Fix(theta, x, Box::new(body)))
    }

    fn postfix(&mut self) -> Result<MuTerm, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Token::LBracket) {
            self.pos += 1;
            let mut bindings: Vec<(String, MuTerm)> = Vec::new();
            loop {
                let at = self.offset();
                let x = self.variable()?;
                if bindings.iter().any(|(y, _)| *y == x) {
                    return Err(ParseError { kind: ParseErrorKind::DuplicateBinding(x), offset: at });
                }
                self.expect(Token::Assign, "`:=`")?;
                bindings.push((x, self.term()?));
                match self.peek() {
                    Some(Token::Comma) => self.pos += 1,
                    Some(Token::RBracket) => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("`,` or `]`")),
                }
            }
            t = MuTerm::Subst(Box::new(t), bindings);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<MuTerm, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(t)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let applied = self.peek() == Some(&Token::LParen);
                let args = if applied { self.arguments()? } else { Vec::new() };
                match self.signature.get(&name) {
                    None if applied => Err(ParseError { kind: ParseErrorKind::UnknownOperator(name), offset: at }),
                    None => Ok(MuTerm::Var(name)),
                    Some(&n) if n != args.len() => Err(ParseError {
                        kind: ParseErrorKind::ArityMismatch { symbol: name, expected: n, found: args.len() },
                        offset: at,
                    }),
                    Some(_) => Ok(MuTerm::Op(name, args)),
                }
            }
            _ => Err(self.error("a term")),
        }
    }

    fn arguments(&mut self) -> Result<Vec<MuTerm>, ParseError> {
        self.expect(Token::LParen, "`(`")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Token::RParen) {
            self.pos += 1;
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some(Token::Comma) => self.pos += 1,
                Some(Token::RParen) => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return Err(self.error("`,` or `)`")),
            }
        }
    }
}

/// Parses `text` against a fixed signature.
pub fn parse_with(text: &str, signature: &Signature) -> Result<MuTerm, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
        signature,
    };
    let t = parser.term()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("end of input"));
    }
    Ok(t)
}

/// The symbols applied with parentheses in `text`, with their arities.
pub fn infer_signature(text: &str) -> Result<Signature, ParseError> {
    let tokens = tokenize(text)?;
    let mut signature = Signature::new();
    for (i, (tok, at)) in tokens.iter().enumerate() {
        let Token::Ident(name) = tok else { continue };
        if tokens.get(i + 1).map(|(t, _)| t) != Some(&Token::LParen) {
            continue;
        }
        // count top-level commas up to the matching parenthesis
        let (mut depth, mut commas, mut empty) = (0usize, 0usize, true);
        for (j, (t, _)) in tokens.iter().enumerate().skip(i + 1) {
            match t {
                Token::LParen | Token::LBracket => depth += 1,
                Token::RParen | Token::RBracket => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                Token::Comma if depth == 1 => commas += 1,
                _ => {}
            }
            if j > i + 1 {
                empty = false;
            }
        }
        let arity = if empty { 0 } else { commas + 1 };
        match signature.get(name) {
            Some(&n) if n != arity => {
                return Err(ParseError {
                    kind: ParseErrorKind::ArityMismatch { symbol: name.clone(), expected: n, found: arity },
                    offset: *at,
                })
            }
            _ => {
                signature.insert(name.clone(), arity);
            }
        }
    }
    Ok(signature)
}

/// Parses `text`, taking every applied symbol as an operator.
pub fn parse(text: &str) -> Result<MuTerm, ParseError> {
    parse_with(text, &infer_signature(text)?)
}
