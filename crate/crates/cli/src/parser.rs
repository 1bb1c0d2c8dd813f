//! Hand-rolled lexer and LL(1) parser for the session language.
//!
//! ```text
//! session   := { stmt }
//! stmt      := ring_decl | module_decl | command ';'
//! ring_decl := 'ring' ID '=' 'GF' '(' INT ')' '[' ID {',' ID} ']'
//!              '/' '<' poly {',' poly} '>' ';'
//! module_decl := 'module' ID '=' 'coker' '[' row {',' row} ']' ';'
//! row       := '[' poly {',' poly} ']'
//! command   := 'resolve' ID 'to' INT | 'betti' ID | 'ext' ID ID
//!            | 'tor' ID ID | 'pushout' ID 'deg' INT ['class' INT]
//!            | 'certify' ID | 'mcm' ID | 'depth' ID | 'period' ID
//! poly      := ['-'] term {('+'|'-') term}
//! term      := INT ['*' factors] | factors
//! factors   := factor {'*' factor}
//! factor    := ID ['^' INT]
//! ```
//!
//! Multiplication is always explicit and powers use `^`, so the grammar
//! stays LL(1). Errors carry line and column plus the expected tokens.

use std::fmt;

use crate::ast::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}: expected {}, found {}",
            self.line, self.col, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while let Some(b) = self.peek() {
                if b.is_ascii_whitespace() {
                    self.bump();
                } else if b == b'#' {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, col) = (self.line, self.col);
            let Some(b) = self.peek() else {
                out.push(Spanned {
                    tok: Tok::Eof,
                    line,
                    col,
                });
                return Ok(out);
            };
            if b.is_ascii_alphabetic() || b == b'_' {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        s.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line,
                    col,
                });
            } else if b.is_ascii_digit() {
                let mut n: u64 = 0;
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        n = n.saturating_mul(10).saturating_add((c - b'0') as u64);
                        self.bump();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(n),
                    line,
                    col,
                });
            } else if b"=()[]<>/,;^*+-".contains(&b) {
                self.bump();
                out.push(Spanned {
                    tok: Tok::Punct(b as char),
                    line,
                    col,
                });
            } else {
                return Err(ParseError {
                    line,
                    col,
                    expected: "a token".into(),
                    found: format!("`{}`", b as char),
                });
            }
        }
    }
}

pub struct Parser {
    toks: Vec<Spanned>,
    idx: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: Lexer::new(src).tokens()?,
            idx: 0,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.idx]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            expected: expected.into(),
            found: t.tok.to_string(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Punct(p) if *p == c => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err(format!("`{c}`"))),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.err("an identifier")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err(format!("keyword `{kw}`"))),
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.err("an integer")),
        }
    }

    pub fn session(&mut self) -> Result<Session, ParseError> {
        let mut items = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::Eof => break,
                Tok::Ident(kw) => {
                    let item = match kw.as_str() {
                        "ring" => Item::Ring(self.ring_decl()?),
                        "module" => Item::Module(self.module_decl()?),
                        _ => Item::Command(self.command()?),
                    };
                    items.push(item);
                }
                _ => return Err(self.err("a statement")),
            }
        }
        Ok(Session { items })
    }

    fn ring_decl(&mut self) -> Result<RingDecl, ParseError> {
        self.expect_keyword("ring")?;
        let name = self.expect_ident()?;
        self.expect_punct('=')?;
        self.expect_keyword("GF")?;
        self.expect_punct('(')?;
        let p = self.expect_int()?;
        self.expect_punct(')')?;
        self.expect_punct('[')?;
        let mut vars = vec![self.expect_ident()?];
        while matches!(&self.peek().tok, Tok::Punct(',')) {
            self.bump();
            vars.push(self.expect_ident()?);
        }
        self.expect_punct(']')?;
        self.expect_punct('/')?;
        self.expect_punct('<')?;
        let mut ideal = vec![self.poly()?];
        while matches!(&self.peek().tok, Tok::Punct(',')) {
            self.bump();
            ideal.push(self.poly()?);
        }
        self.expect_punct('>')?;
        self.expect_punct(';')?;
        Ok(RingDecl {
            name,
            char_p: p as u32,
            vars,
            ideal,
        })
    }

    fn module_decl(&mut self) -> Result<ModuleDecl, ParseError> {
        self.expect_keyword("module")?;
        let name = self.expect_ident()?;
        self.expect_punct('=')?;
        self.expect_keyword("coker")?;
        self.expect_punct('[')?;
        let mut matrix = vec![self.row()?];
        while matches!(&self.peek().tok, Tok::Punct(',')) {
            self.bump();
            matrix.push(self.row()?);
        }
        self.expect_punct(']')?;
        self.expect_punct(';')?;
        Ok(ModuleDecl { name, matrix })
    }

    fn row(&mut self) -> Result<Vec<PolyExpr>, ParseError> {
        self.expect_punct('[')?;
        let mut row = vec![self.poly()?];
        while matches!(&self.peek().tok, Tok::Punct(',')) {
            self.bump();
            row.push(self.poly()?);
        }
        self.expect_punct(']')?;
        Ok(row)
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        let kw = self.expect_ident()?;
        let cmd = match kw.as_str() {
            "resolve" => {
                let id = self.expect_ident()?;
                self.expect_keyword("to")?;
                let steps = self.expect_int()? as usize;
                Command::Resolve { id, steps }
            }
            "betti" => Command::Betti {
                id: self.expect_ident()?,
            },
            "ext" => Command::Ext {
                a: self.expect_ident()?,
                b: self.expect_ident()?,
            },
            "tor" => Command::Tor {
                a: self.expect_ident()?,
                b: self.expect_ident()?,
            },
            "pushout" => {
                let id = self.expect_ident()?;
                self.expect_keyword("deg")?;
                let deg = self.expect_int()? as usize;
                let class = if matches!(&self.peek().tok, Tok::Ident(s) if s == "class") {
                    self.bump();
                    Some(self.expect_int()? as usize)
                } else {
                    None
                };
                Command::Pushout { id, deg, class }
            }
            "certify" => Command::Certify {
                id: self.expect_ident()?,
            },
            "mcm" => Command::Mcm {
                id: self.expect_ident()?,
            },
            "depth" => Command::Depth {
                id: self.expect_ident()?,
            },
            "period" => Command::Period {
                id: self.expect_ident()?,
            },
            other => {
                return Err(ParseError {
                    line: self.peek().line,
                    col: self.peek().col,
                    expected: "a command (resolve, betti, ext, tor, pushout, certify, mcm, depth, period)".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        self.expect_punct(';')?;
        Ok(cmd)
    }

    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let pos = (self.peek().line, self.peek().col);
        let mut terms = Vec::new();
        let mut negative = if matches!(&self.peek().tok, Tok::Punct('-')) {
            self.bump();
            true
        } else {
            false
        };
        loop {
            terms.push(self.term(negative)?);
            match &self.peek().tok {
                Tok::Punct('+') => {
                    self.bump();
                    negative = false;
                }
                Tok::Punct('-') => {
                    self.bump();
                    negative = true;
                }
                _ => break,
            }
        }
        // the literal `0` denotes the zero polynomial
        if terms.len() == 1 && terms[0].coeff == Some(0) && terms[0].factors.is_empty() {
            terms.clear();
        }
        Ok(PolyExpr { terms, pos })
    }

    fn term(&mut self, negative: bool) -> Result<TermExpr, ParseError> {
        let coeff = if let Tok::Int(n) = &self.peek().tok {
            let n = *n;
            self.bump();
            Some(n)
        } else {
            None
        };
        let mut factors = Vec::new();
        if coeff.is_some() {
            if matches!(&self.peek().tok, Tok::Punct('*')) {
                self.bump();
                factors.push(self.factor()?);
            }
        } else {
            factors.push(self.factor()?);
        }
        while matches!(&self.peek().tok, Tok::Punct('*')) {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(TermExpr {
            negative,
            coeff,
            factors,
        })
    }

    fn factor(&mut self) -> Result<(String, u32), ParseError> {
        let name = self.expect_ident()?;
        let exp = if matches!(&self.peek().tok, Tok::Punct('^')) {
            self.bump();
            self.expect_int()? as u32
        } else {
            1
        };
        Ok((name, exp))
    }
}

pub fn parse_session(src: &str) -> Result<Session, ParseError> {
    Parser::new(src)?.session()
}

/// Parse a single polynomial expression (the whole input must be one).
pub fn parse_poly_str(src: &str) -> Result<PolyExpr, ParseError> {
    let mut p = Parser::new(src)?;
    let poly = p.poly()?;
    if !matches!(p.peek().tok, Tok::Eof) {
        return Err(p.err("end of input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::print_session;

    const GASHAROV: &str = "ring A = GF(7)[x1,x2,x3,x4] / <x1^2,x2^2,x3^2,x4^2,x3*x4,x1*x4+x2*x4,2*x1*x3+x2*x3>;\nmodule M = coker [[x1,2*x3+x4],[0,x2]];\nresolve M to 12;\nbetti M;\ncertify M;\n";

    #[test]
    fn parses_the_gasharov_session() {
        let s = parse_session(GASHAROV).unwrap();
        assert_eq!(s.items.len(), 5);
        match &s.items[0] {
            Item::Ring(r) => {
                assert_eq!(r.char_p, 7);
                assert_eq!(r.vars.len(), 4);
                assert_eq!(r.ideal.len(), 7);
            }
            _ => panic!("first item should be the ring"),
        }
        match &s.items[1] {
            Item::Module(m) => assert_eq!(m.matrix.len(), 2),
            _ => panic!("second item should be the module"),
        }
    }

    #[test]
    fn print_parse_roundtrip_is_identity() {
        let s = parse_session(GASHAROV).unwrap();
        let printed = print_session(&s);
        let again = parse_session(&printed).unwrap();
        assert_eq!(s, again);
        // printing is a fixed point
        assert_eq!(printed, print_session(&again));
    }

    #[test]
    fn empty_input_is_an_empty_session() {
        let s = parse_session("").unwrap();
        assert!(s.items.is_empty());
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_session("ring A = GF(7)[x] / <x^2>;\nbetti ;\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.expected.contains("identifier"));
    }

    #[test]
    fn zero_entry_parses_to_empty_polynomial() {
        let s = parse_session("module M = coker [[0,x]];\n").unwrap();
        match &s.items[0] {
            Item::Module(m) => {
                assert!(m.matrix[0][0].terms.is_empty());
                assert_eq!(m.matrix[0][0].print(), "0");
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn negative_terms_roundtrip() {
        let src = "ring A = GF(5)[x,y] / <x*y - y^2>;\n";
        let s = parse_session(src).unwrap();
        assert_eq!(print_session(&s), "ring A = GF(5)[x,y] / <x*y - y^2>;\n");
    }
}
