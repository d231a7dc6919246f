use thiserror::Error;

use super::{Formula, RExpr, RSequent};

/// Arity lookup for user connectives, consulted while parsing applications.
pub trait Signature {
    fn arity(&self, name: &str) -> Option<usize>;
}

/// A signature with no user connectives.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoConnectives;

impl Signature for NoConnectives {
    fn arity(&self, _name: &str) -> Option<usize> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown connective `{name}` at byte {pos}")]
    UnknownConnective { name: String, pos: usize },
    #[error("connective `{name}` at byte {pos} takes {expected} argument(s), got {found}")]
    Arity { name: String, pos: usize, expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Nat(u64),
    Arrow,
    DArrow,
    Minus,
    Tilde,
    Amp,
    Bar,
    LParen,
    RParen,
    Comma,
    Semi,
    LBrace,
    RBrace,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`=>`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) struct Lexer;

impl Lexer {
    pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            // line comments, used in definition files
            if c == b'#' {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            let start = i;
            let tok = match c {
                b'-' if bytes.get(i + 1) == Some(&b'>') => {
                    i += 2;
                    Tok::Arrow
                }
                b'=' if bytes.get(i + 1) == Some(&b'>') => {
                    i += 2;
                    Tok::DArrow
                }
                b'-' => {
                    i += 1;
                    Tok::Minus
                }
                b'~' => {
                    i += 1;
                    Tok::Tilde
                }
                b'&' => {
                    i += 1;
                    Tok::Amp
                }
                b'|' => {
                    i += 1;
                    Tok::Bar
                }
                b'(' => {
                    i += 1;
                    Tok::LParen
                }
                b')' => {
                    i += 1;
                    Tok::RParen
                }
                b',' => {
                    i += 1;
                    Tok::Comma
                }
                b';' => {
                    i += 1;
                    Tok::Semi
                }
                b'{' => {
                    i += 1;
                    Tok::LBrace
                }
                b'}' => {
                    i += 1;
                    Tok::RBrace
                }
                b'/' => {
                    i += 1;
                    Tok::Slash
                }
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n = text[start..i]
                        .parse::<u64>()
                        .map_err(|_| ParseError::Syntax { pos: start, msg: "number too large".into() })?;
                    Tok::Nat(n)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    Tok::Ident(text[start..i].to_string())
                }
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax { pos: start, msg: format!("unexpected character `{ch}`") });
                }
            };
            out.push((tok, start));
        }
        out.push((Tok::Eof, text.len()));
        Ok(out)
    }
}

/// Recursive-descent parser over a token buffer.
pub(crate) struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a dyn Signature,
    /// In placeholder mode atoms are not restricted to lowercase names and
    /// connective applications are rejected.
    placeholders: bool,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &str, sig: &'a dyn Signature) -> Result<Self, ParseError> {
        Ok(Parser { toks: Lexer::tokenize(text)?, pos: 0, sig, placeholders: false })
    }

    pub(crate) fn placeholder_mode(mut self) -> Self {
        self.placeholders = true;
        self
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().describe()))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected identifier, found {}", other.describe())),
        }
    }

    pub(crate) fn nat(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            other => self.error(format!("expected number, found {}", other.describe())),
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.formula()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let start = self.offset();
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    if self.placeholders {
                        return Err(ParseError::Syntax {
                            pos: start,
                            msg: "connective applications are not allowed here".into(),
                        });
                    }
                    self.bump();
                    let mut args = vec![self.formula()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.formula()?);
                    }
                    self.expect(Tok::RParen)?;
                    let expected = self
                        .sig
                        .arity(&name)
                        .ok_or(ParseError::UnknownConnective { name: name.clone(), pos: start })?;
                    if expected != args.len() {
                        return Err(ParseError::Arity { name, pos: start, expected, found: args.len() });
                    }
                    return Ok(Formula::App(name, args));
                }
                if !self.placeholders && !name.starts_with(|c: char| c.is_ascii_lowercase()) {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: format!("atom `{name}` must start with a lowercase letter"),
                    });
                }
                Ok(Formula::Atom(name))
            }
            other => self.error(format!("expected a formula, found {}", other.describe())),
        }
    }

    /// Whether the `(` at the cursor opens a sequent expression, i.e. its
    /// group contains `=>` at its own nesting level.
    fn paren_opens_sequent(&self) -> bool {
        let mut depth = 0usize;
        let mut k = 0;
        loop {
            match self.peek_at(k) {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::DArrow if depth == 1 => return true,
                Tok::Eof => return false,
                _ => {}
            }
            k += 1;
        }
    }

    pub(crate) fn rexpr(&mut self) -> Result<RExpr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.rexpr()?.neg())
            }
            Tok::LParen if self.paren_opens_sequent() => {
                self.bump();
                let ctx = self.context_until_darrow()?;
                let succ = self.rexpr()?;
                self.expect(Tok::RParen)?;
                Ok(RExpr::seq(ctx, succ))
            }
            _ => Ok(RExpr::Fml(self.formula()?)),
        }
    }

    /// Parses `S1, ..., Sn =>` (possibly empty) and consumes the arrow.
    fn context_until_darrow(&mut self) -> Result<Vec<RExpr>, ParseError> {
        let mut ctx = Vec::new();
        if *self.peek() == Tok::DArrow {
            self.bump();
            return Ok(ctx);
        }
        loop {
            ctx.push(self.rexpr()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::DArrow => {
                    self.bump();
                    return Ok(ctx);
                }
                other => return self.error(format!("expected `,` or `=>`, found {}", other.describe())),
            }
        }
    }

    pub(crate) fn rexpr_list_to_end(&mut self) -> Result<Vec<RExpr>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Eof {
            return Ok(out);
        }
        loop {
            out.push(self.rexpr()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Eof => return Ok(out),
                other => return self.error(format!("expected `,`, found {}", other.describe())),
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, &NoConnectives)
}

pub fn parse_formula_with(text: &str, sig: &dyn Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_rexpr(text: &str) -> Result<RExpr, ParseError> {
    parse_rexpr_with(text, &NoConnectives)
}

pub fn parse_rexpr_with(text: &str, sig: &dyn Signature) -> Result<RExpr, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let e = p.rexpr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Comma-separated R-expressions; the empty string is the empty list.
pub fn parse_rexpr_list(text: &str, sig: &dyn Signature) -> Result<Vec<RExpr>, ParseError> {
    let mut p = Parser::new(text, sig)?;
    p.rexpr_list_to_end()
}

/// R-expressions over placeholder atoms such as `A1`, used for rule
/// schemata and definition files.
pub(crate) fn parse_placeholder_list(text: &str) -> Result<Vec<RExpr>, ParseError> {
    let mut p = Parser::new(text, &NoConnectives)?.placeholder_mode();
    p.rexpr_list_to_end()
}

/// A sequent written without outer parentheses: `S1, ..., Sn => S`.
/// A fully parenthesized sequent expression is accepted too.
pub fn parse_sequent(text: &str) -> Result<RSequent, ParseError> {
    parse_sequent_with(text, &NoConnectives)
}

pub fn parse_sequent_with(text: &str, sig: &dyn Signature) -> Result<RSequent, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let first = p.context_until_darrow().and_then(|ctx| {
        let succ = p.rexpr()?;
        p.expect_eof()?;
        Ok(RSequent::new(ctx, succ))
    });
    match first {
        Ok(s) => Ok(s),
        Err(e) => match parse_rexpr_with(text, sig) {
            Ok(RExpr::Seq(ctx, succ)) => Ok(RSequent::new(ctx, *succ)),
            _ => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct OneConn;
    impl Signature for OneConn {
        fn arity(&self, name: &str) -> Option<usize> {
            (name == "F").then_some(2)
        }
    }

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn atom() {
        assert_eq!(parse_formula("p").unwrap(), a("p"));
    }

    #[test]
    fn aristotle_prime() {
        assert_eq!(parse_formula("~(p -> ~p)").unwrap(), Formula::neg(Formula::imp(a("p"), Formula::neg(a("p")))));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("p & ~p -> p").unwrap(),
            Formula::imp(Formula::and(a("p"), Formula::neg(a("p"))), a("p"))
        );
        assert_eq!(parse_formula("p | q & r").unwrap(), Formula::or(a("p"), Formula::and(a("q"), a("r"))));
        assert_eq!(parse_formula("p -> q -> r").unwrap(), Formula::imp(a("p"), Formula::imp(a("q"), a("r"))));
        assert_eq!(parse_formula("p & q & r").unwrap(), Formula::and(Formula::and(a("p"), a("q")), a("r")));
    }

    #[test]
    fn double_refutation_collapses() {
        assert_eq!(parse_rexpr("--p").unwrap(), RExpr::atom("p"));
        assert_eq!(parse_rexpr("---p").unwrap(), RExpr::atom("p").neg());
    }

    #[test]
    fn sequent_expressions() {
        assert_eq!(
            parse_rexpr("(p, q => r)").unwrap(),
            RExpr::seq(vec![RExpr::atom("p"), RExpr::atom("q")], RExpr::atom("r"))
        );
        assert_eq!(parse_rexpr("-(p => q)").unwrap(), RExpr::seq(vec![RExpr::atom("p")], RExpr::atom("q")).neg());
        assert_eq!(parse_rexpr("(=> p)").unwrap(), RExpr::seq(vec![], RExpr::atom("p")));
        assert_eq!(
            parse_rexpr("((p => q) => (p) & q)").unwrap(),
            RExpr::seq(
                vec![RExpr::seq(vec![RExpr::atom("p")], RExpr::atom("q"))],
                RExpr::Fml(Formula::and(a("p"), a("q")))
            )
        );
    }

    #[test]
    fn parenthesized_formula_is_not_a_sequent() {
        assert_eq!(parse_rexpr("(p -> q)").unwrap(), RExpr::Fml(Formula::imp(a("p"), a("q"))));
        assert_eq!(parse_rexpr("-(p & q)").unwrap(), RExpr::Fml(Formula::and(a("p"), a("q"))).neg());
    }

    #[test]
    fn inline_sequents() {
        let s = parse_sequent("=> ~(p -> ~p)").unwrap();
        assert!(s.context.is_empty());
        let s = parse_sequent("p, ~p => q").unwrap();
        assert_eq!(s.context.len(), 2);
        let s = parse_sequent("(p => q)").unwrap();
        assert_eq!(s.context, vec![RExpr::atom("p")]);
        assert!(parse_sequent("p, q").is_err());
    }

    #[test]
    fn connective_application() {
        let f = parse_formula_with("F(p, ~q)", &OneConn).unwrap();
        assert_eq!(f, Formula::app("F", vec![a("p"), Formula::neg(a("q"))]));
        assert!(matches!(parse_formula("G(p)"), Err(ParseError::UnknownConnective { .. })));
        assert!(matches!(parse_formula_with("F(p)", &OneConn), Err(ParseError::Arity { expected: 2, found: 1, .. })));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p & ") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula("P").is_err());
        assert!(parse_formula("p $ q").is_err());
        assert!(parse_rexpr("(p, q)").is_err());
    }
}
