//! Minimal s-expression reader and pretty-printer for derivation files.

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Symbol(String),
    Str(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("s-expression error at byte {pos}: {msg}")]
pub struct SexpError {
    pub pos: usize,
    pub msg: String,
}

impl Sexp {
    pub fn sym(s: impl Into<String>) -> Self {
        Sexp::Symbol(s.into())
    }

    pub fn string(s: impl Into<String>) -> Self {
        Sexp::Str(s.into())
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            Sexp::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Sexp::Str(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items) => Some(items),
            _ => None,
        }
    }

    /// `(head ...)` lists: the head symbol and the remaining items.
    pub fn as_form(&self) -> Option<(&str, &[Sexp])> {
        let items = self.as_list()?;
        let (head, rest) = items.split_first()?;
        Some((head.as_symbol()?, rest))
    }

    pub fn parse(text: &str) -> Result<Sexp, SexpError> {
        let mut r = Reader { bytes: text.as_bytes(), text, pos: 0 };
        r.skip_ws();
        let v = r.value()?;
        r.skip_ws();
        if r.pos != r.bytes.len() {
            return Err(r.err("trailing input"));
        }
        Ok(v)
    }

    /// Multi-line rendering: lists whose flat form is short stay on one line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(0, &mut out);
        out.push('\n');
        out
    }

    fn flat(&self) -> String {
        match self {
            Sexp::Symbol(s) => s.clone(),
            Sexp::Str(s) => quote(s),
            Sexp::List(items) => {
                let inner: Vec<String> = items.iter().map(Sexp::flat).collect();
                format!("({})", inner.join(" "))
            }
        }
    }

    fn pretty_into(&self, indent: usize, out: &mut String) {
        let flat = self.flat();
        let items = match self {
            Sexp::List(items) if flat.len() + indent > 88 => items,
            _ => {
                out.push_str(&flat);
                return;
            }
        };
        // keep the head and any leading atoms/short forms on the first line
        out.push('(');
        let mut i = 0;
        while i < items.len() && (i == 0 || !matches!(items[i], Sexp::List(_)) || is_short(&items[i])) {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&items[i].flat());
            i += 1;
        }
        for item in &items[i..] {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
            item.pretty_into(indent + 2, out);
        }
        out.push(')');
    }
}

fn is_short(s: &Sexp) -> bool {
    match s {
        Sexp::List(items) => items.first().and_then(Sexp::as_symbol) != Some("node") && s.flat().len() <= 60,
        _ => true,
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl std::fmt::Display for Sexp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.flat())
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl Reader<'_> {
    fn err(&self, msg: &str) -> SexpError {
        SexpError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b';' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn value(&mut self) -> Result<Sexp, SexpError> {
        match self.bytes.get(self.pos) {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        None => return Err(self.err("unclosed list")),
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items));
                        }
                        Some(_) => items.push(self.value()?),
                    }
                }
            }
            Some(b')') => Err(self.err("unexpected `)`")),
            Some(b'"') => {
                self.pos += 1;
                let mut s = String::new();
                loop {
                    let rest = &self.text[self.pos..];
                    let mut chars = rest.chars();
                    match chars.next() {
                        None => return Err(self.err("unterminated string")),
                        Some('"') => {
                            self.pos += 1;
                            return Ok(Sexp::Str(s));
                        }
                        Some('\\') => {
                            let esc = chars.next().ok_or_else(|| self.err("dangling escape"))?;
                            s.push(match esc {
                                'n' => '\n',
                                other => other,
                            });
                            self.pos += 1 + esc.len_utf8();
                        }
                        Some(c) => {
                            s.push(c);
                            self.pos += c.len_utf8();
                        }
                    }
                }
            }
            Some(_) => {
                let start = self.pos;
                while self.pos < self.bytes.len() {
                    let c = self.bytes[self.pos];
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b'"' || c == b';' {
                        break;
                    }
                    self.pos += 1;
                }
                Ok(Sexp::Symbol(self.text[start..self.pos].to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_forms() {
        let s = Sexp::parse(
            r#"(node L~imp (seq "p, ~(p -> q)" "r") ; comment
            (node Rf (seq "p" "p")))"#,
        )
        .unwrap();
        let (head, rest) = s.as_form().unwrap();
        assert_eq!(head, "node");
        assert_eq!(rest[0].as_symbol(), Some("L~imp"));
        assert_eq!(rest[1].as_form().unwrap().1[0].as_str(), Some("p, ~(p -> q)"));
    }

    #[test]
    fn strings_escape_round_trip() {
        let s = Sexp::List(vec![Sexp::sym("a"), Sexp::string("x \"y\" \\ z")]);
        assert_eq!(Sexp::parse(&s.pretty()).unwrap(), s);
    }

    #[test]
    fn errors() {
        assert!(Sexp::parse("(a").is_err());
        assert!(Sexp::parse("a)").is_err());
        assert!(Sexp::parse("\"abc").is_err());
    }
}
