use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: [&str; 17] = ["->", "{", "}", "(", ")", "[", "]", ";", ":", ",", "=", "+", "-", "*", ".", "/", "^"];

/// Splits source text into tokens; `#` starts a comment running to the end
/// of the line. Columns count characters, starting at 1.
pub(crate) fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        let tok = if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            if chars.get(i + s.len()).is_some_and(|c| c.is_alphabetic() || *c == '_') {
                return Err(Error::Syntax {
                    line,
                    col: col + s.len(),
                    expected: "a separator after a number".into(),
                    found: format!("`{}`", chars[i + s.len()]),
                });
            }
            Tok::Int(s)
        } else if c.is_alphabetic() || c == '_' {
            let s: String = chars[i..].iter().take_while(|c| c.is_alphanumeric() || **c == '_' || **c == '\'').collect();
            Tok::Ident(s)
        } else if let Some(sym) = SYMBOLS.iter().find(|s| chars[i..].starts_with(&s.chars().collect::<Vec<_>>())) {
            Tok::Sym(sym)
        } else {
            return Err(Error::Syntax { line, col, expected: "a token".into(), found: format!("`{c}`") });
        };
        let len = match &tok {
            Tok::Ident(s) | Tok::Int(s) => s.chars().count(),
            Tok::Sym(s) => s.len(),
            Tok::Eof => 0,
        };
        i += len;
        col += len;
        out.push(Token { tok, line: start.0, col: start.1 });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
