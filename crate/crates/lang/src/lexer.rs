use crate::diag::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Semi,
    Bar2,
    Comma,
    Colon,
    Arrow,
    FatArrow,
    Eq,
    Star,
    Caret,
    Slash,
    Minus,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    pub fn text(&self) -> &'static str {
        match self {
            Tok::Semi => ";",
            Tok::Bar2 => "||",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::FatArrow => "=>",
            Tok::Eq => "=",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Slash => "/",
            Tok::Minus => "-",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits source text into tokens. Comments run from `//` or `#` to the
/// end of the line.
pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' || src[i..].starts_with("//") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = src.get(i..i + 2);
        let tok = match (c, two) {
            (_, Some("||")) => Some((Tok::Bar2, 2)),
            (_, Some("->")) => Some((Tok::Arrow, 2)),
            (_, Some("=>")) => Some((Tok::FatArrow, 2)),
            (b';', _) => Some((Tok::Semi, 1)),
            (b',', _) => Some((Tok::Comma, 1)),
            (b':', _) => Some((Tok::Colon, 1)),
            (b'=', _) => Some((Tok::Eq, 1)),
            (b'*', _) => Some((Tok::Star, 1)),
            (b'^', _) => Some((Tok::Caret, 1)),
            (b'/', _) => Some((Tok::Slash, 1)),
            (b'-', _) => Some((Tok::Minus, 1)),
            (b'(', _) => Some((Tok::LParen, 1)),
            (b')', _) => Some((Tok::RParen, 1)),
            (b'{', _) => Some((Tok::LBrace, 1)),
            (b'}', _) => Some((Tok::RBrace, 1)),
            (b'[', _) => Some((Tok::LBracket, 1)),
            (b']', _) => Some((Tok::RBracket, 1)),
            _ => None,
        };
        if let Some((tok, len)) = tok {
            i += len;
            out.push(Token {
                tok,
                span: Span::new(start, i),
            });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // Digits followed by letters form an identifier, e.g. `2nd`.
            if i < bytes.len() && is_ident_byte(bytes[i]) {
                while i < bytes.len() && is_ident_byte(bytes[i]) {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[start..i].into()),
                    span: Span::new(start, i),
                });
                continue;
            }
            let n = src[start..i]
                .parse()
                .map_err(|_| Diagnostic::error(Span::new(start, i), "integer literal out of range"))?;
            out.push(Token {
                tok: Tok::Int(n),
                span: Span::new(start, i),
            });
            continue;
        }
        if is_ident_byte(c) {
            while i < bytes.len() && is_ident_byte(bytes[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].into()),
                span: Span::new(start, i),
            });
            continue;
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(Diagnostic::error(
            Span::new(i, i + ch.len_utf8()),
            format!("unexpected character `{ch}`"),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'\''
}
