//! Tokenizer for `.hol` source text. `%` starts a comment running to the
//! end of the line; identifiers are ASCII `[A-Za-z][A-Za-z0-9_]*`.

use crate::diag::{ParseError, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    KwExists,
    KwTrue,
    KwFalse,
    Backslash,
    Dot,
    Colon,
    Arrow,
    LArrow,
    Tilde,
    Amp,
    Pipe,
    EqSign,
    LParen,
    RParen,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::KwExists => "`exists`".into(),
            Tok::KwTrue => "`true`".into(),
            Tok::KwFalse => "`false`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LArrow => "`<-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::EqSign => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'%' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => {
                toks.push(Token {
                    tok: Tok::LParen,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b')' => {
                toks.push(Token {
                    tok: Tok::RParen,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'.' => {
                toks.push(Token {
                    tok: Tok::Dot,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b':' => {
                toks.push(Token {
                    tok: Tok::Colon,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'\\' => {
                toks.push(Token {
                    tok: Tok::Backslash,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'~' => {
                toks.push(Token {
                    tok: Tok::Tilde,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'&' => {
                toks.push(Token {
                    tok: Tok::Amp,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'|' => {
                toks.push(Token {
                    tok: Tok::Pipe,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'=' => {
                toks.push(Token {
                    tok: Tok::EqSign,
                    span: Span::new(i, i + 1),
                });
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push(Token {
                        tok: Tok::Arrow,
                        span: Span::new(i, i + 2),
                    });
                    i += 2;
                } else {
                    return Err(ParseError::at(src, i, "expected `->`"));
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push(Token {
                        tok: Tok::LArrow,
                        span: Span::new(i, i + 2),
                    });
                    i += 2;
                } else {
                    return Err(ParseError::at(src, i, "expected `<-`"));
                }
            }
            _ if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src[start..i];
                let tok = match word {
                    "exists" => Tok::KwExists,
                    "true" => Tok::KwTrue,
                    "false" => Tok::KwFalse,
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push(Token {
                    tok,
                    span: Span::new(start, i),
                });
            }
            _ => {
                return Err(ParseError::at(
                    src,
                    i,
                    format!(
                        "unexpected character `{}`",
                        src[i..]
                            .chars()
                            .next()
                            .map(String::from)
                            .unwrap_or_default()
                    ),
                ));
            }
        }
    }
    Ok(toks)
}
