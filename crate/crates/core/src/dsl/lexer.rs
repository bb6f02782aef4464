//! Tokenizer with 1-based line/column tracking.

use num::bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Nat(BigInt),
    Dx(u8),
    Var(u8),
    Slot(u8),
    ModeE,
    Imag,
    Word(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    At,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn syntax_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                        line: &mut usize,
                        col: &mut usize| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            let value: BigInt = digits.parse().expect("digit run");
            out.push(Token {
                tok: Tok::Nat(value),
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&a) = chars.peek() {
                if a.is_ascii_alphabetic() {
                    word.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            let index = || -> Result<u8> {
                digits
                    .parse::<u8>()
                    .map_err(|_| syntax_error(tline, tcol, format!("index '{digits}' too large")))
            };
            let tok = match (word.as_str(), digits.is_empty()) {
                ("dx", false) => Tok::Dx(index()?),
                ("x", false) => Tok::Var(index()?),
                ("e", false) => Tok::Slot(index()?),
                ("E", true) => Tok::ModeE,
                ("i", true) => Tok::Imag,
                ("map" | "inv" | "matrix", true) => Tok::Word(word),
                _ => {
                    return Err(syntax_error(
                        tline,
                        tcol,
                        format!("unknown token '{word}{digits}'"),
                    ))
                }
            };
            out.push(Token {
                tok,
                line: tline,
                col: tcol,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '@' => Tok::At,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            other => return Err(syntax_error(tline, tcol, format!("unexpected '{other}'"))),
        };
        bump(&mut chars, &mut line, &mut col);
        out.push(Token {
            tok,
            line: tline,
            col: tcol,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let toks = lex("x1 +\n dx2").unwrap();
        assert_eq!((toks[0].line, toks[0].col), (1, 1));
        assert_eq!((toks[1].line, toks[1].col), (1, 4));
        assert_eq!((toks[2].line, toks[2].col), (2, 2));
        assert_eq!(toks[2].tok, Tok::Dx(2));
    }

    #[test]
    fn rejects_unknown_identifiers() {
        let err = lex("foo").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 1, .. }));
    }
}
