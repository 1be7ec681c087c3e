use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Number(q) => format!("number `{q}`"),
            Tok::Ident(s) => format!("symbol `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Splits `text` into tokens. Positions are 1-based; `line` and `column` give the
/// position of the first character of `text`.
pub(crate) fn tokenize(text: &str, line: usize, column: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut ln, mut col) = (line, column);
    while i < chars.len() {
        let c = chars[i];
        let start = (ln, col);
        if c == '\n' {
            i += 1;
            ln += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line: start.0, column: start.1 });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let whole: String = chars[begin..i].iter().collect();
            let mut value = BigRational::from_integer(whole.parse::<BigInt>().expect("digits"));
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let fb = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let frac: String = chars[fb..i].iter().collect();
                let scale = BigInt::from(10).pow(frac.len() as u32);
                value += BigRational::new(frac.parse::<BigInt>().expect("digits"), scale);
            }
            col += i - begin;
            out.push(Token { tok: Tok::Number(value), line: start.0, column: start.1 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - begin;
            out.push(Token { tok: Tok::Ident(chars[begin..i].iter().collect()), line: start.0, column: start.1 });
            continue;
        }
        return Err(ParseError {
            line: start.0,
            column: start.1,
            expected: vec!["number".into(), "symbol".into(), "operator".into(), "`(`".into()],
            found: format!("character `{c}`"),
        });
    }
    out.push(Token { tok: Tok::Eof, line: ln, column: col });
    Ok(out)
}
