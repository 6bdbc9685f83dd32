//! Tokenizer shared by the surface grammars. Accepts both the ASCII operator
//! forms and their unicode equivalents.

use crate::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(String),
    Lambda,
    Dot,
    LParen,
    RParen,
    PlusOp,
    Bot,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Plus,
    Star,
    Slash,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let mut push = |tok: Tok, line: usize, col: usize, out: &mut Vec<Token>| {
        out.push(Token { tok, line, col });
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, co) = (line, col);
        let mut advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
            for k in 0..n {
                if chars[*i + k] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            }
            *i += n;
        };
        match c {
            ' ' | '\t' | '\n' | '\r' => advance(&mut i, &mut line, &mut col, 1),
            '\\' | 'λ' => {
                push(Tok::Lambda, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '.' => {
                push(Tok::Dot, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '(' => {
                if i + 2 < chars.len() && chars[i + 1] == '+' && chars[i + 2] == ')' {
                    push(Tok::PlusOp, l, co, &mut out);
                    advance(&mut i, &mut line, &mut col, 3);
                } else {
                    push(Tok::LParen, l, co, &mut out);
                    advance(&mut i, &mut line, &mut col, 1);
                }
            }
            ')' => {
                push(Tok::RParen, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '⊕' => {
                push(Tok::PlusOp, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '⊥' => {
                push(Tok::Bot, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '<' => {
                push(Tok::LAngle, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '>' => {
                push(Tok::RAngle, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '[' => {
                push(Tok::LBracket, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            ']' => {
                push(Tok::RBracket, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            ',' => {
                push(Tok::Comma, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            ';' => {
                push(Tok::Semi, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '=' => {
                push(Tok::Eq, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '+' => {
                push(Tok::Plus, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '*' => {
                push(Tok::Star, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '/' => {
                push(Tok::Slash, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 1);
            }
            '_' if i + 2 < chars.len() && chars[i + 1] == '|' && chars[i + 2] == '_' => {
                push(Tok::Bot, l, co, &mut out);
                advance(&mut i, &mut line, &mut col, 3);
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                push(Tok::Nat(text), l, co, &mut out);
                let n = j - i;
                advance(&mut i, &mut line, &mut col, n);
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                push(Tok::Ident(text), l, co, &mut out);
                let n = j - i;
                advance(&mut i, &mut line, &mut col, n);
            }
            other => {
                return Err(ParseError {
                    line: l,
                    col: co,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}
