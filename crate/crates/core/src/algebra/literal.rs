//! Element literals: `3/2 e f g* + v - 2 * f f*`, with `0` for zero.

use num_traits::One;
use thiserror::Error;

use super::{monomial_product, Element, Monomial};
use crate::graph::Graph;
use crate::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiteralError {
    #[error("unexpected character `{0}` in element literal")]
    BadChar(char),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid coefficient `{0}`")]
    BadCoefficient(String),
    #[error("term has no generators")]
    EmptyTerm,
    #[error("empty element literal")]
    Empty,
}

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Times,
    Number(String),
    Factor(String, bool),
}

fn tokenize(text: &str) -> Result<Vec<Token>, LiteralError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push(Token::Plus);
            i += 1;
        } else if c == '-' {
            out.push(Token::Minus);
            i += 1;
        } else if c == '*' {
            out.push(Token::Times);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push(Token::Number(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '[' {
                while i < chars.len() && chars[i] != ']' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(LiteralError::BadChar('['));
                }
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let starred = i < chars.len() && chars[i] == '*';
            if starred {
                i += 1;
            }
            out.push(Token::Factor(name, starred));
        } else {
            return Err(LiteralError::BadChar(c));
        }
    }
    Ok(out)
}

fn generator(g: &Graph, name: &str, starred: bool) -> Result<Monomial, LiteralError> {
    if let Ok(v) = g.vertex(name) {
        return Ok(Monomial::vertex(v));
    }
    let e = g.edge(name).map_err(|_| LiteralError::UnknownGenerator(name.to_string()))?;
    Ok(if starred { Monomial::ghost(g, e) } else { Monomial::edge(g, e) })
}

/// Parses a literal into an element; products inside a term are reduced by CK-1 only.
pub fn parse_element(g: &Graph, text: &str) -> Result<Element, LiteralError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(LiteralError::Empty);
    }
    if tokens == [Token::Number("0".into())] {
        return Ok(Element::zero());
    }
    let mut out = Element::zero();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = Rational::one();
        match tokens[i] {
            Token::Plus => i += 1,
            Token::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => return Err(LiteralError::BadChar('+')),
        }
        first = false;
        let mut coefficient = sign;
        if let Some(Token::Number(n)) = tokens.get(i) {
            coefficient *= parse_rational(n).ok_or_else(|| LiteralError::BadCoefficient(n.clone()))?;
            i += 1;
            if tokens.get(i) == Some(&Token::Times) {
                i += 1;
            }
        }
        let mut word: Option<Option<Monomial>> = None;
        while let Some(Token::Factor(name, starred)) = tokens.get(i) {
            let m = generator(g, name, *starred)?;
            word = Some(match word {
                None => Some(m),
                Some(None) => None,
                Some(Some(acc)) => monomial_product(g, &acc, &m),
            });
            i += 1;
        }
        match word {
            None => return Err(LiteralError::EmptyTerm),
            Some(Some(m)) => out.add_term(m, coefficient),
            Some(None) => {}
        }
        if let Some(t) = tokens.get(i) {
            if !matches!(t, Token::Plus | Token::Minus) {
                return Err(LiteralError::BadChar(match t {
                    Token::Times => '*',
                    _ => '?',
                }));
            }
        }
    }
    Ok(out)
}
