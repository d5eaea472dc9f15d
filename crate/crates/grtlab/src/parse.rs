//! Text format for Lie series.
//!
//! Grammar (whitespace insignificant, UTF-8):
//!
//! ```text
//! expr      := ('+'|'-')? term (('+'|'-') term)*
//! term      := rational? atom | rational
//! atom      := generator | '[' expr ',' expr ']' | '(' expr ')'
//! rational  := integer ('/' positive-integer)?
//! generator := letter (letter|digit)*
//! ```
//!
//! A bare rational is only meaningful as the zero series (`0`); any other
//! constant is rejected. Formatting emits the Lyndon-basis normal form with
//! every basis word fully bracketed, so `parse . format` is the identity on
//! normalized series.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lyndon::LyndonWord;
use crate::rational::{fmt_rat, Rat};
use crate::series::{Alphabet, LieSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { position: usize, name: String },
    #[error("expression reaches degree {degree}, above the truncation order {max_degree}")]
    DegreeOverflow { degree: usize, max_degree: usize },
    #[error("nonzero constant term at position {position} has no Lie meaning")]
    ConstantTerm { position: usize },
}

/// Parses `text` into a series over `alphabet`, truncated at `max_degree`.
pub fn parse_series(
    text: &str,
    alphabet: &Arc<Alphabet>,
    max_degree: usize,
) -> Result<LieSeries, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        alphabet: alphabet.clone(),
        max_degree,
    };
    let (series, _) = p.parse_expr()?;
    p.expect_end()?;
    Ok(series)
}

/// Lyndon-basis normal form, terms sorted by (degree, word).
pub fn format_series(series: &LieSeries) -> String {
    let mut terms: Vec<(&LyndonWord, &Rat)> = series.terms().collect();
    terms.sort_by_key(|(w, _)| (w.degree(), (*w).clone()));
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (word, coeff)) in terms.iter().enumerate() {
        let negative = coeff.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = coeff.abs();
        if !mag.is_one() {
            out.push_str(&fmt_rat(&mag));
            out.push(' ');
        }
        out.push_str(&bracketed_word(word, series.alphabet()));
    }
    out
}

/// Fully bracketed rendering of a basis word via its standard factorization.
pub fn bracketed_word(word: &LyndonWord, alphabet: &Alphabet) -> String {
    if word.degree() == 1 {
        alphabet.name(word.letters()[0]).to_string()
    } else {
        let (u, v) = word.standard_factorization();
        format!(
            "[{},{}]",
            bracketed_word(&u, alphabet),
            bracketed_word(&v, alphabet)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Slash,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Int(String),
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1; // 1-based character position
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            ',' => {
                out.push((pos, Tok::Comma));
                i += 1;
            }
            '[' => {
                out.push((pos, Tok::LBracket));
                i += 1;
            }
            ']' => {
                out.push((pos, Tok::RBracket));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start + 1, Tok::Int(chars[start..i].iter().collect())));
            }
            _ if c.is_alphabetic() => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_alphanumeric()) {
                    i += 1;
                }
                out.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{}`", c),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    alphabet: Arc<Alphabet>,
    max_degree: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_position(&self) -> usize {
        self.tokens.last().map(|(p, _)| p + 1).unwrap_or(1)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some((pos, tok)) => Err(ParseError::Syntax {
                position: *pos,
                message: format!("unexpected trailing token {:?}", tok),
            }),
        }
    }

    /// Returns the value together with the maximal formal degree of any
    /// distributed term, which is what the truncation check applies to.
    fn parse_expr(&mut self) -> Result<(LieSeries, usize), ParseError> {
        let mut negative = false;
        if let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.next();
                }
                Tok::Minus => {
                    negative = true;
                    self.next();
                }
                _ => {}
            }
        }
        let (first, mut max_deg) = self.parse_term()?;
        let mut acc = if negative { first.neg() } else { first };
        while let Some((_, tok)) = self.peek() {
            let subtract = match tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.next();
            let (term, d) = self.parse_term()?;
            max_deg = max_deg.max(d);
            acc = if subtract {
                acc.sub(&term)
            } else {
                acc.add(&term)
            }
            .expect("parser builds compatible series");
        }
        Ok((acc, max_deg))
    }

    fn parse_term(&mut self) -> Result<(LieSeries, usize), ParseError> {
        match self.peek().cloned() {
            Some((pos, Tok::Int(digits))) => {
                self.next();
                let mut num: Rat = digits.parse::<Rat>().map_err(|_| ParseError::Syntax {
                    position: pos,
                    message: "bad integer".to_string(),
                })?;
                if let Some((_, Tok::Slash)) = self.peek() {
                    self.next();
                    match self.next() {
                        Some((dpos, Tok::Int(den))) => {
                            let den: Rat =
                                den.parse::<Rat>().map_err(|_| ParseError::Syntax {
                                    position: dpos,
                                    message: "bad integer".to_string(),
                                })?;
                            if den.is_zero() {
                                return Err(ParseError::Syntax {
                                    position: dpos,
                                    message: "zero denominator".to_string(),
                                });
                            }
                            num /= den;
                        }
                        other => {
                            let position =
                                other.map(|(p, _)| p).unwrap_or_else(|| self.end_position());
                            return Err(ParseError::Syntax {
                                position,
                                message: "expected denominator".to_string(),
                            });
                        }
                    }
                }
                // rational atom | bare rational
                if self.starts_atom() {
                    let (atom, d) = self.parse_atom()?;
                    Ok((atom.scale(&num), d))
                } else if num.is_zero() {
                    Ok((LieSeries::zero(self.alphabet.clone(), self.max_degree), 0))
                } else {
                    Err(ParseError::ConstantTerm { position: pos })
                }
            }
            Some(_) => self.parse_atom(),
            None => Err(ParseError::Syntax {
                position: self.end_position(),
                message: "expected a term".to_string(),
            }),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some((_, Tok::Ident(_))) | Some((_, Tok::LBracket)) | Some((_, Tok::LParen))
        )
    }

    fn parse_atom(&mut self) -> Result<(LieSeries, usize), ParseError> {
        match self.next() {
            Some((pos, Tok::Ident(name))) => {
                if self.alphabet.index_of(&name).is_none() {
                    return Err(ParseError::UnknownGenerator {
                        position: pos,
                        name,
                    });
                }
                let g = LieSeries::generator(self.alphabet.clone(), self.max_degree, &name)
                    .expect("known generator");
                Ok((g, 1))
            }
            Some((_, Tok::LBracket)) => {
                let (left, dl) = self.parse_expr()?;
                self.expect(Tok::Comma, "expected `,` in bracket")?;
                let (right, dr) = self.parse_expr()?;
                self.expect(Tok::RBracket, "expected `]`")?;
                let degree = dl + dr;
                if degree > self.max_degree {
                    return Err(ParseError::DegreeOverflow {
                        degree,
                        max_degree: self.max_degree,
                    });
                }
                Ok((
                    left.bracket(&right).expect("parser builds compatible series"),
                    degree,
                ))
            }
            Some((_, Tok::LParen)) => {
                let (inner, d) = self.parse_expr()?;
                self.expect(Tok::RParen, "expected `)`")?;
                Ok((inner, d))
            }
            Some((pos, tok)) => Err(ParseError::Syntax {
                position: pos,
                message: format!("unexpected token {:?}", tok),
            }),
            None => Err(ParseError::Syntax {
                position: self.end_position(),
                message: "unexpected end of input".to_string(),
            }),
        }
    }

    fn expect(&mut self, want: Tok, message: &str) -> Result<(), ParseError> {
        match self.next() {
            Some((_, tok)) if tok == want => Ok(()),
            Some((pos, _)) => Err(ParseError::Syntax {
                position: pos,
                message: message.to_string(),
            }),
            None => Err(ParseError::Syntax {
                position: self.end_position(),
                message: message.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parse_xy(text: &str, max_degree: usize) -> Result<LieSeries, ParseError> {
        parse_series(text, &Alphabet::xy(), max_degree)
    }

    #[test]
    fn basis_aligned_input() {
        let s = parse_xy("[x,[x,y]] - [y,[y,x]]", 3).unwrap();
        let terms: Vec<_> = s.terms().collect();
        assert_eq!(terms.len(), 2);
        assert_eq!(format_series(&s), "[x,[x,y]] - [[x,y],y]");
    }

    #[test]
    fn antisymmetric_inputs_cancel() {
        assert!(parse_xy("[x,x]", 2).unwrap().is_zero());
        assert!(parse_xy("[x,y] + [y,x]", 2).unwrap().is_zero());
    }

    #[test]
    fn coefficient_sign_flips_under_normalization() {
        let s = parse_xy("1/3 [y,x]", 2).unwrap();
        let word = LyndonWord::new(vec![0, 1]).unwrap();
        assert_eq!(s.coefficient(&word), rat(-1, 3));
        assert_eq!(format_series(&s), "-1/3 [x,y]");
    }

    #[test]
    fn zero_literal_and_round_trip_of_zero() {
        assert!(parse_xy("0", 4).unwrap().is_zero());
        let zero = LieSeries::zero(Alphabet::xy(), 4);
        assert_eq!(format_series(&zero), "0");
        assert!(parse_xy(&format_series(&zero), 4).unwrap().is_zero());
    }

    #[test]
    fn nonzero_constant_rejected() {
        assert_eq!(
            parse_xy("5", 4).unwrap_err(),
            ParseError::ConstantTerm { position: 1 }
        );
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse_xy("[x,", 4).unwrap_err() {
            ParseError::Syntax { position, .. } => assert_eq!(position, 4),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_xy("[x y]", 4).unwrap_err() {
            ParseError::Syntax { position, .. } => assert_eq!(position, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_generator_reported() {
        assert_eq!(
            parse_xy("[x,q]", 4).unwrap_err(),
            ParseError::UnknownGenerator {
                position: 4,
                name: "q".to_string()
            }
        );
    }

    #[test]
    fn degree_overflow_rejected() {
        assert_eq!(
            parse_xy("[x,[x,y]]", 2).unwrap_err(),
            ParseError::DegreeOverflow {
                degree: 3,
                max_degree: 2
            }
        );
    }

    #[test]
    fn parens_scaling_and_leading_sign() {
        let a = parse_xy("-([x,y] + 2 [x,[x,y]])", 3).unwrap();
        let b = parse_xy("-[x,y] - 2 [x,[x,y]]", 3).unwrap();
        assert_eq!(a, b);
        let c = parse_xy("2/4 [x,y]", 2).unwrap();
        let word = LyndonWord::new(vec![0, 1]).unwrap();
        assert_eq!(c.coefficient(&word), rat(1, 2));
    }

    #[test]
    fn round_trip_on_random_series() {
        let a = Alphabet::xy();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let s = LieSeries::random(a.clone(), 6, &mut rng);
            let text = format_series(&s);
            let back = parse_series(&text, &a, 6).unwrap();
            assert_eq!(back, s, "round trip failed for `{text}`");
        }
    }

    #[test]
    fn round_trip_on_three_letter_alphabet() {
        let a = Alphabet::new(["t12", "t13", "t23"]);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10 {
            let s = LieSeries::random(a.clone(), 4, &mut rng);
            let back = parse_series(&format_series(&s), &a, 4).unwrap();
            assert_eq!(back, s);
        }
    }
}
