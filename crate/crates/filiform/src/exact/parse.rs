//! Precedence-climbing parser for the catalog expression grammar:
//! integer literals, identifiers, unary minus, `+ - * / ^` with
//! nonnegative integer exponents, and parentheses.

use super::{ExactError, Poly, RatFunc, Rational};

pub fn parse_expr(src: &str) -> Result<RatFunc, ExactError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
    };
    let value = p.expr(0)?;
    match p.peek() {
        None => Ok(value),
        Some((pos, tok)) => Err(ExactError::Parse {
            pos,
            msg: format!("unexpected trailing `{tok}`"),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Int(s) | Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExactError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].to_string())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(ExactError::Parse {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, Tok)> {
        self.tokens.get(self.pos).cloned()
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> usize {
        self.tokens.last().map(|(p, t)| p + t.to_string().len()).unwrap_or(0)
    }

    fn expr(&mut self, min_bp: u8) -> Result<RatFunc, ExactError> {
        let mut lhs = self.atom()?;
        while let Some((_, tok)) = self.peek() {
            let (lbp, rbp) = match tok {
                Tok::Plus | Tok::Minus => (1, 2),
                Tok::Star | Tok::Slash => (3, 4),
                Tok::Caret => (6, 5), // right-associative
                _ => break,
            };
            if lbp < min_bp {
                break;
            }
            self.bump();
            if tok == Tok::Caret {
                let exp = self.exponent()?;
                lhs = lhs.pow_u32(exp);
                continue;
            }
            let rhs = self.expr(rbp)?;
            lhs = match tok {
                Tok::Plus => lhs.add(&rhs),
                Tok::Minus => lhs.sub(&rhs),
                Tok::Star => lhs.mul(&rhs),
                Tok::Slash => lhs.div(&rhs)?,
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn exponent(&mut self) -> Result<u32, ExactError> {
        match self.bump() {
            Some((pos, Tok::Int(s))) => s.parse::<u32>().map_err(|_| ExactError::Parse {
                pos,
                msg: "exponent out of range".into(),
            }),
            Some((pos, tok)) => Err(ExactError::Parse {
                pos,
                msg: format!("expected integer exponent, found `{tok}`"),
            }),
            None => Err(ExactError::Parse {
                pos: self.end_pos(),
                msg: "expected integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ExactError> {
        match self.bump() {
            Some((_, Tok::Int(s))) => {
                let n: num_bigint::BigInt = s.parse().expect("digits");
                Ok(RatFunc::from_rational(Rational::from_integer(n)))
            }
            Some((_, Tok::Ident(name))) => Ok(RatFunc::from_poly(Poly::var(&name))),
            Some((_, Tok::Minus)) => Ok(self.expr(5)?.neg()),
            Some((pos, Tok::LParen)) => {
                let inner = self.expr(0)?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((pos, tok)) => Err(ExactError::Parse {
                        pos,
                        msg: format!("expected `)`, found `{tok}`"),
                    }),
                    None => Err(ExactError::Parse {
                        pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some((pos, tok)) => Err(ExactError::Parse {
                pos,
                msg: format!("unexpected `{tok}`"),
            }),
            None => Err(ExactError::Parse {
                pos: self.end_pos(),
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn appendix_row_one() {
        let f = parse_expr("3*a^2/(a+2)").unwrap();
        let g = parse_expr("(3*a*a)/(2+a)").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn zero() {
        assert!(parse_expr("0").unwrap().is_zero());
    }

    #[test]
    fn unary_minus_binds_tighter_than_add() {
        assert_eq!(
            parse_expr("-2+1").unwrap(),
            RatFunc::from_int(-1)
        );
        assert_eq!(
            parse_expr("-a^2").unwrap(),
            parse_expr("0-(a^2)").unwrap()
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_expr("1+2*3^2").unwrap(),
            RatFunc::from_int(19)
        );
        assert_eq!(
            parse_expr("1/2/2").unwrap(),
            RatFunc::from_rational(rat(1, 4))
        );
    }

    #[test]
    fn literal_zero_denominator() {
        assert_eq!(parse_expr("1/0"), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn error_position() {
        match parse_expr("1 + $") {
            Err(ExactError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn render_round_trip() {
        for src in [
            "3*a^2/(a+2)",
            "(2-5*a)/(a+2)",
            "a - 3*a^2/(a+2)",
            "-1/6*a*(p0-1)*p0^2*(p0+1)",
            "(6*a^2-5*a+2)/(1-2*a^2*(2*a))",
            "0",
            "-7/3",
        ] {
            let f = parse_expr(src).unwrap();
            let g = parse_expr(&f.to_string()).unwrap();
            assert_eq!(f, g, "round trip failed for {src}: rendered {f}");
        }
    }
}
