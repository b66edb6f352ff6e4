//! Expression parser for polynomials in x, y over Q(zeta).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, Field, FieldExt};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Y,
    Zeta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let syntax = |msg: String| Error::Syntax { line: l0, col: c0, msg };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Num(digits.parse().expect("digits")), l0, c0));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.as_str() {
                "x" | "X" => Tok::X,
                "y" | "Y" => Tok::Y,
                "zeta" => Tok::Zeta,
                _ => return Err(syntax(format!("unknown symbol '{word}'"))),
            };
            toks.push((tok, l0, c0));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(syntax(format!("unexpected character '{c}'"))),
        };
        toks.push((tok, l0, c0));
        col += 1;
        i += 1;
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    field: &'a Field,
    laurent: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.at();
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Tok::Slash => {
                    self.bump();
                    let (line, col) = self.at();
                    let d = self.power()?;
                    let constant = (d.num_terms() == 1 && d.coeff(0, 0) != self.field.zero())
                        .then(|| d.coeff(0, 0).inv().ok())
                        .flatten();
                    match constant {
                        Some(inv) => acc = acc.scale(&inv),
                        None => {
                            return Err(Error::Syntax {
                                line,
                                col,
                                msg: "division only by a non-zero constant".into(),
                            })
                        }
                    }
                }
                Tok::Num(_) | Tok::X | Tok::Y | Tok::Zeta | Tok::LParen => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (line, col) = self.at();
        let e = self.exponent()?;
        if e >= 0 {
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        if !self.laurent {
            return Err(Error::NegativeExponentWithoutLaurent { line, col });
        }
        if base != BiPoly::y(self.field) {
            return Err(Error::Syntax {
                line,
                col,
                msg: "only y may carry a negative exponent".into(),
            });
        }
        Ok(BiPoly::monomial(self.field.one(), 0, e).into_laurent())
    }

    fn exponent(&mut self) -> Result<i64> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let v = match self.bump() {
            Tok::Num(n) => i64::try_from(n).map_err(|_| self.error("exponent too large"))?,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected an integer exponent"));
            }
        };
        if parenthesized && self.bump() != Tok::RParen {
            self.pos -= 1;
            return Err(self.error("expected ')'"));
        }
        Ok(if negative { -v } else { v })
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let (line, col) = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(BiPoly::constant(self.field.rational(BigRational::from_integer(n)))),
            Tok::X => Ok(BiPoly::x(self.field)),
            Tok::Y => Ok(BiPoly::y(self.field)),
            Tok::Zeta => Ok(BiPoly::constant(self.field.zeta())),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    self.pos -= 1;
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                line,
                col,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                line,
                col,
                msg: format!("unexpected {}", describe(&t)),
            }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        _ => "token",
    }
}

/// Parse a polynomial in x and y (Laurent in y when `laurent`).
pub fn parse_expression(text: &str, field: &Field, laurent: bool) -> Result<BiPoly> {
    let lexer = lex(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        field,
        laurent,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(if laurent { poly.into_laurent().normalize_laurent() } else { poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;

    #[test]
    fn basic_shapes() {
        let k = CycloField::new(4);
        let f = parse_expression("x^3 - y^4", &k, false).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x^3 - y^4");
        let g = parse_expression("(x+y)*(x - y^2 + y^3)*(x + y^2 + y^3)", &k, false).unwrap();
        assert_eq!(g.x_degree(), 3);
        let h = parse_expression("2x(x-y)/2", &k, false).unwrap();
        assert_eq!(h, parse_expression("x^2 - x y", &k, false).unwrap());
    }

    #[test]
    fn negative_exponents() {
        let k = CycloField::new(4);
        assert_eq!(
            parse_expression("x^-1", &k, false),
            Err(Error::NegativeExponentWithoutLaurent { line: 1, col: 3 })
        );
        assert!(matches!(
            parse_expression("y^-2", &k, false),
            Err(Error::NegativeExponentWithoutLaurent { .. })
        ));
        let f = parse_expression("X^4 - Y^-2 X^2 + 1", &k, true).unwrap();
        assert_eq!(f.y_valuation(), -2);
        assert!(matches!(parse_expression("x^-1", &k, true), Err(Error::Syntax { .. })));
    }

    #[test]
    fn syntax_positions() {
        let k = CycloField::new(4);
        assert_eq!(
            parse_expression("x +\n  * y", &k, false),
            Err(Error::Syntax {
                line: 2,
                col: 3,
                msg: "unexpected '*'".into()
            })
        );
        assert!(matches!(parse_expression("x/y", &k, false), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("x + w", &k, false), Err(Error::Syntax { .. })));
    }
}
