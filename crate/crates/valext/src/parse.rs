//! Polynomial text grammar.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := power (("*"|"/") power)*
//! power  := atom ["^" digits]
//! atom   := digits | "x" | "t" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. `t` is only available over `𝔽_p(t)`, and division is
//! only by expressions free of `x`.

use num_bigint::BigInt;
use valext_core::arith::Poly;
use valext_core::basefield::ValuedField;

const MAX_EXPONENT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a, K: ValuedField> {
    src: &'a [u8],
    pos: usize,
    field: &'a K,
}

type Parsed<K> = Result<Poly<<K as ValuedField>::Scalar>, ParseError>;

impl<'a, K: ValuedField> Parser<'a, K> {
    fn fail<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset, message: message.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Parsed<K> {
        let f = self.field;
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ if first => {
                    acc = self.term()?;
                    first = false;
                    continue;
                }
                _ => return Ok(acc),
            };
            self.pos += 1;
            let t = self.term()?;
            acc = if negate { acc.sub(f, &t) } else { acc.add(f, &t) };
            first = false;
        }
    }

    fn term(&mut self) -> Parsed<K> {
        let f = self.field;
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(f, &self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.peek();
                    let at = self.pos;
                    let d = self.power()?;
                    if d.deg() > 0 {
                        return self.fail(at, "division by a polynomial in x");
                    }
                    let Some(inv) = d.coeffs().first().and_then(|c| f.inv(c)) else {
                        return self.fail(at, "division by zero");
                    };
                    acc = acc.scale(f, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Parsed<K> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.peek();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.fail(at, "expected an exponent");
        }
        match digits.parse::<u64>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(self.field, e)),
            _ => self.fail(at, format!("exponent exceeds {MAX_EXPONENT}")),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> Parsed<K> {
        let f = self.field;
        let at = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digits");
                Ok(Poly::constant(f, f.from_bigint(&n)))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x(f))
            }
            Some(b't') => match f.param() {
                Some(t) => {
                    self.pos += 1;
                    Ok(Poly::constant(f, t))
                }
                None => self.fail(self.pos, "t is not a valid coefficient over q"),
            },
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail(self.pos, format!("unclosed parenthesis opened at offset {open}"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => {
                let c = std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next());
                self.fail(self.pos, format!("unexpected {}", c.map_or_else(|| "byte".into(), |c| format!("'{c}'"))))
            }
            None => self.fail(at.max(self.pos), "unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `x` over `field`.
pub fn parse_poly<K: ValuedField>(text: &str, field: &K) -> Result<Poly<K::Scalar>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    if p.peek().is_none() {
        return p.fail(p.pos, "empty polynomial");
    }
    let poly = p.expr()?;
    if p.peek().is_some() {
        let c = text[p.pos..].chars().next().unwrap_or('?');
        return p.fail(p.pos, format!("unexpected '{c}'"));
    }
    Ok(poly)
}
