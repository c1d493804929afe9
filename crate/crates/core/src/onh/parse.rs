//! Text syntax for odd nilHecke elements: sums of products such as
//! `x1^2*x2*t[1,2] - 3/2*t[1] + 1`. Factors are multiplied in the order
//! written, so non-normal input such as `t[1]*x1` is accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::element::{OnhAlgebra, OnhElement};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("number out of range"))
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }
}

/// Parse an element of `ONH_n`.
pub fn parse_element(alg: &OnhAlgebra, text: &str) -> Result<OnhElement> {
    let mut cur = Cursor { text, pos: 0 };
    let mut total = OnhElement::zero(alg.rank());
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return Err(cur.error("empty expression"));
            }
            break;
        }
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(cur.error("expected '+' or '-'"));
        };
        let term = parse_term(alg, &mut cur)?;
        let sign = if negative { -BigRational::one() } else { BigRational::one() };
        total.add_scaled(&term, &sign);
        first = false;
    }
    Ok(total)
}

fn parse_term(alg: &OnhAlgebra, cur: &mut Cursor<'_>) -> Result<OnhElement> {
    let mut acc = parse_factor(alg, cur)?;
    while cur.eat('*') {
        let f = parse_factor(alg, cur)?;
        acc = alg.multiply_free(&acc, &f)?;
    }
    Ok(acc)
}

fn parse_factor(alg: &OnhAlgebra, cur: &mut Cursor<'_>) -> Result<OnhElement> {
    let n = alg.rank();
    cur.skip_ws();
    match cur.peek() {
        Some('x') => {
            cur.pos += 1;
            let k: usize = cur.number()?;
            let power: u32 = if cur.eat('^') { cur.number()? } else { 1 };
            let x = alg.x(k)?;
            let mut out = OnhElement::one(n);
            for _ in 0..power {
                out = alg.multiply_free(&out, &x)?;
            }
            Ok(out)
        }
        Some('t') => {
            cur.pos += 1;
            if !cur.eat('[') {
                return Err(cur.error("expected '[' after 't'"));
            }
            let mut word = Vec::new();
            if !cur.eat(']') {
                loop {
                    word.push(cur.number()?);
                    if cur.eat(']') {
                        break;
                    }
                    if !cur.eat(',') {
                        return Err(cur.error("expected ',' or ']'"));
                    }
                }
            }
            alg.tau_word(&word)
        }
        Some(c) if c.is_ascii_digit() => {
            let num: BigInt = cur.number()?;
            let den: BigInt = if cur.eat('/') { cur.number()? } else { BigInt::one() };
            if den == BigInt::from(0) {
                return Err(cur.error("zero denominator"));
            }
            Ok(OnhElement::scalar(n, BigRational::new(num, den)))
        }
        _ => Err(cur.error("expected a factor")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let alg = OnhAlgebra::new(3).unwrap();
        for text in ["x1^2*x2*t[1,2]", "1 - x2*t[1]", "-3/2*x3 + t[1,2,1]", "0"] {
            let e = parse_element(&alg, text).unwrap();
            assert_eq!(e.to_string(), text);
        }
        assert_eq!(parse_element(&alg, "x2*x1").unwrap().to_string(), "-x1*x2");
        assert_eq!(parse_element(&alg, "t[2,1,2]").unwrap().to_string(), "t[1,2,1]");
        assert_eq!(parse_element(&alg, "t[1]*x1").unwrap().to_string(), "1 - x2*t[1]");
        assert!(parse_element(&alg, "t[1,1]").unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let alg = OnhAlgebra::new(2).unwrap();
        assert_eq!(parse_element(&alg, "").unwrap_err().code(), "E_PARSE");
        assert_eq!(parse_element(&alg, "x1 x2").unwrap_err().code(), "E_PARSE");
        assert_eq!(parse_element(&alg, "y1").unwrap_err().code(), "E_PARSE");
        assert_eq!(parse_element(&alg, "x3").unwrap_err().code(), "E_GENERATOR");
        assert_eq!(parse_element(&alg, "t[2]").unwrap_err().code(), "E_GENERATOR");
        assert_eq!(parse_element(&alg, "1/0").unwrap_err().code(), "E_PARSE");
    }
}
