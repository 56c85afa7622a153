//! Parser for canonical scalar strings such as `(q^2-1)/(q)` or `3/4*r12`.
//!
//! Grammar: `+ -` < `* /` < unary minus < `^` with integer exponents
//! (negative exponents invert). Everything round-trips through
//! [`Scalar`](super::Scalar)'s `Display`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Scalar, ScalarError, Var};

pub fn parse_scalar(input: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(ScalarError::Parse(format!(
            "trailing input at position {}",
            p.pos
        )));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.bump();
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(ScalarError::DivisionByZero);
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()?;
            if base.is_zero() && e < 0 {
                return Err(ScalarError::DivisionByZero);
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(ScalarError::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_rational(BigRational::from_integer(
                    BigInt::from(n),
                )))
            }
            Some('q') => {
                self.bump();
                Ok(Scalar::q())
            }
            Some('r') => {
                self.bump();
                let i = self.digit()?;
                let j = self.digit()?;
                if i == 0 || j == 0 || i >= j {
                    return Err(ScalarError::Parse(format!(
                        "multiparameter r{i}{j} must have 0 < i < j"
                    )));
                }
                Ok(Scalar::var(Var::R(i, j)))
            }
            other => Err(ScalarError::Parse(format!("unexpected input: {other:?}"))),
        }
    }

    fn digit(&mut self) -> Result<u8, ScalarError> {
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(*c as u8 - b'0')
            }
            _ => Err(ScalarError::Parse("expected digit".into())),
        }
    }

    fn integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let neg = if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ScalarError::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s
            .parse()
            .map_err(|_| ScalarError::Parse("integer overflow".into()))?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        let cases = [
            "0",
            "1",
            "q+1",
            "q^2-1",
            "(q^2-1)/(q)",
            "3/4*q",
            "-q^2+1",
            "(q^4+q^2)/(q^2+r12)",
        ];
        for c in cases {
            let s: Scalar = c.parse().unwrap();
            assert_eq!(s.to_string(), c, "round trip of {c}");
        }
    }

    #[test]
    fn parses_negative_exponents() {
        let s: Scalar = "q^-1".parse().unwrap();
        assert_eq!(s, Scalar::q().inv().unwrap());
        let mu: Scalar = "q - q^-1".parse().unwrap();
        assert_eq!(mu, Scalar::mu());
    }

    #[test]
    fn display_parse_round_trip() {
        let s = &(&Scalar::q() + &Scalar::r(1, 2).inv().unwrap()) * &Scalar::rational(-3, 7);
        let back: Scalar = s.to_string().parse().unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_scalar("q+").is_err());
        assert!(parse_scalar("r21").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("q 1").is_err());
    }
}
