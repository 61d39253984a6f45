//! Recursive-descent parser for polynomial expressions in `x` and `y`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := '(' expr ')' | 'x' | 'y' | uint ['/' uint]
//! ```
//!
//! Whitespace is insignificant. Multiplication must be written out (`9*x^9`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::BiPoly;

/// Exponents above this are rejected to keep expansion bounded.
const MAX_EXPONENT: u64 = 4096;

pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let out = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?}")));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Consumes `c` (after whitespace) if it is next.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let negate = self.eat('-');
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.bump();
                let e = self.digits()?;
                let e = i64::try_from(e).unwrap_or(i64::MAX);
                Err(Error::NegativeExponent(-e))
            }
            Some(c) if c.is_ascii_digit() => {
                let e = self.digits()?;
                if self.peek() == Some('/') || self.peek() == Some('.') {
                    return Err(self.error("fractional exponent"));
                }
                if e > MAX_EXPONENT {
                    return Err(self.error(format!("exponent {e} exceeds {MAX_EXPONENT}")));
                }
                Ok(base.pow_u(e as u32))
            }
            Some(c) => Err(self.error(format!("expected exponent, found {c:?}"))),
            None => Err(self.error("expected exponent, found end of input")),
        }
    }

    fn base(&mut self) -> Result<BiPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some('x') => {
                self.bump();
                Ok(BiPoly::x())
            }
            Some('y') => {
                self.bump();
                Ok(BiPoly::y())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.big_digits();
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.bump();
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.error("expected denominator"));
                    }
                    let den = self.big_digits();
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(BiPoly::constant(value))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn big_digits(&mut self) -> BigInt {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().expect("nonempty digit string")
    }

    fn digits(&mut self) -> Result<u64> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("expected digits"));
        }
        let n = self.big_digits();
        u64::try_from(&n).map_err(|_| self.error("exponent too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse_poly("(y^2-x^3)^2-x^5*y").unwrap(),
            p(&[(0, 4, 1), (3, 2, -2), (5, 1, -1), (6, 0, 1)])
        );
        assert_eq!(parse_poly("y").unwrap(), BiPoly::y());
        let r = p(&[(0, 3, 1), (3, 1, -6), (4, 0, -1)]);
        assert_eq!(
            parse_poly("(y^3-6*x^3*y-x^4)^2-9*x^9").unwrap(),
            &r.pow_u(2) - &p(&[(9, 0, 9)])
        );
        assert_eq!(parse_poly(" - x + 1/2 ").unwrap().to_string(), "1/2 - x");
        assert_eq!(parse_poly("(-y)^2").unwrap(), p(&[(0, 2, 1)]));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x^-2"), Err(Error::NegativeExponent(-2)));
        assert!(matches!(parse_poly("x^1/2"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poly("9x^9"),
            Err(Error::Parse {
                line: 1,
                column: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_poly("y +\n  * x"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(parse_poly("(x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("z"), Err(Error::Parse { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..7, 0u32..7, -20i64..=20, 1i64..=4), 0..7).prop_map(|ts| {
            let mut f = BiPoly::zero();
            for (i, j, n, d) in ts {
                f.add_term(i, j, BigRational::new(n.into(), d.into()));
            }
            f
        })
    }

    /// Random expression source over the full grammar.
    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            Just("x".to_string()),
            Just("y".to_string()),
            (0u32..10).prop_map(|n| n.to_string()),
            (1u32..10, 1u32..5).prop_map(|(n, d)| format!("{n}/{d}")),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}-{b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
                (inner.clone(), 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
                inner.prop_map(|a| format!("(-({a}))")),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn print_parse_round_trip(f in arb_poly()) {
            prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn parse_print_parse(src in arb_expr()) {
            let once = parse_poly(&src).unwrap();
            prop_assert_eq!(parse_poly(&once.to_string()).unwrap(), once);
        }
    }
}
