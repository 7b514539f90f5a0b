//! Text syntax for Laurent polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := '-' factor | atom ['^' ['+' | '-'] digits]
//! atom   := digits | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1..x{n-1}` and `y1..y{2g}`; on a rank-one lattice `t` is
//! accepted as an alias for the single variable. Whitespace is ignored and
//! juxtaposition multiplies, so `3t` and `x1y1` parse. Negative powers are
//! allowed only on units.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, SurfaceSignature};
use crate::laurent::LaurentPolynomial;

const MAX_POWER: i64 = 1 << 20;
const MAX_POLY_POWER: i64 = 512;

pub fn parse_polynomial(text: &str, signature: SurfaceSignature) -> Result<LaurentPolynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        sig: signature,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: SurfaceSignature,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPolynomial> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let start = self.pos;
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.signed_integer()?;
        if k.abs() > MAX_POWER {
            return Err(self.error("exponent too large"));
        }
        if let Some(u) = base.as_unit() {
            let mut p = LaurentPolynomial::monomial(self.sig, u.monomial.scaled(k), 1);
            if u.negative && k % 2 != 0 {
                p = -&p;
            }
            return Ok(p);
        }
        if k < 0 {
            return Err(Error::Syntax {
                offset: start,
                message: "negative power of a non-unit".into(),
            });
        }
        if k > MAX_POLY_POWER {
            return Err(self.error("exponent too large for a non-monomial base"));
        }
        Ok(base.pow(k as u32))
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(b'(') => {
                self.pos += 1;
                let k = self.signed_integer()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                return Ok(k);
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let k: i64 = digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })?;
        Ok(if negative { -k } else { k })
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> Result<LaurentPolynomial> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digits");
                Ok(LaurentPolynomial::constant(self.sig, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let index = if name == "t" && self.sig.rank() == 1 {
                    Some(0)
                } else {
                    self.sig.variable_index(name)
                };
                match index {
                    Some(i) => Ok(LaurentPolynomial::variable(self.sig, i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        offset: start,
                        signature: self.sig,
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}

/// Prints terms in ascending term order, e.g. `1 - x1 + x1*y1`. The output
/// parses back to the same polynomial.
pub fn print_polynomial(p: &LaurentPolynomial) -> String {
    let sig = p.signature();
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mono = print_monomial(e, sig);
        if mono.is_empty() {
            write!(out, "{mag}").unwrap();
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            write!(out, "{mag}*{mono}").unwrap();
        }
    }
    out
}

fn print_monomial(e: &ExponentVector, sig: SurfaceSignature) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(sig.variable_name(i)),
            _ => parts.push(format!("{}^{}", sig.variable_name(i), k)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig() -> SurfaceSignature {
        SurfaceSignature::new(1, 2)
    }

    #[test]
    fn parses_closed_form() {
        let p = parse_polynomial("1 + (y1-1)*x1", sig()).unwrap();
        assert_eq!(print_polynomial(&p), "1 - x1 + x1*y1");
        let q = parse_polynomial("1 + (y1-1)*x1 + y1*(y1-1)*x1^2", sig()).unwrap();
        assert_eq!(q.num_terms(), 5);
    }

    #[test]
    fn negative_powers() {
        let p = parse_polynomial("x1^-2", sig()).unwrap();
        assert_eq!(p.terms().next().unwrap().0, &ExponentVector(vec![-2, 0, 0]));
        let p = parse_polynomial("(-x1)^-3", sig()).unwrap();
        assert_eq!(print_polynomial(&p), "-x1^-3");
        assert!(matches!(
            parse_polynomial("(1+x1)^-1", sig()),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }

    #[test]
    fn error_offsets() {
        assert!(matches!(
            parse_polynomial("1 +", sig()),
            Err(Error::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("1 + z2", sig()),
            Err(Error::UnknownVariable { offset: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("(1 + x1", sig()),
            Err(Error::Syntax { offset: 7, .. })
        ));
        assert!(matches!(
            parse_polynomial("1 $", sig()),
            Err(Error::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn implicit_multiplication_and_alias() {
        let ann = SurfaceSignature::annulus();
        let a = parse_polynomial("t^2-3t+1", ann).unwrap();
        let b = parse_polynomial("x1^2 - 3*x1 + 1", ann).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_polynomial("x1y1", sig()).unwrap(),
            parse_polynomial("x1 * y1", sig()).unwrap()
        );
        assert!(parse_polynomial("t", sig()).is_err());
    }

    #[test]
    fn printer_shapes() {
        let p = parse_polynomial("-3 + 2*x1^-1*y2^4 - y1", sig()).unwrap();
        assert_eq!(print_polynomial(&p), "2*x1^-1*y2^4 - 3 - y1");
        assert_eq!(print_polynomial(&LaurentPolynomial::zero(sig())), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((prop::collection::vec(-4i64..5, 3), -50i64..50), 0..8).prop_map(|terms| {
            LaurentPolynomial::from_terms(sig(), terms.into_iter().map(|(e, c)| (ExponentVector(e), c)))
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let text = print_polynomial(&p);
            prop_assert_eq!(parse_polynomial(&text, sig()).unwrap(), p);
        }
    }
}
