//! Reader for the ideal text format.
//!
//! One polynomial per line; integer coefficients; variables `x0 .. xr`;
//! operators `+ - * ^` and parentheses. `#` starts a comment that runs to
//! the end of the line. Blank lines are skipped.

use num_bigint::BigInt;

use crate::field::Field;

use super::{IdealPresentation, Monomial, PolyError, Polynomial};

/// Parse an ideal presentation in `P^r`.
pub fn parse_ideal<F: Field>(text: &str, r: usize) -> Result<IdealPresentation<F>, PolyError> {
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let p = parse_line::<F>(body, r, line)?;
        if p.is_zero() {
            return Err(PolyError::ZeroGenerator { line });
        }
        if p.homogeneous_degree().is_none() {
            return Err(PolyError::InhomogeneousGenerator { line, text: body.trim().to_string() });
        }
        gens.push(p);
    }
    IdealPresentation::new(r + 1, gens)
}

/// Parse a single polynomial expression in `r + 1` variables.
pub fn parse_polynomial<F: Field>(text: &str, r: usize) -> Result<Polynomial<F>, PolyError> {
    parse_line(text, r, 1)
}

fn parse_line<F: Field>(text: &str, r: usize, line: usize) -> Result<Polynomial<F>, PolyError> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, nvars: r + 1, line };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    nvars: usize,
    line: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|(i, _)| *i + 1).unwrap_or_else(|| {
            self.chars.last().map(|(i, c)| i + c.len_utf8() + 1).unwrap_or(1)
        })
    }

    fn error(&self, msg: &str) -> PolyError {
        let found = self.chars.get(self.pos).map(|(_, c)| format!("'{c}'"));
        PolyError::Syntax {
            line: self.line,
            column: self.column(),
            message: match found {
                Some(f) => format!("{msg} (found {f})"),
                None => format!("{msg} (found end of line)"),
            },
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn expr<F: Field>(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term::<F>()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.factor()?;
        while let Some('*') = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor<F: Field>(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.primary()?;
        if let Some('^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent too large")
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn primary<F: Field>(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.factor::<F>()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits.parse().expect("ascii digits");
                Ok(Polynomial::constant(self.nvars, F::from_bigint(&v)))
            }
            Some('x') => {
                let col = self.column();
                self.pos += 1;
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.error("expected variable index after 'x'"));
                }
                let idx: usize = digits.parse().unwrap_or(usize::MAX);
                if idx >= self.nvars {
                    return Err(PolyError::VariableOutOfRange {
                        line: self.line,
                        column: col,
                        variable: format!("x{digits}"),
                        r: self.nvars - 1,
                    });
                }
                Ok(Polynomial::monomial(Monomial::var(idx, self.nvars)))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use proptest::prelude::*;

    #[test]
    fn parses_simple_generator() {
        let i = parse_ideal::<Rational>("x0^2 + 2*x1*x2", 2).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert_eq!(i.d(), 2);
        assert_eq!(i.generators()[0].len(), 2);
    }

    #[test]
    fn zero_generator_rejected() {
        let e = parse_ideal::<Rational>("x0 - x0", 1).unwrap_err();
        assert!(matches!(e, PolyError::ZeroGenerator { line: 1 }), "{e:?}");
    }

    #[test]
    fn inhomogeneous_rejected_with_line() {
        let e = parse_ideal::<Rational>("x0*x1\n# comment\nx0 + x1^2", 1).unwrap_err();
        match e {
            PolyError::InhomogeneousGenerator { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn variable_out_of_range() {
        let e = parse_ideal::<Rational>("x0*x3", 2).unwrap_err();
        match e {
            PolyError::VariableOutOfRange { line, column, variable, r } => {
                assert_eq!((line, column, variable.as_str(), r), (1, 4, "x3", 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_ideal::<Rational>("x0 +* x1", 1).unwrap_err();
        match e {
            PolyError::Syntax { line, column, .. } => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ideal::<Rational>("(x0 + x1", 1),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(parse_ideal::<Rational>("x0^", 1), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn comments_parentheses_and_unary_minus() {
        let i = parse_ideal::<Fp>("  # header\n-(x0 - x1)^2 # square\n\n", 1).unwrap();
        assert_eq!(i.generators()[0].to_string(), "-x0^2 + 2*x0*x1 - x1^2");
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial<Rational>> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, 3), -50i64..50), 1..6)
            .prop_map(|ts| {
                Polynomial::from_terms(
                    3,
                    ts.into_iter().map(|(e, c)| (Monomial::new(e).unwrap(), Rational::from_i64(c))),
                )
            })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(p in poly_strategy()) {
            prop_assume!(!p.is_zero());
            let back = parse_polynomial::<Rational>(&p.to_string(), 2).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
