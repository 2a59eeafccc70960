//! Polynomial text format: `3*x0^2*x1 - 2/5*x2^3`.
//!
//! The printer emits terms in decreasing graded-lex order, omits unit
//! coefficients and unit exponents, and prints the zero polynomial as `0`.
//! The parser accepts any product of numeric literals and `x<i>[^e]` factors,
//! so printer output always parses back to the same polynomial.

use std::fmt::{self, Display};

use num_traits::One;

use super::{
    parse_rational, reduce, AlgebraError, Fp, Monomial, MultiPoly, OddPrime, Rational, Scalar, Q,
};

impl<S: Scalar> Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = m.degree() == 0;
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            let mut first = constant || !mag.is_one();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if first {
                    f.write_str("*")?;
                }
                first = true;
                write!(f, "x{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> AlgebraError {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        AlgebraError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<Rational, AlgebraError> {
        let start = self.pos;
        let num = self.digits();
        let mut end = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den_at = self.pos;
            if self.digits().is_empty() {
                return Err(self.error(den_at, "expected denominator digits"));
            }
            end = self.pos;
        }
        let lit: String = self.src[start..end]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        debug_assert!(!num.is_empty());
        parse_rational(&lit).map_err(|_| self.error(start, format!("bad number {lit:?}")))
    }

    fn factor(&mut self, exps: &mut Vec<u32>, coeff: &mut Rational) -> Result<(), AlgebraError> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                *coeff = coeff.clone() * self.number()?;
            }
            Some('x') => {
                self.pos += 1;
                let idx = self.digits();
                if idx.is_empty() {
                    return Err(self.error(self.pos, "expected variable index after 'x'"));
                }
                let i: usize = idx
                    .parse()
                    .map_err(|_| self.error(at, "variable index too large"))?;
                let mut e = 1u32;
                self.skip_ws();
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e_at = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error(e_at, "expected exponent digits"));
                    }
                    e = d
                        .parse()
                        .map_err(|_| self.error(e_at, "exponent too large"))?;
                }
                if exps.len() <= i {
                    exps.resize(i + 1, 0);
                }
                exps[i] += e;
            }
            Some(c) => return Err(self.error(at, format!("unexpected character {c:?}"))),
            None => return Err(self.error(at, "unexpected end of input")),
        }
        Ok(())
    }

    fn terms(&mut self) -> Result<Vec<(Vec<u32>, Rational)>, AlgebraError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error(self.pos, "empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    negative = true;
                    self.pos += 1;
                }
                None => break,
                Some(c) if !first => {
                    return Err(self.error(self.pos, format!("expected '+' or '-', found {c:?}")))
                }
                _ => {}
            }
            first = false;
            let mut exps = Vec::new();
            let mut coeff = <Rational as One>::one();
            self.factor(&mut exps, &mut coeff)?;
            loop {
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                    self.factor(&mut exps, &mut coeff)?;
                } else {
                    break;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.push((exps, coeff));
        }
        Ok(out)
    }
}

type Terms = Vec<(Vec<u32>, Rational)>;

fn parse_terms(text: &str, nvars: Option<usize>) -> Result<(usize, Terms), AlgebraError> {
    let mut parser = Parser { src: text, pos: 0 };
    let mut terms = parser.terms()?;
    let used = terms.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
    let n = match nvars {
        Some(n) if used > n => {
            return Err(parser.error(
                text.len(),
                format!("variable x{} out of range for {n} variables", used - 1),
            ))
        }
        Some(n) => n,
        None => used,
    };
    for (e, _) in &mut terms {
        e.resize(n, 0);
    }
    Ok((n, terms))
}

impl MultiPoly<Rational> {
    /// Parses the text format. With `nvars = None` the ring is the smallest
    /// one containing every variable mentioned.
    pub fn parse(text: &str, nvars: Option<usize>) -> Result<Self, AlgebraError> {
        let (n, terms) = parse_terms(text, nvars)?;
        Ok(MultiPoly::from_terms(
            n,
            Q,
            terms.into_iter().map(|(e, c)| (Monomial::new(e), c)),
        ))
    }
}

impl MultiPoly<Fp> {
    /// Parses rational text and reduces coefficients mod p.
    pub fn parse_mod(text: &str, nvars: Option<usize>, p: OddPrime) -> Result<Self, AlgebraError> {
        let (n, terms) = parse_terms(text, nvars)?;
        let mut reduced = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            reduced.push((Monomial::new(e), reduce(&c, p)?));
        }
        Ok(MultiPoly::from_terms(n, p, reduced))
    }
}
