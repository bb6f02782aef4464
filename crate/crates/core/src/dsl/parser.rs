//! Recursive-descent parser for the form and diffeomorphism syntax.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

use super::lexer::{lex, syntax_error, Tok, Token};
use super::FormValue;
use crate::chart::ChartSpec;
use crate::coeff::CoeffFn;
use crate::diffeo::Diffeo;
use crate::error::{Error, Result};
use crate::forms::{MultiIndex, ScalarForm, VectorForm};
use crate::scalar::Scalar;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    chart: ChartSpec,
}

struct RawTerm {
    coeff: CoeffFn,
    wedge: Vec<u8>,
    slot: Option<u8>,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(src: &str, chart: ChartSpec) -> Result<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            chart,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|t| {
                if self.pos < self.toks.len() {
                    (t.line, t.col)
                } else {
                    (t.line, t.col + 1)
                }
            })
            .unwrap_or((1, 1))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let (line, col) = self.here();
        match self.next() {
            Some(t) if t.tok == tok => Ok(()),
            _ => Err(syntax_error(line, col, format!("expected {what}"))),
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(syntax_error(line, col, msg))
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Nat(_))
                | Some(Tok::Imag)
                | Some(Tok::Var(_))
                | Some(Tok::ModeE)
                | Some(Tok::LParen)
        )
    }

    /// `NAT ['/' NAT]` as an exact rational.
    fn rational(&mut self, num: BigInt) -> Result<BigRational> {
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.next();
            let (line, col) = self.here();
            match self.next() {
                Some(Token {
                    tok: Tok::Nat(den), ..
                }) => {
                    if den == BigInt::from(0) {
                        return Err(syntax_error(line, col, "zero denominator"));
                    }
                    Ok(BigRational::new(num, den))
                }
                _ => Err(syntax_error(line, col, "expected denominator")),
            }
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `['-'] NAT` inside brackets.
    fn signed_int(&mut self) -> Result<i32> {
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            true
        } else {
            false
        };
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                tok: Tok::Nat(n), ..
            }) => {
                let text = n.to_string();
                let v: i32 = text
                    .parse()
                    .map_err(|_| syntax_error(line, col, "integer too large"))?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(syntax_error(line, col, "expected an integer")),
        }
    }

    /// One coefficient factor.
    fn factor(&mut self) -> Result<CoeffFn> {
        let (line, col) = self.here();
        match self.next().map(|t| t.tok) {
            Some(Tok::Nat(n)) => {
                let r = self.rational(n)?;
                Ok(CoeffFn::constant(self.chart, Scalar::from_rat(r)))
            }
            Some(Tok::Imag) => {
                if !self.chart.is_fourier() {
                    return Err(Error::ChartMismatch(
                        "the imaginary unit needs a fourier chart".into(),
                    ));
                }
                Ok(CoeffFn::constant(self.chart, Scalar::i()))
            }
            Some(Tok::Var(v)) => {
                if !self.chart.is_poly() {
                    return Err(Error::ChartMismatch(format!(
                        "variable x{v} needs a poly chart"
                    )));
                }
                if v as usize > self.chart.dim() || v == 0 {
                    return Err(Error::ChartMismatch(format!(
                        "unknown variable index x{v} on {}",
                        self.chart
                    )));
                }
                let mut exp: u32 = 1;
                if matches!(self.peek(), Some(Tok::Caret)) {
                    // power only when digits follow; a dx means a wedge join
                    if let Some(Tok::Nat(_)) = self.toks.get(self.pos + 1).map(|t| &t.tok) {
                        self.next();
                        let (l2, c2) = self.here();
                        match self.next() {
                            Some(Token {
                                tok: Tok::Nat(n), ..
                            }) => {
                                exp = n
                                    .to_string()
                                    .parse()
                                    .map_err(|_| syntax_error(l2, c2, "exponent too large"))?;
                            }
                            _ => unreachable!("peeked"),
                        }
                    } else {
                        return Err(syntax_error(line, col, "expected digits after '^'"));
                    }
                }
                let mut exps = vec![0i32; self.chart.dim()];
                exps[v as usize - 1] = exp as i32;
                CoeffFn::monomial(self.chart, &exps)
            }
            Some(Tok::ModeE) => {
                if !self.chart.is_fourier() {
                    return Err(Error::ChartMismatch(
                        "modes E[..] need a fourier chart".into(),
                    ));
                }
                self.expect(Tok::LBracket, "'[' after E")?;
                let mut freqs = vec![self.signed_int()?];
                while matches!(self.peek(), Some(Tok::Comma)) {
                    self.next();
                    freqs.push(self.signed_int()?);
                }
                self.expect(Tok::RBracket, "']' closing the mode")?;
                if freqs.len() != self.chart.dim() {
                    return Err(Error::ChartMismatch(format!(
                        "mode has {} frequencies on {}",
                        freqs.len(),
                        self.chart
                    )));
                }
                CoeffFn::mode(self.chart, &freqs)
            }
            Some(Tok::LParen) => {
                let sum = self.coeff_sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(sum)
            }
            _ => Err(syntax_error(line, col, "expected a coefficient factor")),
        }
    }

    /// A `*`-product of coefficient factors (juxtaposition allowed).
    fn coeff_product(&mut self) -> Result<CoeffFn> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                // a star may join the wedge part instead of another factor
                if matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Dx(_))) {
                    break;
                }
                self.next();
                acc = acc.mul(&self.factor()?)?;
            } else if self.starts_factor() {
                acc = acc.mul(&self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// `['-'] product (('+'|'-') product)*` inside parentheses.
    fn coeff_sum(&mut self) -> Result<CoeffFn> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            negate = true;
        }
        let mut acc = self.coeff_product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.coeff_product()?)?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.coeff_product()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// `dx<i> ('^' dx<j>)*`.
    fn wedge_chain(&mut self) -> Result<Vec<u8>> {
        let mut axes = Vec::new();
        loop {
            let (line, col) = self.here();
            match self.next().map(|t| t.tok) {
                Some(Tok::Dx(a)) => {
                    if a as usize > self.chart.dim() || a == 0 {
                        return Err(Error::ChartMismatch(format!(
                            "unknown axis dx{a} on {}",
                            self.chart
                        )));
                    }
                    axes.push(a);
                }
                _ => return Err(syntax_error(line, col, "expected dx<j>")),
            }
            if matches!(self.peek(), Some(Tok::Caret)) {
                self.next();
                continue;
            }
            break;
        }
        Ok(axes)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let (line, col) = self.here();
        let mut coeff = CoeffFn::one(self.chart);
        let mut saw_coeff = false;
        if self.starts_factor() {
            coeff = self.coeff_product()?;
            saw_coeff = true;
        }
        let mut wedge = Vec::new();
        if matches!(self.peek(), Some(Tok::Star))
            && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Dx(_)))
        {
            self.next();
        }
        if matches!(self.peek(), Some(Tok::Dx(_))) {
            wedge = self.wedge_chain()?;
        } else if !saw_coeff {
            return self.fail("expected a term");
        }
        let mut slot = None;
        if matches!(self.peek(), Some(Tok::At)) {
            self.next();
            let (l2, c2) = self.here();
            match self.next().map(|t| t.tok) {
                Some(Tok::Slot(s)) => {
                    if s as usize > self.chart.dim() || s == 0 {
                        return Err(Error::ChartMismatch(format!(
                            "unknown vector slot e{s} on {}",
                            self.chart
                        )));
                    }
                    slot = Some(s);
                }
                _ => return Err(syntax_error(l2, c2, "expected e<j> after '@'")),
            }
        }
        Ok(RawTerm {
            coeff,
            wedge,
            slot,
            line,
            col,
        })
    }

    fn form(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.next();
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = t.coeff.neg();
            }
            terms.push(t);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.next();
                    negate = true;
                }
                None => break,
                _ => return self.fail("expected '+', '-' or end of input"),
            }
        }
        Ok(terms)
    }
}

/// Parse a scalar- or vector-valued form in the canonical syntax.
pub fn parse_form(src: &str, chart: ChartSpec) -> Result<FormValue> {
    let mut parser = Parser::new(src, chart)?;
    let terms = parser.form()?;
    if parser.pos != parser.toks.len() {
        return parser.fail("trailing input");
    }

    let with_slots = terms.iter().filter(|t| t.slot.is_some()).count();
    if with_slots != 0 && with_slots != terms.len() {
        return Err(Error::MixedKind);
    }
    let degree = terms.first().map(|t| t.wedge.len()).unwrap_or(0);
    for t in &terms {
        if t.wedge.len() != degree {
            return Err(Error::DegreeMismatch(format!(
                "term at {}:{} has degree {}, expected {}",
                t.line,
                t.col,
                t.wedge.len(),
                degree
            )));
        }
    }

    if with_slots == 0 {
        let mut out = ScalarForm::zero(chart, degree);
        for t in terms {
            accumulate(&mut out, &t)?;
        }
        Ok(FormValue::Scalar(out))
    } else {
        let mut comps = vec![ScalarForm::zero(chart, degree); chart.dim()];
        for t in terms {
            let slot = t.slot.expect("checked") as usize;
            accumulate(&mut comps[slot - 1], &t)?;
        }
        Ok(FormValue::Vector(VectorForm::from_components(chart, comps)?))
    }
}

fn accumulate(into: &mut ScalarForm, t: &RawTerm) -> Result<()> {
    match MultiIndex::from_unsorted(&t.wedge) {
        None => Ok(()), // repeated axis: the term is zero
        Some((idx, sign)) => {
            let coeff = if sign < 0 { t.coeff.neg() } else { t.coeff.clone() };
            into.add_term(idx, coeff)
        }
    }
}

/// Parse a diffeomorphism: `map:(..); inv:(..)` or `matrix:[[..]]`.
pub fn parse_diffeo(src: &str, chart: ChartSpec) -> Result<Diffeo> {
    let mut parser = Parser::new(src, chart)?;
    let (line, col) = parser.here();
    match parser.next().map(|t| t.tok) {
        Some(Tok::Word(w)) if w == "map" => {
            parser.expect(Tok::Colon, "':' after map")?;
            let forward = component_list(&mut parser)?;
            parser.expect(Tok::Semi, "';' between map and inv")?;
            let (l2, c2) = parser.here();
            match parser.next().map(|t| t.tok) {
                Some(Tok::Word(w)) if w == "inv" => {}
                _ => return Err(syntax_error(l2, c2, "expected 'inv'")),
            }
            parser.expect(Tok::Colon, "':' after inv")?;
            let inverse = component_list(&mut parser)?;
            if parser.pos != parser.toks.len() {
                return parser.fail("trailing input");
            }
            Diffeo::poly(chart, forward, inverse)
        }
        Some(Tok::Word(w)) if w == "matrix" => {
            parser.expect(Tok::Colon, "':' after matrix")?;
            parser.expect(Tok::LBracket, "'['")?;
            let mut rows = Vec::new();
            loop {
                parser.expect(Tok::LBracket, "'[' starting a row")?;
                let mut row = vec![i64::from(parser.signed_int()?)];
                while matches!(parser.peek(), Some(Tok::Comma)) {
                    parser.next();
                    row.push(i64::from(parser.signed_int()?));
                }
                parser.expect(Tok::RBracket, "']' closing a row")?;
                rows.push(row);
                if matches!(parser.peek(), Some(Tok::Comma)) {
                    parser.next();
                    continue;
                }
                break;
            }
            parser.expect(Tok::RBracket, "']' closing the matrix")?;
            if parser.pos != parser.toks.len() {
                return parser.fail("trailing input");
            }
            Diffeo::fourier(chart, rows)
        }
        _ => Err(syntax_error(line, col, "expected 'map:' or 'matrix:'")),
    }
}

fn component_list(parser: &mut Parser) -> Result<Vec<CoeffFn>> {
    parser.expect(Tok::LParen, "'('")?;
    let mut comps = vec![parser.coeff_sum()?];
    while matches!(parser.peek(), Some(Tok::Comma)) {
        parser.next();
        comps.push(parser.coeff_sum()?);
    }
    parser.expect(Tok::RParen, "')'")?;
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::VectorForm;

    fn poly2() -> ChartSpec {
        ChartSpec::poly(2).unwrap()
    }

    #[test]
    fn parses_vector_basis_term() {
        let v = parse_form("dx1^dx2 @ e1", poly2()).unwrap();
        let expect = VectorForm::decomposable(
            &ScalarForm::basis(poly2(), &[1, 2]).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(v, FormValue::Vector(expect));
    }

    #[test]
    fn parses_two_term_vector_form() {
        let v = parse_form("3/2*x1^2*x2 dx1 @ e2 + dx2 @ e1", poly2()).unwrap();
        let chart = poly2();
        let coeff = CoeffFn::monomial(chart, &[2, 1])
            .unwrap()
            .scale(&Scalar::from_ratio(3, 2));
        let expect = VectorForm::from_components(
            chart,
            vec![
                ScalarForm::basis(chart, &[2]).unwrap(),
                ScalarForm::basis(chart, &[1])
                    .unwrap()
                    .scale_coeff(&coeff)
                    .unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(v, FormValue::Vector(expect));
    }

    #[test]
    fn parses_fourier_mode_form() {
        let chart = ChartSpec::fourier(2).unwrap();
        let v = parse_form("E[1,-2] dx1", chart).unwrap();
        let expect = ScalarForm::basis(chart, &[1])
            .unwrap()
            .scale_coeff(&CoeffFn::mode(chart, &[1, -2]).unwrap())
            .unwrap();
        assert_eq!(v, FormValue::Scalar(expect));
    }

    #[test]
    fn mixed_kind_rejected() {
        assert_eq!(
            parse_form("dx1 @ e1 + dx2", poly2()).unwrap_err(),
            Error::MixedKind
        );
    }

    #[test]
    fn inhomogeneous_rejected() {
        assert!(matches!(
            parse_form("dx1 + dx1^dx2", poly2()),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_form("dx1 ^", poly2()).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 6, .. }));
    }

    #[test]
    fn unknown_axis_is_chart_mismatch() {
        assert!(matches!(
            parse_form("x3 dx1", poly2()),
            Err(Error::ChartMismatch(_))
        ));
        assert!(matches!(
            parse_form("dx3", poly2()),
            Err(Error::ChartMismatch(_))
        ));
    }

    #[test]
    fn repeated_axis_cancels() {
        let v = parse_form("dx1^dx1", poly2()).unwrap();
        assert!(v.is_zero());
        // reversed axes pick up a sign
        let v = parse_form("dx2^dx1", poly2()).unwrap();
        let expect = ScalarForm::basis(poly2(), &[1, 2]).unwrap().neg();
        assert_eq!(v, FormValue::Scalar(expect));
    }

    #[test]
    fn leading_minus() {
        let v = parse_form("-1 dx1^dx2 @ e1", poly2()).unwrap();
        let expect = VectorForm::decomposable(
            &ScalarForm::basis(poly2(), &[1, 2]).unwrap().neg(),
            1,
        )
        .unwrap();
        assert_eq!(v, FormValue::Vector(expect));
    }

    #[test]
    fn parses_diffeos() {
        let chart = poly2();
        assert!(parse_diffeo("map:(x2,x1); inv:(x2,x1)", chart).is_ok());
        assert!(parse_diffeo("map:(x1, x2+x1^2); inv:(x1, x2-x1^2)", chart).is_ok());
        let t2 = ChartSpec::fourier(2).unwrap();
        assert!(parse_diffeo("matrix:[[1,1],[0,1]]", t2).is_ok());
        assert!(matches!(
            parse_diffeo("matrix:[[2,0],[0,1]]", t2),
            Err(Error::NotUnimodular(_))
        ));
        assert!(matches!(
            parse_diffeo("map:(x2,x1); inv:(x1,x2)", chart),
            Err(Error::NotInverse)
        ));
    }

    #[test]
    fn zero_literal() {
        let v = parse_form("0", poly2()).unwrap();
        assert!(v.is_zero());
    }
}
