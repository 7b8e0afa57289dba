//! Recursive-descent parser for the expression language.
//!
//! ```text
//! class    := term ('+' term)*
//! term     := factor ('*' factor)*
//! factor   := 'e' '[' int (',' int)* ']' | 'Q' '^' int '(' class ')'
//!           | 's' '^' int '(' class ')' | '(' class ')' | '1' | '0'
//! steenrod := sqterm ('+' sqterm)*        sqterm := ('Sq' '^' int)+
//! wpoly    := wterm ('+' wterm)*          wterm  := wfactor ('*' wfactor)*
//! wfactor  := 'w' int ('^' int)? | '1'
//! ```
//! Whitespace is ignored between tokens. `w` may carry a combining macron.

use std::fmt;

use crate::class::GF2Class;
use crate::error::Error as AlgebraError;
use crate::mo::{Context, EMonomial};
use crate::qmo::{homology_suspend, q_apply, q_product, QClass, QMonomial};
use crate::sq::{SqElement, SqMonomial, WMonomial};

/// A syntax error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parsed homology expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    E(Vec<u32>),
    Q(u32, Box<Expr>),
    Susp(u32, Box<Expr>),
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
    Unit,
    Zero,
}

impl Expr {
    /// Lengths of every `e[...]` literal, i.e. the `k` each one implies.
    pub fn literal_ks(&self, out: &mut Vec<usize>) {
        match self {
            Expr::E(v) => out.push(v.len()),
            Expr::Q(_, e) | Expr::Susp(_, e) => e.literal_ks(out),
            Expr::Product(es) | Expr::Sum(es) => es.iter().for_each(|e| e.literal_ks(out)),
            Expr::Unit | Expr::Zero => {}
        }
    }

    /// The common `k` of all literals; errors when literals disagree.
    pub fn infer_k(&self) -> Result<Option<usize>, String> {
        let mut ks = Vec::new();
        self.literal_ks(&mut ks);
        match ks.split_first() {
            None => Ok(None),
            Some((&k, rest)) => match rest.iter().find(|&&j| j != k) {
                Some(&j) => Err(format!("inconsistent k across literals: {k} and {j}")),
                None => Ok(Some(k)),
            },
        }
    }

    /// Evaluate in `H_*QMO(k)`.
    pub fn eval(&self) -> Result<QClass, AlgebraError> {
        Ok(match self {
            Expr::E(v) => {
                let m = EMonomial::new(v.clone());
                if !m.is_valid_in(Context::MO) {
                    return Err(AlgebraError::ContextMismatch { monomial: m.to_string(), context: Context::MO.name() });
                }
                QClass::from_term(QMonomial::base(m))
            }
            Expr::Q(i, e) => q_apply(*i, &e.eval()?)?,
            Expr::Susp(s, e) => homology_suspend(&e.eval()?, *s)?,
            Expr::Product(es) => {
                let mut acc = QClass::from_term(QMonomial::unit());
                for e in es {
                    acc = q_product(&acc, &e.eval()?);
                }
                acc
            }
            Expr::Sum(es) => {
                let mut acc = QClass::zero();
                for e in es {
                    acc += e.eval()?;
                }
                acc
            }
            Expr::Unit => QClass::from_term(QMonomial::unit()),
            Expr::Zero => QClass::zero(),
        })
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("{c:?}"));
            self.err(format!("expected {tok:?}, found {found}"))
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return self.err("expected an integer");
        }
        match digits.parse() {
            Ok(n) => {
                self.pos += digits.len();
                Ok(n)
            }
            Err(_) => self.err("integer out of range"),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected {c:?}")),
        }
    }

    fn class(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat("*") {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn op_arg(&mut self) -> Result<(u32, Expr), ParseError> {
        self.expect("^")?;
        let n = self.int()?;
        self.expect("(")?;
        let inner = self.class()?;
        self.expect(")")?;
        Ok((n, inner))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('e') => {
                self.pos += 1;
                self.expect("[")?;
                let mut idx = vec![self.int()?];
                loop {
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            idx.push(self.int()?);
                        }
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Expr::E(idx));
                        }
                        _ => return self.err("expected ',' or ']'"),
                    }
                }
            }
            Some('Q') => {
                self.pos += 1;
                let (n, e) = self.op_arg()?;
                Ok(Expr::Q(n, Box::new(e)))
            }
            Some('s') => {
                self.pos += 1;
                let (n, e) = self.op_arg()?;
                Ok(Expr::Susp(n, Box::new(e)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.class()?;
                self.expect(")")?;
                Ok(e)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Expr::Unit)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Expr::Zero)
            }
            Some(c) => self.err(format!("expected 'e[', 'Q^', 's^', '(' or a unit, found {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn steenrod(&mut self) -> Result<SqElement, ParseError> {
        let mut out = SqElement::zero();
        loop {
            let mut exps = Vec::new();
            while self.eat("Sq") {
                self.expect("^")?;
                exps.push(self.int()?);
            }
            if exps.is_empty() {
                return self.err("expected 'Sq^'");
            }
            out.toggle(SqMonomial::new(exps));
            if !self.eat("+") {
                return Ok(out);
            }
        }
    }

    fn wfactor(&mut self) -> Result<Vec<u32>, ParseError> {
        if self.eat("1") {
            return Ok(Vec::new());
        }
        self.expect("w")?;
        self.eat("\u{304}");
        let i = self.int()?;
        let p = if self.eat("^") { self.int()? } else { 1 };
        Ok(vec![i; p as usize])
    }

    fn wpoly(&mut self) -> Result<GF2Class<WMonomial>, ParseError> {
        let mut out = GF2Class::zero();
        loop {
            let mut idx = self.wfactor()?;
            while self.eat("*") {
                idx.extend(self.wfactor()?);
            }
            out.toggle(WMonomial::new(idx));
            if !self.eat("+") {
                return Ok(out);
            }
        }
    }
}

/// Parse a homology expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src);
    let e = p.class()?;
    p.finish()?;
    Ok(e)
}

/// Parse a sum of Steenrod composites such as `Sq^2 Sq^4 + Sq^6`.
pub fn parse_steenrod(src: &str) -> Result<SqElement, ParseError> {
    let mut p = Parser::new(src);
    let e = p.steenrod()?;
    p.finish()?;
    Ok(e)
}

/// Parse a polynomial in Stiefel-Whitney classes such as `w1^2*w3 + w4`.
pub fn parse_wpoly(src: &str) -> Result<GF2Class<WMonomial>, ParseError> {
    let mut p = Parser::new(src);
    let e = p.wpoly()?;
    p.finish()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let e = parse("e[1,1,1]*e[1,2,2]").unwrap();
        assert_eq!(e, Expr::Product(vec![Expr::E(vec![1, 1, 1]), Expr::E(vec![1, 2, 2])]));
        let q = parse("Q^5(e[1,1,1])").unwrap();
        assert_eq!(q, Expr::Q(5, Box::new(Expr::E(vec![1, 1, 1]))));
        assert_eq!(q.eval().unwrap().to_string(), "Q^5(e[1,1,1])");
        assert_eq!(parse(" ( e[ 1 , 2 ] ) ").unwrap(), Expr::E(vec![1, 2]));
    }

    #[test]
    fn syntax_errors_report_offsets() {
        let err = parse("e[1,2").unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(err.to_string(), "syntax error at offset 5: expected ',' or ']'");
        assert_eq!(parse("Q^(e[1])").unwrap_err().offset, 2);
        assert_eq!(parse("e[1] e[2]").unwrap_err().offset, 5);
    }

    #[test]
    fn inconsistent_k() {
        assert!(parse("e[1,1]*e[1]").unwrap().infer_k().is_err());
        assert_eq!(parse("e[1,1]+Q^3(e[1,1])").unwrap().infer_k(), Ok(Some(2)));
    }

    #[test]
    fn steenrod_and_w() {
        let s = parse_steenrod("Sq^2 Sq^4").unwrap();
        assert_eq!(s.to_string(), "Sq^2 Sq^4");
        assert_eq!(parse_wpoly("w1^2*w3 + w2").unwrap().to_string(), "w1^2*w3 + w2");
        assert_eq!(parse_wpoly("w\u{304}2*w\u{304}7").unwrap().to_string(), "w2*w7");
        assert!(parse_steenrod("Sq 2").is_err());
    }

    #[test]
    fn suspension_round_trip() {
        let c = parse("s^2(Q^5(e[1,1,1]))").unwrap().eval().unwrap();
        assert_eq!(c.to_string(), "s^2(e[1,1,1])*s^2(e[1,1,1])");
        assert_eq!(parse(&c.to_string()).unwrap().eval().unwrap(), c);
    }
}
