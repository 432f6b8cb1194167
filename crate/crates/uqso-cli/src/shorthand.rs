//! Shorthand element syntax.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | atom
//! atom  := rational | 'x' i | 'u' k m | 'phi' k m '{' S '}' | 'g' i | 'f' i
//!        | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! A `-` glued to the last index of `x`, `u` or `phi` (no space before it)
//! selects the negative generator: `x 1-`, `u 1 3-`, `phi 1 3 {2}-`. A binary
//! minus needs a space on its left.

use std::collections::BTreeSet;

use uqso::freealg::{bracket, multiply, Element, GroupElement, Sign};
use uqso::generators::Generators;
use uqso::params::{fold, parse_scalar, ParamSpec};
use uqso::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Word(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    /// No whitespace between this token and the previous one.
    glued: bool,
    at: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut glued = false;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            glued = false;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            Tok::Num(chars[start..i].iter().map(|p| p.1).collect())
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                i += 1;
            }
            Tok::Word(chars[start..i].iter().map(|p| p.1).collect())
        } else if "+-*/[](){},".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Parse(format!("unexpected {c:?} at offset {at}")));
        };
        out.push(Token { tok, glued, at });
        glued = true;
    }
    Ok(out)
}

pub struct Parser<'a> {
    spec: &'a ParamSpec,
    gens: &'a Generators,
    toks: Vec<Token>,
    pos: usize,
    src: &'a str,
}

/// Parses and evaluates a shorthand expression.
pub fn parse(spec: &ParamSpec, gens: &Generators, src: &str) -> Result<Element> {
    let mut p = Parser { spec, gens, toks: lex(src)?, pos: 0, src };
    let e = p.expr()?;
    if let Some(t) = p.toks.get(p.pos) {
        return Err(p.error_at(t.at, "trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn n(&self) -> usize {
        self.spec.n
    }

    fn error_at(&self, at: usize, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {at} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error_at(self.offset(), &format!("expected {c:?}")))
        }
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.at)
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v = s.parse().map_err(|_| self.error_at(self.offset(), "index too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error_at(self.offset(), "expected an index")),
        }
    }

    /// A glued `-` after the last index.
    fn sign(&mut self) -> Sign {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Sym('-'), glued: true, .. }) => {
                self.pos += 1;
                Sign::Negative
            }
            _ => Sign::Positive,
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            acc = multiply(self.spec, &acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Element> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Element> {
        let n = self.n();
        let top = 2 * n as i64;
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                let text = if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(b)) => {
                            self.pos += 1;
                            format!("{a}/{b}")
                        }
                        _ => return Err(self.error_at(self.offset(), "expected a denominator")),
                    }
                } else {
                    a
                };
                Ok(Element::scalar(n, parse_scalar(&text)?))
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                bracket(self.spec, &a, &b)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Word(w)) => {
                self.pos += 1;
                match w.as_str() {
                    "x" => {
                        let i = self.int()?;
                        if !(1..=top).contains(&i) {
                            return Err(Error::Index(format!("x_{i} needs 1 ≤ i ≤ {top}")));
                        }
                        Ok(Element::word(n, self.sign(), &[fold(n, i)]))
                    }
                    "u" => {
                        let (k, m) = (self.int()?, self.int()?);
                        let sign = self.sign();
                        self.gens.u(k, m, sign)
                    }
                    "phi" => {
                        let (k, m) = (self.int()?, self.int()?);
                        let set = self.set()?;
                        let sign = self.sign();
                        self.gens.phi(k, m, &set, sign)
                    }
                    "g" | "f" => {
                        let i = self.int()?;
                        if !(1..=n as i64).contains(&i) {
                            return Err(Error::Index(format!("{w}_{i} needs 1 ≤ i ≤ {n}")));
                        }
                        let i = i as usize;
                        Ok(Element::group(if w == "g" { GroupElement::g(n, i) } else { GroupElement::f(n, i) }))
                    }
                    _ => Err(self.error_at(at, &format!("unknown name {w:?}"))),
                }
            }
            _ => Err(self.error_at(at, "expected an operand")),
        }
    }

    fn set(&mut self) -> Result<BTreeSet<i64>> {
        self.expect('{')?;
        let mut out = BTreeSet::new();
        while !self.eat('}') {
            out.insert(self.int()?);
            self.eat(',');
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use uqso::params::{frac, make_spec};

    fn spec() -> ParamSpec {
        make_spec(2, frac(2, 1), &Default::default(), Some(1)).unwrap()
    }

    fn ev(src: &str) -> Result<Element> {
        let s = spec();
        parse(&s, &Generators::new(&s), src)
    }

    #[test]
    fn letters_and_ticks() {
        assert_eq!(ev("x 1").unwrap(), Element::x(2, 1));
        assert_eq!(ev("x1-").unwrap(), Element::xm(2, 1));
        // x_4 is x_1 under ψ
        assert_eq!(ev("x 4").unwrap(), Element::x(2, 1));
        let d = ev("x 1 - x 2").unwrap();
        assert_eq!(d, Element::x(2, 1).sub(&Element::x(2, 2)));
    }

    #[test]
    fn brackets_match_library() {
        let s = spec();
        let g = Generators::new(&s);
        assert_eq!(ev("[x 1, x 2]").unwrap(), g.u(1, 2, Sign::Positive).unwrap());
        assert_eq!(ev("u 1 2-").unwrap(), g.u(1, 2, Sign::Negative).unwrap());
        let set: BTreeSet<i64> = [2].into_iter().collect();
        assert_eq!(ev("phi 1 3 {2}").unwrap(), g.phi(1, 3, &set, Sign::Positive).unwrap());
    }

    #[test]
    fn scalars_and_products() {
        let e = ev("1/2 * x 1 * x 2").unwrap();
        let want = multiply(&spec(), &Element::x(2, 1), &Element::x(2, 2)).scale(&frac(1, 2));
        assert_eq!(e, want);
        assert_eq!(ev("-(3)").unwrap(), Element::scalar(2, frac(-3, 1)));
        assert!(ev("g 1 * f 2").is_ok());
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(ev("x 5"), Err(Error::Index(_))));
        assert!(matches!(ev("y 1"), Err(Error::Parse(_))));
        assert!(matches!(ev("[x 1 x 2]"), Err(Error::Parse(_))));
        assert!(matches!(ev("x 1 x 2"), Err(Error::Parse(_))));
        assert!(matches!(ev("x 1 $"), Err(Error::Parse(_))));
    }
}
