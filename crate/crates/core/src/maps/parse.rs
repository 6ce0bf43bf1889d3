//! Text format for polynomials, maps and points: variables `x, y, z`,
//! optional parameter `t`, integer or rational coefficients, `^` for
//! powers, `*` optional, parentheses free. Maps are three `:`-separated
//! expressions in brackets; points use the same shape.
//!
//! Rendering is canonical (terms in graded lex order with `x > y > z`,
//! coefficients grouped as polynomials in `t`), and parsing a rendered
//! value reproduces it exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::maps::qpoly::{QPoly, Var};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LPar,
    RPar,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits.parse().expect("digits");
                out.push(Token::Num(n));
            }
            'x' => {
                chars.next();
                out.push(Token::Var(Var::X));
            }
            'y' => {
                chars.next();
                out.push(Token::Var(Var::Y));
            }
            'z' => {
                chars.next();
                out.push(Token::Var(Var::Z));
            }
            't' => {
                chars.next();
                out.push(Token::Var(Var::T));
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LPar);
            }
            ')' => {
                chars.next();
                out.push(Token::RPar);
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut negate = false;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Minus => {
                    negate = !negate;
                    self.next();
                }
                Token::Plus => {
                    self.next();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Token::Minus => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Token::Slash) => {
                    self.next();
                    let f = self.factor()?;
                    let c = f.as_constant().ok_or_else(|| {
                        Error::Parse("division is only defined by nonzero constants".into())
                    })?;
                    if c.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&c.recip());
                }
                // Juxtaposition is multiplication.
                Some(Token::Num(_)) | Some(Token::Var(_)) | Some(Token::LPar) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPoly> {
        let base = match self.next() {
            Some(Token::Num(n)) => QPoly::constant(BigRational::from(n)),
            Some(Token::Var(v)) => QPoly::var(v),
            Some(Token::LPar) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RPar) => inner,
                    _ => return Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            Some(Token::Minus) => {
                let inner = self.factor()?;
                inner.neg()
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if let Some(Token::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Token::Num(n)) => {
                    let e: u16 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parses a polynomial expression in `x, y, z, t`.
pub fn parse_poly(s: &str) -> Result<QPoly> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse("trailing input after expression".into()));
    }
    Ok(value)
}

/// Splits a bracketed triple `[a : b : c]` at top-level colons.
pub fn split_triple(s: &str) -> Result<[&str; 3]> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed triple, got {s:?}")))?;
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?;
            }
            ':' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    match <[&str; 3]>::try_from(parts) {
        Ok(arr) => Ok(arr),
        Err(v) => Err(Error::Parse(format!(
            "expected 3 components, got {}",
            v.len()
        ))),
    }
}

fn render_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_t_monomial(c: &BigRational, e: u16, force_coeff: bool) -> String {
    let coeff = if c.abs().is_one() && (e > 0 || force_coeff) && c.denom().is_one() {
        None
    } else {
        Some(render_rational(&c.abs()))
    };
    let tpart = match e {
        0 => None,
        1 => Some("t".to_string()),
        _ => Some(format!("t^{e}")),
    };
    match (coeff, tpart) {
        (None, Some(t)) => t,
        (Some(c), None) => c,
        (Some(c), Some(t)) => format!("{c}*{t}"),
        (None, None) => "1".to_string(),
    }
}

fn render_mono(e: &[u16; 3]) -> Option<String> {
    let names = ["x", "y", "z"];
    let mut parts = Vec::new();
    for (name, &exp) in names.iter().zip(e.iter()) {
        match exp {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{exp}")),
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// A t-polynomial coefficient attached to one `x,y,z` monomial.
type MonoGroup = ([u16; 3], Vec<(u16, BigRational)>);

/// Canonical rendering; parsing the result reproduces the polynomial.
pub fn render_poly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    // Group by x,y,z monomial; each group is a polynomial in t.
    let mut groups: Vec<MonoGroup> = Vec::new();
    for (e, c) in p.terms() {
        let key = [e[0], e[1], e[2]];
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, list)) => list.push((e[3], c.clone())),
            None => groups.push((key, vec![(e[3], c.clone())])),
        }
    }
    groups.sort_by(|(a, _), (b, _)| {
        let da = a.iter().sum::<u16>();
        let db = b.iter().sum::<u16>();
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    let mut out = String::new();
    for (mono, mut tpoly) in groups {
        tpoly.sort_by(|(ea, _), (eb, _)| eb.cmp(ea));
        let mono_str = render_mono(&mono);
        let (sign, body) = if tpoly.len() == 1 {
            let (e, c) = &tpoly[0];
            let sign = c.is_negative();
            let lead = render_t_monomial(c, *e, mono_str.is_none());
            (sign, lead)
        } else {
            // Multi-term t-coefficient: parenthesized, sign taken from the
            // leading t-power.
            let sign = tpoly[0].1.is_negative();
            let mut inner = String::new();
            for (i, (e, c)) in tpoly.iter().enumerate() {
                let c = if sign { -c.clone() } else { c.clone() };
                if i == 0 {
                    inner.push_str(&render_t_monomial(&c, *e, true));
                } else {
                    inner.push_str(if c.is_negative() { " - " } else { " + " });
                    inner.push_str(&render_t_monomial(&c, *e, true));
                }
            }
            (sign, format!("({inner})"))
        };
        let with_mono = match mono_str {
            Some(m) => {
                if body == "1" {
                    m
                } else {
                    format!("{body}*{m}")
                }
            }
            None => body,
        };
        if out.is_empty() {
            if sign {
                out.push('-');
            }
            out.push_str(&with_mono);
        } else {
            out.push_str(if sign { " - " } else { " + " });
            out.push_str(&with_mono);
        }
    }
    out
}
