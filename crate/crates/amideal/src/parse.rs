//! Text syntax for sequence expressions, shared tokenizing for ideal
//! expressions, and caret diagnostics.

use thiserror::Error;

use crate::num::{parse_rat, Rat};
use crate::seq::{corpus_names, corpus_seq, EnvMode, Seq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: expected {expected}")]
pub struct ParseError {
    /// byte offset into the input
    pub pos: usize,
    pub expected: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, expected: impl Into<String>) -> ParseError {
        ParseError { pos, expected: expected.into() }
    }

    /// Two-line rendering: the input, then a caret under the offending byte.
    pub fn diagnostic(&self, text: &str) -> String {
        format!("{}\n{}^ expected {}", text, " ".repeat(self.pos.min(text.len())), self.expected)
    }
}

pub(crate) struct Cursor<'a> {
    text: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Cursor<'a> {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("'{ch}'")))
        }
    }

    pub fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(ParseError::new(start, "a name"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    pub fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '/' | '-' | '+' | '.')))
            .unwrap_or(self.rest().len());
        let tok = &self.text[start..start + len];
        let r = parse_rat(tok).map_err(|_| ParseError::new(start, "a rational number"))?;
        self.pos += len;
        Ok(r)
    }

    pub fn natural(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        self.text[start..start + len].parse().map(|n| {
            self.pos += len;
            n
        })
        .map_err(|_| ParseError::new(start, "a natural number"))
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(ParseError::new(self.pos, "end of input"));
        }
        Ok(())
    }
}

/// Parses the sequence grammar printed by `Display for Seq`.
pub fn parse_seq(text: &str) -> Result<Seq, ParseError> {
    let mut c = Cursor::new(text);
    let s = seq_expr(&mut c)?;
    c.finish()?;
    Ok(s)
}

fn env_mode(name: &str) -> Option<EnvMode> {
    Some(match name {
        "und" => EnvMode::Und,
        "lnd" => EnvMode::Lnd,
        "uni" => EnvMode::Uni,
        "lni" => EnvMode::Lni,
        _ => return None,
    })
}

pub(crate) fn seq_expr(c: &mut Cursor) -> Result<Seq, ParseError> {
    let (at, name) = c.ident()?;
    let unary = |c: &mut Cursor| -> Result<Seq, ParseError> {
        c.expect('(')?;
        let s = seq_expr(c)?;
        c.expect(')')?;
        Ok(s)
    };
    let binary = |c: &mut Cursor| -> Result<(Seq, Seq), ParseError> {
        c.expect('(')?;
        let a = seq_expr(c)?;
        c.expect(',')?;
        let b = seq_expr(c)?;
        c.expect(')')?;
        Ok((a, b))
    };
    if let Some(mode) = env_mode(name) {
        return Ok(unary(c)?.envelope(mode));
    }
    Ok(match name {
        "am" => unary(c)?.am(),
        "aminf" => unary(c)?.am_inf(),
        "concmaj" => unary(c)?.concave_majorant(),
        "convmin" => unary(c)?.convex_minorant(),
        "diff" => unary(c)?.diff(),
        "d" | "dinv" => {
            c.expect('(')?;
            let p = c.pos;
            let m = c.natural()?;
            if m == 0 {
                return Err(ParseError::new(p, "a positive integer"));
            }
            c.expect(',')?;
            let s = seq_expr(c)?;
            c.expect(')')?;
            if name == "d" {
                s.ampliate(m)
            } else {
                s.contract(m)
            }
        }
        "plus" => binary(c).map(|(a, b)| a.add(&b))?,
        "minus" => binary(c).map(|(a, b)| a.sub(&b))?,
        "times" => binary(c).map(|(a, b)| a.mul(&b))?,
        "div" => binary(c).map(|(a, b)| a.div(&b))?,
        "min" => binary(c).map(|(a, b)| a.min(&b))?,
        "max" => binary(c).map(|(a, b)| a.max(&b))?,
        "pow" => {
            c.expect('(')?;
            let s = seq_expr(c)?;
            c.expect(',')?;
            let p = c.pos;
            let e = c.rational()?;
            if e <= Rat::from_integer(0.into()) {
                return Err(ParseError::new(p, "a positive exponent"));
            }
            c.expect(')')?;
            s.pow(e)
        }
        "scale" => {
            c.expect('(')?;
            let k = c.rational()?;
            c.expect(',')?;
            let s = seq_expr(c)?;
            c.expect(')')?;
            s.scale(k)
        }
        "finite" => {
            c.expect('(')?;
            let mut v = vec![c.rational()?];
            while c.eat(',') {
                v.push(c.rational()?);
            }
            c.expect(')')?;
            Seq::finite(v)
        }
        _ => {
            let Some(&(_, arity)) = corpus_names().iter().find(|(n, _)| *n == name) else {
                return Err(ParseError::new(at, "a sequence name or operator"));
            };
            let mut params = Vec::new();
            if arity > 0 {
                c.expect('(')?;
                params.push(c.rational()?);
                for _ in 1..arity {
                    c.expect(',')?;
                    params.push(c.rational()?);
                }
                c.expect(')')?;
            } else if c.eat('(') {
                c.expect(')')?;
            }
            corpus_seq(name, &params).map_err(|e| ParseError::new(at, format!("valid parameters ({e})")))?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for t in [
            "omega",
            "am(e1)",
            "convmin(div(ex38,omega))",
            "d(2,pow(zeta(2),1/2))",
            "plus(ex24split_a,ex24split_b)",
            "scale(3/4,uni(ex315))",
            "finite(1,1/2,0)",
            "const(5)",
        ] {
            assert_eq!(parse_seq(t).unwrap().to_string(), t);
        }
        assert_eq!(parse_seq(" min( omega , omega ) ").unwrap().to_string(), "min(omega,omega)");
    }

    #[test]
    fn errors_point_at_the_problem() {
        let e = parse_seq("am(omegga)").unwrap_err();
        assert_eq!(e.pos, 3);
        assert_eq!(e.diagnostic("am(omegga)").lines().nth(1).unwrap(), "   ^ expected a sequence name or operator");
        assert_eq!(parse_seq("am(omega").unwrap_err().pos, 8);
        assert_eq!(parse_seq("omega x").unwrap_err().pos, 6);
        assert!(parse_seq("zeta(0)").is_err());
        assert!(parse_seq("d(0,omega)").is_err());
    }
}
