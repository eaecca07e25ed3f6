use num_traits::Zero;

use super::{IdealExpr, OrliczFn};
use crate::num::Rat;
use crate::parse::{seq_expr, Cursor, ParseError};

/// Parses `principal(ex220)`, `pow(l1,1/2)`, `cap(om,se(principal(omega)))`, ...
pub fn parse_ideal(text: &str) -> Result<IdealExpr, ParseError> {
    let mut c = Cursor::new(text);
    let e = ideal(&mut c)?;
    c.finish()?;
    Ok(e)
}

fn bare(c: &mut Cursor) -> Result<(), ParseError> {
    if c.eat('(') {
        c.expect(')')?;
    }
    Ok(())
}

fn sub(c: &mut Cursor) -> Result<Box<IdealExpr>, ParseError> {
    c.expect('(')?;
    let e = ideal(c)?;
    c.expect(')')?;
    Ok(Box::new(e))
}

fn pair(c: &mut Cursor) -> Result<(Box<IdealExpr>, Box<IdealExpr>), ParseError> {
    c.expect('(')?;
    let a = ideal(c)?;
    c.expect(',')?;
    let b = ideal(c)?;
    c.expect(')')?;
    Ok((Box::new(a), Box::new(b)))
}

fn one_seq(c: &mut Cursor) -> Result<crate::seq::Seq, ParseError> {
    c.expect('(')?;
    let s = seq_expr(c)?;
    c.expect(')')?;
    Ok(s)
}

fn ideal(c: &mut Cursor) -> Result<IdealExpr, ParseError> {
    use IdealExpr::*;
    let (at, name) = c.ident()?;
    Ok(match name {
        "principal" => Principal(one_seq(c)?),
        "l1" => {
            bare(c)?;
            L1
        }
        "om" => {
            bare(c)?;
            OmegaPrincipal
        }
        "seom" => {
            bare(c)?;
            SeOmega
        }
        "sta" => {
            bare(c)?;
            StabA
        }
        "stainf" => {
            bare(c)?;
            StabAInf
        }
        "lorentz" => Lorentz(one_seq(c)?),
        "marc" => Marcinkiewicz(one_seq(c)?),
        "kdual" => {
            c.expect('(')?;
            let mut v = vec![seq_expr(c)?];
            while c.eat(',') {
                v.push(seq_expr(c)?);
            }
            c.expect(')')?;
            KotheDual(v)
        }
        "orlicz" => {
            c.expect('(')?;
            let p_at = c.pos;
            let p = c.rational()?;
            if p <= Rat::zero() {
                return Err(ParseError::new(p_at, "a positive exponent"));
            }
            let small = if c.eat(',') {
                let (w, word) = c.ident()?;
                if word != "small" {
                    return Err(ParseError::new(w, "'small'"));
                }
                true
            } else {
                false
            };
            c.expect(')')?;
            Orlicz(OrliczFn::Power(p), small)
        }
        "am" => Am(sub(c)?),
        "pam" => PreAm(sub(c)?),
        "int" => Interior(sub(c)?),
        "cl" => Closure(sub(c)?),
        "oo" => OO(sub(c)?),
        "aminf" => AmInf(sub(c)?),
        "paminf" => PreAmInf(sub(c)?),
        "intinf" => InteriorInf(sub(c)?),
        "clinf" => ClosureInf(sub(c)?),
        "ooinf" => OOInf(sub(c)?),
        "se" => Se(sub(c)?),
        "sc" => Sc(sub(c)?),
        "pow" => {
            c.expect('(')?;
            let e = ideal(c)?;
            c.expect(',')?;
            let p_at = c.pos;
            let p = c.rational()?;
            if p <= Rat::zero() {
                return Err(ParseError::new(p_at, "a positive exponent"));
            }
            c.expect(')')?;
            Pow(Box::new(e), p)
        }
        "sum" => {
            let (a, b) = pair(c)?;
            Sum(a, b)
        }
        "cap" => {
            let (a, b) = pair(c)?;
            Cap(a, b)
        }
        _ => return Err(ParseError::new(at, "an ideal name or operator")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn grammar_examples() {
        let e = parse_ideal("cl(principal(ex220))").unwrap();
        assert!(matches!(&e, IdealExpr::Closure(b) if matches!(**b, IdealExpr::Principal(_))));
        let e = parse_ideal("pow(l1, 1/2)").unwrap();
        assert!(matches!(&e, IdealExpr::Pow(b, p) if matches!(**b, IdealExpr::L1) && *p == rat(1, 2)));
        let e = parse_ideal("cap(principal(omega), se(principal(omega)))").unwrap();
        assert!(matches!(e, IdealExpr::Cap(..)));
    }

    #[test]
    fn printer_round_trips() {
        for t in [
            "cl(principal(ex220))",
            "pow(l1,1/2)",
            "cap(principal(omega),se(principal(omega)))",
            "kdual(expo(3))",
            "kdual(expo(2),omega)",
            "orlicz(2,small)",
            "orlicz(1/2)",
            "sum(principal(ex24split_a),principal(ex24split_b))",
            "ooinf(intinf(clinf(paminf(aminf(sc(principal(zeta(2))))))))",
            "lorentz(log(1))",
            "marc(omega)",
            "sta",
            "stainf",
            "seom",
            "om",
        ] {
            assert_eq!(parse_ideal(t).unwrap().to_string(), t);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(parse_ideal("cl(principle(omega))").unwrap_err().pos, 3);
        assert_eq!(parse_ideal("pow(l1,0)").unwrap_err().pos, 7);
        assert!(parse_ideal("orlicz(2,big)").is_err());
        assert!(parse_ideal("l1 l1").is_err());
    }
}
