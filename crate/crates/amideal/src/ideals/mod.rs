//! Ideal expressions over principal generators and named ideals, their
//! normal forms, and the membership engine.

mod member;
mod normal;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::num::{fmt_rat, Rat};
use crate::relations::RelError;
use crate::seq::{Seq, SeqError};

pub use member::member;
pub use normal::{generator_of, normalize_ideal, NormalForm, Rule};
pub use parse::parse_ideal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("guard could not be settled for {0}")]
    GuardIndeterminate(String),
    #[error("unsupported ideal: {0}")]
    UnsupportedIdeal(String),
    #[error("not principal: {0}")]
    NotPrincipal(String),
    #[error(transparent)]
    Rel(#[from] RelError),
}

impl From<SeqError> for IdealError {
    fn from(e: SeqError) -> Self {
        IdealError::Rel(RelError::Seq(e))
    }
}

/// `M(t) = t^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrliczFn {
    Power(Rat),
}

impl OrliczFn {
    /// `<M(x_n)>` as a recipe.
    pub fn apply(&self, x: &Seq) -> Seq {
        match self {
            OrliczFn::Power(p) => x.pow(p.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum IdealExpr {
    Principal(Seq),
    L1,
    OmegaPrincipal,
    SeOmega,
    Lorentz(Seq),
    Orlicz(OrliczFn, bool),
    Marcinkiewicz(Seq),
    KotheDual(Vec<Seq>),
    StabA,
    StabAInf,
    Am(Box<IdealExpr>),
    PreAm(Box<IdealExpr>),
    Interior(Box<IdealExpr>),
    Closure(Box<IdealExpr>),
    OO(Box<IdealExpr>),
    AmInf(Box<IdealExpr>),
    PreAmInf(Box<IdealExpr>),
    InteriorInf(Box<IdealExpr>),
    ClosureInf(Box<IdealExpr>),
    OOInf(Box<IdealExpr>),
    Se(Box<IdealExpr>),
    Sc(Box<IdealExpr>),
    Pow(Box<IdealExpr>, Rat),
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Cap(Box<IdealExpr>, Box<IdealExpr>),
}

impl IdealExpr {
    pub fn principal(s: Seq) -> IdealExpr {
        IdealExpr::Principal(s)
    }

    fn op_name(&self) -> Option<&'static str> {
        use IdealExpr::*;
        Some(match self {
            Am(_) => "am",
            PreAm(_) => "pam",
            Interior(_) => "int",
            Closure(_) => "cl",
            OO(_) => "oo",
            AmInf(_) => "aminf",
            PreAmInf(_) => "paminf",
            InteriorInf(_) => "intinf",
            ClosureInf(_) => "clinf",
            OOInf(_) => "ooinf",
            Se(_) => "se",
            Sc(_) => "sc",
            _ => return None,
        })
    }

    fn unary_child(&self) -> Option<&IdealExpr> {
        use IdealExpr::*;
        match self {
            Am(e) | PreAm(e) | Interior(e) | Closure(e) | OO(e) | AmInf(e) | PreAmInf(e) | InteriorInf(e)
            | ClosureInf(e) | OOInf(e) | Se(e) | Sc(e) => Some(e),
            _ => None,
        }
    }
}

impl PartialEq for IdealExpr {
    fn eq(&self, o: &IdealExpr) -> bool {
        self.to_string() == o.to_string()
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IdealExpr::*;
        if let (Some(op), Some(e)) = (self.op_name(), self.unary_child()) {
            return write!(f, "{op}({e})");
        }
        match self {
            Principal(s) => write!(f, "principal({s})"),
            L1 => write!(f, "l1"),
            OmegaPrincipal => write!(f, "om"),
            SeOmega => write!(f, "seom"),
            Lorentz(s) => write!(f, "lorentz({s})"),
            Orlicz(OrliczFn::Power(p), small) => {
                write!(f, "orlicz({}{})", fmt_rat(p), if *small { ",small" } else { "" })
            }
            Marcinkiewicz(s) => write!(f, "marc({s})"),
            KotheDual(v) => {
                write!(f, "kdual(")?;
                for (i, s) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
            StabA => write!(f, "sta"),
            StabAInf => write!(f, "stainf"),
            Pow(e, p) => write!(f, "pow({e},{})", fmt_rat(p)),
            Sum(a, b) => write!(f, "sum({a},{b})"),
            Cap(a, b) => write!(f, "cap({a},{b})"),
            _ => unreachable!(),
        }
    }
}
