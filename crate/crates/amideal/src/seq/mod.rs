//! Lazily evaluated sequences of exact rationals (or certified intervals),
//! finite prefixes, and block index sequences.
//!
//! A [`Seq`] is an immutable recipe tree. Leaves are the named corpus
//! sequences; inner nodes are transforms and pointwise operations. Values are
//! computed on demand and cached per node.

mod named;
mod split;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::num::{fmt_rat, from_usize, int, ln_interval, pow_interval, pow_rat, recip_usize, Interval, Rat};

pub use named::{corpus_names, corpus_seq, ex24min_partial_sum_through_block};
pub use split::{split_phases, SplitPhase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("declared monotonicity contradicted at index {0}")]
    MonotonicityViolated(usize),
    #[error("no tail oracle for {0}")]
    NoTailOracle(String),
    #[error("unknown sequence name {0:?}")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{0} is not summable")]
    NotSummable(String),
    #[error("value at index {0} is not an exact rational")]
    Inexact(usize),
    #[error("division by zero at index {0}")]
    DivisionByZero(usize),
    #[error("{0} is unbounded above")]
    Unbounded(String),
    #[error("envelope of {0} not certified up to index {1}")]
    Uncertified(String, usize),
    #[error("index {0} outside the representable range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Summable {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Traits {
    pub nonincreasing: bool,
    pub nondecreasing: bool,
    pub nonnegative: bool,
    pub null: bool,
    pub summable: Summable,
}

impl Traits {
    const fn decreasing_null(summable: Summable) -> Self {
        Traits { nonincreasing: true, nondecreasing: false, nonnegative: true, null: true, summable }
    }

    const fn unknown() -> Self {
        Traits { nonincreasing: false, nondecreasing: false, nonnegative: false, null: false, summable: Summable::Unknown }
    }
}

/// Which monotone envelope to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvMode {
    /// running max `max_{i<=n}`
    Und,
    /// tail inf `inf_{i>=n}`
    Lnd,
    /// tail sup `sup_{i>=n}`
    Uni,
    /// running min `min_{i<=n}`
    Lni,
}

impl EnvMode {
    pub fn name(self) -> &'static str {
        match self {
            EnvMode::Und => "und",
            EnvMode::Lnd => "lnd",
            EnvMode::Uni => "uni",
            EnvMode::Lni => "lni",
        }
    }
}

/// Extended upper bound: finite enclosure or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ext {
    Fin(Interval),
    Inf,
}

impl Ext {
    fn point(r: Rat) -> Ext {
        Ext::Fin(Interval::point(r))
    }

    pub fn max(&self, o: &Ext) -> Ext {
        match (self, o) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a.max(b)),
            _ => Ext::Inf,
        }
    }

    fn scale(&self, c: &Rat) -> Ext {
        match self {
            Ext::Fin(a) => Ext::Fin(a.scale(c)),
            Ext::Inf if c.is_zero() => Ext::point(Rat::zero()),
            Ext::Inf => Ext::Inf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

pub(crate) enum Node {
    Omega,
    Const(Rat),
    Zeta(u32),
    Geometric(Rat),
    Expo(Rat),
    OmLog(u32),
    Log(u32),
    Rsqrt,
    Finite(Vec<Rat>),
    Ex220,
    Ex38,
    Ex315,
    Ex24Min(Side),
    Ex24Split(Side),
    Ex415Eta,
    Am(Seq),
    AmInf(Seq),
    Ampl(usize, Seq),
    Contr(usize, Seq),
    Env(EnvMode, Seq),
    ConcMaj(Seq),
    ConvMin(Seq),
    Add(Seq, Seq),
    Sub(Seq, Seq),
    Mul(Seq, Seq),
    Div(Seq, Seq),
    Min(Seq, Seq),
    Max(Seq, Seq),
    Pow(Seq, Rat),
    Scale(Rat, Seq),
    Diff(Seq),
}

struct Inner {
    node: Node,
    traits: Traits,
    cache: Mutex<Vec<Interval>>,
    // values of am(self), shared by every am node built on this sequence
    am_cache: Mutex<Vec<Interval>>,
}

/// Immutable, cheaply clonable sequence recipe indexed from 1.
#[derive(Clone)]
pub struct Seq(Arc<Inner>);

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq({self})")
    }
}

impl PartialEq for Seq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.to_string() == other.to_string()
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn nonneg_both(a: &Seq, b: &Seq) -> bool {
    a.traits().nonnegative && b.traits().nonnegative
}

impl Seq {
    fn make(node: Node, traits: Traits) -> Seq {
        Seq(Arc::new(Inner { node, traits, cache: Mutex::new(Vec::new()), am_cache: Mutex::new(Vec::new()) }))
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn traits(&self) -> &Traits {
        &self.0.traits
    }

    pub fn is_omega(&self) -> bool {
        matches!(self.node(), Node::Omega)
    }

    // ---- leaves ----

    pub fn omega() -> Seq {
        Seq::make(Node::Omega, Traits::decreasing_null(Summable::No))
    }

    pub fn constant(c: Rat) -> Seq {
        let zero = c.is_zero();
        let t = Traits {
            nonincreasing: true,
            nondecreasing: true,
            nonnegative: !c.is_negative(),
            null: zero,
            summable: if zero { Summable::Yes } else { Summable::No },
        };
        Seq::make(Node::Const(c), t)
    }

    pub fn zero() -> Seq {
        Seq::constant(Rat::zero())
    }

    pub fn zeta(p: u32) -> Seq {
        assert!(p >= 1);
        let s = if p >= 2 { Summable::Yes } else { Summable::No };
        Seq::make(Node::Zeta(p), Traits::decreasing_null(s))
    }

    pub fn geometric(r: Rat) -> Seq {
        assert!(r.is_positive() && r < Rat::one());
        Seq::make(Node::Geometric(r), Traits::decreasing_null(Summable::Yes))
    }

    /// `<b^n>` for `b >= 1`.
    pub fn expo(b: Rat) -> Seq {
        assert!(b >= Rat::one());
        let t = Traits { nonincreasing: b.is_one(), nondecreasing: true, nonnegative: true, null: false, summable: Summable::No };
        Seq::make(Node::Expo(b), t)
    }

    pub fn omlog(m: u32) -> Seq {
        let t = Traits { nonincreasing: m <= 1, nondecreasing: false, nonnegative: true, null: true, summable: Summable::No };
        Seq::make(Node::OmLog(m), t)
    }

    /// `<log^k(n+1)>`.
    pub fn log_pow(k: u32) -> Seq {
        let t = Traits { nonincreasing: k == 0, nondecreasing: true, nonnegative: true, null: false, summable: Summable::No };
        Seq::make(Node::Log(k), t)
    }

    /// `<1/ceil(sqrt n)>`.
    pub fn rsqrt() -> Seq {
        Seq::make(Node::Rsqrt, Traits::decreasing_null(Summable::No))
    }

    /// Finite support: the given values followed by zeros.
    pub fn finite(v: Vec<Rat>) -> Seq {
        let nonneg = v.iter().all(|x| !x.is_negative());
        let noninc = nonneg && v.windows(2).all(|w| w[0] >= w[1]);
        let t = Traits { nonincreasing: noninc, nondecreasing: false, nonnegative: nonneg, null: true, summable: Summable::Yes };
        Seq::make(Node::Finite(v), t)
    }

    pub fn e1() -> Seq {
        Seq::finite(vec![Rat::one()])
    }

    pub(crate) fn leaf(node: Node, traits: Traits) -> Seq {
        Seq::make(node, traits)
    }

    // ---- transforms ----

    pub fn am(&self) -> Seq {
        let t = self.traits();
        let mono = t.nonincreasing && t.nonnegative;
        let zero = matches!(self.node(), Node::Const(c) if c.is_zero());
        let traits = Traits {
            nonincreasing: mono,
            nondecreasing: false,
            nonnegative: t.nonnegative,
            null: mono && t.null,
            summable: if zero { Summable::Yes } else if t.nonnegative { Summable::No } else { Summable::Unknown },
        };
        Seq::make(Node::Am(self.clone()), traits)
    }

    pub fn am_inf(&self) -> Seq {
        let t = self.traits();
        let traits = Traits {
            nonincreasing: t.nonnegative,
            nondecreasing: false,
            nonnegative: t.nonnegative,
            null: t.nonnegative,
            summable: Summable::Unknown,
        };
        Seq::make(Node::AmInf(self.clone()), traits)
    }

    pub fn ampliate(&self, m: usize) -> Seq {
        assert!(m >= 1);
        if m == 1 {
            return self.clone();
        }
        Seq::make(Node::Ampl(m, self.clone()), *self.traits())
    }

    pub fn contract(&self, m: usize) -> Seq {
        assert!(m >= 1);
        if m == 1 {
            return self.clone();
        }
        let t = self.traits();
        let traits = Traits { summable: if t.summable == Summable::Yes && t.nonincreasing { Summable::Yes } else { Summable::Unknown }, ..*t };
        Seq::make(Node::Contr(m, self.clone()), traits)
    }

    pub fn envelope(&self, mode: EnvMode) -> Seq {
        let t = self.traits();
        let (noninc, nondec) = match mode {
            EnvMode::Und | EnvMode::Lnd => (false, true),
            EnvMode::Uni | EnvMode::Lni => (true, false),
        };
        let traits = Traits {
            nonincreasing: noninc,
            nondecreasing: nondec,
            nonnegative: t.nonnegative,
            null: noninc && t.null && t.nonnegative,
            summable: Summable::Unknown,
        };
        Seq::make(Node::Env(mode, self.clone()), traits)
    }

    pub fn concave_majorant(&self) -> Seq {
        let traits = Traits { nonnegative: self.traits().nonnegative, ..Traits::unknown() };
        Seq::make(Node::ConcMaj(self.clone()), traits)
    }

    pub fn convex_minorant(&self) -> Seq {
        let traits = Traits { nonnegative: self.traits().nonnegative, ..Traits::unknown() };
        Seq::make(Node::ConvMin(self.clone()), traits)
    }

    // ---- pointwise ----

    pub fn add(&self, o: &Seq) -> Seq {
        let (a, b) = (self.traits(), o.traits());
        let nn = nonneg_both(self, o);
        let summable = match (a.summable, b.summable) {
            (Summable::Yes, Summable::Yes) => Summable::Yes,
            (Summable::No, _) | (_, Summable::No) if nn => Summable::No,
            _ => Summable::Unknown,
        };
        let traits = Traits {
            nonincreasing: a.nonincreasing && b.nonincreasing,
            nondecreasing: a.nondecreasing && b.nondecreasing,
            nonnegative: nn,
            null: a.null && b.null,
            summable,
        };
        Seq::make(Node::Add(self.clone(), o.clone()), traits)
    }

    pub fn sub(&self, o: &Seq) -> Seq {
        Seq::make(Node::Sub(self.clone(), o.clone()), Traits { null: self.traits().null && o.traits().null, ..Traits::unknown() })
    }

    pub fn mul(&self, o: &Seq) -> Seq {
        let (a, b) = (self.traits(), o.traits());
        let nn = nonneg_both(self, o);
        let traits = Traits {
            nonincreasing: nn && a.nonincreasing && b.nonincreasing,
            nondecreasing: nn && a.nondecreasing && b.nondecreasing,
            nonnegative: nn,
            null: nn && ((a.null && b.nonincreasing) || (b.null && a.nonincreasing)),
            summable: if nn && ((a.summable == Summable::Yes && b.nonincreasing) || (b.summable == Summable::Yes && a.nonincreasing)) {
                Summable::Yes
            } else {
                Summable::Unknown
            },
        };
        Seq::make(Node::Mul(self.clone(), o.clone()), traits)
    }

    pub fn div(&self, o: &Seq) -> Seq {
        if let Node::Mul(a, b) = self.node() {
            if b == o {
                return a.clone();
            }
            if a == o {
                return b.clone();
            }
        }
        let nn = nonneg_both(self, o);
        let over_omega_ratio_noninc = o.is_omega() && matches!(self.node(), Node::Ex38 | Node::Zeta(_) | Node::Ex415Eta | Node::Omega);
        let traits = Traits {
            nonincreasing: over_omega_ratio_noninc,
            nondecreasing: nn && o.is_omega() && matches!(self.node(), Node::Am(_) | Node::OmLog(_) | Node::Omega),
            nonnegative: nn,
            null: over_omega_ratio_noninc && !self.is_omega(),
            summable: Summable::Unknown,
        };
        Seq::make(Node::Div(self.clone(), o.clone()), traits)
    }

    /// `self / omega`, cancelling a leading `omega *` factor.
    pub fn over_omega(&self) -> Seq {
        self.div(&Seq::omega())
    }

    /// `omega * self`.
    pub fn times_omega(&self) -> Seq {
        Seq::omega().mul(self)
    }

    pub fn min(&self, o: &Seq) -> Seq {
        let (a, b) = (self.traits(), o.traits());
        let nn = nonneg_both(self, o);
        let summable = if nn && (a.summable == Summable::Yes || b.summable == Summable::Yes) { Summable::Yes } else { Summable::Unknown };
        let traits = Traits {
            nonincreasing: a.nonincreasing && b.nonincreasing,
            nondecreasing: a.nondecreasing && b.nondecreasing,
            nonnegative: nn,
            null: nn && (a.null || b.null),
            summable,
        };
        Seq::make(Node::Min(self.clone(), o.clone()), traits)
    }

    pub fn max(&self, o: &Seq) -> Seq {
        let (a, b) = (self.traits(), o.traits());
        let traits = Traits {
            nonincreasing: a.nonincreasing && b.nonincreasing,
            nondecreasing: a.nondecreasing && b.nondecreasing,
            nonnegative: a.nonnegative || b.nonnegative,
            null: a.null && b.null,
            summable: if a.summable == Summable::Yes && b.summable == Summable::Yes { Summable::Yes } else { Summable::Unknown },
        };
        Seq::make(Node::Max(self.clone(), o.clone()), traits)
    }

    /// Pointwise power with rational exponent `p > 0`; requires nonnegative values.
    pub fn pow(&self, p: Rat) -> Seq {
        assert!(p.is_positive());
        if p.is_one() {
            return self.clone();
        }
        let t = self.traits();
        let traits = Traits {
            nonincreasing: t.nonincreasing && t.nonnegative,
            nondecreasing: t.nondecreasing && t.nonnegative,
            nonnegative: true,
            null: t.null,
            summable: if t.summable == Summable::Yes && p >= Rat::one() && t.nonincreasing { Summable::Yes } else { Summable::Unknown },
        };
        Seq::make(Node::Pow(self.clone(), p), traits)
    }

    pub fn scale(&self, c: Rat) -> Seq {
        if c.is_one() {
            return self.clone();
        }
        let t = self.traits();
        let traits = if c.is_negative() {
            Traits { nonincreasing: t.nondecreasing, nondecreasing: t.nonincreasing, nonnegative: false, null: t.null, summable: Summable::Unknown }
        } else if c.is_zero() {
            *Seq::zero().traits()
        } else {
            *t
        };
        Seq::make(Node::Scale(c, self.clone()), traits)
    }

    /// Forward difference `<x_{n+1} - x_n>`.
    pub fn diff(&self) -> Seq {
        let t = self.traits();
        let traits = Traits { nonnegative: t.nondecreasing, ..Traits::unknown() };
        Seq::make(Node::Diff(self.clone()), traits)
    }

    // ---- evaluation ----

    /// Value at index `i >= 1`.
    pub fn eval(&self, i: usize) -> Result<Interval, SeqError> {
        assert!(i >= 1, "sequences are indexed from 1");
        {
            let c = self.0.cache.lock().unwrap();
            if c.len() >= i {
                return Ok(c[i - 1].clone());
            }
        }
        if let Some(v) = self.leaf_eval(i) {
            return v;
        }
        match self.node() {
            Node::Ampl(m, s) => s.eval(ceil_div(i, *m)),
            Node::Contr(m, s) => s.eval(m.checked_mul(i).ok_or(SeqError::IndexOutOfRange(i))?),
            Node::Env(EnvMode::Lnd, s) => s.tail_inf(i),
            Node::Env(EnvMode::Uni, s) => match s.tail_sup(i)? {
                Ext::Fin(v) => Ok(v),
                Ext::Inf => Err(SeqError::Unbounded(s.to_string())),
            },
            Node::Add(a, b) => Ok(a.eval(i)?.add(&b.eval(i)?).tidy()),
            Node::Sub(a, b) => Ok(a.eval(i)?.sub(&b.eval(i)?).tidy()),
            Node::Mul(a, b) => Ok(a.eval(i)?.mul(&b.eval(i)?).tidy()),
            Node::Div(a, b) => a.eval(i)?.div(&b.eval(i)?).map(Interval::tidy).ok_or(SeqError::DivisionByZero(i)),
            Node::Min(a, b) => Ok(a.eval(i)?.min(&b.eval(i)?)),
            Node::Max(a, b) => Ok(a.eval(i)?.max(&b.eval(i)?)),
            Node::Pow(s, p) => Ok(pow_interval(&s.eval(i)?, p)),
            Node::Scale(c, s) => Ok(s.eval(i)?.scale(c).tidy()),
            Node::Diff(s) => Ok(s.eval(i + 1)?.sub(&s.eval(i)?).tidy()),
            Node::AmInf(s) => Ok(s.tail_sum(i)?.scale(&recip_usize(i)).tidy()),
            _ => Ok(self.values(i)?.pop().expect("nonempty")),
        }
    }

    fn leaf_eval(&self, i: usize) -> Option<Result<Interval, SeqError>> {
        let p = |r: Rat| Some(Ok(Interval::point(r)));
        match self.node() {
            Node::Omega => p(recip_usize(i)),
            Node::Const(c) => p(c.clone()),
            Node::Zeta(k) => p(pow_rat(&recip_usize(i), *k)),
            Node::Geometric(r) => Some(Ok(Interval::point(pow_rat(r, i as u32)).tidy())),
            Node::Expo(b) => Some(Ok(Interval::point(pow_rat(b, i as u32)).tidy())),
            Node::OmLog(m) => Some(Ok(ln_interval(&from_usize(i + 1)).powi(*m).scale(&recip_usize(i)))),
            Node::Log(k) => Some(Ok(ln_interval(&from_usize(i + 1)).powi(*k))),
            Node::Rsqrt => p(recip_usize(i.isqrt() + usize::from(i.isqrt() * i.isqrt() != i))),
            Node::Finite(v) => p(v.get(i - 1).cloned().unwrap_or_else(Rat::zero)),
            Node::Ex220 | Node::Ex38 | Node::Ex315 | Node::Ex24Min(_) | Node::Ex24Split(_) | Node::Ex415Eta => Some(named::eval(self.node(), i)),
            _ => None,
        }
    }

    /// Values at indices `1..=n`, computed in one pass and cached.
    pub fn values(&self, n: usize) -> Result<Vec<Interval>, SeqError> {
        {
            let c = self.0.cache.lock().unwrap();
            if c.len() >= n {
                return Ok(c[..n].to_vec());
            }
        }
        let v = self.compute_values(n)?;
        let mut c = self.0.cache.lock().unwrap();
        if c.len() < v.len() {
            *c = v.clone();
        }
        Ok(v)
    }

    fn compute_values(&self, n: usize) -> Result<Vec<Interval>, SeqError> {
        let point_all = |f: &dyn Fn(usize) -> Rat| -> Vec<Interval> { (1..=n).map(|i| Interval::point(f(i))).collect() };
        Ok(match self.node() {
            Node::Omega => point_all(&recip_usize),
            Node::Geometric(r) | Node::Expo(r) => {
                let mut out = Vec::with_capacity(n);
                let mut cur = Interval::point(Rat::one());
                for _ in 0..n {
                    cur = cur.scale(r).tidy();
                    out.push(cur.clone());
                }
                out
            }
            Node::Ex415Eta => {
                let mut out = Vec::with_capacity(n);
                let mut three = Interval::point(Rat::one());
                for i in 1..=n {
                    three = three.scale(&int(3)).tidy();
                    let d = three.scale(&from_usize(i * i));
                    out.push(Interval::point(Rat::one()).div(&d).expect("positive").tidy());
                }
                out
            }
            Node::Ex24Split(_) | Node::Ex220 | Node::Ex38 | Node::Ex315 | Node::Ex24Min(_) => named::values(self.node(), n)?,
            Node::Am(s) => {
                {
                    let c = s.0.am_cache.lock().unwrap();
                    if c.len() >= n {
                        return Ok(c[..n].to_vec());
                    }
                }
                let v = s.values(n)?;
                let mut acc = Interval::zero();
                let mut out = Vec::with_capacity(n);
                for (k, x) in v.iter().enumerate() {
                    acc = acc.add(x).tidy();
                    out.push(acc.scale(&recip_usize(k + 1)).tidy());
                }
                let mut c = s.0.am_cache.lock().unwrap();
                if c.len() < out.len() {
                    *c = out.clone();
                }
                out
            }
            Node::AmInf(s) => {
                let v = s.values(n)?;
                let mut acc = s.tail_sum(n)?;
                let mut out = vec![Interval::zero(); n];
                for i in (1..=n).rev() {
                    out[i - 1] = acc.scale(&recip_usize(i)).tidy();
                    acc = acc.add(&v[i - 1]).tidy();
                }
                out
            }
            Node::Ampl(m, s) => {
                let base = s.values(ceil_div(n, *m))?;
                (1..=n).map(|i| base[ceil_div(i, *m) - 1].clone()).collect()
            }
            Node::Contr(m, s) => {
                let base = s.values(m * n)?;
                (1..=n).map(|i| base[m * i - 1].clone()).collect()
            }
            Node::Env(mode, s) => {
                let v = s.values(n)?;
                let mut out = Vec::with_capacity(n);
                match mode {
                    EnvMode::Und | EnvMode::Lni => {
                        let mut cur: Option<Interval> = None;
                        for x in v {
                            let nx = match (&cur, mode) {
                                (None, _) => x,
                                (Some(c), EnvMode::Und) => c.max(&x),
                                (Some(c), _) => c.min(&x),
                            };
                            out.push(nx.clone());
                            cur = Some(nx);
                        }
                    }
                    EnvMode::Lnd => {
                        let mut cur = s.tail_inf(n + 1)?;
                        let mut rev = Vec::with_capacity(n);
                        for x in v.iter().rev() {
                            cur = cur.min(x);
                            rev.push(cur.clone());
                        }
                        rev.reverse();
                        out = rev;
                    }
                    EnvMode::Uni => {
                        let mut cur = match s.tail_sup(n + 1)? {
                            Ext::Fin(x) => x,
                            Ext::Inf => return Err(SeqError::Unbounded(s.to_string())),
                        };
                        let mut rev = Vec::with_capacity(n);
                        for x in v.iter().rev() {
                            cur = cur.max(x);
                            rev.push(cur.clone());
                        }
                        rev.reverse();
                        out = rev;
                    }
                }
                out
            }
            Node::ConcMaj(s) => crate::envelopes::seq_concave_majorant(s, n)?,
            Node::ConvMin(s) => crate::envelopes::seq_convex_minorant(s, n)?,
            Node::Add(a, b) => zip(a, b, n, |x, y| Ok(x.add(y).tidy()))?,
            Node::Sub(a, b) => zip(a, b, n, |x, y| Ok(x.sub(y).tidy()))?,
            Node::Mul(a, b) => zip(a, b, n, |x, y| Ok(x.mul(y).tidy()))?,
            Node::Min(a, b) => zip(a, b, n, |x, y| Ok(x.min(y)))?,
            Node::Max(a, b) => zip(a, b, n, |x, y| Ok(x.max(y)))?,
            Node::Div(a, b) => {
                let (va, vb) = (a.values(n)?, b.values(n)?);
                let mut out = Vec::with_capacity(n);
                for (i, (x, y)) in va.iter().zip(vb.iter()).enumerate() {
                    out.push(x.div(y).ok_or(SeqError::DivisionByZero(i + 1))?.tidy());
                }
                out
            }
            Node::Pow(s, p) => s.values(n)?.iter().map(|x| pow_interval(x, p)).collect(),
            Node::Scale(c, s) => s.values(n)?.iter().map(|x| x.scale(c).tidy()).collect(),
            Node::Diff(s) => {
                let v = s.values(n + 1)?;
                v.windows(2).map(|w| w[1].sub(&w[0]).tidy()).collect()
            }
            _ => {
                let mut out = Vec::with_capacity(n);
                for i in 1..=n {
                    out.push(self.leaf_eval(i).expect("leaf")?);
                }
                out
            }
        })
    }

    /// Enclosure of `sum_{j>n} x_j`.
    pub fn tail_sum(&self, n: usize) -> Result<Interval, SeqError> {
        let none = || Err(SeqError::NoTailOracle(self.to_string()));
        let not_summable = || Err(SeqError::NotSummable(self.to_string()));
        match self.node() {
            Node::Const(c) if c.is_zero() => Ok(Interval::zero()),
            Node::Finite(v) => Ok(Interval::point(v.iter().skip(n).fold(Rat::zero(), |a, x| a + x))),
            Node::Geometric(r) => Ok(Interval::point(pow_rat(r, n as u32 + 1) / (Rat::one() - r)).tidy()),
            Node::Zeta(p) if *p >= 2 => Ok(zeta_tail(*p, n)),
            Node::Ex315 | Node::Ex38 | Node::Ex415Eta => named::tail_sum(self.node(), n),
            Node::Scale(c, s) => Ok(s.tail_sum(n)?.scale(c).tidy()),
            Node::Add(a, b) => Ok(a.tail_sum(n)?.add(&b.tail_sum(n)?).tidy()),
            Node::Ampl(m, s) => {
                let q = ceil_div(n, *m);
                let part = s.eval(q)?.scale(&from_usize(m * q - n));
                Ok(part.add(&s.tail_sum(q)?.scale(&from_usize(*m))).tidy())
            }
            _ if self.traits().summable == Summable::No => not_summable(),
            _ => none(),
        }
    }

    /// Enclosure of `inf_{i>=n} x_i`.
    pub fn tail_inf(&self, n: usize) -> Result<Interval, SeqError> {
        let none = || Err(SeqError::NoTailOracle(self.to_string()));
        match self.node() {
            Node::Div(x, o) if o.is_omega() => return named::ratio_tail(x, n).map(|t| t.1),
            Node::Env(EnvMode::Und, s) => {
                let _ = s;
                return self.eval(n);
            }
            Node::Env(EnvMode::Lni, s) => return Ok(self.eval(n)?.min(&s.tail_inf(n)?)),
            Node::Ampl(m, s) => return s.tail_inf(ceil_div(n, *m)),
            Node::Scale(c, s) if !c.is_negative() => return Ok(s.tail_inf(n)?.scale(c)),
            Node::Min(a, b) => return Ok(a.tail_inf(n)?.min(&b.tail_inf(n)?)),
            Node::Mul(a, b) if a.is_omega() && b.traits().nonnegative => {
                if b.traits().nonincreasing || b.tail_sup(n).map(|e| e != Ext::Inf).unwrap_or(false) {
                    return Ok(Interval::zero());
                }
            }
            _ => {}
        }
        let t = self.traits();
        if t.nondecreasing {
            return self.eval(n);
        }
        if t.nonincreasing && t.null && t.nonnegative {
            return Ok(Interval::zero());
        }
        if let Node::OmLog(_) = self.node() {
            return Ok(Interval::zero());
        }
        none()
    }

    /// `sup_{i>=n} x_i`, possibly `+inf`.
    pub fn tail_sup(&self, n: usize) -> Result<Ext, SeqError> {
        let none = || Err(SeqError::NoTailOracle(self.to_string()));
        match self.node() {
            Node::Div(x, o) if o.is_omega() => return named::ratio_tail(x, n).map(|t| t.0),
            Node::Env(EnvMode::Und, s) => return Ok(Ext::Fin(self.eval(n)?).max(&s.tail_sup(n)?)),
            Node::Env(EnvMode::Uni, _) => return Ok(Ext::Fin(self.eval(n)?)),
            Node::Env(EnvMode::Lnd, s) if s.traits().null && s.traits().nonnegative => return Ok(Ext::point(Rat::zero())),
            Node::Ampl(m, s) => return s.tail_sup(ceil_div(n, *m)),
            Node::Scale(c, s) if !c.is_negative() => return Ok(s.tail_sup(n)?.scale(c)),
            Node::Expo(b) if *b > Rat::one() => return Ok(Ext::Inf),
            Node::Log(k) if *k > 0 => return Ok(Ext::Inf),
            Node::Const(c) => return Ok(Ext::point(c.clone())),
            Node::OmLog(m) => {
                // (log^m(i+1))/i decreases once log(i+1) >= m, in particular from 3^m on.
                let top = 3usize.saturating_pow(*m).max(n);
                let mut best = self.eval(n)?;
                for i in n + 1..=top {
                    best = best.max(&self.eval(i)?);
                }
                return Ok(Ext::Fin(best));
            }
            _ => {}
        }
        let t = self.traits();
        if t.nonincreasing {
            return Ok(Ext::Fin(self.eval(n)?));
        }
        none()
    }
}

fn zip(a: &Seq, b: &Seq, n: usize, f: impl Fn(&Interval, &Interval) -> Result<Interval, SeqError>) -> Result<Vec<Interval>, SeqError> {
    let (va, vb) = (a.values(n)?, b.values(n)?);
    va.iter().zip(vb.iter()).map(|(x, y)| f(x, y)).collect()
}

/// `sum_{j>n} j^-p` for `p >= 2`: explicit terms up to a cutoff plus integral bounds.
fn zeta_tail(p: u32, n: usize) -> Interval {
    let m = n + 64;
    let mut acc = Interval::zero();
    for j in n + 1..=m {
        acc = acc.add(&Interval::point(pow_rat(&recip_usize(j), p))).tidy();
    }
    let pm1 = int(p as i64 - 1);
    let lo = Rat::one() / (&pm1 * pow_rat(&from_usize(m + 1), p - 1));
    let hi = Rat::one() / (&pm1 * pow_rat(&from_usize(m), p - 1));
    acc.add(&Interval::new(lo, hi)).tidy()
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Omega => write!(f, "omega"),
            Node::Const(c) => write!(f, "const({})", fmt_rat(c)),
            Node::Zeta(p) => write!(f, "zeta({p})"),
            Node::Geometric(r) => write!(f, "geometric({})", fmt_rat(r)),
            Node::Expo(b) => write!(f, "expo({})", fmt_rat(b)),
            Node::OmLog(m) => write!(f, "omlog({m})"),
            Node::Log(k) => write!(f, "log({k})"),
            Node::Rsqrt => write!(f, "rsqrt"),
            Node::Finite(v) if v.len() == 1 && v[0].is_one() => write!(f, "e1"),
            Node::Finite(v) => {
                write!(f, "finite(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", fmt_rat(x))?;
                }
                write!(f, ")")
            }
            Node::Ex220 => write!(f, "ex220"),
            Node::Ex38 => write!(f, "ex38"),
            Node::Ex315 => write!(f, "ex315"),
            Node::Ex24Min(Side::A) => write!(f, "ex24min_a"),
            Node::Ex24Min(Side::B) => write!(f, "ex24min_b"),
            Node::Ex24Split(Side::A) => write!(f, "ex24split_a"),
            Node::Ex24Split(Side::B) => write!(f, "ex24split_b"),
            Node::Ex415Eta => write!(f, "ex415eta"),
            Node::Am(s) => write!(f, "am({s})"),
            Node::AmInf(s) => write!(f, "aminf({s})"),
            Node::Ampl(m, s) => write!(f, "d({m},{s})"),
            Node::Contr(m, s) => write!(f, "dinv({m},{s})"),
            Node::Env(mode, s) => write!(f, "{}({s})", mode.name()),
            Node::ConcMaj(s) => write!(f, "concmaj({s})"),
            Node::ConvMin(s) => write!(f, "convmin({s})"),
            Node::Add(a, b) => write!(f, "plus({a},{b})"),
            Node::Sub(a, b) => write!(f, "minus({a},{b})"),
            Node::Mul(a, b) => write!(f, "times({a},{b})"),
            Node::Div(a, b) => write!(f, "div({a},{b})"),
            Node::Min(a, b) => write!(f, "min({a},{b})"),
            Node::Max(a, b) => write!(f, "max({a},{b})"),
            Node::Pow(s, p) => write!(f, "pow({s},{})", fmt_rat(p)),
            Node::Scale(c, s) => write!(f, "scale({},{s})", fmt_rat(c)),
            Node::Diff(s) => write!(f, "diff({s})"),
        }
    }
}

/// Finite 1-indexed initial segment of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prefix(pub Vec<Rat>);

impl fmt::Debug for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(x))?;
        }
        write!(f, ">")
    }
}

impl Prefix {
    pub fn new(v: Vec<Rat>) -> Prefix {
        Prefix(v)
    }

    pub fn from_ratios(v: &[(i64, i64)]) -> Prefix {
        Prefix(v.iter().map(|&(p, q)| crate::num::rat(p, q)).collect())
    }

    pub fn from_ints(v: &[i64]) -> Prefix {
        Prefix(v.iter().map(|&p| int(p)).collect())
    }

    pub fn zeros(n: usize) -> Prefix {
        Prefix(vec![Rat::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-indexed access.
    pub fn at(&self, i: usize) -> &Rat {
        &self.0[i - 1]
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |a, x| a + x)
    }

    pub fn partial_sums(&self) -> Vec<Rat> {
        let mut acc = Rat::zero();
        self.0
            .iter()
            .map(|x| {
                acc += x;
                acc.clone()
            })
            .collect()
    }

    pub fn to_seq(&self) -> Seq {
        Seq::finite(self.0.clone())
    }
}

/// Strictly increasing block ends `n_1 < n_2 < ...` with `n_0 = 0` implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Blocks(Vec<usize>);

impl Blocks {
    pub fn new(ends: Vec<usize>) -> Result<Blocks, SeqError> {
        if ends.is_empty() || ends[0] < 1 || ends.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SeqError::BadParams("block ends must be strictly increasing and start at >= 1".into()));
        }
        Ok(Blocks(ends))
    }

    pub fn ends(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    /// `(start, end)` pairs, inclusive and 1-indexed.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        let mut prev = 0;
        self.0
            .iter()
            .map(|&e| {
                let r = (prev + 1, e);
                prev = e;
                r
            })
            .collect()
    }
}

/// `<eval(1), ..., eval(n)>`; fails when a value is an interval or the
/// declared nonincreasing trait is contradicted.
pub fn materialize(s: &Seq, n: usize) -> Result<Prefix, SeqError> {
    assert!(n >= 1);
    let v = s.values(n)?;
    let noninc = s.traits().nonincreasing;
    let mut out = Vec::with_capacity(n);
    for (i, x) in v.into_iter().enumerate() {
        if i > 0 && noninc && v_lt(&out, i, &x) {
            return Err(SeqError::MonotonicityViolated(i + 1));
        }
        match x.exact() {
            Some(r) => out.push(r.clone()),
            None => return Err(SeqError::Inexact(i + 1)),
        }
    }
    Ok(Prefix(out))
}

fn v_lt(out: &[Rat], i: usize, x: &Interval) -> bool {
    x.lo > out[i - 1]
}

/// Checks the nonincreasing flag on `[1, n]` with interval values.
pub fn check_monotone(s: &Seq, n: usize) -> Result<(), SeqError> {
    if !s.traits().nonincreasing {
        return Ok(());
    }
    let v = s.values(n)?;
    for i in 1..v.len() {
        if v[i].lo > v[i - 1].hi {
            return Err(SeqError::MonotonicityViolated(i + 1));
        }
    }
    Ok(())
}

/// Tail sum with an optional truncation horizon used when no oracle exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSum {
    pub bound: Interval,
    /// `true` when `bound` is only the partial sum up to the horizon (a lower bound).
    pub truncated: bool,
}

pub fn tail_sum_bounds(s: &Seq, n: usize, horizon: Option<usize>) -> Result<TailSum, SeqError> {
    match s.tail_sum(n) {
        Ok(b) => Ok(TailSum { bound: b, truncated: false }),
        Err(e) => match horizon {
            Some(h) if h > n => {
                let v = s.values(h)?;
                let mut acc = Interval::zero();
                for x in &v[n..] {
                    acc = acc.add(x).tidy();
                }
                let lo = acc.lo.clone();
                Ok(TailSum { bound: Interval::point(lo), truncated: true })
            }
            Some(_) => Ok(TailSum { bound: Interval::zero(), truncated: true }),
            None => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn omega_and_const() {
        let p = materialize(&Seq::omega(), 3).unwrap();
        assert_eq!(p, Prefix::from_ratios(&[(1, 1), (1, 2), (1, 3)]));
        let c = materialize(&Seq::constant(int(5)), 2).unwrap();
        assert_eq!(c, Prefix::from_ints(&[5, 5]));
    }

    #[test]
    fn geometric_tails() {
        let g = Seq::geometric(rat(1, 2));
        assert_eq!(g.tail_sum(1).unwrap(), Interval::point(rat(1, 2)));
        assert_eq!(g.tail_sum(3).unwrap(), Interval::point(rat(1, 8)));
    }

    #[test]
    fn zeta_tail_within_integral_bounds() {
        let z = Seq::zeta(2);
        for n in [1usize, 2, 5, 10, 100] {
            let t = z.tail_sum(n).unwrap();
            assert!(t.lo >= recip_usize(n + 1) && t.hi <= recip_usize(n), "n={n} {t:?}");
        }
    }

    #[test]
    fn monotonicity_violation_reported() {
        let bad = Seq::leaf(Node::Finite(vec![int(1), int(2)]), Traits::decreasing_null(Summable::Yes));
        assert_eq!(materialize(&bad, 2), Err(SeqError::MonotonicityViolated(2)));
    }

    #[test]
    fn ampliation_and_contraction_eval() {
        let w = Seq::omega();
        let d = materialize(&w.ampliate(2), 4).unwrap();
        assert_eq!(d, Prefix::from_ratios(&[(1, 1), (1, 1), (1, 2), (1, 2)]));
        let c = materialize(&w.contract(2), 2).unwrap();
        assert_eq!(c, Prefix::from_ratios(&[(1, 2), (1, 4)]));
        assert_eq!(w.ampliate(3).eval(7).unwrap(), Interval::point(rat(1, 3)));
    }

    #[test]
    fn ampliated_tail_sum() {
        let g = Seq::geometric(rat(1, 2)).ampliate(2);
        // <1/2,1/2,1/4,1/4,...>: tail after 3 is 1/4 + 2*(1/8+1/16+...) = 3/4
        assert_eq!(g.tail_sum(3).unwrap(), Interval::point(rat(3, 4)));
    }

    #[test]
    fn div_cancels_omega_factor() {
        let x = Seq::zeta(2).times_omega();
        let back = x.over_omega();
        assert_eq!(back.to_string(), "zeta(2)");
    }

    #[test]
    fn envelopes_via_oracles() {
        let phi = Seq::zeta(2).over_omega();
        let und = materialize(&phi.envelope(EnvMode::Und), 3).unwrap();
        assert_eq!(und, Prefix::from_ints(&[1, 1, 1]));
        let lnd = materialize(&phi.envelope(EnvMode::Lnd), 3).unwrap();
        assert_eq!(lnd, Prefix::zeros(3));
    }

    #[test]
    fn blocks_validate() {
        assert!(Blocks::new(vec![2, 4]).is_ok());
        assert!(Blocks::new(vec![2, 2]).is_err());
        assert!(Blocks::new(vec![0, 2]).is_err());
        assert_eq!(Blocks::new(vec![2, 4]).unwrap().ranges(), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn truncated_tail_is_flagged() {
        let w = Seq::omega();
        assert!(matches!(w.tail_sum(1), Err(SeqError::NotSummable(_))));
        let t = tail_sum_bounds(&w, 1, Some(3)).unwrap();
        assert!(t.truncated);
        assert_eq!(t.bound, Interval::point(rat(5, 6)));
        assert!(tail_sum_bounds(&Seq::rsqrt().mul(&Seq::rsqrt()).sub(&Seq::zero()), 1, None).is_err());
    }
}
