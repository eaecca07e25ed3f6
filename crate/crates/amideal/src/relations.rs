//! Finite-horizon verdicts for asymptotic relations between sequences.
//!
//! Every predicate looks at a window `[n0, horizon]` and answers holds, fails
//! or indeterminate. The O-type engine works on the ratio sequence: it tracks
//! the records of the running maximum, thins them so consecutive kept records
//! are at least a factor 2 apart in index, and reads growth or decay off the
//! increments between kept records.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::{fmt_rat, int, rat, rat_serde, Interval, Rat};
use crate::seq::{Ext, Prefix, Seq, SeqError, Summable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub horizon: usize,
    pub n0: usize,
    #[serde(with = "rat_serde")]
    pub growth_threshold: Rat,
    #[serde(with = "rat_serde")]
    pub delta: Rat,
    /// number of dyadic windows / kept records examined
    pub blocks: usize,
    pub m_max: usize,
    pub k_max: u32,
    /// block-sum ratio below which a series counts as geometrically decaying
    #[serde(with = "rat_serde")]
    pub decay_ratio: Rat,
    #[serde(with = "rat_serde")]
    pub divergence_sentinel: Rat,
}

pub const DEFAULT_HORIZON: usize = 10_000;

impl Default for Config {
    fn default() -> Self {
        Config {
            horizon: DEFAULT_HORIZON,
            n0: 8,
            growth_threshold: rat(3, 2),
            delta: rat(1, 10),
            blocks: 4,
            m_max: 8,
            k_max: 8,
            decay_ratio: rat(3, 4),
            divergence_sentinel: int(8),
        }
    }
}

impl Config {
    pub fn with_horizon(horizon: usize) -> Self {
        Config { horizon, ..Config::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Holds,
    Fails,
    Indeterminate,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Holds => "holds",
            Decision::Fails => "fails",
            Decision::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub m: Option<usize>,
    #[serde(serialize_with = "opt_rat")]
    pub c: Option<Rat>,
    pub indices: Vec<usize>,
}

fn opt_rat<S: serde::Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantifierBounds {
    pub m_max: usize,
    pub k_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub horizon: usize,
    pub witness: Option<Witness>,
    /// indices that refute the relation when `decision = fails`
    pub refuting: Vec<usize>,
    #[serde(with = "rat_serde")]
    pub margin: Rat,
    pub bounds: QuantifierBounds,
    pub note: String,
}

impl Verdict {
    fn new(decision: Decision, cfg: &Config) -> Verdict {
        Verdict {
            decision,
            horizon: cfg.horizon,
            witness: None,
            refuting: Vec::new(),
            margin: Rat::zero(),
            bounds: QuantifierBounds { m_max: cfg.m_max, k_max: cfg.k_max },
            note: String::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.decision == Decision::Holds
    }

    pub fn fails(&self) -> bool {
        self.decision == Decision::Fails
    }

    pub fn indeterminate(cfg: &Config, note: impl Into<String>) -> Verdict {
        Verdict { note: note.into(), ..Verdict::new(Decision::Indeterminate, cfg) }
    }

    pub(crate) fn exact_holds(cfg: &Config, c: Option<Rat>, note: impl Into<String>) -> Verdict {
        Verdict { witness: Some(Witness { m: None, c, indices: vec![] }), note: note.into(), ..Verdict::new(Decision::Holds, cfg) }
    }

    pub(crate) fn exact_fails(cfg: &Config, refuting: Vec<usize>, note: impl Into<String>) -> Verdict {
        Verdict { refuting, note: note.into(), ..Verdict::new(Decision::Fails, cfg) }
    }

    pub(crate) fn with_m(mut self, m: usize) -> Verdict {
        if let Some(w) = self.witness.as_mut() {
            w.m = Some(m);
        } else {
            self.witness = Some(Witness { m: Some(m), c: None, indices: vec![] });
        }
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("division by zero at index {0}")]
    DivisionByZeroAtIndex(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Ratio `x/y` at one index. `0/0` counts as 0; `x/0` with `x > 0` is `None`.
fn ratio(x: &Interval, y: &Interval, i: usize) -> Result<Option<Interval>, RelError> {
    if let Some(q) = x.div(y) {
        return Ok(Some(q));
    }
    if x.is_point() && x.lo.is_zero() {
        return Ok(Some(Interval::zero()));
    }
    if y.is_point() && y.lo.is_zero() && x.lo.is_positive() {
        return Ok(None);
    }
    Err(RelError::DivisionByZeroAtIndex(i))
}

/// Verdict on `sup_n r_n < inf` from `r_1..r_N` (entries `None` mean `+inf`).
fn bounded_engine(r: &[Option<Interval>], cfg: &Config) -> Verdict {
    let n = r.len();
    let mut cfg_n = cfg.clone();
    cfg_n.horizon = n;
    let cfg = &cfg_n;
    if n < 2 * cfg.n0 {
        return Verdict::indeterminate(cfg, "window too short");
    }
    if let Some(i) = r.iter().position(|x| x.is_none()) {
        return Verdict::exact_fails(cfg, vec![i + 1], "ratio infinite");
    }
    let r: Vec<&Interval> = r.iter().map(|x| x.as_ref().unwrap()).collect();
    let g = &cfg.growth_threshold;

    // running max on [n0, N] and its records (strict increases of the lo endpoint)
    let mut best_lo = r[cfg.n0 - 1].lo.clone();
    let mut best_hi = r[cfg.n0 - 1].hi.clone();
    let mut records: Vec<(usize, Interval)> = Vec::new();
    let mut half: Option<(Rat, Rat)> = None;
    for i in cfg.n0..=n {
        let x = r[i - 1];
        if x.lo > best_lo {
            best_lo = x.lo.clone();
            if i > cfg.n0 {
                records.push((i, x.clone()));
            }
        }
        if x.hi > best_hi {
            best_hi = x.hi.clone();
        }
        if i == n / 2 {
            half = Some((best_lo.clone(), best_hi.clone()));
        }
    }
    let (half_lo, half_hi) = half.expect("n/2 >= n0");
    let mut full_hi = r.iter().map(|x| x.hi.clone()).max().expect("nonempty");
    if full_hi < best_hi {
        full_hi = best_hi.clone();
    }

    if best_lo > g * &half_hi {
        let lastw = (n / 2 + 1..=n).max_by(|&a, &b| r[a - 1].lo.cmp(&r[b - 1].lo)).unwrap();
        let firstw = (cfg.n0..=n / 2).max_by(|&a, &b| r[a - 1].lo.cmp(&r[b - 1].lo)).unwrap();
        let mut v = Verdict::exact_fails(cfg, vec![firstw, lastw], "running max grows by more than the growth threshold over the last dyadic window");
        v.decision = Decision::Fails;
        v.margin = &best_lo / if half_hi.is_zero() { Rat::one() } else { half_hi.clone() };
        return v;
    }

    // thin: walk back from the last record keeping indices <= half the previous kept one
    let mut kept: Vec<(usize, Interval)> = Vec::new();
    for (i, x) in records.iter().rev() {
        match kept.last() {
            None => kept.push((*i, x.clone())),
            Some((j, _)) if 2 * i <= *j => kept.push((*i, x.clone())),
            _ => {}
        }
        if kept.len() == cfg.blocks {
            break;
        }
    }
    kept.reverse();
    let incs: Vec<Interval> = kept.windows(2).map(|w| w[1].1.sub(&w[0].1)).collect();

    if incs.len() >= 2 && incs.iter().all(|e| e.lo.is_positive()) {
        let first = &incs[0];
        let last = incs.last().unwrap();
        if last.lo >= &first.hi * &cfg.decay_ratio {
            let mut v = Verdict::exact_fails(cfg, kept.iter().map(|k| k.0).collect(), "record increments do not decay");
            v.margin = &last.lo / &first.hi;
            return v;
        }
    }

    let last_record = records.last().map(|x| x.0).unwrap_or(0);
    if last_record <= n / 2 && incs.len() < 2 {
        let c = full_hi.clone();
        let argmax = (1..=n).find(|&i| r[i - 1].hi == c).unwrap_or(1);
        let mut v = Verdict::exact_holds(cfg, Some(c.clone()), "running max stable over the last dyadic window");
        v.witness.as_mut().unwrap().indices = vec![argmax];
        v.margin = if c.is_zero() { Rat::zero() } else { (&c - &half_lo) / &c };
        return v;
    }

    if incs.len() >= 2 {
        // geometric decay with ratio at most (1 + decay_ratio)/2 extrapolates to a finite sup
        let q_max = (Rat::one() + &cfg.decay_ratio) / int(2);
        let decays = incs.iter().all(|e| e.lo.is_positive()) && incs.windows(2).all(|w| w[1].hi <= &w[0].lo * &q_max);
        if decays {
            let q = incs.windows(2).map(|w| &w[1].hi / &w[0].lo).max().unwrap();
            let last = incs.last().unwrap();
            let c = &full_hi + &last.hi * &q / (Rat::one() - &q);
            let mut v = Verdict::exact_holds(cfg, Some(c), "record increments decay geometrically");
            v.witness.as_mut().unwrap().indices = kept.iter().map(|k| k.0).collect();
            v.margin = Rat::one() - q;
            return v;
        }
    }
    Verdict::indeterminate(cfg, "no stable trend in the running max")
}

/// `xi = O(eta)` at horizon.
pub fn big_o(xi: &Seq, eta: &Seq, cfg: &Config) -> Result<Verdict, RelError> {
    let n = cfg.horizon;
    let (a, b) = (xi.values(n)?, eta.values(n)?);
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        r.push(ratio(&a[i], &b[i], i + 1)?);
    }
    Ok(bounded_engine(&r, cfg))
}

/// `sup xi_n / xi_{2n} < inf`, evaluated on `n <= horizon` (using values up to `2*horizon`).
pub fn delta_half(xi: &Seq, cfg: &Config) -> Result<Verdict, RelError> {
    let n = cfg.horizon;
    let a = xi.values(2 * n)?;
    let mut r = Vec::with_capacity(n);
    for i in 1..=n {
        r.push(ratio(&a[i - 1], &a[2 * i - 1], i)?);
    }
    Ok(bounded_engine(&r, cfg))
}

/// `xi = o(eta)` at horizon, from sups over the last `blocks` dyadic windows.
pub fn little_o(xi: &Seq, eta: &Seq, cfg: &Config) -> Result<Verdict, RelError> {
    let n = cfg.horizon;
    if let Some(v) = little_o_by_oracle(xi, eta, cfg) {
        return Ok(v);
    }
    let (a, b) = (xi.values(n)?, eta.values(n)?);
    let mut sups: Vec<(Interval, usize)> = Vec::new();
    let mut hi = n;
    for _ in 0..cfg.blocks {
        let lo = hi / 2;
        if lo < cfg.n0 {
            break;
        }
        let mut best: Option<(Interval, usize)> = None;
        for i in lo + 1..=hi {
            let q = match ratio(&a[i - 1], &b[i - 1], i)? {
                Some(q) => q,
                None => return Ok(Verdict::exact_fails(cfg, vec![i], "ratio infinite")),
            };
            best = Some(match best {
                Some((m, j)) if m.hi >= q.hi => (m.max(&q), j),
                Some((m, _)) => (m.max(&q), i),
                None => (q, i),
            });
        }
        sups.push(best.expect("nonempty window"));
        hi = lo;
    }
    if sups.len() < 2 {
        return Ok(Verdict::indeterminate(cfg, "window too short"));
    }
    let last = &sups[0].0;
    let shrinking = sups.windows(2).all(|w| w[0].0.hi <= w[1].0.hi);
    if last.hi < cfg.delta && shrinking {
        let mut v = Verdict::exact_holds(cfg, Some(last.hi.clone()), "window sups shrink below delta");
        v.witness.as_mut().unwrap().indices = sups.iter().map(|s| s.1).collect();
        v.margin = &cfg.delta - &last.hi;
        return Ok(v);
    }
    if last.lo >= cfg.delta && sups[1].0.hi <= &cfg.growth_threshold * &last.lo {
        let mut v = Verdict::exact_fails(cfg, sups.iter().map(|s| s.1).collect(), "ratio stays above delta");
        v.margin = last.lo.clone();
        return Ok(v);
    }
    Ok(Verdict::indeterminate(cfg, "ratio neither small nor persistently large"))
}

/// Uses `sup_{i>=n} xi_i/eta_i` at `n = N, N/2, ..., N/2^(B-1)` when an oracle exists.
fn little_o_by_oracle(xi: &Seq, eta: &Seq, cfg: &Config) -> Option<Verdict> {
    let r = xi.div(eta);
    let mut sups = Vec::new();
    let mut n = cfg.horizon;
    for _ in 0..cfg.blocks {
        if n < cfg.n0 {
            return None;
        }
        match r.tail_sup(n) {
            Ok(Ext::Fin(x)) => sups.push((x, n)),
            _ => return None,
        }
        n /= 2;
    }
    let (last, first) = (&sups[0].0, &sups[sups.len() - 1].0);
    if last.hi < cfg.delta && last.hi < first.lo {
        let mut v = Verdict::exact_holds(cfg, Some(last.hi.clone()), "tail sup of the ratio decreases below delta");
        v.witness.as_mut().unwrap().indices = sups.iter().map(|s| s.1).collect();
        v.margin = &cfg.delta - &last.hi;
        return Some(v);
    }
    if last.lo >= cfg.delta {
        let mut v = Verdict::exact_fails(cfg, vec![cfg.horizon], "tail sup of the ratio stays above delta");
        v.margin = last.lo.clone();
        return Some(v);
    }
    Some(Verdict::indeterminate(cfg, "tail sup of the ratio neither small nor large"))
}

/// Summability at horizon: a tail oracle, or dyadic block sums.
pub fn summable(xi: &Seq, cfg: &Config) -> Result<Verdict, RelError> {
    if let Ok(t) = xi.tail_sum(0) {
        return Ok(Verdict::exact_holds(cfg, Some(t.hi), "tail oracle certifies a finite total"));
    }
    let n = cfg.horizon;
    let v = xi.values(n)?;
    let mut blocks: Vec<(Interval, usize)> = Vec::new();
    let mut total = Interval::zero();
    let mut lo = 0usize;
    let mut hi = 1usize;
    while lo < n {
        let top = hi.min(n);
        let mut s = Interval::zero();
        for x in &v[lo..top] {
            s = s.add(x).tidy();
        }
        total = total.add(&s).tidy();
        if top == hi {
            blocks.push((s, top));
        }
        lo = top;
        hi *= 2;
    }
    let b = cfg.blocks;
    if blocks.len() < b + 1 {
        return Ok(Verdict::indeterminate(cfg, "window too short"));
    }
    let tail = &blocks[blocks.len() - b - 1..];
    let r = &cfg.decay_ratio;
    let ratios: Vec<Option<Interval>> = tail.windows(2).map(|w| w[1].0.div(&w[0].0)).collect();
    let decaying = ratios.iter().all(|q| q.as_ref().is_some_and(|q| q.hi <= *r))
        || tail.last().is_some_and(|x| x.0.is_point() && x.0.lo.is_zero());
    if decaying {
        let last = &tail.last().unwrap().0;
        let c = &total.hi + &last.hi * r / (Rat::one() - r);
        let mut out = Verdict::exact_holds(cfg, Some(c), "dyadic block sums decay geometrically");
        out.witness.as_mut().unwrap().indices = tail.iter().map(|x| x.1).collect();
        return Ok(out);
    }
    let not_decaying = ratios.iter().any(|q| q.as_ref().is_some_and(|q| q.lo > *r));
    if total.lo >= cfg.divergence_sentinel && not_decaying {
        let mut out = Verdict::exact_fails(cfg, tail.iter().map(|x| x.1).collect(), "partial sums pass the divergence sentinel");
        out.margin = total.lo.clone();
        return Ok(out);
    }
    let mut out = Verdict::indeterminate(cfg, "block sums inconclusive");
    if xi.traits().summable == Summable::No {
        out.note.push_str("; declared nonsummable");
    }
    Ok(out)
}

/// `eta ≺ xi` on the window: partial sums of `eta` never exceed those of `xi`.
pub fn majorizes(eta: &Prefix, xi: &Prefix, cfg: &Config) -> Result<Verdict, RelError> {
    if eta.len() != xi.len() {
        return Err(RelError::LengthMismatch(eta.len(), xi.len()));
    }
    let cfg = Config { horizon: eta.len(), ..cfg.clone() };
    let (a, b) = (eta.partial_sums(), xi.partial_sums());
    for k in 0..a.len() {
        if a[k] > b[k] {
            return Ok(Verdict::exact_fails(&cfg, vec![k + 1], "partial sum exceeded"));
        }
    }
    Ok(Verdict::exact_holds(&cfg, None, "all partial sums dominated"))
}

/// Tail-sum domination `sum_{j>n} eta_j <= sum_{j>n} xi_j` for `n <= horizon`.
pub fn majorizes_inf(eta: &Seq, xi: &Seq, n: usize, cfg: &Config) -> Result<Verdict, RelError> {
    let cfg = Config { horizon: n, ..cfg.clone() };
    let tails = |s: &Seq| -> Result<Vec<Interval>, RelError> {
        let v = s.values(n)?;
        let mut t = s.tail_sum(n)?;
        let mut out = vec![Interval::zero(); n];
        for i in (1..=n).rev() {
            out[i - 1] = t.clone();
            t = t.add(&v[i - 1]).tidy();
        }
        Ok(out)
    };
    let (te, tx) = (tails(eta)?, tails(xi)?);
    let mut unsure = Vec::new();
    for i in 0..n {
        if te[i].lo > tx[i].hi {
            return Ok(Verdict::exact_fails(&cfg, vec![i + 1], "tail sum exceeded"));
        }
        if te[i].hi > tx[i].lo {
            unsure.push(i + 1);
        }
    }
    if unsure.is_empty() {
        Ok(Verdict::exact_holds(&cfg, None, "all tail sums dominated"))
    } else {
        let mut v = Verdict::indeterminate(&cfg, "tail enclosures overlap");
        v.refuting = unsure;
        Ok(v)
    }
}

/// `am(xi) = O(xi)`; the other direction holds for every nonincreasing `xi`.
pub fn regular(xi: &Seq, cfg: &Config) -> Result<Verdict, RelError> {
    big_o(&xi.am(), xi, cfg)
}

/// Two-sided `xi ≍ am_inf(xi)`.
pub fn inf_regular(xi: &Seq, cfg: &Config) -> Result<Verdict, RelError> {
    let ai = xi.am_inf();
    let a = big_o(xi, &ai, cfg)?;
    let b = big_o(&ai, xi, cfg)?;
    Ok(match (a.decision, b.decision) {
        (Decision::Holds, Decision::Holds) => a.with_note("both directions bounded"),
        (Decision::Fails, _) => a.with_note("xi is not O(am_inf xi)"),
        (_, Decision::Fails) => b.with_note("am_inf xi is not O(xi)"),
        _ => Verdict::indeterminate(cfg, "one direction indeterminate"),
    })
}

/// `sup_{i >= n} x_i` as a finite enclosure, if known.
pub fn finite_tail_sup(s: &Seq, n: usize) -> Option<Interval> {
    match s.tail_sup(n) {
        Ok(Ext::Fin(v)) => Some(v),
        _ => None,
    }
}
