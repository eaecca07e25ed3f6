//! Named corpus sequences, their closed forms and tail oracles.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::split::split_value;
use super::{Ext, Node, Seq, SeqError, Side, Summable, Traits};
use crate::num::{big, ceil, factorial, from_usize, int, ln_interval, pow_rat, rat, recip_usize, Interval, Rat};

fn fact(k: usize) -> Option<u128> {
    (1..=k as u128).try_fold(1u128, |a, x| a.checked_mul(x))
}

fn fact_rat(k: usize) -> Rat {
    big(&factorial(k as u64))
}

/// Smallest `k >= 1` with `i <= f(k)`; `f` increasing.
fn first_block(i: usize, f: impl Fn(usize) -> Option<u128>) -> usize {
    let i = i as u128;
    (1..).find(|&k| f(k).is_none_or(|e| i <= e)).expect("unbounded search")
}

fn ex220_end(k: usize) -> Option<u128> {
    fact(k).and_then(|f| f.checked_mul(f))
}

fn ex220_block(i: usize) -> usize {
    first_block(i, ex220_end)
}

/// block `k` is `[k!, (k+1)!)`
fn ex38_block(i: usize) -> usize {
    first_block(i, |k| fact(k + 1).map(|f| f - 1))
}

/// block 2 is `[1, 2]`, block `k >= 3` is `((k-1)!, k!]`
fn ex315_block(i: usize) -> usize {
    first_block(i, |k| if k < 2 { Some(0) } else { fact(k) })
}

fn ex315_value(k: usize) -> Rat {
    Rat::one() / (fact_rat(k) * pow_rat(&int(2), k as u32))
}

/// `n_k = 2^(2^k)` as a `u128` when it fits.
fn ex24min_end(k: usize) -> Option<u128> {
    if k >= 7 {
        None
    } else {
        1u128.checked_shl(1 << k)
    }
}

fn ex24min_block(i: usize) -> usize {
    (0..).find(|&k| ex24min_end(k).is_none_or(|e| i as u128 <= e)).expect("unbounded search")
}

fn two_pow_two_pow(k: u32) -> BigInt {
    BigInt::one() << (1usize << k)
}

/// Value on block `k` of the requested side.
fn ex24min_value(side: Side, k: usize) -> Rat {
    let nk = big(&two_pow_two_pow(k as u32));
    let small = (k % 2 == 0) == (side == Side::A);
    if small {
        Rat::one() / (&nk * &nk)
    } else {
        Rat::one() / nk
    }
}

/// Exact `sum_{j <= n_K} x_j` for one half of the min pair.
pub fn ex24min_partial_sum_through_block(side: Side, k_max: u32) -> Rat {
    // every term is dyadic: accumulate over the common denominator 2^(2^(K+1))
    let d = 1usize << (k_max + 1);
    let mut acc = BigInt::zero();
    let mut prev = BigInt::zero();
    for k in 0..=k_max {
        let nk = two_pow_two_pow(k);
        let small = (k % 2 == 0) == (side == Side::A);
        let e = if small { 1usize << (k + 1) } else { 1usize << k };
        acc += (&nk - &prev) << (d - e);
        prev = nk;
    }
    let t = (acc.trailing_zeros().unwrap_or(0) as usize).min(d);
    Rat::new_raw(acc >> t, BigInt::one() << (d - t))
}

pub(super) fn eval(node: &Node, i: usize) -> Result<Interval, SeqError> {
    let v = match node {
        Node::Ex220 => Rat::one() / fact_rat(ex220_block(i)),
        Node::Ex38 => Rat::one() / (from_usize(i) * fact_rat(ex38_block(i))),
        Node::Ex315 => ex315_value(ex315_block(i)),
        Node::Ex24Min(side) => ex24min_value(*side, ex24min_block(i)),
        Node::Ex24Split(side) => split_value(*side, i),
        Node::Ex415Eta => Rat::one() / (from_usize(i * i) * pow_rat(&int(3), i as u32)),
        _ => unreachable!("not a named leaf"),
    };
    Ok(Interval::point(v))
}

pub(super) fn values(node: &Node, n: usize) -> Result<Vec<Interval>, SeqError> {
    (1..=n).map(|i| eval(node, i)).collect()
}

/// `sum_{a <= j <= b} 1/j` enclosed by integral bounds; requires `2 <= a <= b`.
fn harmonic_block(a: &Rat, b: &Rat) -> Interval {
    let lo = ln_interval(&((b + Rat::one()) / a)).lo;
    let hi = ln_interval(&(b / (a - Rat::one()))).hi;
    Interval::new(lo, hi)
}

pub(super) fn tail_sum(node: &Node, n: usize) -> Result<Interval, SeqError> {
    match node {
        Node::Ex315 => {
            let k = ex315_block(n + 1);
            let end = if k == 2 { 2u128 } else { fact(k).expect("block end fits") };
            let mut acc = Interval::point(Rat::from_integer(BigInt::from(end - n as u128)) * ex315_value(k));
            let kk = k + 170;
            for j in k + 1..=kk {
                acc = acc.add(&Interval::point(rat(j as i64 - 1, j as i64) / pow_rat(&int(2), j as u32)));
            }
            let rem_hi = Rat::one() / pow_rat(&int(2), kk as u32);
            let rem_lo = &rem_hi * rat(kk as i64, kk as i64 + 1);
            Ok(acc.add(&Interval::new(rem_lo, rem_hi)).tidy())
        }
        Node::Ex38 => {
            let k = ex38_block(n + 1);
            let kf = fact_rat(k);
            let last = fact_rat(k + 1) - Rat::one();
            let first = from_usize(n + 1);
            let count = &last - &first + Rat::one();
            let mut acc = if count <= int(4096) || first <= int(1) {
                let mut s = Interval::zero();
                let hi = last.to_integer().to_usize().expect("small block");
                for j in n + 1..=hi {
                    s = s.add(&Interval::point(recip_usize(j))).tidy();
                }
                s
            } else {
                harmonic_block(&first, &last)
            }
            .scale(&(Rat::one() / &kf));
            let kk = k + 40;
            for j in k + 1..=kk {
                let a = fact_rat(j);
                let b = fact_rat(j + 1) - Rat::one();
                acc = acc.add(&harmonic_block(&a, &b).scale(&(Rat::one() / a))).tidy();
            }
            // each later block contributes at most (1 + ln(j+1))/j! <= (j+1)/j!
            let rem = from_usize(2 * (kk + 2)) / fact_rat(kk + 1);
            Ok(acc.add(&Interval::new(Rat::zero(), rem)).tidy())
        }
        Node::Ex415Eta => {
            let m = n + 64;
            let mut acc = Interval::zero();
            for j in n + 1..=m {
                acc = acc.add(&eval(node, j)?).tidy();
            }
            // consecutive terms shrink by at least a factor 3
            let next = eval(node, m + 1)?.hi * rat(3, 2);
            Ok(acc.add(&Interval::new(Rat::zero(), next)).tidy())
        }
        _ => unreachable!("no oracle"),
    }
}

fn pt(r: Rat) -> Interval {
    Interval::point(r)
}

/// `(sup, inf)` of `i * x_i` over `i >= n`.
pub(crate) fn ratio_tail(x: &Seq, n: usize) -> Result<(Ext, Interval), SeqError> {
    let no = || Err(SeqError::NoTailOracle(format!("div({x},omega)")));
    let phi = |i: usize| -> Result<Interval, SeqError> { Ok(x.eval(i)?.scale(&from_usize(i))) };
    let zero = Interval::zero();
    Ok(match x.node() {
        Node::Omega => (Ext::point(Rat::one()), pt(Rat::one())),
        Node::Const(c) if c.is_zero() => (Ext::point(Rat::zero()), zero),
        Node::Const(c) if c.is_positive() => (Ext::Inf, pt(c * from_usize(n))),
        Node::Zeta(1) => (Ext::point(Rat::one()), pt(Rat::one())),
        Node::Zeta(_) | Node::Ex38 | Node::Ex415Eta => (Ext::Fin(phi(n)?), zero),
        Node::Geometric(r) => {
            // i r^i increases while i < r/(1-r)
            let peak = ceil(&(r / (Rat::one() - r))).to_usize().unwrap_or(usize::MAX).max(n);
            let mut best = phi(n)?;
            for i in n + 1..=peak {
                best = best.max(&phi(i)?);
            }
            (Ext::Fin(best), zero)
        }
        Node::Expo(_) | Node::Log(_) => (Ext::Inf, phi(n)?),
        Node::OmLog(0) => (Ext::point(Rat::one()), pt(Rat::one())),
        Node::OmLog(_) => (Ext::Inf, phi(n)?),
        Node::Rsqrt => {
            let k = n.isqrt() + usize::from(n.isqrt() * n.isqrt() != n);
            let here = rat(n as i64, k as i64);
            let next = rat((k * k + 1) as i64, k as i64 + 1);
            (Ext::Inf, pt(if here < next { here } else { next }))
        }
        Node::Finite(v) => {
            let mut sup = Rat::zero();
            let mut inf: Option<Rat> = None;
            for (i, val) in v.iter().enumerate().skip(n.saturating_sub(1)) {
                let p = from_usize(i + 1) * val;
                if p > sup {
                    sup = p.clone();
                }
                inf = Some(match inf {
                    Some(m) if m <= p => m,
                    _ => p,
                });
            }
            let inf = match inf {
                Some(m) if m < Rat::zero() => m,
                _ => Rat::zero(),
            };
            (Ext::point(sup), pt(inf))
        }
        Node::Ex220 => {
            let k = ex220_block(n);
            let here = phi(n)?;
            // block starts ((j-1)!)^2 + 1 scaled by 1/j! increase from j = 3 on
            let mut inf = here;
            for j in k + 1..=(k + 1).max(3) {
                let s = fact_rat(j - 1);
                inf = inf.min(&pt((&s * &s + Rat::one()) / fact_rat(j)));
            }
            (Ext::Inf, inf)
        }
        Node::Ex315 => (Ext::point(Rat::one() / pow_rat(&int(2), ex315_block(n) as u32)), zero),
        Node::Ex24Min(_) | Node::Ex24Split(_) => (Ext::point(Rat::one()), zero),
        Node::Am(s) if s.traits().nonnegative => {
            let partial = s.values(n)?.iter().fold(Interval::zero(), |a, v| a.add(v).tidy());
            let sup = match s.tail_sum(n) {
                Ok(t) => Ext::Fin(partial.add(&t).tidy()),
                Err(_) if s.traits().summable == Summable::No => Ext::Inf,
                Err(e) => return Err(e),
            };
            (sup, partial)
        }
        Node::AmInf(s) if s.traits().nonnegative => (Ext::Fin(s.tail_sum(n)?), zero),
        Node::Scale(c, y) if !c.is_negative() => {
            let (s, i) = ratio_tail(y, n)?;
            (s.scale(c), i.scale(c))
        }
        Node::Ampl(m, y) => {
            let q = n.div_ceil(*m);
            let (s, i) = ratio_tail(y, q)?;
            let here = phi(n)?;
            (s.scale(&from_usize(*m)), Interval::new(i.lo.min(here.lo.clone()), here.hi))
        }
        Node::Min(a, b) => {
            let (sa, ia) = ratio_tail(a, n)?;
            let (sb, ib) = ratio_tail(b, n)?;
            let here = phi(n)?;
            let sup = match (sa, sb) {
                (Ext::Fin(p), Ext::Fin(q)) => Ext::Fin(Interval::new(here.lo.clone().min(p.hi.clone()), p.hi.min(q.hi))),
                (Ext::Fin(p), Ext::Inf) | (Ext::Inf, Ext::Fin(p)) => Ext::Fin(Interval::new(here.lo.clone().min(p.hi.clone()), p.hi)),
                _ => return no(),
            };
            (sup, ia.min(&ib))
        }
        _ => return no(),
    })
}

fn int_param(name: &str, params: &[Rat], idx: usize) -> Result<u32, SeqError> {
    let p = params.get(idx).ok_or_else(|| SeqError::BadParams(format!("{name} needs a parameter")))?;
    if !p.is_integer() || p.is_negative() {
        return Err(SeqError::BadParams(format!("{name} needs a nonnegative integer parameter")));
    }
    p.to_integer().to_u32().ok_or_else(|| SeqError::BadParams(format!("{name} parameter too large")))
}

fn expect_arity(name: &str, params: &[Rat], n: usize) -> Result<(), SeqError> {
    if params.len() == n {
        Ok(())
    } else {
        Err(SeqError::BadParams(format!("{name} takes {n} parameter(s), got {}", params.len())))
    }
}

/// Names accepted by [`corpus_seq`] with their parameter counts.
pub fn corpus_names() -> &'static [(&'static str, usize)] {
    &[
        ("omega", 0),
        ("const", 1),
        ("zeta", 1),
        ("geometric", 1),
        ("omlog", 1),
        ("expo", 1),
        ("pow3", 0),
        ("log", 1),
        ("rsqrt", 0),
        ("zero", 0),
        ("e1", 0),
        ("ex220", 0),
        ("ex38", 0),
        ("ex315", 0),
        ("ex24min_a", 0),
        ("ex24min_b", 0),
        ("ex24split_a", 0),
        ("ex24split_b", 0),
        ("ex415eta", 0),
    ]
}

pub fn corpus_seq(name: &str, params: &[Rat]) -> Result<Seq, SeqError> {
    let arity = corpus_names()
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| *a)
        .ok_or_else(|| SeqError::UnknownName(name.to_string()))?;
    expect_arity(name, params, arity)?;
    let null_dec = |s| Traits::decreasing_null(s);
    Ok(match name {
        "omega" => Seq::omega(),
        "const" => Seq::constant(params[0].clone()),
        "zero" => Seq::zero(),
        "zeta" => {
            let p = int_param(name, params, 0)?;
            if p == 0 {
                return Err(SeqError::BadParams("zeta needs p >= 1".into()));
            }
            Seq::zeta(p)
        }
        "geometric" => {
            let r = &params[0];
            if !r.is_positive() || *r >= Rat::one() {
                return Err(SeqError::BadParams("geometric needs 0 < r < 1".into()));
            }
            Seq::geometric(r.clone())
        }
        "omlog" => Seq::omlog(int_param(name, params, 0)?),
        "log" => Seq::log_pow(int_param(name, params, 0)?),
        "expo" => {
            if params[0] < Rat::one() {
                return Err(SeqError::BadParams("expo needs b >= 1".into()));
            }
            Seq::expo(params[0].clone())
        }
        "pow3" => Seq::expo(int(3)),
        "rsqrt" => Seq::rsqrt(),
        "e1" => Seq::e1(),
        "ex220" => Seq::leaf(Node::Ex220, null_dec(Summable::No)),
        "ex38" => Seq::leaf(Node::Ex38, null_dec(Summable::Yes)),
        "ex315" => Seq::leaf(Node::Ex315, null_dec(Summable::Yes)),
        "ex24min_a" => Seq::leaf(Node::Ex24Min(Side::A), null_dec(Summable::No)),
        "ex24min_b" => Seq::leaf(Node::Ex24Min(Side::B), null_dec(Summable::No)),
        "ex24split_a" => Seq::leaf(Node::Ex24Split(Side::A), null_dec(Summable::No)),
        "ex24split_b" => Seq::leaf(Node::Ex24Split(Side::B), null_dec(Summable::No)),
        "ex415eta" => Seq::leaf(Node::Ex415Eta, null_dec(Summable::Yes)),
        _ => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::parse_rat;
    use crate::seq::{check_monotone, materialize, Prefix};

    fn named(n: &str) -> Seq {
        corpus_seq(n, &[]).unwrap()
    }

    #[test]
    fn ex220_prefix() {
        let p = materialize(&named("ex220"), 5).unwrap();
        assert_eq!(p, Prefix::from_ratios(&[(1, 1), (1, 2), (1, 2), (1, 2), (1, 6)]));
        assert_eq!(named("ex220").eval(36).unwrap(), pt(rat(1, 6)));
        assert_eq!(named("ex220").eval(37).unwrap(), pt(rat(1, 24)));
    }

    #[test]
    fn ex38_values() {
        let x = named("ex38");
        assert_eq!(x.eval(2).unwrap(), pt(rat(1, 4)));
        assert_eq!(x.eval(5).unwrap(), pt(rat(1, 10)));
        assert_eq!(x.eval(6).unwrap(), pt(rat(1, 36)));
        check_monotone(&x, 800).unwrap();
    }

    #[test]
    fn ex315_values_and_total() {
        let x = named("ex315");
        assert_eq!(x.eval(1).unwrap(), pt(rat(1, 8)));
        assert_eq!(x.eval(2).unwrap(), pt(rat(1, 8)));
        assert_eq!(x.eval(3).unwrap(), pt(rat(1, 48)));
        assert_eq!(x.eval(7).unwrap(), pt(rat(1, 384)));
        let t = x.tail_sum(1).unwrap();
        // sum_{j>=2} = 1 - ln 2
        let one_minus_ln2 = Rat::one() - parse_rat("0.693147180559945309417232121458").unwrap();
        assert!((t.mid() - one_minus_ln2).abs() < rat(1, 10_i64.pow(18)));
        assert!(t.width() < Rat::one() / pow_rat(&int(10), 40));
    }

    #[test]
    fn ex315_tail_matches_explicit_sum() {
        let x = named("ex315");
        let total = x.tail_sum(0).unwrap();
        let v = x.values(5000).unwrap();
        let head = v.iter().fold(Interval::zero(), |a, b| a.add(b));
        let rest = x.tail_sum(5000).unwrap();
        assert!(total.contains_interval(&head.add(&rest)) || head.add(&rest).contains_interval(&total) || !total.certainly_lt(&head.add(&rest)));
        assert!(head.add(&rest).width() < rat(1, 1_000_000));
        assert!((head.add(&rest).mid() - total.mid()).abs() < Rat::one() / pow_rat(&int(10), 30));
    }

    #[test]
    fn ex38_tail_matches_explicit_sum() {
        let x = named("ex38");
        let total = x.tail_sum(0).unwrap();
        let v = x.values(720).unwrap();
        let head = v.iter().fold(Interval::zero(), |a, b| a.add(b));
        let rest = x.tail_sum(720).unwrap();
        let sum = head.add(&rest);
        assert!(!(sum.hi < total.lo || total.hi < sum.lo));
    }

    #[test]
    fn ex415eta_tail() {
        let x = named("ex415eta");
        let t = x.tail_sum(2).unwrap();
        let direct = (3..=66).fold(Rat::zero(), |a, j| a + x.eval(j).unwrap().lo);
        assert!(t.lo <= direct && direct <= t.hi);
        assert!(t.width() < x.eval(66).unwrap().lo);
    }

    #[test]
    fn ex24min_blocks() {
        let a = named("ex24min_a");
        let b = named("ex24min_b");
        // block 0 = [1,2] has n_0 = 2; a is small (1/4) there
        assert_eq!(a.eval(1).unwrap(), pt(rat(1, 4)));
        assert_eq!(b.eval(2).unwrap(), pt(rat(1, 2)));
        assert_eq!(a.eval(3).unwrap(), pt(rat(1, 4)));
        assert_eq!(b.eval(3).unwrap(), pt(rat(1, 16)));
        check_monotone(&a, 70_000).unwrap();
        check_monotone(&b, 70_000).unwrap();
        assert!(ex24min_partial_sum_through_block(Side::A, 21) > int(10));
        assert!(ex24min_partial_sum_through_block(Side::B, 21) > int(10));
    }

    #[test]
    fn corpus_errors() {
        assert!(matches!(corpus_seq("nope", &[]), Err(SeqError::UnknownName(_))));
        assert!(matches!(corpus_seq("geometric", &[int(2)]), Err(SeqError::BadParams(_))));
        assert!(matches!(corpus_seq("zeta", &[]), Err(SeqError::BadParams(_))));
    }

    #[test]
    fn ratio_tails_ex220() {
        let x = named("ex220");
        let (s, i) = ratio_tail(&x, 5).unwrap();
        assert_eq!(s, Ext::Inf);
        // phi_5 = 5/6, next block start 37/24
        assert_eq!(i, pt(rat(5, 6)));
        let (_, i2) = ratio_tail(&x, 30).unwrap();
        assert_eq!(i2, pt(rat(37, 24)));
    }
}
