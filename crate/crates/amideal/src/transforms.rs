//! Arithmetic mean and arithmetic mean at infinity, their inverses,
//! ampliation and contraction, and the block constructions that flatten a
//! sequence while keeping its mean within a constant factor.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::num::{from_usize, int, rat, recip_usize, Interval, Rat};
use crate::seq::{tail_sum_bounds, Blocks, Prefix, Seq, SeqError, Summable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{0} is not summable")]
    NotSummable(String),
    #[error("no tail oracle for {0}")]
    NoTailOracle(String),
    #[error("entry {0} is not a point interval")]
    NonPointInterval(usize),
    #[error("blocks end at {0} but the prefix has length {1}")]
    BlocksOutOfRange(usize, usize),
    #[error("block hypothesis fails at block {0}")]
    HypothesisViolated(usize),
    #[error("nonpositive entry at index {0}")]
    NonpositiveEntry(usize),
    #[error("tail bound not certified at index {0}")]
    BoundNotCertified(usize),
    #[error(transparent)]
    Seq(SeqError),
}

impl From<SeqError> for TransformError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::NotSummable(s) => TransformError::NotSummable(s),
            SeqError::NoTailOracle(s) => TransformError::NoTailOracle(s),
            e => TransformError::Seq(e),
        }
    }
}

/// `(1/n) sum_{i<=n} p_i`, same length.
pub fn am(p: &Prefix) -> Prefix {
    let out: Vec<Rat> = p.partial_sums().into_iter().enumerate().map(|(i, s)| s / from_usize(i + 1)).collect();
    let out = Prefix::new(out);
    if p.is_nonnegative() && p.is_nonincreasing() {
        debug_assert!(out.is_nonincreasing());
    }
    out
}

/// Telescoping inverse of [`am`]: `eta_n = n p_n - (n-1) p_{n-1}`.
pub fn mean_inverse(p: &Prefix) -> Prefix {
    let v = p.values();
    Prefix::new(
        (0..v.len())
            .map(|i| if i == 0 { v[0].clone() } else { from_usize(i + 1) * &v[i] - from_usize(i) * &v[i - 1] })
            .collect(),
    )
}

/// Arithmetic mean at infinity on `[1, N]`, split into an exact finite part
/// and a shared tail: entry `n` is `head_n + tail / n` with
/// `head_n = (1/n) sum_{n<j<=N} s_j` and `tail ∋ sum_{j>N} s_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailedPrefix {
    pub values: Prefix,
    pub tail: Interval,
    /// the tail is only the partial sum up to a truncation horizon
    pub truncated: bool,
}

impl TailedPrefix {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn enclosures(&self) -> Vec<Interval> {
        self.values
            .values()
            .iter()
            .enumerate()
            .map(|(i, h)| Interval::point(h.clone()).add(&self.tail.scale(&recip_usize(i + 1))))
            .collect()
    }
}

/// `am_inf(s)` on `[1, n]`. Without a tail oracle a truncation horizon may
/// be given; the result is then flagged as a lower bound.
pub fn am_inf(s: &Seq, n: usize, truncation: Option<usize>) -> Result<TailedPrefix, TransformError> {
    if s.traits().summable == Summable::No {
        return Err(TransformError::NotSummable(s.to_string()));
    }
    let t = tail_sum_bounds(s, n, truncation)?;
    let v = s.values(n)?;
    let mut exact = Vec::with_capacity(n);
    for (i, x) in v.iter().enumerate() {
        exact.push(x.exact().cloned().ok_or(TransformError::NonPointInterval(i + 1))?);
    }
    let mut acc = Rat::zero();
    let mut head = vec![Rat::zero(); n];
    for i in (1..=n).rev() {
        head[i - 1] = &acc / from_usize(i);
        acc += &exact[i - 1];
    }
    Ok(TailedPrefix { values: Prefix::new(head), tail: t.bound, truncated: t.truncated })
}

/// Recovers `eta_2..eta_N` from point values of `am_inf(eta)` on `[1, N]`.
/// Index 1 is not determined and is left out: entry `i` of the result is `eta_{i+2}`.
pub fn mean_inf_inverse(p: &[Interval]) -> Result<Prefix, TransformError> {
    let mut v = Vec::with_capacity(p.len());
    for (i, x) in p.iter().enumerate() {
        v.push(x.exact().cloned().ok_or(TransformError::NonPointInterval(i + 1))?);
    }
    Ok(telescope_inf(&v))
}

fn telescope_inf(v: &[Rat]) -> Prefix {
    Prefix::new((1..v.len()).map(|n| from_usize(n) * &v[n - 1] - from_usize(n + 1) * &v[n]).collect())
}

/// As [`mean_inf_inverse`], exact even when the tail is an interval: the
/// tail cancels in each difference.
pub fn mean_inf_inverse_tailed(tp: &TailedPrefix) -> Prefix {
    telescope_inf(tp.values.values())
}

/// `D_m`: each entry repeated `m` times; length `m N`.
pub fn ampliate(m: usize, p: &Prefix) -> Prefix {
    assert!(m >= 1);
    Prefix::new(p.values().iter().flat_map(|x| std::iter::repeat_n(x.clone(), m)).collect())
}

/// `D_{1/m}`: entries at multiples of `m`; length `floor(N/m)`.
pub fn contract(m: usize, p: &Prefix) -> Prefix {
    assert!(m >= 1);
    Prefix::new(p.values().iter().skip(m - 1).step_by(m).cloned().collect())
}

/// Running min of `beta * xi` with `beta = k` on block `k`; indices past the
/// last block get `k = #blocks + 1`.
pub fn step_boost(xi: &Prefix, blocks: &Blocks) -> Result<Prefix, TransformError> {
    if blocks.last() > xi.len() {
        return Err(TransformError::BlocksOutOfRange(blocks.last(), xi.len()));
    }
    let ranges = blocks.ranges();
    let beta = |i: usize| ranges.iter().position(|&(a, b)| a <= i && i <= b).map(|k| k + 1).unwrap_or(ranges.len() + 1);
    let mut out: Vec<Rat> = Vec::with_capacity(xi.len());
    for i in 1..=xi.len() {
        let v = from_usize(beta(i)) * xi.at(i);
        let v = match out.last() {
            Some(p) if *p < v => p.clone(),
            _ => v,
        };
        out.push(v);
    }
    Ok(Prefix::new(out))
}

fn density_ok_am(prefix_sums: &[Rat], a: usize, b: usize) -> bool {
    // average of eta over (a, b] >= half of (eta_a)_b
    let block = &prefix_sums[b] - &prefix_sums[a];
    let mean_b = &prefix_sums[b] / from_usize(b);
    block * int(2) >= mean_b * from_usize(b - a)
}

fn sums_with_zero(p: &Prefix) -> Vec<Rat> {
    let mut v = vec![Rat::zero()];
    v.extend(p.partial_sums());
    v
}

/// Flattens `eta` to `(eta_a)_{n_k}` on block `k` after validating the block density hypothesis.
pub fn block_flatten_am(eta: &Prefix, blocks: &Blocks) -> Result<Prefix, TransformError> {
    if blocks.last() > eta.len() {
        return Err(TransformError::BlocksOutOfRange(blocks.last(), eta.len()));
    }
    let s = sums_with_zero(eta);
    let mut out = Vec::with_capacity(blocks.last());
    for (k, (a, b)) in blocks.ranges().into_iter().enumerate() {
        if !density_ok_am(&s, a - 1, b) {
            return Err(TransformError::HypothesisViolated(k + 1));
        }
        let v = &s[b] / from_usize(b);
        out.extend(std::iter::repeat_n(v, b - a + 1));
    }
    Ok(Prefix::new(out))
}

/// Fewest blocks covering `[1, N]` that satisfy the density hypothesis of [`block_flatten_am`].
pub fn find_blocks_am(eta: &Prefix) -> Option<Blocks> {
    let n = eta.len();
    let s = sums_with_zero(eta);
    let mut best: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    best[0] = Some((0, 0));
    for b in 1..=n {
        for a in 0..b {
            if let Some((cnt, _)) = best[a] {
                if density_ok_am(&s, a, b) && best[b].is_none_or(|(c, _)| cnt + 1 < c) {
                    best[b] = Some((cnt + 1, a));
                }
            }
        }
    }
    best[n]?;
    let mut ends = Vec::new();
    let mut e = n;
    while e > 0 {
        ends.push(e);
        e = best[e].unwrap().1;
    }
    ends.reverse();
    Blocks::new(ends).ok()
}

/// Tail sums `sum_{j>i} eta_j` for `i = 0..=n` as enclosures.
fn tails_upto(eta: &Seq, n: usize) -> Result<Vec<Interval>, TransformError> {
    let v = eta.values(n)?;
    let mut t = eta.tail_sum(n)?;
    let mut out = vec![Interval::zero(); n + 1];
    for i in (0..=n).rev() {
        out[i] = t.clone();
        if i > 0 {
            t = t.add(&v[i - 1]).tidy();
        }
    }
    Ok(out)
}

fn density_ok_aminf(tails: &[Interval], a: usize, b: usize) -> bool {
    // sum over (a, b] >= half the tail after a, certified
    let direct_lo = &tails[a].lo - &tails[b].hi;
    let half_tail = &tails[a].hi * rat(1, 2);
    direct_lo >= half_tail
}

/// Block sums `sum_{a<j<=b} eta_j` computed exactly from point values.
fn exact_block_ok(vals: &[Interval], tails: &[Interval], a: usize, b: usize) -> bool {
    let mut s = Interval::zero();
    for x in &vals[a..b] {
        s = s.add(x);
    }
    s.lo * int(2) >= tails[a].hi.clone() || density_ok_aminf(tails, a, b)
}

/// Flattens `eta` to `(eta_{a_inf})_{n_k}` on block `k` (zero past the
/// last block) and certifies `sum_{i>j} xi_i <= 3 sum_{i>j} eta_i` for `j <= N`.
pub fn block_flatten_aminf(eta: &Seq, blocks: &Blocks, n: usize) -> Result<Vec<Interval>, TransformError> {
    if eta.traits().summable == Summable::No {
        return Err(TransformError::NotSummable(eta.to_string()));
    }
    let last = blocks.last();
    let top = last.max(n);
    let tails = tails_upto(eta, top)?;
    let vals = eta.values(top)?;
    let mut xi = Vec::with_capacity(last);
    for (k, (a, b)) in blocks.ranges().into_iter().enumerate() {
        if !exact_block_ok(&vals, &tails, a - 1, b) {
            return Err(TransformError::HypothesisViolated(k + 1));
        }
        let v = tails[b].scale(&recip_usize(b)).tidy();
        xi.extend(std::iter::repeat_n(v, b - a + 1));
    }
    // tails of xi, checked against three times the tails of eta
    let mut acc = Interval::zero();
    let mut xt = vec![Interval::zero(); last + 1];
    for j in (0..last).rev() {
        acc = acc.add(&xi[j]).tidy();
        xt[j] = acc.clone();
    }
    for j in 1..=n {
        let lhs = if j <= last { &xt[j] } else { &xt[last] };
        if !(lhs.hi <= &tails[j].lo * int(3)) {
            return Err(TransformError::BoundNotCertified(j));
        }
    }
    Ok(xi)
}

/// Fewest blocks covering `[1, N]` satisfying the hypothesis of [`block_flatten_aminf`].
pub fn find_blocks_aminf(eta: &Seq, n: usize) -> Result<Option<Blocks>, TransformError> {
    let tails = tails_upto(eta, n)?;
    let vals = eta.values(n)?;
    let mut best: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    best[0] = Some((0, 0));
    for a in 0..n {
        let Some((cnt, _)) = best[a] else { continue };
        let mut s = Interval::zero();
        for b in a + 1..=n {
            s = s.add(&vals[b - 1]).tidy();
            let ok = &s.lo * int(2) >= tails[a].hi;
            if ok && best[b].is_none_or(|(c, _)| cnt + 1 < c) {
                best[b] = Some((cnt + 1, a));
            }
        }
    }
    if best[n].is_none() {
        return Ok(None);
    }
    let mut ends = Vec::new();
    let mut e = n;
    while e > 0 {
        ends.push(e);
        e = best[e].unwrap().1;
    }
    ends.reverse();
    Ok(Blocks::new(ends).ok())
}

/// `gamma_n = min(gamma_{n-1} eta_{n-1}, beta_n eta_n) / eta_n` with `beta`
/// first replaced by its tail-inf envelope on the window.
pub fn gamma_monotonize(eta: &Prefix, beta: &Prefix) -> Result<Prefix, TransformError> {
    assert_eq!(eta.len(), beta.len(), "equal lengths");
    for (i, x) in eta.values().iter().enumerate() {
        if !x.is_positive() {
            return Err(TransformError::NonpositiveEntry(i + 1));
        }
    }
    for (i, x) in beta.values().iter().enumerate() {
        if !x.is_positive() {
            return Err(TransformError::NonpositiveEntry(i + 1));
        }
    }
    let b = crate::envelopes::envelope_prefix(crate::seq::EnvMode::Lnd, beta).values;
    let mut g: Vec<Rat> = Vec::with_capacity(eta.len());
    for i in 1..=eta.len() {
        let cand = b.at(i) * eta.at(i);
        let v = match g.last() {
            None => b.at(1).clone(),
            Some(prev) => {
                let carried = prev * eta.at(i - 1);
                (if carried < cand { carried } else { cand }) / eta.at(i)
            }
        };
        g.push(v);
    }
    Ok(Prefix::new(g))
}

/// Pointwise product of prefixes.
pub fn times(a: &Prefix, b: &Prefix) -> Prefix {
    Prefix::new(a.values().iter().zip(b.values()).map(|(x, y)| x * y).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{corpus_seq, materialize};

    fn p(v: &[(i64, i64)]) -> Prefix {
        Prefix::from_ratios(v)
    }

    #[test]
    fn am_examples() {
        assert_eq!(am(&p(&[(1, 1), (1, 2), (1, 3)])), p(&[(1, 1), (3, 4), (11, 18)]));
        assert_eq!(am(&Prefix::from_ints(&[7, 7, 7])), Prefix::from_ints(&[7, 7, 7]));
        assert_eq!(am(&Prefix::from_ints(&[1, 0, 0, 0])), p(&[(1, 1), (1, 2), (1, 3), (1, 4)]));
        assert_eq!(mean_inverse(&p(&[(1, 1), (3, 4), (11, 18)])), p(&[(1, 1), (1, 2), (1, 3)]));
        assert_eq!(mean_inverse(&p(&[(1, 1), (1, 2), (1, 3)])), Prefix::from_ints(&[1, 0, 0]));
    }

    #[test]
    fn am_inf_examples() {
        let g = am_inf(&Seq::geometric(rat(1, 2)), 3, None).unwrap();
        let pts: Vec<Interval> = [(1, 2), (1, 8), (1, 24)].iter().map(|&(a, b)| Interval::point(rat(a, b))).collect();
        assert_eq!(g.enclosures(), pts);
        let shifted = Seq::finite(vec![int(0), int(1)]);
        let s = am_inf(&shifted, 2, None).unwrap();
        assert_eq!(s.enclosures(), vec![Interval::point(int(1)), Interval::zero()]);
        assert!(matches!(am_inf(&Seq::omega(), 3, None), Err(TransformError::NotSummable(_))));
    }

    #[test]
    fn am_inf_inverse_examples() {
        let e = mean_inf_inverse(&[Interval::point(rat(1, 2)), Interval::point(rat(1, 8))]).unwrap();
        assert_eq!(e, p(&[(1, 4)]));
        let e = mean_inf_inverse(&[Interval::point(int(1)), Interval::zero()]).unwrap();
        assert_eq!(e, Prefix::from_ints(&[1]));
        let z = am_inf(&Seq::zeta(2), 10, None).unwrap();
        let back = mean_inf_inverse_tailed(&z);
        let want: Vec<Rat> = (2..=10).map(|n| rat(1, n * n)).collect();
        assert_eq!(back.values(), &want[..]);
        assert!(matches!(mean_inf_inverse(&z.enclosures()), Err(TransformError::NonPointInterval(1))));
    }

    #[test]
    fn ampliate_contract() {
        assert_eq!(ampliate(2, &p(&[(1, 1), (1, 2)])), p(&[(1, 1), (1, 1), (1, 2), (1, 2)]));
        assert_eq!(ampliate(3, &Prefix::from_ints(&[5])), Prefix::from_ints(&[5, 5, 5]));
        assert_eq!(contract(2, &p(&[(1, 1), (1, 2), (1, 3), (1, 4)])), p(&[(1, 2), (1, 4)]));
        let q = p(&[(1, 1), (1, 2)]);
        assert_eq!(contract(2, &ampliate(2, &q)), q);
        assert_eq!(contract(1, &q), q);
    }

    #[test]
    fn step_boost_examples() {
        let xi = p(&[(1, 2), (1, 4), (1, 8), (1, 16)]);
        let b = Blocks::new(vec![2, 4]).unwrap();
        assert_eq!(step_boost(&xi, &b).unwrap(), p(&[(1, 2), (1, 4), (1, 4), (1, 8)]));
        let c = Prefix::from_ints(&[3, 3, 3, 3]);
        assert_eq!(step_boost(&c, &b).unwrap(), c);
        let g = materialize(&Seq::geometric(rat(1, 2)), 8).unwrap();
        let b = Blocks::new(vec![2, 4, 8]).unwrap();
        let eta = step_boost(&g, &b).unwrap();
        for (k, (lo, hi)) in b.ranges().into_iter().enumerate() {
            for i in lo..=hi {
                assert!(eta.at(i) >= &(from_usize(k) * g.at(i)));
            }
        }
        assert!(matches!(step_boost(&g, &Blocks::new(vec![9]).unwrap()), Err(TransformError::BlocksOutOfRange(9, 8))));
    }

    #[test]
    fn flatten_am_omega() {
        let w = materialize(&Seq::omega(), 64).unwrap();
        let dyadic = Blocks::new(vec![1, 2, 4, 8, 16, 32, 64]).unwrap();
        assert_eq!(block_flatten_am(&w, &dyadic), Err(TransformError::HypothesisViolated(4)));
        let blocks = find_blocks_am(&w).unwrap();
        let xi = block_flatten_am(&w, &blocks).unwrap();
        let (xa, wa) = (am(&xi), am(&w));
        for i in 1..=64 {
            assert!(xa.at(i) <= &(int(2) * wa.at(i)));
        }
        let c = Prefix::from_ints(&[2, 2]);
        let f = block_flatten_am(&c, &Blocks::new(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(f, c);
        assert_eq!(am(&f), am(&c));
    }

    #[test]
    fn flatten_am_ex220() {
        let x = materialize(&corpus_seq("ex220", &[]).unwrap(), 36).unwrap();
        let b = find_blocks_am(&x).unwrap();
        let xi = block_flatten_am(&x, &b).unwrap();
        let (xa, ya) = (am(&xi), am(&x));
        for i in 1..=36 {
            assert!(xa.at(i) <= &(int(2) * ya.at(i)));
        }
    }

    #[test]
    fn flatten_aminf_examples() {
        let g = Seq::geometric(rat(1, 2));
        let b = Blocks::new((1..=20).collect()).unwrap();
        let xi = block_flatten_aminf(&g, &b, 20).unwrap();
        assert_eq!(xi.len(), 20);
        let mass = Seq::e1();
        let xi = block_flatten_aminf(&mass, &Blocks::new(vec![1]).unwrap(), 1).unwrap();
        assert_eq!(xi, vec![Interval::zero()]);
        let x38 = corpus_seq("ex38", &[]).unwrap();
        let b = find_blocks_aminf(&x38, 120).unwrap().unwrap();
        block_flatten_aminf(&x38, &b, 120).unwrap();
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_monotonize(&p(&[(1, 1), (1, 4), (1, 9)]), &Prefix::from_ints(&[1, 2, 3])).unwrap();
        assert_eq!(g, Prefix::from_ints(&[1, 2, 3]));
        assert_eq!(times(&g, &p(&[(1, 1), (1, 4), (1, 9)])), p(&[(1, 1), (1, 2), (1, 3)]));
        let g = gamma_monotonize(&p(&[(1, 1), (1, 2)]), &Prefix::from_ints(&[1, 1])).unwrap();
        assert_eq!(g, Prefix::from_ints(&[1, 1]));
        let w = materialize(&Seq::omega(), 1000).unwrap();
        let beta = Prefix::new((1..=1000).map(from_usize).collect());
        let g = gamma_monotonize(&w, &beta).unwrap();
        assert!(g.values().windows(2).all(|x| x[0] <= x[1]));
        assert!(times(&g, &w).is_nonincreasing());
        assert!(g.at(1000) > g.at(1));
        assert!(matches!(gamma_monotonize(&Prefix::from_ints(&[1, 0]), &Prefix::from_ints(&[1, 1])), Err(TransformError::NonpositiveEntry(2))));
    }
}
