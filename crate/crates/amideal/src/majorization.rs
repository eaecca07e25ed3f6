//! Splitting of dominated sums, substochastic matrices realizing weak
//! majorization, rearrangements and the doubled-rearrangement bound.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::num::{fmt_rat, Rat};
use crate::seq::Prefix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MajError {
    #[error("hypothesis violated at index {0}")]
    HypothesisViolated(usize),
    #[error("not majorized at index {0}")]
    NotMajorized(usize),
    #[error("negative entry at index {0}")]
    NegativeEntry(usize),
    #[error("input not nonincreasing at index {0}")]
    NotMonotone(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not substochastic: {0}")]
    NotSubstochastic(String),
    #[error("not an injection: {0}")]
    NotInjective(String),
    #[error("T-transform chain exceeded {0} steps")]
    ChainTooLong(usize),
}

/// Sparse nonnegative matrix with row and column sums at most one.
/// Keys are 0-based `(row, col)`.
#[derive(Clone, PartialEq)]
pub struct SubstochasticMatrix {
    entries: BTreeMap<(usize, usize), Rat>,
    nrows: usize,
    ncols: usize,
}

impl SubstochasticMatrix {
    pub fn new(
        nrows: usize,
        ncols: usize,
        entries: BTreeMap<(usize, usize), Rat>,
    ) -> Result<SubstochasticMatrix, MajError> {
        let m = SubstochasticMatrix { entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(), nrows, ncols };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(n: usize) -> SubstochasticMatrix {
        let entries = (0..n).map(|i| ((i, i), Rat::one())).collect();
        SubstochasticMatrix { entries, nrows: n, ncols: n }
    }

    pub fn zero(nrows: usize, ncols: usize) -> SubstochasticMatrix {
        SubstochasticMatrix { entries: BTreeMap::new(), nrows, ncols }
    }

    pub fn diagonal(d: &[Rat]) -> Result<SubstochasticMatrix, MajError> {
        let entries = d.iter().enumerate().map(|(i, v)| ((i, i), v.clone())).collect();
        SubstochasticMatrix::new(d.len(), d.len(), entries)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero entries as 1-based `(row, col, value)` triplets in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Rat)> {
        self.entries.iter().map(|(&(i, j), v)| (i + 1, j + 1, v.clone())).collect()
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        let mut s = vec![Rat::zero(); self.nrows];
        for (&(i, _), v) in &self.entries {
            s[i] += v;
        }
        s
    }

    pub fn col_sums(&self) -> Vec<Rat> {
        let mut s = vec![Rat::zero(); self.ncols];
        for (&(_, j), v) in &self.entries {
            s[j] += v;
        }
        s
    }

    pub fn validate(&self) -> Result<(), MajError> {
        for (&(i, j), v) in &self.entries {
            if i >= self.nrows || j >= self.ncols {
                return Err(MajError::NotSubstochastic(format!("entry ({}, {}) out of range", i + 1, j + 1)));
            }
            if *v < Rat::zero() {
                return Err(MajError::NotSubstochastic(format!("negative entry at ({}, {})", i + 1, j + 1)));
            }
        }
        for (k, s) in self.row_sums().iter().enumerate() {
            if *s > Rat::one() {
                return Err(MajError::NotSubstochastic(format!("row {} sums to {}", k + 1, fmt_rat(s))));
            }
        }
        for (k, s) in self.col_sums().iter().enumerate() {
            if *s > Rat::one() {
                return Err(MajError::NotSubstochastic(format!("column {} sums to {}", k + 1, fmt_rat(s))));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SubstochasticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubstochasticMatrix({}x{}", self.nrows, self.ncols)?;
        for (i, j, v) in self.triplets() {
            write!(f, " ({},{},{})", i, j, fmt_rat(&v))?;
        }
        write!(f, ")")
    }
}

/// An injection on `[1, N]`, stored 1-based: position `i` maps to `image[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Permutation, MajError> {
        let mut seen = std::collections::HashSet::new();
        for &k in &image {
            if k == 0 || !seen.insert(k) {
                return Err(MajError::NotInjective(format!("{:?}", image)));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (1..=n).collect() }
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Permutation {
        let mut image: Vec<usize> = (1..=n).collect();
        image.swap(a - 1, b - 1);
        Permutation { image }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &k)| k == i + 1)
    }
}

fn check_nonneg(p: &Prefix) -> Result<(), MajError> {
    match p.values().iter().position(|v| *v < Rat::zero()) {
        Some(i) => Err(MajError::NegativeEntry(i + 1)),
        None => Ok(()),
    }
}

fn check_len(a: &Prefix, b: &Prefix) -> Result<(), MajError> {
    if a.len() != b.len() {
        return Err(MajError::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Splits `xi = eta~ + mu~` so that the partial sums of `eta~` and `mu~`
/// dominate those of `eta` and `mu`, given `H_k + M_k <= X_k` for all k.
pub fn lemma31_split(xi: &Prefix, eta: &Prefix, mu: &Prefix) -> Result<(Prefix, Prefix), MajError> {
    check_len(xi, eta)?;
    check_len(xi, mu)?;
    check_nonneg(xi)?;
    check_nonneg(eta)?;
    check_nonneg(mu)?;
    let (x, h, m) = (xi.partial_sums(), eta.partial_sums(), mu.partial_sums());
    for k in 0..x.len() {
        if h[k].clone() + &m[k] > x[k] {
            return Err(MajError::HypothesisViolated(k + 1));
        }
    }
    let (a, b) = split_rec(xi.values(), eta.values(), mu.values());
    Ok((Prefix::new(a), Prefix::new(b)))
}

fn split_rec(xi: &[Rat], eta: &[Rat], mu: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let n = xi.len();
    if n == 0 {
        return (vec![], vec![]);
    }
    // leading zeros of xi force zeros in eta and mu
    let z = xi.iter().take_while(|v| v.is_zero()).count();
    if z > 0 {
        let (mut a, mut b) = (vec![Rat::zero(); z], vec![Rat::zero(); z]);
        let (ra, rb) = split_rec(&xi[z..], &eta[z..], &mu[z..]);
        a.extend(ra);
        b.extend(rb);
        return (a, b);
    }
    if n == 1 {
        return (vec![xi[0].clone() - &mu[0]], vec![mu[0].clone()]);
    }
    let (mut sx, mut sd) = (Rat::zero(), Rat::zero());
    let (mut gamma, mut arg) = (Rat::zero(), 0);
    for k in 0..n {
        sx += &xi[k];
        sd += eta[k].clone() + &mu[k];
        let r = sd.clone() / &sx;
        if r > gamma {
            gamma = r;
            arg = k + 1;
        }
    }
    if gamma.is_zero() {
        return (xi.to_vec(), vec![Rat::zero(); n]);
    }
    if arg == n {
        // the maximum sits only at the end, leaving no smaller subproblem
        return split_reachable(xi, eta, mu);
    }
    let scaled: Vec<Rat> = xi.iter().map(|v| v * &gamma).collect();
    let (mut a, mut b) = split_rec(&scaled[..arg], &eta[..arg], &mu[..arg]);
    let (ra, rb) = split_rec(&scaled[arg..], &eta[arg..], &mu[arg..]);
    a.extend(ra);
    b.extend(rb);
    let inv = gamma.recip();
    for k in 0..n {
        a[k] = &a[k] * &inv;
        b[k] = &b[k] * &inv;
    }
    (a, b)
}

/// Direct construction: track the reachable interval of `H~_k` subject to
/// `H_k <= H~_k <= X_k - M_k` and `0 <= eta~_k <= xi_k`, then backtrack.
fn split_reachable(xi: &[Rat], eta: &[Rat], mu: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let n = xi.len();
    let (mut x, mut h, mut m) = (Rat::zero(), Rat::zero(), Rat::zero());
    let mut reach: Vec<(Rat, Rat)> = Vec::with_capacity(n + 1);
    reach.push((Rat::zero(), Rat::zero()));
    for k in 0..n {
        x += &xi[k];
        h += &eta[k];
        m += &mu[k];
        let (lo, hi) = reach[k].clone();
        let lo = std::cmp::max(lo, h.clone());
        let hi = std::cmp::min(hi + &xi[k], x.clone() - &m);
        reach.push((lo, hi));
    }
    let mut t = reach[n].1.clone();
    let mut a = vec![Rat::zero(); n];
    for k in (1..=n).rev() {
        let (lo, hi) = &reach[k - 1];
        let prev = std::cmp::max(lo.clone(), std::cmp::min(hi.clone(), t.clone()));
        a[k - 1] = t - &prev;
        t = prev;
    }
    let b = xi.iter().zip(&a).map(|(x, a)| x - a).collect();
    (a, b)
}

/// A substochastic `P` with `P xi = eta` for nonincreasing nonnegative
/// `eta`, `xi` whose partial sums satisfy `H_k <= X_k`.
pub fn markus_matrix(eta: &Prefix, xi: &Prefix) -> Result<SubstochasticMatrix, MajError> {
    check_len(eta, xi)?;
    check_nonneg(eta)?;
    check_nonneg(xi)?;
    for p in [eta, xi] {
        if let Some(i) = (1..p.len()).find(|&i| p.values()[i] > p.values()[i - 1]) {
            return Err(MajError::NotMonotone(i + 1));
        }
    }
    let n = xi.len();
    let (h, x) = (eta.partial_sums(), xi.partial_sums());
    if let Some(k) = (0..n).find(|&k| h[k] > x[k]) {
        return Err(MajError::NotMajorized(k + 1));
    }
    let (e, s) = (eta.values(), xi.values());
    if n == 0 || x[n - 1].is_zero() {
        return Ok(SubstochasticMatrix::zero(n, n));
    }
    if e.iter().zip(s).all(|(a, b)| a <= b) {
        let d: Vec<Rat> = e.iter().zip(s).map(|(a, b)| if b.is_zero() { Rat::zero() } else { a / b }).collect();
        return SubstochasticMatrix::diagonal(&d);
    }
    // raise eta to z = max(eta, c) with sum z = sum xi; then z is majorized by xi
    let z = level_up(e, &h, &x[n - 1]);
    let t = t_transform_chain(s, &z)?;
    let mut entries = BTreeMap::new();
    for (i, row) in t.iter().enumerate() {
        if z[i].is_zero() {
            continue;
        }
        let d = e[i].clone() / &z[i];
        for (j, v) in row.iter().enumerate() {
            // columns hitting zero coordinates of xi contribute nothing
            if !v.is_zero() && !s[j].is_zero() {
                entries.insert((i, j), v * &d);
            }
        }
    }
    let p = SubstochasticMatrix::new(n, n, entries)?;
    debug_assert_eq!(apply_matrix(&p, xi).ok().map(|v| v.0), Some(e.to_vec()));
    Ok(p)
}

fn level_up(e: &[Rat], h: &[Rat], total: &Rat) -> Vec<Rat> {
    let n = e.len();
    for p in 0..n {
        let hp = if p == 0 { Rat::zero() } else { h[p - 1].clone() };
        let c = (total.clone() - hp) / Rat::from_integer((n - p).into());
        if e[p] <= c && (p == 0 || c <= e[p - 1]) {
            return e.iter().map(|v| std::cmp::max(v.clone(), c.clone())).collect();
        }
    }
    unreachable!("a level always exists when the totals are dominated")
}

/// Doubly stochastic `T` (dense, row-major) with `T y = z` for nonincreasing
/// `z` majorized by nonincreasing `y` with equal totals.
fn t_transform_chain(y: &[Rat], z: &[Rat]) -> Result<Vec<Vec<Rat>>, MajError> {
    let n = y.len();
    let mut t: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    let mut cur = y.to_vec();
    let limit = 2 * n;
    let mut steps = 0;
    loop {
        let Some(j) = (0..n).rev().find(|&j| cur[j] > z[j]) else { break };
        let Some(k) = (j + 1..n).find(|&k| cur[k] < z[k]) else {
            return Err(MajError::NotMajorized(j + 1));
        };
        steps += 1;
        if steps > limit {
            return Err(MajError::ChainTooLong(limit));
        }
        let delta = std::cmp::min(cur[j].clone() - &z[j], z[k].clone() - &cur[k]);
        // T = lambda I + (1 - lambda) Q_jk, with (1 - lambda)(y_j - y_k) = delta
        let mu = delta.clone() / (cur[j].clone() - &cur[k]);
        let lam = Rat::one() - &mu;
        let (rj, rk) = (t[j].clone(), t[k].clone());
        for c in 0..n {
            t[j][c] = &lam * &rj[c] + &mu * &rk[c];
            t[k][c] = &mu * &rj[c] + &lam * &rk[c];
        }
        cur[j] -= &delta;
        cur[k] += &delta;
    }
    Ok(t)
}

pub fn apply_matrix(p: &SubstochasticMatrix, xi: &Prefix) -> Result<Prefix, MajError> {
    if p.ncols != xi.len() {
        return Err(MajError::DimensionMismatch(p.ncols, xi.len()));
    }
    let mut out = vec![Rat::zero(); p.nrows];
    for (&(i, j), v) in &p.entries {
        out[i] += v * xi.at(j + 1);
    }
    Ok(Prefix::new(out))
}

/// Nonincreasing rearrangement with `x*_i = x_{pi(i)}`, ties kept in index order.
pub fn monotonize(x: &Prefix) -> (Prefix, Permutation) {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x.values()[b].cmp(&x.values()[a]));
    let sorted = idx.iter().map(|&i| x.values()[i].clone()).collect();
    (Prefix::new(sorted), Permutation { image: idx.into_iter().map(|i| i + 1).collect() })
}

/// Row `i` of the result is row `pi(i)` of `p`.
pub fn compose_monotone(p: &SubstochasticMatrix, pi: &Permutation) -> Result<SubstochasticMatrix, MajError> {
    if pi.len() > p.nrows || pi.image.iter().any(|&k| k > p.nrows) {
        return Err(MajError::DimensionMismatch(pi.len(), p.nrows));
    }
    let mut entries = BTreeMap::new();
    for (i, &src) in pi.image.iter().enumerate() {
        for (&(r, c), v) in p.entries.range((src - 1, 0)..(src, 0)) {
            debug_assert_eq!(r, src - 1);
            entries.insert((i, c), v.clone());
        }
    }
    SubstochasticMatrix::new(pi.len(), p.ncols, entries)
}

/// `(lhs, rhs, holds)` for `(rho + mu)* <= D_2 rho* + D_2 mu*`.
pub fn fan_dominates(rho: &Prefix, mu: &Prefix) -> Result<(Prefix, Prefix, bool), MajError> {
    check_len(rho, mu)?;
    check_nonneg(rho)?;
    check_nonneg(mu)?;
    let n = rho.len();
    let sum = Prefix::new(rho.values().iter().zip(mu.values()).map(|(a, b)| a + b).collect());
    let (lhs, _) = monotonize(&sum);
    let (rs, _) = monotonize(rho);
    let (ms, _) = monotonize(mu);
    let rhs: Vec<Rat> = (0..n).map(|j| rs.values()[j / 2].clone() + &ms.values()[j / 2]).collect();
    let holds = lhs.values().iter().zip(&rhs).all(|(a, b)| a <= b);
    Ok((lhs, Prefix::new(rhs), holds))
}

/// `(max(xi - rho, 0))*`.
pub fn sum_decomposition_witness(xi: &Prefix, rho: &Prefix) -> Result<Prefix, MajError> {
    check_len(xi, rho)?;
    check_nonneg(xi)?;
    check_nonneg(rho)?;
    let clipped = xi
        .values()
        .iter()
        .zip(rho.values())
        .map(|(a, b)| std::cmp::max(a - b, Rat::zero()))
        .collect();
    Ok(monotonize(&Prefix::new(clipped)).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn p(v: &[(i64, i64)]) -> Prefix {
        Prefix::from_ratios(v)
    }

    fn check_split(xi: &Prefix, eta: &Prefix, mu: &Prefix, a: &Prefix, b: &Prefix) {
        let (h, m, ha, mb) = (eta.partial_sums(), mu.partial_sums(), a.partial_sums(), b.partial_sums());
        for k in 0..xi.len() {
            assert_eq!(a.values()[k].clone() + &b.values()[k], xi.values()[k]);
            assert!(a.values()[k] >= Rat::zero() && b.values()[k] >= Rat::zero());
            assert!(h[k] <= ha[k] && m[k] <= mb[k], "k={k}");
        }
    }

    #[test]
    fn split_examples() {
        let (xi, eta, mu) = (Prefix::from_ints(&[2, 1]), Prefix::from_ints(&[1, 1]), Prefix::from_ints(&[1, 0]));
        let (a, b) = lemma31_split(&xi, &eta, &mu).unwrap();
        assert_eq!((a.clone(), b.clone()), (Prefix::from_ints(&[1, 1]), Prefix::from_ints(&[1, 0])));
        check_split(&xi, &eta, &mu, &a, &b);

        let xi = p(&[(3, 1), (1, 2), (1, 3)]);
        let (a, b) = lemma31_split(&xi, &xi, &Prefix::zeros(3)).unwrap();
        assert_eq!((a, b), (xi.clone(), Prefix::zeros(3)));

        let one = Prefix::from_ints(&[1, 0]);
        assert_eq!(lemma31_split(&one, &one, &one), Err(MajError::HypothesisViolated(1)));
    }

    #[test]
    fn split_two_dim_exhaustive() {
        // every small integer triple; the oracle is the post-condition itself
        let r = 0..3i64;
        for x1 in r.clone() {
            for x2 in r.clone() {
                for e1 in r.clone() {
                    for e2 in r.clone() {
                        for m1 in r.clone() {
                            for m2 in r.clone() {
                                let (xi, eta, mu) = (
                                    Prefix::from_ints(&[x1, x2]),
                                    Prefix::from_ints(&[e1, e2]),
                                    Prefix::from_ints(&[m1, m2]),
                                );
                                match lemma31_split(&xi, &eta, &mu) {
                                    Ok((a, b)) => check_split(&xi, &eta, &mu, &a, &b),
                                    Err(MajError::HypothesisViolated(k)) => {
                                        let ok1 = e1 + m1 <= x1;
                                        assert!(if k == 1 { !ok1 } else { ok1 && e1 + e2 + m1 + m2 > x1 + x2 });
                                    }
                                    Err(e) => panic!("{e}"),
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_with_maximum_at_the_end() {
        let (xi, eta, mu) = (Prefix::from_ints(&[1, 1]), p(&[(0, 1), (1, 1)]), p(&[(1, 2), (0, 1)]));
        let (a, b) = lemma31_split(&xi, &eta, &mu).unwrap();
        check_split(&xi, &eta, &mu, &a, &b);
    }

    fn check_markus(eta: &Prefix, xi: &Prefix) -> SubstochasticMatrix {
        let m = markus_matrix(eta, xi).unwrap();
        m.validate().unwrap();
        assert_eq!(apply_matrix(&m, xi).unwrap(), *eta);
        m
    }

    #[test]
    fn markus_examples() {
        let m = check_markus(&p(&[(1, 2), (1, 2)]), &Prefix::from_ints(&[1, 0]));
        assert_eq!(m.triplets(), vec![(1, 1, rat(1, 2)), (2, 1, rat(1, 2))]);

        let m = check_markus(&p(&[(3, 4), (1, 4)]), &p(&[(1, 1), (1, 2)]));
        assert_eq!(m.triplets(), vec![(1, 1, rat(3, 4)), (2, 2, rat(1, 2))]);

        let x = p(&[(5, 1), (2, 1), (1, 3)]);
        assert_eq!(check_markus(&x, &x), SubstochasticMatrix::identity(3));

        check_markus(&p(&[(2, 1), (2, 1), (2, 1), (1, 1)]), &p(&[(5, 1), (2, 1), (1, 1), (0, 1)]));
        assert_eq!(
            markus_matrix(&Prefix::from_ints(&[2, 0]), &Prefix::from_ints(&[1, 1])),
            Err(MajError::NotMajorized(1))
        );
    }

    #[test]
    fn apply_and_permute() {
        let x = p(&[(1, 1), (3, 1), (2, 1)]);
        assert_eq!(apply_matrix(&SubstochasticMatrix::identity(3), &x).unwrap(), x);
        assert_eq!(apply_matrix(&SubstochasticMatrix::zero(3, 3), &x).unwrap(), Prefix::zeros(3));
        assert!(apply_matrix(&SubstochasticMatrix::identity(2), &x).is_err());

        let (s, pi) = monotonize(&x);
        assert_eq!(s, Prefix::from_ints(&[3, 2, 1]));
        assert_eq!(pi.image(), &[2, 3, 1]);
        assert!(monotonize(&Prefix::from_ints(&[3, 2, 2])).1.is_identity());
        assert_eq!(monotonize(&Prefix::from_ints(&[2, 2])).1.image(), &[1, 2]);

        let q = compose_monotone(&SubstochasticMatrix::identity(2), &Permutation::swap(2, 1, 2)).unwrap();
        assert_eq!(q.triplets(), vec![(1, 2, Rat::one()), (2, 1, Rat::one())]);

        let half = SubstochasticMatrix::diagonal(&[rat(1, 2), rat(1, 3), rat(1, 4)]).unwrap();
        let q = compose_monotone(&half, &Permutation::new(vec![3, 1, 2]).unwrap()).unwrap();
        let (mut a, mut b) = (half.row_sums(), q.row_sums());
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn fan_and_witness() {
        let (l, r, h) = fan_dominates(&Prefix::from_ints(&[1, 0]), &Prefix::from_ints(&[1, 0])).unwrap();
        assert_eq!((l, r, h), (Prefix::from_ints(&[2, 0]), Prefix::from_ints(&[2, 2]), true));
        let (l, r, h) = fan_dominates(&Prefix::from_ints(&[0, 1]), &Prefix::from_ints(&[1, 0])).unwrap();
        assert_eq!((l, r, h), (Prefix::from_ints(&[1, 1]), Prefix::from_ints(&[2, 2]), true));

        let w = sum_decomposition_witness(&p(&[(1, 1), (1, 2)]), &p(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(w, p(&[(1, 2), (0, 1)]));
        let x = p(&[(1, 1), (1, 2), (1, 4)]);
        assert_eq!(sum_decomposition_witness(&x, &x).unwrap(), Prefix::zeros(3));
        let w = sum_decomposition_witness(&x, &p(&[(1, 4), (1, 4), (1, 4)])).unwrap();
        assert_eq!(w, p(&[(3, 4), (1, 4), (0, 1)]));
    }
}
