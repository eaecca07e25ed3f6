//! Monotone envelopes, least concave majorants, greatest convex minorants and
//! the generator sequences of mean interiors and hulls of principal ideals.
//!
//! Hulls over the infinite index set are bracketed: the window hull on one
//! side and the window plus the worst admissible future on the other. They
//! agree on an initial stretch, and that stretch is the valid window.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::num::{from_usize, rat, Interval, Rat};
use crate::relations::{big_o, little_o, Config, Decision, RelError};
use crate::seq::{materialize, EnvMode, Ext, Node, Prefix, Seq, SeqError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("input is not quasiconcave at index {0}")]
    NotQuasiconcave(usize),
    #[error("nonpositive entry at index {0}")]
    NonpositiveEntry(usize),
    #[error("side condition of {0:?} refuted or undecided: {1}")]
    GuardFailed(GeneratorKind, String),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Rel(#[from] RelError),
}

/// A prefix together with the initial stretch on which it is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowedPrefix {
    pub values: Prefix,
    pub valid_upto: usize,
}

impl WindowedPrefix {
    pub fn valid(&self) -> &[Rat] {
        &self.values.values()[..self.valid_upto]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MajBoundary {
    /// majorant of the window alone
    WindowExact,
    /// the sequence continues quasiconcavely and stays below the hint
    SupHint(Rat),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinBoundary {
    WindowExact,
    /// the sequence continues nonnegatively beyond the window
    ZeroLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    AmInterior,
    AmOo,
    AminfInterior,
    AminfOo,
}

type Pt = (Rat, Rat);

/// Upper (`upper = true`) or lower convex hull vertices of points sorted by x.
fn hull(points: &[Pt], upper: bool) -> Vec<Pt> {
    let mut h: Vec<Pt> = Vec::with_capacity(points.len());
    for p in points {
        while h.len() >= 2 {
            let (o, a) = (&h[h.len() - 2], &h[h.len() - 1]);
            // cross > 0 means a lies strictly above the chord o-p
            let cross = (&a.1 - &o.1) * (&p.0 - &o.0) - (&p.1 - &o.1) * (&a.0 - &o.0);
            let keep = if upper { cross.is_positive() } else { cross.is_negative() };
            if keep {
                break;
            }
            h.pop();
        }
        h.push(p.clone());
    }
    h
}

/// Evaluates a hull with a terminal ray of slope `slope` at `x = 1..=n`.
/// The hull is cut at the vertex that supports the ray.
fn eval_hull(h: &[Pt], slope: Option<&Rat>, upper: bool, n: usize) -> Vec<Rat> {
    let mut h = h.to_vec();
    if let Some(s) = slope {
        let score = |p: &Pt| &p.1 - s * &p.0;
        let mut best = 0;
        for i in 1..h.len() {
            let better = if upper { score(&h[i]) > score(&h[best]) } else { score(&h[i]) < score(&h[best]) };
            if better {
                best = i;
            }
        }
        h.truncate(best + 1);
    }
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for x in 1..=n {
        let xr = from_usize(x);
        while seg + 1 < h.len() && h[seg + 1].0 < xr {
            seg += 1;
        }
        let v = if seg + 1 < h.len() {
            let (a, b) = (&h[seg], &h[seg + 1]);
            &a.1 + (&b.1 - &a.1) * (&xr - &a.0) / (&b.0 - &a.0)
        } else {
            let a = &h[h.len() - 1];
            match slope {
                Some(s) => &a.1 + s * (&xr - &a.0),
                None => a.1.clone(),
            }
        };
        out.push(v);
    }
    out
}

fn points(v: &[Rat]) -> Vec<Pt> {
    v.iter().enumerate().map(|(i, y)| (from_usize(i + 1), y.clone())).collect()
}

fn agreement(a: &[Rat], b: &[Rat]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Future constraints for a concave majorant: `phi_j <= min(sup, phi_W * j / W)` for `j > W`.
/// Returns (extra point, terminal slope).
fn majorant_future(last: &Pt, sup: Option<&Rat>, quasiconcave: bool) -> Option<(Option<Pt>, Rat)> {
    let (w, yw) = last;
    match (sup, quasiconcave) {
        (Some(s), true) => {
            if yw.is_zero() {
                Some((None, Rat::zero()))
            } else if s > yw {
                Some((Some((s * w / yw, s.clone())), Rat::zero()))
            } else {
                Some((None, Rat::zero()))
            }
        }
        (Some(s), false) => {
            if s > yw {
                Some((Some((w + rat(1, 1), s.clone())), Rat::zero()))
            } else {
                Some((None, Rat::zero()))
            }
        }
        (None, true) => Some((None, yw / w)),
        (None, false) => None,
    }
}

fn check_quasiconcave(phi: &Prefix) -> Result<(), EnvError> {
    let v = phi.values();
    for i in 0..v.len() {
        if v[i].is_negative() {
            return Err(EnvError::NotQuasiconcave(i + 1));
        }
        if i > 0 {
            let up = v[i] >= v[i - 1];
            // phi_i / i <= phi_{i-1} / (i-1)
            let down = &v[i] * from_usize(i) <= &v[i - 1] * from_usize(i + 1);
            if !up || !down {
                return Err(EnvError::NotQuasiconcave(i + 1));
            }
        }
    }
    Ok(())
}

/// Least concave majorant of a nonnegative quasiconcave prefix.
pub fn concave_majorant(phi: &Prefix, boundary: MajBoundary) -> Result<WindowedPrefix, EnvError> {
    check_quasiconcave(phi)?;
    let n = phi.len();
    let pts = points(phi.values());
    let window = eval_hull(&hull(&pts, true), None, true, n);
    match boundary {
        MajBoundary::WindowExact => Ok(WindowedPrefix { values: Prefix::new(window), valid_upto: n }),
        MajBoundary::SupHint(s) => {
            let (extra, slope) = majorant_future(pts.last().unwrap(), Some(&s), true).expect("sup given");
            let mut ext = pts.clone();
            ext.extend(extra);
            let upper = eval_hull(&hull(&ext, true), Some(&slope), true, n);
            let valid = agreement(&window, &upper);
            Ok(WindowedPrefix { values: Prefix::new(upper), valid_upto: valid })
        }
    }
}

/// Greatest convex minorant of a positive prefix.
pub fn convex_minorant(phi: &Prefix, boundary: MinBoundary) -> Result<WindowedPrefix, EnvError> {
    if let Some(i) = phi.values().iter().position(|x| !x.is_positive()) {
        return Err(EnvError::NonpositiveEntry(i + 1));
    }
    let n = phi.len();
    let pts = points(phi.values());
    let window = eval_hull(&hull(&pts, false), None, false, n);
    match boundary {
        MinBoundary::WindowExact => Ok(WindowedPrefix { values: Prefix::new(window), valid_upto: n }),
        MinBoundary::ZeroLimit => {
            let mut ext = pts.clone();
            ext.push((from_usize(n + 1), Rat::zero()));
            let lower = eval_hull(&hull(&ext, false), Some(&Rat::zero()), false, n);
            let valid = agreement(&window, &lower);
            Ok(WindowedPrefix { values: Prefix::new(lower), valid_upto: valid })
        }
    }
}

/// Exact envelope of a finite prefix, treating the prefix as the whole sequence.
pub fn envelope_prefix(mode: EnvMode, p: &Prefix) -> WindowedPrefix {
    let v = p.values();
    let mut out = v.to_vec();
    match mode {
        EnvMode::Und | EnvMode::Lni => {
            for i in 1..v.len() {
                let keep = if mode == EnvMode::Und { out[i - 1] > out[i] } else { out[i - 1] < out[i] };
                if keep {
                    out[i] = out[i - 1].clone();
                }
            }
        }
        EnvMode::Lnd | EnvMode::Uni => {
            for i in (0..v.len().saturating_sub(1)).rev() {
                let keep = if mode == EnvMode::Lnd { out[i + 1] < out[i] } else { out[i + 1] > out[i] };
                if keep {
                    out[i] = out[i + 1].clone();
                }
            }
        }
    }
    WindowedPrefix { values: Prefix::new(out), valid_upto: v.len() }
}

/// Envelope of an infinite sequence; future-dependent modes need tail oracles.
pub fn envelope(mode: EnvMode, s: &Seq, n: usize) -> Result<WindowedPrefix, EnvError> {
    let p = materialize(&s.envelope(mode), n)?;
    Ok(WindowedPrefix { values: p, valid_upto: n })
}

/// Whether `x_j / j` is known to be nonincreasing (i.e. `omega * x` nonincreasing).
fn known_quasiconcave(s: &Seq) -> bool {
    match s.node() {
        Node::Div(x, o) if o.is_omega() => x.traits().nonincreasing && x.traits().nonnegative,
        Node::Env(EnvMode::Und, t) => known_quasiconcave(t),
        Node::Scale(c, t) => !c.is_negative() && known_quasiconcave(t),
        Node::Const(c) => !c.is_negative(),
        Node::ConcMaj(t) => known_quasiconcave(t),
        _ => false,
    }
}

const WINDOW_CAP_FACTOR: usize = 64;

/// Values `1..=n` of the concave majorant of `s`, as enclosures.
pub(crate) fn seq_concave_majorant(s: &Seq, n: usize) -> Result<Vec<Interval>, SeqError> {
    let quasi = known_quasiconcave(s);
    let mut w = (2 * n).max(16);
    loop {
        let v = s.values(w)?;
        let lo_pts: Vec<Pt> = v.iter().enumerate().map(|(i, x)| (from_usize(i + 1), x.lo.clone())).collect();
        let hi_pts: Vec<Pt> = v.iter().enumerate().map(|(i, x)| (from_usize(i + 1), x.hi.clone())).collect();
        let lower = eval_hull(&hull(&lo_pts, true), None, true, n);
        let sup = match s.tail_sup(w + 1) {
            Ok(Ext::Fin(x)) => Some(x.hi),
            Ok(Ext::Inf) => None,
            Err(_) if quasi => None,
            Err(e) => return Err(e),
        };
        let (extra, slope) = majorant_future(hi_pts.last().unwrap(), sup.as_ref(), quasi).ok_or_else(|| SeqError::Uncertified(format!("concmaj({s})"), n))?;
        let mut ext = hi_pts;
        ext.extend(extra);
        let upper = eval_hull(&hull(&ext, true), Some(&slope), true, n);
        if agreement(&lower, &upper) == n || w >= WINDOW_CAP_FACTOR * n {
            return Ok(lower.into_iter().zip(upper).map(|(a, b)| Interval::new(a.clone().min(b.clone()), b.max(a))).collect());
        }
        w *= 2;
    }
}

/// Values `1..=n` of the convex minorant of `s`, as enclosures.
pub(crate) fn seq_convex_minorant(s: &Seq, n: usize) -> Result<Vec<Interval>, SeqError> {
    let mut w = (2 * n).max(16);
    loop {
        let v = s.values(w)?;
        let lo_pts: Vec<Pt> = v.iter().enumerate().map(|(i, x)| (from_usize(i + 1), x.lo.clone())).collect();
        let hi_pts: Vec<Pt> = v.iter().enumerate().map(|(i, x)| (from_usize(i + 1), x.hi.clone())).collect();
        let upper = eval_hull(&hull(&hi_pts, false), None, false, n);
        let floor = match s.tail_inf(w + 1) {
            Ok(x) => x.lo,
            Err(_) if s.traits().nonnegative => Rat::zero(),
            Err(e) => return Err(e),
        };
        let mut ext = lo_pts;
        ext.push((from_usize(w + 1), floor));
        let lower = eval_hull(&hull(&ext, false), Some(&Rat::zero()), false, n);
        if agreement(&lower, &upper) == n || w >= WINDOW_CAP_FACTOR * n {
            return Ok(lower.into_iter().zip(upper).map(|(a, b)| Interval::new(a.clone().min(b.clone()), b.max(a))).collect());
        }
        w *= 2;
    }
}

/// `omega * env(xi/omega)` for the given kind, as a recipe.
pub fn generator_seq(kind: GeneratorKind, xi: &Seq) -> Seq {
    let mode = match kind {
        GeneratorKind::AmInterior => EnvMode::Lnd,
        GeneratorKind::AmOo => EnvMode::Und,
        GeneratorKind::AminfInterior => EnvMode::Lni,
        GeneratorKind::AminfOo => EnvMode::Uni,
    };
    xi.over_omega().envelope(mode).times_omega()
}

/// Checks the side condition of the am-infinity generators at horizon.
pub fn generator_guard(kind: GeneratorKind, xi: &Seq, cfg: &Config) -> Result<(), EnvError> {
    let w = Seq::omega();
    match kind {
        GeneratorKind::AminfInterior => {
            let v = big_o(&w, xi, cfg)?;
            if v.decision != Decision::Fails {
                return Err(EnvError::GuardFailed(kind, format!("omega = O(xi) is {}", v.decision)));
            }
        }
        GeneratorKind::AminfOo => {
            let v = little_o(xi, &w, cfg)?;
            if v.decision != Decision::Holds {
                return Err(EnvError::GuardFailed(kind, format!("xi = o(omega) is {}", v.decision)));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Generator of the mean interior or hull of `(xi)` on `[1, n]`.
pub fn mean_ideal_generator(kind: GeneratorKind, xi: &Seq, n: usize, cfg: &Config) -> Result<WindowedPrefix, EnvError> {
    generator_guard(kind, xi, cfg)?;
    let p = materialize(&generator_seq(kind, xi), n)?;
    Ok(WindowedPrefix { values: p, valid_upto: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;
    use crate::seq::corpus_seq;

    fn named(n: &str) -> Seq {
        corpus_seq(n, &[]).unwrap()
    }

    /// O(N^3) oracle: least concave majorant value at each index.
    pub(crate) fn brute_concave(v: &[Rat]) -> Vec<Rat> {
        let n = v.len();
        (1..=n)
            .map(|x| {
                let mut best = v[x - 1].clone();
                for i in 1..=x {
                    for j in x..=n {
                        if i == j {
                            continue;
                        }
                        let t = (&v[i - 1] * from_usize(j - x) + &v[j - 1] * from_usize(x - i)) / from_usize(j - i);
                        if t > best {
                            best = t;
                        }
                    }
                }
                best
            })
            .collect()
    }

    pub(crate) fn brute_convex(v: &[Rat]) -> Vec<Rat> {
        let neg: Vec<Rat> = v.iter().map(|x| -x).collect();
        brute_concave(&neg).into_iter().map(|x| -x).collect()
    }

    #[test]
    fn three_point_examples() {
        let m = concave_majorant(&Prefix::from_ratios(&[(1, 1), (1, 1), (3, 2)]), MajBoundary::WindowExact).unwrap();
        assert_eq!(m.values, Prefix::from_ratios(&[(1, 1), (5, 4), (3, 2)]));
        let c = convex_minorant(&Prefix::from_ratios(&[(1, 1), (1, 1), (1, 2)]), MinBoundary::WindowExact).unwrap();
        assert_eq!(c.values, Prefix::from_ratios(&[(1, 1), (3, 4), (1, 2)]));
        let fixed = Prefix::from_ratios(&[(1, 1), (1, 2), (1, 4)]);
        assert_eq!(convex_minorant(&fixed, MinBoundary::WindowExact).unwrap().values, fixed);
        let k = Prefix::from_ints(&[3, 3, 3]);
        assert_eq!(concave_majorant(&k, MajBoundary::WindowExact).unwrap().values, k);
    }

    #[test]
    fn quasiconcavity_validated() {
        let bad = Prefix::from_ints(&[2, 1]);
        assert_eq!(concave_majorant(&bad, MajBoundary::WindowExact), Err(EnvError::NotQuasiconcave(2)));
        assert_eq!(convex_minorant(&Prefix::from_ints(&[1, 0]), MinBoundary::ZeroLimit), Err(EnvError::NonpositiveEntry(2)));
    }

    #[test]
    fn hulls_match_brute_force() {
        let v = Prefix::from_ratios(&[(1, 1), (3, 2), (7, 4), (2, 1), (2, 1), (9, 4)]);
        let m = concave_majorant(&v, MajBoundary::WindowExact).unwrap();
        assert_eq!(m.values.values(), &brute_concave(v.values())[..]);
        let d = Prefix::from_ratios(&[(1, 1), (1, 3), (1, 4), (1, 5), (1, 9)]);
        let c = convex_minorant(&d, MinBoundary::WindowExact).unwrap();
        assert_eq!(c.values.values(), &brute_convex(d.values())[..]);
    }

    #[test]
    fn sup_hint_limits_the_window() {
        let v = Prefix::from_ratios(&[(1, 1), (3, 2), (7, 4)]);
        let m = concave_majorant(&v, MajBoundary::SupHint(int(10))).unwrap();
        assert!(m.valid_upto < 3);
        let m2 = concave_majorant(&v, MajBoundary::SupHint(rat(7, 4))).unwrap();
        assert_eq!(m2.valid_upto, 3);
    }

    #[test]
    fn envelope_examples() {
        let p = Prefix::from_ints(&[1, 3, 2, 5]);
        assert_eq!(envelope_prefix(EnvMode::Und, &p).values, Prefix::from_ints(&[1, 3, 3, 5]));
        assert_eq!(envelope_prefix(EnvMode::Lni, &p).values, Prefix::from_ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn uni_of_ex315_ratio() {
        let phi = named("ex315").over_omega();
        let u = envelope(EnvMode::Uni, &phi, 720).unwrap();
        for j in 1..=720usize {
            let k = if j <= 2 { 2 } else { (3..).find(|&k| (1..=k).product::<usize>() >= j).unwrap() };
            assert_eq!(u.values.at(j), &rat(1, 1 << k), "j={j}");
        }
    }

    #[test]
    fn ex38_convex_minorant() {
        let psi = materialize(&named("ex38").over_omega().convex_minorant(), 5).unwrap();
        assert_eq!(psi, Prefix::from_ratios(&[(1, 1), (1, 2), (5, 12), (1, 3), (1, 4)]));
    }

    #[test]
    fn generators() {
        let w = Seq::omega();
        let cfg = Config::default();
        let g = mean_ideal_generator(GeneratorKind::AmInterior, &w, 10, &cfg).unwrap();
        assert_eq!(g.values, materialize(&w, 10).unwrap());
        let oo = mean_ideal_generator(GeneratorKind::AminfOo, &named("ex315"), 24, &cfg).unwrap();
        assert_eq!(oo.values.at(7), &rat(1, 16 * 7));
        let x = named("ex220");
        let up = mean_ideal_generator(GeneratorKind::AmOo, &x, 600, &cfg).unwrap();
        let down = mean_ideal_generator(GeneratorKind::AmInterior, &x, 600, &cfg).unwrap();
        let v = materialize(&x, 600).unwrap();
        for i in 1..=600 {
            assert!(down.values.at(i) <= v.at(i) && v.at(i) <= up.values.at(i));
        }
        assert!(matches!(mean_ideal_generator(GeneratorKind::AminfOo, &w, 10, &cfg), Err(EnvError::GuardFailed(..))));
    }
}
