//! Greedy construction of two nonincreasing sequences `a + b = omega` that
//! take turns being much smaller than `omega`.
//!
//! Index 1 has `a = b = 1/2`. Each later phase holds one side at a constant
//! `1/D` and lets the other ("starving") side follow `omega - 1/D` until the
//! first index `e` where that would drop below `omega_e / M`. At `e` the
//! starving side is set to `omega_e / M` exactly, giving `omega/side = M`
//! there, and the roles swap. Targets are `3 * 2^(k/2)` (integer halving) for
//! the first seven phases, so each side peaks several times at small indices,
//! then grow tenfold per phase.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::Side;
use crate::num::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPhase {
    /// first index of the phase
    pub start: u128,
    /// last index of the phase
    pub end: u128,
    pub starving: Side,
    /// the held side equals `1/held_den` on `[start, end)`
    pub held_den: BigInt,
    /// `omega/starving` at `end`
    pub target: BigInt,
}

const SLOW_PHASES: u32 = 7;

fn phase_target(k: u32) -> BigInt {
    BigInt::from(3u32) << (k / 2)
}

/// Phases covering every index representable as `u64`.
pub fn split_phases() -> &'static [SplitPhase] {
    static PLAN: OnceLock<Vec<SplitPhase>> = OnceLock::new();
    PLAN.get_or_init(|| {
        let mut out = Vec::new();
        let mut start = BigInt::from(2u32);
        let mut den = BigInt::from(2u32);
        let mut k = 0u32;
        let mut target = phase_target(0);
        let mut starving = Side::A;
        let limit = BigInt::from(u64::MAX);
        while start <= limit {
            // first e with 1/e - 1/den < 1/(e*target), i.e. e > den*(target-1)/target
            let e = (&den * (&target - 1u32)).div_floor(&target) + 1u32;
            assert!(e >= start);
            let end_u = e.to_u128().unwrap_or(u128::MAX);
            out.push(SplitPhase {
                start: start.to_u128().expect("start fits"),
                end: end_u,
                starving,
                held_den: den.clone(),
                target: target.clone(),
            });
            start = &e + 1u32;
            den = &e * &target;
            k += 1;
            target = if k < SLOW_PHASES { phase_target(k) } else { &target * 10u32 };
            starving = match starving {
                Side::A => Side::B,
                Side::B => Side::A,
            };
        }
        out
    })
}

/// Value of side `side` at index `j`.
pub(crate) fn split_value(side: Side, j: usize) -> Rat {
    let half = Rat::new(BigInt::one(), BigInt::from(2u32));
    if j == 1 {
        return half;
    }
    let j128 = j as u128;
    let ph = split_phases().iter().find(|p| p.start <= j128 && j128 <= p.end).expect("phase covers every u64 index");
    let jb = BigInt::from(j);
    let omega = Rat::new(BigInt::one(), jb.clone());
    let (starve, held) = if j128 < ph.end {
        let held = Rat::new(BigInt::one(), ph.held_den.clone());
        (&omega - &held, held)
    } else {
        let s = Rat::new(BigInt::one(), &jb * &ph.target);
        (s.clone(), &omega - s)
    };
    if side == ph.starving {
        starve
    } else {
        held
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{from_usize, rat};

    #[test]
    fn first_phases() {
        let p = split_phases();
        assert_eq!((p[0].start, p[0].end), (2, 2));
        assert_eq!((p[1].start, p[1].end), (3, 5));
        assert_eq!((p[2].start, p[2].end), (6, 13));
        assert_eq!((p[6].end, p[7].end, p[8].end), (46058, 1100787, 264078802));
        assert_eq!(split_value(Side::A, 2), rat(1, 6));
        assert_eq!(split_value(Side::B, 5), rat(1, 15));
    }

    #[test]
    fn sums_to_omega_and_monotone_on_small_range() {
        let mut prev = (rat(1, 1), rat(1, 1));
        for j in 1..=10_000usize {
            let a = split_value(Side::A, j);
            let b = split_value(Side::B, j);
            assert_eq!(&a + &b, Rat::one() / from_usize(j));
            assert!(a <= prev.0 && b <= prev.1, "j={j}");
            assert!(a > Rat::from_integer(0.into()) && b > Rat::from_integer(0.into()));
            prev = (a, b);
        }
    }
}
