//! Exact rationals, closed intervals with rational endpoints, and certified
//! approximations of `ln` and rational powers.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Fractional bits kept by the fixed-point log and root routines.
const FIX_BITS: u64 = 224;
/// Endpoints whose numerator or denominator exceed this many bits get rounded.
const TIDY_BITS: u64 = 256;
/// Mantissa bits kept when an endpoint is rounded.
const TIDY_PREC: u64 = 160;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn from_usize(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn recip_usize(n: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(n))
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow_rat(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.25`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {t:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {t:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {t:?}"));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n: BigInt = digits.parse().map_err(|_| format!("bad decimal {t:?}"))?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rat::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| format!("bad number {t:?}"))?;
    Ok(Rat::from_integer(n))
}

/// `p` or `p/q`, never a decimal.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point rendering with `digits` digits after the point, truncated toward zero.
pub fn fmt_decimal(r: &Rat, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let (ip, fp) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if digits > 0 {
        let f = fp.to_string();
        s.push('.');
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn bits(n: &BigInt) -> u64 {
    n.bits()
}

/// Largest integer `<= r`.
pub fn floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Rounds a positive rational outward to a dyadic value with `prec` mantissa bits.
fn round_dyadic(x: &Rat, prec: u64, up: bool) -> Rat {
    if x.is_zero() {
        return x.clone();
    }
    if x.is_negative() {
        return -round_dyadic(&-x, prec, !up);
    }
    let p = x.numer();
    let q = x.denom();
    let e = bits(p) as i64 - bits(q) as i64;
    let shift = prec as i64 - e;
    let (num, den) = if shift >= 0 {
        (p << (shift as usize), q.clone())
    } else {
        (p.clone(), q << ((-shift) as usize))
    };
    let (m, rem) = num.div_rem(&den);
    let m = if up && !rem.is_zero() { m + 1 } else { m };
    if shift >= 0 {
        Rat::new(m, BigInt::one() << (shift as usize))
    } else {
        Rat::from_integer(m << ((-shift) as usize))
    }
}

fn too_big(x: &Rat) -> bool {
    bits(x.numer()) > TIDY_BITS || bits(x.denom()) > TIDY_BITS
}

/// Three-valued comparison outcome.
pub type Tri = Option<bool>;

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", fmt_rat(&self.lo))
        } else {
            write!(f, "[{}, {}]", fmt_rat(&self.lo), fmt_rat(&self.hi))
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Rat> for Interval {
    fn from(r: Rat) -> Self {
        Interval::point(r)
    }
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(Rat::zero())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact(&self) -> Option<&Rat> {
        if self.is_point() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// `self <= o` for every choice of points.
    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    pub fn le(&self, o: &Interval) -> Tri {
        if self.hi <= o.lo {
            Some(true)
        } else if self.lo > o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn lt(&self, o: &Interval) -> Tri {
        if self.hi < o.lo {
            Some(true)
        } else if self.lo >= o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn is_nonneg(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::point(&self.lo + &o.lo);
        }
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::point(&self.lo - &o.lo);
        }
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::point(&self.lo * &o.lo);
        }
        if self.is_nonneg() && o.is_nonneg() {
            return Interval { lo: &self.lo * &o.lo, hi: &self.hi * &o.hi };
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        if self.is_point() {
            return Interval::point(&self.lo * c);
        }
        if c.is_negative() {
            Interval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Interval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    /// `None` when the divisor interval contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.lo.is_zero() && o.hi.is_zero() || (o.lo <= Rat::zero() && o.hi >= Rat::zero()) {
            return None;
        }
        if self.is_point() && o.is_point() {
            return Some(Interval::point(&self.lo / &o.lo));
        }
        let inv = Interval { lo: o.hi.recip(), hi: o.lo.recip() };
        Some(self.mul(&inv))
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().min(o.hi.clone()) }
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().max(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn abs(&self) -> Interval {
        if self.is_nonneg() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval { lo: Rat::zero(), hi: self.hi.clone().max(-&self.lo) }
        }
    }

    pub fn powi(&self, e: u32) -> Interval {
        if self.is_point() {
            return Interval::point(pow_rat(&self.lo, e));
        }
        if self.is_nonneg() {
            return Interval { lo: pow_rat(&self.lo, e), hi: pow_rat(&self.hi, e) };
        }
        let mut acc = Interval::point(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rounds oversized endpoints outward so long computations keep bounded size.
    pub fn tidy(self) -> Interval {
        if !too_big(&self.lo) && !too_big(&self.hi) {
            return self;
        }
        let lo = if too_big(&self.lo) { round_dyadic(&self.lo, TIDY_PREC, false) } else { self.lo };
        let hi = if too_big(&self.hi) { round_dyadic(&self.hi, TIDY_PREC, true) } else { self.hi };
        Interval { lo, hi }
    }
}

fn fixed_atanh2(num: &BigInt, den: &BigInt, p: u64) -> (BigInt, u64) {
    // 2*atanh(num/den) scaled by 2^p with 0 <= num/den <= 1/3, and a bound on the
    // truncation error in units of 2^-p.
    let z = (num << (p as usize)) / den;
    let z2 = (&z * &z) >> (p as usize);
    let mut t = z.clone();
    let mut sum = z.clone();
    let mut i: u64 = 1;
    while !t.is_zero() {
        t = (&t * &z2) >> (p as usize);
        sum += &t / BigInt::from(2 * i + 1);
        i += 1;
        if i > 4 * p {
            break;
        }
    }
    (sum << 1usize, 8 * (i + 4))
}

fn ln2_fixed() -> &'static (BigInt, u64) {
    static LN2: OnceLock<(BigInt, u64)> = OnceLock::new();
    LN2.get_or_init(|| fixed_atanh2(&BigInt::one(), &BigInt::from(3), FIX_BITS))
}

/// Certified enclosure of `ln x` for `x > 0`, with absolute error below `2^-180`.
pub fn ln_interval(x: &Rat) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive number");
    if x.is_one() {
        return Interval::zero();
    }
    let p = x.numer();
    let q = x.denom();
    let mut k = bits(p) as i64 - bits(q) as i64;
    let scaled = |k: i64| -> (BigInt, BigInt) {
        if k >= 0 {
            (p.clone(), q << (k as usize))
        } else {
            (p << ((-k) as usize), q.clone())
        }
    };
    let (mut a, mut b) = scaled(k);
    if a < b {
        k -= 1;
        let s = scaled(k);
        a = s.0;
        b = s.1;
    }
    // a/b in [1, 2): ln(a/b) = 2 atanh((a-b)/(a+b)).
    let (ly, ey) = fixed_atanh2(&(&a - &b), &(&a + &b), FIX_BITS);
    let (l2, e2) = ln2_fixed();
    let approx = ly + l2 * BigInt::from(k);
    let err = BigInt::from(ey + e2 * k.unsigned_abs() + 16);
    let den = BigInt::one() << (FIX_BITS as usize);
    Interval {
        lo: Rat::new(&approx - &err, den.clone()),
        hi: Rat::new(&approx + &err, den),
    }
}

/// Enclosure of `x^(1/b)` for a nonnegative rational `x`.
fn root_interval(x: &Rat, b: u32) -> Interval {
    if x.is_zero() || b == 1 {
        return Interval::point(x.clone());
    }
    let p = x.numer();
    let q = x.denom();
    // x = 2^(b*e) * s with s near 1 keeps the relative precision uniform.
    let e = (bits(p) as i64 - bits(q) as i64).div_euclid(b as i64);
    let shift = (b as i64) * (FIX_BITS as i64 - e);
    let (num, den) = if shift >= 0 {
        (p << (shift as usize), q.clone())
    } else {
        (p.clone(), q << ((-shift) as usize))
    };
    let n = (num / den).to_biguint().unwrap_or_else(BigUint::zero);
    let r = BigInt::from_biguint(Sign::Plus, n.nth_root(b));
    let out_shift = FIX_BITS as i64 - e;
    let mk = |m: BigInt| -> Rat {
        if out_shift >= 0 {
            Rat::new(m, BigInt::one() << (out_shift as usize))
        } else {
            Rat::from_integer(m << ((-out_shift) as usize))
        }
    };
    let lo = mk(r.clone());
    let hi = mk(r + 1);
    Interval { lo, hi }
}

/// Enclosure of `x^p` for `x >= 0` and rational `p > 0`.
pub fn pow_interval(x: &Interval, p: &Rat) -> Interval {
    assert!(x.is_nonneg(), "fractional power of a negative interval");
    assert!(p.is_positive(), "non-positive exponent");
    let a = p.numer().to_u32().expect("exponent numerator too large");
    let b = p.denom().to_u32().expect("exponent denominator too large");
    let xa = x.powi(a).tidy();
    if b == 1 {
        return xa;
    }
    let lo = root_interval(&xa.lo, b).lo;
    let hi = root_interval(&xa.hi, b).hi;
    let lo = if lo.is_negative() { Rat::zero() } else { lo };
    Interval { lo, hi }.tidy()
}

/// Serde adapter storing a [`Rat`] as the string "p" or "p/q".
pub mod rat_serde {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &fmt_rat(&self.lo))?;
        st.serialize_field("hi", &fmt_rat(&self.hi))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert_eq!(fmt_rat(&rat(-2, 4)), "-1/2");
        assert_eq!(fmt_rat(&int(5)), "5");
        assert_eq!(fmt_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(fmt_decimal(&rat(-5, 4), 2), "-1.25");
    }

    #[test]
    fn ln_two_digits() {
        let l = ln_interval(&int(2));
        // ln 2 = 0.693147180559945309417232121458...
        let approx = parse_rat("0.693147180559945309417232121458").unwrap();
        assert!((l.mid() - approx).abs() < rat(1, 10_i64.pow(18)));
        assert!(l.width() < Rat::new(BigInt::one(), BigInt::one() << 180usize));
    }

    #[test]
    fn ln_encloses_known_values() {
        // ln 10 = 2.302585092994045684017991454684...
        let l = ln_interval(&int(10));
        let approx = parse_rat("2.302585092994045684017991454684").unwrap();
        assert!((l.mid() - approx).abs() < rat(1, 10_i64.pow(18)));
        let half = ln_interval(&rat(1, 2));
        assert!((half.mid() + ln_interval(&int(2)).mid()).abs() < rat(1, 10_i64.pow(18)));
        let big = ln_interval(&int(1_000_000));
        let six_ln10 = ln_interval(&int(10)).scale(&int(6));
        assert!((big.mid() - six_ln10.mid()).abs() < rat(1, 10_i64.pow(18)));
    }

    #[test]
    fn roots_enclose() {
        let r = pow_interval(&Interval::point(int(2)), &rat(1, 2));
        assert!(r.lo.clone() * r.lo.clone() <= int(2));
        assert!(r.hi.clone() * r.hi.clone() >= int(2));
        let c = pow_interval(&Interval::point(rat(1, 27)), &rat(2, 3));
        assert!(c.contains(&rat(1, 9)));
        let tiny = pow_interval(&Interval::point(rat(1, 1 << 40)), &rat(1, 2));
        assert!(tiny.contains(&rat(1, 1 << 20)));
    }

    #[test]
    fn tidy_keeps_enclosure() {
        let x = Rat::new(BigInt::one(), num_traits::pow(BigInt::from(3), 700));
        let t = Interval::point(x.clone()).tidy();
        assert!(t.contains(&x));
        assert!(!t.is_point());
        assert!(t.width() < &x / Rat::from_integer(BigInt::one() << 150usize));
    }

    #[test]
    fn interval_arith() {
        let a = Interval::new(int(1), int(2));
        let b = Interval::new(int(-1), int(3));
        assert_eq!(a.mul(&b), Interval::new(int(-2), int(6)));
        assert!(a.div(&b).is_none());
        assert_eq!(a.sub(&a), Interval::new(int(-1), int(1)));
        assert_eq!(a.le(&Interval::point(int(3))), Some(true));
        assert_eq!(a.le(&Interval::point(rat(3, 2))), None);
    }
}
