//! Asymptotic comparisons decided on a finite horizon, with witnesses.
//!
//!     cargo run --example relations -- 5000

use amideal::parse::parse_seq;
use amideal::relations::{big_o, delta_half, little_o, regular, Config, Verdict};

fn report(what: &str, v: &Verdict) {
    let w = v.witness.as_ref().map(|w| format!(" witness m={:?} c={}", w.m, w.c.as_ref().map(amideal::num::fmt_rat).unwrap_or_default())).unwrap_or_default();
    println!("{what:<34} {:<13}{w}", v.decision.to_string());
    if v.fails() && !v.refuting.is_empty() {
        println!("{:<34} refuted at {:?}", "", &v.refuting[..v.refuting.len().min(4)]);
    }
}

fn main() {
    let n = std::env::args().nth(1).map(|s| s.parse().expect("horizon")).unwrap_or(4_000);
    let cfg = Config::with_horizon(n);
    let s = |e: &str| parse_seq(e).unwrap();
    report("zeta(2) = O(omega)", &big_o(&s("zeta(2)"), &s("omega"), &cfg).unwrap());
    report("omega = O(zeta(2))", &big_o(&s("omega"), &s("zeta(2)"), &cfg).unwrap());
    report("zeta(2) = o(omega)", &little_o(&s("zeta(2)"), &s("omega"), &cfg).unwrap());
    report("delta_1/2 for rsqrt", &delta_half(&s("rsqrt"), &cfg).unwrap());
    report("delta_1/2 for geometric(1/2)", &delta_half(&s("geometric(1/2)"), &cfg).unwrap());
    report("omega regular", &regular(&s("omega"), &cfg).unwrap());
    report("ex220 regular", &regular(&s("ex220"), &cfg).unwrap());
}
