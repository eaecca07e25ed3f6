//! Arithmetic means at zero and infinity, their inverses, and ampliation.

use amideal::num::{fmt_decimal, fmt_rat, Rat};
use amideal::parse::parse_seq;
use amideal::seq::Prefix;
use amideal::transforms::{am, am_inf, ampliate, mean_inverse};

fn show(label: &str, p: &Prefix) {
    let v: Vec<String> = p.values().iter().map(fmt_rat).collect();
    println!("{label:<14} {}", v.join(", "));
}

fn main() {
    let xi = Prefix::from_ints(&[6, 4, 4, 1, 0, 0]);
    show("xi", &xi);
    let a = am(&xi);
    show("am xi", &a);
    show("back", &mean_inverse(&a));
    show("D_2 xi", &ampliate(2, &xi));

    let z = parse_seq("zeta(2)").unwrap();
    let tp = am_inf(&z, 5, None).expect("summable");
    println!("aminf zeta(2), tail over (5, oo) in [{}, {}]", fmt_decimal(&tp.tail.lo, 12), fmt_decimal(&tp.tail.hi, 12));
    for (i, e) in tp.enclosures().iter().enumerate() {
        println!("  {:>2}  [{}, {}]", i + 1, fmt_decimal(&e.lo, 12), fmt_decimal(&e.hi, 12));
    }
    let total: Rat = xi.sum();
    println!("sum xi = {}", fmt_rat(&total));
}
