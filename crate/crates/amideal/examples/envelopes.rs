//! Monotone envelopes, concave majorants and convex minorants of finite windows.

use amideal::envelopes::{concave_majorant, convex_minorant, envelope_prefix, MajBoundary, MinBoundary};
use amideal::num::fmt_rat;
use amideal::parse::parse_seq;
use amideal::seq::{EnvMode, Prefix};

fn line(p: &Prefix) -> String {
    p.values().iter().map(fmt_rat).collect::<Vec<_>>().join(" ")
}

fn main() {
    let x = Prefix::from_ints(&[1, 3, 2, 5, 1, 4]);
    println!("x    {}", line(&x));
    for mode in [EnvMode::Und, EnvMode::Lni, EnvMode::Lnd, EnvMode::Uni] {
        println!("{:<4} {}", mode.name(), line(&envelope_prefix(mode, &x).values));
    }

    // phi_i = min(3, i) is quasiconcave, its least concave majorant is itself
    let phi = Prefix::from_ints(&[1, 2, 3, 3, 3]);
    let psi = concave_majorant(&phi, MajBoundary::WindowExact).unwrap();
    println!("concave majorant of {} -> {}", line(&phi), line(&psi.values));

    let d = parse_seq("div(ex38,omega)").unwrap();
    let v: Vec<_> = d.values(8).unwrap().into_iter().map(|i| i.exact().cloned().expect("exact")).collect();
    let w = convex_minorant(&Prefix::new(v.clone()), MinBoundary::ZeroLimit).unwrap();
    println!("ex38/omega       {}", line(&Prefix::new(v)));
    println!("convex minorant  {} (exact on 1..={})", line(&w.values), w.valid_upto);
}
