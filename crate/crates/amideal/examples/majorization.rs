//! Splitting under majorization, substochastic matrices realising it, and the
//! Fan inequality on a small example.

use amideal::majorization::{apply_matrix, fan_dominates, lemma31_split, markus_matrix};
use amideal::num::fmt_rat;
use amideal::seq::Prefix;

fn line(p: &Prefix) -> String {
    p.values().iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}

fn main() {
    let xi = Prefix::from_ints(&[4, 3, 2, 1]);
    let eta = Prefix::from_ints(&[3, 1, 1, 0]);
    let mu = Prefix::from_ints(&[1, 2, 0, 1]);
    let (a, b) = lemma31_split(&xi, &eta, &mu).expect("partial sums of eta + mu stay below xi");
    println!("xi = {}  splits as  {}  +  {}", line(&xi), line(&a), line(&b));

    let eta = Prefix::from_ratios(&[(5, 2), (5, 2), (2, 1), (1, 1)]);
    let p = markus_matrix(&eta, &xi).expect("xi majorizes eta");
    for (i, j, v) in p.triplets() {
        println!("  P[{i},{j}] = {}", fmt_rat(&v));
    }
    println!("P xi = {}", line(&apply_matrix(&p, &xi).unwrap()));

    let rho = Prefix::from_ints(&[1, 5, 2]);
    let nu = Prefix::from_ints(&[3, 0, 4]);
    let (lhs, rhs, ok) = fan_dominates(&rho, &nu).unwrap();
    println!("(rho + nu)* = {}  <=  D_2 rho* + D_2 nu* = {}: {ok}", line(&lhs), line(&rhs));
}
