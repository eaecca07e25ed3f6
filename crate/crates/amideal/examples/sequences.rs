//! Builds a few sequences from expressions and prints their first values.
//!
//!     cargo run --example sequences -- "min(omega,zeta(2))" 8

use amideal::parse::parse_seq;

fn main() {
    let mut args = std::env::args().skip(1);
    let exprs: Vec<String> = match args.next() {
        Some(e) => vec![e],
        None => ["omega", "am(e1)", "div(ex38,omega)", "geometric(1/2)", "rsqrt"].map(String::from).to_vec(),
    };
    let n: usize = args.next().map(|s| s.parse().expect("count")).unwrap_or(6);
    for e in exprs {
        let s = parse_seq(&e).unwrap_or_else(|err| panic!("{e}: {err}"));
        let vals = s.values(n).expect("evaluates");
        println!("{s}");
        for (i, v) in vals.iter().enumerate() {
            println!("  {:>3}  {v}", i + 1);
        }
        println!("  tail after {n}: {}", s.tail_sum(n).map(|t| t.to_string()).unwrap_or_else(|e| e.to_string()));
    }
}
