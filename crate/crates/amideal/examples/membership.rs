//! Membership of probes in ideals, and the normal forms the ideals reduce to.
//!
//!     cargo run --example membership -- ex415eta "kdual(pow3)"

use amideal::ideals::{member, normalize_ideal, parse_ideal};
use amideal::parse::parse_seq;
use amideal::relations::Config;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases: Vec<(String, String)> = if args.len() == 2 {
        vec![(args[0].clone(), args[1].clone())]
    } else {
        [
            ("zeta(2)", "am(principal(omega))"),
            ("omega", "l1"),
            ("geometric(1/2)", "aminf(principal(zeta(2)))"),
            ("rsqrt", "cl(principal(ex220))"),
            ("ex415eta", "kdual(pow3)"),
        ]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .to_vec()
    };
    let cfg = Config::with_horizon(4_000);
    for (p, i) in cases {
        let probe = parse_seq(&p).unwrap();
        let ideal = parse_ideal(&i).unwrap();
        match normalize_ideal(&ideal, &cfg) {
            Ok(nf) => println!("{ideal}  ~>  {nf}"),
            Err(e) => println!("{ideal}  (no normal form: {e})"),
        }
        match member(&probe, &ideal, &cfg) {
            Ok(v) => println!("  {probe} in it: {}  {}", v.decision, v.note),
            Err(e) => println!("  {probe}: {e}"),
        }
    }
}
