//! Runs corpus checks one at a time and prints a status line per check.
//!
//!     cargo run --example corpus_report -- EX3.8 REG

use std::time::Instant;

use amideal::corpus::{list_checks, run_corpus};
use amideal::relations::Config;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<String> = if args.is_empty() { list_checks().iter().map(|c| c.id.to_string()).collect() } else { args };
    let cfg = Config::default();
    for id in ids {
        let t = Instant::now();
        let res = run_corpus(Some(std::slice::from_ref(&id)), &cfg, 42).expect("known id");
        let r = &res[0];
        println!("{:<14} {:<13} {:>6.2}s", r.id, r.status.to_string(), t.elapsed().as_secs_f64());
        if r.status.to_string() != "pass" {
            println!("{}", serde_json::to_string_pretty(&r.details).unwrap());
        }
    }
}
