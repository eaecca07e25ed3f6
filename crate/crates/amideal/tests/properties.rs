use amideal::envelopes::{concave_majorant, envelope_prefix, MajBoundary};
use amideal::majorization::{apply_matrix, fan_dominates, lemma31_split, markus_matrix};
use amideal::num::{rat, Rat};
use amideal::parse::parse_seq;
use amideal::relations::{big_o, delta_half, majorizes, Config};
use amideal::seq::{check_monotone, corpus_names, corpus_seq, EnvMode, Prefix};
use amideal::transforms::{am, ampliate, mean_inverse};
use num_traits::Zero;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rat> {
    (0i64..=12, prop::sample::select(vec![1i64, 2, 3, 4, 6])).prop_map(|(p, q)| rat(p, q))
}

fn prefix(max: usize) -> impl Strategy<Value = Prefix> {
    prop::collection::vec(entry(), 1..=max).prop_map(Prefix::new)
}

fn monotone(max: usize) -> impl Strategy<Value = Prefix> {
    prop::collection::vec(entry(), 1..=max).prop_map(|mut v| {
        v.sort_by(|a, b| b.cmp(a));
        Prefix::new(v)
    })
}

fn signed(max: usize) -> impl Strategy<Value = Prefix> {
    prop::collection::vec((-12i64..=12, 1i64..=6), 1..=max).prop_map(|v| Prefix::new(v.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

fn add(a: &Prefix, b: &Prefix) -> Prefix {
    Prefix::new(a.values().iter().zip(b.values()).map(|(x, y)| x + y).collect())
}

fn sums_le(a: &Prefix, b: &Prefix) -> bool {
    a.partial_sums().iter().zip(b.partial_sums()).all(|(x, y)| *x <= y)
}

/// Least concave majorant on [1, n] by brute force over all chords.
fn hull_oracle(v: &[Rat]) -> Vec<Rat> {
    let n = v.len();
    (0..n)
        .map(|j| {
            let mut best = v[j].clone();
            for i in 0..=j {
                for k in j..n {
                    if i < k {
                        let t = rat((j - i) as i64, (k - i) as i64);
                        let c = &v[i] + (&v[k] - &v[i]) * t;
                        if c > best {
                            best = c;
                        }
                    }
                }
            }
            best
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mean_inverse_roundtrips(p in signed(60)) {
        prop_assert_eq!(mean_inverse(&am(&p)), p.clone());
        prop_assert_eq!(am(&mean_inverse(&p)), p);
    }

    #[test]
    fn am_of_monotone_is_monotone_with_concave_partial_sums(p in monotone(60)) {
        let a = am(&p);
        prop_assert!(a.is_nonincreasing());
        let s = p.partial_sums();
        prop_assert!(s.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.windows(3).all(|w| &w[1] + &w[1] >= &w[0] + &w[2]));
        if s.len() >= 2 {
            prop_assert!(a.values()[0].clone() * rat(2, 1) >= s[1]);
        }
    }

    #[test]
    fn ampliation_mean_bounds(p in monotone(40), m in 1usize..5) {
        let (a, d) = (am(&p), am(&ampliate(m, &p)));
        for i in 1..=p.len() {
            prop_assert!(d.at(i) <= &(a.at(i) * rat(m as i64, 1)));
            if m * i <= d.len() {
                prop_assert!(a.at(i) <= d.at(m * i));
            }
        }
    }

    #[test]
    fn envelopes_are_idempotent_and_und_subadditive(a in prefix(40), b in prefix(40)) {
        for mode in [EnvMode::Und, EnvMode::Lni, EnvMode::Lnd, EnvMode::Uni] {
            let once = envelope_prefix(mode, &a).values;
            prop_assert_eq!(envelope_prefix(mode, &once).values, once);
        }
        let n = a.len().min(b.len());
        let cut = |p: &Prefix| Prefix::new(p.values()[..n].to_vec());
        let (a, b) = (cut(&a), cut(&b));
        let lhs = envelope_prefix(EnvMode::Und, &add(&a, &b)).values;
        let rhs = add(&envelope_prefix(EnvMode::Und, &a).values, &envelope_prefix(EnvMode::Und, &b).values);
        prop_assert!(lhs.values().iter().zip(rhs.values()).all(|(x, y)| x <= y));
    }

    #[test]
    fn concave_majorant_matches_oracle(parts in prop::collection::vec((entry(), entry()), 1..4), n in 1usize..30) {
        // sums of min(c, d i) are nondecreasing with phi_i / i nonincreasing
        let v: Vec<Rat> = (1..=n)
            .map(|i| parts.iter().fold(Rat::zero(), |acc, (c, d)| acc + std::cmp::min(c.clone(), d * rat(i as i64, 1))))
            .collect();
        let phi = Prefix::new(v.clone());
        let psi = concave_majorant(&phi, MajBoundary::WindowExact).unwrap();
        prop_assert_eq!(psi.values.values().to_vec(), hull_oracle(&v));
        for (x, y) in phi.values().iter().zip(psi.values.values()) {
            prop_assert!(x <= y && *y <= x * rat(2, 1));
        }
    }

    #[test]
    fn majorization_is_reflexive_and_transitive(a in monotone(20), b in monotone(20), c in monotone(20)) {
        let cfg = Config::default();
        prop_assert!(majorizes(&a, &a, &cfg).unwrap().holds());
        let n = a.len().min(b.len()).min(c.len());
        let cut = |p: &Prefix| Prefix::new(p.values()[..n].to_vec());
        let (a, b, c) = (cut(&a), cut(&b), cut(&c));
        let ab = majorizes(&a, &b, &cfg).unwrap().holds();
        let bc = majorizes(&b, &c, &cfg).unwrap().holds();
        if ab && bc {
            prop_assert!(majorizes(&a, &c, &cfg).unwrap().holds());
        }
        if ab && majorizes(&b, &a, &cfg).unwrap().holds() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn split_post_conditions(xi in prefix(30), w in prop::collection::vec((0i64..=3, 0i64..=3), 30)) {
        // eta + mu = a pointwise fraction of xi, which keeps the hypothesis
        let n = xi.len();
        let eta = Prefix::new((0..n).map(|j| xi.values()[j].clone() * rat(w[j].0, 6)).collect());
        let mu = Prefix::new((0..n).map(|j| xi.values()[j].clone() * rat(w[j].1, 6)).collect());
        let (a, b) = lemma31_split(&xi, &eta, &mu).unwrap();
        prop_assert_eq!(add(&a, &b), xi);
        prop_assert!(a.is_nonnegative() && b.is_nonnegative());
        prop_assert!(sums_le(&eta, &a) && sums_le(&mu, &b));
    }

    #[test]
    fn markus_matrix_reproduces_eta(xi in monotone(20), shrink in prop::collection::vec(0i64..=4, 20)) {
        // eta = sorted pointwise shrink of xi is majorized by xi
        let mut e: Vec<Rat> = xi.values().iter().zip(&shrink).map(|(x, s)| x * rat(*s, 4)).collect();
        e.sort_by(|a, b| b.cmp(a));
        let eta = Prefix::new(e);
        let p = markus_matrix(&eta, &xi).unwrap();
        prop_assert!(p.validate().is_ok());
        prop_assert_eq!(apply_matrix(&p, &xi).unwrap(), eta);
    }

    #[test]
    fn fan_inequality(rho in prefix(60), mu in prefix(60)) {
        let n = rho.len().min(mu.len());
        let cut = |p: &Prefix| Prefix::new(p.values()[..n].to_vec());
        prop_assert!(fan_dominates(&cut(&rho), &cut(&mu)).unwrap().2);
    }

    #[test]
    fn seq_display_roundtrips(i in 0usize..64) {
        let exprs = ["am(e1)", "div(ex38,omega)", "min(omega,zeta(2))", "d(2,rsqrt)", "und(div(ex220,omega))", "plus(omega,geometric(1/2))", "times(omega,omega)", "pow(omega,1/2)", "aminf(zeta(3))", "concmaj(omega)"];
        let e = exprs[i % exprs.len()];
        let s = parse_seq(e).unwrap();
        prop_assert_eq!(parse_seq(&s.to_string()).unwrap().to_string(), s.to_string());
    }
}

#[test]
fn corpus_sequences_are_monotone() {
    let named = corpus_names().iter().filter(|(_, k)| *k == 0).map(|(n, _)| corpus_seq(n, &[]).unwrap());
    let params = ["zeta(2)", "geometric(2/3)", "omlog(2)", "const(1/2)"].map(|e| parse_seq(e).unwrap());
    for s in named.chain(params) {
        if s.traits().nonincreasing {
            assert!(check_monotone(&s, 10_000).is_ok(), "{s}");
        }
    }
}

#[test]
fn tail_sums_telescope() {
    for e in ["zeta(2)", "geometric(1/3)", "ex415eta", "ex38"] {
        let s = parse_seq(e).unwrap();
        let v = s.values(1_000).unwrap();
        for (n, m) in [(1usize, 2usize), (10, 100), (37, 1_000), (500, 999)] {
            let (tn, tm) = (s.tail_sum(n).unwrap(), s.tail_sum(m).unwrap());
            let mid = v[n..m].iter().fold(amideal::num::Interval::zero(), |a, x| a.add(x));
            let shifted = tm.add(&mid);
            assert!(shifted.lo <= tn.hi && tn.lo <= shifted.hi, "{e} n={n} m={m}");
        }
    }
}

#[test]
fn delta_half_gives_ampliation_bound() {
    let cfg = Config::with_horizon(4_000);
    for e in ["omega", "zeta(2)", "rsqrt", "omlog(1)"] {
        let s = parse_seq(e).unwrap();
        if delta_half(&s, &cfg).unwrap().holds() {
            assert!(big_o(&s.ampliate(2), &s, &cfg).unwrap().holds(), "{e}");
        }
    }
}

#[test]
fn verdicts_stable_under_doubling() {
    for (a, b) in [("zeta(2)", "omega"), ("omega", "zeta(2)"), ("rsqrt", "omega"), ("am(zeta(2))", "omega")] {
        let (x, y) = (parse_seq(a).unwrap(), parse_seq(b).unwrap());
        let v1 = big_o(&x, &y, &Config::with_horizon(2_000)).unwrap();
        let v2 = big_o(&x, &y, &Config::with_horizon(4_000)).unwrap();
        assert_eq!(v1.decision, v2.decision, "{a} vs {b}");
    }
}
