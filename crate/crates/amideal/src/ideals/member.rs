use num_traits::One;

use super::normal::{normalize_ideal, NormalForm, Rule};
use super::{IdealError, IdealExpr, OrliczFn};
use crate::num::Rat;
use crate::relations::{big_o, little_o, summable, Config, Decision, Verdict};
use crate::seq::Seq;

fn ampl(g: &Seq, m: usize) -> Seq {
    if m == 1 {
        g.clone()
    } else {
        g.ampliate(m)
    }
}

/// `exists m <= m_max: f(m)` for a predicate monotone in `m` (true at m
/// implies true at every larger m), so a failure at `m_max` settles all m.
fn exists_monotone_m(
    cfg: &Config,
    mut f: impl FnMut(usize) -> Result<Verdict, IdealError>,
) -> Result<Verdict, IdealError> {
    let first = f(1)?;
    if first.holds() || cfg.m_max == 1 {
        return Ok(first.with_m(1));
    }
    let top = f(cfg.m_max)?;
    match top.decision {
        Decision::Fails => {
            let note = format!("fails for every m <= {} ({})", cfg.m_max, top.note);
            return Ok(top.with_m(cfg.m_max).with_note(note));
        }
        Decision::Indeterminate => return Ok(top),
        Decision::Holds => {}
    }
    for m in 2..cfg.m_max {
        let v = f(m)?;
        if v.holds() {
            return Ok(v.with_m(m));
        }
    }
    Ok(top.with_m(cfg.m_max))
}

type Thunk<'a> = Box<dyn FnOnce() -> Result<Verdict, IdealError> + 'a>;

/// Conjunction with early exit on the first refutation.
fn forall<'a>(
    cfg: &Config,
    items: impl IntoIterator<Item = (usize, Thunk<'a>)>,
    what: &str,
) -> Result<Verdict, IdealError> {
    let mut unsure = None;
    let mut count = 0;
    for (tag, f) in items {
        let v = f()?;
        count += 1;
        match v.decision {
            Decision::Fails => {
                let note = format!("{what}: refuted at {tag} ({})", v.note);
                return Ok(v.with_m(tag).with_note(note));
            }
            Decision::Indeterminate => unsure = Some((tag, v)),
            Decision::Holds => {}
        }
    }
    if let Some((tag, v)) = unsure {
        let note = format!("{what}: unsettled at {tag} ({})", v.note);
        return Ok(v.with_note(note));
    }
    Ok(Verdict::exact_holds(cfg, None, format!("{what}: holds up to bound ({count} cases)")))
}

/// `probe = O(D_m g)` for some `m <= m_max`.
pub(crate) fn principal(probe: &Seq, g: &Seq, cfg: &Config) -> Result<Verdict, IdealError> {
    exists_monotone_m(cfg, |m| Ok(big_o(probe, &ampl(g, m), cfg)?))
}

fn both(a: Verdict, b: impl FnOnce() -> Result<Verdict, IdealError>) -> Result<Verdict, IdealError> {
    match a.decision {
        Decision::Fails => Ok(a),
        Decision::Holds => {
            let v = b()?;
            Ok(v)
        }
        Decision::Indeterminate => {
            let v = b()?;
            Ok(if v.fails() { v } else { a })
        }
    }
}

fn eval_form(probe: &Seq, nf: &NormalForm, cfg: &Config) -> Result<Verdict, IdealError> {
    match nf {
        NormalForm::ReducedPrincipal { generator, .. } => principal(probe, generator, cfg),
        NormalForm::NamedRule { rule, .. } => eval_rule(probe, rule, cfg),
        NormalForm::Unsupported(why) => Err(IdealError::UnsupportedIdeal(why.clone())),
    }
}

fn eval_rule(probe: &Seq, rule: &Rule, cfg: &Config) -> Result<Verdict, IdealError> {
    Ok(match rule {
        Rule::L1 => summable(probe, cfg)?,
        Rule::SeOmega => little_o(probe, &Seq::omega(), cfg)?,
        Rule::Lorentz(w) => summable(&probe.mul(&w.diff()), cfg)?,
        Rule::Orlicz(m @ OrliczFn::Power(_), small) => {
            // sum (t x)^p = t^p sum x^p, so every t on the grid gives the same answer
            let v = summable(&m.apply(probe), cfg)?;
            let q = if *small { "all" } else { "some" };
            let note = format!("{q} t on grid 2^-{k}..2^{k}, homogeneous M: {}", v.note, k = cfg.k_max);
            v.with_note(note)
        }
        Rule::Marcinkiewicz(g) => principal(&probe.am(), g, cfg)?,
        Rule::KotheDual(xs) => {
            let items = (1..=cfg.m_max).flat_map(|m| {
                xs.iter().map(move |x| {
                    let f: Thunk<'_> =
                        Box::new(move || Ok(summable(&ampl(probe, m).mul(x), cfg)?));
                    (m, f)
                })
            });
            forall(cfg, items, "(D_m probe) x summable")?
        }
        Rule::StabA => {
            let mut unsure = None;
            for k in 0..=cfg.k_max {
                let v = principal(probe, &Seq::omlog(k), cfg)?;
                match v.decision {
                    Decision::Holds => {
                        let note = format!("k = {k}: {}", v.note);
                        return Ok(v.with_note(note));
                    }
                    Decision::Indeterminate => unsure = Some(v),
                    Decision::Fails => {}
                }
            }
            match unsure {
                Some(v) => v,
                None => Verdict::exact_fails(cfg, vec![], format!("fails for every k <= {} and m <= {}", cfg.k_max, cfg.m_max)),
            }
        }
        Rule::StabAInf => {
            let items = (0..=cfg.k_max).map(|k| {
                let f: Thunk<'_> =
                    Box::new(move || Ok(summable(&probe.mul(&Seq::log_pow(k)), cfg)?));
                (k as usize, f)
            });
            forall(cfg, items, "probe log^k summable")?
        }
        Rule::MeanClosure(g) => big_o(&probe.am(), &g.am(), cfg)?,
        Rule::PreAmInf(g) => both(summable(probe, cfg)?, || principal(&probe.am_inf(), g, cfg))?,
        Rule::SoftInterior(g) => exists_monotone_m(cfg, |m| Ok(little_o(probe, &ampl(g, m), cfg)?))?,
        Rule::Power(p, inner) => eval_form(&probe.pow(Rat::one() / p), inner, cfg)?,
    })
}

/// Horizon verdict for `probe` in the ideal `e`.
pub fn member(probe: &Seq, e: &IdealExpr, cfg: &Config) -> Result<Verdict, IdealError> {
    let nf = normalize_ideal(e, cfg)?;
    eval_form(probe, &nf, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::parse_ideal;
    use crate::parse::parse_seq;

    fn mem(p: &str, i: &str, n: usize) -> Verdict {
        member(&parse_seq(p).unwrap(), &parse_ideal(i).unwrap(), &Config::with_horizon(n)).unwrap()
    }

    #[test]
    fn basic_memberships() {
        let v = mem("omega", "principal(omega)", 10_000);
        assert!(v.holds());
        let w = v.witness.unwrap();
        assert_eq!((w.m, w.c), (Some(1), Some(Rat::one())));
        assert!(mem("omega", "l1", 100_000).fails());
        assert!(mem("zeta(2)", "l1", 10_000).holds());
        assert!(mem("zeta(2)", "seom", 10_000).holds());
        assert!(mem("omega", "seom", 10_000).fails());
    }

    #[test]
    fn kothe_dual_refuted_at_two() {
        let v = mem("ex415eta", "kdual(pow3)", 2_000);
        assert!(v.fails(), "{v:?}");
        assert_eq!(v.witness.unwrap().m, Some(2));
    }

    #[test]
    fn powers_and_orlicz() {
        assert!(mem("zeta(4)", "pow(l1,2)", 4_000).holds());
        assert!(mem("zeta(2)", "pow(l1,2)", 4_000).fails());
        assert!(mem("omega", "pow(l1,1/2)", 4_000).holds());
        assert!(mem("rsqrt", "pow(l1,1/2)", 10_000).fails());
        assert!(mem("omega", "orlicz(2)", 4_000).holds());
        assert!(mem("rsqrt", "orlicz(2)", 10_000).fails());
    }
}

#[cfg(test)]
mod split_tests {
    use super::*;
    use crate::ideals::parse_ideal;
    use crate::parse::parse_seq;

    #[test]
    fn split_sides_are_not_above_omega() {
        let cfg = Config::with_horizon(65_536);
        // b's third peak past n0 sits at 1100787, out of reach; a peaks at 13, 364, 46058
        let e = parse_ideal("principal(ex24split_a)").unwrap();
        let v = member(&Seq::omega(), &e, &cfg).unwrap();
        assert!(v.fails(), "{v:?}");
        assert_eq!(v.witness.and_then(|w| w.m), Some(8));
        let e = parse_ideal("sum(principal(ex24split_a),principal(ex24split_b))").unwrap();
        assert!(member(&parse_seq("omega").unwrap(), &e, &cfg).unwrap().holds());
    }
}
