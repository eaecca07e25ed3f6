use std::fmt;

use num_traits::Zero;

use super::{IdealError, IdealExpr, OrliczFn};
use crate::envelopes::{generator_seq, GeneratorKind};
use crate::num::{fmt_rat, Rat};
use crate::relations::{little_o, summable, Config, Decision};
use crate::seq::{Node, Seq, Summable};

/// A membership rule that is not "probe = O(D_m g)" for a single generator.
#[derive(Debug, Clone)]
pub enum Rule {
    L1,
    /// probe = o(omega)
    SeOmega,
    /// sum probe_n (phi_{n+1} - phi_n) < inf
    Lorentz(Seq),
    /// sum M(t probe_n) < inf for some t, or for all t when `small`
    Orlicz(OrliczFn, bool),
    /// probe_a = O(D_m g)
    Marcinkiewicz(Seq),
    /// (D_m probe) x summable for every listed x and every m
    KotheDual(Vec<Seq>),
    /// probe = O(D_m(omega log^k)) for some k, m
    StabA,
    /// probe log^k summable for every k
    StabAInf,
    /// probe_a = O(g_a)
    MeanClosure(Seq),
    /// probe summable and probe_{a inf} = O(D_m g)
    PreAmInf(Seq),
    /// probe = o(D_m g) for some m
    SoftInterior(Seq),
    /// probe^{1/p} satisfies the inner form
    Power(Rat, Box<NormalForm>),
}

#[derive(Debug, Clone)]
pub enum NormalForm {
    ReducedPrincipal { generator: Seq, steps: Vec<String> },
    NamedRule { rule: Rule, steps: Vec<String> },
    Unsupported(String),
}

impl NormalForm {
    fn rp(generator: Seq, steps: Vec<String>) -> NormalForm {
        NormalForm::ReducedPrincipal { generator, steps }
    }

    fn rule(rule: Rule, steps: Vec<String>) -> NormalForm {
        NormalForm::NamedRule { rule, steps }
    }

    pub fn steps(&self) -> &[String] {
        match self {
            NormalForm::ReducedPrincipal { steps, .. } | NormalForm::NamedRule { steps, .. } => steps,
            NormalForm::Unsupported(_) => &[],
        }
    }

    pub fn generator(&self) -> Option<&Seq> {
        match self {
            NormalForm::ReducedPrincipal { generator, .. } => Some(generator),
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::L1 => write!(f, "summable"),
            Rule::SeOmega => write!(f, "o(omega)"),
            Rule::Lorentz(w) => write!(f, "lorentz weight {w}"),
            Rule::Orlicz(OrliczFn::Power(p), small) => {
                write!(f, "orlicz t^{} for {} t", fmt_rat(p), if *small { "all" } else { "some" })
            }
            Rule::Marcinkiewicz(g) => write!(f, "mean O(D_m {g})"),
            Rule::KotheDual(v) => {
                write!(f, "kothe dual of")?;
                for s in v {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            Rule::StabA => write!(f, "O(D_m omega log^k)"),
            Rule::StabAInf => write!(f, "log^k-weighted summable"),
            Rule::MeanClosure(g) => write!(f, "mean O(mean {g})"),
            Rule::PreAmInf(g) => write!(f, "summable with tail mean O(D_m {g})"),
            Rule::SoftInterior(g) => write!(f, "o(D_m {g})"),
            Rule::Power(p, inner) => write!(f, "root {} of [{inner}]", fmt_rat(p)),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::ReducedPrincipal { generator, .. } => write!(f, "principal({generator})"),
            NormalForm::NamedRule { rule, .. } => write!(f, "{rule}"),
            NormalForm::Unsupported(why) => write!(f, "unsupported: {why}"),
        }
    }
}

fn is_finite_nonzero(s: &Seq) -> bool {
    matches!(s.node(), Node::Finite(v) if v.iter().any(|x| !x.is_zero()))
}

fn guard_summable(g: &Seq, cfg: &Config) -> Result<bool, IdealError> {
    match g.traits().summable {
        Summable::Yes => return Ok(true),
        Summable::No => return Ok(false),
        Summable::Unknown => {}
    }
    match summable(g, cfg)?.decision {
        Decision::Holds => Ok(true),
        Decision::Fails => Ok(false),
        Decision::Indeterminate => Err(IdealError::GuardIndeterminate(format!("summability of {g}"))),
    }
}

fn guard_omega_inside(g: &Seq, cfg: &Config) -> Result<bool, IdealError> {
    match super::member::principal(&Seq::omega(), g, cfg)?.decision {
        Decision::Holds => Ok(true),
        Decision::Fails => Ok(false),
        Decision::Indeterminate => Err(IdealError::GuardIndeterminate(format!("omega in ({g})"))),
    }
}

fn guard_little_o_omega(g: &Seq, cfg: &Config) -> Result<bool, IdealError> {
    match little_o(g, &Seq::omega(), cfg)?.decision {
        Decision::Holds => Ok(true),
        Decision::Fails => Ok(false),
        Decision::Indeterminate => Err(IdealError::GuardIndeterminate(format!("{g} = o(omega)"))),
    }
}

/// Rewrites `e` as far as the closed forms allow. Guards are decided at `cfg`.
pub fn normalize_ideal(e: &IdealExpr, cfg: &Config) -> Result<NormalForm, IdealError> {
    use IdealExpr as E;
    let leaf = |rule: Rule, what: &str| Ok(NormalForm::rule(rule, vec![what.to_string()]));
    match e {
        E::Principal(s) => Ok(NormalForm::rp(s.clone(), vec![])),
        E::OmegaPrincipal => Ok(NormalForm::rp(Seq::omega(), vec!["om = (omega)".into()])),
        E::L1 => leaf(Rule::L1, "l1"),
        E::SeOmega => leaf(Rule::SeOmega, "se(omega)"),
        E::Lorentz(w) => leaf(Rule::Lorentz(w.clone()), "lorentz"),
        E::Orlicz(m, small) => leaf(Rule::Orlicz(m.clone(), *small), "orlicz"),
        E::Marcinkiewicz(s) => leaf(Rule::Marcinkiewicz(s.clone()), "marcinkiewicz"),
        E::KotheDual(v) => leaf(Rule::KotheDual(v.clone()), "kothe dual"),
        E::StabA => leaf(Rule::StabA, "union of (omega log^k)"),
        E::StabAInf => leaf(Rule::StabAInf, "intersection of log^k-weighted l1"),
        E::Sum(a, b) | E::Cap(a, b) => {
            let (na, nb) = (normalize_ideal(a, cfg)?, normalize_ideal(b, cfg)?);
            match (&na, &nb) {
                (
                    NormalForm::ReducedPrincipal { generator: ga, steps: sa },
                    NormalForm::ReducedPrincipal { generator: gb, steps: sb },
                ) => {
                    let mut steps = [sa.clone(), sb.clone()].concat();
                    if matches!(e, E::Sum(..)) {
                        steps.push("(x) + (y) = (x + y)".into());
                        Ok(NormalForm::rp(ga.add(gb), steps))
                    } else {
                        steps.push("(x) cap (y) = (min(x, y))".into());
                        Ok(NormalForm::rp(ga.min(gb), steps))
                    }
                }
                _ => Ok(NormalForm::Unsupported(format!("{e}: operands are not both principal"))),
            }
        }
        E::Pow(inner, p) => {
            let n = normalize_ideal(inner, cfg)?;
            Ok(match n {
                NormalForm::ReducedPrincipal { generator, mut steps } => {
                    steps.push(format!("(x)^{0} = (x^{0})", fmt_rat(p)));
                    NormalForm::rp(generator.pow(p.clone()), steps)
                }
                NormalForm::NamedRule { mut steps, rule } => {
                    steps.push(format!("power {}", fmt_rat(p)));
                    let inner = NormalForm::NamedRule { rule, steps: vec![] };
                    NormalForm::rule(Rule::Power(p.clone(), Box::new(inner)), steps)
                }
                u => u,
            })
        }
        _ => {
            let child = e.unary_child().expect("unary operator");
            let n = normalize_ideal(child, cfg)?;
            match n {
                NormalForm::ReducedPrincipal { generator, steps } => unary_on_principal(e, generator, steps, cfg),
                NormalForm::NamedRule { rule: Rule::L1, mut steps } if matches!(e, E::Am(_)) => {
                    steps.push("(l1)_a = (omega)".into());
                    Ok(NormalForm::rp(Seq::omega(), steps))
                }
                NormalForm::Unsupported(why) => Ok(NormalForm::Unsupported(why)),
                NormalForm::NamedRule { .. } => {
                    Ok(NormalForm::Unsupported(format!("{e}: no closed form for this operator on a non-principal ideal")))
                }
            }
        }
    }
}

fn unary_on_principal(e: &IdealExpr, g: Seq, mut steps: Vec<String>, cfg: &Config) -> Result<NormalForm, IdealError> {
    use IdealExpr as E;
    let mut push = |s: &str| {
        steps.push(s.to_string());
        steps.clone()
    };
    Ok(match e {
        E::Am(_) if is_finite_nonzero(&g) => NormalForm::rp(Seq::omega(), push("finite rank: F_a = (omega)")),
        E::Am(_) => NormalForm::rp(g.am(), push("(x)_a = (x_a)")),
        E::PreAm(_) => NormalForm::rule(Rule::Marcinkiewicz(g), push("_a(x): mean O(D_m x)")),
        E::Interior(_) if g.is_omega() => NormalForm::rp(g, push("lnd of a constant")),
        E::Interior(_) => {
            NormalForm::rp(generator_seq(GeneratorKind::AmInterior, &g), push("(x)^o = (omega lnd(x/omega))"))
        }
        E::OO(_) if g.is_omega() => NormalForm::rp(g, push("und of a constant")),
        E::OO(_) => NormalForm::rp(generator_seq(GeneratorKind::AmOo, &g), push("(x)^oo = (omega und(x/omega))")),
        E::Closure(_) => NormalForm::rule(Rule::MeanClosure(g), push("(x)^- : mean O(x_a), x_a has delta_1/2")),
        E::AmInf(_) => {
            if guard_summable(&g, cfg)? {
                NormalForm::rp(g.am_inf(), push("(x)_{a inf} = (x_{a inf}) for summable x"))
            } else {
                NormalForm::rule(Rule::SeOmega, push("(x)_{a inf} = se(omega) for nonsummable x"))
            }
        }
        E::PreAmInf(_) => NormalForm::rule(Rule::PreAmInf(g), push("_{a inf}(x)")),
        E::InteriorInf(_) => {
            if guard_omega_inside(&g, cfg)? {
                NormalForm::rule(Rule::SeOmega, push("(x)^{o inf} = se(omega) if omega in (x)"))
            } else {
                NormalForm::rp(
                    generator_seq(GeneratorKind::AminfInterior, &g),
                    push("(x)^{o inf} = (omega lni(x/omega)) if omega not in (x)"),
                )
            }
        }
        E::OOInf(_) => {
            if guard_little_o_omega(&g, cfg)? {
                NormalForm::rp(
                    generator_seq(GeneratorKind::AminfOo, &g),
                    push("(x)^{oo inf} = (omega uni(x/omega)) if (x) in se(omega)"),
                )
            } else {
                NormalForm::rule(Rule::SeOmega, push("(x)^{oo inf} = se(omega) if (x) not in se(omega)"))
            }
        }
        E::ClosureInf(_) => {
            if guard_summable(&g, cfg)? {
                NormalForm::rule(Rule::PreAmInf(g.am_inf()), push("(x)^{- inf} = _{a inf}((x_{a inf}))"))
            } else {
                NormalForm::rule(Rule::L1, push("(x)^{- inf} = l1 for nonsummable x"))
            }
        }
        E::Se(_) if g.is_omega() => NormalForm::rule(Rule::SeOmega, push("se(omega)")),
        E::Se(_) => NormalForm::rule(Rule::SoftInterior(g), push("se(x): o(D_m x)")),
        E::Sc(_) => NormalForm::rp(g, push("countably generated ideals are soft-complemented")),
        _ => unreachable!("not a unary operator"),
    })
}

/// The generator when `e` is principal after normalization.
pub fn generator_of(e: &IdealExpr, cfg: &Config) -> Result<Seq, IdealError> {
    match normalize_ideal(e, cfg)? {
        NormalForm::ReducedPrincipal { generator, .. } => Ok(generator),
        NormalForm::NamedRule { rule, steps } => Err(IdealError::NotPrincipal(
            steps.last().cloned().unwrap_or_else(|| rule.to_string()),
        )),
        NormalForm::Unsupported(why) => Err(IdealError::UnsupportedIdeal(why)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::parse_ideal;

    fn gen(t: &str) -> Result<Seq, IdealError> {
        generator_of(&parse_ideal(t).unwrap(), &Config::default())
    }

    #[test]
    fn principal_reductions() {
        assert_eq!(gen("am(principal(e1))").unwrap().to_string(), "omega");
        assert_eq!(gen("int(principal(omega))").unwrap().to_string(), "omega");
        assert_eq!(gen("sc(principal(ex220))").unwrap().to_string(), "ex220");
        assert_eq!(gen("oo(principal(ex220))").unwrap().to_string(), "times(omega,und(div(ex220,omega)))");
        assert_eq!(gen("am(l1)").unwrap().to_string(), "omega");
        assert_eq!(gen("sum(principal(zeta(2)),principal(omega))").unwrap().to_string(), "plus(zeta(2),omega)");
        assert_eq!(gen("pow(principal(omega),2)").unwrap().to_string(), "pow(omega,2)");
    }

    #[test]
    fn non_principal_cases() {
        match gen("intinf(principal(omega))") {
            Err(IdealError::NotPrincipal(why)) => assert!(why.contains("se(omega)"), "{why}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(gen("sc(l1)"), Err(IdealError::UnsupportedIdeal(_))));
        assert!(matches!(gen("sum(l1,om)"), Err(IdealError::UnsupportedIdeal(_))));
        let n = normalize_ideal(&parse_ideal("clinf(principal(omega))").unwrap(), &Config::default()).unwrap();
        assert!(matches!(n, NormalForm::NamedRule { rule: Rule::L1, .. }));
        let n = normalize_ideal(&parse_ideal("aminf(principal(ex220))").unwrap(), &Config::default()).unwrap();
        assert!(matches!(n, NormalForm::NamedRule { rule: Rule::SeOmega, .. }));
    }
}
