//! Translation of G3C derivations into SC∞.
//!
//! Each G3C rule becomes a short SC∞ fragment. `~` is traded for `-` by a
//! cut against `~A => -A` (right) or `-A => ~A` (left), and the repeated
//! principal formula of `Limp`/`L~imp` is merged with one `CL`.

use thiserror::Error;

use super::{apply_builtin, derive_starred, permute, rf, weaken_to, ScDerivation, ScRule, Starred};
use crate::derivation::Derivation;
use crate::g3c::{left_principal, G3Derivation, G3Rule};
use crate::syntax::{Formula, RExpr, RSequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("node [{path}]: hypothesis leaves have no SC∞ counterpart")]
    Hypothesis { path: String },
    #[error("node [{path}]: not a valid G3C inference")]
    Malformed { path: String },
}

fn fx(f: &Formula) -> RExpr {
    RExpr::Fml(f.clone())
}

fn ctx(fs: &[Formula]) -> Vec<RExpr> {
    fs.iter().map(fx).collect()
}

fn plus(base: &[RExpr], extra: &[RExpr]) -> Vec<RExpr> {
    let mut v = base.to_vec();
    v.extend_from_slice(extra);
    v
}

fn placeholder_side() -> RExpr {
    RExpr::atom("_")
}

/// `Θ => ~X` to `Θ => -X`.
fn neg_to_ref_right(d: ScDerivation) -> ScDerivation {
    let theta = d.conclusion.context.clone();
    let x = match &d.conclusion.succedent {
        RExpr::Fml(Formula::Neg(x)) => (**x).clone(),
        other => panic!("expected a negated succedent, found `{other}`"),
    };
    let minus_x = fx(&x).neg();
    let conv = apply_builtin(
        "~L",
        &theta,
        &minus_x,
        &[x],
        vec![weaken_to(rf(minus_x.clone()), &plus(&theta, std::slice::from_ref(&minus_x)))],
    );
    Derivation::node(ScRule::Cut, RSequent::new(theta, minus_x), vec![d, conv])
}

/// `Θ, ~X => C` (any order) to `Θ, -X => C`, with `-X` last.
fn neg_to_ref_left(d: ScDerivation, x: &Formula) -> ScDerivation {
    let neg_x = fx(&Formula::neg(x.clone()));
    let minus_x = fx(x).neg();
    let mut delta = d.conclusion.context.clone();
    let pos = delta.iter().position(|e| *e == neg_x).expect("~X in context");
    delta.remove(pos);
    delta.push(minus_x.clone());
    let succ = d.conclusion.succedent.clone();
    let left =
        apply_builtin("~R", &delta, &placeholder_side(), std::slice::from_ref(x), vec![weaken_to(rf(minus_x), &delta)]);
    let right = weaken_to(d, &plus(&delta, &[neg_x]));
    Derivation::node(ScRule::Cut, RSequent::new(delta, succ), vec![left, right])
}

/// Embeds a G3C derivation. The result concludes the same sequent, with the
/// context read as a series in its stored order.
pub fn embed_g3c(d: &G3Derivation) -> Result<ScDerivation, EmbedError> {
    let mut path = Vec::new();
    embed_at(d, &mut path)
}

fn path_text(path: &[usize]) -> String {
    path.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
}

fn embed_at(d: &G3Derivation, path: &mut Vec<usize>) -> Result<ScDerivation, EmbedError> {
    let mut e = Vec::with_capacity(d.premises.len());
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        e.push(embed_at(p, path)?);
        path.pop();
    }
    let malformed = || EmbedError::Malformed { path: path_text(path) };
    let g = ctx(&d.conclusion.context);
    let succ = &d.conclusion.succedent;
    let c = fx(succ);
    let side = placeholder_side();

    use Formula::*;
    use G3Rule::*;
    let right = |name: &str, args: &[Formula], premises| apply_builtin(name, &g, &side, args, premises);
    let out = match (d.rule, succ) {
        (Hyp, _) => return Err(EmbedError::Hypothesis { path: path_text(path) }),
        (Rf | RfNeg, _) => weaken_to(rf(c), &g),
        (AnalyticCut, _) => {
            let cut_f = e[0].conclusion.succedent.clone();
            let mut e = e.into_iter();
            let left = permute(e.next().unwrap(), &g);
            let right = permute(e.next().unwrap(), &plus(&g, &[cut_f]));
            Derivation::node(ScRule::Cut, RSequent::new(g.clone(), c), vec![left, right])
        }
        (AndR, And(a, b)) => {
            let ps = e.into_iter().map(|p| permute(p, &g)).collect();
            right("andR", &[(**a).clone(), (**b).clone()], ps)
        }
        (OrR1 | OrR2, Or(a, b)) => {
            let name = if d.rule == OrR1 { "orR1" } else { "orR2" };
            let ps = e.into_iter().map(|p| permute(p, &g)).collect();
            right(name, &[(**a).clone(), (**b).clone()], ps)
        }
        (ImpR, Imp(a, b)) => {
            let p = permute(e.remove(0), &plus(&g, &[fx(a)]));
            derive_starred(Starred::ImpR, &g, a, b, vec![p])
        }
        (NegNegR, Neg(x)) => {
            let Neg(a) = &**x else { return Err(malformed()) };
            let inner = apply_builtin("~R-", &g, &side, &[(**a).clone()], vec![permute(e.remove(0), &g)]);
            right("~R", &[(**x).clone()], vec![inner])
        }
        (NegAndR1 | NegAndR2 | NegOrR, Neg(x)) => {
            let (And(a, b) | Or(a, b)) = &**x else { return Err(malformed()) };
            let name = match d.rule {
                NegAndR1 => "andR-1",
                NegAndR2 => "andR-2",
                _ => "orR-",
            };
            let ps = e.into_iter().map(|p| neg_to_ref_right(permute(p, &g))).collect();
            let inner = apply_builtin(name, &g, &side, &[(**a).clone(), (**b).clone()], ps);
            right("~R", &[(**x).clone()], vec![inner])
        }
        (NegImpR, Neg(x)) => {
            let Imp(a, b) = &**x else { return Err(malformed()) };
            let p = neg_to_ref_right(permute(e.remove(0), &plus(&g, &[fx(a)])));
            let inner = derive_starred(Starred::ImpRNeg, &g, a, b, vec![p]);
            right("~R", &[(**x).clone()], vec![inner])
        }
        _ => {
            let i = left_principal(d).ok_or_else(malformed)?;
            let principal = d.conclusion.context[i].clone();
            let mut rest = g.clone();
            rest.remove(i);
            let node = embed_left(d.rule, &principal, &rest, &c, e).ok_or_else(malformed)?;
            permute(node, &g)
        }
    };
    Ok(out)
}

/// A left-rule fragment concluding `rest, principal => c`.
fn embed_left(
    rule: G3Rule,
    principal: &Formula,
    rest: &[RExpr],
    c: &RExpr,
    mut e: Vec<ScDerivation>,
) -> Option<ScDerivation> {
    use Formula::*;
    use G3Rule::*;
    let two = |a: &Formula, b: &Formula| [a.clone(), b.clone()];
    let node = match (rule, principal) {
        (AndL, And(a, b)) => {
            let p = permute(e.remove(0), &plus(rest, &[fx(a), fx(b)]));
            apply_builtin("andL", rest, c, &two(a, b), vec![p])
        }
        (OrL, Or(a, b)) => {
            let p1 = permute(e.remove(0), &plus(rest, &[fx(a)]));
            let p2 = permute(e.remove(0), &plus(rest, &[fx(b)]));
            apply_builtin("orL", rest, c, &two(a, b), vec![p1, p2])
        }
        (ImpL, Imp(a, b)) => {
            let delta = plus(rest, &[fx(principal)]);
            let p1 = permute(e.remove(0), &delta);
            let p2 = weaken_to(e.remove(0), &plus(&delta, &[fx(b)]));
            let star = derive_starred(Starred::ImpL, &delta, a, b, vec![p1, p2]);
            Derivation::node(ScRule::Cl, RSequent::new(delta, c.clone()), vec![star])
        }
        (NegNegL | NegAndL | NegOrL | NegImpL, Neg(x)) => {
            let x = &**x;
            let inner = match (rule, x) {
                (NegNegL, Neg(a)) => {
                    let p = permute(e.remove(0), &plus(rest, &[fx(a)]));
                    apply_builtin("~L-", rest, c, &[(**a).clone()], vec![p])
                }
                (NegAndL, And(a, b)) => {
                    let p1 = permute(neg_to_ref_left(e.remove(0), a), &plus(rest, &[fx(a).neg()]));
                    let p2 = permute(neg_to_ref_left(e.remove(0), b), &plus(rest, &[fx(b).neg()]));
                    apply_builtin("andL-", rest, c, &two(a, b), vec![p1, p2])
                }
                (NegOrL, Or(a, b)) => {
                    let p = neg_to_ref_left(neg_to_ref_left(e.remove(0), a), b);
                    let p = permute(p, &plus(rest, &[fx(a).neg(), fx(b).neg()]));
                    apply_builtin("orL-", rest, c, &two(a, b), vec![p])
                }
                (NegImpL, Imp(a, b)) => {
                    let delta = plus(rest, &[fx(principal)]);
                    let p1 = permute(e.remove(0), &delta);
                    let p2 = weaken_to(neg_to_ref_left(e.remove(0), b), &plus(&delta, &[fx(b).neg()]));
                    let star = derive_starred(Starred::ImpLNeg, &delta, a, b, vec![p1, p2]);
                    let negl = apply_builtin("~L", &delta, c, std::slice::from_ref(x), vec![star]);
                    return Some(Derivation::node(ScRule::Cl, RSequent::new(delta, c.clone()), vec![negl]));
                }
                _ => return None,
            };
            apply_builtin("~L", rest, c, std::slice::from_ref(x), vec![inner])
        }
        _ => return None,
    };
    Some(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::Registry;
    use crate::g3c::{check_g3c, prove_g3c, G3Sequent, SearchBudget};
    use crate::sc_inf::check_scinf;

    fn roundtrip(s: &str) {
        let goal = G3Sequent::parse(s).unwrap();
        let out = prove_g3c(&goal, &[], &SearchBudget::default()).unwrap();
        let d = out.outcome.derivation().expect("provable").clone();
        check_g3c(&d).unwrap();
        let sc = embed_g3c(&d).unwrap();
        assert_eq!(sc.conclusion, goal.to_rsequent());
        check_scinf(&sc, &Registry::default()).unwrap_or_else(|e| panic!("{s}: {e}"));
    }

    #[test]
    fn every_rule_embeds() {
        for s in [
            "=> ~(~p -> p)",
            "=> ~(p -> ~p)",
            "=> (p -> q) -> ~(p -> ~q)",
            "=> (p -> ~q) -> ~(p -> q)",
            "=> p & ~p -> p",
            "=> ~(p & ~p -> p)",
            "~(p | q) => ~q & ~p",
            "~(p & q) => ~q | ~p",
            "~~p, r => p & r",
            "p -> q, p => q | r",
            "~(p -> q), p => ~q",
            "p | q, ~~r => ~~(q | p)",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn hypothesis_leaves_are_refused() {
        let d = Derivation::leaf(G3Rule::Hyp, G3Sequent::parse("p => q").unwrap());
        assert!(matches!(embed_g3c(&d), Err(EmbedError::Hypothesis { .. })));
    }
}
