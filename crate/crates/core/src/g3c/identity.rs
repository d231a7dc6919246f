use super::{G3Derivation, G3Error, G3Rule, G3Sequent};
use crate::derivation::Derivation;
use crate::syntax::Formula;

/// A derivation of `Γ, C => C` built by induction on `C`, without search.
pub fn identity_derivation(gamma: &[Formula], c: &Formula) -> Result<G3Derivation, G3Error> {
    if let Some(bad) = gamma.iter().chain(std::iter::once(c)).find(|f| !f.is_primitive()) {
        return Err(G3Error::NotInLanguage(bad.clone()));
    }
    let mut ctx = gamma.to_vec();
    ctx.push(c.clone());
    Ok(id(ctx, c))
}

fn without(ctx: &[Formula], f: &Formula) -> Vec<Formula> {
    let mut out = ctx.to_vec();
    let pos = out.iter().position(|g| g == f).expect("principal in context");
    out.remove(pos);
    out
}

fn with(ctx: &[Formula], extra: &[&Formula]) -> Vec<Formula> {
    let mut out = ctx.to_vec();
    out.extend(extra.iter().map(|f| (*f).clone()));
    out
}

fn node(rule: G3Rule, ctx: Vec<Formula>, succ: &Formula, premises: Vec<G3Derivation>) -> G3Derivation {
    Derivation::node(rule, G3Sequent::new(ctx, succ.clone()), premises)
}

/// `ctx => c` where `c` occurs in `ctx`.
fn id(ctx: Vec<Formula>, c: &Formula) -> G3Derivation {
    use Formula::*;
    match c {
        Atom(_) => node(G3Rule::Rf, ctx, c, vec![]),
        And(a, b) => {
            let inner = with(&without(&ctx, c), &[a, b]);
            let r = node(G3Rule::AndR, inner.clone(), c, vec![id(inner.clone(), a), id(inner, b)]);
            node(G3Rule::AndL, ctx, c, vec![r])
        }
        Or(a, b) => {
            let rest = without(&ctx, c);
            let left = with(&rest, &[a]);
            let right = with(&rest, &[b]);
            let l = node(G3Rule::OrR1, left.clone(), c, vec![id(left, a)]);
            let r = node(G3Rule::OrR2, right.clone(), c, vec![id(right, b)]);
            node(G3Rule::OrL, ctx, c, vec![l, r])
        }
        Imp(a, b) => {
            let inner = with(&ctx, &[a]);
            let after = with(&without(&inner, c), &[b]);
            let l = node(G3Rule::ImpL, inner.clone(), b, vec![id(inner, a), id(after, b)]);
            node(G3Rule::ImpR, ctx, c, vec![l])
        }
        Neg(x) => match &**x {
            Atom(_) => node(G3Rule::RfNeg, ctx, c, vec![]),
            Neg(a) => {
                let inner = with(&without(&ctx, c), &[a]);
                let r = node(G3Rule::NegNegR, inner.clone(), c, vec![id(inner, a)]);
                node(G3Rule::NegNegL, ctx, c, vec![r])
            }
            And(a, b) => {
                let (na, nb) = (Formula::neg((**a).clone()), Formula::neg((**b).clone()));
                let rest = without(&ctx, c);
                let left = with(&rest, &[&na]);
                let right = with(&rest, &[&nb]);
                let l = node(G3Rule::NegAndR1, left.clone(), c, vec![id(left, &na)]);
                let r = node(G3Rule::NegAndR2, right.clone(), c, vec![id(right, &nb)]);
                node(G3Rule::NegAndL, ctx, c, vec![l, r])
            }
            Or(a, b) => {
                let (na, nb) = (Formula::neg((**a).clone()), Formula::neg((**b).clone()));
                let inner = with(&without(&ctx, c), &[&na, &nb]);
                let r = node(G3Rule::NegOrR, inner.clone(), c, vec![id(inner.clone(), &na), id(inner, &nb)]);
                node(G3Rule::NegOrL, ctx, c, vec![r])
            }
            Imp(a, b) => {
                let nb = Formula::neg((**b).clone());
                let inner = with(&ctx, &[a]);
                let after = with(&without(&inner, c), &[&nb]);
                let l = node(G3Rule::NegImpL, inner.clone(), &nb, vec![id(inner, a), id(after, &nb)]);
                node(G3Rule::NegImpR, ctx, c, vec![l])
            }
            App(..) => unreachable!("checked by identity_derivation"),
        },
        App(..) => unreachable!("checked by identity_derivation"),
    }
}
