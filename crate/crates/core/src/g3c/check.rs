use std::collections::BTreeSet;

use super::{search_closure, G3Derivation, G3Rule, G3Sequent};
use crate::derivation::{verdict, Verdict};
use crate::syntax::Formula;

/// Checks a pure G3C derivation; `Hyp` and `ACut` nodes are rejected.
pub fn check_g3c(d: &G3Derivation) -> Verdict {
    check_g3c_with_hypotheses(d, &[])
}

/// Checks a derivation whose `Hyp` leaves may close on any of `hyps`
/// (with a weakened context) and whose `ACut` nodes cut on formulas from
/// the closure of the root sequent and the hypotheses.
pub fn check_g3c_with_hypotheses(d: &G3Derivation, hyps: &[G3Sequent]) -> Verdict {
    let closure: BTreeSet<Formula> = if hyps.is_empty() {
        BTreeSet::new()
    } else {
        search_closure(d.conclusion.formulas().chain(hyps.iter().flat_map(G3Sequent::formulas))).into_iter().collect()
    };
    verdict(d, &mut |node| instance(node, hyps, &closure).map(|_| ()))
}

/// Index of the principal formula of a left-rule node, if the node is a
/// correct left-rule instance.
pub fn left_principal(node: &G3Derivation) -> Option<usize> {
    instance(node, &[], &BTreeSet::new()).ok().flatten()
}

fn sorted(v: &[Formula]) -> Vec<&Formula> {
    let mut s: Vec<&Formula> = v.iter().collect();
    s.sort();
    s
}

fn same_multiset(a: &[Formula], b: &[Formula]) -> bool {
    a.len() == b.len() && sorted(a) == sorted(b)
}

fn without(ctx: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = ctx.to_vec();
    v.remove(i);
    v
}

fn plus(ctx: &[Formula], extra: &[&Formula]) -> Vec<Formula> {
    let mut v = ctx.to_vec();
    v.extend(extra.iter().map(|f| (*f).clone()));
    v
}

fn neg(f: &Formula) -> Formula {
    Formula::neg(f.clone())
}

/// Expected premise sequents: (context, succedent) pairs.
type Expected = Vec<(Vec<Formula>, Formula)>;

fn premises_match(node: &G3Derivation, expected: &Expected) -> bool {
    node.premises.len() == expected.len()
        && node
            .premises
            .iter()
            .zip(expected)
            .all(|(p, (ctx, succ))| p.conclusion.succedent == *succ && same_multiset(&p.conclusion.context, ctx))
}

fn instance(node: &G3Derivation, hyps: &[G3Sequent], closure: &BTreeSet<Formula>) -> Result<Option<usize>, String> {
    use Formula::*;
    use G3Rule::*;

    let seq = &node.conclusion;
    if let Some(f) = seq.formulas().find(|f| !f.is_primitive()) {
        return Err(format!("`{f}` is outside the language of G3C"));
    }
    if node.premises.len() != node.rule.arity() {
        return Err(format!("{} takes {} premise(s), found {}", node.rule, node.rule.arity(), node.premises.len()));
    }
    let ctx = &seq.context;
    let succ = &seq.succedent;
    let right = |expected: Option<Expected>| -> Result<Option<usize>, String> {
        match expected {
            None => Err(format!("succedent `{succ}` has the wrong shape for {}", node.rule)),
            Some(e) if premises_match(node, &e) => Ok(None),
            Some(_) => Err(format!("premises do not match {}", node.rule)),
        }
    };
    // Left rules: some occurrence in the context must be principal.
    let left = |shape: &dyn Fn(&Formula, &[Formula]) -> Option<Expected>| {
        let mut seen_shape = false;
        for (i, f) in ctx.iter().enumerate() {
            if let Some(e) = shape(f, &without(ctx, i)) {
                seen_shape = true;
                if premises_match(node, &e) {
                    return Ok(Some(i));
                }
            }
        }
        if seen_shape {
            Err(format!("premises do not match {}", node.rule))
        } else {
            Err(format!("no principal formula for {} in the context", node.rule))
        }
    };

    match node.rule {
        Rf => match succ {
            Atom(_) if ctx.contains(succ) => Ok(None),
            Atom(_) => Err(format!("atom `{succ}` does not occur in the context")),
            _ => Err("Rf closes atomic succedents only".into()),
        },
        RfNeg => match succ {
            Neg(a) if matches!(**a, Atom(_)) && ctx.contains(succ) => Ok(None),
            Neg(a) if matches!(**a, Atom(_)) => Err(format!("`{succ}` does not occur in the context")),
            _ => Err("Rf~ closes negated atoms only".into()),
        },
        AndR => right(match succ {
            And(a, b) => Some(vec![(ctx.clone(), (**a).clone()), (ctx.clone(), (**b).clone())]),
            _ => None,
        }),
        OrR1 => right(match succ {
            Or(a, _) => Some(vec![(ctx.clone(), (**a).clone())]),
            _ => None,
        }),
        OrR2 => right(match succ {
            Or(_, b) => Some(vec![(ctx.clone(), (**b).clone())]),
            _ => None,
        }),
        ImpR => right(match succ {
            Imp(a, b) => Some(vec![(plus(ctx, &[a]), (**b).clone())]),
            _ => None,
        }),
        NegNegR => right(match succ {
            Neg(x) => match &**x {
                Neg(a) => Some(vec![(ctx.clone(), (**a).clone())]),
                _ => None,
            },
            _ => None,
        }),
        NegAndR1 | NegAndR2 => right(match succ {
            Neg(x) => match &**x {
                And(a, b) => {
                    let side = if node.rule == NegAndR1 { a } else { b };
                    Some(vec![(ctx.clone(), neg(side))])
                }
                _ => None,
            },
            _ => None,
        }),
        NegOrR => right(match succ {
            Neg(x) => match &**x {
                Or(a, b) => Some(vec![(ctx.clone(), neg(a)), (ctx.clone(), neg(b))]),
                _ => None,
            },
            _ => None,
        }),
        NegImpR => right(match succ {
            Neg(x) => match &**x {
                Imp(a, b) => Some(vec![(plus(ctx, &[a]), neg(b))]),
                _ => None,
            },
            _ => None,
        }),
        AndL => left(&|f, gamma| match f {
            And(a, b) => Some(vec![(plus(gamma, &[a, b]), succ.clone())]),
            _ => None,
        }),
        OrL => left(&|f, gamma| match f {
            Or(a, b) => Some(vec![(plus(gamma, &[a]), succ.clone()), (plus(gamma, &[b]), succ.clone())]),
            _ => None,
        }),
        ImpL => left(&|f, gamma| match f {
            Imp(a, b) => Some(vec![(plus(gamma, &[f]), (**a).clone()), (plus(gamma, &[b]), succ.clone())]),
            _ => None,
        }),
        NegNegL => left(&|f, gamma| match f {
            Neg(x) => match &**x {
                Neg(a) => Some(vec![(plus(gamma, &[a]), succ.clone())]),
                _ => None,
            },
            _ => None,
        }),
        NegAndL => left(&|f, gamma| match f {
            Neg(x) => match &**x {
                And(a, b) => {
                    Some(vec![(plus(gamma, &[&neg(a)]), succ.clone()), (plus(gamma, &[&neg(b)]), succ.clone())])
                }
                _ => None,
            },
            _ => None,
        }),
        NegOrL => left(&|f, gamma| match f {
            Neg(x) => match &**x {
                Or(a, b) => Some(vec![(plus(gamma, &[&neg(a), &neg(b)]), succ.clone())]),
                _ => None,
            },
            _ => None,
        }),
        NegImpL => left(&|f, gamma| match f {
            Neg(x) => match &**x {
                Imp(a, b) => Some(vec![(plus(gamma, &[f]), (**a).clone()), (plus(gamma, &[&neg(b)]), succ.clone())]),
                _ => None,
            },
            _ => None,
        }),
        Hyp => {
            let present: BTreeSet<&Formula> = ctx.iter().collect();
            let closes = hyps.iter().any(|h| h.succedent == *succ && h.context.iter().all(|f| present.contains(f)));
            if closes {
                Ok(None)
            } else if hyps.is_empty() {
                Err("Hyp used without hypotheses".into())
            } else {
                Err(format!("no hypothesis closes `{seq}`"))
            }
        }
        AnalyticCut => {
            if hyps.is_empty() {
                return Err("cut is only available in hypothesis mode".into());
            }
            let cut = &node.premises[0].conclusion.succedent;
            if !closure.contains(cut) {
                return Err(format!("cut formula `{cut}` is outside the analytic closure"));
            }
            right(Some(vec![(ctx.clone(), cut.clone()), (plus(ctx, &[cut]), succ.clone())]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Derivation;

    fn seq(s: &str) -> G3Sequent {
        G3Sequent::parse(s).unwrap()
    }

    #[test]
    fn axiom_with_side_context() {
        let d = Derivation::leaf(G3Rule::Rf, seq("q, p => p"));
        assert!(check_g3c(&d).is_ok());
        let d = Derivation::leaf(G3Rule::RfNeg, seq("q, ~p => ~p"));
        assert!(check_g3c(&d).is_ok());
        let d = Derivation::leaf(G3Rule::Rf, seq("q => p"));
        assert!(check_g3c(&d).is_err());
        let d = Derivation::leaf(G3Rule::Rf, seq("p & q => p & q"));
        assert!(check_g3c(&d).is_err());
    }

    #[test]
    fn incomplete_tree_is_rejected() {
        // ~~p from p, where `=> p` is left unproven
        let d = Derivation::node(G3Rule::NegNegR, seq("=> ~~p"), vec![Derivation::leaf(G3Rule::Rf, seq("=> p"))]);
        let err = check_g3c(&d).unwrap_err();
        assert_eq!(err.path, vec![0]);
    }

    #[test]
    fn contradiction_left_tree() {
        let d = Derivation::node(
            G3Rule::ImpR,
            seq("=> p & ~p -> p"),
            vec![Derivation::node(
                G3Rule::AndL,
                seq("p & ~p => p"),
                vec![Derivation::leaf(G3Rule::Rf, seq("p, ~p => p"))],
            )],
        );
        assert!(check_g3c(&d).is_ok());
    }

    #[test]
    fn implication_left_repeats_principal() {
        let ok = Derivation::node(
            G3Rule::ImpL,
            seq("p -> q, p => q"),
            vec![Derivation::leaf(G3Rule::Rf, seq("p -> q, p => p")), Derivation::leaf(G3Rule::Rf, seq("p, q => q"))],
        );
        assert!(check_g3c(&ok).is_ok());
        let dropped = Derivation::node(
            G3Rule::ImpL,
            seq("p -> q, p => q"),
            vec![Derivation::leaf(G3Rule::Rf, seq("p => p")), Derivation::leaf(G3Rule::Rf, seq("p, q => q"))],
        );
        assert!(check_g3c(&dropped).is_err());
        assert_eq!(left_principal(&ok), Some(0));
    }

    #[test]
    fn negated_implication_rules() {
        let d = Derivation::node(
            G3Rule::NegImpR,
            seq("=> ~(p -> ~p)"),
            vec![Derivation::node(G3Rule::NegNegR, seq("p => ~~p"), vec![Derivation::leaf(G3Rule::Rf, seq("p => p"))])],
        );
        assert!(check_g3c(&d).is_ok());
    }

    #[test]
    fn hypotheses_close_weakened_leaves() {
        let hyp = seq("p => q");
        let d = Derivation::leaf(G3Rule::Hyp, seq("r, p => q"));
        assert!(check_g3c(&d).is_err());
        assert!(check_g3c_with_hypotheses(&d, std::slice::from_ref(&hyp)).is_ok());
        let wrong = Derivation::leaf(G3Rule::Hyp, seq("r => q"));
        assert!(check_g3c_with_hypotheses(&wrong, &[hyp]).is_err());
    }

    #[test]
    fn multiset_contexts_count_duplicates() {
        // L& must add both conjuncts even when one is already present.
        let d =
            Derivation::node(G3Rule::AndL, seq("p, p & q => p"), vec![Derivation::leaf(G3Rule::Rf, seq("p, q => p"))]);
        assert!(check_g3c(&d).is_err());
        let d = Derivation::node(
            G3Rule::AndL,
            seq("p, p & q => p"),
            vec![Derivation::leaf(G3Rule::Rf, seq("p, q, p => p"))],
        );
        assert!(check_g3c(&d).is_ok());
    }
}
