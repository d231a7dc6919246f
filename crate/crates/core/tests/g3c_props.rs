mod common;

use common::{formula, small_sequent};
use connexive::g3c::{
    check_g3c, check_g3c_with_hypotheses, identity_derivation, prove_g3c, G3Sequent, SearchBudget, SearchOutcome,
};
use proptest::prelude::*;

fn budget() -> SearchBudget {
    SearchBudget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn found_proofs_check(goal in small_sequent()) {
        let r = prove_g3c(&goal, &[], &budget()).unwrap();
        prop_assert!(!matches!(r.outcome, SearchOutcome::BudgetExceeded));
        if let SearchOutcome::Found(d) = r.outcome {
            prop_assert_eq!(&d.conclusion, &goal);
            check_g3c(&d).unwrap();
        }
    }

    #[test]
    fn weakening_preserves_provability(goal in small_sequent(), extra in proptest::collection::vec(formula(2), 1..3)) {
        let r = prove_g3c(&goal, &[], &budget()).unwrap();
        if r.outcome.is_found() {
            let mut ctx = goal.context.clone();
            ctx.extend(extra);
            let bigger = G3Sequent::new(ctx, goal.succedent.clone());
            prop_assert!(prove_g3c(&bigger, &[], &budget()).unwrap().outcome.is_found());
        }
    }

    #[test]
    fn a_sequent_follows_from_itself(goal in small_sequent()) {
        let hyps = [goal.clone()];
        let r = prove_g3c(&goal, &hyps, &budget()).unwrap();
        let SearchOutcome::Found(d) = r.outcome else {
            return Err(TestCaseError::fail(format!("{goal} not found from itself")));
        };
        check_g3c_with_hypotheses(&d, &hyps).unwrap();
    }

    #[test]
    fn identities_check(ctx in proptest::collection::vec(formula(2), 0..3), c in formula(4)) {
        let d = identity_derivation(&ctx, &c).unwrap();
        let mut want = ctx.clone();
        want.push(c.clone());
        prop_assert_eq!(&d.conclusion, &G3Sequent::new(want, c));
        check_g3c(&d).unwrap();
    }

    #[test]
    fn search_is_deterministic(goal in small_sequent()) {
        let a = prove_g3c(&goal, &[], &budget()).unwrap().outcome;
        let b = prove_g3c(&goal, &[], &budget()).unwrap().outcome;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn hypotheses_do_not_prove_unrelated_goals() {
    let hyps = [G3Sequent::parse("p => q").unwrap()];
    let r = prove_g3c(&G3Sequent::parse("q => p").unwrap(), &hyps, &budget()).unwrap();
    assert!(matches!(r.outcome, SearchOutcome::Unprovable));
    let r = prove_g3c(&G3Sequent::parse("p, r => q & r").unwrap(), &hyps, &budget()).unwrap();
    assert!(r.outcome.is_found());
}

#[test]
fn tiny_budget_is_reported() {
    let tight = SearchBudget { max_visited: 2, ..SearchBudget::default() };
    let goal = G3Sequent::parse("=> (p -> q) -> ~(p -> ~q)").unwrap();
    let r = prove_g3c(&goal, &[], &tight).unwrap();
    assert!(matches!(r.outcome, SearchOutcome::BudgetExceeded));
}
