//! G3C and SC∞ agree on primitive sequents, and strict equivalence is a
//! congruence.

mod common;

use common::formula;
use connexive::battery::{random_formula, CONTRADICTION, THESES};
use connexive::connectives::{strict_equivalence_sequents, Registry};
use connexive::g3c::{check_g3c, prove_g3c, G3Sequent, SearchBudget, SearchOutcome};
use connexive::sc_inf::{check_scinf, embed_g3c};
use connexive::syntax::Formula;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn embeds(goal: &G3Sequent) -> Option<bool> {
    match prove_g3c(goal, &[], &SearchBudget::default()).unwrap().outcome {
        SearchOutcome::Found(d) => {
            check_g3c(&d).unwrap();
            let sc = embed_g3c(&d).unwrap();
            assert_eq!(sc.conclusion, goal.to_rsequent());
            check_scinf(&sc, &Registry::default()).unwrap();
            Some(true)
        }
        SearchOutcome::Unprovable => Some(false),
        SearchOutcome::BudgetExceeded => None,
    }
}

#[test]
fn theses_embed() {
    for s in THESES.iter().chain(&CONTRADICTION) {
        assert_eq!(embeds(&G3Sequent::parse(s).unwrap()), Some(true), "{s}");
    }
}

#[test]
fn random_sequents_embed() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut found = 0;
    for _ in 0..200 {
        let ctx = (0..rng.gen_range(0..3)).map(|_| random_formula(&mut rng, 2, &[])).collect();
        let goal = G3Sequent::new(ctx, random_formula(&mut rng, 3, &[]));
        if embeds(&goal) == Some(true) {
            found += 1;
        }
    }
    assert!(found > 10, "only {found} provable samples");
}

fn plug(c: &Formula, hole: &str, x: &Formula) -> Formula {
    match c {
        Formula::Atom(a) if a == hole => x.clone(),
        Formula::Atom(_) => c.clone(),
        Formula::Neg(a) => Formula::neg(plug(a, hole, x)),
        Formula::And(a, b) => Formula::and(plug(a, hole, x), plug(b, hole, x)),
        Formula::Or(a, b) => Formula::or(plug(a, hole, x), plug(b, hole, x)),
        Formula::Imp(a, b) => Formula::imp(plug(a, hole, x), plug(b, hole, x)),
        Formula::App(n, args) => Formula::app(n.clone(), args.iter().map(|a| plug(a, hole, x)).collect()),
    }
}

fn strictly_equivalent(a: &Formula, b: &Formula) -> bool {
    strict_equivalence_sequents(a, b)
        .iter()
        .all(|s| prove_g3c(s, &[], &SearchBudget::default()).unwrap().outcome.is_found())
}

fn pair() -> impl Strategy<Value = (Formula, Formula)> {
    let p = || Formula::atom("p");
    let q = || Formula::atom("q");
    prop_oneof![
        Just((p(), Formula::neg(Formula::neg(p())))),
        Just((Formula::and(p(), q()), Formula::and(q(), p()))),
        Just((Formula::or(p(), q()), Formula::or(q(), p()))),
        Just((Formula::neg(Formula::and(p(), q())), Formula::or(Formula::neg(p()), Formula::neg(q())))),
        Just((Formula::neg(Formula::imp(p(), q())), Formula::imp(p(), Formula::neg(q())))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn replacement_of_strict_equivalents((a, b) in pair(), c in formula(3)) {
        prop_assume!(strictly_equivalent(&a, &b));
        let ca = plug(&c, "r", &a);
        let cb = plug(&c, "r", &b);
        prop_assert!(strictly_equivalent(&ca, &cb), "{} vs {}", ca, cb);
    }
}

#[test]
fn material_equivalence_is_not_enough() {
    // p -> q and ~q -> ~p agree classically but not here.
    let a = Formula::imp(Formula::atom("p"), Formula::atom("q"));
    let b = Formula::imp(Formula::neg(Formula::atom("q")), Formula::neg(Formula::atom("p")));
    assert!(!strictly_equivalent(&a, &b));
}
