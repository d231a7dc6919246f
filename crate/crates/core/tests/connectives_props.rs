mod common;

use common::{definition, rexpr};
use connexive::connectives::{
    de_morgan_dual, defining_formula, instantiate, overline, star, star_rexpr, strict_equivalence_sequents, Registry,
};
use connexive::g3c::{prove_g3c, SearchBudget};
use connexive::syntax::{Formula, RExpr};
use connexive::witnesses::{fresh_atoms, thm4_witness, thm5_witness};
use proptest::prelude::*;

fn registry(def: &connexive::connectives::ConnectiveDef) -> Registry {
    let mut env = Registry::default();
    env.insert(def.clone()).unwrap();
    env
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn star_is_idempotent(def in definition()) {
        let env = registry(&def);
        let f = def.apply(fresh_atoms(def.arity));
        let once = star(&f, &env).unwrap();
        prop_assert_eq!(star(&once, &env).unwrap(), once);
    }

    #[test]
    fn star_of_rexpr_goes_through_overline(e in rexpr(4)) {
        let env = Registry::default();
        prop_assert_eq!(star_rexpr(&e, &env).unwrap(), star(&overline(&e), &env).unwrap());
    }

    #[test]
    fn overline_witnesses_check(e in rexpr(3)) {
        let w = thm4_witness(&e);
        prop_assert_eq!(&w.left, &RExpr::Fml(overline(&e)));
        prop_assert_eq!(&w.right, &e);
        if let Err((which, err)) = w.check(&Registry::default()) {
            return Err(TestCaseError::fail(format!("{e} {which}: {err}")));
        }
    }

    #[test]
    fn defining_formula_witnesses_check(def in definition()) {
        let env = registry(&def);
        if let Err((which, err)) = thm5_witness(&def).check(&env) {
            return Err(TestCaseError::fail(format!("{def} {which}: {err}")));
        }
    }

    #[test]
    fn de_morgan_duals_are_strictly_equivalent(def in definition()) {
        let args = fresh_atoms(def.arity);
        let d = instantiate(&defining_formula(&def), &args);
        let dual = instantiate(&de_morgan_dual(&def), &args);
        for s in strict_equivalence_sequents(&Formula::neg(d), &dual) {
            prop_assert!(prove_g3c(&s, &[], &SearchBudget::default()).unwrap().outcome.is_found(), "{}", s);
        }
    }

    #[test]
    fn starred_application_is_self_equivalent(def in definition()) {
        let env = registry(&def);
        let f = star(&def.apply(fresh_atoms(def.arity)), &env).unwrap();
        for s in strict_equivalence_sequents(&f, &f) {
            prop_assert!(prove_g3c(&s, &[], &SearchBudget::default()).unwrap().outcome.is_found(), "{}", s);
        }
    }

    #[test]
    fn canonical_text_round_trips(def in definition()) {
        let env = registry(&def);
        let again = Registry::from_text(&env.canonical_text()).unwrap();
        prop_assert_eq!(again.env_hash(), env.env_hash());
        prop_assert_eq!(again, env);
    }
}

#[test]
fn env_hash_depends_on_content() {
    let a = Registry::from_text("connective F/1 { group { A1 } }").unwrap();
    let b = Registry::from_text("connective F/1 { group { -A1 } }").unwrap();
    let a2 = Registry::from_text("connective   F/1 {group{A1}}").unwrap();
    assert_ne!(a.env_hash(), b.env_hash());
    assert_eq!(a.env_hash(), a2.env_hash());
    assert_eq!(a.env_hash().len(), 64);
}

#[test]
fn refuted_placeholder_members_survive_the_overline() {
    let e = RExpr::atom("p").neg();
    assert_eq!(overline(&e), Formula::neg(Formula::atom("p")));
}
