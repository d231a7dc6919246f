#![allow(dead_code)]

use connexive::battery::random_definition;
use connexive::connectives::ConnectiveDef;
use connexive::g3c::G3Sequent;
use connexive::syntax::{Formula, RExpr};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::atom)
}

/// Primitive formulas, optionally with applications of `apps`.
pub fn formula_with(depth: u32, apps: Vec<(&'static str, usize)>) -> BoxedStrategy<Formula> {
    atom()
        .prop_recursive(depth, 48, 3, move |inner| {
            let mut options = vec![
                inner.clone().prop_map(Formula::neg).boxed(),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)).boxed(),
            ];
            for &(name, n) in &apps {
                options.push(
                    proptest::collection::vec(inner.clone(), n).prop_map(move |args| Formula::app(name, args)).boxed(),
                );
            }
            proptest::strategy::Union::new(options)
        })
        .boxed()
}

pub fn formula(depth: u32) -> BoxedStrategy<Formula> {
    formula_with(depth, Vec::new())
}

/// Normalized R-expressions: refutations are built with `neg`.
pub fn rexpr(depth: u32) -> BoxedStrategy<RExpr> {
    formula(2)
        .prop_map(RExpr::Fml)
        .prop_recursive(depth, 48, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(RExpr::neg),
                (proptest::collection::vec(inner.clone(), 0..3), inner).prop_map(|(c, s)| RExpr::seq(c, s)),
            ]
        })
        .boxed()
}

/// Small G3C sequents over `p`, `q`.
pub fn small_sequent() -> BoxedStrategy<G3Sequent> {
    let f = atom().prop_filter("two atoms", |a| *a != Formula::atom("r")).prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    });
    (proptest::collection::vec(f.clone(), 0..3), f).prop_map(|(c, s)| G3Sequent::new(c, s)).boxed()
}

/// Random definitions drawn from the battery generator.
pub fn definition() -> BoxedStrategy<ConnectiveDef> {
    any::<u64>().prop_map(|seed| random_definition(&mut ChaCha8Rng::seed_from_u64(seed), "F".to_string())).boxed()
}
