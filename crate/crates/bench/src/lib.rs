//! Shared inputs for the kernel benchmarks.

use connexive::battery::{definition_corpus, small_rexprs, CONTRADICTION, THESES};
use connexive::connectives::ConnectiveDef;
use connexive::g3c::G3Sequent;
use connexive::syntax::RExpr;

/// The connexive theses plus the contradictory pair.
pub fn theses() -> Vec<G3Sequent> {
    THESES.iter().chain(&CONTRADICTION).map(|s| G3Sequent::parse(s).expect("thesis parses")).collect()
}

/// The goals that search must refute.
pub fn non_theorems() -> Vec<G3Sequent> {
    ["=> (p -> q) -> (q -> p)", "p, ~p => q", "~(p -> q) => p"]
        .iter()
        .map(|s| G3Sequent::parse(s).expect("goal parses"))
        .collect()
}

pub fn rexprs() -> Vec<RExpr> {
    small_rexprs(2, 3)
}

pub fn definitions(n: usize) -> Vec<ConnectiveDef> {
    definition_corpus(n)
}
