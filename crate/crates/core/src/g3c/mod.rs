//! The cut-free sequent calculus G3C.
//!
//! Sequents are `Γ => C` with `Γ` a multiset of formulas over `~`, `&`,
//! `|`, `->`. Axioms are restricted to atoms and negated atoms; every other
//! rule shares its context between premises. `Limp` and `L~imp` repeat their
//! principal formula in the left premise.
//!
//! Besides checking, the module decides provability by backward search
//! ([`prove_g3c`]) and builds identity derivations without search.

mod check;
mod identity;
mod search;

use std::fmt;

use thiserror::Error;

use crate::derivation::Derivation;
use crate::syntax::{parse_formula, Formula, ParseError, RExpr, RSequent};

pub use check::{check_g3c, check_g3c_with_hypotheses, left_principal};
pub use identity::identity_derivation;
pub use search::{prove_g3c, SearchBudget, SearchOutcome, SearchReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G3Sequent {
    /// Multiset; order carries no meaning.
    pub context: Vec<Formula>,
    pub succedent: Formula,
}

impl G3Sequent {
    pub fn new(context: Vec<Formula>, succedent: Formula) -> Self {
        G3Sequent { context, succedent }
    }

    /// Parses `A1, ..., An => B` where every member is a formula.
    pub fn parse(text: &str) -> Result<Self, G3Error> {
        let seq = crate::syntax::parse_sequent(text)?;
        Self::from_rsequent(&seq)
    }

    pub fn from_rsequent(seq: &RSequent) -> Result<Self, G3Error> {
        let as_fml = |e: &RExpr| match e {
            RExpr::Fml(f) => Ok(f.clone()),
            other => Err(G3Error::NotAFormula(other.to_string())),
        };
        Ok(G3Sequent {
            context: seq.context.iter().map(as_fml).collect::<Result<_, _>>()?,
            succedent: as_fml(&seq.succedent)?,
        })
    }

    pub fn to_rsequent(&self) -> RSequent {
        RSequent::new(self.context.iter().cloned().map(RExpr::Fml).collect(), RExpr::Fml(self.succedent.clone()))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.context.iter().chain(std::iter::once(&self.succedent))
    }

    pub fn is_primitive(&self) -> bool {
        self.formulas().all(Formula::is_primitive)
    }
}

impl fmt::Display for G3Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx: Vec<String> = self.context.iter().map(ToString::to_string).collect();
        if ctx.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, "{} => {}", ctx.join(", "), self.succedent)
        }
    }
}

/// The rules of G3C, plus `Hyp` and `ACut` for derived-rule checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum G3Rule {
    Rf,
    RfNeg,
    AndR,
    AndL,
    OrR1,
    OrR2,
    OrL,
    ImpR,
    ImpL,
    NegNegR,
    NegNegL,
    NegAndR1,
    NegAndR2,
    NegAndL,
    NegOrR,
    NegOrL,
    NegImpR,
    NegImpL,
    /// Leaf closed by a hypothesis sequent, up to weakening.
    Hyp,
    /// Cut restricted to formulas from the hypotheses.
    AnalyticCut,
}

impl G3Rule {
    pub const ALL: [G3Rule; 20] = [
        G3Rule::Rf,
        G3Rule::RfNeg,
        G3Rule::AndR,
        G3Rule::AndL,
        G3Rule::OrR1,
        G3Rule::OrR2,
        G3Rule::OrL,
        G3Rule::ImpR,
        G3Rule::ImpL,
        G3Rule::NegNegR,
        G3Rule::NegNegL,
        G3Rule::NegAndR1,
        G3Rule::NegAndR2,
        G3Rule::NegAndL,
        G3Rule::NegOrR,
        G3Rule::NegOrL,
        G3Rule::NegImpR,
        G3Rule::NegImpL,
        G3Rule::Hyp,
        G3Rule::AnalyticCut,
    ];

    /// File-format name.
    pub fn name(self) -> &'static str {
        match self {
            G3Rule::Rf => "Rf",
            G3Rule::RfNeg => "Rf~",
            G3Rule::AndR => "Rand",
            G3Rule::AndL => "Land",
            G3Rule::OrR1 => "Ror1",
            G3Rule::OrR2 => "Ror2",
            G3Rule::OrL => "Lor",
            G3Rule::ImpR => "Rimp",
            G3Rule::ImpL => "Limp",
            G3Rule::NegNegR => "R~~",
            G3Rule::NegNegL => "L~~",
            G3Rule::NegAndR1 => "R~and1",
            G3Rule::NegAndR2 => "R~and2",
            G3Rule::NegAndL => "L~and",
            G3Rule::NegOrR => "R~or",
            G3Rule::NegOrL => "L~or",
            G3Rule::NegImpR => "R~imp",
            G3Rule::NegImpL => "L~imp",
            G3Rule::Hyp => "Hyp",
            G3Rule::AnalyticCut => "ACut",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn arity(self) -> usize {
        use G3Rule::*;
        match self {
            Rf | RfNeg | Hyp => 0,
            AndL | OrR1 | OrR2 | ImpR | NegNegR | NegNegL | NegAndR1 | NegAndR2 | NegOrL | NegImpR => 1,
            AndR | OrL | ImpL | NegAndL | NegOrR | NegImpL | AnalyticCut => 2,
        }
    }
}

impl fmt::Display for G3Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type G3Derivation = Derivation<G3Rule, G3Sequent>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G3Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("`{0}` is not a formula; G3C sequents contain formulas only")]
    NotAFormula(String),
    #[error("`{0}` uses a connective outside ~, &, |, ->")]
    NotInLanguage(Formula),
}

/// Formulas closed under subformulas and one extra `~` prefix.
pub fn search_closure<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<Formula> {
    let mut sub = std::collections::BTreeSet::new();
    for f in formulas {
        sub.extend(f.subformulas());
    }
    let negs: Vec<Formula> = sub.iter().map(|f| Formula::neg(f.clone())).collect();
    sub.extend(negs);
    sub.into_iter().collect()
}

pub(crate) fn parse_primitive(text: &str) -> Result<Formula, G3Error> {
    let f = parse_formula(text)?;
    if !f.is_primitive() {
        return Err(G3Error::NotInLanguage(f));
    }
    Ok(f)
}
