//! Formulas and R-expressions.
//!
//! An R-expression is a formula, a refutation `-S`, or a nested sequent
//! expression `(Δ => S)`. Refutations never wrap refutations: `--S` and `S`
//! are the same expression, and [`RExpr::neg`] is the only way to build one.

mod parse;
mod print;

use std::collections::BTreeSet;

pub use parse::{
    parse_formula, parse_formula_with, parse_rexpr, parse_rexpr_list, parse_rexpr_with, parse_sequent,
    parse_sequent_with, NoConnectives, ParseError, Signature,
};
pub(crate) use parse::{parse_placeholder_list, Parser, Tok};
pub use print::context_text;

/// A propositional formula over `~`, `&`, `|`, `->` and user connectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// Application of a registered connective.
    App(String, Vec<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(body: Formula) -> Self {
        Formula::Neg(Box::new(body))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn app(name: impl Into<String>, args: Vec<Formula>) -> Self {
        Formula::App(name.into(), args)
    }

    /// True if the formula only uses `~`, `&`, `|`, `->` over atoms.
    pub fn is_primitive(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Neg(a) => a.is_primitive(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.is_primitive() && b.is_primitive(),
            Formula::App(..) => false,
        }
    }

    /// Number of connective and atom occurrences.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::App(_, args) => 1 + args.iter().map(Formula::size).sum::<usize>(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Neg(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) => {}
            Formula::Neg(a) => a.collect_subformulas(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_subformulas(out)),
        }
    }

    /// Replace atoms by formulas, simultaneously.
    /// Calls `visit(name, arity)` for every connective application.
    pub fn visit_apps(&self, visit: &mut dyn FnMut(&str, usize)) {
        match self {
            Formula::Atom(_) => {}
            Formula::Neg(a) => a.visit_apps(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.visit_apps(visit);
                b.visit_apps(visit);
            }
            Formula::App(name, args) => {
                visit(name, args.len());
                args.iter().for_each(|a| a.visit_apps(visit));
            }
        }
    }

    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(p) => map(p).unwrap_or_else(|| self.clone()),
            Formula::Neg(a) => Formula::neg(a.substitute(map)),
            Formula::And(a, b) => Formula::and(a.substitute(map), b.substitute(map)),
            Formula::Or(a, b) => Formula::or(a.substitute(map), b.substitute(map)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(map), b.substitute(map)),
            Formula::App(f, args) => Formula::App(f.clone(), args.iter().map(|a| a.substitute(map)).collect()),
        }
    }
}

/// The body of a refutation. Never itself a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Refutation(Box<RExpr>);

impl Refutation {
    pub fn body(&self) -> &RExpr {
        &self.0
    }

    pub fn into_body(self) -> RExpr {
        *self.0
    }
}

/// An R-expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RExpr {
    Fml(Formula),
    Ref(Refutation),
    Seq(Vec<RExpr>, Box<RExpr>),
}

impl From<Formula> for RExpr {
    fn from(f: Formula) -> Self {
        RExpr::Fml(f)
    }
}

impl RExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        RExpr::Fml(Formula::atom(name))
    }

    pub fn seq(context: Vec<RExpr>, succedent: RExpr) -> Self {
        RExpr::Seq(context, Box::new(succedent))
    }

    /// Refutation with `--S` collapsed to `S`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> RExpr {
        match self {
            RExpr::Ref(r) => r.into_body(),
            other => RExpr::Ref(Refutation(Box::new(other))),
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            RExpr::Fml(f) => Some(f),
            _ => None,
        }
    }

    pub fn r_degree(&self) -> usize {
        match self {
            RExpr::Fml(_) => 0,
            RExpr::Ref(r) => r.body().r_degree(),
            RExpr::Seq(ctx, succ) => {
                1 + ctx.iter().chain(std::iter::once(succ.as_ref())).map(RExpr::r_degree).max().unwrap_or(0)
            }
        }
    }

    pub fn r_subformulas(&self) -> BTreeSet<RExpr> {
        let mut out = BTreeSet::new();
        self.collect_r_subformulas(&mut out);
        out
    }

    fn collect_r_subformulas(&self, out: &mut BTreeSet<RExpr>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            RExpr::Fml(_) => {}
            RExpr::Ref(r) => r.body().collect_r_subformulas(out),
            RExpr::Seq(ctx, succ) => {
                ctx.iter().for_each(|s| s.collect_r_subformulas(out));
                succ.collect_r_subformulas(out);
            }
        }
    }

    /// The R-subformulas of degree 0.
    pub fn formula_components(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.visit_formulas(&mut |f| {
            out.insert(f.clone());
        });
        out
    }

    pub fn visit_formulas(&self, visit: &mut dyn FnMut(&Formula)) {
        match self {
            RExpr::Fml(f) => visit(f),
            RExpr::Ref(r) => r.body().visit_formulas(visit),
            RExpr::Seq(ctx, succ) => {
                ctx.iter().for_each(|s| s.visit_formulas(visit));
                succ.visit_formulas(visit);
            }
        }
    }

    /// Apply `f` to every formula component, rebuilding the expression.
    pub fn map_formulas(&self, f: &dyn Fn(&Formula) -> Formula) -> RExpr {
        match self {
            RExpr::Fml(a) => RExpr::Fml(f(a)),
            RExpr::Ref(r) => r.body().map_formulas(f).neg(),
            RExpr::Seq(ctx, succ) => {
                RExpr::Seq(ctx.iter().map(|s| s.map_formulas(f)).collect(), Box::new(succ.map_formulas(f)))
            }
        }
    }

    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<Formula>) -> RExpr {
        self.map_formulas(&|a| a.substitute(map))
    }
}

/// A judgment `Δ => S` over R-expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RSequent {
    pub context: Vec<RExpr>,
    pub succedent: RExpr,
}

impl RSequent {
    pub fn new(context: Vec<RExpr>, succedent: RExpr) -> Self {
        RSequent { context, succedent }
    }

    pub fn into_rexpr(self) -> RExpr {
        RExpr::Seq(self.context, Box::new(self.succedent))
    }

    pub fn from_rexpr(e: RExpr) -> Option<Self> {
        match e {
            RExpr::Seq(context, succ) => Some(RSequent { context, succedent: *succ }),
            _ => None,
        }
    }

    /// The context extended by one expression at the end.
    pub fn with(&self, extra: RExpr) -> Vec<RExpr> {
        let mut ctx = self.context.clone();
        ctx.push(extra);
        ctx
    }
}
