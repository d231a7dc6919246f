//! The higher-order sequent calculus SC∞ over R-expressions.
//!
//! Contexts are ordered series. Structural rules (`RF`, `WL`, `PL`, `CL`,
//! `Cut`) and the rules for `=>` and `-` (`RI+`, `LI+`, `RI-`, `LI-`) are
//! built in; every connective rule is a [`RuleSchema`], including rules
//! generated from connective definitions. Left rules act on the last member
//! of the context; `PL` moves expressions into place.

mod embed;
mod schema;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::connectives::{gen_rules, Registry};
use crate::derivation::{verdict, Derivation, Verdict};
use crate::syntax::{Formula, RExpr, RSequent};

pub use embed::{embed_g3c, EmbedError};
pub use schema::{bindings, placeholder, placeholder_index, Bindings, RuleSchema, SchemaSequent, Succ};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScRule {
    Rf,
    Wl,
    Pl,
    Cl,
    Cut,
    RiPlus,
    LiPlus,
    RiMinus,
    LiMinus,
    /// A connective rule looked up by name: primitive, starred or generated.
    Named(String),
}

impl ScRule {
    pub fn name(&self) -> &str {
        match self {
            ScRule::Rf => "RF",
            ScRule::Wl => "WL",
            ScRule::Pl => "PL",
            ScRule::Cl => "CL",
            ScRule::Cut => "Cut",
            ScRule::RiPlus => "RI+",
            ScRule::LiPlus => "LI+",
            ScRule::RiMinus => "RI-",
            ScRule::LiMinus => "LI-",
            ScRule::Named(n) => n,
        }
    }

    pub fn from_name(name: &str) -> Self {
        match name {
            "RF" => ScRule::Rf,
            "WL" => ScRule::Wl,
            "PL" => ScRule::Pl,
            "CL" => ScRule::Cl,
            "Cut" => ScRule::Cut,
            "RI+" => ScRule::RiPlus,
            "LI+" => ScRule::LiPlus,
            "RI-" => ScRule::RiMinus,
            "LI-" => ScRule::LiMinus,
            other => ScRule::Named(other.to_string()),
        }
    }
}

impl fmt::Display for ScRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type ScDerivation = Derivation<ScRule, RSequent>;

fn build_primitive_rules() -> Vec<RuleSchema> {
    let r = RuleSchema::parse;
    vec![
        r("~L", &["Δ, -A1 => T"], "Δ, ~A1 => T"),
        r("~R", &["Δ => -A1"], "Δ => ~A1"),
        r("~L-", &["Δ, A1 => T"], "Δ, -~A1 => T"),
        r("~R-", &["Δ => A1"], "Δ => -~A1"),
        r("andL", &["Δ, A1, A2 => T"], "Δ, A1 & A2 => T"),
        r("andR", &["Δ => A1", "Δ => A2"], "Δ => A1 & A2"),
        r("andL-", &["Δ, -A1 => T", "Δ, -A2 => T"], "Δ, -(A1 & A2) => T"),
        r("andR-1", &["Δ => -A1"], "Δ => -(A1 & A2)"),
        r("andR-2", &["Δ => -A2"], "Δ => -(A1 & A2)"),
        r("orL", &["Δ, A1 => T", "Δ, A2 => T"], "Δ, A1 | A2 => T"),
        r("orR1", &["Δ => A1"], "Δ => A1 | A2"),
        r("orR2", &["Δ => A2"], "Δ => A1 | A2"),
        r("orL-", &["Δ, -A1, -A2 => T"], "Δ, -(A1 | A2) => T"),
        r("orR-", &["Δ => -A1", "Δ => -A2"], "Δ => -(A1 | A2)"),
        r("impL", &["Δ, (A1 => A2) => T"], "Δ, A1 -> A2 => T"),
        r("impR", &["Δ => (A1 => A2)"], "Δ => A1 -> A2"),
        r("impL-", &["Δ, -(A1 => A2) => T"], "Δ, -(A1 -> A2) => T"),
        r("impR-", &["Δ => -(A1 => A2)"], "Δ => -(A1 -> A2)"),
    ]
}

fn build_starred_rules() -> Vec<RuleSchema> {
    let r = RuleSchema::parse;
    vec![
        r("impL*", &["Δ => A1", "Δ, A2 => T"], "Δ, A1 -> A2 => T"),
        r("impR*", &["Δ, A1 => A2"], "Δ => A1 -> A2"),
        r("impL*-", &["Δ => A1", "Δ, -A2 => T"], "Δ, -(A1 -> A2) => T"),
        r("impR*-", &["Δ, A1 => -A2"], "Δ => -(A1 -> A2)"),
    ]
}

/// The connective rules for `~`, `&`, `|`, `->` and their refutations.
pub fn primitive_rules() -> &'static [RuleSchema] {
    static RULES: OnceLock<Vec<RuleSchema>> = OnceLock::new();
    RULES.get_or_init(build_primitive_rules)
}

/// The standard-form implication rules, derivable from the primitive ones.
pub fn starred_rules() -> &'static [RuleSchema] {
    static RULES: OnceLock<Vec<RuleSchema>> = OnceLock::new();
    RULES.get_or_init(build_starred_rules)
}

/// Looks up a primitive or starred rule by name.
pub fn builtin_rule(name: &str) -> Option<&'static RuleSchema> {
    primitive_rules().iter().chain(starred_rules()).find(|r| r.name == name)
}

fn builtin(name: &str) -> &'static RuleSchema {
    builtin_rule(name).unwrap_or_else(|| panic!("no built-in rule {name}"))
}

/// All rules available to a check: built-ins plus the rules of `env`.
struct RuleBook<'a> {
    rules: HashMap<String, &'a RuleSchema>,
}

impl<'a> RuleBook<'a> {
    fn new(generated: &'a [RuleSchema]) -> Self {
        let rules =
            primitive_rules().iter().chain(starred_rules()).chain(generated).map(|r| (r.name.clone(), r)).collect();
        RuleBook { rules }
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn expect_premises(n: &ScDerivation, k: usize) -> Result<(), String> {
    if n.premises.len() != k {
        return fail(format!("{} takes {k} premise(s), found {}", n.rule, n.premises.len()));
    }
    Ok(())
}

fn same(want: &RSequent, got: &RSequent, what: &str) -> Result<(), String> {
    if want != got {
        return fail(format!("{what} should be `{want}`, found `{got}`"));
    }
    Ok(())
}

fn check_connectives(seq: &RSequent, env: &Registry) -> Result<(), String> {
    let mut problem = None;
    let mut visit = |f: &Formula| {
        f.visit_apps(&mut |name, arity| {
            if problem.is_some() {
                return;
            }
            match env.get(name) {
                None => problem = Some(format!("unknown connective `{name}`")),
                Some(def) if def.arity != arity => {
                    problem = Some(format!("`{name}` has arity {}, applied to {arity}", def.arity))
                }
                _ => {}
            }
        })
    };
    for e in seq.context.iter().chain(std::iter::once(&seq.succedent)) {
        e.visit_formulas(&mut visit);
    }
    problem.map_or(Ok(()), Err)
}

fn check_node(n: &ScDerivation, book: &RuleBook, env: &Registry) -> Result<(), String> {
    let c = &n.conclusion;
    check_connectives(c, env)?;
    let prem: Vec<&RSequent> = n.premises.iter().map(|p| &p.conclusion).collect();
    match &n.rule {
        ScRule::Rf => {
            expect_premises(n, 0)?;
            if c.context.len() != 1 || c.context[0] != c.succedent {
                return fail(format!("RF concludes `S => S`, found `{c}`"));
            }
            Ok(())
        }
        ScRule::Wl => {
            expect_premises(n, 1)?;
            let Some((_, delta)) = c.context.split_last() else {
                return fail("WL needs a non-empty context");
            };
            same(&RSequent::new(delta.to_vec(), c.succedent.clone()), prem[0], "premise")
        }
        ScRule::Pl => {
            expect_premises(n, 1)?;
            let p = prem[0];
            let swapped = c.context.len() == p.context.len()
                && p.succedent == c.succedent
                && (0..c.context.len().saturating_sub(1)).any(|i| {
                    let mut v = c.context.clone();
                    v.swap(i, i + 1);
                    v == p.context
                });
            if !swapped {
                return fail(format!("premise `{p}` is not `{c}` with two neighbours swapped"));
            }
            Ok(())
        }
        ScRule::Cl => {
            expect_premises(n, 1)?;
            let Some(last) = c.context.last() else {
                return fail("CL needs a non-empty context");
            };
            same(&RSequent::new(c.with(last.clone()), c.succedent.clone()), prem[0], "premise")
        }
        ScRule::Cut => {
            expect_premises(n, 2)?;
            if prem[0].context != c.context {
                return fail(format!("left premise must have context `{}`", crate::syntax::context_text(&c.context)));
            }
            let right = RSequent::new(c.with(prem[0].succedent.clone()), c.succedent.clone());
            same(&right, prem[1], "right premise")
        }
        ScRule::RiPlus => {
            let RExpr::Seq(inner, s) = &c.succedent else {
                return fail("RI+ concludes a sequent expression");
            };
            expect_premises(n, 1)?;
            let mut ctx = c.context.clone();
            ctx.extend(inner.iter().cloned());
            same(&RSequent::new(ctx, (**s).clone()), prem[0], "premise")
        }
        ScRule::RiMinus => {
            let inner = match &c.succedent {
                RExpr::Ref(r) => r.body(),
                _ => return fail("RI- concludes a refuted sequent expression"),
            };
            let RExpr::Seq(gamma, s) = inner else {
                return fail("RI- concludes a refuted sequent expression");
            };
            expect_premises(n, 1)?;
            let mut ctx = c.context.clone();
            ctx.extend(gamma.iter().cloned());
            same(&RSequent::new(ctx, (**s).clone().neg()), prem[0], "premise")
        }
        ScRule::LiPlus | ScRule::LiMinus => {
            let Some((principal, delta)) = c.context.split_last() else {
                return fail(format!("{} needs a principal expression", n.rule));
            };
            let (gamma, s) = match (&n.rule, principal) {
                (ScRule::LiPlus, RExpr::Seq(g, s)) => (g, (**s).clone()),
                (ScRule::LiMinus, RExpr::Ref(r)) => match r.body() {
                    RExpr::Seq(g, s) => (g, (**s).clone().neg()),
                    _ => return fail("LI- needs a refuted sequent expression last in the context"),
                },
                (ScRule::LiPlus, _) => return fail("LI+ needs a sequent expression last in the context"),
                _ => return fail("LI- needs a refuted sequent expression last in the context"),
            };
            expect_premises(n, gamma.len() + 1)?;
            for (j, u) in gamma.iter().enumerate() {
                same(&RSequent::new(delta.to_vec(), u.clone()), prem[j], &format!("premise {}", j + 1))?;
            }
            let mut ctx = delta.to_vec();
            ctx.push(s);
            same(&RSequent::new(ctx, c.succedent.clone()), prem[gamma.len()], "last premise")
        }
        ScRule::Named(name) => {
            let rule = book.rules.get(name).ok_or_else(|| format!("unknown rule `{name}`"))?;
            rule.check(c, &prem)
        }
    }
}

/// Checks every node of `d` against SC∞, with the connective rules of `env`.
pub fn check_scinf(d: &ScDerivation, env: &Registry) -> Verdict {
    let generated: Vec<RuleSchema> = env.defs().flat_map(|def| gen_rules(def).all()).collect();
    let book = RuleBook::new(&generated);
    verdict(d, &mut |n| check_node(n, &book, env))
}

/// Checks the root inference of `d` alone; its premises are taken as given.
pub fn check_scinf_step(d: &ScDerivation, env: &Registry) -> Result<(), String> {
    let generated: Vec<RuleSchema> = env.defs().flat_map(|def| gen_rules(def).all()).collect();
    check_node(d, &RuleBook::new(&generated), env)
}

/// The implication rules in standard form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Starred {
    /// `Δ => A` and `Δ, B => S` give `Δ, A -> B => S`.
    ImpL,
    /// `Δ, A => B` gives `Δ => A -> B`.
    ImpR,
    /// `Δ => A` and `Δ, -B => S` give `Δ, -(A -> B) => S`.
    ImpLNeg,
    /// `Δ, A => -B` gives `Δ => -(A -> B)`.
    ImpRNeg,
}

/// Reduces a starred rule to `RI+`/`LI+`/`RI-`/`LI-` plus the primitive
/// implication rule. `premises` are the starred rule's premises.
pub fn derive_starred(
    kind: Starred,
    delta: &[RExpr],
    a: &Formula,
    b: &Formula,
    premises: Vec<ScDerivation>,
) -> ScDerivation {
    let seq_ab = RExpr::seq(vec![a.clone().into()], b.clone().into());
    let binds = bindings(&[a.clone(), b.clone()]);
    let side = || premises.last().expect("starred rules have premises").conclusion.succedent.clone();
    match kind {
        Starred::ImpR => {
            let inner = Derivation::node(ScRule::RiPlus, RSequent::new(delta.to_vec(), seq_ab), premises);
            builtin("impR").apply(delta, &RExpr::atom("_"), &binds, vec![inner])
        }
        Starred::ImpRNeg => {
            let inner = Derivation::node(ScRule::RiMinus, RSequent::new(delta.to_vec(), seq_ab.neg()), premises);
            builtin("impR-").apply(delta, &RExpr::atom("_"), &binds, vec![inner])
        }
        Starred::ImpL => {
            let side = side();
            let mut ctx = delta.to_vec();
            ctx.push(seq_ab);
            let inner = Derivation::node(ScRule::LiPlus, RSequent::new(ctx, side.clone()), premises);
            builtin("impL").apply(delta, &side, &binds, vec![inner])
        }
        Starred::ImpLNeg => {
            let side = side();
            let mut ctx = delta.to_vec();
            ctx.push(seq_ab.neg());
            let inner = Derivation::node(ScRule::LiMinus, RSequent::new(ctx, side.clone()), premises);
            builtin("impL-").apply(delta, &side, &binds, vec![inner])
        }
    }
}

/// `S => S`.
pub fn rf(s: RExpr) -> ScDerivation {
    Derivation::leaf(ScRule::Rf, RSequent::new(vec![s.clone()], s))
}

/// Reorders the context of `d` into `target` by adjacent swaps.
///
/// Panics unless `target` is a permutation of the context.
pub fn permute(d: ScDerivation, target: &[RExpr]) -> ScDerivation {
    let mut cur = d.conclusion.context.clone();
    assert_eq!(cur.len(), target.len(), "permute: lengths differ");
    let succ = d.conclusion.succedent.clone();
    let mut d = d;
    for i in 0..target.len() {
        let j =
            (i..cur.len()).find(|&j| cur[j] == target[i]).unwrap_or_else(|| panic!("permute: `{}` missing", target[i]));
        for k in (i..j).rev() {
            cur.swap(k, k + 1);
            d = Derivation::node(ScRule::Pl, RSequent::new(cur.clone(), succ.clone()), vec![d]);
        }
    }
    d
}

/// Weakens and reorders the context of `d` into `target`.
///
/// Panics unless the context is a sub-multiset of `target`.
pub fn weaken_to(d: ScDerivation, target: &[RExpr]) -> ScDerivation {
    let mut missing = target.to_vec();
    for e in &d.conclusion.context {
        let pos = missing.iter().position(|m| m == e).unwrap_or_else(|| panic!("weaken_to: `{e}` not in target"));
        missing.remove(pos);
    }
    let succ = d.conclusion.succedent.clone();
    let mut d = d;
    for m in missing {
        let mut ctx = d.conclusion.context.clone();
        ctx.push(m);
        d = Derivation::node(ScRule::Wl, RSequent::new(ctx, succ.clone()), vec![d]);
    }
    permute(d, target)
}

/// Applies a built-in connective rule whose conclusion is `delta, extras => side`
/// or `delta => principal`.
pub(crate) fn apply_builtin(
    name: &str,
    delta: &[RExpr],
    side: &RExpr,
    args: &[Formula],
    premises: Vec<ScDerivation>,
) -> ScDerivation {
    builtin(name).apply(delta, side, &bindings(args), premises)
}
