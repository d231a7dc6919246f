//! Rule schemata over placeholder atoms `A1..An`.
//!
//! Every connective rule of SC∞ has the shape
//!
//! ```text
//! Δ, E1 => S1   ...   Δ, Ek => Sk
//! ---------------------------------
//!            Δ, E => S
//! ```
//!
//! where the context `Δ` is shared and any succedent may be the rule's side
//! expression `T`. Only the extras `E` and fixed succedents are stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::derivation::Derivation;
use crate::syntax::{parse_placeholder_list, Formula, RExpr, RSequent};

use super::{ScDerivation, ScRule};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Succ {
    Fixed(RExpr),
    /// The side expression `T`, unchanged between premises and conclusion.
    Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemaSequent {
    /// Appended to `Δ`, in order.
    pub extra: Vec<RExpr>,
    pub succedent: Succ,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleSchema {
    pub name: String,
    pub premises: Vec<SchemaSequent>,
    pub conclusion: SchemaSequent,
}

pub type Bindings = BTreeMap<String, Formula>;

/// `A<j>` with `j >= 1`.
pub fn placeholder_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('A')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

pub fn placeholder(j: usize) -> Formula {
    Formula::atom(format!("A{j}"))
}

fn match_formula(pat: &Formula, f: &Formula, b: &mut Bindings) -> bool {
    use Formula::*;
    match (pat, f) {
        (Atom(name), _) if placeholder_index(name).is_some() => match b.get(name) {
            Some(bound) => bound == f,
            None => {
                b.insert(name.clone(), f.clone());
                true
            }
        },
        (Atom(x), Atom(y)) => x == y,
        (Neg(x), Neg(y)) => match_formula(x, y, b),
        (And(x1, x2), And(y1, y2)) | (Or(x1, x2), Or(y1, y2)) | (Imp(x1, x2), Imp(y1, y2)) => {
            match_formula(x1, y1, b) && match_formula(x2, y2, b)
        }
        (App(g, xs), App(h, ys)) => {
            g == h && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_formula(x, y, b))
        }
        _ => false,
    }
}

fn match_rexpr(pat: &RExpr, e: &RExpr, b: &mut Bindings) -> bool {
    match (pat, e) {
        (RExpr::Fml(x), RExpr::Fml(y)) => match_formula(x, y, b),
        (RExpr::Ref(x), RExpr::Ref(y)) => match_rexpr(x.body(), y.body(), b),
        (RExpr::Seq(xc, xs), RExpr::Seq(yc, ys)) => {
            xc.len() == yc.len() && xc.iter().zip(yc).all(|(x, y)| match_rexpr(x, y, b)) && match_rexpr(xs, ys, b)
        }
        _ => false,
    }
}

fn instantiate(e: &RExpr, b: &Bindings) -> RExpr {
    e.substitute(&|name| b.get(name).cloned())
}

impl SchemaSequent {
    fn placeholders(&self, out: &mut BTreeSet<String>) {
        let mut visit = |f: &Formula| {
            for a in f.atoms() {
                if placeholder_index(&a).is_some() {
                    out.insert(a);
                }
            }
        };
        for e in &self.extra {
            e.visit_formulas(&mut visit);
        }
        if let Succ::Fixed(s) = &self.succedent {
            s.visit_formulas(&mut visit);
        }
    }

    fn instance(&self, delta: &[RExpr], side: &RExpr, b: &Bindings) -> RSequent {
        let mut ctx = delta.to_vec();
        ctx.extend(self.extra.iter().map(|e| instantiate(e, b)));
        let succ = match &self.succedent {
            Succ::Fixed(s) => instantiate(s, b),
            Succ::Side => side.clone(),
        };
        RSequent::new(ctx, succ)
    }

    fn render(&self) -> String {
        let mut ctx = vec!["Δ".to_string()];
        ctx.extend(self.extra.iter().map(ToString::to_string));
        let succ = match &self.succedent {
            Succ::Fixed(s) => s.to_string(),
            Succ::Side => "T".to_string(),
        };
        format!("{} => {}", ctx.join(", "), succ)
    }

    /// Reads `Δ, E1, ..., Ek => S`, with `T` standing for the side expression.
    pub(crate) fn parse(text: &str) -> Self {
        let (lhs, rhs) = split_top_arrow(text);
        let lhs = lhs.trim().strip_prefix('Δ').expect("schema context starts with Δ");
        let lhs = lhs.trim_start().strip_prefix(',').unwrap_or(lhs);
        let extra = parse_placeholder_list(lhs).expect("valid schema context");
        let succedent = match rhs.trim() {
            "T" => Succ::Side,
            s => {
                let mut v = parse_placeholder_list(s).expect("valid schema succedent");
                assert_eq!(v.len(), 1, "one succedent");
                Succ::Fixed(v.remove(0))
            }
        };
        SchemaSequent { extra, succedent }
    }
}

/// Splits at the first `=>` outside parentheses.
fn split_top_arrow(text: &str) -> (&str, &str) {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '=' if depth == 0 && text[i..].starts_with("=>") => return (&text[..i], &text[i + 2..]),
            _ => {}
        }
    }
    panic!("schema sequent `{text}` has no top-level `=>`")
}

impl RuleSchema {
    pub(crate) fn parse(name: &str, premises: &[&str], conclusion: &str) -> Self {
        RuleSchema {
            name: name.to_string(),
            premises: premises.iter().map(|p| SchemaSequent::parse(p)).collect(),
            conclusion: SchemaSequent::parse(conclusion),
        }
    }

    /// The same rule under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        RuleSchema { name: name.into(), ..self.clone() }
    }

    /// True when the two rules have the same shape, names aside.
    pub fn same_shape(&self, other: &RuleSchema) -> bool {
        self.premises == other.premises && self.conclusion == other.conclusion
    }

    pub fn is_left(&self) -> bool {
        self.conclusion.succedent == Succ::Side
    }

    pub fn placeholders(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.conclusion.placeholders(&mut out);
        for p in &self.premises {
            p.placeholders(&mut out);
        }
        out
    }

    /// Reads off `Δ`, the side expression and the placeholder bindings from
    /// a conclusion. The extras must be the last members of the context.
    pub fn match_conclusion(&self, concl: &RSequent) -> Option<(Vec<RExpr>, RExpr, Bindings)> {
        let k = self.conclusion.extra.len();
        if concl.context.len() < k {
            return None;
        }
        let split = concl.context.len() - k;
        let mut b = Bindings::new();
        for (pat, e) in self.conclusion.extra.iter().zip(&concl.context[split..]) {
            if !match_rexpr(pat, e, &mut b) {
                return None;
            }
        }
        if let Succ::Fixed(pat) = &self.conclusion.succedent {
            if !match_rexpr(pat, &concl.succedent, &mut b) {
                return None;
            }
        }
        Some((concl.context[..split].to_vec(), concl.succedent.clone(), b))
    }

    /// The premises and conclusion for a context, side expression and
    /// bindings of every placeholder.
    pub fn instance(&self, delta: &[RExpr], side: &RExpr, b: &Bindings) -> (Vec<RSequent>, RSequent) {
        let premises = self.premises.iter().map(|p| p.instance(delta, side, b)).collect();
        (premises, self.conclusion.instance(delta, side, b))
    }

    /// Checks one node: the conclusion fixes `Δ`, `T` and the bindings, and
    /// the premises must then be exactly the instantiated ones.
    pub fn check(&self, concl: &RSequent, premises: &[&RSequent]) -> Result<(), String> {
        let (delta, side, b) = self
            .match_conclusion(concl)
            .ok_or_else(|| format!("conclusion `{concl}` does not have the form `{}`", self.conclusion.render()))?;
        if let Some(free) = self.placeholders().into_iter().find(|p| !b.contains_key(p)) {
            return Err(format!("placeholder {free} is not fixed by the conclusion"));
        }
        if premises.len() != self.premises.len() {
            return Err(format!("{} takes {} premise(s), found {}", self.name, self.premises.len(), premises.len()));
        }
        let (expected, _) = self.instance(&delta, &side, &b);
        for (i, (want, got)) in expected.iter().zip(premises).enumerate() {
            if want != *got {
                return Err(format!("premise {} should be `{want}`, found `{got}`", i + 1));
            }
        }
        Ok(())
    }

    /// Builds a node of this rule over `premises`, which must conclude the
    /// instantiated premise sequents.
    pub fn apply(&self, delta: &[RExpr], side: &RExpr, b: &Bindings, premises: Vec<ScDerivation>) -> ScDerivation {
        let (_, concl) = self.instance(delta, side, b);
        debug_assert_eq!(premises.len(), self.premises.len());
        Derivation::node(ScRule::Named(self.name.clone()), concl, premises)
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(|p| format!("[{}]", p.render())).collect();
        write!(f, "{}: {} / {}", self.name, premises.join(" "), self.conclusion.render())
    }
}

/// Convenience for `Bindings` from placeholder index to formula.
pub fn bindings(args: &[Formula]) -> Bindings {
    args.iter().enumerate().map(|(i, a)| (format!("A{}", i + 1), a.clone())).collect()
}
