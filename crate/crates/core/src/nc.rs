//! Natural deduction for C, with labelled assumption discharge.
//!
//! Leaves are assumptions `(assume u A)`. A discharging rule lists one label
//! slot per minor premise that may discharge: `impI` and `~impI` have one,
//! `orE` and `~andE` have two (for their second and third premises). Every
//! leaf carrying a discharged label must sit inside the matching premise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::derivation::{Derivation, Rejection, Verdict};
use crate::g3c::parse_primitive;
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NcRule {
    Assume(String),
    NegNegI,
    NegNegE,
    AndI,
    AndE1,
    AndE2,
    NegAndI1,
    NegAndI2,
    NegAndE,
    OrI1,
    OrI2,
    OrE,
    NegOrI,
    NegOrE1,
    NegOrE2,
    ImpI,
    ImpE,
    NegImpI,
    NegImpE,
}

/// Rule names of N4's negated implication rules, refused by name.
const N4_RULES: [&str; 2] = ["~impE1", "~impE2"];

impl NcRule {
    pub const INFERENCES: [NcRule; 18] = [
        NcRule::NegNegI,
        NcRule::NegNegE,
        NcRule::AndI,
        NcRule::AndE1,
        NcRule::AndE2,
        NcRule::NegAndI1,
        NcRule::NegAndI2,
        NcRule::NegAndE,
        NcRule::OrI1,
        NcRule::OrI2,
        NcRule::OrE,
        NcRule::NegOrI,
        NcRule::NegOrE1,
        NcRule::NegOrE2,
        NcRule::ImpI,
        NcRule::ImpE,
        NcRule::NegImpI,
        NcRule::NegImpE,
    ];

    pub fn name(&self) -> &str {
        match self {
            NcRule::Assume(_) => "assume",
            NcRule::NegNegI => "~~I",
            NcRule::NegNegE => "~~E",
            NcRule::AndI => "andI",
            NcRule::AndE1 => "andE1",
            NcRule::AndE2 => "andE2",
            NcRule::NegAndI1 => "~andI1",
            NcRule::NegAndI2 => "~andI2",
            NcRule::NegAndE => "~andE",
            NcRule::OrI1 => "orI1",
            NcRule::OrI2 => "orI2",
            NcRule::OrE => "orE",
            NcRule::NegOrI => "~orI",
            NcRule::NegOrE1 => "~orE1",
            NcRule::NegOrE2 => "~orE2",
            NcRule::ImpI => "impI",
            NcRule::ImpE => "impE",
            NcRule::NegImpI => "~impI",
            NcRule::NegImpE => "~impE",
        }
    }

    /// Inference rules by name; assumptions have their own syntax.
    pub fn from_name(name: &str) -> Option<NcRule> {
        NcRule::INFERENCES.into_iter().find(|r| r.name() == name)
    }

    /// Number of discharge slots.
    pub fn slots(&self) -> usize {
        match self {
            NcRule::ImpI | NcRule::NegImpI => 1,
            NcRule::OrE | NcRule::NegAndE => 2,
            _ => 0,
        }
    }

    /// Premise index that discharge slot `k` applies to.
    fn slot_premise(&self, k: usize) -> usize {
        match self {
            NcRule::OrE | NcRule::NegAndE => k + 1,
            _ => k,
        }
    }
}

impl fmt::Display for NcRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule occurrence with its discharge labels (`None` for a vacuous slot).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcStep {
    pub rule: NcRule,
    pub discharges: Vec<Option<String>>,
}

impl NcStep {
    pub fn new(rule: NcRule) -> Self {
        NcStep { rule, discharges: Vec::new() }
    }

    pub fn discharging(rule: NcRule, labels: &[&str]) -> Self {
        let discharges = labels.iter().map(|l| (*l != "_").then(|| l.to_string())).collect();
        NcStep { rule, discharges }
    }
}

impl fmt::Display for NcStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rule.fmt(f)
    }
}

pub type NcDerivation = Derivation<NcStep, Formula>;

pub fn assume(label: &str, f: Formula) -> NcDerivation {
    Derivation::leaf(NcStep::new(NcRule::Assume(label.to_string())), f)
}

/// Checks `d` and that its open assumptions, as a set of formulas, are
/// exactly `premises`.
pub fn check_nc(d: &NcDerivation, premises: &[Formula]) -> Verdict {
    let mut st = Scope::default();
    let mut path = Vec::new();
    let open = walk(d, &mut path, &mut st)?;
    for (label, (_, leaf)) in &open {
        if let Some(at) = st.discharged.get(label) {
            return Err(Rejection {
                path: leaf.clone(),
                reason: format!("assumption `{label}` is discharged at [{}] but lies outside its scope", dotted(at)),
            });
        }
    }
    let got: BTreeSet<&Formula> = open.values().map(|(f, _)| f).collect();
    let want: BTreeSet<&Formula> = premises.iter().collect();
    if got != want {
        let show = |s: &BTreeSet<&Formula>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        return Err(Rejection::at_root(format!(
            "open assumptions {{{}}} differ from the declared premises {{{}}}",
            show(&got),
            show(&want)
        )));
    }
    Ok(())
}

#[derive(Default)]
struct Scope {
    /// Label to the path of the node discharging it.
    discharged: BTreeMap<String, Vec<usize>>,
}

/// Open assumptions: label to formula and the path of one leaf.
type Open = BTreeMap<String, (Formula, Vec<usize>)>;

fn dotted(path: &[usize]) -> String {
    path.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
}

fn walk(d: &NcDerivation, path: &mut Vec<usize>, st: &mut Scope) -> Result<Open, Rejection> {
    let mut below = Vec::with_capacity(d.premises.len());
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        below.push(walk(p, path, st)?);
        path.pop();
    }
    let reject = |reason: String| Rejection { path: path.clone(), reason };
    if !d.conclusion.is_primitive() {
        return Err(reject(format!("`{}` uses a connective outside ~, &, |, ->", d.conclusion)));
    }
    if let NcRule::Assume(label) = &d.rule.rule {
        if !d.premises.is_empty() || !d.rule.discharges.is_empty() {
            return Err(reject("an assumption has no premises and discharges nothing".into()));
        }
        return Ok(BTreeMap::from([(label.clone(), (d.conclusion.clone(), path.clone()))]));
    }
    let prem: Vec<&Formula> = d.premises.iter().map(|p| &p.conclusion).collect();
    let dis = instance(&d.rule.rule, &d.conclusion, &prem).map_err(reject)?;

    let step = &d.rule;
    if !step.discharges.is_empty() && step.discharges.len() != step.rule.slots() {
        return Err(reject(format!(
            "{} has {} discharge slot(s), found {}",
            step.rule,
            step.rule.slots(),
            step.discharges.len()
        )));
    }
    for (k, label) in step.discharges.iter().enumerate() {
        let Some(label) = label else { continue };
        if let Some(at) = st.discharged.get(label) {
            return Err(reject(format!("label `{label}` is already discharged at [{}]", dotted(at))));
        }
        let i = step.rule.slot_premise(k);
        if let Some((f, _)) = below[i].get(label) {
            if *f != dis[k] {
                return Err(reject(format!("`{label}` marks `{f}`, but {} discharges `{}`", step.rule, dis[k])));
            }
            below[i].remove(label);
        }
        st.discharged.insert(label.clone(), path.clone());
    }

    let mut open = Open::new();
    for b in below {
        for (label, (f, leaf)) in b {
            match open.get(&label) {
                Some((g, _)) if *g != f => return Err(reject(format!("label `{label}` marks both `{g}` and `{f}`"))),
                Some(_) => {}
                None => {
                    open.insert(label, (f, leaf));
                }
            }
        }
    }
    Ok(open)
}

fn neg(f: &Formula) -> Formula {
    Formula::neg(f.clone())
}

/// Checks the shape of one inference. Returns the formulas that the
/// discharge slots may cancel.
fn instance(rule: &NcRule, c: &Formula, p: &[&Formula]) -> Result<Vec<Formula>, String> {
    use Formula::*;
    let arity = match rule {
        NcRule::AndI | NcRule::NegOrI | NcRule::ImpE | NcRule::NegImpE => 2,
        NcRule::OrE | NcRule::NegAndE => 3,
        NcRule::Assume(_) => 0,
        _ => 1,
    };
    if p.len() != arity {
        return Err(format!("{rule} takes {arity} premise(s), found {}", p.len()));
    }
    let bad = || Err(format!("`{c}` does not follow by {rule} from {}", list(p)));
    let ok = |cond: bool| if cond { Ok(Vec::new()) } else { bad() };
    match rule {
        NcRule::Assume(_) => Ok(Vec::new()),
        NcRule::NegNegI => ok(*c == neg(&neg(p[0]))),
        NcRule::NegNegE => ok(*p[0] == neg(&neg(c))),
        NcRule::AndI => ok(*c == Formula::and(p[0].clone(), p[1].clone())),
        NcRule::AndE1 => ok(matches!(p[0], And(a, _) if **a == *c)),
        NcRule::AndE2 => ok(matches!(p[0], And(_, b) if **b == *c)),
        NcRule::NegAndI1 => ok(matches!(c, Neg(x) if matches!(&**x, And(a, _) if *p[0] == neg(a)))),
        NcRule::NegAndI2 => ok(matches!(c, Neg(x) if matches!(&**x, And(_, b) if *p[0] == neg(b)))),
        NcRule::NegAndE => match p[0] {
            Neg(x) => match &**x {
                And(a, b) if p[1] == c && p[2] == c => Ok(vec![neg(a), neg(b)]),
                _ => bad(),
            },
            _ => bad(),
        },
        NcRule::OrI1 => ok(matches!(c, Or(a, _) if **a == *p[0])),
        NcRule::OrI2 => ok(matches!(c, Or(_, b) if **b == *p[0])),
        NcRule::OrE => match p[0] {
            Or(a, b) if p[1] == c && p[2] == c => Ok(vec![(**a).clone(), (**b).clone()]),
            _ => bad(),
        },
        NcRule::NegOrI => ok(matches!(c, Neg(x)
            if matches!(&**x, Or(a, b) if *p[0] == neg(a) && *p[1] == neg(b)))),
        NcRule::NegOrE1 => ok(matches!(p[0], Neg(x) if matches!(&**x, Or(a, _) if *c == neg(a)))),
        NcRule::NegOrE2 => ok(matches!(p[0], Neg(x) if matches!(&**x, Or(_, b) if *c == neg(b)))),
        NcRule::ImpI => match c {
            Imp(a, b) if **b == *p[0] => Ok(vec![(**a).clone()]),
            _ => bad(),
        },
        NcRule::ImpE => ok(matches!(p[1], Imp(a, b) if **a == *p[0] && **b == *c)),
        NcRule::NegImpI => match c {
            Neg(x) => match &**x {
                Imp(a, b) if *p[0] == neg(b) => Ok(vec![(**a).clone()]),
                _ => bad(),
            },
            _ => bad(),
        },
        NcRule::NegImpE => ok(matches!(p[1], Neg(x)
            if matches!(&**x, Imp(a, b) if **a == *p[0] && *c == neg(b)))),
    }
}

fn list(p: &[&Formula]) -> String {
    if p.is_empty() {
        return "nothing".into();
    }
    p.iter().map(|f| format!("`{f}`")).collect::<Vec<_>>().join(", ")
}

/// Why a rule name is not accepted.
pub fn unknown_rule_message(name: &str) -> String {
    if N4_RULES.contains(&name) {
        format!("`{name}` is a rule of N4, not of C")
    } else {
        format!("unknown NC rule `{name}`")
    }
}

/// Hand-built derivations used as fixtures: the two contradictory
/// theorems and the four connexive theses, over atoms `p` and `q`.
pub mod golden {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_primitive(s).expect("fixture formula")
    }

    fn node(rule: NcRule, c: &str, premises: Vec<NcDerivation>) -> NcDerivation {
        Derivation::node(NcStep::new(rule), f(c), premises)
    }

    fn discharging(rule: NcRule, labels: &[&str], c: &str, premises: Vec<NcDerivation>) -> NcDerivation {
        Derivation::node(NcStep::discharging(rule, labels), f(c), premises)
    }

    /// `(p & ~p) -> p`.
    pub fn contradiction_left() -> NcDerivation {
        discharging(NcRule::ImpI, &["u"], "p & ~p -> p", vec![node(NcRule::AndE1, "p", vec![assume("u", f("p & ~p"))])])
    }

    /// `~((p & ~p) -> p)`.
    pub fn contradiction_right() -> NcDerivation {
        discharging(
            NcRule::NegImpI,
            &["u"],
            "~(p & ~p -> p)",
            vec![node(NcRule::AndE2, "~p", vec![assume("u", f("p & ~p"))])],
        )
    }

    /// `~(~p -> p)`.
    pub fn aristotle() -> NcDerivation {
        discharging(NcRule::NegImpI, &["u"], "~(~p -> p)", vec![assume("u", f("~p"))])
    }

    /// `~(p -> ~p)`.
    pub fn aristotle_prime() -> NcDerivation {
        discharging(
            NcRule::NegImpI,
            &["u"],
            "~(p -> ~p)",
            vec![node(NcRule::NegNegI, "~~p", vec![assume("u", f("p"))])],
        )
    }

    /// `(p -> q) -> ~(p -> ~q)`.
    pub fn boethius() -> NcDerivation {
        let b = node(NcRule::ImpE, "q", vec![assume("v", f("p")), assume("u", f("p -> q"))]);
        let nnb = node(NcRule::NegNegI, "~~q", vec![b]);
        let inner = discharging(NcRule::NegImpI, &["v"], "~(p -> ~q)", vec![nnb]);
        discharging(NcRule::ImpI, &["u"], "(p -> q) -> ~(p -> ~q)", vec![inner])
    }

    /// `(p -> ~q) -> ~(p -> q)`.
    pub fn boethius_prime() -> NcDerivation {
        let nb = node(NcRule::ImpE, "~q", vec![assume("v", f("p")), assume("u", f("p -> ~q"))]);
        let inner = discharging(NcRule::NegImpI, &["v"], "~(p -> q)", vec![nb]);
        discharging(NcRule::ImpI, &["u"], "(p -> ~q) -> ~(p -> q)", vec![inner])
    }

    /// Name, derivation and theorem of every fixture.
    pub fn all() -> Vec<(&'static str, NcDerivation)> {
        vec![
            ("contradiction-left", contradiction_left()),
            ("contradiction-right", contradiction_right()),
            ("AT", aristotle()),
            ("AT'", aristotle_prime()),
            ("BT", boethius()),
            ("BT'", boethius_prime()),
        ]
    }
}

/// Single-node mutations of `d`: each changes exactly one node's rule,
/// conclusion, discharge labels or premise order.
pub fn mutations(d: &NcDerivation) -> Vec<(String, NcDerivation)> {
    let mut out = Vec::new();
    for path in d.paths() {
        let node = d.at(&path).unwrap();
        let at = dotted(&path);
        let mut push = |what: String, change: &dyn Fn(&mut NcDerivation)| {
            let mut m = d.clone();
            change(m.at_mut(&path).unwrap());
            if m != *d {
                out.push((format!("[{at}] {what}"), m));
            }
        };
        push("negated conclusion".into(), &|n| n.conclusion = neg(&n.conclusion));
        match &node.rule.rule {
            NcRule::Assume(label) => {
                let fresh = format!("{label}'");
                push(format!("relabel to {fresh}"), &|n| n.rule.rule = NcRule::Assume(fresh.clone()));
            }
            rule => {
                for other in NcRule::INFERENCES.iter().filter(|r| *r != rule) {
                    if other.slots() == rule.slots() {
                        push(format!("rule {other}"), &|n| n.rule.rule = other.clone());
                    }
                }
                if node.rule.discharges.iter().any(Option::is_some) {
                    push("relabelled discharge".into(), &|n| {
                        for l in n.rule.discharges.iter_mut().flatten() {
                            l.push('\'');
                        }
                    });
                }
                if node.premises.len() > 1 {
                    push("premises reversed".into(), &|n| n.premises.reverse());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_trees_are_accepted() {
        for (name, d) in golden::all() {
            check_nc(&d, &[]).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn n4_negated_implication_elimination_is_refused() {
        // ~(p -> q) / p as N4's first elimination rule: no NC rule fits
        let premise = assume("u", parse_primitive("~(p -> q)").unwrap());
        for rule in NcRule::INFERENCES {
            let d = Derivation::node(NcStep::new(rule), parse_primitive("p").unwrap(), vec![premise.clone()]);
            let prem = [parse_primitive("~(p -> q)").unwrap()];
            assert!(check_nc(&d, &prem).is_err());
        }
        assert!(NcRule::from_name("~impE1").is_none());
        assert!(unknown_rule_message("~impE1").contains("N4"));
    }

    #[test]
    fn n4_negated_implication_introduction_is_refused() {
        let d = Derivation::node(
            NcStep::new(NcRule::NegImpI),
            parse_primitive("~(p -> q)").unwrap(),
            vec![assume("u", parse_primitive("p").unwrap()), assume("v", parse_primitive("~q").unwrap())],
        );
        let prem = [parse_primitive("p").unwrap(), parse_primitive("~q").unwrap()];
        let err = check_nc(&d, &prem).unwrap_err();
        assert!(err.path.is_empty() && err.reason.contains("premise"), "{err}");
    }

    #[test]
    fn open_assumptions_must_match_premises() {
        let d = Derivation::node(
            NcStep::new(NcRule::AndE1),
            parse_primitive("p").unwrap(),
            vec![assume("u", parse_primitive("p & q").unwrap())],
        );
        check_nc(&d, &[parse_primitive("p & q").unwrap()]).unwrap();
        assert!(check_nc(&d, &[]).is_err());
    }

    #[test]
    fn discharge_outside_scope_is_refused() {
        // impI discharges u in its own premise; a second u-leaf sits elsewhere
        let inner = golden::contradiction_left();
        let stray = assume("u", parse_primitive("p & ~p").unwrap());
        let d = Derivation::node(
            NcStep::new(NcRule::AndI),
            parse_primitive("(p & ~p -> p) & (p & ~p)").unwrap(),
            vec![inner, stray],
        );
        let err = check_nc(&d, &[parse_primitive("p & ~p").unwrap()]).unwrap_err();
        assert_eq!(err.path, vec![1]);
    }

    #[test]
    fn vacuous_and_multiple_discharge() {
        let q = || parse_primitive("q").unwrap();
        let vac = Derivation::node(
            NcStep::discharging(NcRule::ImpI, &["_"]),
            parse_primitive("p -> q").unwrap(),
            vec![assume("u", q())],
        );
        check_nc(&vac, &[q()]).unwrap();
        // two leaves under one label, discharged together
        let both = Derivation::node(
            NcStep::new(NcRule::AndI),
            parse_primitive("p & p").unwrap(),
            vec![assume("u", parse_primitive("p").unwrap()), assume("u", parse_primitive("p").unwrap())],
        );
        let d = Derivation::node(
            NcStep::discharging(NcRule::ImpI, &["u"]),
            parse_primitive("p -> p & p").unwrap(),
            vec![both],
        );
        check_nc(&d, &[]).unwrap();
    }

    #[test]
    fn disjunction_elimination_scopes() {
        let f = |s: &str| parse_primitive(s).unwrap();
        let d = Derivation::node(
            NcStep::discharging(NcRule::OrE, &["a", "b"]),
            f("q | p"),
            vec![
                assume("h", f("p | q")),
                Derivation::node(NcStep::new(NcRule::OrI2), f("q | p"), vec![assume("a", f("p"))]),
                Derivation::node(NcStep::new(NcRule::OrI1), f("q | p"), vec![assume("b", f("q"))]),
            ],
        );
        check_nc(&d, &[f("p | q")]).unwrap();
        let mut swapped = d.clone();
        swapped.rule.discharges.reverse();
        assert!(check_nc(&swapped, &[f("p | q")]).is_err());
    }

    #[test]
    fn every_mutation_of_the_contradictions_is_rejected() {
        for d in [golden::contradiction_left(), golden::contradiction_right()] {
            let ms = mutations(&d);
            assert!(ms.len() >= 10);
            for (what, m) in ms {
                assert!(check_nc(&m, &[]).is_err(), "accepted mutation {what}");
            }
        }
    }
}
