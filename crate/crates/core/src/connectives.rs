//! User-defined connectives given by grouped rule data.
//!
//! A definition `connective F/n { group { S11; S12 } group { S21 } }` fixes
//! the right rules of `F` (one per group), the left rule (one premise per
//! group), and their refutation duals (one right rule per selection of one
//! member from each group, and a left rule with one premise per selection).

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::sc_inf::{placeholder, placeholder_index, primitive_rules, RuleSchema, SchemaSequent, Succ};
use crate::syntax::{Formula, ParseError, Parser, RExpr, Signature, Tok};

/// Largest accepted arity.
pub const MAX_ARITY: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectiveDef {
    pub name: String,
    pub arity: usize,
    /// Group `i` holds `S_i1, ..., S_is_i`, over placeholders `A1..An`.
    pub groups: Vec<Vec<RExpr>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("connective `{0}` has no groups")]
    NoGroups(String),
    #[error("connective `{name}`: group {group} is empty")]
    EmptyGroup { name: String, group: usize },
    #[error("connective `{0}` must have arity at least 1")]
    Nullary(String),
    #[error("connective `{name}` has arity {arity}, above the maximum {MAX_ARITY}")]
    ArityOverflow { name: String, arity: u64 },
    #[error("connective `{name}`: `{atom}` is not one of A1..A{arity}")]
    ForeignAtom { name: String, atom: String, arity: usize },
    #[error("connective `{name}`: component `{component}` must be a placeholder A1..A{arity}")]
    NotAPlaceholder { name: String, component: Formula, arity: usize },
    #[error("connective `{0}` is defined twice")]
    Duplicate(String),
    #[error("expected exactly one definition, found {0}")]
    Count(usize),
}

impl ConnectiveDef {
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// `r = s_1 * ... * s_t`.
    pub fn selection_count(&self) -> usize {
        self.groups.iter().map(Vec::len).product()
    }

    /// All selections of one member per group, as 0-based indices, in
    /// lexicographic order (the first group varies slowest).
    pub fn selections(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for g in &self.groups {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..g.len()).map(move |k| {
                        let mut s = prefix.clone();
                        s.push(k);
                        s
                    })
                })
                .collect();
        }
        out
    }

    /// `F(A1, ..., An)`.
    pub fn generic_application(&self) -> Formula {
        Formula::app(self.name.clone(), (1..=self.arity).map(placeholder).collect())
    }

    pub fn apply(&self, args: Vec<Formula>) -> Formula {
        assert_eq!(args.len(), self.arity);
        Formula::app(self.name.clone(), args)
    }

    /// The selected members `S_iσ(i)` for a 0-based selection.
    pub fn selected(&self, sel: &[usize]) -> Vec<&RExpr> {
        self.groups.iter().zip(sel).map(|(g, &k)| &g[k]).collect()
    }

    fn validate(&self) -> Result<(), DefError> {
        if self.arity == 0 {
            return Err(DefError::Nullary(self.name.clone()));
        }
        if self.groups.is_empty() {
            return Err(DefError::NoGroups(self.name.clone()));
        }
        for (i, g) in self.groups.iter().enumerate() {
            if g.is_empty() {
                return Err(DefError::EmptyGroup { name: self.name.clone(), group: i + 1 });
            }
            for s in g {
                for c in s.formula_components() {
                    match &c {
                        Formula::Atom(a) => match placeholder_index(a) {
                            Some(j) if j <= self.arity => {}
                            _ => {
                                return Err(DefError::ForeignAtom {
                                    name: self.name.clone(),
                                    atom: a.clone(),
                                    arity: self.arity,
                                })
                            }
                        },
                        _ => {
                            return Err(DefError::NotAPlaceholder {
                                name: self.name.clone(),
                                component: c,
                                arity: self.arity,
                            })
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ConnectiveDef {
    /// The canonical form, which also feeds the environment hash.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "connective {}/{} {{", self.name, self.arity)?;
        for g in &self.groups {
            let members: Vec<String> = g.iter().map(ToString::to_string).collect();
            write!(f, " group {{ {} }}", members.join("; "))?;
        }
        write!(f, " }}")
    }
}

fn parse_def(p: &mut Parser) -> Result<ConnectiveDef, DefError> {
    let start = p.offset();
    let kw = p.ident()?;
    if kw != "connective" {
        return Err(ParseError::Syntax { pos: start, msg: format!("expected `connective`, found `{kw}`") }.into());
    }
    let name = p.ident()?;
    p.expect(Tok::Slash)?;
    let arity = p.nat()?;
    if arity > MAX_ARITY as u64 {
        return Err(DefError::ArityOverflow { name, arity });
    }
    p.expect(Tok::LBrace)?;
    let mut groups = Vec::new();
    while *p.peek() != Tok::RBrace {
        let start = p.offset();
        let kw = p.ident()?;
        if kw != "group" {
            return Err(ParseError::Syntax { pos: start, msg: format!("expected `group`, found `{kw}`") }.into());
        }
        p.expect(Tok::LBrace)?;
        let mut members = Vec::new();
        if *p.peek() != Tok::RBrace {
            members.push(p.rexpr()?);
            while *p.peek() == Tok::Semi {
                p.bump();
                members.push(p.rexpr()?);
            }
        }
        p.expect(Tok::RBrace)?;
        groups.push(members);
    }
    p.expect(Tok::RBrace)?;
    let def = ConnectiveDef { name, arity: arity as usize, groups };
    def.validate()?;
    Ok(def)
}

/// Parses any number of definitions; names must be distinct.
pub fn load_definitions(text: &str) -> Result<Vec<ConnectiveDef>, DefError> {
    let sig = crate::syntax::NoConnectives;
    let mut p = Parser::new(text, &sig)?.placeholder_mode();
    let mut defs: Vec<ConnectiveDef> = Vec::new();
    while *p.peek() != Tok::Eof {
        let def = parse_def(&mut p)?;
        if defs.iter().any(|d| d.name == def.name) {
            return Err(DefError::Duplicate(def.name));
        }
        defs.push(def);
    }
    Ok(defs)
}

/// Parses exactly one definition.
pub fn load_definition(text: &str) -> Result<ConnectiveDef, DefError> {
    let mut defs = load_definitions(text)?;
    if defs.len() != 1 {
        return Err(DefError::Count(defs.len()));
    }
    Ok(defs.remove(0))
}

/// Registered connectives, in registration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    defs: Vec<ConnectiveDef>,
}

impl Registry {
    pub fn from_text(text: &str) -> Result<Self, DefError> {
        let mut r = Registry::default();
        for d in load_definitions(text)? {
            r.insert(d)?;
        }
        Ok(r)
    }

    pub fn insert(&mut self, def: ConnectiveDef) -> Result<(), DefError> {
        if self.get(&def.name).is_some() {
            return Err(DefError::Duplicate(def.name));
        }
        def.validate()?;
        self.defs.push(def);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&ConnectiveDef> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn defs(&self) -> impl Iterator<Item = &ConnectiveDef> {
        self.defs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Canonical reprint of all definitions, one per line.
    pub fn canonical_text(&self) -> String {
        self.defs.iter().map(|d| format!("{d}\n")).collect()
    }

    /// SHA-256 of the canonical reprint, in hex.
    pub fn env_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

impl Signature for Registry {
    fn arity(&self, name: &str) -> Option<usize> {
        self.get(name).map(|d| d.arity)
    }
}

/// The rules a definition generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedRules {
    /// One per group.
    pub right_rules: Vec<RuleSchema>,
    /// One premise per group.
    pub left_rule: RuleSchema,
    /// One per selection.
    pub right_neg_rules: Vec<RuleSchema>,
    /// One premise per selection.
    pub left_neg_rule: RuleSchema,
}

impl GeneratedRules {
    pub fn all(&self) -> Vec<RuleSchema> {
        let mut v = self.right_rules.clone();
        v.push(self.left_rule.clone());
        v.extend(self.right_neg_rules.iter().cloned());
        v.push(self.left_neg_rule.clone());
        v
    }
}

fn fixed(e: RExpr) -> SchemaSequent {
    SchemaSequent { extra: Vec::new(), succedent: Succ::Fixed(e) }
}

fn left(extra: Vec<RExpr>) -> SchemaSequent {
    SchemaSequent { extra, succedent: Succ::Side }
}

pub fn selection_label(sel: &[usize]) -> String {
    sel.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(".")
}

pub fn gen_rules(def: &ConnectiveDef) -> GeneratedRules {
    let f = RExpr::Fml(def.generic_application());
    let name = &def.name;
    let right_rules = def
        .groups
        .iter()
        .enumerate()
        .map(|(i, g)| RuleSchema {
            name: format!("I:{name}:{}", i + 1),
            premises: g.iter().cloned().map(fixed).collect(),
            conclusion: fixed(f.clone()),
        })
        .collect();
    let left_rule = RuleSchema {
        name: format!("II:{name}"),
        premises: def.groups.iter().map(|g| left(g.clone())).collect(),
        conclusion: left(vec![f.clone()]),
    };
    let sels = def.selections();
    let negated = |sel: &[usize]| -> Vec<RExpr> { def.selected(sel).into_iter().map(|s| s.clone().neg()).collect() };
    let right_neg_rules = sels
        .iter()
        .map(|sel| RuleSchema {
            name: format!("III:{name}:{}", selection_label(sel)),
            premises: negated(sel).into_iter().map(fixed).collect(),
            conclusion: fixed(f.clone().neg()),
        })
        .collect();
    let left_neg_rule = RuleSchema {
        name: format!("IV:{name}"),
        premises: sels.iter().map(|sel| left(negated(sel))).collect(),
        conclusion: left(vec![f.neg()]),
    };
    GeneratedRules { right_rules, left_rule, right_neg_rules, left_neg_rule }
}

/// Left-nested conjunction of a non-empty list.
pub fn and_chain(parts: &[Formula]) -> Formula {
    let (first, rest) = parts.split_first().expect("non-empty conjunction");
    rest.iter().fold(first.clone(), |acc, p| Formula::and(acc, p.clone()))
}

/// Left-nested disjunction of a non-empty list.
pub fn or_chain(parts: &[Formula]) -> Formula {
    let (first, rest) = parts.split_first().expect("non-empty disjunction");
    rest.iter().fold(first.clone(), |acc, p| Formula::or(acc, p.clone()))
}

/// The formula translation of an R-expression: `-` becomes `~`, a context
/// a conjunction, `=>` an implication, and `(=> S)` just `S`.
pub fn overline(s: &RExpr) -> Formula {
    match s {
        RExpr::Fml(f) => f.clone(),
        RExpr::Ref(r) => Formula::neg(overline(r.body())),
        RExpr::Seq(ctx, succ) if ctx.is_empty() => overline(succ),
        RExpr::Seq(ctx, succ) => {
            let parts: Vec<Formula> = ctx.iter().map(overline).collect();
            Formula::imp(and_chain(&parts), overline(succ))
        }
    }
}

/// `(S11' & ... ) | ... | (St1' & ...)` over placeholders, `'` the overline.
pub fn defining_formula(def: &ConnectiveDef) -> Formula {
    let disjuncts: Vec<Formula> =
        def.groups.iter().map(|g| and_chain(&g.iter().map(overline).collect::<Vec<_>>())).collect();
    or_chain(&disjuncts)
}

/// The selection disjunction `D⁻`: for each selection, the conjunction of
/// `~S'` over the selected members.
pub fn de_morgan_dual(def: &ConnectiveDef) -> Formula {
    let disjuncts: Vec<Formula> = def
        .selections()
        .iter()
        .map(|sel| {
            let parts: Vec<Formula> = def.selected(sel).into_iter().map(|s| Formula::neg(overline(s))).collect();
            and_chain(&parts)
        })
        .collect();
    or_chain(&disjuncts)
}

/// Replaces placeholders `A1..An` by `args`.
pub fn instantiate(f: &Formula, args: &[Formula]) -> Formula {
    f.substitute(&|name| placeholder_index(name).and_then(|j| args.get(j - 1).cloned()))
}

pub fn instantiate_rexpr(e: &RExpr, args: &[Formula]) -> RExpr {
    e.map_formulas(&|f| instantiate(f, args))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown connective `{0}`")]
pub struct UnknownConnective(pub String);

/// Eliminates defined connectives by their defining formulas.
pub fn star(f: &Formula, env: &Registry) -> Result<Formula, UnknownConnective> {
    Ok(match f {
        Formula::Atom(_) => f.clone(),
        Formula::Neg(a) => Formula::neg(star(a, env)?),
        Formula::And(a, b) => Formula::and(star(a, env)?, star(b, env)?),
        Formula::Or(a, b) => Formula::or(star(a, env)?, star(b, env)?),
        Formula::Imp(a, b) => Formula::imp(star(a, env)?, star(b, env)?),
        Formula::App(name, args) => {
            let def = env.get(name).ok_or_else(|| UnknownConnective(name.clone()))?;
            let args = args.iter().map(|a| star(a, env)).collect::<Result<Vec<_>, _>>()?;
            instantiate(&defining_formula(def), &args)
        }
    })
}

/// `S* = (S')*`.
pub fn star_rexpr(s: &RExpr, env: &Registry) -> Result<Formula, UnknownConnective> {
    star(&overline(s), env)
}

/// The four sequents of `A <=>s B` read as G3C sequents:
/// `A => B`, `B => A`, `~B => ~A`, `~A => ~B`.
pub fn strict_equivalence_sequents(a: &Formula, b: &Formula) -> [crate::g3c::G3Sequent; 4] {
    use crate::g3c::G3Sequent;
    let na = Formula::neg(a.clone());
    let nb = Formula::neg(b.clone());
    [
        G3Sequent::new(vec![a.clone()], b.clone()),
        G3Sequent::new(vec![b.clone()], a.clone()),
        G3Sequent::new(vec![nb.clone()], na.clone()),
        G3Sequent::new(vec![na], nb),
    ]
}

/// Definitions of `~`, `&`, `|`, `->` in the definition language.
pub const STANDARD_DEFINITIONS: &str = "\
connective neg/1 { group { -A1 } }
connective and/2 { group { A1; A2 } }
connective or/2 { group { A1 } group { A2 } }
connective imp/2 { group { (A1 => A2) } }
";

/// Generated rule name and the primitive rule it should reproduce.
const REGENERATED_NAMES: [(&str, &str); 18] = [
    ("I:neg:1", "~R"),
    ("II:neg", "~L"),
    ("III:neg:1", "~R-"),
    ("IV:neg", "~L-"),
    ("I:and:1", "andR"),
    ("II:and", "andL"),
    ("III:and:1", "andR-1"),
    ("III:and:2", "andR-2"),
    ("IV:and", "andL-"),
    ("I:or:1", "orR1"),
    ("I:or:2", "orR2"),
    ("II:or", "orL"),
    ("III:or:1.1", "orR-"),
    ("IV:or", "orL-"),
    ("I:imp:1", "impR"),
    ("II:imp", "impL"),
    ("III:imp:1", "impR-"),
    ("IV:imp", "impL-"),
];

fn to_primitive(f: &Formula) -> Formula {
    match f {
        Formula::App(name, args) => {
            let args: Vec<Formula> = args.iter().map(to_primitive).collect();
            match (name.as_str(), args.as_slice()) {
                ("neg", [a]) => Formula::neg(a.clone()),
                ("and", [a, b]) => Formula::and(a.clone(), b.clone()),
                ("or", [a, b]) => Formula::or(a.clone(), b.clone()),
                ("imp", [a, b]) => Formula::imp(a.clone(), b.clone()),
                _ => Formula::app(name.clone(), args),
            }
        }
        Formula::Neg(a) => Formula::neg(to_primitive(a)),
        Formula::And(a, b) => Formula::and(to_primitive(a), to_primitive(b)),
        Formula::Or(a, b) => Formula::or(to_primitive(a), to_primitive(b)),
        Formula::Imp(a, b) => Formula::imp(to_primitive(a), to_primitive(b)),
        Formula::Atom(_) => f.clone(),
    }
}

fn schema_to_primitive(r: &RuleSchema) -> RuleSchema {
    let conv = |s: &SchemaSequent| SchemaSequent {
        extra: s.extra.iter().map(|e| e.map_formulas(&to_primitive)).collect(),
        succedent: match &s.succedent {
            Succ::Fixed(e) => Succ::Fixed(e.map_formulas(&to_primitive)),
            Succ::Side => Succ::Side,
        },
    };
    RuleSchema {
        name: r.name.clone(),
        premises: r.premises.iter().map(conv).collect(),
        conclusion: conv(&r.conclusion),
    }
}

/// Outcome of regenerating the primitive rules from [`STANDARD_DEFINITIONS`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Regeneration {
    pub matched: Vec<String>,
    pub mismatches: Vec<String>,
}

/// Generates the rules of the standard definitions, reads the defined
/// connectives back as `~`, `&`, `|`, `->` and compares each rule with the
/// hand-written primitive rule it corresponds to.
pub fn regenerate_primitive_rules() -> Regeneration {
    let defs = load_definitions(STANDARD_DEFINITIONS).expect("standard definitions parse");
    let generated: Vec<RuleSchema> =
        defs.iter().flat_map(|d| gen_rules(d).all()).map(|r| schema_to_primitive(&r)).collect();
    let mut out = Regeneration::default();
    for g in &generated {
        let Some((_, prim_name)) = REGENERATED_NAMES.iter().find(|(n, _)| *n == g.name) else {
            out.mismatches.push(format!("{}: no corresponding primitive rule", g.name));
            continue;
        };
        match primitive_rules().iter().find(|p| p.name == *prim_name) {
            Some(p) if p.same_shape(g) => out.matched.push(format!("{} = {}", g.name, p.name)),
            Some(p) => out.mismatches.push(format!("{} differs from {}: {} vs {}", g.name, p.name, g, p)),
            None => out.mismatches.push(format!("{prim_name}: missing from the primitive table")),
        }
    }
    for p in primitive_rules() {
        if !REGENERATED_NAMES.iter().any(|(_, n)| *n == p.name) {
            out.mismatches.push(format!("{}: not produced by any definition", p.name));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_formula_with, parse_rexpr};

    fn f_def() -> ConnectiveDef {
        load_definition("connective F/2 { group { A1 } group { -A2 } }").unwrap()
    }

    #[test]
    fn loads_examples() {
        let and = load_definition("connective and/2 { group { A1; A2 } }").unwrap();
        assert_eq!((and.group_count(), and.groups[0].len()), (1, 2));
        let imp = load_definition("connective imp/2 { group { (A1 => A2) } }").unwrap();
        assert_eq!(imp.groups[0][0].to_string(), "(A1 => A2)");
        let f = f_def();
        assert_eq!((f.group_count(), f.selection_count()), (2, 1));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(load_definition("connective G/1 { group { B } }"), Err(DefError::ForeignAtom { .. })));
        assert!(matches!(load_definition("connective G/1 { group { A2 } }"), Err(DefError::ForeignAtom { .. })));
        assert!(matches!(load_definition("connective G/1 { group { ~A1 } }"), Err(DefError::NotAPlaceholder { .. })));
        assert!(matches!(load_definition("connective G/1 { group { } }"), Err(DefError::EmptyGroup { .. })));
        assert!(matches!(load_definition("connective G/1 { }"), Err(DefError::NoGroups(_))));
        assert!(matches!(load_definition("connective G/0 { group { A1 } }"), Err(DefError::Nullary(_))));
        assert!(matches!(load_definition("connective G/99 { group { A1 } }"), Err(DefError::ArityOverflow { .. })));
        assert!(matches!(
            load_definitions("connective G/1 { group { A1 } } connective G/1 { group { -A1 } }"),
            Err(DefError::Duplicate(_))
        ));
        assert!(matches!(load_definition("connective G/1 { group { A1 ; } }"), Err(DefError::Parse(_))));
    }

    #[test]
    fn canonical_text_round_trips() {
        let r = Registry::from_text(STANDARD_DEFINITIONS).unwrap();
        let again = Registry::from_text(&r.canonical_text()).unwrap();
        assert_eq!(r, again);
        assert_eq!(r.env_hash(), again.env_hash());
        assert_eq!(r.env_hash().len(), 64);
    }

    #[test]
    fn generated_rule_counts_and_selections() {
        let d = load_definition("connective G/3 { group { A1; A2 } group { A3 } }").unwrap();
        let rules = gen_rules(&d);
        assert_eq!(rules.right_rules.len(), 2);
        assert_eq!(rules.right_neg_rules.len(), 2);
        assert_eq!(rules.left_neg_rule.premises.len(), 2);
        assert_eq!(rules.right_neg_rules[0].to_string(), "III:G:1.1: [Δ => -A1] [Δ => -A3] / Δ => -G(A1, A2, A3)");
        assert_eq!(rules.right_neg_rules[1].to_string(), "III:G:2.1: [Δ => -A2] [Δ => -A3] / Δ => -G(A1, A2, A3)");
    }

    #[test]
    fn negation_definition_normalizes() {
        let d = load_definition("connective neg/1 { group { -A1 } }").unwrap();
        let r = gen_rules(&d);
        assert_eq!(r.right_neg_rules[0].to_string(), "III:neg:1: [Δ => A1] / Δ => -neg(A1)");
    }

    #[test]
    fn overline_examples() {
        assert_eq!(overline(&parse_rexpr("-p").unwrap()).to_string(), "~p");
        assert_eq!(overline(&parse_rexpr("(p, q => r)").unwrap()).to_string(), "p & q -> r");
        assert_eq!(overline(&parse_rexpr("(=> p)").unwrap()).to_string(), "p");
    }

    #[test]
    fn defining_formulas() {
        let std = load_definitions(STANDARD_DEFINITIONS).unwrap();
        let shown: Vec<String> = std.iter().map(|d| defining_formula(d).to_string()).collect();
        assert_eq!(shown, ["~A1", "A1 & A2", "A1 | A2", "A1 -> A2"]);
        assert_eq!(defining_formula(&f_def()).to_string(), "A1 | ~A2");
    }

    #[test]
    fn star_examples() {
        let mut env = Registry::default();
        env.insert(f_def()).unwrap();
        let p = parse_formula("p").unwrap();
        assert_eq!(star(&p, &env).unwrap(), p);
        let f = parse_formula("~(p -> q)").unwrap();
        assert_eq!(star(&f, &env).unwrap(), f);
        let app = parse_formula_with("F(p, ~q)", &env).unwrap();
        assert_eq!(star(&app, &env).unwrap().to_string(), "p | ~~q");
        assert!(star(&app, &Registry::default()).is_err());
    }

    #[test]
    fn de_morgan_dual_shape() {
        let d = load_definition("connective G/2 { group { A1; A2 } group { -A1 } }").unwrap();
        assert_eq!(de_morgan_dual(&d).to_string(), "~A1 & ~~A1 | ~A2 & ~~A1");
    }

    #[test]
    fn standard_definitions_regenerate_primitive_rules() {
        let r = regenerate_primitive_rules();
        assert!(r.mismatches.is_empty(), "{:#?}", r.mismatches);
        assert_eq!(r.matched.len(), 18);
    }
}
