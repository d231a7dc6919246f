//! Backward proof search for G3C.
//!
//! Search runs over set-contexts of interned formulas. Every rule keeps its
//! premises inside the subformula closure of the goal (plus one `~` layer),
//! so the space of set-sequents is finite; a sequent repeated on the current
//! branch fails, which makes the search terminate. Failures are memoized only
//! when they did not depend on such a repetition below an older ancestor.
//!
//! A proof found over sets is replayed top-down on the real multiset
//! contexts. Replay works on any multiset whose support contains the
//! set-sequent, since every rule shares or extends its context.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use super::{G3Derivation, G3Error, G3Rule, G3Sequent};
use crate::derivation::Derivation;
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_visited: usize,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_visited: 1_000_000, time_limit: Duration::from_secs(30) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(G3Derivation),
    /// The search space was exhausted without a proof.
    Unprovable,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn derivation(&self) -> Option<&G3Derivation> {
        match self {
            SearchOutcome::Found(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Distinct set-sequents expanded.
    pub visited: usize,
    pub elapsed: Duration,
}

/// Decides `goal` in G3C, optionally treating `hyps` as extra axioms.
///
/// With hypotheses, a leaf closes when some hypothesis `Θ => D` has the
/// leaf's succedent `D` and `Θ` contained in the leaf's context, and cuts on
/// formulas occurring in the hypotheses are admitted.
pub fn prove_g3c(goal: &G3Sequent, hyps: &[G3Sequent], budget: &SearchBudget) -> Result<SearchReport, G3Error> {
    for f in goal.formulas().chain(hyps.iter().flat_map(G3Sequent::formulas)) {
        if !f.is_primitive() {
            return Err(G3Error::NotInLanguage(f.clone()));
        }
    }
    // Branches can get deep; run on a thread with a generous stack.
    let report = std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(s, || run(goal, hyps, budget))
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    });
    Ok(report)
}

fn run(goal: &G3Sequent, hyps: &[G3Sequent], budget: &SearchBudget) -> SearchReport {
    let start = Instant::now();
    let mut search = Search::new(hyps, *budget, start);
    let root = search.key_of(&goal.context, &goal.succedent);
    let outcome = match search.prove(&root) {
        Err(Exceeded) => SearchOutcome::BudgetExceeded,
        Ok(Res::Failed(_)) => SearchOutcome::Unprovable,
        Ok(Res::Proved) => SearchOutcome::Found(search.replay(&root, goal.context.clone(), goal.succedent.clone())),
    };
    SearchReport { outcome, visited: search.visited, elapsed: start.elapsed() }
}

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Shape {
    Atom(u32),
    Neg(Id),
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

#[derive(Default)]
struct Arena {
    shapes: Vec<Shape>,
    formulas: Vec<Formula>,
    by_shape: HashMap<Shape, Id>,
    symbols: HashMap<String, u32>,
}

impl Arena {
    fn mk(&mut self, shape: Shape, formula: impl FnOnce(&Self) -> Formula) -> Id {
        if let Some(&id) = self.by_shape.get(&shape) {
            return id;
        }
        let f = formula(self);
        let id = self.shapes.len() as Id;
        self.shapes.push(shape);
        self.formulas.push(f);
        self.by_shape.insert(shape, id);
        id
    }

    fn intern(&mut self, f: &Formula) -> Id {
        let shape = match f {
            Formula::Atom(p) => {
                let n = self.symbols.len() as u32;
                Shape::Atom(*self.symbols.entry(p.clone()).or_insert(n))
            }
            Formula::Neg(a) => Shape::Neg(self.intern(a)),
            Formula::And(a, b) => Shape::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Shape::Or(self.intern(a), self.intern(b)),
            Formula::Imp(a, b) => Shape::Imp(self.intern(a), self.intern(b)),
            Formula::App(..) => unreachable!("checked by prove_g3c"),
        };
        self.mk(shape, |_| f.clone())
    }

    fn neg(&mut self, a: Id) -> Id {
        self.mk(Shape::Neg(a), |ar| Formula::neg(ar.formulas[a as usize].clone()))
    }

    fn shape(&self, id: Id) -> Shape {
        self.shapes[id as usize]
    }

    fn formula(&self, id: Id) -> &Formula {
        &self.formulas[id as usize]
    }
}

/// Set-sequent: sorted, deduplicated context and a succedent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    ctx: Vec<Id>,
    succ: Id,
}

fn insert(ctx: &[Id], extra: &[Id]) -> Vec<Id> {
    let mut v = ctx.to_vec();
    for &x in extra {
        if let Err(pos) = v.binary_search(&x) {
            v.insert(pos, x);
        }
    }
    v
}

fn remove(ctx: &[Id], x: Id) -> Vec<Id> {
    ctx.iter().copied().filter(|&y| y != x).collect()
}

/// How a premise's multiset context arises from the conclusion's.
#[derive(Clone, Debug)]
struct Premise {
    key: Key,
    drop_principal: bool,
    add: Vec<Id>,
}

#[derive(Clone, Debug)]
struct Step {
    rule: G3Rule,
    principal: Option<Id>,
    premises: Vec<Premise>,
}

enum Res {
    Proved,
    /// Failed; the payload is the shallowest stack depth the failure
    /// depended on through a repetition check (`NO_DEP` if none).
    Failed(usize),
}

const NO_DEP: usize = usize::MAX;

struct Exceeded;

struct Search {
    arena: Arena,
    hyps: Vec<(Vec<Id>, Id)>,
    cut_formulas: Vec<Id>,
    proved: HashMap<Key, Step>,
    failed: HashSet<Key>,
    on_stack: HashMap<Key, usize>,
    depth: usize,
    visited: usize,
    budget: SearchBudget,
    start: Instant,
}

impl Search {
    fn new(hyps: &[G3Sequent], budget: SearchBudget, start: Instant) -> Self {
        let mut s = Search {
            arena: Arena::default(),
            hyps: Vec::new(),
            cut_formulas: Vec::new(),
            proved: HashMap::new(),
            failed: HashSet::new(),
            on_stack: HashMap::new(),
            depth: 0,
            visited: 0,
            budget,
            start,
        };
        let mut cuts = Vec::new();
        for h in hyps {
            let key = s.key_of(&h.context, &h.succedent);
            cuts.extend(key.ctx.iter().copied());
            cuts.push(key.succ);
            s.hyps.push((key.ctx, key.succ));
        }
        cuts.sort_unstable();
        cuts.dedup();
        s.cut_formulas = cuts;
        s
    }

    fn key_of(&mut self, ctx: &[Formula], succ: &Formula) -> Key {
        let mut ids: Vec<Id> = ctx.iter().map(|f| self.arena.intern(f)).collect();
        ids.sort_unstable();
        ids.dedup();
        Key { ctx: ids, succ: self.arena.intern(succ) }
    }

    fn tick(&mut self) -> Result<(), Exceeded> {
        self.visited += 1;
        if self.visited > self.budget.max_visited {
            return Err(Exceeded);
        }
        if self.visited.is_multiple_of(1024) && self.start.elapsed() > self.budget.time_limit {
            return Err(Exceeded);
        }
        Ok(())
    }

    fn prove(&mut self, key: &Key) -> Result<Res, Exceeded> {
        if self.proved.contains_key(key) {
            return Ok(Res::Proved);
        }
        if self.failed.contains(key) {
            return Ok(Res::Failed(NO_DEP));
        }
        if let Some(&d) = self.on_stack.get(key) {
            return Ok(Res::Failed(d));
        }
        self.tick()?;
        let my_depth = self.depth;
        self.on_stack.insert(key.clone(), my_depth);
        self.depth += 1;
        let result = self.expand(key);
        self.depth -= 1;
        self.on_stack.remove(key);
        match result? {
            Ok(step) => {
                self.proved.insert(key.clone(), step);
                Ok(Res::Proved)
            }
            Err(dep) if dep >= my_depth => {
                self.failed.insert(key.clone());
                Ok(Res::Failed(NO_DEP))
            }
            Err(dep) => Ok(Res::Failed(dep)),
        }
    }

    /// Tries all premises in order; `Err(dep)` on the first failure.
    fn all(&mut self, step: Step) -> Result<Result<Step, usize>, Exceeded> {
        for p in &step.premises {
            if let Res::Failed(dep) = self.prove(&p.key)? {
                return Ok(Err(dep));
            }
        }
        Ok(Ok(step))
    }

    fn premise(&self, ctx: Vec<Id>, succ: Id, drop_principal: bool, add: Vec<Id>) -> Premise {
        Premise { key: Key { ctx, succ }, drop_principal, add }
    }

    fn expand(&mut self, key: &Key) -> Result<Result<Step, usize>, Exceeded> {
        let ctx = &key.ctx;
        let succ = key.succ;
        let axiom = |rule| Ok(Ok(Step { rule, principal: None, premises: Vec::new() }));

        if self.hyps.iter().any(|(h_ctx, h_succ)| *h_succ == succ && h_ctx.iter().all(|x| ctx.binary_search(x).is_ok()))
        {
            return axiom(G3Rule::Hyp);
        }
        match self.arena.shape(succ) {
            Shape::Atom(_) if ctx.binary_search(&succ).is_ok() => return axiom(G3Rule::Rf),
            Shape::Neg(a) if matches!(self.arena.shape(a), Shape::Atom(_)) && ctx.binary_search(&succ).is_ok() => {
                return axiom(G3Rule::RfNeg)
            }
            _ => {}
        }

        // Invertible rules: the first applicable one is committed to.
        if let Some(step) = self.invertible(key) {
            return self.all(step);
        }

        let mut dep = NO_DEP;
        for step in self.alternatives(key) {
            match self.all(step)? {
                Ok(step) => return Ok(Ok(step)),
                Err(d) => dep = dep.min(d),
            }
        }
        Ok(Err(dep))
    }

    fn invertible(&mut self, key: &Key) -> Option<Step> {
        let ctx = &key.ctx;
        let succ = key.succ;
        let step = |rule, principal, premises| Some(Step { rule, principal, premises });

        // one-premise left rules
        for &f in ctx {
            let gamma = remove(ctx, f);
            match self.arena.shape(f) {
                Shape::And(a, b) => {
                    let p = self.premise(insert(&gamma, &[a, b]), succ, true, vec![a, b]);
                    return step(G3Rule::AndL, Some(f), vec![p]);
                }
                Shape::Neg(x) => match self.arena.shape(x) {
                    Shape::Neg(a) => {
                        let p = self.premise(insert(&gamma, &[a]), succ, true, vec![a]);
                        return step(G3Rule::NegNegL, Some(f), vec![p]);
                    }
                    Shape::Or(a, b) => {
                        let (na, nb) = (self.arena.neg(a), self.arena.neg(b));
                        let p = self.premise(insert(&gamma, &[na, nb]), succ, true, vec![na, nb]);
                        return step(G3Rule::NegOrL, Some(f), vec![p]);
                    }
                    _ => {}
                },
                _ => {}
            }
        }
        // one-premise right rules
        match self.arena.shape(succ) {
            Shape::Imp(a, b) => {
                let p = self.premise(insert(ctx, &[a]), b, false, vec![a]);
                return step(G3Rule::ImpR, None, vec![p]);
            }
            Shape::Neg(x) => match self.arena.shape(x) {
                Shape::Imp(a, b) => {
                    let nb = self.arena.neg(b);
                    let p = self.premise(insert(ctx, &[a]), nb, false, vec![a]);
                    return step(G3Rule::NegImpR, None, vec![p]);
                }
                Shape::Neg(a) => {
                    let p = self.premise(ctx.clone(), a, false, vec![]);
                    return step(G3Rule::NegNegR, None, vec![p]);
                }
                _ => {}
            },
            _ => {}
        }
        // branching left rules
        for &f in ctx {
            let gamma = remove(ctx, f);
            match self.arena.shape(f) {
                Shape::Or(a, b) => {
                    let p1 = self.premise(insert(&gamma, &[a]), succ, true, vec![a]);
                    let p2 = self.premise(insert(&gamma, &[b]), succ, true, vec![b]);
                    return step(G3Rule::OrL, Some(f), vec![p1, p2]);
                }
                Shape::Neg(x) => {
                    if let Shape::And(a, b) = self.arena.shape(x) {
                        let (na, nb) = (self.arena.neg(a), self.arena.neg(b));
                        let p1 = self.premise(insert(&gamma, &[na]), succ, true, vec![na]);
                        let p2 = self.premise(insert(&gamma, &[nb]), succ, true, vec![nb]);
                        return step(G3Rule::NegAndL, Some(f), vec![p1, p2]);
                    }
                }
                _ => {}
            }
        }
        // branching right rules
        match self.arena.shape(succ) {
            Shape::And(a, b) => {
                let p1 = self.premise(ctx.clone(), a, false, vec![]);
                let p2 = self.premise(ctx.clone(), b, false, vec![]);
                step(G3Rule::AndR, None, vec![p1, p2])
            }
            Shape::Neg(x) => match self.arena.shape(x) {
                Shape::Or(a, b) => {
                    let (na, nb) = (self.arena.neg(a), self.arena.neg(b));
                    let p1 = self.premise(ctx.clone(), na, false, vec![]);
                    let p2 = self.premise(ctx.clone(), nb, false, vec![]);
                    step(G3Rule::NegOrR, None, vec![p1, p2])
                }
                _ => None,
            },
            _ => None,
        }
    }

    fn alternatives(&mut self, key: &Key) -> Vec<Step> {
        let ctx = &key.ctx;
        let succ = key.succ;
        let mut out = Vec::new();
        let mk = |rule, principal, premises| Step { rule, principal, premises };

        match self.arena.shape(succ) {
            Shape::Or(a, b) => {
                out.push(mk(G3Rule::OrR1, None, vec![self.premise(ctx.clone(), a, false, vec![])]));
                out.push(mk(G3Rule::OrR2, None, vec![self.premise(ctx.clone(), b, false, vec![])]));
            }
            Shape::Neg(x) => {
                if let Shape::And(a, b) = self.arena.shape(x) {
                    let (na, nb) = (self.arena.neg(a), self.arena.neg(b));
                    out.push(mk(G3Rule::NegAndR1, None, vec![self.premise(ctx.clone(), na, false, vec![])]));
                    out.push(mk(G3Rule::NegAndR2, None, vec![self.premise(ctx.clone(), nb, false, vec![])]));
                }
            }
            _ => {}
        }
        for &f in ctx {
            match self.arena.shape(f) {
                Shape::Imp(a, b) => {
                    let left = self.premise(ctx.clone(), a, false, vec![]);
                    let right = self.premise(insert(&remove(ctx, f), &[b]), succ, true, vec![b]);
                    out.push(mk(G3Rule::ImpL, Some(f), vec![left, right]));
                }
                Shape::Neg(x) => {
                    if let Shape::Imp(a, b) = self.arena.shape(x) {
                        let nb = self.arena.neg(b);
                        let left = self.premise(ctx.clone(), a, false, vec![]);
                        let right = self.premise(insert(&remove(ctx, f), &[nb]), succ, true, vec![nb]);
                        out.push(mk(G3Rule::NegImpL, Some(f), vec![left, right]));
                    }
                }
                _ => {}
            }
        }
        for i in 0..self.cut_formulas.len() {
            let c = self.cut_formulas[i];
            if c == succ || ctx.binary_search(&c).is_ok() {
                continue;
            }
            let left = self.premise(ctx.clone(), c, false, vec![]);
            let right = self.premise(insert(ctx, &[c]), succ, false, vec![c]);
            out.push(mk(G3Rule::AnalyticCut, None, vec![left, right]));
        }
        out
    }

    fn replay(&self, key: &Key, ctx: Vec<Formula>, succ: Formula) -> G3Derivation {
        let step = &self.proved[key];
        let mut premises = Vec::with_capacity(step.premises.len());
        for p in &step.premises {
            let mut pctx = ctx.clone();
            if p.drop_principal {
                let principal = self.arena.formula(step.principal.expect("left rule has a principal"));
                let pos = pctx.iter().position(|f| f == principal).expect("principal occurs in the replayed context");
                pctx.remove(pos);
            }
            pctx.extend(p.add.iter().map(|&id| self.arena.formula(id).clone()));
            let psucc = self.arena.formula(p.key.succ).clone();
            premises.push(self.replay(&p.key, pctx, psucc));
        }
        Derivation::node(step.rule, G3Sequent::new(ctx, succ), premises)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g3c::{check_g3c, check_g3c_with_hypotheses};

    fn prove(s: &str) -> SearchOutcome {
        prove_g3c(&G3Sequent::parse(s).unwrap(), &[], &SearchBudget::default()).unwrap().outcome
    }

    fn assert_found(s: &str) {
        match prove(s) {
            SearchOutcome::Found(d) => {
                assert_eq!(d.conclusion, G3Sequent::parse(s).unwrap());
                check_g3c(&d).unwrap_or_else(|e| panic!("{s}: {e}"));
            }
            other => panic!("{s}: expected a proof, got {other:?}"),
        }
    }

    #[test]
    fn connexive_theses() {
        assert_found("=> ~(~p -> p)");
        assert_found("=> ~(p -> ~p)");
        assert_found("=> (p -> q) -> ~(p -> ~q)");
        assert_found("=> (p -> ~q) -> ~(p -> q)");
    }

    #[test]
    fn symmetry_is_unprovable() {
        assert_eq!(prove("=> (p -> q) -> (q -> p)"), SearchOutcome::Unprovable);
    }

    #[test]
    fn paraconsistent_and_not_n4() {
        assert_eq!(prove("p, ~p => q"), SearchOutcome::Unprovable);
        assert_eq!(prove("~(p -> q) => p"), SearchOutcome::Unprovable);
        assert_found("~(p -> q), p => ~q");
    }

    #[test]
    fn provable_contradiction() {
        assert_found("=> p & ~p -> p");
        assert_found("=> ~(p & ~p -> p)");
    }

    #[test]
    fn loops_through_implication_left() {
        // needs Limp twice on the same principal
        assert_found("p, p -> q, q -> p & r => r | q");
        assert_found("((p -> q) -> p) -> p, p => p");
        assert_eq!(prove("=> ((p -> q) -> p) -> p"), SearchOutcome::Unprovable);
        assert_eq!(prove("=> p | (p -> q)"), SearchOutcome::Unprovable);
        assert_found("=> ~~(p | ~p) -> p | ~p");
    }

    #[test]
    fn duplicated_contexts_replay_exactly() {
        assert_found("p & q, p & q, p => q & p");
        assert_found("p -> q, p -> q, p => q");
    }

    #[test]
    fn hypothesis_mode() {
        let hyp = G3Sequent::parse("p => q").unwrap();
        let goal = G3Sequent::parse("p & r => q & r").unwrap();
        let out = prove_g3c(&goal, std::slice::from_ref(&hyp), &SearchBudget::default()).unwrap();
        let d = out.outcome.derivation().expect("derived rule").clone();
        check_g3c_with_hypotheses(&d, std::slice::from_ref(&hyp)).unwrap();
        assert!(check_g3c(&d).is_err());

        // the hypothesis is needed in the middle of the tree: cut on q
        let hyp = G3Sequent::parse("p => q -> s").unwrap();
        let goal = G3Sequent::parse("p, q => s").unwrap();
        let out = prove_g3c(&goal, std::slice::from_ref(&hyp), &SearchBudget::default()).unwrap();
        let d = out.outcome.derivation().expect("needs a cut").clone();
        check_g3c_with_hypotheses(&d, &[hyp]).unwrap();
    }

    #[test]
    fn budget_is_reported() {
        let goal = G3Sequent::parse("=> (p -> q) -> (q -> p)").unwrap();
        let tiny = SearchBudget { max_visited: 2, time_limit: Duration::from_secs(10) };
        let out = prove_g3c(&goal, &[], &tiny).unwrap();
        assert_eq!(out.outcome, SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn user_connectives_are_refused() {
        let goal = G3Sequent::new(vec![], Formula::app("F", vec![Formula::atom("p")]));
        assert!(matches!(prove_g3c(&goal, &[], &SearchBudget::default()), Err(G3Error::NotInLanguage(_))));
    }
}
