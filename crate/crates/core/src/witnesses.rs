//! Generators of SC∞ derivations witnessing strict equivalences, and the
//! per-definition verification pipeline.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::json;

use crate::connectives::{
    and_chain, gen_rules, instantiate_rexpr, or_chain, overline, star_rexpr, ConnectiveDef, Registry,
};
use crate::derivation::{Derivation, Rejection};
use crate::g3c::{check_g3c, prove_g3c, G3Sequent, SearchBudget, SearchOutcome};
use crate::sc_inf::{
    apply_builtin, bindings, check_scinf, derive_starred, embed_g3c, permute, rf, weaken_to, RuleSchema, ScDerivation,
    ScRule, Starred,
};
use crate::syntax::{Formula, RExpr, RSequent};

/// Derivations of `S => T`, `T => S`, `-T => -S` and `-S => -T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictEquivWitness {
    pub left: RExpr,
    pub right: RExpr,
    pub fwd: ScDerivation,
    pub bwd: ScDerivation,
    pub fwd_neg: ScDerivation,
    pub bwd_neg: ScDerivation,
}

impl StrictEquivWitness {
    /// The sequents the four derivations must conclude, in field order.
    pub fn end_sequents(left: &RExpr, right: &RExpr) -> [RSequent; 4] {
        [
            RSequent::new(vec![left.clone()], right.clone()),
            RSequent::new(vec![right.clone()], left.clone()),
            RSequent::new(vec![right.clone().neg()], left.clone().neg()),
            RSequent::new(vec![left.clone().neg()], right.clone().neg()),
        ]
    }

    pub fn parts(&self) -> [(&'static str, &ScDerivation); 4] {
        [("fwd", &self.fwd), ("bwd", &self.bwd), ("fwd_neg", &self.fwd_neg), ("bwd_neg", &self.bwd_neg)]
    }

    /// Checks each derivation and its end sequent.
    pub fn check(&self, env: &Registry) -> Result<(), (&'static str, Rejection)> {
        let ends = Self::end_sequents(&self.left, &self.right);
        for ((which, d), end) in self.parts().into_iter().zip(ends) {
            check_part(d, &end, env).map_err(|e| (which, e))?;
        }
        Ok(())
    }
}

fn check_part(d: &ScDerivation, end: &RSequent, env: &Registry) -> Result<(), Rejection> {
    if d.conclusion != *end {
        return Err(Rejection::at_root(format!("concludes `{}`, expected `{end}`", d.conclusion)));
    }
    check_scinf(d, env)
}

fn fml(f: &Formula) -> RExpr {
    RExpr::Fml(f.clone())
}

fn minus(f: &Formula) -> RExpr {
    fml(f).neg()
}

fn plus(base: &[RExpr], extra: &[RExpr]) -> Vec<RExpr> {
    let mut v = base.to_vec();
    v.extend_from_slice(extra);
    v
}

fn no_side() -> RExpr {
    RExpr::atom("_")
}

fn side_of(d: &ScDerivation) -> RExpr {
    d.conclusion.succedent.clone()
}

/// `ctx => A1 & ... & An` from `ctx => Ak` for each `k`.
fn and_right(ctx: &[RExpr], parts: &[Formula], mut ds: Vec<ScDerivation>) -> ScDerivation {
    let n = parts.len();
    if n == 1 {
        return ds.remove(0);
    }
    let last = ds.pop().unwrap();
    let init = and_right(ctx, &parts[..n - 1], ds);
    let args = [and_chain(&parts[..n - 1]), parts[n - 1].clone()];
    apply_builtin("andR", ctx, &no_side(), &args, vec![init, last])
}

/// `prefix, A1 & ... & An => S` from `d`, whose context is a permutation
/// of `prefix, A1, ..., An`.
fn and_left(prefix: &[RExpr], parts: &[Formula], d: ScDerivation) -> ScDerivation {
    let n = parts.len();
    if n == 1 {
        return permute(d, &plus(prefix, &[fml(&parts[0])]));
    }
    let last = fml(&parts[n - 1]);
    let init = and_chain(&parts[..n - 1]);
    let inner = and_left(&plus(prefix, std::slice::from_ref(&last)), &parts[..n - 1], d);
    let inner = permute(inner, &plus(prefix, &[fml(&init), last]));
    let side = side_of(&inner);
    apply_builtin("andL", prefix, &side, &[init, parts[n - 1].clone()], vec![inner])
}

/// `ctx => A1 | ... | An` from `ctx => Ai`.
fn or_right(ctx: &[RExpr], disjuncts: &[Formula], i: usize, d: ScDerivation) -> ScDerivation {
    let n = disjuncts.len();
    if n == 1 {
        return d;
    }
    let args = [or_chain(&disjuncts[..n - 1]), disjuncts[n - 1].clone()];
    if i == n - 1 {
        apply_builtin("orR2", ctx, &no_side(), &args, vec![d])
    } else {
        let inner = or_right(ctx, &disjuncts[..n - 1], i, d);
        apply_builtin("orR1", ctx, &no_side(), &args, vec![inner])
    }
}

/// `prefix, A1 | ... | An => S`; `leaf(i, ctx)` must conclude `ctx => S`.
fn or_left(
    prefix: &[RExpr],
    disjuncts: &[Formula],
    leaf: &mut dyn FnMut(usize, Vec<RExpr>) -> ScDerivation,
) -> ScDerivation {
    let n = disjuncts.len();
    if n == 1 {
        return leaf(0, plus(prefix, &[fml(&disjuncts[0])]));
    }
    let init = or_left(prefix, &disjuncts[..n - 1], leaf);
    let last = leaf(n - 1, plus(prefix, &[fml(&disjuncts[n - 1])]));
    let side = side_of(&init);
    let args = [or_chain(&disjuncts[..n - 1]), disjuncts[n - 1].clone()];
    apply_builtin("orL", prefix, &side, &args, vec![init, last])
}

/// `ctx => -(A1 | ... | An)` from `ctx => -Ai` for each `i`.
fn neg_or_right(ctx: &[RExpr], disjuncts: &[Formula], mut ds: Vec<ScDerivation>) -> ScDerivation {
    let n = disjuncts.len();
    if n == 1 {
        return ds.remove(0);
    }
    let last = ds.pop().unwrap();
    let init = neg_or_right(ctx, &disjuncts[..n - 1], ds);
    let args = [or_chain(&disjuncts[..n - 1]), disjuncts[n - 1].clone()];
    apply_builtin("orR-", ctx, &no_side(), &args, vec![init, last])
}

/// `ctx => -(A1 & ... & An)` from `ctx => -Ak`.
fn neg_and_right(ctx: &[RExpr], parts: &[Formula], k: usize, d: ScDerivation) -> ScDerivation {
    let n = parts.len();
    if n == 1 {
        return d;
    }
    let args = [and_chain(&parts[..n - 1]), parts[n - 1].clone()];
    if k == n - 1 {
        apply_builtin("andR-2", ctx, &no_side(), &args, vec![d])
    } else {
        let inner = neg_and_right(ctx, &parts[..n - 1], k, d);
        apply_builtin("andR-1", ctx, &no_side(), &args, vec![inner])
    }
}

/// `prefix, -(A1 | ... | An) => S` from `d`, whose context is a permutation
/// of `prefix, -A1, ..., -An`.
fn neg_or_left(prefix: &[RExpr], disjuncts: &[Formula], d: ScDerivation) -> ScDerivation {
    let n = disjuncts.len();
    if n == 1 {
        return permute(d, &plus(prefix, &[minus(&disjuncts[0])]));
    }
    let last = minus(&disjuncts[n - 1]);
    let init = or_chain(&disjuncts[..n - 1]);
    let inner = neg_or_left(&plus(prefix, std::slice::from_ref(&last)), &disjuncts[..n - 1], d);
    let inner = permute(inner, &plus(prefix, &[minus(&init), last]));
    let side = side_of(&inner);
    apply_builtin("orL-", prefix, &side, &[init, disjuncts[n - 1].clone()], vec![inner])
}

/// `prefix, -(A1 & ... & An) => S`; `leaf(k, ctx)` must conclude `ctx => S`.
fn neg_and_left(
    prefix: &[RExpr],
    parts: &[Formula],
    leaf: &mut dyn FnMut(usize, Vec<RExpr>) -> ScDerivation,
) -> ScDerivation {
    let n = parts.len();
    if n == 1 {
        return leaf(0, plus(prefix, &[minus(&parts[0])]));
    }
    let init = neg_and_left(prefix, &parts[..n - 1], leaf);
    let last = leaf(n - 1, plus(prefix, &[minus(&parts[n - 1])]));
    let side = side_of(&init);
    let args = [and_chain(&parts[..n - 1]), parts[n - 1].clone()];
    apply_builtin("andL-", prefix, &side, &args, vec![init, last])
}

/// Witness for `S' <=>s S`, with `S'` the overline of `s`, by induction on `s`.
pub fn thm4_witness(s: &RExpr) -> StrictEquivWitness {
    let o = overline(s);
    let left = fml(&o);
    let (fwd, bwd, fwd_neg, bwd_neg) = match s {
        RExpr::Fml(_) => (rf(s.clone()), rf(s.clone()), rf(s.clone().neg()), rf(s.clone().neg())),
        RExpr::Ref(r) => {
            let u = r.body();
            let w = thm4_witness(u);
            let ou = overline(u);
            let arg = [ou];
            (
                apply_builtin("~L", &[], s, &arg, vec![w.bwd_neg]),
                apply_builtin("~R", std::slice::from_ref(s), &no_side(), &arg, vec![w.fwd_neg]),
                apply_builtin("~R-", std::slice::from_ref(u), &no_side(), &arg, vec![w.bwd]),
                apply_builtin("~L-", &[], u, &arg, vec![w.fwd]),
            )
        }
        RExpr::Seq(us, v) if us.is_empty() => {
            let w = thm4_witness(v);
            let ov = fml(&overline(v));
            let node = |rule, ctx, succ, p| Derivation::node(rule, RSequent::new(ctx, succ), vec![p]);
            (
                node(ScRule::RiPlus, vec![ov.clone()], s.clone(), w.fwd),
                node(ScRule::LiPlus, vec![s.clone()], ov.clone(), w.bwd),
                node(ScRule::LiMinus, vec![s.clone().neg()], ov.clone().neg(), w.fwd_neg),
                node(ScRule::RiMinus, vec![ov.clone().neg()], s.clone().neg(), w.bwd_neg),
            )
        }
        RExpr::Seq(us, v) => {
            let ws: Vec<StrictEquivWitness> = us.iter().map(thm4_witness).collect();
            let wv = thm4_witness(v);
            let os: Vec<Formula> = us.iter().map(overline).collect();
            let os_ctx: Vec<RExpr> = os.iter().map(fml).collect();
            let c = and_chain(&os);
            let ov = overline(v);
            let imp = Formula::imp(c.clone(), ov.clone());

            // us => C
            let conj = and_right(us, &os, ws.iter().map(|w| weaken_to(w.bwd.clone(), us)).collect());
            // premises os => u_j of LI+/LI-
            let reach_us = || ws.iter().map(|w| weaken_to(w.fwd.clone(), &os_ctx)).collect::<Vec<_>>();

            let fwd = {
                let tail = weaken_to(wv.fwd.clone(), &plus(us, &[fml(&ov)]));
                let inner = derive_starred(Starred::ImpL, us, &c, &ov, vec![conj.clone(), tail]);
                let inner = permute(inner, &plus(&[fml(&imp)], us));
                Derivation::node(ScRule::RiPlus, RSequent::new(vec![fml(&imp)], s.clone()), vec![inner])
            };
            let bwd = {
                let mut ps = reach_us();
                ps.push(weaken_to(wv.bwd.clone(), &plus(&os_ctx, &[(**v).clone()])));
                let li = Derivation::node(
                    ScRule::LiPlus,
                    RSequent::new(plus(&os_ctx, std::slice::from_ref(s)), fml(&ov)),
                    ps,
                );
                let body = and_left(std::slice::from_ref(s), &os, li);
                derive_starred(Starred::ImpR, std::slice::from_ref(s), &c, &ov, vec![body])
            };
            let fwd_neg = {
                let ms = s.clone().neg();
                let mut ps = reach_us();
                ps.push(weaken_to(wv.fwd_neg.clone(), &plus(&os_ctx, &[(**v).clone().neg()])));
                let li = Derivation::node(
                    ScRule::LiMinus,
                    RSequent::new(plus(&os_ctx, std::slice::from_ref(&ms)), minus(&ov)),
                    ps,
                );
                let body = and_left(std::slice::from_ref(&ms), &os, li);
                derive_starred(Starred::ImpRNeg, &[ms], &c, &ov, vec![body])
            };
            let bwd_neg = {
                let tail = weaken_to(wv.bwd_neg.clone(), &plus(us, &[minus(&ov)]));
                let inner = derive_starred(Starred::ImpLNeg, us, &c, &ov, vec![conj, tail]);
                let inner = permute(inner, &plus(&[minus(&imp)], us));
                Derivation::node(ScRule::RiMinus, RSequent::new(vec![minus(&imp)], s.clone().neg()), vec![inner])
            };
            (fwd, bwd, fwd_neg, bwd_neg)
        }
    };
    StrictEquivWitness { left, right: s.clone(), fwd, bwd, fwd_neg, bwd_neg }
}

/// Fresh atoms `p1..pn`.
pub fn fresh_atoms(n: usize) -> Vec<Formula> {
    (1..=n).map(|i| Formula::atom(format!("p{i}"))).collect()
}

fn rule<'a>(rules: &'a [RuleSchema], name: &str) -> &'a RuleSchema {
    rules.iter().find(|r| r.name == name).expect("generated rule")
}

/// Witness for `F(p1, ..., pn) <=>s D`, `D` the defining formula of `F`
/// instantiated with `p1..pn`.
pub fn thm5_witness(def: &ConnectiveDef) -> StrictEquivWitness {
    let args = fresh_atoms(def.arity);
    let binds = bindings(&args);
    let rules = gen_rules(def).all();
    let name = &def.name;
    let x = def.apply(args.clone());
    let groups: Vec<Vec<RExpr>> =
        def.groups.iter().map(|g| g.iter().map(|s| instantiate_rexpr(s, &args)).collect()).collect();
    let parts: Vec<Vec<Formula>> = groups.iter().map(|g| g.iter().map(overline).collect()).collect();
    let conjs: Vec<Formula> = parts.iter().map(|p| and_chain(p)).collect();
    let d = or_chain(&conjs);
    let (xe, de) = (fml(&x), fml(&d));
    let w4 = |s: &RExpr| thm4_witness(s);

    let fwd = {
        let premises = groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let ds = g.iter().map(|s| weaken_to(w4(s).bwd, g)).collect();
                or_right(g, &conjs, i, and_right(g, &parts[i], ds))
            })
            .collect();
        rule(&rules, &format!("II:{name}")).apply(&[], &de, &binds, premises)
    };

    let bwd = or_left(&[], &conjs, &mut |i, _ctx| {
        let pctx: Vec<RExpr> = parts[i].iter().map(fml).collect();
        let ds = groups[i].iter().map(|s| weaken_to(w4(s).fwd, &pctx)).collect();
        let intro = rule(&rules, &format!("I:{name}:{}", i + 1)).apply(&pctx, &no_side(), &binds, ds);
        and_left(&[], &parts[i], intro)
    });

    let sels = def.selections();
    let bwd_neg = {
        let premises = sels
            .iter()
            .map(|sel| {
                let ctx: Vec<RExpr> = sel.iter().enumerate().map(|(i, &k)| groups[i][k].clone().neg()).collect();
                let ds = sel
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| {
                        let piece = weaken_to(w4(&groups[i][k]).fwd_neg, &ctx);
                        neg_and_right(&ctx, &parts[i], k, piece)
                    })
                    .collect();
                neg_or_right(&ctx, &conjs, ds)
            })
            .collect();
        rule(&rules, &format!("IV:{name}")).apply(&[], &de.clone().neg(), &binds, premises)
    };

    let fwd_neg = {
        let t = groups.len();
        let neg_conjs: Vec<RExpr> = conjs.iter().map(minus).collect();
        // context: chosen, -C_i, ..., -C_t
        fn select(
            i: usize,
            chosen: Vec<RExpr>,
            sel: Vec<usize>,
            t: usize,
            env: &(&[Vec<RExpr>], &[Vec<Formula>], &[RExpr], &[RuleSchema], &str, &crate::sc_inf::Bindings),
        ) -> ScDerivation {
            let (groups, parts, neg_conjs, rules, name, binds) = *env;
            if i == t {
                let ds = sel
                    .iter()
                    .enumerate()
                    .map(|(j, &k)| weaken_to(thm4_witness(&groups[j][k]).bwd_neg, &chosen))
                    .collect();
                let label = crate::connectives::selection_label(&sel);
                return rule(rules, &format!("III:{name}:{label}")).apply(&chosen, &no_side(), binds, ds);
            }
            let rest = &neg_conjs[i + 1..];
            let prefix = plus(&chosen, rest);
            let split = neg_and_left(&prefix, &parts[i], &mut |k, ctx| {
                let mut sel = sel.clone();
                sel.push(k);
                let inner = select(i + 1, plus(&chosen, &[minus(&parts[i][k])]), sel, t, env);
                permute(inner, &ctx)
            });
            let mut target = chosen.clone();
            target.push(neg_conjs[i].clone());
            target.extend_from_slice(rest);
            permute(split, &target)
        }
        let env = (&groups[..], &parts[..], &neg_conjs[..], &rules[..], name.as_str(), &binds);
        let top = select(0, Vec::new(), Vec::new(), t, &env);
        neg_or_left(&[], &conjs, top)
    };

    StrictEquivWitness { left: xe, right: de, fwd, bwd, fwd_neg, bwd_neg }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Counterexample or reason on failure.
    pub detail: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub connective: String,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = if r.passed { "pass" } else { "FAIL" };
            let _ = write!(out, "{status}  {}", r.name);
            if timings {
                let _ = write!(out, "  {}ms", r.millis);
            }
            if let Some(d) = &r.detail {
                let _ = write!(out, "  {d}");
            }
            out.push('\n');
        }
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{verdict}  {} ({} checks)", self.connective, self.records.len());
        out
    }

    pub fn to_json_lines(&self, timings: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mut v = json!({
                "connective": self.connective,
                "name": r.name,
                "status": if r.passed { "pass" } else { "fail" },
            });
            if timings {
                v["millis"] = json!(r.millis as u64);
            }
            if let Some(d) = &r.detail {
                v["detail"] = json!(d);
            }
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

fn timed(name: String, f: impl FnOnce() -> Result<(), String>) -> CheckRecord {
    let start = Instant::now();
    let res = f();
    CheckRecord { name, passed: res.is_ok(), detail: res.err(), millis: start.elapsed().as_millis() }
}

fn star_sequent(s: &RSequent, env: &Registry) -> Result<G3Sequent, String> {
    let st = |e: &RExpr| star_rexpr(e, env).map_err(|e| e.to_string());
    Ok(G3Sequent::new(s.context.iter().map(st).collect::<Result<_, _>>()?, st(&s.succedent)?))
}

/// Checks a generated rule as a derived rule of G3C: instantiated with
/// `p1..pn`, context `d` and side formula `c`, its star-translated
/// conclusion must follow from its star-translated premises.
pub fn check_derived_rule(
    rule: &RuleSchema,
    arity: usize,
    env: &Registry,
    budget: &SearchBudget,
) -> Result<(), String> {
    let binds = bindings(&fresh_atoms(arity));
    let (premises, concl) = rule.instance(&[RExpr::atom("d")], &RExpr::atom("c"), &binds);
    let hyps = premises.iter().map(|p| star_sequent(p, env)).collect::<Result<Vec<_>, _>>()?;
    let goal = star_sequent(&concl, env)?;
    let report = prove_g3c(&goal, &hyps, budget).map_err(|e| e.to_string())?;
    let hyp_text: Vec<String> = hyps.iter().map(|h| format!("[{h}]")).collect();
    match report.outcome {
        SearchOutcome::Found(d) => crate::g3c::check_g3c_with_hypotheses(&d, &hyps)
            .map_err(|e| format!("search returned a rejected derivation: {e}")),
        SearchOutcome::Unprovable => Err(format!("`{goal}` not derivable from {}", hyp_text.join(" "))),
        SearchOutcome::BudgetExceeded => Err(format!("budget exceeded on `{goal}`")),
    }
}

/// Proves `goal` in G3C, embeds the proof into SC∞ and checks it there.
pub fn g3c_round_trip(goal: &G3Sequent, budget: &SearchBudget) -> Result<(), String> {
    let report = prove_g3c(goal, &[], budget).map_err(|e| e.to_string())?;
    let d = match report.outcome {
        SearchOutcome::Found(d) => d,
        SearchOutcome::Unprovable => return Err(format!("`{goal}` is not provable in G3C")),
        SearchOutcome::BudgetExceeded => return Err(format!("budget exceeded on `{goal}`")),
    };
    check_g3c(&d).map_err(|e| e.to_string())?;
    let sc = embed_g3c(&d).map_err(|e| e.to_string())?;
    if sc.conclusion != goal.to_rsequent() {
        return Err("embedding changed the end sequent".into());
    }
    check_scinf(&sc, &Registry::default()).map_err(|e| e.to_string())
}

/// Runs the whole pipeline for one definition: the defining-formula
/// witness, every generated rule as a derived G3C rule, and the G3C round
/// trip of the witness end sequents.
pub fn verify_definition(def: &ConnectiveDef, budget: &SearchBudget) -> VerificationReport {
    let mut env = Registry::default();
    env.insert(def.clone()).expect("validated definition");
    let mut records = Vec::new();

    let start = Instant::now();
    let w = thm5_witness(def);
    let build = start.elapsed().as_millis();
    let ends = StrictEquivWitness::end_sequents(&w.left, &w.right);
    for ((which, d), end) in w.parts().into_iter().zip(&ends) {
        let mut r = timed(format!("witness:{which}"), || check_part(d, end, &env).map_err(|e| e.to_string()));
        r.millis += build / 4;
        records.push(r);
    }

    for rule in gen_rules(def).all() {
        records.push(timed(format!("rule:{}", rule.name), || check_derived_rule(&rule, def.arity, &env, budget)));
    }

    for ((which, _), end) in w.parts().into_iter().zip(&ends) {
        records.push(timed(format!("round-trip:{which}"), || {
            let goal = star_sequent(end, &env)?;
            g3c_round_trip(&goal, budget)
        }));
    }

    VerificationReport { connective: def.name.clone(), records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::{defining_formula, instantiate, load_definition, load_definitions, STANDARD_DEFINITIONS};
    use crate::syntax::parse_rexpr;

    fn check4(s: &str) {
        let e = parse_rexpr(s).unwrap();
        let w = thm4_witness(&e);
        w.check(&Registry::default()).unwrap_or_else(|(which, err)| panic!("{s} {which}: {err}"));
    }

    #[test]
    fn overline_witness_examples() {
        for s in
            ["p", "-p", "(p => q)", "(=> p)", "-(p => q)", "(p, -q => r)", "((p => q) => -(q, p => -p))", "-(=> -p)"]
        {
            check4(s);
        }
        let w = thm4_witness(&parse_rexpr("p").unwrap());
        assert_eq!(w.fwd.size(), 1);
        let w = thm4_witness(&parse_rexpr("-p").unwrap());
        assert_eq!(w.left.to_string(), "~p");
    }

    fn env_of(def: &ConnectiveDef) -> Registry {
        let mut env = Registry::default();
        env.insert(def.clone()).unwrap();
        env
    }

    #[test]
    fn defining_formula_witness_examples() {
        for text in STANDARD_DEFINITIONS.lines().chain([
            "connective F/2 { group { A1 } group { -A2 } }",
            "connective G/3 { group { A1; (A2 => -A3) } group { -(A3 => A1); A2 } group { A3 } }",
            "connective H/1 { group { (=> A1) } }",
        ]) {
            let def = load_definition(text).unwrap();
            let w = thm5_witness(&def);
            w.check(&env_of(&def)).unwrap_or_else(|(which, err)| panic!("{text} {which}: {err}"));
            let args = fresh_atoms(def.arity);
            assert_eq!(w.right, RExpr::Fml(instantiate(&defining_formula(&def), &args)));
        }
    }

    #[test]
    fn verification_passes_for_examples() {
        let budget = SearchBudget::default();
        for def in load_definitions(STANDARD_DEFINITIONS).unwrap() {
            let r = verify_definition(&def, &budget);
            assert!(r.passed(), "{}", r.to_text(false));
        }
        let def = load_definition("connective F/2 { group { A1 } group { -A2 } }").unwrap();
        let r = verify_definition(&def, &budget);
        assert!(r.passed(), "{}", r.to_text(false));
        assert_eq!(r.records.len(), 4 + 5 + 4);
        assert!(r.to_json_lines(false).lines().all(|l| l.contains("\"status\":\"pass\"")));
    }
}
