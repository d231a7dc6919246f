//! The acceptance battery: ten end-to-end checks over the whole kernel,
//! with seeded generators for random formulas, R-expressions and
//! connective definitions.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectives::{
    de_morgan_dual, defining_formula, instantiate, regenerate_primitive_rules, strict_equivalence_sequents,
    ConnectiveDef, Registry,
};
use crate::g3c::{check_g3c, prove_g3c, G3Sequent, SearchBudget, SearchOutcome};
use crate::nc::{check_nc, golden, mutations};
use crate::sc_inf::{placeholder, ScDerivation};
use crate::syntax::{parse_formula, parse_rexpr, Formula, RExpr};
use crate::witnesses::{fresh_atoms, g3c_round_trip, thm4_witness, thm5_witness, verify_definition};

/// Seed of every random corpus in the battery.
pub const SEED: u64 = 0x00C0_11E5_1DE5;

pub const THESES: [&str; 4] =
    ["=> ~(~p -> p)", "=> ~(p -> ~p)", "=> (p -> q) -> ~(p -> ~q)", "=> (p -> ~q) -> ~(p -> q)"];
pub const SYMMETRY: &str = "=> (p -> q) -> (q -> p)";
pub const CONTRADICTION: [&str; 2] = ["=> p & ~p -> p", "=> ~(p & ~p -> p)"];
/// Explosion, and N4's first elimination rule for negated implication.
pub const NON_TRIVIAL: [&str; 2] = ["p, ~p => q", "~(p -> q) => p"];

pub const DEFINITION_COUNT: usize = 100;
pub const DE_MORGAN_COUNT: usize = 50;
pub const SYNTAX_COUNT: usize = 1000;
pub const MAX_DEPTH: usize = 6;
pub const MUTATION_COUNT: usize = 20;

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Criterion {
    pub fn line(&self, timings: bool) -> String {
        let status = if self.passed { "pass" } else { "FAIL" };
        let mut s = format!("{:>2} {status}  {:<28} {}", self.id, self.title, self.detail);
        if timings {
            s.push_str(&format!("  [{:.2}s / {}s]", self.elapsed.as_secs_f64(), self.limit.as_secs()));
        }
        s
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line(true))
    }
}

fn run(id: u8, title: &'static str, limit: Duration, body: impl FnOnce() -> Result<String, String>) -> Criterion {
    let start = Instant::now();
    let res = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > limit {
        passed = false;
        detail = format!("{detail}; over the time limit");
    }
    Criterion { id, title, passed, detail, elapsed, limit }
}

fn goal(s: &str) -> G3Sequent {
    G3Sequent::parse(s).expect("battery sequent")
}

/// Proves `s`, checks the proof, and fails unless it is found within `limit`.
fn expect_found(s: &str, budget: &SearchBudget, limit: Duration) -> Result<(), String> {
    let start = Instant::now();
    let r = prove_g3c(&goal(s), &[], budget).map_err(|e| e.to_string())?;
    let d = match r.outcome {
        SearchOutcome::Found(d) => d,
        other => return Err(format!("`{s}`: {}", outcome_word(&other))),
    };
    check_g3c(&d).map_err(|e| format!("`{s}`: emitted derivation rejected: {e}"))?;
    if start.elapsed() > limit {
        return Err(format!("`{s}` took {:?}", start.elapsed()));
    }
    Ok(())
}

fn expect_unprovable(s: &str, budget: &SearchBudget, limit: Duration) -> Result<usize, String> {
    let start = Instant::now();
    let r = prove_g3c(&goal(s), &[], budget).map_err(|e| e.to_string())?;
    if !matches!(r.outcome, SearchOutcome::Unprovable) {
        return Err(format!("`{s}`: {}", outcome_word(&r.outcome)));
    }
    if start.elapsed() > limit {
        return Err(format!("`{s}` took {:?}", start.elapsed()));
    }
    Ok(r.visited)
}

fn outcome_word(o: &SearchOutcome) -> &'static str {
    match o {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::Unprovable => "unprovable",
        SearchOutcome::BudgetExceeded => "budget exceeded",
    }
}

pub fn connexive_theses(budget: &SearchBudget) -> Criterion {
    run(1, "connexive theses", Duration::from_secs(4), || {
        for s in THESES {
            expect_found(s, budget, Duration::from_secs(1))?;
        }
        Ok("AT, AT', BT, BT' found and checked".into())
    })
}

pub fn non_symmetry(budget: &SearchBudget) -> Criterion {
    run(2, "non-symmetry", Duration::from_secs(5), || {
        let visited = expect_unprovable(SYMMETRY, budget, Duration::from_secs(5))?;
        Ok(format!("`{SYMMETRY}` unprovable after {visited} sequents"))
    })
}

pub fn contradictory_non_triviality(budget: &SearchBudget) -> Criterion {
    run(3, "contradictory non-triviality", Duration::from_secs(12), || {
        for s in CONTRADICTION {
            expect_found(s, budget, Duration::from_secs(1))?;
        }
        for s in NON_TRIVIAL {
            expect_unprovable(s, budget, Duration::from_secs(5))?;
        }
        Ok("A and ~A for A = p & ~p -> p; explosion and N4 ~-> elimination unprovable".into())
    })
}

/// Every R-expression over `p`, `q` with at most `leaves` atom occurrences,
/// R-degree at most `degree` and contexts of length at most 2, without
/// double refutation.
pub fn small_rexprs(degree: usize, leaves: usize) -> Vec<RExpr> {
    // by_leaves[k] holds the expressions with exactly k atom occurrences
    let mut by_leaves: Vec<Vec<RExpr>> = vec![Vec::new(); leaves + 1];
    // sequents need their members first, so iterate to a fixed point by degree
    for d in 0..=degree {
        let mut next: Vec<Vec<RExpr>> = vec![Vec::new(); leaves + 1];
        if leaves >= 1 {
            next[1] = vec![RExpr::atom("p"), RExpr::atom("q")];
        }
        if d > 0 {
            for k in 1..=leaves {
                // (Γ => S) with |Γ| <= 2 and members from the previous degree
                for ks in 1..=k {
                    for s in &by_leaves[ks] {
                        let rest = k - ks;
                        if rest == 0 {
                            next[k].push(RExpr::seq(vec![], s.clone()));
                        }
                        for k1 in 1..=rest {
                            let k2 = rest - k1;
                            for g1 in &by_leaves[k1] {
                                if k2 == 0 {
                                    next[k].push(RExpr::seq(vec![g1.clone()], s.clone()));
                                }
                                if k2 >= 1 {
                                    for g2 in &by_leaves[k2] {
                                        next[k].push(RExpr::seq(vec![g1.clone(), g2.clone()], s.clone()));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for bucket in next.iter_mut() {
            let refs: Vec<RExpr> =
                bucket.iter().filter(|e| !matches!(e, RExpr::Ref(_))).map(|e| e.clone().neg()).collect();
            bucket.extend(refs);
            bucket.sort();
            bucket.dedup();
        }
        by_leaves = next;
    }
    by_leaves.into_iter().flatten().filter(|e| e.r_degree() <= degree).collect()
}

pub fn overline_sweep() -> Criterion {
    run(4, "overline witnesses", Duration::from_secs(60), || {
        let exprs = small_rexprs(2, 3);
        if exprs.len() < 200 {
            return Err(format!("only {} expressions enumerated", exprs.len()));
        }
        let env = Registry::default();
        for e in &exprs {
            let w = thm4_witness(e);
            w.check(&env).map_err(|(which, err)| format!("`{e}` {which}: {err}"))?;
        }
        Ok(format!("{} expressions, {} derivations accepted", exprs.len(), 4 * exprs.len()))
    })
}

/// A random definition: arity and group count at most 3, groups of one or
/// two members, members of R-degree at most 1 over the placeholders.
pub fn random_definition(rng: &mut impl Rng, name: String) -> ConnectiveDef {
    let arity = rng.gen_range(1..=3);
    let groups = (0..rng.gen_range(1..=3))
        .map(|_| (0..rng.gen_range(1..=2)).map(|_| random_member(rng, arity)).collect())
        .collect();
    ConnectiveDef { name, arity, groups }
}

fn random_member(rng: &mut impl Rng, arity: usize) -> RExpr {
    let leaf = |rng: &mut dyn rand::RngCore| {
        let e = RExpr::Fml(placeholder(rng.gen_range(1..=arity)));
        if rng.gen_bool(0.3) {
            e.neg()
        } else {
            e
        }
    };
    if rng.gen_bool(0.5) {
        return leaf(rng);
    }
    let ctx = (0..rng.gen_range(0..=2)).map(|_| leaf(rng)).collect();
    let s = RExpr::seq(ctx, leaf(rng));
    if rng.gen_bool(0.3) {
        s.neg()
    } else {
        s
    }
}

/// The seeded definition corpus, named `D1`, `D2`, ...
pub fn definition_corpus(count: usize) -> Vec<ConnectiveDef> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (1..=count).map(|i| random_definition(&mut rng, format!("D{i}"))).collect()
}

pub fn definition_sweep(budget: &SearchBudget) -> Criterion {
    run(5, "defining formulas", Duration::from_secs(300), || {
        let defs = definition_corpus(DEFINITION_COUNT);
        let mut checks = 0;
        for def in &defs {
            let mut env = Registry::default();
            env.insert(def.clone()).map_err(|e| e.to_string())?;
            thm5_witness(def).check(&env).map_err(|(which, err)| format!("{def}: {which}: {err}"))?;
            let report = verify_definition(def, budget);
            if let Some(f) = report.failures().next() {
                return Err(format!("{def}: {}: {}", f.name, f.detail.as_deref().unwrap_or("")));
            }
            checks += report.records.len();
        }
        Ok(format!("{} definitions (seed {SEED:#x}), {checks} checks", defs.len()))
    })
}

pub fn schema_regeneration() -> Criterion {
    run(6, "schema regeneration", Duration::from_secs(1), || {
        let r = regenerate_primitive_rules();
        if !r.mismatches.is_empty() {
            return Err(r.mismatches.join("; "));
        }
        Ok(format!("{} primitive rules reproduced, 0 mismatches", r.matched.len()))
    })
}

/// G3C to SC∞ and back. The definition half overlaps the `round-trip:*`
/// records of criterion 5; it is repeated so the criterion stands alone.
pub fn embedding_round_trip(budget: &SearchBudget) -> Criterion {
    run(7, "G3C to SC-infinity", Duration::from_secs(60), || {
        for s in THESES.iter().chain(&CONTRADICTION) {
            g3c_round_trip(&goal(s), budget).map_err(|e| format!("`{s}`: {e}"))?;
        }
        let defs = definition_corpus(DEFINITION_COUNT);
        for def in &defs {
            let w = thm5_witness(def);
            let mut env = Registry::default();
            env.insert(def.clone()).map_err(|e| e.to_string())?;
            for (which, d) in w.parts() {
                let g = star_end(d, &env)?;
                let r = prove_g3c(&g, &[], budget).map_err(|e| e.to_string())?;
                if !r.outcome.is_found() {
                    return Err(format!("{}: {which}: `{g}` {}", def.name, outcome_word(&r.outcome)));
                }
            }
        }
        Ok(format!("6 proofs embedded; {} witness end sequents proved", 4 * defs.len()))
    })
}

fn star_end(d: &ScDerivation, env: &Registry) -> Result<G3Sequent, String> {
    let st = |e: &RExpr| crate::connectives::star_rexpr(e, env).map_err(|e| e.to_string());
    let c = &d.conclusion;
    Ok(G3Sequent::new(c.context.iter().map(st).collect::<Result<_, _>>()?, st(&c.succedent)?))
}

pub fn natural_deduction(budget: &SearchBudget) -> Criterion {
    run(8, "natural deduction", Duration::from_secs(10), || {
        let mut rejected = 0;
        for d in [golden::contradiction_left(), golden::contradiction_right()] {
            check_nc(&d, &[]).map_err(|e| format!("`{}`: {e}", d.conclusion))?;
            for (what, m) in mutations(&d).into_iter().take(MUTATION_COUNT / 2) {
                if check_nc(&m, &[]).is_ok() {
                    return Err(format!("mutation {what} of `{}` accepted", d.conclusion));
                }
                rejected += 1;
            }
        }
        if rejected < MUTATION_COUNT {
            return Err(format!("only {rejected} mutations"));
        }
        for (name, d) in golden::all() {
            check_nc(&d, &[]).map_err(|e| format!("{name}: {e}"))?;
            let g = G3Sequent::new(vec![], d.conclusion.clone());
            let r = prove_g3c(&g, &[], budget).map_err(|e| e.to_string())?;
            if !r.outcome.is_found() {
                return Err(format!("{name}: G3C does not prove `{g}`"));
            }
        }
        Ok(format!("both trees accepted, {rejected} mutations rejected, theses agree with G3C"))
    })
}

/// A random formula of depth at most `depth` over `p`, `q`, `r` and the
/// connectives in `apps` (name and arity).
pub fn random_formula(rng: &mut impl Rng, depth: usize, apps: &[(&str, usize)]) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::atom(*["p", "q", "r"].choose(rng).unwrap());
    }
    let d = depth - 1;
    let choices = if apps.is_empty() { 4 } else { 5 };
    match rng.gen_range(0..choices) {
        0 => Formula::neg(random_formula(rng, d, apps)),
        1 => Formula::and(random_formula(rng, d, apps), random_formula(rng, d, apps)),
        2 => Formula::or(random_formula(rng, d, apps), random_formula(rng, d, apps)),
        3 => Formula::imp(random_formula(rng, d, apps), random_formula(rng, d, apps)),
        _ => {
            let (name, n) = *apps.choose(rng).unwrap();
            Formula::app(name, (0..n).map(|_| random_formula(rng, d, apps)).collect())
        }
    }
}

/// A random normalized R-expression of depth at most `depth`.
pub fn random_rexpr(rng: &mut impl Rng, depth: usize, apps: &[(&str, usize)]) -> RExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return RExpr::Fml(random_formula(rng, depth.min(2), apps));
    }
    let d = depth - 1;
    if rng.gen_bool(0.3) {
        return random_rexpr(rng, d, apps).neg();
    }
    let ctx = (0..rng.gen_range(0..=3)).map(|_| random_rexpr(rng, d, apps)).collect();
    RExpr::seq(ctx, random_rexpr(rng, d, apps))
}

pub fn syntax_round_trip() -> Criterion {
    run(9, "syntax round trip", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for i in 0..SYNTAX_COUNT {
            if i % 2 == 0 {
                let f = random_formula(&mut rng, MAX_DEPTH, &[]);
                let back = parse_formula(&f.to_string()).map_err(|e| format!("`{f}`: {e}"))?;
                if back != f {
                    return Err(format!("`{f}` reparsed as `{back}`"));
                }
            }
            let e = random_rexpr(&mut rng, MAX_DEPTH, &[]);
            let back = parse_rexpr(&e.to_string()).map_err(|err| format!("`{e}`: {err}"))?;
            if back != e {
                return Err(format!("`{e}` reparsed as `{back}`"));
            }
            if e.clone().neg().neg() != e {
                return Err(format!("refutation is not an involution on `{e}`"));
            }
            if back.r_degree() != e.r_degree() || e.clone().neg().r_degree() != e.r_degree() {
                return Err(format!("R-degree unstable on `{e}`"));
            }
        }
        Ok(format!("{SYNTAX_COUNT} R-expressions and {} formulas (depth <= {MAX_DEPTH})", SYNTAX_COUNT / 2))
    })
}

pub fn de_morgan(budget: &SearchBudget) -> Criterion {
    run(10, "De Morgan duals", Duration::from_secs(120), || {
        let defs = definition_corpus(DEFINITION_COUNT);
        for def in defs.iter().take(DE_MORGAN_COUNT) {
            let args = fresh_atoms(def.arity);
            let d = instantiate(&defining_formula(def), &args);
            let dual = instantiate(&de_morgan_dual(def), &args);
            for s in strict_equivalence_sequents(&Formula::neg(d), &dual) {
                let r = prove_g3c(&s, &[], budget).map_err(|e| e.to_string())?;
                if !r.outcome.is_found() {
                    return Err(format!("{}: `{s}` {}", def.name, outcome_word(&r.outcome)));
                }
            }
        }
        Ok(format!("{DE_MORGAN_COUNT} definitions, {} sequents proved", 4 * DE_MORGAN_COUNT))
    })
}

/// All ten criteria in order.
pub fn run_all(budget: &SearchBudget) -> Vec<Criterion> {
    vec![
        connexive_theses(budget),
        non_symmetry(budget),
        contradictory_non_triviality(budget),
        overline_sweep(),
        definition_sweep(budget),
        schema_regeneration(),
        embedding_round_trip(budget),
        natural_deduction(budget),
        syntax_round_trip(),
        de_morgan(budget),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_large_enough_and_bounded() {
        let e = small_rexprs(2, 3);
        assert!(e.len() >= 200, "{}", e.len());
        assert!(e.iter().all(|x| x.r_degree() <= 2));
        assert!(e.contains(&parse_rexpr("((p => q) => -p)").unwrap()));
        assert!(e.contains(&parse_rexpr("-(p, q => p)").unwrap()));
        assert!(!e.iter().any(|x| matches!(x, RExpr::Ref(b) if matches!(b.body(), RExpr::Ref(_)))));
    }

    #[test]
    fn corpus_is_deterministic_and_in_range() {
        let a = definition_corpus(20);
        assert_eq!(a, definition_corpus(20));
        for d in &a {
            assert!((1..=3).contains(&d.arity) && (1..=3).contains(&d.groups.len()));
            assert!(d.groups.iter().all(|g| (1..=2).contains(&g.len())));
            assert!(d.groups.iter().flatten().all(|s| s.r_degree() <= 1));
            // canonical text reparses to the same definition
            assert_eq!(crate::connectives::load_definition(&d.to_string()).unwrap(), *d);
        }
    }
}
