//! The elimination rules. Each rule judges every fixture on its own, so a
//! fixture's verdict does not depend on which other fixtures are present
//! or on the order in which rules run.

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use super::search::search_subgroups;
use super::{kernel_x, Branch, Candidate, Engine, Fixture, KernelInfo, RuleOutcome, Status};
use crate::error::Result;
use crate::permgroup::{binomial, subset_orbits, PermGroup};
use crate::sieve::{is_prime, prime_exclusion_applies, subdesign_feasible_f};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Excluded,
    Survives,
    Unresolved,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Excluded => "excluded",
            Verdict::Survives => "survives",
            Verdict::Unresolved => "unresolved",
        }
    }
}

/// A rule outcome together with the per-fixture verdicts that the
/// pipeline combines across rules.
#[derive(Clone, Debug)]
pub struct RuleResult {
    pub outcome: RuleOutcome,
    /// `d_verdicts[branch][i]` for D fixture `i`; `None` when the rule
    /// says nothing about that fixture in that branch.
    pub d_verdicts: [Vec<Option<Verdict>>; 2],
    pub l_verdicts: Vec<Option<Verdict>>,
}

impl RuleResult {
    fn new(rule_id: &str, cand: &Candidate) -> Self {
        RuleResult {
            outcome: RuleOutcome {
                rule_id: rule_id.to_string(),
                status: Status::Inconclusive,
                evidence: Value::Null,
            },
            d_verdicts: [vec![None; cand.d.fixtures.len()], vec![None; cand.d.fixtures.len()]],
            l_verdicts: vec![None; cand.l.fixtures.len()],
        }
    }

    fn set_d(&mut self, i: usize, branches: &[Branch], v: Verdict) {
        for b in branches {
            self.d_verdicts[b.index()][i] = Some(v);
        }
    }
}

fn divides(p: u64, order: &BigUint) -> bool {
    (order % BigUint::from(p)).is_zero()
}

fn fixture_json(f: &Fixture) -> Value {
    json!({"fixture": f.path, "name": f.name, "order": f.group.order().to_string()})
}

fn with_fields(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

/// Status of a rule from the verdicts it gave over a fixture list.
fn list_status(verdicts: &[Option<Verdict>]) -> Status {
    let judged: Vec<Verdict> = verdicts.iter().flatten().copied().collect();
    if verdicts.is_empty() {
        Status::External
    } else if judged.len() == verdicts.len() && judged.iter().all(|v| *v == Verdict::Excluded) {
        Status::Eliminated
    } else if judged.contains(&Verdict::Unresolved) {
        Status::External
    } else {
        Status::Inconclusive
    }
}

fn names_with(fixtures: &[Fixture], verdicts: &[Option<Verdict>], want: Verdict) -> Vec<String> {
    fixtures
        .iter()
        .zip(verdicts)
        .filter(|(_, v)| **v == Some(want))
        .map(|(f, _)| f.name.clone())
        .collect()
}

/// Primes `p` for which the prime-exclusion hypotheses hold.
pub fn prime_d_primes(cand: &Candidate) -> Vec<u64> {
    let t = &cand.tuple;
    (2..=t.d).filter(|&p| is_prime(p) && prime_exclusion_applies(t, p)).collect()
}

fn prime_json(cand: &Candidate, p: u64) -> Value {
    let t = &cand.tuple;
    json!({"p": p, "d_minus_p": t.d - p, "k_over_ell": cand.s(), "b": cand.b()})
}

fn prime_rule(cand: &Candidate, primes: &[u64], rule_id: &str) -> RuleResult {
    let mut res = RuleResult::new(rule_id, cand);
    let mut rows = Vec::new();
    for (i, f) in cand.d.fixtures.iter().enumerate() {
        // the largest applicable prime dividing |D| is the recorded witness
        let by = primes.iter().rev().copied().find(|&p| divides(p, f.group.order()));
        let v = if by.is_some() { Verdict::Excluded } else { Verdict::Survives };
        res.set_d(i, &Branch::BOTH, v);
        rows.push(with_fields(fixture_json(f), json!({"excluded_by": by})));
    }
    res.outcome.status = if primes.is_empty() && !cand.d.fixtures.is_empty() {
        Status::Inconclusive
    } else {
        list_status(&res.d_verdicts[0])
    };
    let mut ev = json!({
        "primes": primes.iter().map(|&p| prime_json(cand, p)).collect::<Vec<_>>(),
        "fixtures": rows,
    });
    if cand.d.fixtures.is_empty() {
        ev["note"] = json!("no D fixtures supplied");
    }
    res.outcome.evidence = ev;
    res
}

/// Prime exclusion for a single prime: every D fixture of order divisible
/// by `p` is excluded when the hypotheses hold.
pub fn rule_prime_d(cand: &Candidate, p: u64) -> RuleResult {
    let primes: Vec<u64> = if is_prime(p) && prime_exclusion_applies(&cand.tuple, p) {
        vec![p]
    } else {
        Vec::new()
    };
    let mut res = prime_rule(cand, &primes, "prime_D");
    if primes.is_empty() {
        res.outcome.evidence["not_applicable"] = json!(p);
    }
    res
}

/// Prime exclusion over every applicable prime.
pub fn rule_prime_d_auto(cand: &Candidate) -> RuleResult {
    prime_rule(cand, &prime_d_primes(cand), "prime_D")
}

/// Least size of an orbit of the stabilizer of `{alpha, beta}` on the other
/// points, minimised over representative pairs `{0, beta}`.
fn pair_refinement(l: &PermGroup, bound: u64) -> (bool, Value) {
    let betas: Vec<u32> = l
        .stabilizer(0)
        .orbits()
        .into_iter()
        .map(|o| o[0])
        .filter(|&b| b != 0)
        .collect();
    for &beta in &betas {
        let stab = l
            .set_stabilizer(&[0, beta], u64::MAX)
            .expect("unbounded orbit");
        let min = stab
            .orbits()
            .into_iter()
            .filter(|o| !o.contains(&0) && !o.contains(&beta))
            .map(|o| o.len() as u64)
            .min()
            .unwrap_or(0);
        if min == 0 || min > bound {
            return (false, json!({"pairs": betas.len(), "failing_pair": [0, beta], "min_orbit": min}));
        }
    }
    (true, json!({"pairs": betas.len()}))
}

/// Transitivity conditions on `L`: 2-transitive when `ell = 2`; for `ell >= 3`
/// not 3-transitive when `c > 2 + (ell-2) lambda`, and every pair stabilizer
/// has an orbit of size at most `(ell-2) lambda` on the remaining points.
pub fn rule_l_transitivity(cand: &Candidate) -> RuleResult {
    let t = &cand.tuple;
    let mut res = RuleResult::new("L_transitivity", cand);
    let inner = (t.ell.saturating_sub(2)) * t.lambda;
    let bound = 2 + inner;
    let mut rows = Vec::new();
    let mut passes = 0usize;
    for (i, f) in cand.l.fixtures.iter().enumerate() {
        let deg = f.group.transitivity_degree();
        let mut row = with_fields(fixture_json(f), json!({"transitivity": deg}));
        let mut reasons: Vec<&str> = Vec::new();
        if t.ell == 2 {
            if deg < 2 {
                reasons.push("not 2-transitive");
            }
        } else {
            if t.c > bound && deg >= 3 {
                reasons.push("3-transitive with c > 2+(ell-2)lambda");
            }
            let (ok, detail) = pair_refinement(&f.group, inner);
            if ok {
                passes += 1;
            } else {
                reasons.push("pair stabilizer has no orbit of size <= (ell-2)lambda");
            }
            row["refinement"] = detail;
        }
        res.l_verdicts[i] = Some(if reasons.is_empty() {
            Verdict::Survives
        } else {
            Verdict::Excluded
        });
        row["reasons"] = json!(reasons);
        rows.push(row);
    }
    res.outcome.status = list_status(&res.l_verdicts);
    let mut ev = json!({"ell": t.ell, "c": t.c, "fixtures": rows});
    if t.ell >= 3 {
        ev["bound"] = json!(bound);
        ev["refinement_bound"] = json!(inner);
        ev["refinement_passes"] = json!(passes);
    }
    ev["survivors"] = json!(names_with(&cand.l.fixtures, &res.l_verdicts, Verdict::Survives));
    if cand.l.fixtures.is_empty() {
        ev["note"] = json!("no L fixtures supplied");
    }
    res.outcome.evidence = ev;
    res
}

/// Primes the subdesign argument can use: `p | b`, `p > lambda`, `p` not
/// dividing `c`.
pub fn subdesign_primes(cand: &Candidate) -> Vec<u64> {
    let t = &cand.tuple;
    let b = cand.b();
    (t.lambda + 1..=b)
        .filter(|&p| b % p == 0 && is_prime(p) && t.c % p != 0)
        .collect()
}

fn subdesign_rule(cand: &Candidate, primes: &[u64]) -> Result<RuleResult> {
    let mut res = RuleResult::new("subdesign", cand);
    let b = cand.b();
    let mut checks = Vec::new();
    let mut forced = Vec::new();
    for &p in primes {
        let f = subdesign_feasible_f(&cand.tuple, p)?;
        let mut row = json!({"p": p, "feasible_f": f});
        if f.is_empty() {
            row["implication"] = json!(format!("{p} does not divide |K|"));
            if b % p == 0 {
                // p divides b, hence |G| = |K||D|, so p divides |D|
                forced.push(p);
                row["consequence"] = json!(format!("{p} divides |D|"));
            }
        }
        checks.push(row);
    }
    let mut rows = Vec::new();
    for (i, fx) in cand.d.fixtures.iter().enumerate() {
        let missing: Vec<u64> = forced.iter().copied().filter(|&p| !divides(p, fx.group.order())).collect();
        let v = if missing.is_empty() { Verdict::Survives } else { Verdict::Excluded };
        res.set_d(i, &Branch::BOTH, v);
        rows.push(with_fields(fixture_json(fx), json!({"order_lacks": missing})));
    }
    res.outcome.status = if cand.d.fixtures.is_empty() {
        Status::External
    } else if res.d_verdicts[0].iter().all(|v| *v == Some(Verdict::Excluded)) {
        Status::Eliminated
    } else {
        Status::Inconclusive
    };
    res.outcome.evidence = json!({"checks": checks, "fixtures": rows});
    Ok(res)
}

/// Subdesign test for one prime. An empty feasible set proves `p` does not
/// divide `|K|`; with `p | b` every D fixture must then have order
/// divisible by `p`.
pub fn rule_subdesign(cand: &Candidate, p: u64) -> Result<RuleResult> {
    subdesign_rule(cand, &[p])
}

pub fn rule_subdesign_auto(cand: &Candidate) -> Result<RuleResult> {
    subdesign_rule(cand, &subdesign_primes(cand))
}

/// `|g|` is `n!` or `n!/2` for its degree `n`.
fn is_alternating_or_symmetric(g: &PermGroup) -> bool {
    let n = g.degree();
    let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
    let order = g.order();
    n >= 3 && (*order == fact || order * 2u32 == fact)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    /// Index dividing `m`.
    Divides(u64),
    /// Index exactly `m`.
    Exact(u64),
}

impl Target {
    fn m(self) -> u64 {
        match self {
            Target::Divides(m) | Target::Exact(m) => m,
        }
    }

    fn accepts(self, index: u64) -> bool {
        match self {
            Target::Divides(m) => m % index == 0,
            Target::Exact(m) => m == index,
        }
    }

    fn describe(self) -> String {
        match self {
            Target::Divides(m) => format!("divides {m}"),
            Target::Exact(m) => format!("equals {m}"),
        }
    }
}

fn has_orbit_of_size(g: &PermGroup, s: usize) -> bool {
    g.orbits().iter().any(|o| o.len() == s)
}

/// Looks for a subgroup of `g` whose index satisfies `target` and which has
/// an orbit of length `s`.
fn orbit_subgroup(engine: &Engine, key: &str, g: &PermGroup, s: usize, target: Target) -> (Verdict, Value) {
    let d = g.degree() as u64;
    let m = target.m();
    if is_alternating_or_symmetric(g) {
        // the set stabilizer of an s-set has index binomial(d, s) and is
        // transitive on the set
        let c = binomial(d, s as u64).unwrap_or(u128::MAX);
        if c == 0 || m as u128 % c != 0 {
            return (
                Verdict::Excluded,
                json!({"method": "alternating_shortcut", "binomial": c.to_string(), "m": m}),
            );
        }
        if let Target::Divides(_) = target {
            return (
                Verdict::Survives,
                json!({"method": "alternating_shortcut", "binomial": c.to_string(), "witness": "set stabilizer"}),
            );
        }
    }
    if let Some(lattice) = engine.lattice(key, g) {
        let found: Vec<Value> = lattice
            .classes()
            .iter()
            .filter(|c| target.accepts(c.index()))
            .filter(|c| has_orbit_of_size(c.representative(), s))
            .map(|c| json!({"order": c.order(), "index": c.index(), "orbit_lengths": c.representative().orbit_lengths()}))
            .collect();
        let classes = lattice.classes().len();
        return if found.is_empty() {
            (Verdict::Excluded, json!({"method": "lattice", "classes": classes}))
        } else {
            (Verdict::Survives, json!({"method": "lattice", "classes": classes, "witnesses": found}))
        };
    }
    match subset_orbits(g, s, engine.config.max_subsets) {
        Ok(orbits) => subset_orbit_search(engine, key, g, &orbits, target),
        Err(_) => (
            Verdict::Unresolved,
            json!({
                "method": "none",
                "reason": format!(
                    "order exceeds max_enum_order={} and binomial({d},{s}) exceeds max_subsets={}",
                    engine.config.max_enum_order, engine.config.max_subsets
                ),
            }),
        ),
    }
}

/// A subgroup with an orbit `S` lies in the set stabilizer `G_S`, whose
/// index is the length of the orbit of `S`; search inside each `G_S`.
fn subset_orbit_search(
    engine: &Engine,
    key: &str,
    g: &PermGroup,
    orbits: &[(Vec<u32>, u64)],
    target: Target,
) -> (Verdict, Value) {
    let m = target.m();
    let lengths: Vec<u64> = orbits.iter().map(|(_, l)| *l).collect();
    let mut checked = Vec::new();
    let mut unresolved = false;
    for (set, len) in orbits.iter().filter(|(_, l)| m % l == 0) {
        let stab = g.set_stabilizer(set, *len).expect("orbit length is known");
        let transitive_on_set = stab.orbit(set[0]).len() == set.len();
        if transitive_on_set && target.accepts(*len) {
            return (
                Verdict::Survives,
                json!({"method": "subset_orbits", "witness": {"set": set, "orbit_length": len, "subgroup": "set stabilizer"}}),
            );
        }
        let skey = format!("{key}#set{set:?}");
        match engine.lattice(&skey, &stab) {
            Some(lattice) => {
                let hit = lattice.classes().iter().find(|c| {
                    let x = c.representative();
                    target.accepts(len * c.index()) && x.orbit(set[0]).len() == set.len()
                });
                if let Some(c) = hit {
                    return (
                        Verdict::Survives,
                        json!({"method": "subset_orbits", "witness": {"set": set, "orbit_length": len, "order": c.order(), "index": len * c.index()}}),
                    );
                }
                checked.push(json!({"set": set, "orbit_length": len, "stabilizer_order": stab.order().to_string()}));
            }
            None => {
                unresolved = true;
                checked.push(json!({"set": set, "orbit_length": len, "stabilizer_order": stab.order().to_string(), "unresolved": true}));
            }
        }
    }
    let mut distinct = lengths.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let ev = json!({"method": "subset_orbits", "orbit_lengths": distinct, "orbits": lengths.len(), "dividing": checked});
    if unresolved {
        (Verdict::Unresolved, ev)
    } else {
        (Verdict::Excluded, ev)
    }
}

/// `K = 1`: `G` is `D`, so `bk` divides `|D|`, some subgroup of index
/// exactly `b` has an orbit of length `k/ell` on classes, and the class
/// stabilizer has a subgroup of index `c` (a point stabilizer).
fn trivial_kernel_verdict(engine: &Engine, cand: &Candidate, f: &Fixture) -> (Verdict, Value) {
    let t = &cand.tuple;
    let b = cand.b();
    let g = &f.group;
    let flags = BigUint::from(b) * BigUint::from(t.k);
    if !(g.order() % &flags).is_zero() {
        return (Verdict::Excluded, json!({"check": "flags", "bk": flags.to_string()}));
    }
    let (v, orbit) = orbit_subgroup(engine, &f.path, g, cand.s() as usize, Target::Exact(b));
    let orbit = with_fields(json!({"index": Target::Exact(b).describe()}), orbit);
    if v == Verdict::Excluded {
        return (v, json!({"check": "orbit", "orbit": orbit}));
    }
    let d0 = g.stabilizer(0);
    let stab = |classes: Value| json!({"order": d0.order().to_string(), "index": t.c, "classes": classes});
    if !divides(t.c, d0.order()) {
        return (Verdict::Excluded, json!({"check": "class_stabilizer", "orbit": orbit, "class_stabilizer": stab(Value::Null)}));
    }
    match engine.lattice(&format!("{}#stab0", f.path), &d0) {
        Some(l) if l.classes_of_index(t.c).is_empty() => (
            Verdict::Excluded,
            json!({"check": "class_stabilizer", "orbit": orbit, "class_stabilizer": stab(json!(l.classes().len()))}),
        ),
        Some(l) => (v, json!({"check": "orbit", "orbit": orbit, "class_stabilizer": stab(json!(l.classes().len()))})),
        None if v == Verdict::Survives => (
            Verdict::Unresolved,
            json!({"check": "class_stabilizer", "orbit": orbit, "class_stabilizer": format!("order {} exceeds max_enum_order", d0.order())}),
        ),
        None => (v, json!({"check": "orbit", "orbit": orbit})),
    }
}

/// Admissible index bound `b/x` for the `K != 1` branch, with its basis.
fn nontrivial_kernel_bound(cand: &Candidate) -> (Option<u64>, Value) {
    let t = &cand.tuple;
    let b = cand.b();
    let (c0, basis) = match &cand.kernel {
        KernelInfo::Nontrivial { c0, note } => (Some(*c0), note.clone()),
        _ if !cand.l.fixtures.is_empty() && cand.l.fixtures.iter().all(|f| f.group.is_primitive().unwrap_or(false)) => {
            (Some(t.c), "c0 = c: every L fixture is primitive".to_string())
        }
        _ => (None, "c0 unknown: index bounded by b only".to_string()),
    };
    match c0 {
        Some(c0) => {
            let x = kernel_x(c0, t.ell);
            if b % x != 0 {
                (None, json!({"c0": c0, "x": x, "basis": basis, "closed": "x does not divide b"}))
            } else {
                (Some(b / x), json!({"c0": c0, "x": x, "m": b / x, "basis": basis}))
            }
        }
        None => (Some(b), json!({"x": 1, "m": b, "basis": basis})),
    }
}

/// Block-stabilizer orbit condition on classes, per kernel branch.
pub fn rule_db_orbit(engine: &Engine, cand: &Candidate) -> RuleResult {
    let mut res = RuleResult::new("DB_orbit", cand);
    let s = cand.s() as usize;
    let mut branches = serde_json::Map::new();
    let mut statuses = Vec::new();
    for branch in Branch::BOTH {
        if cand.kernel.excludes() == Some(branch) {
            branches.insert(
                branch.label().into(),
                json!({"closed_by": cand.kernel.note().unwrap_or_default()}),
            );
            continue;
        }
        let mut rows = Vec::new();
        let mut info = json!({});
        let bound = match branch {
            Branch::Trivial => {
                info["index"] = json!(Target::Exact(cand.b()).describe());
                None
            }
            Branch::Nontrivial => {
                let (m, detail) = nontrivial_kernel_bound(cand);
                info = detail;
                Some(m)
            }
        };
        for (i, f) in cand.d.fixtures.iter().enumerate() {
            let (v, detail) = match bound {
                None => trivial_kernel_verdict(engine, cand, f),
                Some(None) => (Verdict::Excluded, json!({"check": "kernel", "reason": "x does not divide b"})),
                Some(Some(m)) => orbit_subgroup(engine, &f.path, &f.group, s, Target::Divides(m)),
            };
            res.set_d(i, &[branch], v);
            rows.push(with_fields(fixture_json(f), with_fields(json!({"verdict": v.label()}), detail)));
        }
        let st = list_status(&res.d_verdicts[branch.index()]);
        statuses.push(st);
        info["fixtures"] = json!(rows);
        info["status"] = json!(st);
        info["survivors"] = json!(names_with(&cand.d.fixtures, &res.d_verdicts[branch.index()], Verdict::Survives));
        branches.insert(branch.label().into(), info);
    }
    res.outcome.status = combine(&statuses);
    res.outcome.evidence = json!({"s": s, "b": cand.b(), "branches": branches});
    res
}

fn combine(statuses: &[Status]) -> Status {
    if statuses.iter().all(|s| *s == Status::Eliminated) {
        Status::Eliminated
    } else if statuses.contains(&Status::External) {
        Status::External
    } else {
        Status::Inconclusive
    }
}

/// `K = 1` search: `G = D` acts on the cosets of an index-`c` subgroup `A`
/// of the class stabilizer; every length-`k` orbit of every index-`b`
/// subgroup is tested as a base block.
fn search_fixture(engine: &Engine, cand: &Candidate, f: &Fixture) -> (Verdict, Value) {
    let t = &cand.tuple;
    let b = cand.b();
    let g = &f.group;
    let flags = BigUint::from(b) * BigUint::from(t.k);
    if !(g.order() % &flags).is_zero() {
        return (Verdict::Excluded, json!({"check": "flags", "bk": flags.to_string()}));
    }
    let d0 = g.stabilizer(0);
    let (Some(lat), Some(lat0)) = (engine.lattice(&f.path, g), engine.lattice(&format!("{}#stab0", f.path), &d0)) else {
        return (
            Verdict::Unresolved,
            json!({"reason": format!("order exceeds max_enum_order={}", engine.config.max_enum_order)}),
        );
    };
    if t.v > engine.config.max_action_degree {
        return (
            Verdict::Unresolved,
            json!({"reason": format!("v exceeds max_action_degree={}", engine.config.max_action_degree)}),
        );
    }
    let block_classes = lat.classes_of_index(b);
    let mut actions = Vec::new();
    let mut designs = 0usize;
    for a in lat0.classes_of_index(t.c) {
        let act = g
            .coset_action(a.representative(), engine.config.max_action_degree)
            .expect("degree checked");
        let gv = act.group();
        let images: Vec<PermGroup> = block_classes
            .iter()
            .map(|h| act.image_of_subgroup(h.representative()).expect("subgroup of g"))
            .collect();
        let found = search_subgroups(gv, images.iter(), t.k as usize, t.lambda as usize, b)
            .expect("transitive coset action");
        designs += found.designs.len();
        actions.push(json!({
            "point_stabilizer_order": a.order(),
            "degree": gv.degree(),
            "block_stabilizer_classes": found.classes,
            "orbits_tested": found.orbits_tested.len(),
            "designs": found.designs.len(),
        }));
    }
    let ev = json!({"class_stabilizer_order": d0.order().to_string(), "actions": actions});
    if designs > 0 {
        (Verdict::Survives, ev)
    } else {
        (Verdict::Excluded, ev)
    }
}

pub fn rule_searches(engine: &Engine, cand: &Candidate) -> RuleResult {
    let mut res = RuleResult::new("searches", cand);
    if cand.kernel.excludes() == Some(Branch::Trivial) {
        res.outcome.status = Status::Inconclusive;
        res.outcome.evidence = json!({"branch": "K=1", "skipped": cand.kernel.note().unwrap_or_default()});
        return res;
    }
    let mut rows = Vec::new();
    for (i, f) in cand.d.fixtures.iter().enumerate() {
        let (v, detail) = search_fixture(engine, cand, f);
        res.set_d(i, &[Branch::Trivial], v);
        rows.push(with_fields(fixture_json(f), with_fields(json!({"verdict": v.label()}), detail)));
    }
    res.outcome.status = list_status(&res.d_verdicts[Branch::Trivial.index()]);
    res.outcome.evidence = json!({
        "branch": "K=1",
        "fixtures": rows,
        "survivors": names_with(&cand.d.fixtures, &res.d_verdicts[Branch::Trivial.index()], Verdict::Survives),
    });
    res
}
