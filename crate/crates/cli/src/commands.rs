//! The four commands behind the CLI flags, shared with the test suites.
//!
//! Exit codes are a stable contract: 0 pass, 1 check failed, 2 input error,
//! 3 budget exceeded.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use softtop_core::separation::{
    check_embedding_lemma, random_instance, separates_points, separates_points_from_closed,
    verify_closed_separation_witness, verify_point_separation_witness, SeparationReport,
};
use softtop_core::{Budget, Error, RandomInstance, SoftTopology};

use crate::instance::{
    lemma_instance_file, resolve, resolve_set_ref, CheckDecl, InstanceFile, Resolved,
    TopologyOutcome,
};
use crate::report::{
    axiom_verdict_json, lemma_report_human, lemma_report_json, point_json, set_json,
    topology_json,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_BUDGET_EXCEEDED: i32 = 3;

/// What a command hands back to `main`: the machine report for stdout, the
/// human report for stderr and the process exit code.
#[derive(Debug)]
pub struct CmdOutput {
    pub exit_code: i32,
    pub machine: Value,
    pub human: String,
}

impl CmdOutput {
    fn input_error(message: String) -> CmdOutput {
        CmdOutput {
            exit_code: EXIT_INPUT_ERROR,
            machine: json!({ "ok": false, "error": message }),
            human: format!("input error: {message}\n"),
        }
    }

    fn budget_error(message: String) -> CmdOutput {
        CmdOutput {
            exit_code: EXIT_BUDGET_EXCEEDED,
            machine: json!({ "ok": false, "error": message }),
            human: format!("budget exceeded: {message}\n"),
        }
    }
}

/// Parses `--budget` overrides: comma-separated `key=value` pairs with keys
/// `bits`, `opens`, `factors`, `universe`, `params`, `subbase`.
pub fn parse_budget(spec: &str) -> Result<Budget, String> {
    let mut budget = Budget::default();
    for pair in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("budget entry `{pair}` is not key=value"))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("budget value in `{pair}` is not a number"))?;
        match key.trim() {
            "bits" => budget.max_set_bits = value,
            "opens" => budget.max_opens = value,
            "factors" => budget.max_factors = value,
            "universe" => budget.max_universe = value,
            "params" => budget.max_parameters = value,
            "subbase" => budget.max_subbase = value,
            other => return Err(format!("unknown budget key `{other}`")),
        }
    }
    Ok(budget)
}

/// Validates every declared topology against the axioms.
pub fn cmd_validate(file: &InstanceFile, budget: &Budget) -> CmdOutput {
    let resolved = match resolve(file, budget) {
        Ok(r) => r,
        Err(e) => return CmdOutput::input_error(e),
    };
    let mut reports = serde_json::Map::new();
    let mut human = String::new();
    let mut any_invalid = false;
    let mut any_budget = false;
    for (name, entry) in &resolved.topologies {
        let verdict = match &entry.outcome {
            TopologyOutcome::Valid(t) => {
                human.push_str(&format!("topology `{name}`: ok ({} opens)\n", t.open_count()));
                let mut v = axiom_verdict_json(None);
                v["count"] = json!(t.open_count());
                v
            }
            TopologyOutcome::Invalid(violation) => {
                any_invalid = true;
                human.push_str(&format!("topology `{name}`: VIOLATION - {violation}\n"));
                axiom_verdict_json(Some(violation))
            }
            TopologyOutcome::Budget(e) => {
                any_budget = true;
                human.push_str(&format!("topology `{name}`: budget exceeded - {e}\n"));
                json!({ "ok": false, "error": e.to_string() })
            }
        };
        reports.insert(name.clone(), verdict);
    }
    let ok = !any_invalid && !any_budget;
    let exit_code = if any_budget {
        EXIT_BUDGET_EXCEEDED
    } else if any_invalid {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    CmdOutput {
        exit_code,
        machine: json!({ "ok": ok, "topologies": reports }),
        human,
    }
}

/// Prints the topology generated from the named `generate` declaration.
pub fn cmd_generate(file: &InstanceFile, name: &str, budget: &Budget) -> CmdOutput {
    let resolved = match resolve(file, budget) {
        Ok(r) => r,
        Err(e) => return CmdOutput::input_error(e),
    };
    let Some(entry) = resolved.topologies.get(name) else {
        return CmdOutput::input_error(format!("no topology named `{name}`"));
    };
    if !entry.generated {
        return CmdOutput::input_error(format!(
            "topology `{name}` lists its opens verbatim; --generate needs a `generate` declaration"
        ));
    }
    match &entry.outcome {
        TopologyOutcome::Valid(t) => CmdOutput {
            exit_code: EXIT_OK,
            machine: json!({ "ok": true, "name": name, "topology": topology_json(t) }),
            human: {
                let mut s = format!("generated `{name}`: {} opens\n", t.open_count());
                for open in t.opens() {
                    s.push_str(&format!("  {open}\n"));
                }
                s
            },
        },
        TopologyOutcome::Budget(e) => CmdOutput::budget_error(e.to_string()),
        TopologyOutcome::Invalid(_) => unreachable!("generated topologies satisfy the axioms"),
    }
}

enum Fetch<'a> {
    Found(&'a SoftTopology),
    Abort(CmdOutput),
}

fn fetch_topology<'a>(resolved: &'a Resolved, name: &str) -> Fetch<'a> {
    match resolved.topologies.get(name) {
        None => Fetch::Abort(CmdOutput::input_error(format!("unknown topology `{name}`"))),
        Some(entry) => match &entry.outcome {
            TopologyOutcome::Valid(t) => Fetch::Found(t),
            TopologyOutcome::Invalid(violation) => Fetch::Abort(CmdOutput {
                exit_code: EXIT_CHECK_FAILED,
                machine: json!({
                    "ok": false,
                    "error": format!("topology `{name}` violates the axioms"),
                    "verdict": axiom_verdict_json(Some(violation)),
                }),
                human: format!("topology `{name}`: VIOLATION - {violation}\n"),
            }),
            TopologyOutcome::Budget(e) => Fetch::Abort(CmdOutput::budget_error(e.to_string())),
        },
    }
}

macro_rules! fetch_topology {
    ($resolved:expr, $name:expr) => {
        match fetch_topology($resolved, $name) {
            Fetch::Found(t) => t,
            Fetch::Abort(out) => return out,
        }
    };
}

fn fetch_mapping<'a>(
    resolved: &'a Resolved,
    name: &str,
) -> Result<&'a softtop_core::SoftMapping, CmdOutput> {
    resolved
        .mappings
        .get(name)
        .ok_or_else(|| CmdOutput::input_error(format!("unknown mapping `{name}`")))
}

fn core_error(e: Error) -> CmdOutput {
    match e {
        Error::BudgetExceeded { .. } => CmdOutput::budget_error(e.to_string()),
        _ => CmdOutput::input_error(e.to_string()),
    }
}

fn pass_fail(name: &str, kind: &str, pass: bool, result: Value, human: String) -> CmdOutput {
    CmdOutput {
        exit_code: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
        machine: json!({ "ok": pass, "check": name, "kind": kind, "result": result }),
        human,
    }
}

/// Runs the named check request.
pub fn cmd_check(file: &InstanceFile, name: &str, budget: &Budget) -> CmdOutput {
    let resolved = match resolve(file, budget) {
        Ok(r) => r,
        Err(e) => return CmdOutput::input_error(e),
    };
    let Some(check) = file.checks.get(name) else {
        return CmdOutput::input_error(format!("no check named `{name}`"));
    };
    match check {
        CheckDecl::Closure { set, topology, expect } => {
            let t = fetch_topology!(&resolved, topology);
            let s = match resolve_set_ref(&resolved, t.context(), set) {
                Ok(s) => s,
                Err(e) => return CmdOutput::input_error(e),
            };
            let closure = match t.closure(&s) {
                Ok(c) => c,
                Err(e) => return core_error(e),
            };
            let (pass, expected_json) = match expect {
                None => (true, Value::Null),
                Some(r) => match resolve_set_ref(&resolved, t.context(), r) {
                    Ok(expected) => (expected == closure, set_json(&expected)),
                    Err(e) => return CmdOutput::input_error(e),
                },
            };
            pass_fail(
                name,
                "closure",
                pass,
                json!({ "closure": set_json(&closure), "expect": expected_json }),
                format!("closure check `{name}`: cl {s} = {closure} → {}\n", verdict_word(pass)),
            )
        }
        CheckDecl::Neighbourhood { set, point, topology } => {
            let t = fetch_topology!(&resolved, topology);
            let n = match resolve_set_ref(&resolved, t.context(), set) {
                Ok(s) => s,
                Err(e) => return CmdOutput::input_error(e),
            };
            let pt = match softtop_core::SoftPoint::new(t.context(), &point.element, &point.parameter)
            {
                Ok(p) => p,
                Err(e) => return core_error(e),
            };
            let pass = match t.is_neighbourhood(&n, &pt) {
                Ok(b) => b,
                Err(e) => return core_error(e),
            };
            pass_fail(
                name,
                "neighbourhood",
                pass,
                json!({ "point": point_json(&pt), "set": set_json(&n) }),
                format!("neighbourhood check `{name}`: {n} at {pt} → {}\n", verdict_word(pass)),
            )
        }
        CheckDecl::Continuity { mapping, source_topology, target_topology } => {
            let m = match fetch_mapping(&resolved, mapping) {
                Ok(m) => m,
                Err(out) => return out,
            };
            let t_src = fetch_topology!(&resolved, source_topology);
            let t_tgt = fetch_topology!(&resolved, target_topology);
            let verdict = match m.is_continuous(t_src, t_tgt) {
                Ok(v) => v,
                Err(e) => return core_error(e),
            };
            let witness = verdict.witness.as_ref().map(|w| {
                let verified = t_tgt.contains_open(w)
                    && !t_src.contains_open(&m.preimage(w).expect("contexts checked"));
                json!({ "open": set_json(w), "verified": verified })
            });
            pass_fail(
                name,
                "continuity",
                verdict.ok(),
                json!({ "continuous": verdict.ok(), "witness": witness }),
                format!("continuity check `{name}`: {}\n", verdict_word(verdict.ok())),
            )
        }
        CheckDecl::OpenMap { mapping, source_topology, target_topology } => {
            let m = match fetch_mapping(&resolved, mapping) {
                Ok(m) => m,
                Err(out) => return out,
            };
            let t_src = fetch_topology!(&resolved, source_topology);
            let t_tgt = fetch_topology!(&resolved, target_topology);
            let verdict = match m.is_open_map(t_src, t_tgt) {
                Ok(v) => v,
                Err(e) => return core_error(e),
            };
            let witness = verdict.witness.as_ref().map(|w| {
                let verified = t_src.contains_open(w)
                    && !t_tgt.contains_open(&m.image(w).expect("contexts checked"));
                json!({ "open": set_json(w), "verified": verified })
            });
            pass_fail(
                name,
                "open_map",
                verdict.ok(),
                json!({ "open_map": verdict.ok(), "witness": witness }),
                format!("open-map check `{name}`: {}\n", verdict_word(verdict.ok())),
            )
        }
        CheckDecl::Homeomorphism { mapping, source_topology, target_topology } => {
            let m = match fetch_mapping(&resolved, mapping) {
                Ok(m) => m,
                Err(out) => return out,
            };
            let t_src = fetch_topology!(&resolved, source_topology);
            let t_tgt = fetch_topology!(&resolved, target_topology);
            let verdict = match m.is_homeomorphism(t_src, t_tgt) {
                Ok(v) => v,
                Err(e) => return core_error(e),
            };
            let failure = verdict.failure.as_ref().map(|f| {
                json!({ "leg": f.leg(), "witness": f.witness().map(set_json) })
            });
            pass_fail(
                name,
                "homeomorphism",
                verdict.ok(),
                json!({ "homeomorphism": verdict.ok(), "failure": failure }),
                format!("homeomorphism check `{name}`: {}\n", verdict_word(verdict.ok())),
            )
        }
        CheckDecl::Embedding { mapping, source_topology, target_topology } => {
            let m = match fetch_mapping(&resolved, mapping) {
                Ok(m) => m,
                Err(out) => return out,
            };
            let t_src = fetch_topology!(&resolved, source_topology);
            let t_tgt = fetch_topology!(&resolved, target_topology);
            let verdict = match m.is_embedding(t_src, t_tgt) {
                Ok(v) => v,
                Err(e) => return core_error(e),
            };
            let failure = verdict.failure.as_ref().map(|f| {
                json!({ "leg": f.leg(), "witness": f.witness().map(set_json) })
            });
            pass_fail(
                name,
                "embedding",
                verdict.ok(),
                json!({ "embedding": verdict.ok(), "failure": failure }),
                format!("embedding check `{name}`: {}\n", verdict_word(verdict.ok())),
            )
        }
        CheckDecl::SeparatesPoints { source_context, mappings } => {
            let Some(ctx) = resolved.contexts.get(source_context) else {
                return CmdOutput::input_error(format!("unknown context `{source_context}`"));
            };
            let maps = match collect_mappings(&resolved, mappings) {
                Ok(ms) => ms,
                Err(out) => return out,
            };
            let verdict = match separates_points(ctx, &maps) {
                Ok(v) => v,
                Err(e) => return core_error(e),
            };
            let witness = verdict.witness.as_ref().map(|pair| {
                let verified = verify_point_separation_witness(&maps, pair).unwrap_or(false);
                json!({
                    "left": point_json(&pair.0),
                    "right": point_json(&pair.1),
                    "verified": verified,
                })
            });
            pass_fail(
                name,
                "separates_points",
                verdict.ok(),
                json!({ "separates_points": verdict.ok(), "witness": witness }),
                format!("separates-points check `{name}`: {}\n", verdict_word(verdict.ok())),
            )
        }
        CheckDecl::SeparatesPointsFromClosed { source_topology, family } => {
            let t_src = fetch_topology!(&resolved, source_topology);
            let (maps, spaces) = match collect_family(&resolved, family) {
                Ok(f) => f,
                Err(out) => return out,
            };
            let verdict = match separates_points_from_closed(t_src, &spaces, &maps) {
                Ok(v) => v,
                Err(e) => return core_error(e),
            };
            let witness = verdict.witness.as_ref().map(|w| {
                let verified =
                    verify_closed_separation_witness(t_src, &spaces, &maps, w).unwrap_or(false);
                json!({
                    "closed": set_json(&w.0),
                    "point": point_json(&w.1),
                    "verified": verified,
                })
            });
            pass_fail(
                name,
                "separates_points_from_closed",
                verdict.ok(),
                json!({ "separates_points_from_closed": verdict.ok(), "witness": witness }),
                format!(
                    "separates-points-from-closed check `{name}`: {}\n",
                    verdict_word(verdict.ok())
                ),
            )
        }
        CheckDecl::EmbeddingLemma { source_topology, family } => {
            let t_src = fetch_topology!(&resolved, source_topology);
            let (maps, spaces) = match collect_family(&resolved, family) {
                Ok(f) => f,
                Err(out) => return out,
            };
            let report = match check_embedding_lemma(t_src, &spaces, &maps, budget) {
                Ok(r) => r,
                Err(e) => return core_error(e),
            };
            let pass = !report.is_violation();
            pass_fail(
                name,
                "embedding_lemma",
                pass,
                lemma_report_json(&report, t_src, &spaces, &maps),
                lemma_report_human(name, &report),
            )
        }
    }
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn collect_mappings(
    resolved: &Resolved,
    names: &[String],
) -> Result<Vec<softtop_core::SoftMapping>, CmdOutput> {
    names
        .iter()
        .map(|n| fetch_mapping(resolved, n).cloned())
        .collect()
}

fn collect_family(
    resolved: &Resolved,
    family: &[crate::instance::FamilyMember],
) -> Result<(Vec<softtop_core::SoftMapping>, Vec<SoftTopology>), CmdOutput> {
    let mut maps = Vec::with_capacity(family.len());
    let mut spaces = Vec::with_capacity(family.len());
    for member in family {
        maps.push(fetch_mapping(resolved, &member.mapping)?.clone());
        match fetch_topology(resolved, &member.topology) {
            Fetch::Found(t) => spaces.push(t.clone()),
            Fetch::Abort(out) => return Err(out),
        }
    }
    Ok((maps, spaces))
}

enum FuzzOutcome {
    HypothesesHoldAndEmbed,
    HypothesesFail,
    BudgetExceeded,
    Violation(Box<(RandomInstance, SeparationReport)>),
    Error(String),
}

/// Runs `count` seeded lemma instances in parallel (aggregation stays in
/// seed order) and summarizes. Exit 0 means zero violations.
pub fn cmd_fuzz(seed: u64, count: usize, budget: &Budget) -> CmdOutput {
    if count == 0 {
        return CmdOutput::input_error("--count must be at least 1".into());
    }
    if let Err(e) = budget.validate() {
        return CmdOutput::input_error(e.to_string());
    }
    let started = Instant::now();
    let outcomes: Vec<FuzzOutcome> = (0..count)
        .into_par_iter()
        .map(|i| {
            let instance_seed = seed.wrapping_add(i as u64);
            let instance = match random_instance(instance_seed, budget) {
                Ok(inst) => inst,
                Err(e) => return FuzzOutcome::Error(e.to_string()),
            };
            match check_embedding_lemma(&instance.space, &instance.spaces, &instance.maps, budget)
            {
                Ok(report) if report.is_violation() => {
                    FuzzOutcome::Violation(Box::new((instance, report)))
                }
                Ok(report) if report.hypotheses_hold() => FuzzOutcome::HypothesesHoldAndEmbed,
                Ok(_) => FuzzOutcome::HypothesesFail,
                Err(Error::BudgetExceeded { .. }) => FuzzOutcome::BudgetExceeded,
                Err(e) => FuzzOutcome::Error(e.to_string()),
            }
        })
        .collect();

    let mut hold = 0usize;
    let mut fail = 0usize;
    let mut over_budget = 0usize;
    let mut errors: Vec<String> = Vec::new();
    let mut counterexamples = Vec::new();
    let mut human = String::new();
    for (i, outcome) in outcomes.iter().enumerate() {
        match outcome {
            FuzzOutcome::HypothesesHoldAndEmbed => hold += 1,
            FuzzOutcome::HypothesesFail => fail += 1,
            FuzzOutcome::BudgetExceeded => over_budget += 1,
            FuzzOutcome::Error(e) => errors.push(format!("seed {}: {e}", seed.wrapping_add(i as u64))),
            FuzzOutcome::Violation(boxed) => {
                let (instance, report) = &**boxed;
                let instance_seed = seed.wrapping_add(i as u64);
                let replay = lemma_instance_file(&instance.space, &instance.spaces, &instance.maps);
                human.push_str(&format!(
                    "\n*** LEMMA VIOLATION at seed {instance_seed} ***\n{}replay instance:\n{}\n",
                    lemma_report_human("fuzz", report),
                    serde_json::to_string_pretty(&replay).expect("instance serializes"),
                ));
                counterexamples.push(json!({
                    "seed": instance_seed,
                    "report": lemma_report_json(report, &instance.space, &instance.spaces, &instance.maps),
                    "instance": serde_json::to_value(&replay).expect("instance serializes"),
                }));
            }
        }
    }
    let evaluated = hold + fail;
    let rate = if evaluated > 0 { hold as f64 / evaluated as f64 } else { 0.0 };
    let violations = counterexamples.len();
    human.push_str(&format!(
        "fuzz: {count} instances (seed {seed}) in {:.2}s - {hold} hypotheses hold, {fail} fail, \
         {over_budget} over budget, {violations} violations\n",
        started.elapsed().as_secs_f64(),
    ));
    for e in &errors {
        human.push_str(&format!("error: {e}\n"));
    }
    let exit_code = if violations > 0 {
        EXIT_CHECK_FAILED
    } else if !errors.is_empty() {
        EXIT_INPUT_ERROR
    } else {
        EXIT_OK
    };
    CmdOutput {
        exit_code,
        machine: json!({
            "ok": violations == 0 && errors.is_empty(),
            "seed": seed,
            "count": count,
            "hypotheses_hold": hold,
            "hypotheses_fail": fail,
            "budget_exceeded": over_budget,
            "violations": violations,
            "hypothesis_rate": rate,
            "counterexamples": counterexamples,
            "errors": errors,
        }),
        human,
    }
}
