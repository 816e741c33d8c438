//! Certificate JSON and replay.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use super::context::{Context, Goal, Options, Problem};
use super::engine::{verdict_json, Analysis};
use super::facts::{Axiom, Claim, Fact, Subject};
use crate::graph::json as graph_json;
use crate::param::{format_rational, parse_rational, ParamPoly};

fn input_json(ctx: &Context) -> Value {
    let p = &ctx.problem;
    let o = &ctx.options;
    let potential: Option<BTreeMap<&String, String>> =
        p.potential_q.as_ref().map(|m| m.iter().map(|(k, v)| (k, v.to_string())).collect());
    json!({
        "graph": graph_json::to_json(&p.graph),
        "q": p.q,
        "potential": potential,
        "lambda0": p.lambda0.as_ref().map(format_rational),
        "options": {
            "goal": o.goal,
            "div_zero_as_q": o.div_zero_as_q,
            "det_cap": o.det_cap,
            "exact_cap": o.exact_cap,
            "seed": o.seed,
        },
    })
}

impl Analysis {
    /// `{"verdict", "facts", "axioms", "input"}`; `facts` holds the
    /// derivation of the verdict (every fact when inconclusive).
    pub fn certificate(&self) -> Value {
        let facts: Vec<Value> = self.certificate_facts().into_iter().map(Fact::to_json).collect();
        json!({
            "verdict": verdict_json(&self.verdict),
            "facts": facts,
            "axioms": self.context.options.axioms,
            "input": input_json(&self.context),
        })
    }
}

/// Re-checks every fact against `ctx`: ids increase, premises are earlier
/// facts, and each rule's side conditions hold with exactly the premises it
/// needs. The verdict must be backed by a fact.
pub fn replay(ctx: &Context, verdict: &str, facts: &[Fact]) -> Result<(), String> {
    let mut known: BTreeMap<usize, &Fact> = BTreeMap::new();
    let mut claims: BTreeSet<(Subject, Claim)> = BTreeSet::new();
    let mut last = 0;
    for f in facts {
        if f.id <= last {
            return Err(format!("fact {}: ids must increase", f.id));
        }
        last = f.id;
        let mut given = BTreeSet::new();
        for p in &f.premises {
            let pf = known.get(p).ok_or_else(|| format!("fact {}: premise {p} is not an earlier fact", f.id))?;
            given.insert((pf.subject.clone(), pf.claim));
        }
        let (need, _) = ctx
            .check_rule(&f.rule, &f.subject, f.claim)
            .map_err(|e| format!("fact {} ({}): {e}", f.id, f.rule.name()))?;
        let need: BTreeSet<(Subject, Claim)> = need.into_iter().collect();
        if need != given {
            let missing: Vec<String> = need.difference(&given).map(|(s, c)| format!("{c:?}({s})")).collect();
            return Err(format!("fact {} ({}): premises do not match; missing [{}]", f.id, f.rule.name(), missing.join(", ")));
        }
        if f.premises.len() != given.len() || !claims.insert((f.subject.clone(), f.claim)) {
            return Err(format!("fact {}: duplicate premise or claim", f.id));
        }
        known.insert(f.id, f);
    }
    let whole = Subject::Actual { face: None };
    let claim = match verdict {
        "Irreducible" => Some(Claim::Irreducible),
        "OnlyHomotheticallyReducible" => Some(Claim::OnlyHomotheticallyReducible),
        "ReducibleWithFactors" => Some(Claim::Reducible),
        "Inconclusive" => None,
        other => return Err(format!("unknown verdict `{other}`")),
    };
    match claim {
        Some(c) if !claims.contains(&(whole, c)) => Err(format!("no fact supports the verdict {verdict}")),
        _ => Ok(()),
    }
}

/// Rebuilds the problem embedded in a certificate and replays it.
pub fn replay_certificate(cert: &Value) -> Result<(), String> {
    let axioms: Vec<Axiom> = serde_json::from_value(cert["axioms"].clone()).map_err(|e| e.to_string())?;
    let ctx = context_from_input(&cert["input"], axioms)?;
    let facts: Vec<Fact> = serde_json::from_value(cert["facts"].clone()).map_err(|e| e.to_string())?;
    let verdict = cert["verdict"]["name"].as_str().ok_or("missing verdict")?;
    replay(&ctx, verdict, &facts)
}

fn context_from_input(input: &Value, axioms: Vec<Axiom>) -> Result<Context, String> {
    let err = |e: crate::Error| e.to_string();
    let graph = graph_json::from_json(&input["graph"].to_string()).map_err(err)?;
    let q: Vec<u64> = serde_json::from_value(input["q"].clone()).map_err(|e| e.to_string())?;
    let potential_q = match input["potential"].as_object() {
        None => None,
        Some(m) => Some(
            m.iter()
                .map(|(k, v)| {
                    let s = v.as_str().ok_or("potential values are strings")?;
                    Ok((k.clone(), ParamPoly::parse_label(s).map_err(err)?))
                })
                .collect::<Result<HashMap<_, _>, String>>()?,
        ),
    };
    let lambda0 = match input["lambda0"].as_str() {
        None => None,
        Some(s) => Some(parse_rational(s).map_err(err)?),
    };
    let o = &input["options"];
    let cap = |k: &str, d: usize| o[k].as_u64().map_or(d, |x| x as usize);
    let defaults = Options::default();
    let options = Options {
        goal: serde_json::from_value::<Goal>(o["goal"].clone()).unwrap_or_default(),
        axioms,
        div_zero_as_q: o["div_zero_as_q"].as_bool().unwrap_or(false),
        det_cap: cap("det_cap", defaults.det_cap),
        exact_cap: cap("exact_cap", defaults.exact_cap),
        seed: o["seed"].as_u64().unwrap_or(0),
        mode: defaults.mode,
    };
    let problem = Problem {
        graph,
        q,
        potential_q,
        lambda0,
    };
    Context::new(problem, options).map_err(err)
}
