//! Forward chaining to a fixpoint, verdicts and certificates.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::context::{Context, Goal, Options, Problem};
use super::facts::{Claim, Fact, FactStore, Rule, Subject};
use super::rules::Outcome;
use crate::lattice::combinations;
use crate::param::{parse_rational, Rational};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    OnlyHomotheticallyReducible,
    /// Flat-band factors `λ - r` with multiplicities.
    ReducibleWithFactors(Vec<(Rational, u32)>),
    /// Unmet preconditions, one per line.
    Inconclusive(Vec<String>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Irreducible => "Irreducible",
            Verdict::OnlyHomotheticallyReducible => "OnlyHomotheticallyReducible",
            Verdict::ReducibleWithFactors(_) => "ReducibleWithFactors",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

pub struct Analysis {
    pub context: Context,
    pub store: FactStore,
    pub verdict: Verdict,
}

struct Engine<'a> {
    ctx: &'a Context,
    store: FactStore,
    memo: HashMap<(Rule, Subject, Claim), Outcome>,
    /// Why each still-open target was not derived, by rule.
    blocked: BTreeMap<(Subject, Claim), BTreeMap<String, String>>,
}

impl<'a> Engine<'a> {
    fn attempt(&mut self, rule: Rule, s: Subject, c: Claim) -> bool {
        if self.store.has(&s, c) {
            return false;
        }
        let key = (rule, s, c);
        let outcome = match self.memo.get(&key) {
            Some(o) => o.clone(),
            None => {
                let o = self.ctx.check_rule(&key.0, &key.1, key.2);
                self.memo.insert(key.clone(), o.clone());
                o
            }
        };
        let (rule, s, c) = key;
        let why = match outcome {
            Ok((need, witness)) => {
                let missing: Vec<String> = need
                    .iter()
                    .filter(|(ps, pc)| !self.store.has(ps, *pc))
                    .map(|(ps, pc)| format!("{pc:?}({ps})"))
                    .collect();
                if missing.is_empty() {
                    let ids = need.iter().map(|(ps, pc)| self.store.get(ps, *pc).expect("present").id).collect();
                    self.store.add(s.clone(), c, rule, ids, witness);
                    self.blocked.remove(&(s, c));
                    return true;
                }
                format!("missing {}", missing.join(", "))
            }
            Err(e) => e,
        };
        let label = match &rule {
            Rule::CoprimeSubsets { k } => format!("{} (k = {k})", rule.name()),
            Rule::CoprimeDiv { sigma } => format!("{} (σ = {:?})", rule.name(), sigma.iter().map(|i| i + 1).collect::<Vec<_>>()),
            Rule::FaceToWhole { face } => format!("{} (w = {face:?})", rule.name()),
            _ => rule.name().to_string(),
        };
        self.blocked.entry((s, c)).or_default().insert(label, why);
        false
    }

    fn pass(&mut self) -> bool {
        use Claim::*;
        let ctx = self.ctx;
        let ones = ctx.ones();
        let qq = ctx.problem.q.clone();
        let family = ctx.q_family();
        let faces = ctx.faces.clone();
        let actual = |f: &Option<Vec<i64>>| Subject::Actual { face: f.clone() };
        let reference = |q: &Vec<u64>, f: &Option<Vec<i64>>| Subject::Reference { q: q.clone(), face: f.clone() };
        let mut changed = false;

        for (i, fs) in ctx.axiom_faces.iter().enumerate() {
            for w in fs {
                let claim = ctx.options.axioms[i].claim;
                changed |= self.attempt(Rule::Axiom { index: i }, reference(&ones, &Some(w.clone())), claim);
            }
        }
        let exact = ctx.exact.is_some();
        for f in &faces {
            let rule = if exact {
                Rule::PotentialIndependentExact
            } else if f.is_some() {
                Rule::PotentialIndependentWeights
            } else {
                continue;
            };
            changed |= self.attempt(rule, actual(f), PotentialIndependent);
        }
        let whole = actual(&None);
        let contained = if exact { Rule::NewtonContainedExact } else { Rule::NewtonContainedWeights };
        changed |= self.attempt(contained, whole.clone(), NewtonContained);
        if !ctx.is_fermi() {
            let seed = ctx.options.seed;
            changed |= self.attempt(Rule::NoLambdaFactorModP { seed }, whole.clone(), NoLambdaFactor);
            if exact {
                changed |= self.attempt(Rule::FlatBands, whole.clone(), Reducible);
            }
        }

        let irreducible_refs: Vec<Subject> = self
            .store
            .facts()
            .iter()
            .filter(|f| f.claim == Irreducible && matches!(f.subject, Subject::Reference { .. }))
            .map(|f| f.subject.clone())
            .collect();
        for s in irreducible_refs {
            let Subject::Reference { q: from, face } = &s else { unreachable!() };
            for a in &family {
                if a != from && a.iter().zip(from).all(|(x, y)| y % x == 0) {
                    changed |= self.attempt(Rule::DivisorReduction { from: from.clone() }, reference(a, face), Irreducible);
                }
            }
        }

        for f in &faces {
            for s in [reference(&ones, f), actual(f)] {
                if matches!(s, Subject::Actual { .. }) && !exact {
                    continue;
                }
                changed |= self.attempt(Rule::PyramidGao, s.clone(), Irreducible);
                changed |= self.attempt(Rule::PyramidOhr, s, OnlyHomotheticallyReducible);
            }
        }
        if qq != ones {
            for f in &faces {
                changed |= self.attempt(Rule::CoprimeTerms, reference(&qq, f), Irreducible);
            }
            let coords = ctx.expanded_coords();
            for k in 1..=coords.len() {
                for sub in combinations(coords.len(), k) {
                    let sigma: Vec<usize> = sub.iter().map(|&i| coords[i]).collect();
                    let target = ctx.sigma_q(&sigma);
                    for f in &faces {
                        changed |= self.attempt(Rule::CoprimeDiv { sigma: sigma.clone() }, reference(&target, f), Irreducible);
                    }
                }
            }
            for k in 1..ctx.d {
                for f in &faces {
                    changed |= self.attempt(Rule::CoprimeSubsets { k }, reference(&qq, f), Irreducible);
                }
            }
        }

        for f in &faces {
            for q in &family {
                changed |= self.attempt(Rule::Weakening, reference(q, f), OnlyHomotheticallyReducible);
                if *q != ones {
                    changed |= self.attempt(Rule::OhrExpansion, reference(q, f), OnlyHomotheticallyReducible);
                }
            }
            for c in [Irreducible, OnlyHomotheticallyReducible] {
                changed |= self.attempt(Rule::PotentialTransfer, actual(f), c);
            }
            changed |= self.attempt(Rule::Weakening, actual(f), OnlyHomotheticallyReducible);
        }
        let certified = |st: &FactStore, w: &Vec<i64>| {
            let s = actual(&Some(w.clone()));
            st.has(&s, OnlyHomotheticallyReducible) && st.has(&s, PotentialIndependent)
        };
        let open: Vec<Vec<i64>> = ctx.facets.iter().filter(|w| !certified(&self.store, w)).cloned().collect();
        let skip = open.first().cloned();
        changed |= self.attempt(Rule::PeriodicFacets { skip }, whole.clone(), OnlyHomotheticallyReducible);
        let good: Vec<Vec<i64>> = ctx.facets.iter().filter(|w| certified(&self.store, w)).cloned().collect();
        if !good.is_empty() {
            changed |= self.attempt(Rule::StrongChain { faces: good }, whole.clone(), OnlyHomotheticallyReducible);
        }

        for s in [reference(&ones, &None), whole] {
            for w in faces.iter().flatten() {
                changed |= self.attempt(Rule::FaceToWhole { face: w.clone() }, s.clone(), Irreducible);
            }
        }
        changed
    }
}

/// Runs every rule to a fixpoint and picks the strongest verdict.
pub fn analyze(problem: Problem, options: Options) -> Result<Analysis> {
    let context = Context::new(problem, options)?;
    let mut engine = Engine {
        ctx: &context,
        store: FactStore::default(),
        memo: HashMap::new(),
        blocked: BTreeMap::new(),
    };
    while engine.pass() {}
    let whole = Subject::Actual { face: None };
    let store = engine.store;
    let verdict = if store.has(&whole, Claim::Irreducible) {
        Verdict::Irreducible
    } else if let Some(f) = store.get(&whole, Claim::Reducible) {
        Verdict::ReducibleWithFactors(parse_factors(&f.witness))
    } else if context.options.goal == Goal::OnlyHomotheticallyReducible
        && store.has(&whole, Claim::OnlyHomotheticallyReducible)
    {
        Verdict::OnlyHomotheticallyReducible
    } else {
        // the goal's own blockers, plus every side condition that failed
        // on the way (missing premises are implied by those)
        let whole_open = |s: &Subject, c: Claim| {
            *s == whole && matches!(c, Claim::Irreducible | Claim::OnlyHomotheticallyReducible)
        };
        let mut reasons = Vec::new();
        for ((s, c), by_rule) in &engine.blocked {
            let relevant = match s {
                Subject::Actual { .. } => true,
                Subject::Reference { q, .. } => *q == context.problem.q,
            };
            if !relevant || store.has(s, *c) {
                continue;
            }
            for (rule, why) in by_rule {
                if whole_open(s, *c) || !why.starts_with("missing") {
                    reasons.push(format!("{c:?}({s}) via {rule}: {why}"));
                }
            }
        }
        Verdict::Inconclusive(reasons)
    };
    Ok(Analysis {
        context,
        store,
        verdict,
    })
}

fn parse_factors(w: &Value) -> Vec<(Rational, u32)> {
    w["factors"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|p| {
                    let r = parse_rational(p[0].as_str()?).ok()?;
                    Some((r, p[1].as_u64()? as u32))
                })
                .collect()
        })
        .unwrap_or_default()
}

impl Analysis {
    /// The fact that justifies the verdict, if any.
    pub fn conclusion(&self) -> Option<&Fact> {
        let whole = Subject::Actual { face: None };
        let claim = match self.verdict {
            Verdict::Irreducible => Claim::Irreducible,
            Verdict::OnlyHomotheticallyReducible => Claim::OnlyHomotheticallyReducible,
            Verdict::ReducibleWithFactors(_) => Claim::Reducible,
            Verdict::Inconclusive(_) => return None,
        };
        self.store.get(&whole, claim)
    }

    /// Facts the conclusion depends on, in id order (all facts when
    /// inconclusive).
    pub fn certificate_facts(&self) -> Vec<&Fact> {
        let facts = self.store.facts();
        let Some(top) = self.conclusion() else {
            return facts.iter().collect();
        };
        let mut keep = vec![false; facts.len() + 1];
        let mut stack = vec![top.id];
        while let Some(id) = stack.pop() {
            if !keep[id] {
                keep[id] = true;
                stack.extend(&facts[id - 1].premises);
            }
        }
        facts.iter().filter(|f| keep[f.id]).collect()
    }
}

pub(crate) fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::ReducibleWithFactors(fs) => {
            let list: Vec<Value> = fs.iter().map(|(r, k)| json!([crate::param::format_rational(r), k])).collect();
            json!({ "name": v.name(), "factors": list })
        }
        Verdict::Inconclusive(rs) => json!({ "name": v.name(), "reasons": rs }),
        _ => json!({ "name": v.name() }),
    }
}
