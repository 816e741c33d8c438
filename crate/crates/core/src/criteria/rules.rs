//! Preconditions of every rule. The same check drives forward chaining and
//! certificate replay: it recomputes the side conditions and lists the
//! premises a fact needs.

use serde_json::{json, Value};

use super::context::Context;
use super::div::div_of_points;
use super::facts::{Claim, Rule, Subject};
use super::flat::flat_bands;
use super::lambda_factor::no_lambda_factor;
use crate::lattice::{combinations, gcd, gcd_all, to_i128};
use crate::param::format_rational;
use crate::polytope::{Face, IntegralPolytope};
use crate::LaurentPoly;

/// Premises and a witness, or the reason the rule does not apply.
pub type Outcome = std::result::Result<(Vec<(Subject, Claim)>, Value), String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn show(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", s.join(","))
}

fn min_lambda(f: &LaurentPoly) -> u32 {
    f.terms().map(|(e, _)| e.lambda).min().unwrap_or(0)
}

impl Context {
    /// `σ ⊙ Q`: `q_i` on `σ`, 1 elsewhere.
    pub fn sigma_q(&self, sigma: &[usize]) -> Vec<u64> {
        (0..self.d)
            .map(|i| if sigma.contains(&i) { self.problem.q[i] } else { 1 })
            .collect()
    }

    /// Coordinates with `q_i > 1`.
    pub fn expanded_coords(&self) -> Vec<usize> {
        (0..self.d).filter(|&i| self.problem.q[i] > 1).collect()
    }

    /// The distinct `σ ⊙ Q`, by `|σ|` then lexicographically.
    pub fn q_family(&self) -> Vec<Vec<u64>> {
        let coords = self.expanded_coords();
        let mut out = Vec::new();
        for k in 0..=coords.len() {
            for c in combinations(coords.len(), k) {
                let sigma: Vec<usize> = c.iter().map(|&i| coords[i]).collect();
                out.push(self.sigma_q(&sigma));
            }
        }
        out
    }

    fn exact_poly(&self, s: &Subject) -> std::result::Result<LaurentPoly, String> {
        let r = match s {
            Subject::Reference { q, face } if *q == self.ones() => self.reference_face(face.as_deref()),
            Subject::Reference { .. } => return Err("no exact polynomial for an expanded reference".into()),
            Subject::Actual { face } => self
                .actual_face(face.as_deref())
                .ok_or_else(|| format!("D_Q not expanded (|Q|m = {} > {})", self.qe.size(), self.options.exact_cap))?,
        };
        r.map_err(|e| e.to_string())
    }

    fn face_dim(&self, w: &[i64]) -> i64 {
        self.newt.face_exposed(w).map_or(-1, |f| f.dim)
    }

    fn facet_objects(&self, ws: &[Vec<i64>]) -> Vec<Face> {
        self.newt
            .facets()
            .iter()
            .filter(|f| ws.contains(&f.normal))
            .cloned()
            .collect()
    }

    /// Premises shared by the rules concluding OHR of `D_Q` from facets.
    fn facet_premises(&self, ws: &[Vec<i64>]) -> Vec<(Subject, Claim)> {
        let mut need = Vec::new();
        for w in ws {
            let s = Subject::Actual { face: Some(w.clone()) };
            need.push((s.clone(), Claim::OnlyHomotheticallyReducible));
            need.push((s, Claim::PotentialIndependent));
        }
        let whole = Subject::Actual { face: None };
        need.push((whole.clone(), Claim::NewtonContained));
        if !self.is_fermi() {
            // chains of faces say nothing about factors in λ alone
            need.push((whole, Claim::NoLambdaFactor));
        }
        need
    }

    pub fn check_rule(&self, rule: &Rule, s: &Subject, c: Claim) -> Outcome {
        let ones = self.ones();
        let qq = self.problem.q.clone();
        let want = |claim: Claim| ensure(c == claim, || format!("{} cannot conclude {c:?}", rule.name()));
        let whole = |s: &Subject| ensure(s.face().is_none(), || "applies to whole polynomials".into());
        match rule {
            Rule::Axiom { index } => {
                let a = self.options.axioms.get(*index).ok_or("unknown axiom")?;
                want(a.claim)?;
                let Subject::Reference { q, face: Some(w) } = s else {
                    return Err("axioms name faces of D".into());
                };
                ensure(*q == ones && self.axiom_faces[*index].contains(w), || "face not named by the axiom".into())?;
                Ok((vec![], json!({ "source": a.source })))
            }
            Rule::PyramidGao | Rule::PyramidOhr => {
                let f = self.exact_poly(s)?;
                let p = IntegralPolytope::hull(&f.support_points()).map_err(|e| e.to_string())?;
                ensure(p.dim() >= 1, || "monomial".into())?;
                let pyr = p.pyramid().ok_or("Newton polytope is not a pyramid")?;
                if *rule == Rule::PyramidOhr {
                    want(Claim::OnlyHomotheticallyReducible)?;
                    return Ok((vec![], json!({ "apex": p.vertices()[pyr.apexes[0]] })));
                }
                want(Claim::Irreducible)?;
                ensure(min_lambda(&f) == 0, || "divisible by λ".into())?;
                let gcds: Vec<i64> = pyr.apexes.iter().map(|&a| p.apex_gcd(a)).collect();
                match pyr.apexes.iter().zip(&gcds).find(|(_, &g)| g == 1) {
                    Some((&a, _)) => Ok((vec![], json!({ "apex": p.vertices()[a], "height": p.pyramid_height(a) }))),
                    None => Err(format!("pyramid apex gcds {gcds:?}, none equal to 1")),
                }
            }
            Rule::Weakening => {
                want(Claim::OnlyHomotheticallyReducible)?;
                Ok((vec![(s.clone(), Claim::Irreducible)], Value::Null))
            }
            Rule::DivisorReduction { from } => {
                want(Claim::Irreducible)?;
                let Subject::Reference { q, face } = s else {
                    return Err("needs a zero-potential subject".into());
                };
                ensure(q != from && q.iter().zip(from).all(|(a, b)| b % a == 0), || "not a proper divisor".into())?;
                let prem = Subject::Reference { q: from.clone(), face: face.clone() };
                Ok((vec![(prem, Claim::Irreducible)], Value::Null))
            }
            Rule::CoprimeTerms => {
                want(Claim::Irreducible)?;
                let Subject::Reference { q, face } = s else {
                    return Err("needs a zero-potential subject".into());
                };
                ensure(*q == qq && qq != ones, || "target must be D_Q".into())?;
                let f = self.reference_face(face.as_deref()).map_err(|e| e.to_string())?;
                let pts = f.support_points();
                let d = self.d;
                ensure(pts.iter().any(|p| p[..d].iter().all(|&x| x == 0)), || "alpha guard: no term free of z".into())?;
                let mut terms = Vec::new();
                for i in self.expanded_coords() {
                    let qi = qq[i] as i128;
                    let a = pts
                        .iter()
                        .filter(|p| p[i] != 0 && (0..d).all(|j| j == i || p[j] == 0))
                        .map(|p| p[i])
                        .find(|&a| gcd(qi, a as i128) == 1)
                        .ok_or_else(|| format!("no pure power of z_{} coprime to q_{} = {qi}", i + 1, i + 1))?;
                    terms.push(json!([i + 1, a]));
                }
                let prem = Subject::Reference { q: ones, face: face.clone() };
                Ok((vec![(prem, Claim::Irreducible)], json!({ "pure_powers": terms })))
            }
            Rule::CoprimeDiv { sigma } => {
                want(Claim::Irreducible)?;
                let Subject::Reference { q, face } = s else {
                    return Err("needs a zero-potential subject".into());
                };
                ensure(!sigma.is_empty() && sigma.windows(2).all(|w| w[0] < w[1]), || "σ must be sorted".into())?;
                ensure(sigma.iter().all(|&i| i < self.d && qq[i] > 1), || "σ must index q_i > 1".into())?;
                ensure(*q == self.sigma_q(sigma), || "target is not σ ⊙ Q".into())?;
                let f = self.reference_face(face.as_deref()).map_err(|e| e.to_string())?;
                let pts = to_i128(&f.support_points());
                ensure(pts.iter().any(|p| sigma.iter().all(|&i| p[i] == 0)), || {
                    "alpha guard: no term with vanishing σ-exponents".into()
                })?;
                let one_based: Vec<usize> = sigma.iter().map(|i| i + 1).collect();
                let mut tried = Vec::new();
                let mut hit = None;
                for &i in sigma {
                    let b = div_of_points(&pts, i, sigma);
                    let qi = qq[i] as i128;
                    let g = if b == 0 {
                        if !self.options.div_zero_as_q {
                            tried.push(format!("Div_{{{},{one_based:?}}} = 0", i + 1));
                            continue;
                        }
                        qi
                    } else {
                        gcd(qi, b as i128)
                    };
                    if g == 1 {
                        hit = Some((i, b));
                        break;
                    }
                    tried.push(format!("gcd(q_{} = {qi}, Div_{{{},{one_based:?}}} = {b}) = {g}", i + 1, i + 1));
                }
                let (i, b) = hit.ok_or_else(|| tried.join("; "))?;
                let mut need = Vec::new();
                for k in 0..sigma.len() {
                    for sub in combinations(sigma.len(), k) {
                        let sub: Vec<usize> = sub.iter().map(|&t| sigma[t]).collect();
                        need.push((
                            Subject::Reference { q: self.sigma_q(&sub), face: face.clone() },
                            Claim::Irreducible,
                        ));
                    }
                }
                Ok((need, json!({ "i": i + 1, "div": b })))
            }
            Rule::CoprimeSubsets { k } => {
                want(Claim::Irreducible)?;
                let Subject::Reference { q, face } = s else {
                    return Err("needs a zero-potential subject".into());
                };
                ensure(*q == qq, || "target must be D_Q".into())?;
                ensure(*k >= 1 && *k < self.d, || format!("k = {k} outside 1..d-1"))?;
                for rho in combinations(self.d, k + 1) {
                    let g = gcd_all(&rho.iter().map(|&i| qq[i] as i128).collect::<Vec<_>>());
                    if g != 1 {
                        let names: Vec<String> = rho.iter().map(|i| format!("q_{}", i + 1)).collect();
                        return Err(format!("gcd({}) = {g}", names.join(",")));
                    }
                }
                let mut need = Vec::new();
                for sigma in combinations(self.d, *k) {
                    let sq = self.sigma_q(&sigma);
                    ensure(sq != qq, || format!("σ ⊙ Q = Q for σ = {sigma:?}"))?;
                    need.push((Subject::Reference { q: sq, face: face.clone() }, Claim::Irreducible));
                }
                Ok((need, Value::Null))
            }
            Rule::OhrExpansion => {
                want(Claim::OnlyHomotheticallyReducible)?;
                let Subject::Reference { q, face } = s else {
                    return Err("needs a zero-potential subject".into());
                };
                ensure(*q != ones, || "already unexpanded".into())?;
                let prem = Subject::Reference { q: ones, face: face.clone() };
                Ok((vec![(prem, c)], Value::Null))
            }
            Rule::PotentialTransfer => {
                ensure(matches!(c, Claim::Irreducible | Claim::OnlyHomotheticallyReducible), || {
                    "transfers irreducibility claims only".into()
                })?;
                let Subject::Actual { face } = s else {
                    return Err("target must be D_Q".into());
                };
                let r = Subject::Reference { q: qq, face: face.clone() };
                Ok((vec![(r, c), (s.clone(), Claim::PotentialIndependent)], Value::Null))
            }
            Rule::PotentialIndependentExact => {
                want(Claim::PotentialIndependent)?;
                let Subject::Actual { face } = s else {
                    return Err("target must be D_Q".into());
                };
                let e = self.exact.as_ref().ok_or("D_Q not expanded")?;
                let f = match face {
                    None => e.symbolic.clone(),
                    Some(w) => e.symbolic.facial_polynomial(&self.expand_w(w)).map_err(|x| x.to_string())?,
                };
                ensure(!f.symbols().iter().any(|x| e.potential_symbols.contains(x)), || {
                    "facial polynomial involves the potential".into()
                })?;
                Ok((vec![], json!({ "terms": f.num_terms() })))
            }
            Rule::PotentialIndependentWeights => {
                want(Claim::PotentialIndependent)?;
                let Subject::Actual { face: Some(w) } = s else {
                    return Err("needs a proper face of D_Q".into());
                };
                let level = self.volume() * self.offset(w);
                let bound = self.weight_bound(w);
                ensure(bound.map_or(true, |b| b > level), || {
                    format!("potential terms may reach weight {} <= {level}", bound.unwrap_or_default())
                })?;
                Ok((vec![], json!({ "face_weight": level, "potential_weight_at_least": bound })))
            }
            Rule::NewtonContainedExact => {
                want(Claim::NewtonContained)?;
                whole(s)?;
                ensure(matches!(s, Subject::Actual { .. }), || "target must be D_Q".into())?;
                let e = self.exact.as_ref().ok_or("D_Q not expanded")?;
                let pts = e.actual.support_points();
                match pts.iter().find(|p| !self.dilation.contains(p)) {
                    Some(p) => Err(format!("exponent {} outside the dilation", show(p))),
                    None => Ok((vec![], json!({ "terms": pts.len() }))),
                }
            }
            Rule::NewtonContainedWeights => {
                want(Claim::NewtonContained)?;
                whole(s)?;
                ensure(matches!(s, Subject::Actual { .. }), || "target must be D_Q".into())?;
                let full = if self.is_fermi() { self.d } else { self.d + 1 };
                ensure(self.newt.dim() == full, || format!("newt(D) has dimension {} < {full}", self.newt.dim()))?;
                for w in &self.facets {
                    let level = self.volume() * self.offset(w);
                    if let Some(b) = self.weight_bound(w) {
                        ensure(b >= level, || format!("facet {}: potential terms may reach {b} < {level}", show(w)))?;
                    }
                }
                Ok((vec![], json!({ "facets": self.facets.len() })))
            }
            Rule::NoLambdaFactorModP { seed } => {
                want(Claim::NoLambdaFactor)?;
                whole(s)?;
                ensure(matches!(s, Subject::Actual { .. }), || "target must be D_Q".into())?;
                ensure(!self.is_fermi(), || "λ is specialised".into())?;
                let k = no_lambda_factor(&self.actual_matrix, *seed).ok_or("sampled characteristic polynomials share a factor")?;
                Ok((vec![], json!({ "points": k })))
            }
            Rule::PeriodicFacets { skip } => {
                want(Claim::OnlyHomotheticallyReducible)?;
                whole(s)?;
                ensure(matches!(s, Subject::Actual { .. }), || "target must be D_Q".into())?;
                ensure(self.newt.dim() >= 2 && self.facets.len() >= 2, || {
                    format!("degenerate: dimension {}, {} facets", self.newt.dim(), self.facets.len())
                })?;
                if let Some(w) = skip {
                    ensure(self.facets.contains(w), || "skipped face is not a facet".into())?;
                }
                let kept: Vec<Vec<i64>> = self.facets.iter().filter(|w| Some(*w) != skip.as_ref()).cloned().collect();
                ensure(self.newt.strong_chains_cover(&self.facet_objects(&kept)), || "facets do not chain".into())?;
                Ok((self.facet_premises(&kept), Value::Null))
            }
            Rule::StrongChain { faces } => {
                want(Claim::OnlyHomotheticallyReducible)?;
                whole(s)?;
                ensure(matches!(s, Subject::Actual { .. }), || "target must be D_Q".into())?;
                ensure(!faces.is_empty() && faces.iter().all(|w| self.facets.contains(w)), || "needs facets".into())?;
                let fs = self.facet_objects(faces);
                let n = self.newt.vertices().len();
                for a in 0..n {
                    for b in a + 1..n {
                        ensure(self.newt.strong_chain(&fs, a, b).is_some(), || {
                            format!(
                                "no strong chain from {} to {}",
                                show(&self.newt.vertices()[a]),
                                show(&self.newt.vertices()[b])
                            )
                        })?;
                    }
                }
                Ok((self.facet_premises(faces), json!({ "faces": faces.len() })))
            }
            Rule::FaceToWhole { face } => {
                want(Claim::Irreducible)?;
                whole(s)?;
                ensure(self.newt.dim() >= 1, || "monomial".into())?;
                ensure(self.face_dim(face) >= 1, || "face is a vertex".into())?;
                Ok((
                    vec![
                        (s.clone(), Claim::OnlyHomotheticallyReducible),
                        (s.with_face(Some(face.clone())), Claim::Irreducible),
                    ],
                    Value::Null,
                ))
            }
            Rule::FlatBands => {
                want(Claim::Reducible)?;
                whole(s)?;
                ensure(!self.is_fermi(), || "λ is specialised".into())?;
                let f = self.exact_poly(s)?;
                let bands = flat_bands(&f).map_err(|e| e.to_string())?;
                ensure(!bands.is_empty(), || "no flat band".into())?;
                let total: u32 = bands.iter().map(|b| b.1).sum();
                let deg = f.lambda_degree().unwrap_or(0);
                let z_free = f.terms().all(|(e, _)| e.z.iter().all(|&x| x == 0));
                ensure(total >= 2 || !z_free || deg > total, || "a single linear factor".into())?;
                let list: Vec<Value> = bands.iter().map(|(r, k)| json!([format_rational(r), k])).collect();
                Ok((vec![], json!({ "factors": list })))
            }
        }
    }
}
