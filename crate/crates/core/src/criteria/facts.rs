//! Subjects, claims, rules and the fact store.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which polynomial a fact is about. Faces are named by an exposing vector
/// `w` of `newt(D)` (length `d + 1`); on expansions the face is the one
/// exposed by `(q_1 w_1, .., q_d w_d, w_{d+1})`. `None` is the whole
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subject {
    /// `D_q` of the graph with zero potential (the same labels otherwise).
    Reference { q: Vec<u64>, face: Option<Vec<i64>> },
    /// `D_Q` with the potential under study.
    Actual { face: Option<Vec<i64>> },
}

impl Subject {
    pub fn face(&self) -> Option<&[i64]> {
        match self {
            Subject::Reference { face, .. } | Subject::Actual { face } => face.as_deref(),
        }
    }

    pub fn with_face(&self, face: Option<Vec<i64>>) -> Subject {
        match self {
            Subject::Reference { q, .. } => Subject::Reference { q: q.clone(), face },
            Subject::Actual { .. } => Subject::Actual { face },
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, face) = match self {
            Subject::Reference { q, face } if q.iter().all(|&x| x == 1) => ("D[V=0]".to_string(), face),
            Subject::Reference { q, face } => (format!("D_({})[V=0]", join(q)), face),
            Subject::Actual { face } => ("D_Q".to_string(), face),
        };
        match face {
            None => write!(f, "{head}"),
            Some(w) => write!(f, "({head})_w=({})", join(w)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Claim {
    Irreducible,
    OnlyHomotheticallyReducible,
    /// The facial polynomial does not change when the potential does.
    PotentialIndependent,
    /// `newt(D_Q)` lies in the contracted `|Q|`-dilation of `newt(D)`.
    NewtonContained,
    /// No nonconstant factor depending on λ alone.
    NoLambdaFactor,
    /// Has the flat-band factors listed in the witness.
    Reducible,
}

/// Where a face axiom applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxiomFace {
    Normal(Vec<i64>),
    /// `"nonbase-facets"` or `"all-facets"`.
    Named(String),
}

/// An external input, e.g. irreducibility of certain facial polynomials
/// proved elsewhere. It applies to faces of the zero-potential `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub face: AxiomFace,
    pub claim: Claim,
    pub source: String,
}

impl Axiom {
    /// Parses a JSON list of axioms.
    pub fn parse_list(text: &str) -> crate::Result<Vec<Axiom>> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Rule {
    Axiom { index: usize },
    PyramidGao,
    PyramidOhr,
    Weakening,
    /// Irreducibility of `D_q` passes to `D_a` for `a | q`.
    DivisorReduction { from: Vec<u64> },
    /// Pure powers `z_i^{a_i}` with `gcd(q_i, a_i) = 1`.
    CoprimeTerms,
    /// `gcd(q_i, Div_{i,σ}) = 1` for some `i ∈ σ`.
    CoprimeDiv { sigma: Vec<usize> },
    /// All `σ ⊙ Q` with `|σ| = k` irreducible and every `k + 1` of the
    /// `q_i` coprime.
    CoprimeSubsets { k: usize },
    OhrExpansion,
    PotentialTransfer,
    PotentialIndependentExact,
    PotentialIndependentWeights,
    NewtonContainedExact,
    NewtonContainedWeights,
    NoLambdaFactorModP { seed: u64 },
    /// All facets but `skip` certified.
    PeriodicFacets { skip: Option<Vec<i64>> },
    StrongChain { faces: Vec<Vec<i64>> },
    FaceToWhole { face: Vec<i64> },
    FlatBands,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom { .. } => "axiom",
            Rule::PyramidGao => "pyramid_gao",
            Rule::PyramidOhr => "pyramid_ohr",
            Rule::Weakening => "weakening",
            Rule::DivisorReduction { .. } => "divisor_reduction",
            Rule::CoprimeTerms => "coprime_terms",
            Rule::CoprimeDiv { .. } => "coprime_div",
            Rule::CoprimeSubsets { .. } => "coprime_subsets",
            Rule::OhrExpansion => "ohr_expansion",
            Rule::PotentialTransfer => "potential_transfer",
            Rule::PotentialIndependentExact => "potential_independent_exact",
            Rule::PotentialIndependentWeights => "potential_independent_weights",
            Rule::NewtonContainedExact => "newton_contained_exact",
            Rule::NewtonContainedWeights => "newton_contained_weights",
            Rule::NoLambdaFactorModP { .. } => "no_lambda_factor_mod_p",
            Rule::PeriodicFacets { .. } => "periodic_facets",
            Rule::StrongChain { .. } => "strong_chain",
            Rule::FaceToWhole { .. } => "face_to_whole",
            Rule::FlatBands => "flat_bands",
        }
    }

    /// The statement the rule applies, for auditing.
    pub fn reference(&self) -> &'static str {
        match self {
            Rule::Axiom { .. } => "external input, taken as given",
            Rule::PyramidGao => "a pyramid whose apex-to-base differences have coprime coordinates is integrally indecomposable (Gao)",
            Rule::PyramidOhr => "pyramids are only homothetically decomposable",
            Rule::Weakening => "an irreducible polynomial is only homothetically reducible",
            Rule::DivisorReduction { .. } => "if D_Q is irreducible and A divides Q then D_A is irreducible",
            Rule::CoprimeTerms => "pure powers z_i^{a_i} with gcd(q_i, a_i) = 1 make D_Q irreducible when D is",
            Rule::CoprimeDiv { .. } => "q_i coprime to Div_{i,σ} and all smaller σ' irreducible make D_{σ⊙Q} irreducible",
            Rule::CoprimeSubsets { .. } => "D_{σ⊙Q} irreducible for all |σ| = k and every k+1 of the q_i coprime make D_Q irreducible",
            Rule::OhrExpansion => "only homothetic reducibility of D (or a face, or a λ-slice) passes to D_Q",
            Rule::PotentialTransfer => "a potential-independent facial polynomial equals that of the zero potential",
            Rule::PotentialIndependentExact => "no potential symbol in the exact facial polynomial",
            Rule::PotentialIndependentWeights => "every potential-dependent term of the determinant has larger weight than the face",
            Rule::NewtonContainedExact => "every exponent of D_Q lies in the contracted dilation",
            Rule::NewtonContainedWeights => "no potential-dependent term lies below any facet of the contracted dilation",
            Rule::NoLambdaFactorModP { .. } => "sampled characteristic polynomials have trivial gcd mod 2^61-1",
            Rule::PeriodicFacets { .. } => "if all facial polynomials but one are Z^d-periodic and only homothetically reducible, so is D_Q",
            Rule::StrongChain { .. } => "strong chains of only homothetically reducible faces join all vertex pairs",
            Rule::FaceToWhole { .. } => "only homothetically reducible with an irreducible facial polynomial implies irreducible",
            Rule::FlatBands => "a common factor λ - r of all z-coefficients is a flat band",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub id: usize,
    pub subject: Subject,
    pub claim: Claim,
    pub rule: Rule,
    pub premises: Vec<usize>,
    #[serde(default)]
    pub witness: serde_json::Value,
}

impl Fact {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serialisable");
        let o = v.as_object_mut().expect("object");
        o.insert("subject_text".into(), self.subject.to_string().into());
        o.insert("paper_ref".into(), self.rule.reference().into());
        v
    }
}

/// Append-only store; ids start at 1 and premises always point backwards.
#[derive(Clone, Debug, Default)]
pub struct FactStore {
    facts: Vec<Fact>,
    index: BTreeMap<(Subject, Claim), usize>,
}

impl FactStore {
    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn get(&self, s: &Subject, c: Claim) -> Option<&Fact> {
        self.index.get(&(s.clone(), c)).map(|&id| &self.facts[id - 1])
    }

    pub fn has(&self, s: &Subject, c: Claim) -> bool {
        self.index.contains_key(&(s.clone(), c))
    }

    /// Adds a fact unless `(subject, claim)` is known; returns whether it
    /// was new.
    pub fn add(
        &mut self,
        subject: Subject,
        claim: Claim,
        rule: Rule,
        premises: Vec<usize>,
        witness: serde_json::Value,
    ) -> bool {
        let key = (subject.clone(), claim);
        if self.index.contains_key(&key) {
            return false;
        }
        let id = self.facts.len() + 1;
        self.facts.push(Fact {
            id,
            subject,
            claim,
            rule,
            premises,
            witness,
        });
        self.index.insert(key, id);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_json() {
        let s = Subject::Reference {
            q: vec![2, 1],
            face: Some(vec![-1, -1, -1]),
        };
        assert_eq!(s.to_string(), "(D_(2,1)[V=0])_w=(-1,-1,-1)");
        assert_eq!(Subject::Actual { face: None }.to_string(), "D_Q");
        let mut st = FactStore::default();
        assert!(st.add(s.clone(), Claim::Irreducible, Rule::PyramidGao, vec![], serde_json::Value::Null));
        assert!(!st.add(s.clone(), Claim::Irreducible, Rule::Weakening, vec![1], serde_json::Value::Null));
        let j = st.facts()[0].to_json();
        assert_eq!(j["rule"]["name"], "pyramid_gao");
        let back: Fact = serde_json::from_value(j).unwrap();
        assert_eq!(back, st.facts()[0]);
    }

    #[test]
    fn axioms_parse() {
        let a = Axiom::parse_list(
            r#"[{"face":"nonbase-facets","claim":"Irreducible","source":"smooth facets"},
                {"face":[-1,-1,-1,0],"claim":"Irreducible","source":"x"}]"#,
        )
        .unwrap();
        assert_eq!(a[0].face, AxiomFace::Named("nonbase-facets".into()));
        assert_eq!(a[1].face, AxiomFace::Normal(vec![-1, -1, -1, 0]));
    }
}
