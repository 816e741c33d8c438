//! `Z^d`-periodic graphs with labelings, their Floquet matrices and
//! dispersion polynomials, `Q`-expansions, and the built-in families.

pub mod builders;
pub mod expand;
pub mod json;
pub mod spectrum;

use std::collections::HashSet;
use std::fmt;

use crate::laurent::{ExponentVector, LaurentPoly};
use crate::matrix::LaurentMatrix;
use crate::param::ParamPoly;
use crate::{Error, Result};

pub use expand::QExpansion;

/// The edge from `u` to `offset + v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub offset: Vec<i64>,
}

impl Edge {
    /// Representative of `{(u,v,a), (v,u,-a)}`.
    pub fn canonical(&self) -> Edge {
        let rev = Edge {
            u: self.v,
            v: self.u,
            offset: self.offset.iter().map(|x| -x).collect(),
        };
        if (rev.u, rev.v, &rev.offset) < (self.u, self.v, &self.offset) {
            rev
        } else {
            self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicGraph {
    pub d: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

/// Potential per vertex orbit and label per stored edge (same indexing
/// as the graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub potential: Vec<ParamPoly>,
    pub edge_labels: Vec<Option<ParamPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub edge: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.edge {
            Some(e) => write!(f, "edge {e}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl PeriodicGraph {
    pub fn new(d: usize, vertices: Vec<String>) -> Self {
        Self {
            d,
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn num_orbits(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, offset: Vec<i64>) -> usize {
        self.edges.push(Edge { u, v, offset });
        self.edges.len() - 1
    }

    /// The offsets `a` with an edge between `W` and `a + W`, both signs.
    pub fn offsets(&self) -> Vec<Vec<i64>> {
        let mut s: Vec<Vec<i64>> = self
            .edges
            .iter()
            .flat_map(|e| [e.offset.clone(), e.offset.iter().map(|x| -x).collect()])
            .collect();
        s.sort();
        s.dedup();
        s
    }
}

impl Labeling {
    pub fn symbols(&self) -> std::collections::BTreeSet<String> {
        self.potential
            .iter()
            .chain(self.edge_labels.iter().flatten())
            .flat_map(ParamPoly::symbols)
            .collect()
    }

    /// Symbols occurring in the potential but in no edge label.
    pub fn potential_symbols(&self) -> std::collections::BTreeSet<String> {
        let edge: std::collections::BTreeSet<String> =
            self.edge_labels.iter().flatten().flat_map(ParamPoly::symbols).collect();
        self.potential
            .iter()
            .flat_map(ParamPoly::symbols)
            .filter(|s| !edge.contains(s))
            .collect()
    }

    pub fn with_zero_potential(&self) -> Self {
        Self {
            potential: vec![ParamPoly::zero(); self.potential.len()],
            edge_labels: self.edge_labels.clone(),
        }
    }
}

/// Checks the structural invariants; an empty list means valid.
pub fn validate(g: &PeriodicGraph, c: &Labeling) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut diag = |edge, message: String| out.push(Diagnostic { edge, message });
    if g.d == 0 {
        diag(None, "rank d must be positive".into());
    }
    if g.vertices.is_empty() {
        diag(None, "no vertex orbits".into());
    }
    let names: HashSet<&String> = g.vertices.iter().collect();
    if names.len() != g.vertices.len() {
        diag(None, "duplicate vertex names".into());
    }
    if c.potential.len() != g.vertices.len() {
        diag(None, format!("{} potentials for {} orbits", c.potential.len(), g.vertices.len()));
    }
    if c.edge_labels.len() != g.edges.len() {
        diag(None, format!("{} labels for {} edges", c.edge_labels.len(), g.edges.len()));
    }
    let mut seen = HashSet::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.u >= g.vertices.len() || e.v >= g.vertices.len() {
            diag(Some(i), "endpoint out of range".into());
            continue;
        }
        if e.offset.len() != g.d {
            diag(Some(i), format!("offset has length {}, expected {}", e.offset.len(), g.d));
            continue;
        }
        if e.u == e.v && e.offset.iter().all(|&x| x == 0) {
            diag(Some(i), "self-loop with zero offset".into());
        }
        if !seen.insert(e.canonical()) {
            diag(Some(i), "duplicate edge (up to reversal)".into());
        }
        match c.edge_labels.get(i) {
            None | Some(None) => diag(Some(i), "unlabeled edge".into()),
            Some(Some(l)) if l.is_zero() => diag(Some(i), "zero edge label".into()),
            _ => {}
        }
    }
    out
}

fn ensure_valid(g: &PeriodicGraph, c: &Labeling) -> Result<()> {
    let diags = validate(g, c);
    if diags.is_empty() {
        Ok(())
    } else {
        let msgs: Vec<String> = diags.iter().map(ToString::to_string).collect();
        Err(Error::Invalid(msgs.join("; ")))
    }
}

/// `L(z, λ) = L_c(z) - λ I`.
pub fn floquet_matrix(g: &PeriodicGraph, c: &Labeling) -> Result<LaurentMatrix> {
    ensure_valid(g, c)?;
    let d = g.d;
    let mut m = LaurentMatrix::zeros(g.num_orbits(), d);
    for (e, label) in g.edges.iter().zip(&c.edge_labels) {
        let label = label.as_ref().expect("validated");
        let el = LaurentPoly::constant(d, label.clone());
        let fwd = LaurentPoly::monomial(ExponentVector::new(e.offset.clone(), 0), -label);
        let back = LaurentPoly::monomial(
            ExponentVector::new(e.offset.iter().map(|x| -x).collect(), 0),
            -label,
        );
        m.add_to(e.u, e.u, &el);
        m.add_to(e.v, e.v, &el);
        m.add_to(e.u, e.v, &fwd);
        m.add_to(e.v, e.u, &back);
    }
    for (i, v) in c.potential.iter().enumerate() {
        m.add_to(i, i, &(&LaurentPoly::constant(d, v.clone()) - &LaurentPoly::lambda(d)));
    }
    Ok(m)
}

/// `D(z, λ) = det(L_c(z) - λ I)`.
pub fn dispersion(g: &PeriodicGraph, c: &Labeling, cap: usize) -> Result<LaurentPoly> {
    floquet_matrix(g, c)?.determinant(cap)
}

#[cfg(test)]
mod tests;
