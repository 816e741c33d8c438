//! Everything the rules inspect, computed once per problem.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::facts::{Axiom, AxiomFace};
use super::weights::potential_weight_bound;
use crate::graph::builders::LabeledGraph;
use crate::graph::expand::{q_expand, volume, QExpansion};
use crate::graph::{dispersion, floquet_matrix};
use crate::matrix::{LaurentMatrix, DEFAULT_DET_CAP};
use crate::par::ExecMode;
use crate::param::{ParamPoly, Rational};
use crate::polytope::{exposing_vector_map, IntegralPolytope};
use crate::{Error, LaurentPoly, Result};

/// A graph, a period lattice `Q` and the potential under study.
#[derive(Clone, Debug)]
pub struct Problem {
    pub graph: LabeledGraph,
    pub q: Vec<u64>,
    /// Potential keyed by expanded vertex name (`v@k1,..,kd`); `None` copies
    /// the graph's own potential into every cell.
    pub potential_q: Option<HashMap<String, ParamPoly>>,
    /// Study the Fermi slice `D(z, λ₀)` instead of `D(z, λ)`.
    pub lambda0: Option<Rational>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Goal {
    #[default]
    Irreducible,
    /// Also accept "only homothetically reducible" as a final verdict.
    OnlyHomotheticallyReducible,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub goal: Goal,
    pub axioms: Vec<Axiom>,
    /// Read `gcd(q_i, 0)` as `q_i` instead of blocking on `Div = 0`.
    pub div_zero_as_q: bool,
    /// Largest matrix whose determinant is expanded symbolically for `D`.
    pub det_cap: usize,
    /// Largest `|Q| m` for which `D_Q` itself is expanded symbolically.
    pub exact_cap: usize,
    pub seed: u64,
    pub mode: ExecMode,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            goal: Goal::default(),
            axioms: Vec::new(),
            div_zero_as_q: false,
            det_cap: DEFAULT_DET_CAP,
            exact_cap: 8,
            seed: 0,
            mode: ExecMode::default(),
        }
    }
}

/// `D_Q` expanded with one fresh symbol per expanded vertex potential, and
/// with the actual potential substituted.
#[derive(Clone, Debug)]
pub struct ExactActual {
    pub symbolic: LaurentPoly,
    pub actual: LaurentPoly,
    pub potential_symbols: BTreeSet<String>,
}

#[derive(Debug)]
pub struct Context {
    pub problem: Problem,
    pub options: Options,
    pub d: usize,
    pub qe: QExpansion,
    /// `D` with zero potential (at `λ₀` when given).
    pub reference: LaurentPoly,
    pub newt: IntegralPolytope,
    /// Contracted `|Q|`-dilation of `newt`.
    pub dilation: IntegralPolytope,
    /// Expanded Floquet matrix with zero potential (at `λ₀` when given).
    pub kinetic: LaurentMatrix,
    /// Expanded Floquet matrix with the actual potential.
    pub actual_matrix: LaurentMatrix,
    pub exact: Option<ExactActual>,
    /// Facet normals of `newt`, in facet order.
    pub facets: Vec<Vec<i64>>,
    /// The facet exposed by `(0, .., 0, 1)`, when there is one.
    pub base_facet: Option<Vec<i64>>,
    /// `None` first, then facets, then other axiom faces.
    pub faces: Vec<Option<Vec<i64>>>,
    /// Faces named by each axiom.
    pub axiom_faces: Vec<Vec<Vec<i64>>>,
    weight_bounds: BTreeMap<Vec<i64>, Option<i64>>,
}

impl Context {
    pub fn new(problem: Problem, options: Options) -> Result<Self> {
        let d = problem.graph.graph.d;
        let g = &problem.graph;
        let qe = q_expand(&g.graph, &g.labels, &problem.q, problem.potential_q.as_ref())?;
        let at = |p: LaurentPoly| match &problem.lambda0 {
            Some(l) => p.specialize_lambda(l),
            None => p,
        };
        let zero = g.labels.with_zero_potential();
        let reference = at(dispersion(&g.graph, &zero, options.det_cap)?);
        if reference.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let newt = IntegralPolytope::hull(&reference.support_points())?;
        let dilation = newt.contracted_dilation(&problem.q)?;
        let mut kinetic = floquet_matrix(&qe.expanded, &qe.labels.with_zero_potential())?;
        if let Some(l) = &problem.lambda0 {
            kinetic = kinetic.specialize_lambda(l);
        }
        let actual_matrix = floquet_matrix(&qe.expanded, &qe.labels)?;
        let exact = if qe.size() <= options.exact_cap {
            let names: Vec<String> = qe.expanded.vertices.iter().map(|v| format!("V[{v}]")).collect();
            let mut sym = qe.labels.clone();
            sym.potential = names.iter().map(|s| ParamPoly::symbol(s)).collect();
            let symbolic = at(dispersion(&qe.expanded, &sym, options.exact_cap)?);
            let subst: HashMap<String, ParamPoly> =
                names.iter().cloned().zip(qe.labels.potential.iter().cloned()).collect();
            let actual = symbolic.substitute_params(&subst);
            Some(ExactActual {
                symbolic,
                actual,
                potential_symbols: names.into_iter().collect(),
            })
        } else {
            None
        };
        let facets: Vec<Vec<i64>> = newt.facets().iter().map(|f| f.normal.clone()).collect();
        let mut e_lambda = vec![0; d + 1];
        e_lambda[d] = 1;
        let base_facet = newt
            .face_exposed(&e_lambda)
            .ok()
            .and_then(|f| newt.facets().iter().find(|g| g.vertex_ids == f.vertex_ids))
            .map(|f| f.normal.clone());
        let mut faces: Vec<Option<Vec<i64>>> = vec![None];
        faces.extend(facets.iter().cloned().map(Some));
        let mut axiom_faces = Vec::new();
        for a in &options.axioms {
            let fs: Vec<Vec<i64>> = match &a.face {
                AxiomFace::Normal(w) => {
                    let f = newt.face_exposed(w)?;
                    let w = newt
                        .facets()
                        .iter()
                        .find(|g| g.vertex_ids == f.vertex_ids)
                        .map_or_else(|| w.clone(), |g| g.normal.clone());
                    if !faces.contains(&Some(w.clone())) {
                        faces.push(Some(w.clone()));
                    }
                    vec![w]
                }
                AxiomFace::Named(s) if s == "all-facets" => facets.clone(),
                AxiomFace::Named(s) if s == "nonbase-facets" => facets
                    .iter()
                    .filter(|w| Some(*w) != base_facet.as_ref())
                    .cloned()
                    .collect(),
                AxiomFace::Named(s) => return Err(Error::Invalid(format!("unknown axiom face `{s}`"))),
            };
            axiom_faces.push(fs);
        }
        let mut ctx = Self {
            problem,
            options,
            d,
            qe,
            reference,
            newt,
            dilation,
            kinetic,
            actual_matrix,
            exact,
            facets,
            base_facet,
            faces,
            axiom_faces,
            weight_bounds: BTreeMap::new(),
        };
        if ctx.exact.is_none() {
            let ws: Vec<Vec<i64>> = ctx.faces.iter().flatten().cloned().collect();
            let bounds = ctx.options.mode.map(&ws, |w| {
                potential_weight_bound(&ctx.kinetic, &ctx.expand_w(w), ExecMode::Sequential)
            });
            ctx.weight_bounds = ws.into_iter().zip(bounds).collect();
        }
        Ok(ctx)
    }

    /// `|Q|`.
    pub fn volume(&self) -> i64 {
        volume(&self.problem.q) as i64
    }

    /// Whether the λ₀-slice is studied.
    pub fn is_fermi(&self) -> bool {
        self.problem.lambda0.is_some()
    }

    pub fn ones(&self) -> Vec<u64> {
        vec![1; self.d]
    }

    /// The exposing vector on the `Q`-expanded side.
    pub fn expand_w(&self, w: &[i64]) -> Vec<i64> {
        exposing_vector_map(w, &self.problem.q)
    }

    /// `min w · x` over `newt(D)`.
    pub fn offset(&self, w: &[i64]) -> i64 {
        self.newt
            .vertices()
            .iter()
            .map(|v| v.iter().zip(w).map(|(a, b)| a * b).sum())
            .min()
            .expect("nonempty")
    }

    /// Facial polynomial of the zero-potential `D`.
    pub fn reference_face(&self, face: Option<&[i64]>) -> Result<LaurentPoly> {
        match face {
            None => Ok(self.reference.clone()),
            Some(w) => self.reference.facial_polynomial(w),
        }
    }

    /// Facial polynomial of the actual `D_Q`, when it was expanded.
    pub fn actual_face(&self, face: Option<&[i64]>) -> Option<Result<LaurentPoly>> {
        let e = self.exact.as_ref()?;
        Some(match face {
            None => Ok(e.actual.clone()),
            Some(w) => e.actual.facial_polynomial(&self.expand_w(w)),
        })
    }

    /// Lower bound on the weight of potential-dependent terms along `w`.
    pub fn weight_bound(&self, w: &[i64]) -> Option<i64> {
        match self.weight_bounds.get(w) {
            Some(b) => *b,
            None => potential_weight_bound(&self.kinetic, &self.expand_w(w), self.options.mode),
        }
    }
}
