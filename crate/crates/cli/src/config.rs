//! Turning command-line flags into graphs, potentials and analysis options.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use bloch_core::criteria::{Axiom, Goal, Options, Problem};
use bloch_core::graph::builders::{self, random_rational, LabeledGraph};
use bloch_core::graph::expand::{cells, expanded_name, random_potential};
use bloch_core::graph::json as graph_json;
use bloch_core::param::parse_rational;
use bloch_core::{ParamPoly, Rational};
use clap::{Args, ValueEnum};
use rand::SeedableRng;

use crate::Failure;

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Built-in family name or path to a graph JSON file.
    #[arg(long)]
    pub graph: String,
    /// Rank of the period lattice for built-in families.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Period vector, e.g. `2,3`.
    #[arg(long = "Q", value_delimiter = ',')]
    pub q: Option<Vec<u64>>,
    /// `symbolic`, `zero`, `random-rational(seed)`, `random-periodic(seed)`,
    /// `name=value,..` (orbit names, or expanded names `v@k1,..`), or `@file.json`.
    #[arg(long, default_value = "symbolic")]
    pub potential: String,
    /// Replace symbolic edge labels by seeded random rationals.
    #[arg(long)]
    pub random_labels: Option<u64>,
    /// Study the Fermi slice at this energy.
    #[arg(long)]
    pub lambda0: Option<String>,
    /// JSON list of axioms.
    #[arg(long)]
    pub axioms: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for numeric checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Read gcd(q_i, 0) as q_i instead of blocking.
    #[arg(long)]
    pub div_zero_as_q: bool,
    /// Largest matrix expanded symbolically.
    #[arg(long, default_value_t = bloch_core::matrix::DEFAULT_DET_CAP)]
    pub det_cap: usize,
    /// Largest expanded size for which D_Q is expanded exactly during analysis.
    #[arg(long, default_value_t = 8)]
    pub exact_cap: usize,
    /// Grid points per axis for spectrum sampling.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = GoalArg::Irreducible)]
    pub goal: GoalArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GoalArg {
    Irreducible,
    Ohr,
}

/// How the potential on the expanded graph is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// The graph's own (possibly symbolic) potential in every cell.
    Graph,
    Zero,
    RandomRational(u64),
    RandomPeriodic(u64),
    Map(Vec<(String, String)>),
}

impl PotentialSpec {
    pub fn parse(s: &str, default_seed: u64) -> Result<Self, Failure> {
        let seeded = |rest: &str| -> Result<u64, Failure> {
            let inner = rest.trim();
            if inner.is_empty() {
                return Ok(default_seed);
            }
            let inner = inner
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| Failure::usage(format!("bad potential spec `{s}`")))?;
            inner.trim().parse().map_err(|_| Failure::usage(format!("bad seed in `{s}`")))
        };
        if s == "symbolic" || s == "graph" {
            return Ok(Self::Graph);
        }
        if s == "zero" {
            return Ok(Self::Zero);
        }
        if let Some(rest) = s.strip_prefix("random-rational") {
            return Ok(Self::RandomRational(seeded(rest)?));
        }
        if let Some(rest) = s.strip_prefix("random-periodic") {
            return Ok(Self::RandomPeriodic(seeded(rest)?));
        }
        if let Some(path) = s.strip_prefix('@') {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{path}: {e}")))?;
            let map: std::collections::BTreeMap<String, String> =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
            return Ok(Self::Map(map.into_iter().collect()));
        }
        // expanded names contain commas (`v@1,0`): a piece without `=` is the
        // start of the next key
        let mut pairs = Vec::new();
        let mut pending: Option<String> = None;
        for piece in s.split(',') {
            match piece.split_once('=') {
                None => {
                    pending = Some(match pending {
                        Some(p) => format!("{p},{piece}"),
                        None => piece.to_string(),
                    })
                }
                Some((k, v)) => {
                    let key = match pending.take() {
                        Some(p) => format!("{p},{k}"),
                        None => k.to_string(),
                    };
                    pairs.push((key.trim().to_string(), v.trim().to_string()));
                }
            }
        }
        if pending.is_some() || pairs.is_empty() {
            return Err(Failure::usage(format!("bad potential spec `{s}`")));
        }
        Ok(Self::Map(pairs))
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Graph => "graph (Z^d-periodic)".into(),
            Self::Zero => "zero".into(),
            Self::RandomRational(s) => format!("random-rational({s})"),
            Self::RandomPeriodic(s) => format!("random-periodic({s}) (Z^d-periodic)"),
            Self::Map(m) => {
                let items: Vec<String> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
                items.join(",")
            }
        }
    }
}

pub fn load_graph(c: &Common) -> Result<LabeledGraph, Failure> {
    let path = Path::new(&c.graph);
    let g = if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", c.graph)))?;
        graph_json::from_json(&text)?
    } else {
        builders::by_name(&c.graph, c.d)?
    };
    let g = match c.random_labels {
        Some(seed) => g.with_random_labels(seed),
        None => g,
    };
    let diags = bloch_core::graph::validate(&g.graph, &g.labels);
    if !diags.is_empty() {
        let msgs: Vec<String> = diags.iter().map(ToString::to_string).collect();
        return Err(Failure::invalid(msgs.join("; ")));
    }
    Ok(g)
}

pub fn q_or_ones(c: &Common, d: usize) -> Result<Vec<u64>, Failure> {
    let q = c.q.clone().unwrap_or_else(|| vec![1; d]);
    if q.len() != d {
        return Err(Failure::invalid(format!("Q has {} entries, expected {d}", q.len())));
    }
    if q.contains(&0) {
        return Err(Failure::invalid("Q entries must be positive".into()));
    }
    Ok(q)
}

pub fn lambda0(c: &Common) -> Result<Option<Rational>, Failure> {
    c.lambda0.as_deref().map(parse_rational).transpose().map_err(Failure::from)
}

/// Applies the potential spec: returns the graph (whose base potential may
/// have been replaced) and the expanded potential when it is not copied
/// from the base.
pub fn apply_potential(
    g: LabeledGraph,
    q: &[u64],
    spec: &PotentialSpec,
) -> Result<(LabeledGraph, Option<HashMap<String, ParamPoly>>), Failure> {
    let mut g = g;
    match spec {
        PotentialSpec::Graph => Ok((g, None)),
        PotentialSpec::Zero => Ok((g.zero_potential(), None)),
        PotentialSpec::RandomRational(seed) => {
            let map = random_potential(&g.graph, q, *seed);
            Ok((g, Some(map)))
        }
        PotentialSpec::RandomPeriodic(seed) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            for v in g.labels.potential.iter_mut() {
                *v = ParamPoly::constant(random_rational(&mut rng));
            }
            Ok((g, None))
        }
        PotentialSpec::Map(pairs) => {
            let parse = |s: &str| ParamPoly::parse_label(s).map_err(Failure::from);
            if pairs.iter().any(|(k, _)| k.contains('@')) {
                let mut map: HashMap<String, ParamPoly> = HashMap::new();
                for (k, v) in pairs {
                    map.insert(k.clone(), parse(v)?);
                }
                let missing: Vec<String> = cells(q)
                    .iter()
                    .flat_map(|k| g.graph.vertices.iter().map(move |v| expanded_name(k, v)))
                    .filter(|n| !map.contains_key(n))
                    .collect();
                if !missing.is_empty() {
                    return Err(Failure::invalid(format!("potential missing for {}", missing.join(" "))));
                }
                Ok((g, Some(map)))
            } else {
                for (k, v) in pairs {
                    let i = g
                        .graph
                        .vertex_index(k)
                        .ok_or_else(|| Failure::invalid(format!("unknown vertex `{k}`")))?;
                    g.labels.potential[i] = parse(v)?;
                }
                Ok((g, None))
            }
        }
    }
}

pub fn options(c: &Common) -> Result<Options, Failure> {
    let axioms = match &c.axioms {
        None => Vec::new(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::io(format!("{}: {e}", p.display())))?;
            Axiom::parse_list(&text)?
        }
    };
    if c.det_cap == 0 || c.exact_cap == 0 || c.grid == 0 {
        return Err(Failure::invalid("caps must be positive".into()));
    }
    Ok(Options {
        goal: match c.goal {
            GoalArg::Irreducible => Goal::Irreducible,
            GoalArg::Ohr => Goal::OnlyHomotheticallyReducible,
        },
        axioms,
        div_zero_as_q: c.div_zero_as_q,
        det_cap: c.det_cap,
        exact_cap: c.exact_cap,
        seed: c.seed,
        ..Options::default()
    })
}

pub fn problem(c: &Common) -> Result<(Problem, PotentialSpec), Failure> {
    let g = load_graph(c)?;
    let q = q_or_ones(c, g.graph.d)?;
    let spec = PotentialSpec::parse(&c.potential, c.seed)?;
    let (graph, potential_q) = apply_potential(g, &q, &spec)?;
    Ok((
        Problem {
            graph,
            q,
            potential_q,
            lambda0: lambda0(c)?,
        },
        spec,
    ))
}
