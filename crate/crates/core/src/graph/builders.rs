//! Built-in graph families with symbolic default labelings.

use super::{Labeling, PeriodicGraph};
use crate::param::ParamPoly;
use crate::{Error, Result};

/// A graph together with its labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: PeriodicGraph,
    pub labels: Labeling,
}

impl LabeledGraph {
    fn new(d: usize, names: &[&str], potentials: &[&str]) -> Self {
        Self {
            graph: PeriodicGraph::new(d, names.iter().map(|s| s.to_string()).collect()),
            labels: Labeling {
                potential: potentials.iter().map(|s| ParamPoly::symbol(s)).collect(),
                edge_labels: Vec::new(),
            },
        }
    }

    pub fn edge(&mut self, u: usize, v: usize, offset: Vec<i64>, label: ParamPoly) {
        self.graph.add_edge(u, v, offset);
        self.labels.edge_labels.push(Some(label));
    }

    fn sym_edge(&mut self, u: usize, v: usize, offset: Vec<i64>, label: &str) {
        self.edge(u, v, offset, ParamPoly::symbol(label));
    }

    /// Replaces every potential by `0`.
    pub fn zero_potential(mut self) -> Self {
        self.labels = self.labels.with_zero_potential();
        self
    }
}

fn unit(d: usize, i: usize, s: i64) -> Vec<i64> {
    let mut e = vec![0; d];
    e[i] = s;
    e
}

fn check_d(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(Error::Invalid(format!("dimension {d} < {min} for this family")));
    }
    Ok(())
}

/// Two orbits `u, v`; edges `(u, v)`, `(u, v - e_i)`. For `d = 2` the labels
/// are `alpha, beta, gamma`, otherwise `alpha, gamma_1..gamma_d`.
pub fn honeycomb_diamond(d: usize) -> Result<LabeledGraph> {
    check_d(d, 1)?;
    let mut g = LabeledGraph::new(d, &["u", "v"], &["V_u", "V_v"]);
    g.sym_edge(0, 1, vec![0; d], "alpha");
    for i in 0..d {
        let name = if d == 2 {
            ["beta", "gamma"][i].to_string()
        } else {
            format!("gamma_{}", i + 1)
        };
        g.sym_edge(0, 1, unit(d, i, -1), &name);
    }
    Ok(g)
}

/// Three orbits `u1, u2, u3` glued from two honeycomb-diamond copies.
pub fn dice(d: usize) -> Result<LabeledGraph> {
    check_d(d, 2)?;
    let mut g = LabeledGraph::new(d, &["u1", "u2", "u3"], &["V_u1", "V_u2", "V_u3"]);
    for (a, b, sym) in [(0, 1, "gamma"), (1, 2, "beta")] {
        g.sym_edge(a, b, vec![0; d], &format!("{sym}_0"));
        for i in 0..d {
            g.sym_edge(a, b, unit(d, i, -1), &format!("{sym}_{}", i + 1));
        }
    }
    Ok(g)
}

fn dense(d: usize) -> LabeledGraph {
    let mut g = LabeledGraph::new(d, &["1", "2"], &["V_1", "V_2"]);
    let family = ["beta", "gamma", "epsilon"];
    for (i, f) in family.iter().enumerate().take(d) {
        g.sym_edge(0, 0, unit(d, i, 1), &format!("{f}_1"));
        g.sym_edge(1, 1, unit(d, i, 1), &format!("{f}_4"));
    }
    g.sym_edge(0, 1, vec![0; d], "alpha");
    for (i, f) in family.iter().enumerate().take(d) {
        g.sym_edge(0, 1, unit(d, i, 1), &format!("{f}_2"));
        g.sym_edge(0, 1, unit(d, i, -1), &format!("{f}_3"));
    }
    g
}

/// The two-orbit dense planar graph.
pub fn dense_2d() -> LabeledGraph {
    dense(2)
}

/// Its three-dimensional analogue.
pub fn dense_3d() -> LabeledGraph {
    dense(3)
}

/// One orbit with a self-loop for each listed offset (one sign per pair).
pub fn one_vertex(d: usize, edges: &[(Vec<i64>, ParamPoly)]) -> Result<LabeledGraph> {
    check_d(d, 1)?;
    let mut g = LabeledGraph::new(d, &["w"], &["V"]);
    for (a, l) in edges {
        if a.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: a.len(),
            });
        }
        g.edge(0, 0, a.clone(), l.clone());
    }
    Ok(g)
}

/// Nearest-neighbour lattice `Z^d` with labels `a_1..a_d`.
pub fn square_lattice(d: usize) -> Result<LabeledGraph> {
    let edges: Vec<(Vec<i64>, ParamPoly)> = (0..d)
        .map(|i| (unit(d, i, 1), ParamPoly::symbol(&format!("a_{}", i + 1))))
        .collect();
    one_vertex(d, &edges)
}

/// A single isolated orbit with potential `V_Omega`.
pub fn isolated_vertex(d: usize) -> Result<LabeledGraph> {
    check_d(d, 1)?;
    Ok(LabeledGraph::new(d, &["omega"], &["V_Omega"]))
}

/// `Γ ⊔ Ω`; the second graph's orbit names get a `'` when they clash.
pub fn disjoint_union(a: &LabeledGraph, b: &LabeledGraph) -> Result<LabeledGraph> {
    if a.graph.d != b.graph.d {
        return Err(Error::DimensionMismatch {
            expected: a.graph.d,
            found: b.graph.d,
        });
    }
    let mut out = a.clone();
    let shift = a.graph.num_orbits();
    for name in &b.graph.vertices {
        let mut n = name.clone();
        while out.graph.vertices.contains(&n) {
            n.push('\'');
        }
        out.graph.vertices.push(n);
    }
    out.labels.potential.extend(b.labels.potential.iter().cloned());
    for (e, l) in b.graph.edges.iter().zip(&b.labels.edge_labels) {
        out.graph.add_edge(e.u + shift, e.v + shift, e.offset.clone());
        out.labels.edge_labels.push(l.clone());
    }
    Ok(out)
}

/// Names accepted by [`by_name`].
pub const FAMILIES: &[&str] = &[
    "honeycomb_diamond",
    "dice",
    "dense_2d",
    "dense_3d",
    "square_lattice",
    "isolated_vertex",
];

pub fn by_name(name: &str, d: usize) -> Result<LabeledGraph> {
    match name {
        "honeycomb_diamond" | "honeycomb" | "diamond" => honeycomb_diamond(d),
        "dice" => dice(d),
        "dense_2d" => Ok(dense_2d()),
        "dense_3d" => Ok(dense_3d()),
        "square_lattice" | "square" => square_lattice(d),
        "isolated_vertex" | "omega" => isolated_vertex(d),
        _ => Err(Error::Invalid(format!(
            "unknown family `{name}` (known: {})",
            FAMILIES.join(", ")
        ))),
    }
}

/// A nonzero rational `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn random_rational(rng: &mut impl rand::Rng) -> crate::param::Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        if p != 0 {
            return crate::param::ratio(p, rng.gen_range(1..=5));
        }
    }
}

impl LabeledGraph {
    /// Replaces every symbol in the edge labels by a seeded random nonzero
    /// rational (one value per symbol); the potential is left alone.
    pub fn with_random_labels(&self, seed: u64) -> Self {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let names: std::collections::BTreeSet<String> =
            self.labels.edge_labels.iter().flatten().flat_map(ParamPoly::symbols).collect();
        let map: std::collections::HashMap<String, ParamPoly> = names
            .into_iter()
            .map(|s| (s, ParamPoly::constant(random_rational(&mut rng))))
            .collect();
        let mut out = self.clone();
        for l in out.labels.edge_labels.iter_mut().flatten() {
            *l = l.substitute(&map);
        }
        out
    }
}
