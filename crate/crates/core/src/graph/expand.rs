//! `Q`-expansions: the same graph viewed as `QZ^d`-periodic.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{floquet_matrix, Labeling, PeriodicGraph};
use crate::laurent::LaurentPoly;
use crate::param::{rational_to_f64, ParamPoly, Rational};
use crate::{numeric, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub base: PeriodicGraph,
    pub base_labels: Labeling,
    pub q: Vec<u64>,
    pub expanded: PeriodicGraph,
    /// Labels of the expanded graph; the potential is `V_Q`.
    pub labels: Labeling,
}

/// Cells `k` of the box `0 <= k_i < q_i`, first coordinate most significant.
pub fn cells(q: &[u64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &qi in q {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..qi as i64).map(move |k| {
                    let mut p = p.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out
}

fn cell_index(k: &[i64], q: &[u64]) -> usize {
    k.iter().zip(q).fold(0, |acc, (&ki, &qi)| acc * qi as usize + ki as usize)
}

/// Name of the expanded vertex `k + v`.
pub fn expanded_name(k: &[i64], v: &str) -> String {
    let ks: Vec<String> = k.iter().map(i64::to_string).collect();
    format!("{v}@{}", ks.join(","))
}

/// `|Q|`.
pub fn volume(q: &[u64]) -> u64 {
    q.iter().product()
}

/// Expands with potential `potential_q` keyed by expanded vertex name; when
/// `None`, the base potential is copied to every cell (`Z^d`-periodic).
pub fn q_expand(
    g: &PeriodicGraph,
    c: &Labeling,
    q: &[u64],
    potential_q: Option<&HashMap<String, ParamPoly>>,
) -> Result<QExpansion> {
    if q.len() != g.d {
        return Err(Error::DimensionMismatch {
            expected: g.d,
            found: q.len(),
        });
    }
    if q.contains(&0) {
        return Err(Error::Invalid("Q entries must be positive".into()));
    }
    let m = g.num_orbits();
    let ks = cells(q);
    let mut vertices = Vec::with_capacity(ks.len() * m);
    let mut potential = Vec::with_capacity(ks.len() * m);
    for k in &ks {
        for (rho, name) in g.vertices.iter().enumerate() {
            let n = expanded_name(k, name);
            let v = match potential_q {
                None => c.potential[rho].clone(),
                Some(map) => map
                    .get(&n)
                    .cloned()
                    .ok_or_else(|| Error::Invalid(format!("potential_Q missing vertex {n}")))?,
            };
            vertices.push(n);
            potential.push(v);
        }
    }
    let mut expanded = PeriodicGraph::new(g.d, vertices);
    let mut edge_labels = Vec::new();
    for (e, l) in g.edges.iter().zip(&c.edge_labels) {
        for k in &ks {
            let (mut kt, mut carry) = (Vec::with_capacity(g.d), Vec::with_capacity(g.d));
            for ((ki, ai), &qi) in k.iter().zip(&e.offset).zip(q) {
                let t = ki + ai;
                kt.push(t.rem_euclid(qi as i64));
                carry.push(t.div_euclid(qi as i64));
            }
            expanded.add_edge(
                cell_index(k, q) * m + e.u,
                cell_index(&kt, q) * m + e.v,
                carry,
            );
            edge_labels.push(l.clone());
        }
    }
    Ok(QExpansion {
        base: g.clone(),
        base_labels: c.clone(),
        q: q.to_vec(),
        expanded,
        labels: Labeling {
            potential,
            edge_labels,
        },
    })
}

impl QExpansion {
    pub fn size(&self) -> usize {
        self.expanded.num_orbits()
    }

    /// `D_Q(z, λ)`.
    pub fn dispersion(&self, cap: usize) -> Result<LaurentPoly> {
        super::dispersion(&self.expanded, &self.labels, cap)
    }

    /// Whether `V_Q` is the same in every cell.
    pub fn potential_is_zd_periodic(&self) -> bool {
        let m = self.base.num_orbits();
        self.labels
            .potential
            .chunks(m)
            .all(|c| c == &self.labels.potential[..m])
    }

    /// Roots of unity `μ_j = (e^{2πi j_1/q_1}, ..)`, indexed like [`cells`].
    pub fn roots_of_unity(&self) -> Vec<Vec<Complex64>> {
        cells(&self.q)
            .iter()
            .map(|j| {
                j.iter()
                    .zip(&self.q)
                    .map(|(&ji, &qi)| Complex64::from_polar(1.0, 2.0 * PI * ji as f64 / qi as f64))
                    .collect()
            })
            .collect()
    }

    /// `V̂[ρ][μ][v] = (1/|Q|) Σ_ω V_Q(v + ω) (μ/ρ)^ω`.
    pub fn hat_potential(&self, env: &HashMap<String, Rational>) -> Result<Vec<Vec<Vec<Complex64>>>> {
        let m = self.base.num_orbits();
        let n = volume(&self.q) as usize;
        let mus = self.roots_of_unity();
        let ks = cells(&self.q);
        let vals: Vec<f64> = self
            .labels
            .potential
            .iter()
            .map(|p| p.eval(env).map(|r| rational_to_f64(&r)))
            .collect::<Result<_>>()?;
        let mut out = vec![vec![vec![Complex64::default(); m]; n]; n];
        for (r, rho) in mus.iter().enumerate() {
            for (s, mu) in mus.iter().enumerate() {
                for v in 0..m {
                    let mut acc = Complex64::default();
                    for (w, k) in ks.iter().enumerate() {
                        let mut ph = Complex64::new(1.0, 0.0);
                        for i in 0..k.len() {
                            ph *= (mu[i] / rho[i]).powi(k[i] as i32);
                        }
                        acc += ph * vals[w * m + v];
                    }
                    out[r][s][v] = acc / n as f64;
                }
            }
        }
        Ok(out)
    }

    /// Numeric `L̂_Q(z, λ)`: diagonal blocks `L_0(μ z) + V̂_{μμ}`, off-diagonal
    /// blocks `diag V̂_{ρμ}`, where `L_0` has zero potential.
    pub fn hat_matrix(
        &self,
        z: &[Complex64],
        lambda: Complex64,
        env: &HashMap<String, Rational>,
    ) -> Result<Vec<Complex64>> {
        let m = self.base.num_orbits();
        let n = volume(&self.q) as usize;
        let size = n * m;
        let hat = self.hat_potential(env)?;
        let l0 = floquet_matrix(&self.base, &self.base_labels.with_zero_potential())?;
        let mus = self.roots_of_unity();
        let mut out = vec![Complex64::default(); size * size];
        for (i, mu) in mus.iter().enumerate() {
            let mz: Vec<Complex64> = mu.iter().zip(z).map(|(a, b)| a * b).collect();
            let block = l0.eval_numeric(&mz, lambda, env)?;
            for u in 0..m {
                for v in 0..m {
                    out[(i * m + u) * size + i * m + v] = block[u * m + v];
                }
            }
            for j in 0..n {
                for u in 0..m {
                    out[(i * m + u) * size + j * m + u] += hat[i][j][u];
                }
            }
        }
        Ok(out)
    }

    /// Relative error of `D_Q(z^Q, λ) = det(L̂_Q(z, λ))` at one point.
    pub fn hat_identity_error(
        &self,
        dq: &LaurentPoly,
        z: &[Complex64],
        lambda: Complex64,
        env: &HashMap<String, Rational>,
    ) -> Result<f64> {
        let zq: Vec<Complex64> = z.iter().zip(&self.q).map(|(x, &q)| x.powu(q as u32)).collect();
        let lhs = dq.eval_numeric(&zq, lambda, env)?;
        let size = self.size();
        let rhs = numeric::det_lu(self.hat_matrix(z, lambda, env)?, size);
        Ok(rel_err(lhs, rhs))
    }

    /// Relative error of `D_Q(z^Q, λ) = Π_μ D(μ z, λ)` at one point, where
    /// `D` uses the base labeling.
    pub fn product_identity_error(
        &self,
        dq: &LaurentPoly,
        d: &LaurentPoly,
        z: &[Complex64],
        lambda: Complex64,
        env: &HashMap<String, Rational>,
    ) -> Result<f64> {
        let zq: Vec<Complex64> = z.iter().zip(&self.q).map(|(x, &q)| x.powu(q as u32)).collect();
        let lhs = dq.eval_numeric(&zq, lambda, env)?;
        let mut rhs = Complex64::new(1.0, 0.0);
        for mu in self.roots_of_unity() {
            let mz: Vec<Complex64> = mu.iter().zip(z).map(|(a, b)| a * b).collect();
            rhs *= d.eval_numeric(&mz, lambda, env)?;
        }
        Ok(rel_err(lhs, rhs))
    }
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// A seeded random rational potential on the expanded vertices, keyed by
/// [`expanded_name`]; generally only `QZ^d`-periodic.
pub fn random_potential(g: &PeriodicGraph, q: &[u64], seed: u64) -> HashMap<String, ParamPoly> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = HashMap::new();
    for k in cells(q) {
        for v in &g.vertices {
            let r = super::builders::random_rational(&mut rng);
            out.insert(expanded_name(&k, v), ParamPoly::constant(r));
        }
    }
    out
}
