//! Modular test for pure-λ factors of `det(L(z) - λ)`.
//!
//! A monic factor `g(λ)` of the determinant divides the characteristic
//! polynomial of `L(z₀)` for every `z₀` and every specialisation of the
//! symbolic labels; its reduction mod `P` stays nonconstant. So a trivial
//! gcd of a few characteristic polynomials over `F_P` rules such factors out.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};

use crate::matrix::LaurentMatrix;
use crate::numeric::{charpoly_mod_p, modp, poly_gcd_mod_p, rational_mod_p};
use crate::param::ParamPoly;

fn param_mod_p(c: &ParamPoly, env: &BTreeMap<String, u64>) -> Option<u64> {
    let mut acc = 0;
    for (m, r) in c.terms() {
        let mut t = rational_mod_p(r)?;
        for (s, e) in m {
            t = modp::mul(t, modp::pow(env[s], u64::from(*e)));
        }
        acc = modp::add(acc, t);
    }
    Some(acc)
}

/// Evaluates `m` with its λ-terms dropped and the given point; `None` if a denominator
/// vanishes mod `P`.
fn eval_mod_p(m: &LaurentMatrix, z: &[u64], env: &BTreeMap<String, u64>) -> Option<Vec<u64>> {
    let n = m.size();
    let zinv: Vec<u64> = z.iter().map(|&x| modp::inv(x)).collect();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for (e, c) in m.get(i, j).terms() {
                if e.lambda > 0 {
                    continue;
                }
                let mut t = param_mod_p(c, env)?;
                for (k, &a) in e.z.iter().enumerate() {
                    let base = if a < 0 { zinv[k] } else { z[k] };
                    t = modp::mul(t, modp::pow(base, a.unsigned_abs()));
                }
                acc = modp::add(acc, t);
            }
            out.push(acc);
        }
    }
    Some(out)
}

/// Number of sample points used before giving up.
pub const MAX_POINTS: usize = 6;

/// `Some(k)` when `k` sampled characteristic polynomials already have a
/// trivial gcd (so `det(m)` has no nonconstant factor in λ alone); `None`
/// when every sample shares a common factor.
pub fn no_lambda_factor(m: &LaurentMatrix, seed: u64) -> Option<usize> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut symbols = std::collections::BTreeSet::new();
    for i in 0..m.size() {
        for j in 0..m.size() {
            symbols.extend(m.get(i, j).symbols());
        }
    }
    let env: BTreeMap<String, u64> = symbols
        .into_iter()
        .map(|s| (s, rng.gen_range(1..modp::P)))
        .collect();
    let mut g: Option<Vec<u64>> = None;
    for k in 1..=MAX_POINTS {
        let z: Vec<u64> = (0..m.num_z_vars()).map(|_| rng.gen_range(2..modp::P)).collect();
        let Some(a) = eval_mod_p(m, &z, &env) else { continue };
        let cp = charpoly_mod_p(a, m.size());
        let next = match &g {
            None => cp,
            Some(prev) => poly_gcd_mod_p(prev, &cp),
        };
        if next.len() == 1 {
            return Some(k);
        }
        g = Some(next);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::{disjoint_union, honeycomb_diamond, isolated_vertex};
    use crate::graph::floquet_matrix;

    #[test]
    fn honeycomb_has_none_union_has_one() {
        let h = honeycomb_diamond(2).unwrap();
        let m = floquet_matrix(&h.graph, &h.labels).unwrap();
        assert!(no_lambda_factor(&m, 1).is_some());
        let u = disjoint_union(&h, &isolated_vertex(2).unwrap()).unwrap();
        let m = floquet_matrix(&u.graph, &u.labels).unwrap();
        assert_eq!(no_lambda_factor(&m, 1), None);
    }
}
