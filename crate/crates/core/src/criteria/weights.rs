//! Tropical lower bounds on the potential-dependent part of a determinant.
//!
//! `det(K + diag(V))` expands as `Σ_S Π_{i∈S} V_i · det(K with S removed)`.
//! Giving every potential entry weight 0 and every kinetic entry the least
//! `w`-weight of its support, the least weight of any term with `S ≠ ∅` is
//! at least `min_k` (min-cost assignment of the matrix with row and column
//! `k` deleted, diagonal weights capped at 0).

use crate::matrix::LaurentMatrix;
use crate::par::ExecMode;

const INF: i64 = i64::MAX / 4;

/// Minimum-cost perfect assignment (Hungarian method with potentials);
/// `None` when every assignment uses an infinite entry.
pub fn min_assignment(cost: &[Vec<Option<i64>>]) -> Option<i64> {
    let n = cost.len();
    if n == 0 {
        return Some(0);
    }
    let c = |i: usize, j: usize| cost[i - 1][j - 1].unwrap_or(INF);
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = c(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let total: i64 = (1..=n).map(|j| c(p[j], j)).sum();
    (total < INF / 2).then_some(total)
}

/// Least `w`-weight of each entry's support (`None` for zero entries).
pub fn entry_weights(k: &LaurentMatrix, w: &[i64]) -> Vec<Vec<Option<i64>>> {
    let n = k.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    k.get(i, j)
                        .terms()
                        .map(|(e, _)| {
                            let zw: i64 = e.z.iter().zip(w).map(|(a, b)| a * b).sum();
                            zw + i64::from(e.lambda) * w[e.z.len()]
                        })
                        .min()
                })
                .collect()
        })
        .collect()
}

/// Lower bound on the `w`-weight of every term of `det(K + diag(V))` that
/// involves at least one potential entry; `None` means no such term exists.
pub fn potential_weight_bound(k: &LaurentMatrix, w: &[i64], mode: ExecMode) -> Option<i64> {
    let mut nu = entry_weights(k, w);
    for (i, row) in nu.iter_mut().enumerate() {
        row[i] = Some(row[i].map_or(0, |x| x.min(0)));
    }
    let n = nu.len();
    let minors = mode.map_range(n, |del| {
        let sub: Vec<Vec<Option<i64>>> = (0..n)
            .filter(|&i| i != del)
            .map(|i| (0..n).filter(|&j| j != del).map(|j| nu[i][j]).collect())
            .collect();
        min_assignment(&sub)
    });
    minors.into_iter().flatten().min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::param::ParamPoly;
    use rand::{Rng, SeedableRng};

    fn brute(cost: &[Vec<Option<i64>>]) -> Option<i64> {
        fn go(cost: &[Vec<Option<i64>>], row: usize, used: &mut Vec<bool>) -> Option<i64> {
            if row == cost.len() {
                return Some(0);
            }
            let mut best: Option<i64> = None;
            for j in 0..cost.len() {
                if used[j] {
                    continue;
                }
                let Some(c) = cost[row][j] else { continue };
                used[j] = true;
                if let Some(rest) = go(cost, row + 1, used) {
                    best = Some(best.map_or(c + rest, |b: i64| b.min(c + rest)));
                }
                used[j] = false;
            }
            best
        }
        go(cost, 0, &mut vec![false; cost.len()])
    }

    #[test]
    fn hungarian_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(0..=6);
            let cost: Vec<Vec<Option<i64>>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| (rng.gen_range(0..4) > 0).then(|| rng.gen_range(-9..=9)))
                        .collect()
                })
                .collect();
            assert_eq!(min_assignment(&cost), brute(&cost), "{cost:?}");
        }
    }

    /// The bound is compared against the actual least weight of the
    /// potential-dependent terms of a symbolic determinant.
    #[test]
    fn bound_is_a_lower_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let mut k = LaurentMatrix::zeros(n, 1);
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        k.set(i, j, &LaurentPoly::term(&[0], 0, 2) - &LaurentPoly::lambda(1));
                    } else if rng.gen_range(0..3) > 0 {
                        k.set(i, j, LaurentPoly::term(&[rng.gen_range(-2..=2)], 0, rng.gen_range(1..=3)));
                    }
                }
            }
            let mut full = k.clone();
            for i in 0..n {
                full.add_to(i, i, &LaurentPoly::constant(1, ParamPoly::symbol(&format!("V{i}"))));
            }
            let det = full.determinant(8).unwrap();
            let w = [rng.gen_range(-3..=3), rng.gen_range(-3..=-1)];
            let actual = det
                .terms()
                .filter(|(_, c)| !c.symbols().is_empty())
                .map(|(e, _)| e.z[0] * w[0] + i64::from(e.lambda) * w[1])
                .min();
            let bound = potential_weight_bound(&k, &w, ExecMode::Sequential);
            if let Some(a) = actual {
                assert!(bound.unwrap() <= a);
            }
            assert_eq!(bound, potential_weight_bound(&k, &w, ExecMode::Parallel));
        }
    }
}
