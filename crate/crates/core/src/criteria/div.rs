//! The lattice invariant `Div_{j,σ}`.

use crate::lattice::{self, IMatrix};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// `Div_{j,σ}(f)` with 0-based `j ∈ σ ⊆ {0..d-1}`: the nonnegative generator
/// of the `j`-th coordinates of vectors in the Z-span of `supp(f)` whose
/// coordinates in `σ \ {j}` vanish. The λ-coordinate is unconstrained.
pub fn div_j_sigma(f: &LaurentPoly, j: usize, sigma: &[usize]) -> Result<u64> {
    if !sigma.contains(&j) {
        return Err(Error::Invalid(format!("j = {j} not in σ")));
    }
    let d = f.num_z_vars();
    if let Some(&bad) = sigma.iter().find(|&&i| i >= d) {
        return Err(Error::Invalid(format!("index {bad} out of range")));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts = lattice::to_i128(&f.support_points());
    Ok(div_of_points(&pts, j, sigma))
}

pub(crate) fn div_of_points(pts: &IMatrix, j: usize, sigma: &[usize]) -> u64 {
    let basis = lattice::lattice_basis(pts);
    if basis.is_empty() {
        return 0;
    }
    let others: Vec<usize> = sigma.iter().copied().filter(|&i| i != j).collect();
    let m: IMatrix = basis.iter().map(|b| others.iter().map(|&i| b[i]).collect()).collect();
    let ker = lattice::left_kernel(&m);
    let js: Vec<i128> = ker
        .iter()
        .map(|c| c.iter().zip(&basis).map(|(x, b)| x * b[j]).sum())
        .collect();
    lattice::gcd_all(&js).unsigned_abs() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gcd;
    use proptest::prelude::*;

    fn poly(pts: &[[i64; 3]]) -> LaurentPoly {
        pts.iter().fold(LaurentPoly::zero(2), |acc, p| {
            &acc + &LaurentPoly::term(&p[..2], p[2] as u32, 1)
        })
    }

    #[test]
    fn worked_values() {
        let f = poly(&[[2, 2, 0], [4, 0, 1], [0, 0, 3]]);
        assert_eq!(div_j_sigma(&f, 0, &[0]).unwrap(), 2);
        assert_eq!(div_j_sigma(&f, 0, &[0, 1]).unwrap(), 4);
        assert_eq!(div_j_sigma(&poly(&[[1, 0, 0], [0, 0, 1]]), 0, &[0, 1]).unwrap(), 1);
        assert_eq!(div_j_sigma(&poly(&[[0, 0, 3]]), 0, &[0]).unwrap(), 0);
        assert!(div_j_sigma(&f, 1, &[0]).is_err());
    }

    #[test]
    fn printed_and_corrected_h() {
        // z1^3 z2^2 + z1^2 z2^-1 + λ gives 7; with z1^-2 z2^-1 instead it gives 1
        let h = poly(&[[3, 2, 0], [2, -1, 0], [0, 0, 1]]);
        assert_eq!(div_j_sigma(&h, 0, &[0, 1]).unwrap(), 7);
        assert_eq!(brute(&[[3, 2, 0], [2, -1, 0], [0, 0, 1]], 0, &[0, 1]), 7);
        let h2 = poly(&[[3, 2, 0], [-2, -1, 0], [0, 0, 1]]);
        assert_eq!(div_j_sigma(&h2, 0, &[0, 1]).unwrap(), 1);
    }

    /// gcd of j-coordinates over all Σ ζ_i θ_i with |ζ_i| ≤ 4 meeting the
    /// constraints.
    fn brute(pts: &[[i64; 3]], j: usize, sigma: &[usize]) -> u64 {
        let n = pts.len();
        let mut g = 0i128;
        let mut z = vec![-4i64; n];
        loop {
            let v: Vec<i64> = (0..3).map(|k| (0..n).map(|i| z[i] * pts[i][k]).sum()).collect();
            if sigma.iter().all(|&i| i == j || v[i] == 0) {
                g = gcd(g, v[j] as i128);
            }
            let mut k = 0;
            while k < n && z[k] == 4 {
                z[k] = -4;
                k += 1;
            }
            if k == n {
                break;
            }
            z[k] += 1;
        }
        g as u64
    }

    fn support() -> impl Strategy<Value = Vec<[i64; 3]>> {
        prop::collection::btree_set((-3i64..=3, -3i64..=3, 0i64..=3), 1..=4)
            .prop_map(|s| s.into_iter().map(|(a, b, c)| [a, b, c]).collect())
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let pts: Vec<[i64; 3]> = (0..n)
                .map(|_| [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(0..=3)])
                .collect();
            let j = rng.gen_range(0..2);
            let sigma: Vec<usize> = if rng.gen() { vec![0, 1] } else { vec![j] };
            assert_eq!(div_j_sigma(&poly(&pts), j, &sigma).unwrap(), brute(&pts, j, &sigma), "{pts:?}");
        }
    }

    proptest! {
        #[test]
        fn monotone_in_sigma(pts in support(), j in 0usize..2) {
            let f = poly(&pts);
            let small = div_j_sigma(&f, j, &[j]).unwrap();
            let big = div_j_sigma(&f, j, &[0, 1]).unwrap();
            prop_assert!(small == 0 && big == 0 || small != 0 && big % small == 0);
        }
    }
}
