//! Floating-point and modular kernels: LU determinants, Hermitian
//! eigenvalues, characteristic polynomials over `F_p`, polynomial roots.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::param::Rational;

/// Determinant of a row-major complex matrix by LU with partial pivoting.
pub fn det_lu(mut a: Vec<Complex64>, n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
            .expect("nonempty");
        if a[p * n + k].norm() == 0.0 {
            return Complex64::zero();
        }
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            det = -det;
        }
        let piv = a[k * n + k];
        det *= piv;
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            if f != Complex64::zero() {
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
    }
    det
}

/// Eigenvalues (ascending) of a Hermitian row-major matrix, via the real
/// symmetric embedding `[[A, -B], [B, A]]` and cyclic Jacobi rotations.
pub fn hermitian_eigenvalues(h: &[Complex64], n: usize) -> Vec<f64> {
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            s[i * m + j] = z.re;
            s[(i + n) * m + j + n] = z.re;
            s[i * m + j + n] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let mut ev = jacobi_eigenvalues(s, m);
    ev.sort_by(f64::total_cmp);
    // every eigenvalue appears twice in the embedding
    ev.into_iter().step_by(2).collect()
}

/// Eigenvalues of a real symmetric matrix (unsorted).
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Arithmetic modulo the Mersenne prime `2^61 - 1`.
pub mod modp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn add(a: u64, b: u64) -> u64 {
        (a + b) % P
    }
    pub fn sub(a: u64, b: u64) -> u64 {
        (a + P - b) % P
    }
    pub fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }
    pub fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }
    pub fn from_i64(x: i64) -> u64 {
        x.rem_euclid(P as i64) as u64
    }
}

/// Reduces a rational mod `P`; `None` when `P` divides the denominator.
pub fn rational_mod_p(r: &Rational) -> Option<u64> {
    let p = num_bigint::BigInt::from(modp::P);
    let num = r.numer().mod_floor(&p).to_u64()?;
    let den = r.denom().mod_floor(&p).to_u64()?;
    (den != 0).then(|| modp::mul(num, modp::inv(den)))
}

/// Characteristic polynomial `det(x I - A)` over `F_P` (coefficients in
/// increasing degree, monic), by Hessenberg reduction.
pub fn charpoly_mod_p(mut a: Vec<u64>, n: usize) -> Vec<u64> {
    use modp::*;
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            for j in 0..n {
                a.swap(piv * n + j, (k + 1) * n + j);
            }
            for i in 0..n {
                a.swap(i * n + piv, i * n + k + 1);
            }
        }
        let inv_p = inv(a[(k + 1) * n + k]);
        for i in k + 2..n {
            let f = mul(a[i * n + k], inv_p);
            if f == 0 {
                continue;
            }
            for j in 0..n {
                a[i * n + j] = sub(a[i * n + j], mul(f, a[(k + 1) * n + j]));
            }
            for r in 0..n {
                a[r * n + k + 1] = add(a[r * n + k + 1], mul(f, a[r * n + i]));
            }
        }
    }
    // p_m(x) = (x - h_mm) p_{m-1} - Σ h_{im} (Π subdiag) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (k, &c) in polys[m].iter().enumerate() {
            next[k + 1] = add(next[k + 1], c);
            next[k] = sub(next[k], mul(a[m * n + m], c));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mul(prod, a[(i + 1) * n + i]);
            let f = mul(prod, a[i * n + m]);
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = sub(next[k], mul(f, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Monic gcd over `F_P`.
pub fn poly_gcd_mod_p(a: &[u64], b: &[u64]) -> Vec<u64> {
    use modp::*;
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let f = mul(*a.last().unwrap(), inv(*b.last().unwrap()));
            let s = a.len() - b.len();
            for (k, &c) in b.iter().enumerate() {
                a[s + k] = sub(a[s + k], mul(f, c));
            }
            a.pop();
            if a.is_empty() {
                a.push(0);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let lc = inv(*a.last().unwrap());
    a.iter().map(|&c| mul(c, lc)).collect()
}

/// All complex roots of `Σ c_k x^k` (Durand–Kerner).
pub fn poly_roots(c: &[f64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lc = c[deg];
    let monic: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let bound = 1.0 + monic[..deg].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * bound).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &k| acc * x + k);
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den == Complex64::zero() {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_det() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let a = vec![c(0.0), c(2.0), c(3.0), c(1.0)];
        assert!((det_lu(a, 2) - c(-6.0)).norm() < 1e-12);
        assert_eq!(det_lu(vec![c(0.0); 4], 2), c(0.0));
    }

    #[test]
    fn hermitian_spectrum() {
        let i = Complex64::new(0.0, 1.0);
        let o = Complex64::new(1.0, 0.0);
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let ev = hermitian_eigenvalues(&[o, i, -i, o], 2);
        assert!((ev[0] - 0.0).abs() < 1e-12 && (ev[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn charpoly_matches_trace_and_det() {
        use modp::*;
        let a: Vec<i64> = vec![2, 1, 0, 3, 1, 4, 1, 5, 0, 2, 6, 1, 1, 1, 2, 7];
        let am: Vec<u64> = a.iter().map(|&x| from_i64(x)).collect();
        let cp = charpoly_mod_p(am, 4);
        assert_eq!(cp.len(), 5);
        assert_eq!(cp[4], 1);
        assert_eq!(cp[3], from_i64(-(2 + 4 + 6 + 7)));
        let det = det_lu(a.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect(), 4).re.round() as i64;
        assert_eq!(cp[0], from_i64(det));
    }

    #[test]
    fn gcd_and_roots() {
        use modp::*;
        // (x-1)(x-2) and (x-1)(x+3)
        let a = vec![2, sub(0, 3), 1];
        let b = vec![sub(0, 3), 2, 1];
        assert_eq!(poly_gcd_mod_p(&a, &b), vec![sub(0, 1), 1]);
        let mut r: Vec<f64> = poly_roots(&[6.0, -5.0, 1.0]).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 2.0).abs() < 1e-9 && (r[1] - 3.0).abs() < 1e-9);
        assert_eq!(rational_mod_p(&Rational::new(1.into(), 2.into())), Some(inv(2)));
    }
}
