//! Flat bands: linear factors `λ - r` that do not depend on `z`.

use num_traits::Zero;

use crate::laurent::LaurentPoly;
use crate::numeric::poly_roots;
use crate::param::{rational_to_f64, ParamPoly, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial over Q, increasing degree, no trailing zeros.
pub type UPoly = Vec<Rational>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut a = a.clone();
    let lb = b.last().expect("nonzero divisor");
    while a.len() >= b.len() {
        let f = a.last().unwrap() / lb;
        let s = a.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            a[s + k] -= &f * c;
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn monic(mut p: UPoly) -> UPoly {
    if let Some(l) = p.last().cloned() {
        p.iter_mut().for_each(|c| *c /= &l);
    }
    p
}

/// Monic gcd; the gcd of zeros is the empty polynomial.
pub fn upoly_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn eval(p: &UPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `λ - r` assuming `r` is a root.
fn deflate(p: &UPoly, r: &Rational) -> UPoly {
    let mut out = vec![Rational::zero(); p.len() - 1];
    let mut carry = Rational::zero();
    for k in (1..p.len()).rev() {
        carry = &p[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

fn derivative(p: &UPoly) -> UPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect()
}

/// Exact quotient of `a` by a divisor `b`.
fn quotient(a: &UPoly, b: &UPoly) -> UPoly {
    if b.len() <= 1 {
        return monic(a.clone());
    }
    let mut a = a.clone();
    let mut q = vec![Rational::zero(); a.len() + 1 - b.len()];
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let f = a.last().unwrap() / &lb;
        let s = a.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            a[s + k] -= &f * c;
        }
        q[s] = f;
        a.pop();
    }
    monic(q)
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0).then(|| Rational::new(h1.into(), k1.into()))
}

/// The monic pure-λ part of `f`: gcd over `a` of the coefficient
/// polynomials `c_a(λ)` in `f = Σ_a c_a(λ) z^a`.
pub fn lambda_content(f: &LaurentPoly) -> Result<UPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_numeric() {
        let s = f.symbols().into_iter().next().unwrap_or_default();
        return Err(Error::UnboundParameter(s));
    }
    let mut g = UPoly::new();
    for cs in f.lambda_coefficients().values() {
        let c: UPoly = cs.iter().map(|p| p.as_constant().expect("numeric")).collect();
        g = upoly_gcd(&g, &c);
        if g.len() == 1 {
            break;
        }
    }
    Ok(g)
}

/// Rational flat bands `(r, k)` of `f`, with `k` the exact multiplicity of
/// `λ - r` as a factor of `f`, sorted by `r`.
pub fn flat_bands(f: &LaurentPoly) -> Result<Vec<(Rational, u32)>> {
    let content = lambda_content(f)?;
    // roots of the square-free part are simple, which keeps them accurate
    let mut g = quotient(&content, &upoly_gcd(&content, &derivative(&content)));
    let mut out: Vec<(Rational, u32)> = Vec::new();
    while g.len() > 1 {
        // λ = 0 first, then numeric candidates checked exactly
        let found = if g[0].is_zero() {
            Some(Rational::zero())
        } else {
            let approx: Vec<f64> = g.iter().map(rational_to_f64).collect();
            poly_roots(&approx)
                .into_iter()
                .filter(|z| z.im.abs() < 1e-6 * (1.0 + z.re.abs()))
                .filter_map(|z| rationalize(z.re, 1_000_000))
                .find(|r| eval(&g, r).is_zero())
        };
        let Some(r) = found else { break };
        let mut k = 0;
        while g.len() > 1 && eval(&g, &r).is_zero() {
            g = deflate(&g, &r);
            k += 1;
        }
        out.push((r, k));
    }
    out.sort();
    // confirm each factor and its multiplicity by exact division
    for (r, k) in &mut out {
        let lin = linear_factor(f.num_z_vars(), r);
        let mut q = f.clone();
        let mut m = 0;
        while let Some(next) = q.exact_divide(&lin)? {
            q = next;
            m += 1;
        }
        *k = m;
    }
    Ok(out)
}

/// `λ - r` in `d` variables.
pub fn linear_factor(d: usize, r: &Rational) -> LaurentPoly {
    &LaurentPoly::lambda(d) - &LaurentPoly::constant(d, ParamPoly::constant(r.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::ratio;
    use rand::{Rng, SeedableRng};

    fn x_plus(d: usize, c: i64) -> LaurentPoly {
        &LaurentPoly::var(d, 0) + &LaurentPoly::term(&vec![0; d], 1, c)
    }

    #[test]
    fn gcd_basics() {
        let a: UPoly = [-1, 0, 1].iter().map(|&x| Rational::from_integer(x.into())).collect();
        let b: UPoly = [1, 1].iter().map(|&x| Rational::from_integer(x.into())).collect();
        assert_eq!(upoly_gcd(&a, &b), b);
        assert_eq!(upoly_gcd(&UPoly::new(), &a), a);
    }

    #[test]
    fn none_without_pure_factor() {
        assert!(flat_bands(&x_plus(2, 1)).unwrap().is_empty());
        let s = &LaurentPoly::var(1, 0) + &LaurentPoly::constant(1, ParamPoly::symbol("a"));
        assert!(flat_bands(&s).is_err());
    }

    #[test]
    fn multiplicity_grows_by_k() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let d = rng.gen_range(1..=2);
            let base = &x_plus(d, rng.gen_range(-3..=3)) * &linear_factor(d, &ratio(1, 2));
            let r = ratio(rng.gen_range(-20..=20), rng.gen_range(1..=7));
            let k = rng.gen_range(1..=3u32);
            let f = &base * &linear_factor(d, &r).pow(k);
            let before = flat_bands(&base).unwrap();
            let after = flat_bands(&f).unwrap();
            let mult = |v: &[(Rational, u32)]| v.iter().find(|(x, _)| *x == r).map_or(0, |p| p.1);
            assert_eq!(mult(&after), mult(&before) + k, "r = {r}");
        }
    }

    #[test]
    fn rationalize_recovers_fractions() {
        assert_eq!(rationalize(-0.75, 100), Some(ratio(-3, 4)));
        assert_eq!(rationalize(3.0, 100), Some(ratio(3, 1)));
    }
}
