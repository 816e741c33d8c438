//! Laurent polynomials in `z_1..z_d` and `λ` over [`ParamPoly`] coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::param::{
    format_rational, monomial_key, parse_monomial_key, parse_rational, rational_to_f64,
    ParamMonomial, ParamPoly, Rational,
};
use crate::{Error, Result};

/// Exponent of a monomial `z^a λ^k`. The derived order compares `lambda`
/// first and then `z` lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector {
    pub lambda: u32,
    pub z: Vec<i64>,
}

impl ExponentVector {
    pub fn new(z: Vec<i64>, lambda: u32) -> Self {
        Self { lambda, z }
    }

    pub fn zero(d: usize) -> Self {
        Self::new(vec![0; d], 0)
    }

    /// The point `(a_1, .., a_d, k)` in `Z^{d+1}`.
    pub fn point(&self) -> Vec<i64> {
        let mut p = self.z.clone();
        p.push(self.lambda as i64);
        p
    }

    pub fn from_point(p: &[i64]) -> Self {
        let (l, z) = p.split_last().expect("nonempty point");
        assert!(*l >= 0, "negative λ exponent");
        Self::new(z.to_vec(), *l as u32)
    }

    fn add(&self, other: &Self) -> Self {
        Self::new(
            self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
            self.lambda + other.lambda,
        )
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, ParamPoly>,
}

impl LaurentPoly {
    pub fn zero(d: usize) -> Self {
        Self {
            nvars: d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, ParamPoly::one())
    }

    pub fn constant(d: usize, c: ParamPoly) -> Self {
        Self::monomial(ExponentVector::zero(d), c)
    }

    pub fn monomial(e: ExponentVector, c: ParamPoly) -> Self {
        let mut p = Self::zero(e.z.len());
        p.add_term(e, c);
        p
    }

    /// `c · z^z λ^lambda` with an integer coefficient.
    pub fn term(z: &[i64], lambda: u32, c: i64) -> Self {
        Self::monomial(ExponentVector::new(z.to_vec(), lambda), ParamPoly::from_int(c))
    }

    pub fn lambda(d: usize) -> Self {
        Self::monomial(ExponentVector::new(vec![0; d], 1), ParamPoly::one())
    }

    pub fn var(d: usize, i: usize) -> Self {
        let mut z = vec![0; d];
        z[i] = 1;
        Self::monomial(ExponentVector::new(z, 0), ParamPoly::one())
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (ExponentVector, ParamPoly)>) -> Self {
        let mut p = Self::zero(d);
        for (e, c) in terms {
            assert_eq!(e.z.len(), d, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn num_z_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Option<&ParamPoly> {
        self.terms.get(e)
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiplies by the unit `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let z = e.z.iter().zip(shift).map(|(a, b)| a + b).collect();
                    (ExponentVector::new(z, e.lambda), c.clone())
                })
                .collect(),
        }
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Support as points of `Z^{d+1}` (λ last), in canonical order.
    pub fn support_points(&self) -> Vec<Vec<i64>> {
        self.terms.keys().map(ExponentVector::point).collect()
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.lambda).max()
    }

    /// Restriction of `self` to the support points minimising `w · a`,
    /// where `w` has length `d + 1` (λ component last).
    pub fn facial_polynomial(&self, w: &[i64]) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if w.len() != self.nvars + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.nvars + 1,
                found: w.len(),
            });
        }
        let weight = |e: &ExponentVector| -> i64 {
            e.z.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() + e.lambda as i64 * w[self.nvars]
        };
        let min = self.terms.keys().map(weight).min().expect("nonzero");
        Ok(Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weight(e) == min)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// `f(z_1^{q_1}, .., z_d^{q_d}, λ)`.
    pub fn substitute_power(&self, q: &[u64]) -> Result<Self> {
        if q.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: q.len(),
            });
        }
        Ok(Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let z = e.z.iter().zip(q).map(|(a, qi)| a * *qi as i64).collect();
                    (ExponentVector::new(z, e.lambda), c.clone())
                })
                .collect(),
        })
    }

    /// `f(z, λ_0)`.
    pub fn specialize_lambda(&self, lambda0: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let f = num_traits::pow(lambda0.clone(), e.lambda as usize);
            out.add_term(ExponentVector::new(e.z.clone(), 0), c.scale(&f));
        }
        out
    }

    /// Applies `map` to every coefficient (e.g. binding parameters).
    pub fn map_coeffs(&self, map: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), map(c));
        }
        out
    }

    pub fn substitute_params(&self, map: &HashMap<String, ParamPoly>) -> Self {
        self.map_coeffs(|c| c.substitute(map))
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms.values().flat_map(ParamPoly::symbols).collect()
    }

    /// True when no coefficient mentions a parameter.
    pub fn is_numeric(&self) -> bool {
        self.terms.values().all(|c| c.as_constant().is_some())
    }

    pub fn is_monomial(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.terms.len() == 1)
    }

    /// Divides by the smallest support monomial in canonical order, so the
    /// result contains the exponent `0` and keeps `λ`-exponents nonnegative.
    pub fn normalize_monomial_unit(&self) -> Result<Self> {
        let first = self.terms.keys().next().ok_or(Error::ZeroPolynomial)?;
        let lam = first.lambda;
        let shift: Vec<i64> = first.z.iter().map(|a| -a).collect();
        Ok(Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let z = e.z.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    (ExponentVector::new(z, e.lambda - lam), c.clone())
                })
                .collect(),
        })
    }

    /// Writes `f = Σ_a c_a(λ) z^a`; each `c_a` is returned as a dense
    /// coefficient vector in increasing powers of λ.
    pub fn lambda_coefficients(&self) -> BTreeMap<Vec<i64>, Vec<ParamPoly>> {
        let mut out: BTreeMap<Vec<i64>, Vec<ParamPoly>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = out.entry(e.z.clone()).or_default();
            let k = e.lambda as usize;
            if v.len() <= k {
                v.resize(k + 1, ParamPoly::zero());
            }
            v[k] = c.clone();
        }
        out
    }

    /// Floating-point evaluation.
    pub fn eval_numeric(
        &self,
        z: &[Complex64],
        lambda: Complex64,
        params: &HashMap<String, Rational>,
    ) -> Result<Complex64> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: z.len(),
            });
        }
        if let Some(i) = z.iter().position(|v| *v == Complex64::zero()) {
            return Err(Error::ZeroVariable(i + 1));
        }
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let coeff = rational_to_f64(&c.eval(params)?);
            let mut t = Complex64::new(coeff, 0.0) * lambda.powu(e.lambda);
            for (zi, a) in z.iter().zip(&e.z) {
                t *= zi.powi(*a as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation at rational points.
    pub fn eval_exact(
        &self,
        z: &[Rational],
        lambda: &Rational,
        params: &HashMap<String, Rational>,
    ) -> Result<Rational> {
        if let Some(i) = z.iter().position(Zero::is_zero) {
            return Err(Error::ZeroVariable(i + 1));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.eval(params)? * num_traits::pow(lambda.clone(), e.lambda as usize);
            for (zi, a) in z.iter().zip(&e.z) {
                let p = num_traits::pow(zi.clone(), a.unsigned_abs() as usize);
                if *a < 0 {
                    t /= p;
                } else {
                    t *= p;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`
    /// in `Q[params][z^±, λ]`.
    pub fn exact_divide(&self, g: &Self) -> Result<Option<Self>> {
        self.check_dim(g)?;
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars)));
        }
        let mut symbols: BTreeSet<String> = self.symbols();
        symbols.extend(g.symbols());
        let symbols: Vec<String> = symbols.into_iter().collect();
        let (f_flat, f_shift) = Flat::from_laurent(self, &symbols);
        let (g_flat, g_shift) = Flat::from_laurent(g, &symbols);
        let q = match f_flat.divide(&g_flat) {
            Some(q) => q,
            None => return Ok(None),
        };
        let mut out = q.to_laurent(self.nvars, &symbols);
        let shift: Vec<i64> = f_shift.iter().zip(&g_shift).map(|(a, b)| b - a).collect();
        out = out.shift(&shift);
        Ok(Some(out))
    }
}

/// Flattened polynomial over `Q` with variable order `[λ, z_1..z_d, params..]`
/// and nonnegative exponents; used for exact division.
struct Flat {
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl Flat {
    /// Returns the flattened polynomial of `z^{-min} f` together with `-min`.
    fn from_laurent(f: &LaurentPoly, symbols: &[String]) -> (Self, Vec<i64>) {
        let d = f.nvars;
        let mut mins = vec![i64::MAX; d];
        for e in f.terms.keys() {
            for (m, a) in mins.iter_mut().zip(&e.z) {
                *m = (*m).min(*a);
            }
        }
        let shift: Vec<i64> = mins.iter().map(|m| -m).collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &f.terms {
            for (pm, pc) in c.terms() {
                let mut key = Vec::with_capacity(1 + d + symbols.len());
                key.push(e.lambda as i64);
                key.extend(e.z.iter().zip(&shift).map(|(a, s)| a + s));
                let mut pe = vec![0i64; symbols.len()];
                for (n, k) in pm {
                    let idx = symbols.binary_search(n).expect("symbol collected");
                    pe[idx] = *k as i64;
                }
                key.extend(pe);
                terms.insert(key, pc.clone());
            }
        }
        (Self { terms }, shift)
    }

    fn to_laurent(&self, d: usize, symbols: &[String]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(d);
        for (k, c) in &self.terms {
            let e = ExponentVector::new(k[1..1 + d].to_vec(), k[0] as u32);
            let pm: ParamMonomial = symbols
                .iter()
                .zip(&k[1 + d..])
                .filter(|(_, x)| **x > 0)
                .map(|(n, x)| (n.clone(), *x as u32))
                .collect();
            out.add_term(e, ParamPoly::from_terms([(pm, c.clone())]));
        }
        out
    }

    fn divide(&self, g: &Flat) -> Option<Flat> {
        let (glt, gc) = g.terms.iter().next_back()?;
        let mut r = self.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((lt, c)) = r.iter().next_back() {
            if !lt.iter().zip(glt).all(|(a, b)| a >= b) {
                return None;
            }
            let te: Vec<i64> = lt.iter().zip(glt).map(|(a, b)| a - b).collect();
            let tc = c / gc;
            for (ge, gcoef) in &g.terms {
                let key: Vec<i64> = ge.iter().zip(&te).map(|(a, b)| a + b).collect();
                let v = r.entry(key.clone()).or_insert_with(Rational::zero);
                *v -= &tc * gcoef;
                if v.is_zero() {
                    r.remove(&key);
                }
            }
            q.insert(te, tc);
        }
        Some(Flat { terms: q })
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

fn monomial_text(e: &ExponentVector) -> Vec<String> {
    let mut parts = Vec::new();
    for (i, a) in e.z.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("z{}", i + 1)),
            _ => parts.push(format!("z{}^{}", i + 1, a)),
        }
    }
    match e.lambda {
        0 => {}
        1 => parts.push("l".into()),
        k => parts.push(format!("l^{k}")),
    }
    parts
}

/// Canonical text: terms in decreasing canonical order, e.g.
/// `3*z1^2*z2^-1*l + (V_u - 2)*z1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_text(e);
            let (neg, coeff_text) = match c.as_constant() {
                Some(r) => {
                    let mag = r.abs();
                    let text = if mag.is_one() && !mono.is_empty() {
                        None
                    } else {
                        Some(format_rational(&mag))
                    };
                    (r.is_negative(), text)
                }
                None if c.num_terms() == 1 => {
                    let s = c.to_string();
                    match s.strip_prefix('-') {
                        Some(rest) => (true, Some(rest.to_string())),
                        None => (false, Some(s)),
                    }
                }
                None => (false, Some(format!("({c})"))),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts: Vec<String> = coeff_text.into_iter().collect();
            parts.extend(mono);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[d={}]({self})", self.nvars)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    z: Vec<i64>,
    l: u32,
    coeff: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: usize,
    terms: Vec<TermJson>,
}

impl LaurentPoly {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                z: e.z.clone(),
                l: e.lambda,
                coeff: c
                    .terms()
                    .map(|(m, r)| (monomial_key(m), format_rational(r)))
                    .collect(),
            })
            .collect();
        serde_json::to_value(PolyJson {
            vars: self.nvars,
            terms,
        })
        .expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pj: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zero(pj.vars);
        for t in pj.terms {
            if t.z.len() != pj.vars {
                return Err(Error::DimensionMismatch {
                    expected: pj.vars,
                    found: t.z.len(),
                });
            }
            let mut c = ParamPoly::zero();
            for (k, r) in &t.coeff {
                c = &c + &ParamPoly::from_terms([(parse_monomial_key(k)?, parse_rational(r)?)]);
            }
            out.add_term(ExponentVector::new(t.z, t.l), c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::rat;

    fn x() -> LaurentPoly {
        LaurentPoly::var(2, 0)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(2, 1)
    }
    fn l() -> LaurentPoly {
        LaurentPoly::lambda(2)
    }
    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::constant(2, ParamPoly::from_int(n))
    }

    fn example_27() -> LaurentPoly {
        // z1^2 z2^2 + λ z1^4 + λ^3
        &(&LaurentPoly::term(&[2, 2], 0, 1) + &LaurentPoly::term(&[4, 0], 1, 1))
            + &LaurentPoly::term(&[0, 0], 3, 1)
    }

    #[test]
    fn add_identity_and_cancellation() {
        let f = &x() + &l();
        assert_eq!(&f + &LaurentPoly::zero(2), f);
        assert_eq!(&f + &x().neg(), l());
        assert!(LaurentPoly::zero(1).checked_add(&f).is_err());
    }

    #[test]
    fn example_polynomial_support() {
        let f = example_27();
        let pts: BTreeSet<Vec<i64>> = f.support_points().into_iter().collect();
        let want: BTreeSet<Vec<i64>> =
            [vec![2, 2, 0], vec![4, 0, 1], vec![0, 0, 3]].into_iter().collect();
        assert_eq!(pts, want);
        assert!(LaurentPoly::zero(2).support().is_empty());
    }

    #[test]
    fn mul_examples() {
        let f = &x() + &l();
        assert_eq!(&f * &LaurentPoly::one(2), f);
        assert_eq!(&(&l() - &c(3)) * &(&l() + &c(3)), &(&l() * &l()) - &c(9));
        let g = &(&(&(&x() * &y()) + &x()) + &y()) + &c(2);
        let sq = &g * &g;
        assert_eq!(sq.num_terms(), 9);
    }

    #[test]
    fn facial_polynomial_examples() {
        let f = example_27();
        assert_eq!(f.facial_polynomial(&[0, 0, 0]).unwrap(), f);
        assert_eq!(f.facial_polynomial(&[0, 0, 1]).unwrap().num_terms(), 1);
        assert!(LaurentPoly::zero(2).facial_polynomial(&[0, 0, 0]).is_err());
    }

    #[test]
    fn substitute_power_and_specialize() {
        let f = &x() + &y();
        assert_eq!(f.substitute_power(&[1, 1]).unwrap(), f);
        assert_eq!(
            f.substitute_power(&[3, 2]).unwrap(),
            &LaurentPoly::term(&[3, 0], 0, 1) + &LaurentPoly::term(&[0, 2], 0, 1)
        );
        let g = &(&l() * &l()) - &c(1);
        assert!(g.specialize_lambda(&rat(1)).is_zero());
        assert_eq!((&x() + &l()).specialize_lambda(&rat(0)), x());
    }

    #[test]
    fn exact_divide_examples() {
        let f = &(&l() - &c(2)) * &(&l() + &x());
        assert_eq!(f.exact_divide(&LaurentPoly::one(2)).unwrap(), Some(f.clone()));
        assert_eq!(f.exact_divide(&(&l() - &c(2))).unwrap(), Some(&l() + &x()));
        assert_eq!(f.exact_divide(&(&l() - &c(3))).unwrap(), None);
        // Laurent shifts and symbolic coefficients
        let g = &(&x().pow(2) * &LaurentPoly::term(&[-3, 1], 0, 1)) + &LaurentPoly::constant(2, ParamPoly::symbol("a"));
        let h = &LaurentPoly::term(&[-1, -1], 2, 5) + &y();
        assert_eq!((&g * &h).exact_divide(&g).unwrap(), Some(h));
    }

    #[test]
    fn monomial_normalisation() {
        let m = LaurentPoly::term(&[2, -1], 0, 3);
        assert!(m.is_monomial().unwrap());
        assert_eq!(m.normalize_monomial_unit().unwrap(), c(3));
        let f = &x() + &y();
        assert!(!f.is_monomial().unwrap());
        assert_eq!(
            f.normalize_monomial_unit().unwrap(),
            &LaurentPoly::term(&[1, -1], 0, 1) + &c(1)
        );
    }

    #[test]
    fn eval_numeric_trivia() {
        let env = HashMap::new();
        let z = [Complex64::new(0.3, 0.7), Complex64::new(-1.1, 0.2)];
        assert_eq!(c(5).eval_numeric(&z, Complex64::new(2.0, 1.0), &env).unwrap(), Complex64::new(5.0, 0.0));
        let unit = &x() * &LaurentPoly::term(&[-1, 0], 0, 1);
        let v = unit.eval_numeric(&z, Complex64::zero(), &env).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let bad = [Complex64::zero(), Complex64::new(1.0, 0.0)];
        assert_eq!(x().eval_numeric(&bad, Complex64::zero(), &env), Err(Error::ZeroVariable(1)));
        let a = LaurentPoly::constant(2, ParamPoly::symbol("a"));
        assert!(matches!(a.eval_numeric(&z, Complex64::zero(), &env), Err(Error::UnboundParameter(_))));
    }

    #[test]
    fn canonical_text() {
        let f = &LaurentPoly::monomial(
            ExponentVector::new(vec![2, -1], 1),
            ParamPoly::from_int(3),
        ) + &LaurentPoly::monomial(
            ExponentVector::new(vec![1, 0], 0),
            &ParamPoly::symbol("V_u") - &ParamPoly::from_int(2),
        );
        assert_eq!(f.to_string(), "3*z1^2*z2^-1*l + (V_u - 2)*z1");
        assert_eq!((&l() - &c(1)).to_string(), "l - 1");
    }

    #[test]
    fn json_round_trip() {
        let f = &LaurentPoly::monomial(
            ExponentVector::new(vec![2, -1], 1),
            ParamPoly::constant(crate::param::ratio(3, 7)),
        ) + &LaurentPoly::constant(2, ParamPoly::symbol("alpha"));
        let v = f.to_json();
        assert_eq!(v["vars"], 2);
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), f);
    }
}
