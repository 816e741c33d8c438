//! Polynomials over `Q` in named symbolic parameters.
//!
//! These are the coefficients of [`crate::LaurentPoly`]: potentials, edge
//! labels and anything else that should stay symbolic so that questions like
//! "does the potential appear in this coefficient?" are decided exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

/// A monomial in the parameters: `(name, exponent)` pairs sorted by name,
/// exponents strictly positive. The empty vector is the constant monomial.
pub type ParamMonomial = Vec<(String, u32)>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a decimal-free signed integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '.')
}

fn mul_monomials(a: &ParamMonomial, b: &ParamMonomial) -> ParamMonomial {
    let mut out: BTreeMap<&str, u32> = BTreeMap::new();
    for (n, e) in a.iter().chain(b) {
        *out.entry(n.as_str()).or_insert(0) += e;
    }
    out.into_iter().map(|(n, e)| (n.to_string(), e)).collect()
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn symbol(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], Rational::one());
        Self { terms }
    }

    /// Parses a label: either a symbol name or a rational `"p/q"`.
    pub fn parse_label(s: &str) -> Result<Self> {
        let s = s.trim();
        if valid_symbol(s) {
            Ok(Self::symbol(s))
        } else {
            parse_rational(s).map(Self::constant)
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ParamMonomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this polynomial mentions no parameter.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    pub fn mentions_any(&self, names: &BTreeSet<String>) -> bool {
        self.terms
            .keys()
            .any(|m| m.iter().any(|(n, _)| names.contains(n)))
    }

    pub(crate) fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &ParamPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn eval(&self, params: &HashMap<String, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (n, e) in m {
                let v = params
                    .get(n)
                    .ok_or_else(|| Error::UnboundParameter(n.clone()))?;
                t *= num_traits::pow(v.clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces the named parameters by the given polynomials; parameters
    /// absent from `map` stay symbolic.
    pub fn substitute(&self, map: &HashMap<String, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut t = ParamPoly::constant(c.clone());
            let mut rest = Vec::new();
            for (n, e) in m {
                match map.get(n) {
                    Some(p) => {
                        for _ in 0..*e {
                            t = &t * p;
                        }
                    }
                    None => rest.push((n.clone(), *e)),
                }
            }
            if !rest.is_empty() {
                t = &t * &ParamPoly::from_terms([(rest, Rational::one())]);
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Exact quotient by a nonzero constant.
    pub fn div_constant(&self, c: &Rational) -> ParamPoly {
        assert!(!c.is_zero(), "division by zero");
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v / c)).collect(),
        }
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = if ma.is_empty() {
                    mb.clone()
                } else if mb.is_empty() {
                    ma.clone()
                } else {
                    mul_monomials(ma, mb)
                };
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomials first, constant last
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if m.is_empty() || !mag.is_one() {
                parts.push(format_rational(&mag));
            }
            for (n, e) in m {
                if *e == 1 {
                    parts.push(n.clone());
                } else {
                    parts.push(format!("{n}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

/// Serialises a monomial as `"alpha*beta^2"` (`"1"` for the constant).
pub fn monomial_key(m: &ParamMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn parse_monomial_key(s: &str) -> Result<ParamMonomial> {
    if s.trim() == "1" {
        return Ok(Vec::new());
    }
    let mut map: BTreeMap<String, u32> = BTreeMap::new();
    for part in s.split('*') {
        let (n, e) = match part.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?,
            ),
            None => (part.trim(), 1),
        };
        if !valid_symbol(n) {
            return Err(Error::Parse(format!("bad parameter name `{n}`")));
        }
        *map.entry(n.to_string()).or_insert(0) += e;
    }
    Ok(map.into_iter().filter(|(_, e)| *e > 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse_as_symbol_or_rational() {
        assert_eq!(ParamPoly::parse_label("V_u").unwrap(), ParamPoly::symbol("V_u"));
        assert_eq!(
            ParamPoly::parse_label("-3/6").unwrap(),
            ParamPoly::constant(ratio(-1, 2))
        );
        assert!(ParamPoly::parse_label("1/0").is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = ParamPoly::symbol("a");
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn display_puts_constant_last() {
        let p = &ParamPoly::symbol("V_u") - &ParamPoly::from_int(2);
        assert_eq!(p.to_string(), "V_u - 2");
        let q = &(&ParamPoly::symbol("a") * &ParamPoly::symbol("a")) * &ParamPoly::from_int(-3);
        assert_eq!(q.to_string(), "-3*a^2");
    }

    #[test]
    fn eval_and_substitute() {
        let p = &(&ParamPoly::symbol("a") * &ParamPoly::symbol("b")) + &ParamPoly::from_int(1);
        let mut env = HashMap::new();
        env.insert("a".to_string(), rat(2));
        assert_eq!(p.eval(&env), Err(Error::UnboundParameter("b".into())));
        env.insert("b".to_string(), ratio(1, 2));
        assert_eq!(p.eval(&env).unwrap(), rat(2));
        let mut sub = HashMap::new();
        sub.insert("a".to_string(), ParamPoly::from_int(3));
        assert_eq!(
            p.substitute(&sub),
            &(&ParamPoly::symbol("b") * &ParamPoly::from_int(3)) + &ParamPoly::one()
        );
    }

    #[test]
    fn monomial_keys_round_trip() {
        let m = vec![("alpha".to_string(), 1), ("beta".to_string(), 2)];
        assert_eq!(parse_monomial_key(&monomial_key(&m)).unwrap(), m);
        assert_eq!(parse_monomial_key("1").unwrap(), Vec::new());
    }
}
