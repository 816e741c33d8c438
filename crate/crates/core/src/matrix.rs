//! Square matrices of Laurent polynomials.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::laurent::LaurentPoly;
use crate::param::{ParamPoly, Rational};
use crate::{Error, Result};

pub const DEFAULT_DET_CAP: usize = 16;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    n: usize,
    d: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            entries: vec![LaurentPoly::zero(d); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn num_z_vars(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.num_z_vars(), self.d);
        self.entries[i * self.n + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &LaurentPoly) {
        let e = &mut self.entries[i * self.n + j];
        *e = &*e + p;
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            n: self.n,
            d: self.d,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn specialize_lambda(&self, lambda0: &Rational) -> Self {
        self.map(|p| p.specialize_lambda(lambda0))
    }

    pub fn substitute_params(&self, map: &HashMap<String, ParamPoly>) -> Self {
        self.map(|p| p.substitute_params(map))
    }

    /// Exact determinant by Laplace expansion along rows, memoised on the
    /// set of used columns. Fails with [`Error::SizeCap`] above `cap`.
    pub fn determinant(&self, cap: usize) -> Result<LaurentPoly> {
        if self.n > cap || self.n > 63 {
            return Err(Error::SizeCap {
                size: self.n,
                cap: cap.min(63),
            });
        }
        let mut states: HashMap<u64, LaurentPoly> = HashMap::new();
        states.insert(0, LaurentPoly::one(self.d));
        for i in 0..self.n {
            let mut next: HashMap<u64, LaurentPoly> = HashMap::new();
            for (mask, acc) in &states {
                for j in 0..self.n {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let e = self.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    // columns already used to the right of j are inversions
                    let mut t = acc * e;
                    if (mask >> (j + 1)).count_ones() % 2 == 1 {
                        t = t.neg();
                    }
                    let slot = next
                        .entry(mask | (1 << j))
                        .or_insert_with(|| LaurentPoly::zero(self.d));
                    *slot = &*slot + &t;
                }
            }
            next.retain(|_, p| !p.is_zero());
            states = next;
            if states.is_empty() {
                return Ok(LaurentPoly::zero(self.d));
            }
        }
        Ok(states
            .remove(&((1u64 << self.n) - 1))
            .unwrap_or_else(|| LaurentPoly::zero(self.d)))
    }

    /// Entry-wise numeric evaluation, row-major.
    pub fn eval_numeric(
        &self,
        z: &[Complex64],
        lambda: Complex64,
        params: &HashMap<String, Rational>,
    ) -> Result<Vec<Complex64>> {
        self.entries
            .iter()
            .map(|p| p.eval_numeric(z, lambda, params))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.n)
            .map(|i| {
                serde_json::Value::Array((0..self.n).map(|j| self.get(i, j).to_json()).collect())
            })
            .collect();
        serde_json::json!({ "size": self.n, "vars": self.d, "entries": rows })
    }
}
