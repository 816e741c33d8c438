//! Band structure sampled on a torus grid.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{floquet_matrix, Labeling, PeriodicGraph};
use crate::numeric::hermitian_eigenvalues;
use crate::par::ExecMode;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample {
    /// Angles `θ` with `z_j = e^{iθ_j}`.
    pub theta: Vec<f64>,
    /// Eigenvalues of `L_c(z)`, ascending.
    pub eigenvalues: Vec<f64>,
}

/// Eigenvalues of `L_c(z)` at the `grid_n^d` points `θ_j = 2π t_j / grid_n`,
/// in grid order (first coordinate most significant).
pub fn sample_spectrum(
    g: &PeriodicGraph,
    c: &Labeling,
    grid_n: usize,
    mode: ExecMode,
) -> Result<Vec<SpectrumSample>> {
    if grid_n == 0 {
        return Err(Error::Invalid("grid size must be positive".into()));
    }
    let m = floquet_matrix(g, c)?;
    let env = HashMap::new();
    let symbols = c.symbols();
    if let Some(s) = symbols.iter().next() {
        return Err(Error::UnboundParameter(s.clone()));
    }
    let d = g.d;
    let total = grid_n.checked_pow(d as u32).ok_or(Error::Invalid("grid too large".into()))?;
    let n = m.size();
    mode.map_range(total, |idx| {
        let mut rest = idx;
        let mut theta = vec![0.0; d];
        for j in (0..d).rev() {
            theta[j] = 2.0 * PI * (rest % grid_n) as f64 / grid_n as f64;
            rest /= grid_n;
        }
        let z: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let h = m.eval_numeric(&z, Complex64::default(), &env)?;
        Ok(SpectrumSample {
            theta,
            eigenvalues: hermitian_eigenvalues(&h, n),
        })
    })
    .into_iter()
    .collect()
}

/// Long-format CSV, one row per band and grid point:
/// `grid_index, theta_1..theta_d, k, lambda_k` (`k` from 1).
pub fn to_csv(samples: &[SpectrumSample]) -> String {
    let Some(first) = samples.first() else {
        return String::new();
    };
    let mut head = vec!["grid_index".to_string()];
    head.extend((1..=first.theta.len()).map(|i| format!("theta_{i}")));
    head.extend(["k".to_string(), "lambda_k".to_string()]);
    let mut s = head.join(",") + "\n";
    for (idx, row) in samples.iter().enumerate() {
        let theta: Vec<String> = row.theta.iter().map(|x| format!("{x:.12}")).collect();
        for (k, e) in row.eigenvalues.iter().enumerate() {
            s += &format!("{idx},{},{},{e:.12}\n", theta.join(","), k + 1);
        }
    }
    s
}
