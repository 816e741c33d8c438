//! Exact phase-one simplex (Bland's rule) for `A x = b, x >= 0`.

use num_traits::{Signed, Zero};

use crate::param::Rational;

/// Whether `A x = b` has a solution with `x >= 0`.
pub(crate) fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // tableau columns: n originals, m artificials, then rhs
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = a[i]
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| Rational::from_integer(i64::from(k == i).into())));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    let width = n + m + 1;
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of minimise Σ artificials
    let mut cost: Vec<Rational> = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..width {
            if j < n || j == width - 1 {
                cost[j] -= &row[j];
            }
        }
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let r = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        let Some((p, _)) = leave else {
            // unbounded cannot occur for phase one
            break;
        };
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }
    cost[width - 1].is_zero()
}

/// Whether `p` lies in the convex hull of `pts`.
pub(crate) fn in_hull(p: &[i64], pts: &[&[i64]]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let dim = p.len();
    let r = |x: i64| Rational::from_integer(x.into());
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|k| pts.iter().map(|q| r(q[k])).collect())
        .collect();
    a.push(vec![r(1); pts.len()]);
    let mut b: Vec<Rational> = p.iter().map(|&x| r(x)).collect();
    b.push(r(1));
    feasible(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_membership() {
        let sq: Vec<Vec<i64>> = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]];
        let refs: Vec<&[i64]> = sq.iter().map(Vec::as_slice).collect();
        assert!(in_hull(&[1, 1], &refs));
        assert!(in_hull(&[2, 1], &refs));
        assert!(!in_hull(&[3, 1], &refs));
        assert!(!in_hull(&[0, 0], &refs[1..]));
        assert!(in_hull(&[1, 0], &[&[0, 0][..], &[2, 0][..]]));
        assert!(!in_hull(&[1, 1], &[&[0, 0][..], &[2, 0][..]]));
    }
}
