//! Integer linear algebra on small dense matrices (`i128`).

use num_integer::Integer;

pub type IMatrix = Vec<Vec<i128>>;

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a i128>) -> i128 {
    xs.into_iter().fold(0, |g, x| g.gcd(x))
}

/// `(g, x, y)` with `x a + y b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Vec<i128> {
    let g = gcd_all(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn to_i128(rows: &[Vec<i64>]) -> IMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

/// Row echelon form by unimodular row operations: returns `(H, U, rank)`
/// with `U A = H`, the first `rank` rows of `H` nonzero and the rest zero.
pub fn row_echelon(a: &IMatrix) -> (IMatrix, IMatrix, usize) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u: IMatrix = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut p = 0;
    for c in 0..n {
        if p == m {
            break;
        }
        for i in p + 1..m {
            let (a0, b0) = (h[p][c], h[i][c]);
            if b0 == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a0, b0);
            let (ag, bg) = (a0 / g, b0 / g);
            for mat in [&mut h, &mut u] {
                let (rp, ri) = (mat[p].clone(), mat[i].clone());
                for k in 0..rp.len() {
                    mat[p][k] = x * rp[k] + y * ri[k];
                    mat[i][k] = bg * rp[k] - ag * ri[k];
                }
            }
        }
        if h[p][c] != 0 {
            if h[p][c] < 0 {
                h[p].iter_mut().for_each(|x| *x = -*x);
                u[p].iter_mut().for_each(|x| *x = -*x);
            }
            p += 1;
        }
    }
    (h, u, p)
}

pub fn rank(a: &IMatrix) -> usize {
    row_echelon(a).2
}

/// Z-basis (as rows) of `{c : c A = 0}`.
pub fn left_kernel(a: &IMatrix) -> IMatrix {
    let (_, u, r) = row_echelon(a);
    u[r..].to_vec()
}

/// Z-basis (as rows) of the lattice spanned by the given rows.
pub fn lattice_basis(rows: &IMatrix) -> IMatrix {
    let (h, _, r) = row_echelon(rows);
    h[..r].to_vec()
}

/// Determinant by fraction-free Gaussian elimination.
pub fn det(a: &IMatrix) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m = a.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// gcd of all `k x k` minors of `a` (`k` at most the number of rows).
pub fn minor_gcd(a: &IMatrix, k: usize) -> i128 {
    if k == 0 {
        return 1;
    }
    let n = a.first().map_or(0, Vec::len);
    let mut g = 0;
    for rows in subsets(a.len(), k) {
        for cols in subsets(n, k) {
            let sub: IMatrix = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                .collect();
            g = gcd(g, det(&sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}
