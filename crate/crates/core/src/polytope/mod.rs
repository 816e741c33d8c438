//! Exact integral polytopes of small dimension.
//!
//! Vertices are found exactly (random-direction witnesses, then a facet
//! containment test, then an exact LP for whatever is left). Facets are
//! enumerated from affinely independent vertex subsets.

mod export;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{self, IMatrix};
use crate::lp;
use crate::param::Rational;
use crate::{Error, Result};

pub const MAX_DIM: usize = 5;

#[derive(Clone, Debug)]
pub struct IntegralPolytope {
    ambient: usize,
    points: Vec<Vec<i64>>,
    vertices: Vec<Vec<i64>>,
    dim: usize,
    facets: OnceLock<Vec<Face>>,
}

impl PartialEq for IntegralPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for IntegralPolytope {}

/// A face, stored as indices into the parent's vertex list together with
/// one exposing vector (the face is the argmin of `normal · x`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub parent: u64,
    pub vertex_ids: Vec<usize>,
    pub normal: Vec<i64>,
    /// `min normal · x` over the parent.
    pub offset: i64,
    pub dim: i64,
}

/// Apex/base split of a pyramid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pyramid {
    /// Every vertex that can serve as apex.
    pub apexes: Vec<usize>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn diffs(pts: &[&Vec<i64>]) -> IMatrix {
    match pts.split_first() {
        None => Vec::new(),
        Some((p0, rest)) => rest
            .iter()
            .map(|p| p.iter().zip(p0.iter()).map(|(a, b)| (a - b) as i128).collect())
            .collect(),
    }
}

fn affine_dim(pts: &[&Vec<i64>]) -> i64 {
    if pts.is_empty() {
        return -1;
    }
    lattice::rank(&diffs(pts)) as i64
}

/// Facets of the hull of `verts` (all of which must be vertices), with
/// `dim` the affine dimension.
fn compute_facets(verts: &[Vec<i64>], dim: usize, parent: u64) -> Vec<Face> {
    if dim == 0 {
        return Vec::new();
    }
    let refs: Vec<&Vec<i64>> = verts.iter().collect();
    let basis = lattice::lattice_basis(&diffs(&refs));
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for sub in lattice::combinations(verts.len(), dim) {
        if out.iter().any(|f: &Face| sub.iter().all(|i| f.vertex_ids.binary_search(i).is_ok())) {
            continue;
        }
        let s: Vec<&Vec<i64>> = sub.iter().map(|&i| &verts[i]).collect();
        let d = diffs(&s);
        // c B ⟂ every row of d
        let m: IMatrix = basis
            .iter()
            .map(|b| d.iter().map(|r| r.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect();
        let ker = lattice::left_kernel(&m);
        if ker.len() != 1 {
            continue;
        }
        let w: Vec<i128> = (0..verts[0].len())
            .map(|j| ker[0].iter().zip(&basis).map(|(c, b)| c * b[j]).sum())
            .collect();
        let mut w: Vec<i64> = lattice::primitive(&w).into_iter().map(|x| x as i64).collect();
        let h = dot(&w, s[0]);
        let vals: Vec<i64> = verts.iter().map(|v| dot(&w, v)).collect();
        let (lo, hi) = (vals.iter().any(|&x| x < h), vals.iter().any(|&x| x > h));
        if lo && hi {
            continue;
        }
        if lo {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        let ids: Vec<usize> = (0..verts.len()).filter(|&i| vals[i] == h).collect();
        if seen.insert(ids.clone()) {
            let fr: Vec<&Vec<i64>> = ids.iter().map(|&i| &verts[i]).collect();
            out.push(Face {
                parent,
                offset: if lo { -h } else { h },
                dim: affine_dim(&fr),
                vertex_ids: ids,
                normal: w,
            });
        }
    }
    out
}

impl IntegralPolytope {
    /// Convex hull of a nonempty point set.
    pub fn hull(points: &[Vec<i64>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let ambient = first.len();
        if ambient > MAX_DIM {
            return Err(Error::Invalid(format!("ambient dimension {ambient} > {MAX_DIM}")));
        }
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::Invalid("points of mixed dimension".into()));
        }
        let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let refs: Vec<&Vec<i64>> = pts.iter().collect();
        let dim = affine_dim(&refs) as usize;

        // unique minimisers of generic directions are vertices
        let mut found: BTreeSet<usize> = BTreeSet::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..(16 * pts.len()).max(64) {
            let w: Vec<i64> = (0..ambient).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
            let vals: Vec<i64> = pts.iter().map(|p| dot(&w, p)).collect();
            let min = *vals.iter().min().expect("nonempty");
            let mut it = (0..pts.len()).filter(|&i| vals[i] == min);
            if let (Some(i), None) = (it.next(), it.next()) {
                found.insert(i);
            }
        }
        let v0: Vec<Vec<i64>> = found.iter().map(|&i| pts[i].clone()).collect();
        let v0_refs: Vec<&Vec<i64>> = v0.iter().collect();
        let same_dim = affine_dim(&v0_refs) == dim as i64;
        let inner = if same_dim { compute_facets(&v0, dim, 0) } else { Vec::new() };
        let mut verts = v0.clone();
        for (i, p) in pts.iter().enumerate() {
            if found.contains(&i) {
                continue;
            }
            // inside conv(v0): not a vertex
            if same_dim && dim > 0 && inner.iter().all(|f| dot(&f.normal, p) >= f.offset) {
                continue;
            }
            let others: Vec<&[i64]> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.as_slice())
                .collect();
            if !lp::in_hull(p, &others) {
                verts.push(p.clone());
            }
        }
        verts.sort();
        Ok(Self {
            ambient,
            points: pts,
            vertices: verts,
            dim,
            facets: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn generating_points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.vertices.hash(&mut h);
        h.finish()
    }

    pub fn vertex_index(&self, v: &[i64]) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).ok()
    }

    pub fn facets(&self) -> &[Face] {
        self.facets
            .get_or_init(|| compute_facets(&self.vertices, self.dim, self.fingerprint()))
    }

    /// Face minimising `w · x`.
    pub fn face_exposed(&self, w: &[i64]) -> Result<Face> {
        if w.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: w.len(),
            });
        }
        let vals: Vec<i64> = self.vertices.iter().map(|v| dot(w, v)).collect();
        let min = *vals.iter().min().expect("nonempty");
        let ids: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        Ok(self.face_from_ids(ids, w.to_vec(), min))
    }

    fn face_from_ids(&self, ids: Vec<usize>, normal: Vec<i64>, offset: i64) -> Face {
        let pts: Vec<&Vec<i64>> = ids.iter().map(|&i| &self.vertices[i]).collect();
        Face {
            parent: self.fingerprint(),
            dim: affine_dim(&pts),
            vertex_ids: ids,
            normal,
            offset,
        }
    }

    pub fn face_vertices(&self, f: &Face) -> Vec<Vec<i64>> {
        f.vertex_ids.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Affine dimension of `F1 ∩ F2`, `-1` when empty.
    pub fn face_intersection_dim(&self, f1: &Face, f2: &Face) -> Result<i64> {
        let fp = self.fingerprint();
        if f1.parent != fp || f2.parent != fp {
            return Err(Error::Invalid("faces of a different polytope".into()));
        }
        let common: Vec<&Vec<i64>> = f1
            .vertex_ids
            .iter()
            .filter(|i| f2.vertex_ids.contains(i))
            .map(|&i| &self.vertices[i])
            .collect();
        Ok(affine_dim(&common))
    }

    /// Shortest chain of faces from `certified` (as indices) going from a
    /// face containing `a` to one containing `b`, consecutive faces meeting
    /// in dimension at least one.
    pub fn strong_chain(&self, certified: &[Face], a: usize, b: usize) -> Option<Vec<usize>> {
        let n = certified.len();
        let mut prev: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for (i, f) in certified.iter().enumerate() {
            if f.vertex_ids.contains(&a) {
                seen[i] = true;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            if certified[i].vertex_ids.contains(&b) {
                let mut chain = vec![i];
                let mut cur = i;
                while let Some(p) = prev[cur] {
                    chain.push(p);
                    cur = p;
                }
                chain.reverse();
                return Some(chain);
            }
            for j in 0..n {
                if !seen[j]
                    && self
                        .face_intersection_dim(&certified[i], &certified[j])
                        .is_ok_and(|d| d >= 1)
                {
                    seen[j] = true;
                    prev[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
        None
    }

    /// Whether every pair of distinct vertices is joined by a strong chain.
    pub fn strong_chains_cover(&self, certified: &[Face]) -> bool {
        let n = self.vertices.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.strong_chain(certified, a, b).is_some()))
            && (n > 1 || (0..n).all(|a| self.strong_chain(certified, a, a).is_some()))
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if p.len() != self.ambient {
            return false;
        }
        let mut pts: Vec<&Vec<i64>> = self.vertices.iter().collect();
        let pv = p.to_vec();
        pts.push(&pv);
        if affine_dim(&pts) != self.dim as i64 {
            return false;
        }
        if self.dim == 0 {
            return self.vertices[0] == p;
        }
        self.facets().iter().all(|f| dot(&f.normal, p) >= f.offset)
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        Self::hull(&pts)
    }

    /// `(r, a)` with `self = r·p + a`, if any.
    pub fn homothety_of(&self, p: &Self) -> Option<(Rational, Vec<i64>)> {
        if self.ambient != p.ambient {
            return None;
        }
        if self.vertices.len() == 1 {
            return Some((Rational::zero(), self.vertices[0].clone()));
        }
        if p.vertices.len() != self.vertices.len() {
            return None;
        }
        let lo_hi = |vs: &[Vec<i64>], j: usize| {
            let it = vs.iter().map(|v| v[j]);
            (it.clone().min().unwrap(), it.max().unwrap())
        };
        let j = (0..p.ambient).find(|&j| {
            let (a, b) = lo_hi(&p.vertices, j);
            a != b
        })?;
        let (pl, ph) = lo_hi(&p.vertices, j);
        let (kl, kh) = lo_hi(&self.vertices, j);
        let r = Rational::new((kh - kl).into(), (ph - pl).into());
        // r > 0 preserves lexicographic order, so sorted vertices pair up
        let mut a: Option<Vec<i64>> = None;
        for (kv, pv) in self.vertices.iter().zip(&p.vertices) {
            let shift: Option<Vec<i64>> = kv
                .iter()
                .zip(pv)
                .map(|(k, x)| {
                    let s = Rational::from_integer((*k).into()) - &r * Rational::from_integer((*x).into());
                    s.is_integer().then(|| i64::try_from(s.to_integer()).ok()).flatten()
                })
                .collect();
            let shift = shift?;
            match &a {
                None => a = Some(shift),
                Some(a0) if *a0 != shift => return None,
                _ => {}
            }
        }
        Some((r, a.expect("nonempty")))
    }

    /// Vertices that serve as apex of a pyramid over the others.
    pub fn pyramid(&self) -> Option<Pyramid> {
        if self.dim == 0 {
            return None;
        }
        let apexes: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| {
                let rest: Vec<&Vec<i64>> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v)
                    .collect();
                affine_dim(&rest) == self.dim as i64 - 1
            })
            .collect();
        (!apexes.is_empty()).then_some(Pyramid { apexes })
    }

    fn base_and_apex(&self, apex: usize) -> (Vec<&Vec<i64>>, &Vec<i64>) {
        let base = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != apex)
            .map(|(_, v)| v)
            .collect();
        (base, &self.vertices[apex])
    }

    /// Lattice distance from the apex to the affine hull of the base.
    pub fn pyramid_height(&self, apex: usize) -> i64 {
        let (base, v) = self.base_and_apex(apex);
        let k = self.dim;
        let bd = diffs(&base);
        let mut full = bd.clone();
        full.push(v.iter().zip(base[0]).map(|(a, b)| (a - b) as i128).collect());
        (lattice::minor_gcd(&full, k) / lattice::minor_gcd(&bd, k - 1)) as i64
    }

    /// gcd of all coordinates of `apex - b` over base vertices `b`; when it
    /// is 1 the pyramid is integrally indecomposable.
    pub fn apex_gcd(&self, apex: usize) -> i64 {
        let (base, v) = self.base_and_apex(apex);
        base.iter()
            .flat_map(|b| v.iter().zip(b.iter()).map(|(x, y)| x - y))
            .fold(0i64, |g, x| g.gcd(&x))
    }

    /// `A` when the vertices are `c ± a_i e_i` for a common centre `c`.
    pub fn cross_polytope_dilation(&self) -> Option<Vec<i64>> {
        let n = self.ambient;
        if self.vertices.len() != 2 * n {
            return None;
        }
        let k = 2 * n as i64;
        let sum: Vec<i64> = (0..n).map(|j| self.vertices.iter().map(|v| v[j]).sum()).collect();
        let mut a = vec![0i64; n];
        for v in &self.vertices {
            // scaled by 2n to stay integral
            let off: Vec<i64> = (0..n).map(|j| k * v[j] - sum[j]).collect();
            let nz: Vec<usize> = (0..n).filter(|&j| off[j] != 0).collect();
            if nz.len() != 1 || off[nz[0]] % k != 0 {
                return None;
            }
            let j = nz[0];
            let m = off[j].abs() / k;
            if a[j] != 0 && a[j] != m {
                return None;
            }
            a[j] = m;
        }
        let mut axes: Vec<(usize, i64)> = self
            .vertices
            .iter()
            .map(|v| {
                let j = (0..n).find(|&j| k * v[j] != sum[j]).expect("checked");
                (j, (k * v[j] - sum[j]).signum())
            })
            .collect();
        axes.sort();
        axes.dedup();
        (axes.len() == 2 * n && a.iter().all(|&x| x > 0)).then_some(a)
    }

    /// Image under `(a, a_{d+1}) ↦ ((|Q|/q_i) a_i, |Q| a_{d+1})`.
    pub fn contracted_dilation(&self, q: &[u64]) -> Result<Self> {
        if q.len() + 1 != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient - 1,
                found: q.len(),
            });
        }
        if q.contains(&0) {
            return Err(Error::Invalid("period entries must be positive".into()));
        }
        let n: i64 = q.iter().map(|&x| x as i64).product();
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut p: Vec<i64> = v.iter().zip(q).map(|(a, &qi)| a * (n / qi as i64)).collect();
                p.push(v[q.len()] * n);
                p
            })
            .collect();
        Self::hull(&pts)
    }
}

/// `w' = (q_1 w_1, .., q_d w_d, w_{d+1})`.
pub fn exposing_vector_map(w: &[i64], q: &[u64]) -> Vec<i64> {
    let mut out: Vec<i64> = w.iter().zip(q).map(|(x, &qi)| x * qi as i64).collect();
    out.extend_from_slice(&w[q.len()..]);
    out
}
