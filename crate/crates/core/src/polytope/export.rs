use serde_json::json;

use super::IntegralPolytope;

impl IntegralPolytope {
    /// `{"vertices": [...], "facets": [{"normal": [...], "vertex_ids": [...]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let facets: Vec<_> = self
            .facets()
            .iter()
            .map(|f| json!({ "normal": f.normal, "vertex_ids": f.vertex_ids }))
            .collect();
        json!({ "dim": self.dim, "vertices": self.vertices, "facets": facets })
    }

    /// OFF text of the projection onto the coordinates `axes` (three of them).
    /// Lower-dimensional projections are written without faces.
    pub fn to_off(&self, axes: [usize; 3]) -> crate::Result<String> {
        if axes.iter().any(|&a| a >= self.ambient) {
            return Err(crate::Error::Invalid("projection axis out of range".into()));
        }
        let proj: Vec<Vec<i64>> = self.vertices.iter().map(|v| axes.iter().map(|&a| v[a]).collect()).collect();
        let p = IntegralPolytope::hull(&proj)?;
        let verts = p.vertices();
        let faces: Vec<Vec<usize>> = if p.dim() == 3 {
            p.facets().iter().map(|f| cyclic_order(verts, &f.vertex_ids, &f.normal)).collect()
        } else {
            Vec::new()
        };
        let mut s = format!("OFF\n{} {} 0\n", verts.len(), faces.len());
        for v in verts {
            s += &format!("{} {} {}\n", v[0], v[1], v[2]);
        }
        for f in faces {
            let ids: Vec<String> = f.iter().map(usize::to_string).collect();
            s += &format!("{} {}\n", f.len(), ids.join(" "));
        }
        Ok(s)
    }
}

/// Orders the vertices of a 3D facet counter-clockwise seen from outside.
fn cyclic_order(verts: &[Vec<i64>], ids: &[usize], inner: &[i64]) -> Vec<usize> {
    let f = |i: usize| -> [f64; 3] { [verts[i][0] as f64, verts[i][1] as f64, verts[i][2] as f64] };
    let k = ids.len() as f64;
    let mut c = [0.0; 3];
    for &i in ids {
        let p = f(i);
        (0..3).for_each(|j| c[j] += p[j] / k);
    }
    let n = [-inner[0] as f64, -inner[1] as f64, -inner[2] as f64];
    let p0 = f(ids[0]);
    let u = [p0[0] - c[0], p0[1] - c[1], p0[2] - c[2]];
    let w = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]];
    let mut keyed: Vec<(f64, usize)> = ids
        .iter()
        .map(|&i| {
            let p = f(i);
            let r = [p[0] - c[0], p[1] - c[1], p[2] - c[2]];
            let x: f64 = (0..3).map(|j| r[j] * u[j]).sum();
            let y: f64 = (0..3).map(|j| r[j] * w[j]).sum();
            (y.atan2(x), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}
