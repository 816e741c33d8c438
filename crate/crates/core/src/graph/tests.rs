use std::collections::HashMap;

use num_complex::Complex64;

use super::builders::*;
use super::*;
use crate::matrix::DEFAULT_DET_CAP;
use crate::param::rat;

fn s(n: &str) -> LaurentPoly {
    LaurentPoly::constant(2, ParamPoly::symbol(n))
}

fn mono(z: &[i64], c: &str) -> LaurentPoly {
    LaurentPoly::monomial(ExponentVector::new(z.to_vec(), 0), ParamPoly::symbol(c))
}

fn lam(d: usize) -> LaurentPoly {
    LaurentPoly::lambda(d)
}

fn sum(ps: &[LaurentPoly]) -> LaurentPoly {
    ps.iter().fold(LaurentPoly::zero(ps[0].num_z_vars()), |a, b| &a + b)
}

#[test]
fn single_vertex_matrix() {
    let g = isolated_vertex(2).unwrap();
    let m = floquet_matrix(&g.graph, &g.labels).unwrap();
    assert_eq!(m.size(), 1);
    assert_eq!(*m.get(0, 0), &s("V_Omega") - &lam(2));
}

#[test]
fn honeycomb_matrix_matches_closed_form() {
    let g = honeycomb_diamond(2).unwrap();
    assert!(validate(&g.graph, &g.labels).is_empty());
    let m = floquet_matrix(&g.graph, &g.labels).unwrap();
    let diag = sum(&[s("alpha"), s("beta"), s("gamma")]);
    assert_eq!(*m.get(0, 0), &sum(&[s("V_u"), diag.clone()]) - &lam(2));
    assert_eq!(*m.get(1, 1), &sum(&[s("V_v"), diag]) - &lam(2));
    let up = sum(&[s("alpha"), mono(&[-1, 0], "beta"), mono(&[0, -1], "gamma")]);
    let down = sum(&[s("alpha"), mono(&[1, 0], "beta"), mono(&[0, 1], "gamma")]);
    assert_eq!(*m.get(0, 1), up.neg());
    assert_eq!(*m.get(1, 0), down.neg());
}

#[test]
fn honeycomb_dispersion_support() {
    let g = honeycomb_diamond(2).unwrap();
    let d = dispersion(&g.graph, &g.labels, DEFAULT_DET_CAP).unwrap();
    let mut pts = d.support_points();
    pts.sort();
    let mut want = vec![
        vec![0, 0, 2], vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0], vec![-1, 0, 0],
        vec![0, 1, 0], vec![0, -1, 0], vec![-1, 1, 0], vec![1, -1, 0],
    ];
    want.sort();
    assert_eq!(pts, want);
}

#[test]
fn dense_2d_entries() {
    let g = dense_2d();
    let m = floquet_matrix(&g.graph, &g.labels).unwrap();
    let two = LaurentPoly::constant(2, ParamPoly::from_int(2));
    let loop_term = |name: &str, i: usize| {
        let mut a = [0i64; 2];
        a[i] = 1;
        let mut b = [0i64; 2];
        b[i] = -1;
        let z = LaurentPoly::term(&a, 0, 1);
        let zi = LaurentPoly::term(&b, 0, 1);
        &s(name) * &(&(&two - &z) - &zi)
    };
    let common = sum(&[s("alpha"), s("beta_2"), s("beta_3"), s("gamma_2"), s("gamma_3")]);
    let l11 = &sum(&[common.clone(), loop_term("beta_1", 0), loop_term("gamma_1", 1), s("V_1")]) - &lam(2);
    let l22 = &sum(&[common, loop_term("beta_4", 0), loop_term("gamma_4", 1), s("V_2")]) - &lam(2);
    let l12 = sum(&[s("alpha"), mono(&[1, 0], "beta_2"), mono(&[-1, 0], "beta_3"), mono(&[0, 1], "gamma_2"), mono(&[0, -1], "gamma_3")]).neg();
    let l21 = sum(&[s("alpha"), mono(&[-1, 0], "beta_2"), mono(&[1, 0], "beta_3"), mono(&[0, -1], "gamma_2"), mono(&[0, 1], "gamma_3")]).neg();
    assert_eq!(*m.get(0, 0), l11);
    assert_eq!(*m.get(1, 1), l22);
    assert_eq!(*m.get(0, 1), l12);
    assert_eq!(*m.get(1, 0), l21);
}

#[test]
fn dense_3d_off_diagonal() {
    let g = dense_3d();
    let m = floquet_matrix(&g.graph, &g.labels).unwrap();
    let c = |n: &str| LaurentPoly::constant(3, ParamPoly::symbol(n));
    let mono3 = |z: [i64; 3], n: &str| LaurentPoly::monomial(ExponentVector::new(z.to_vec(), 0), ParamPoly::symbol(n));
    let l12 = sum(&[
        c("alpha"), mono3([1, 0, 0], "beta_2"), mono3([-1, 0, 0], "beta_3"),
        mono3([0, 1, 0], "gamma_2"), mono3([0, -1, 0], "gamma_3"),
        mono3([0, 0, 1], "epsilon_2"), mono3([0, 0, -1], "epsilon_3"),
    ])
    .neg();
    assert_eq!(*m.get(0, 1), l12);
    assert_eq!(m.get(0, 0).symbols().len(), 11);
}

#[test]
fn dice_matrix() {
    let g = dice(2).unwrap();
    let m = floquet_matrix(&g.graph, &g.labels).unwrap();
    assert!(m.get(0, 2).is_zero() && m.get(2, 0).is_zero());
    let g01 = sum(&[s("gamma_0"), mono(&[-1, 0], "gamma_1"), mono(&[0, -1], "gamma_2")]).neg();
    let b21 = sum(&[s("beta_0"), mono(&[1, 0], "beta_1"), mono(&[0, 1], "beta_2")]).neg();
    assert_eq!(*m.get(0, 1), g01);
    assert_eq!(*m.get(2, 1), b21);
    let d11 = &sum(&[s("gamma_0"), s("gamma_1"), s("gamma_2"), s("beta_0"), s("beta_1"), s("beta_2"), s("V_u2")]) - &lam(2);
    assert_eq!(*m.get(1, 1), d11);
    assert!(dice(1).is_err());
}

#[test]
fn validation_diagnostics() {
    let mut g = honeycomb_diamond(2).unwrap();
    g.graph.add_edge(1, 0, vec![0, 0]);
    g.labels.edge_labels.push(Some(ParamPoly::symbol("x")));
    let diags = validate(&g.graph, &g.labels);
    assert_eq!(diags.len(), 1);
    assert!(diags[0].message.contains("duplicate"));
    let mut h = honeycomb_diamond(2).unwrap();
    h.labels.edge_labels[1] = None;
    assert!(validate(&h.graph, &h.labels)[0].message.contains("unlabeled"));
    assert!(floquet_matrix(&h.graph, &h.labels).is_err());
    let mut k = isolated_vertex(1).unwrap();
    k.edge(0, 0, vec![0], ParamPoly::one());
    assert!(validate(&k.graph, &k.labels)[0].message.contains("zero offset"));
}

#[test]
fn disjoint_union_factorises() {
    let g = honeycomb_diamond(2).unwrap();
    let h = disjoint_union(&g, &isolated_vertex(2).unwrap()).unwrap();
    let dh = dispersion(&h.graph, &h.labels, DEFAULT_DET_CAP).unwrap();
    let dg = dispersion(&g.graph, &g.labels, DEFAULT_DET_CAP).unwrap();
    let omega = &s("V_Omega") - &lam(2);
    assert_eq!(dh, &dg * &omega);
    assert_eq!(dh.exact_divide(&omega).unwrap(), Some(dg));
}

#[test]
fn square_lattice_pyramid() {
    let g = square_lattice(2).unwrap();
    let d = dispersion(&g.graph, &g.labels, DEFAULT_DET_CAP).unwrap();
    assert_eq!(d.lambda_degree(), Some(1));
    let p = crate::polytope::IntegralPolytope::hull(&d.support_points()).unwrap();
    let apex = p.vertex_index(&[0, 0, 1]).unwrap();
    assert!(p.pyramid().unwrap().apexes.contains(&apex));
    assert_eq!(p.pyramid_height(apex), 1);
}

#[test]
fn expansion_shapes() {
    let g = honeycomb_diamond(2).unwrap();
    let e1 = expand::q_expand(&g.graph, &g.labels, &[1, 1], None).unwrap();
    assert_eq!(floquet_matrix(&e1.expanded, &e1.labels).unwrap(), floquet_matrix(&g.graph, &g.labels).unwrap());
    let e32 = expand::q_expand(&g.graph, &g.labels, &[3, 2], None).unwrap();
    assert_eq!(e32.size(), 12);
    assert!(validate(&e32.expanded, &e32.labels).is_empty());
}

#[test]
fn expansion_two_one_matrix() {
    let g = honeycomb_diamond(2).unwrap();
    let names = ["u@0,0", "v@0,0", "u@1,0", "v@1,0"];
    let pq: HashMap<String, ParamPoly> = names.iter().enumerate().map(|(i, n)| (n.to_string(), ParamPoly::symbol(&format!("W{i}")))).collect();
    let e = expand::q_expand(&g.graph, &g.labels, &[2, 1], Some(&pq)).unwrap();
    assert_eq!(e.expanded.vertices, names);
    let m = floquet_matrix(&e.expanded, &e.labels).unwrap();
    let diag = sum(&[s("alpha"), s("beta"), s("gamma")]);
    for i in 0..4 {
        assert_eq!(*m.get(i, i), &sum(&[s(&format!("W{i}")), diag.clone()]) - &lam(2));
    }
    let ag_up = sum(&[s("alpha"), mono(&[0, -1], "gamma")]).neg();
    let ag_dn = sum(&[s("alpha"), mono(&[0, 1], "gamma")]).neg();
    assert_eq!(*m.get(0, 1), ag_up);
    assert_eq!(*m.get(1, 0), ag_dn);
    assert_eq!(*m.get(2, 3), ag_up);
    assert_eq!(*m.get(3, 2), ag_dn);
    assert_eq!(*m.get(0, 3), mono(&[-1, 0], "beta").neg());
    assert_eq!(*m.get(3, 0), mono(&[1, 0], "beta").neg());
    assert_eq!(*m.get(1, 2), s("beta").neg());
    assert_eq!(*m.get(2, 1), s("beta").neg());
    for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        assert!(m.get(i, j).is_zero());
    }
}

fn numeric_env(names: &[&str], seed: i64) -> HashMap<String, crate::param::Rational> {
    names.iter().enumerate().map(|(i, n)| (n.to_string(), crate::param::ratio(3 + 7 * i as i64 + seed, 5))).collect()
}

#[test]
fn hat_potential_cases() {
    let g = honeycomb_diamond(2).unwrap();
    let env = numeric_env(&["V_u", "V_v", "alpha", "beta", "gamma"], 0);
    let e = expand::q_expand(&g.graph, &g.labels, &[2, 3], None).unwrap();
    let hat = e.hat_potential(&env).unwrap();
    for (r, row) in hat.iter().enumerate() {
        for (m, cell) in row.iter().enumerate() {
            for (v, x) in cell.iter().enumerate() {
                let want = if r == m { crate::param::rational_to_f64(&env[["V_u", "V_v"][v]]) } else { 0.0 };
                assert!((x - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }
    let pq: HashMap<String, ParamPoly> = [("u@0,0", 1), ("v@0,0", 2), ("u@1,0", 5), ("v@1,0", 11)]
        .into_iter()
        .map(|(n, x)| (n.to_string(), ParamPoly::from_int(x)))
        .collect();
    let e = expand::q_expand(&g.graph, &g.labels, &[2, 1], Some(&pq)).unwrap();
    let hat = e.hat_potential(&env).unwrap();
    assert!((hat[0][0][0] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    assert!((hat[1][1][1] - Complex64::new(6.5, 0.0)).norm() < 1e-12);
    assert!((hat[0][1][0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
}

#[test]
fn hat_identity_non_periodic() {
    let g = honeycomb_diamond(2).unwrap();
    let env = numeric_env(&["alpha", "beta", "gamma"], 1);
    let pq: HashMap<String, ParamPoly> = expand::cells(&[2, 1])
        .iter()
        .flat_map(|k| ["u", "v"].map(|v| expand::expanded_name(k, v)))
        .enumerate()
        .map(|(i, n)| (n, ParamPoly::constant(crate::param::ratio(2 * i as i64 + 1, 3))))
        .collect();
    let e = expand::q_expand(&g.graph, &g.labels, &[2, 1], Some(&pq)).unwrap();
    let dq = e.dispersion(DEFAULT_DET_CAP).unwrap();
    let z = [Complex64::new(0.7, 0.4), Complex64::new(-0.3, 1.2)];
    let err = e.hat_identity_error(&dq, &z, Complex64::new(0.25, -0.5), &env).unwrap();
    assert!(err < 1e-10, "{err}");
}

#[test]
fn lambda_degree_and_leading_sign() {
    let g = dice(2).unwrap();
    let e = expand::q_expand(&g.graph, &g.labels, &[2, 1], None).unwrap();
    let dq = e.dispersion(DEFAULT_DET_CAP).unwrap();
    assert_eq!(dq.lambda_degree(), Some(6));
    let lead = dq.coeff(&ExponentVector::new(vec![0, 0], 6)).unwrap();
    assert_eq!(lead.as_constant(), Some(rat(1)));
}

#[test]
fn spectrum_cases() {
    use super::spectrum::sample_spectrum;
    use crate::par::ExecMode;
    let mut one = isolated_vertex(1).unwrap();
    one.labels.potential[0] = ParamPoly::from_int(5);
    for row in sample_spectrum(&one.graph, &one.labels, 7, ExecMode::Sequential).unwrap() {
        assert!((row.eigenvalues[0] - 5.0).abs() < 1e-12);
    }
    let hc = honeycomb_diamond(2).unwrap();
    let bind: HashMap<String, ParamPoly> = [("alpha", 6), ("beta", 3), ("gamma", 2), ("V_u", 0), ("V_v", 0)]
        .into_iter()
        .map(|(n, x)| (n.to_string(), ParamPoly::from_int(x)))
        .collect();
    let mut lab = hc.labels.clone();
    lab.potential = lab.potential.iter().map(|p| p.substitute(&bind)).collect();
    lab.edge_labels = lab.edge_labels.iter().map(|p| p.as_ref().map(|q| q.substitute(&bind))).collect();
    let seq = sample_spectrum(&hc.graph, &lab, 6, ExecMode::Sequential).unwrap();
    let par = sample_spectrum(&hc.graph, &lab, 6, ExecMode::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.len(), 36);
    // at z = 1 the bands are 0 and 2(α+β+γ)
    assert!(seq[0].eigenvalues[0].abs() < 1e-10 && (seq[0].eigenvalues[1] - 22.0).abs() < 1e-10);
    for r in &seq {
        assert!((r.eigenvalues[0] + r.eigenvalues[1] - 22.0).abs() < 1e-9);
    }
    assert!(sample_spectrum(&hc.graph, &hc.labels, 3, ExecMode::Sequential).is_err());
}

#[test]
fn json_round_trip() {
    let g = dice(2).unwrap();
    let v = json::to_json(&g);
    assert_eq!(json::from_json(&v.to_string()).unwrap(), g);
    let text = r#"{"d":1,"vertices":["a"],"edges":[{"u":"a","v":"a","offset":[2]}],"potential":{"a":"1/2"}}"#;
    let h = json::from_json(text).unwrap();
    assert!(validate(&h.graph, &h.labels)[0].message.contains("unlabeled"));
    assert!(json::from_json(r#"{"d":1,"vertices":["a"],"edges":[{"u":"b","v":"a","offset":[1]}]}"#).is_err());
}

#[test]
fn spectrum_csv_is_long_format() {
    use super::spectrum::{sample_spectrum, to_csv};
    use crate::par::ExecMode;
    let g = honeycomb_diamond(1).unwrap().with_random_labels(1).zero_potential();
    let csv = to_csv(&sample_spectrum(&g.graph, &g.labels, 3, ExecMode::Sequential).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "grid_index,theta_1,k,lambda_k");
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines[6].starts_with("2,") && lines[6].split(',').nth(2) == Some("2"));
}
