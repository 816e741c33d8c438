use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bloch_core::criteria::{self, Verdict};
use bloch_core::graph::builders::LabeledGraph;
use bloch_core::graph::expand::{cells, expanded_name, q_expand, QExpansion};
use bloch_core::graph::json as graph_json;
use bloch_core::graph::spectrum::{sample_spectrum, to_csv};
use bloch_core::graph::{dispersion as dispersion_of, floquet_matrix};
use bloch_core::par::ExecMode;
use bloch_core::{IntegralPolytope, LaurentPoly};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::config::{self, Common, PotentialSpec};
use crate::Failure;

type Outcome = Result<u8, Failure>;

fn write_file(dir: &Path, name: &str, text: &str) -> Result<PathBuf, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| Failure::io(format!("{}: {e}", p.display())))?;
    Ok(p)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn point(p: &[i64]) -> String {
    let s: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", s.join(","))
}

fn monomial(p: &[i64]) -> String {
    let d = p.len() - 1;
    LaurentPoly::term(&p[..d], p[d] as u32, 1).to_string()
}

fn newton_summary(newt: &IntegralPolytope) -> String {
    let mut s = format!(
        "newton polytope: dim {}, {} vertices, {} facets\n",
        newt.dim(),
        newt.vertices().len(),
        newt.facets().len()
    );
    match newt.pyramid() {
        Some(p) => {
            for &a in &p.apexes {
                let v = &newt.vertices()[a];
                let _ = writeln!(
                    s,
                    "pyramid: apex {} {}, height {}, base of {} vertices",
                    monomial(v),
                    point(v),
                    newt.pyramid_height(a),
                    newt.vertices().len() - 1
                );
            }
        }
        None => s += "pyramid: no\n",
    }
    s
}

/// The base graph with the potential spec applied to its own cell.
fn base_graph(c: &Common) -> Result<(LabeledGraph, PotentialSpec), Failure> {
    let g = config::load_graph(c)?;
    let ones = vec![1; g.graph.d];
    let spec = PotentialSpec::parse(&c.potential, c.seed)?;
    let (mut g, map) = config::apply_potential(g, &ones, &spec)?;
    if let Some(map) = map {
        let cell = &cells(&ones)[0];
        for (i, v) in g.graph.vertices.clone().iter().enumerate() {
            g.labels.potential[i] = map[&expanded_name(cell, v)].clone();
        }
    }
    Ok((g, spec))
}

pub fn dispersion(c: &Common) -> Outcome {
    let (g, _) = base_graph(c)?;
    let mut d = dispersion_of(&g.graph, &g.labels, c.det_cap)?;
    if let Some(l) = config::lambda0(c)? {
        d = d.specialize_lambda(&l);
    }
    if d.is_zero() {
        return Err(Failure::invalid("dispersion polynomial is zero".into()));
    }
    let newt = IntegralPolytope::hull(&d.support_points())?;
    let support: Vec<String> = d.support_points().iter().map(|p| point(p)).collect();
    print!(
        "D(z,l) = {d}\nterms: {}\nsupport: {}\n{}",
        d.num_terms(),
        support.join(" "),
        newton_summary(&newt)
    );
    if let Some(out) = &c.out {
        let v = json!({ "polynomial": d.to_string(), "terms": d.to_json(), "newton": newt.to_json() });
        let p = write_file(out, "dispersion.json", &pretty(&v))?;
        println!("wrote {}", p.display());
    }
    Ok(0)
}

fn expansion(c: &Common) -> Result<(QExpansion, criteria::Problem), Failure> {
    let (problem, _) = config::problem(c)?;
    let g = &problem.graph;
    let qe = q_expand(&g.graph, &g.labels, &problem.q, problem.potential_q.as_ref())?;
    Ok((qe, problem))
}

pub fn expand(c: &Common) -> Outcome {
    let (qe, problem) = expansion(c)?;
    println!(
        "Q = {}: {} orbits, {} edges, potential {}",
        point(&problem.q.iter().map(|&x| x as i64).collect::<Vec<_>>()),
        qe.size(),
        qe.expanded.edges.len(),
        if qe.potential_is_zd_periodic() { "Z^d-periodic" } else { "QZ^d-periodic" }
    );
    let mut dq = dispersion_of(&qe.expanded, &qe.labels, c.det_cap)?;
    let mut d = dispersion_of(&problem.graph.graph, &problem.graph.labels.with_zero_potential(), c.det_cap)?;
    if let Some(l) = &problem.lambda0 {
        dq = dq.specialize_lambda(l);
        d = d.specialize_lambda(l);
    }
    println!("D_Q(z,l) = {dq}\nterms: {}", dq.num_terms());
    let newt = IntegralPolytope::hull(&dq.support_points())?;
    print!("{}", newton_summary(&newt));
    let dil = IntegralPolytope::hull(&d.support_points())?.contracted_dilation(&problem.q)?;
    let relation = if newt == dil {
        "equals"
    } else if newt.vertices().iter().all(|v| dil.contains(v)) {
        "is contained in"
    } else {
        "is not contained in"
    };
    println!("newt(D_Q) {relation} the contracted |Q|-dilation of newt(D)");
    if let Some(out) = &c.out {
        let lg = LabeledGraph {
            graph: qe.expanded.clone(),
            labels: qe.labels.clone(),
        };
        let p = write_file(out, "expanded_graph.json", &pretty(&graph_json::to_json(&lg)))?;
        println!("wrote {}", p.display());
        let v = json!({ "polynomial": dq.to_string(), "terms": dq.to_json(), "newton": newt.to_json() });
        let p = write_file(out, "dispersion_q.json", &pretty(&v))?;
        println!("wrote {}", p.display());
    }
    Ok(0)
}

pub fn analyze(c: &Common) -> Outcome {
    let (problem, spec) = config::problem(c)?;
    let options = config::options(c)?;
    println!(
        "graph: {} (d = {}), Q = {}, potential: {}, seed: {}",
        c.graph,
        problem.graph.graph.d,
        point(&problem.q.iter().map(|&x| x as i64).collect::<Vec<_>>()),
        spec.describe(),
        c.seed
    );
    if let Some(l) = &c.lambda0 {
        println!("Fermi slice: lambda0 = {l}");
    }
    let a = criteria::analyze(problem, options)?;
    println!("verdict: {}", a.verdict.name());
    match &a.verdict {
        Verdict::ReducibleWithFactors(fs) => {
            for (r, k) in fs {
                println!("  factor (l - {})^{k}", bloch_core::param::format_rational(r));
            }
        }
        Verdict::Inconclusive(reasons) => {
            println!("blocked:");
            for r in reasons {
                println!("  {r}");
            }
        }
        _ => {}
    }
    if a.conclusion().is_some() {
        println!("derivation:");
        for f in a.certificate_facts() {
            let from = if f.premises.is_empty() {
                String::new()
            } else {
                let ps: Vec<String> = f.premises.iter().map(|p| format!("#{p}")).collect();
                format!(" from {}", ps.join(","))
            };
            println!(
                "  #{} {:?}: {} by {} [{}]{from}",
                f.id,
                f.claim,
                f.subject,
                f.rule.name(),
                f.rule.reference()
            );
        }
    }
    let cert = a.certificate();
    criteria::replay_certificate(&cert).map_err(|e| Failure::check(format!("certificate does not replay: {e}")))?;
    println!("replay: ok");
    if let Some(out) = &c.out {
        let p = write_file(out, "certificate.json", &pretty(&cert))?;
        println!("certificate: {}", p.display());
    }
    Ok(if matches!(a.verdict, Verdict::Inconclusive(_)) { 10 } else { 0 })
}

fn require_numeric(g: &LabeledGraph, potential_q: Option<&HashMap<String, bloch_core::ParamPoly>>) -> Result<(), Failure> {
    let mut symbols = g.labels.symbols();
    if let Some(m) = potential_q {
        symbols = g.labels.with_zero_potential().symbols();
        symbols.extend(m.values().flat_map(|p| p.symbols()));
    }
    match symbols.iter().next() {
        None => Ok(()),
        Some(s) => Err(Failure::invalid(format!(
            "numeric labels and potential needed, `{s}` is symbolic (try --random-labels N --potential random-periodic)"
        ))),
    }
}

struct Check {
    name: &'static str,
    ok: Option<bool>,
    detail: String,
}

pub fn verify(c: &Common) -> Outcome {
    let (qe, problem) = expansion(c)?;
    require_numeric(&problem.graph, problem.potential_q.as_ref())?;
    let env = HashMap::new();
    let d_dim = problem.graph.graph.d;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(c.seed);
    let mut random_point = |modulus: bool| -> (Vec<Complex64>, Complex64) {
        let z = (0..d_dim)
            .map(|_| {
                let r = if modulus { rng.gen_range(0.6..1.6) } else { 1.0 };
                Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
            })
            .collect();
        (z, Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
    };
    let mut checks = Vec::new();

    let lq = floquet_matrix(&qe.expanded, &qe.labels)?;
    let n = lq.size();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let (z, _) = random_point(false);
        let h = lq.eval_numeric(&z, Complex64::default(), &env)?;
        let scale = h.iter().map(|x| x.norm()).fold(1.0, f64::max);
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((h[i * n + j] - h[j * n + i].conj()).norm() / scale);
            }
        }
    }
    checks.push(Check {
        name: "hermitian symbol on |z| = 1",
        ok: Some(worst <= c.tol),
        detail: format!("max rel err {worst:.3e}"),
    });

    let dq = dispersion_of(&qe.expanded, &qe.labels, c.det_cap)?;
    let base = dispersion_of(&problem.graph.graph, &problem.graph.labels, c.det_cap)?;
    let points: Vec<(Vec<Complex64>, Complex64)> = (0..20).map(|_| random_point(true)).collect();
    let hat: Vec<f64> = points
        .iter()
        .map(|(z, l)| qe.hat_identity_error(&dq, z, *l, &env))
        .collect::<bloch_core::Result<_>>()?;
    let worst = hat.iter().cloned().fold(0.0, f64::max);
    checks.push(Check {
        name: "D_Q(z^Q) = det of block-Fourier matrix",
        ok: Some(worst <= c.tol),
        detail: format!("max rel err {worst:.3e} over {} points", points.len()),
    });

    let periodic = qe.potential_is_zd_periodic();
    if periodic {
        let errs: Vec<f64> = points
            .iter()
            .map(|(z, l)| qe.product_identity_error(&dq, &base, z, *l, &env))
            .collect::<bloch_core::Result<_>>()?;
        let worst = errs.iter().cloned().fold(0.0, f64::max);
        checks.push(Check {
            name: "D_Q(z^Q) = product of D(mu z)",
            ok: Some(worst <= c.tol),
            detail: format!("max rel err {worst:.3e} over {} points", points.len()),
        });
        let newt_q = IntegralPolytope::hull(&dq.support_points())?;
        let dil = IntegralPolytope::hull(&base.support_points())?.contracted_dilation(&problem.q)?;
        checks.push(Check {
            name: "vertices of newt(D_Q) = dilated vertices of newt(D)",
            ok: Some(newt_q == dil),
            detail: format!("{} vertices", newt_q.vertices().len()),
        });
    } else {
        for name in ["D_Q(z^Q) = product of D(mu z)", "vertices of newt(D_Q) = dilated vertices of newt(D)"] {
            checks.push(Check {
                name,
                ok: None,
                detail: "n/a (potential not Z^d-periodic)".into(),
            });
        }
    }

    println!("seed: {}, tol: {:e}", c.seed, c.tol);
    let mut failed = false;
    for ch in &checks {
        let status = match ch.ok {
            Some(true) => "pass",
            Some(false) => {
                failed = true;
                "FAIL"
            }
            None => "n/a",
        };
        println!("{status:<5} {:<52} {}", ch.name, ch.detail);
    }
    Ok(u8::from(failed))
}

pub fn export(c: &Common) -> Outcome {
    let out = c
        .out
        .as_ref()
        .ok_or_else(|| Failure::usage("export needs --out <dir>".into()))?;
    let (qe, problem) = expansion(c)?;
    let mut d = dispersion_of(&problem.graph.graph, &problem.graph.labels, c.det_cap)?;
    if let Some(l) = &problem.lambda0 {
        d = d.specialize_lambda(l);
    }
    let newt = IntegralPolytope::hull(&d.support_points())?;
    let p = write_file(out, "newton.json", &pretty(&newt.to_json()))?;
    println!("wrote {}", p.display());
    let ambient = newt.ambient_dim();
    if ambient >= 3 {
        let p = write_file(out, "newton.off", &newt.to_off([0, 1, ambient - 1])?)?;
        println!("wrote {}", p.display());
    }
    match require_numeric(&problem.graph, problem.potential_q.as_ref()) {
        Ok(()) => {
            let samples = sample_spectrum(&qe.expanded, &qe.labels, c.grid, ExecMode::Parallel)?;
            let p = write_file(out, "spectrum.csv", &to_csv(&samples))?;
            println!("wrote {}", p.display());
        }
        Err(f) => println!("spectrum skipped: {}", f.message),
    }
    Ok(0)
}

pub fn replay(path: &Path) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let cert: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::usage(e.to_string()))?;
    criteria::replay_certificate(&cert).map_err(|e| Failure::check(format!("replay failed: {e}")))?;
    println!("replay: ok ({} facts, verdict {})", cert["facts"].as_array().map_or(0, Vec::len), cert["verdict"]["name"]);
    Ok(0)
}
