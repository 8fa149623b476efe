//! Browser bindings for three mamlab operations: a fan report with its
//! polygon, a heatmap of the transverse potential, and a quadric sampler.
//!
//! Every export takes the JSON input format read by the `mamlab` CLI and
//! returns a JSON string. Failures come back as `{"error": "..."}`.

use mamlab::fan::{
    is_complete, validate_fan, weak_normal_certificate, PolytopeH, WeakNormalCertificate, WeakNormalOutcome,
};
use mamlab::io::{InputFile, Problem};
use mamlab::kahler::{
    beta_vectors, gamma_matrix, hessian_log, membership, nondegeneracy_check, potential_log, quadric_residual,
    sample_zp, BetaSystem,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Outcome = Result<Value, String>;

fn load(input: &str) -> Result<Problem, String> {
    InputFile::from_json(input)
        .and_then(|f| f.problem())
        .map_err(|e| e.to_string())
}

fn finish(r: Outcome) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn certificate(p: &Problem) -> Result<WeakNormalCertificate, String> {
    if !is_complete(&p.fan).map_err(|e| e.to_string())?.complete() {
        return Err("fan is not complete".into());
    }
    match weak_normal_certificate(&p.fan).map_err(|e| e.to_string())? {
        WeakNormalOutcome::Found(c) => Ok(c),
        WeakNormalOutcome::NotFound { reason, .. } => Err(reason),
    }
}

/// The polytope from the input offsets, or from a weak-normal certificate
/// when the input has none.
fn polytope(p: &Problem) -> Result<PolytopeH, String> {
    let b = match &p.offsets {
        Some(b) => b.clone(),
        None => certificate(p)?.offsets,
    };
    PolytopeH::new(p.fan.n(), p.fan.vectors().to_vec(), b, p.fan.table().clone()).map_err(|e| e.to_string())
}

fn betas(p: &Problem) -> Result<BetaSystem, String> {
    beta_vectors(&p.fan, &certificate(p)?).map_err(|e| e.to_string())
}

/// Names of the built-in fixtures, as a JSON array.
#[wasm_bindgen]
pub fn fixture_names() -> String {
    json!([
        "square",
        "hopf-rational",
        "hopf-generic",
        "simplex-2",
        "overlap",
        "quadrant"
    ])
    .to_string()
}

/// The input file of a built-in fixture.
#[wasm_bindgen]
pub fn fixture_input(name: &str) -> String {
    match mamlab::fixtures::fixture(name) {
        Ok(f) => f.to_json(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

pub fn fan_report_value(input: &str) -> Outcome {
    let p = load(input)?;
    let t = p.fan.table();
    let fan = validate_fan(&p.fan).map_err(|e| e.to_string())?;
    let complete = is_complete(&p.fan).map_err(|e| e.to_string())?;
    let weak = match certificate(&p) {
        Ok(c) => json!({ "found": true, "scale_exponent": c.scale_exponent }),
        Err(reason) => json!({ "found": false, "reason": reason }),
    };
    let rays: Vec<Vec<f64>> = p
        .fan
        .vectors()
        .iter()
        .map(|v| v.iter().map(|x| x.to_f64(t)).collect())
        .collect();
    let mut out = json!({
        "n": p.fan.n(),
        "m": p.fan.m(),
        "rays": rays,
        "cones": p.fan.complex().maximal_faces(),
        "valid": fan.ok(),
        "overlaps": fan.overlap_pairs(),
        "complete": complete.complete(),
        "diagnostics": complete.diagnostics(),
        "weak_normal": weak,
    });
    if p.fan.n() == 2 && weak["found"] == true {
        let poly = polytope(&p)?;
        let mut verts: Vec<[f64; 2]> = poly
            .vertices()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|v| [v.point[0].to_f64(t), v.point[1].to_f64(t)])
            .collect();
        let cx = verts.iter().map(|v| v[0]).sum::<f64>() / verts.len().max(1) as f64;
        let cy = verts.iter().map(|v| v[1]).sum::<f64>() / verts.len().max(1) as f64;
        verts.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
        out["polygon"] = json!(verts);
    }
    Ok(out)
}

/// Validity, completeness and weak normality of the fan; for weakly normal
/// planar fans, also the polygon vertices in cyclic order.
#[wasm_bindgen]
pub fn fan_report(input: &str) -> String {
    finish(fan_report_value(input))
}

pub fn potential_grid_value(input: &str, size: usize, range: f64) -> Outcome {
    let p = load(input)?;
    let b = betas(&p)?;
    let m = p.fan.m();
    if m < 2 {
        return Err("the heatmap needs at least two coordinates".into());
    }
    let size = size.clamp(2, 256);
    let mut values = Vec::with_capacity(size * size);
    let mut curvature = Vec::with_capacity(size * size);
    for row in 0..size {
        for col in 0..size {
            let mut x = vec![0.0; m];
            x[0] = range * (2.0 * col as f64 / (size - 1) as f64 - 1.0);
            x[1] = range * (1.0 - 2.0 * row as f64 / (size - 1) as f64);
            values.push(potential_log(&b, &x));
            curvature.push(hessian_log(&b, &x).trace());
        }
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(json!({ "size": size, "range": range, "values": values, "trace": curvature, "min": lo, "max": hi }))
}

/// Potential `F(x)` on the square `[−range, range]²` of log-moduli
/// `(x_1, x_2)`, other coordinates zero, with the Hessian trace per cell.
#[wasm_bindgen]
pub fn potential_grid(input: &str, size: usize, range: f64) -> String {
    finish(potential_grid_value(input, size, range))
}

pub fn sample_quadrics_value(input: &str, seed: u64, count: usize) -> Outcome {
    let p = load(input)?;
    let poly = polytope(&p)?;
    let b = poly.offsets.clone();
    let q = gamma_matrix(&p.fan, &b).map_err(|e| e.to_string())?;
    let samples = sample_zp(&poly, seed, count.clamp(1, 2000)).map_err(|e| e.to_string())?;
    let mut residual: f64 = 0.0;
    let mut in_u = true;
    for z in &samples {
        residual = quadric_residual(&q, z).iter().fold(residual, |a, r| a.max(r.abs()));
        in_u &= membership(p.fan.complex(), z, 1e-12).map_err(|e| e.to_string())?.in_u;
    }
    let nd = nondegeneracy_check(&q, &samples, 1e-9);
    let moduli: Vec<Vec<f64>> = samples.iter().map(|z| z.moduli_sq()).collect();
    Ok(json!({
        "gamma": q.gamma_f64,
        "rhs": q.rhs_f64,
        "moduli_sq": moduli,
        "max_residual": residual,
        "in_u": in_u,
        "full_rank": nd.full_rank(),
        "min_singular": nd.min_singular,
    }))
}

/// Seeded points of the quadric realization with their squared moduli,
/// the worst quadric residual and the Jacobian rank check.
#[wasm_bindgen]
pub fn sample_quadrics(input: &str, seed: u32, count: usize) -> String {
    finish(sample_quadrics_value(input, u64::from(seed), count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn square_report_has_polygon() {
        let r = parse(&fan_report(&fixture_input("square")));
        assert_eq!(r["valid"], true);
        assert_eq!(r["complete"], true);
        assert_eq!(r["weak_normal"]["found"], true);
        assert_eq!(r["polygon"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn offsets_come_from_the_certificate_when_absent() {
        let input = fixture_input("hopf-generic");
        assert!(parse(&input).get("offsets").is_none());
        let r = parse(&fan_report(&input));
        assert_eq!(r["polygon"].as_array().unwrap().len(), 3);
        let q = parse(&sample_quadrics(&input, 2, 20));
        assert!(q["max_residual"].as_f64().unwrap() < 1e-10);
    }

    #[test]
    fn quadrant_is_reported_incomplete() {
        let r = parse(&fan_report(&fixture_input("quadrant")));
        assert_eq!(r["complete"], false);
        assert!(!r["diagnostics"].as_array().unwrap().is_empty());
    }

    #[test]
    fn heatmap_is_finite_with_nonnegative_trace() {
        let r = parse(&potential_grid(&fixture_input("hopf-generic"), 16, 1.0));
        let v: Vec<f64> = r["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        assert_eq!(v.len(), 256);
        assert!(v.iter().all(|x| x.is_finite()));
        assert!(r["trace"]
            .as_array()
            .unwrap()
            .iter()
            .all(|x| x.as_f64().unwrap() >= -1e-12));
    }

    #[test]
    fn quadric_samples_are_on_the_variety() {
        let r = parse(&sample_quadrics(&fixture_input("square"), 3, 50));
        assert!(r["max_residual"].as_f64().unwrap() < 1e-10);
        assert_eq!(r["in_u"], true);
        assert_eq!(r["full_rank"], true);
        assert_eq!(r["moduli_sq"].as_array().unwrap().len(), 50);
    }

    #[test]
    fn errors_are_json() {
        let r = parse(&fan_report("{not json"));
        assert!(r["error"].is_string());
        let r = parse(&potential_grid(&fixture_input("quadrant"), 8, 1.0));
        assert_eq!(r["error"], "fan is not complete");
    }
}
