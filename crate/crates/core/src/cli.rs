//! Command dispatch and JSON report assembly for the `mamlab` binary.

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::{
    certificate_from_offsets, is_complete, normal_fan, validate_fan, weak_normal_certificate, FanData, PolytopeH,
    RidgeFailure, WeakNormalCertificate, WeakNormalOutcome,
};
use crate::fixtures::{fixture, FIXTURE_NAMES};
use crate::foliation::{all_leaves, coordinate_submanifolds, detect_seifert};
use crate::io::{complex_json, interval_json, ints_json, point_json, psi_json, psi_spec, vec_json, InputFile, Problem};
use crate::kahler::{
    beta_vectors, gamma_matrix, kahler_audit, membership, nondegeneracy_check, potential, quadric_residual, sample_zp,
    AuditOptions,
};
use crate::scalar::relation::find_integer_relation;
use crate::scalar::{Scalar, SymbolTable, DEFAULT_MAX_BITS};
use crate::structure::{
    check_psi, genericity_g1, genericity_g2, hopf_data, psi_subspace_check, sample_psi, torus_periods, Candidates,
    Genericity, PsiMap, SubspaceStatus,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    ValidateFan,
    Complete,
    NormalFan,
    WeakNormal,
    Quadrics,
    PsiCheck,
    PsiSample,
    Genericity,
    Leaves,
    Seifert,
    CoordinateSubs,
    KahlerAudit,
    TorusPeriods,
    Hopf,
    Fixtures,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "mamlab", version, about = "Analyses of complex moment-angle manifolds")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Input JSON file; for `fixtures`, the fixture name (or `list`).
    pub input: String,
    /// Maximum working precision in bits for exact sign decisions.
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    pub precision: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Height bound for the subspace search in `genericity`.
    #[arg(long, default_value_t = 1)]
    pub height: u32,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_eig: f64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub precision: u32,
    pub seed: u64,
    pub samples: usize,
    pub height: u32,
    pub tol_eig: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            precision: DEFAULT_MAX_BITS,
            seed: 0,
            samples: 100,
            height: 1,
            tol_eig: 1e-8,
        }
    }
}

impl From<&Args> for Options {
    fn from(a: &Args) -> Self {
        Options {
            precision: a.precision,
            seed: a.seed,
            samples: a.samples,
            height: a.height,
            tol_eig: a.tol_eig,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

/// A finished report and the process exit code that goes with it.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.code == EXIT_OK
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => EXIT_PRECISION,
        _ => EXIT_INPUT,
    }
}

fn options_json(o: &Options) -> Value {
    json!({
        "precision": o.precision,
        "seed": o.seed,
        "samples": o.samples,
        "height": o.height,
        "tol_eig": o.tol_eig,
    })
}

fn frame(command: Command, o: &Options, source: Option<&str>, body: Result<(bool, Value)>) -> Outcome {
    let mut report = json!({
        "schema": 1,
        "tool": "mamlab",
        "version": VERSION,
        "command": command.name(),
        "options": options_json(o),
    });
    if let Some(s) = source {
        report["fixture"] = json!(s);
    }
    let code = match body {
        Ok((ok, result)) => {
            report["ok"] = json!(ok);
            report["result"] = result;
            if ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            report["ok"] = json!(false);
            report["error"] = json!({ "reason": e.reason(), "message": e.to_string() });
            exit_code(&e)
        }
    };
    Outcome { report, code }
}

/// Run `command` on the text of an input file.
pub fn run_text(command: Command, text: &str, o: &Options) -> Outcome {
    if command == Command::Fixtures {
        return run_fixture(text.trim(), o);
    }
    let parsed = InputFile::from_json(text).and_then(|f| f.problem());
    let name = parsed.as_ref().ok().and_then(|p| p.name.clone());
    let warning = parsed.as_ref().ok().and_then(|p| relation_warning(p.fan.table()));
    let body = parsed.and_then(|p| {
        let fan = p.fan.clone().with_max_bits(o.precision);
        dispatch(command, &Problem { fan, ..p }, o)
    });
    let mut out = frame(command, o, name.as_deref(), body);
    if let Some(w) = warning {
        out.report["warnings"] = json!([w]);
    }
    out
}

/// A note for the report when the symbol values look algebraically
/// dependent. Heuristic only: it never changes a verdict.
pub fn relation_warning(table: &SymbolTable) -> Option<String> {
    let hit = find_integer_relation(table)?;
    let terms: Vec<String> = hit
        .terms
        .iter()
        .map(|(mono, c)| {
            let factors: Vec<&str> = mono
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(table.name(i), e as usize))
                .collect();
            if factors.is_empty() {
                c.to_string()
            } else {
                format!("{c}*{}", factors.join("*"))
            }
        })
        .collect();
    Some(format!(
        "symbols may satisfy the integer relation {} = 0 (residual {:.1e}); results assume they are independent",
        terms.join(" + "),
        hit.residual
    ))
}

/// `fixtures <name>` emits the fixture file itself; `fixtures list` the names.
pub fn run_fixture(name: &str, o: &Options) -> Outcome {
    if name == "list" {
        return Outcome {
            report: json!(FIXTURE_NAMES),
            code: EXIT_OK,
        };
    }
    match fixture(name) {
        Ok(f) => Outcome {
            report: serde_json::to_value(&f).expect("serializable"),
            code: EXIT_OK,
        },
        Err(e) => frame(Command::Fixtures, o, None, Err(e)),
    }
}

fn dispatch(command: Command, p: &Problem, o: &Options) -> Result<(bool, Value)> {
    match command {
        Command::ValidateFan => cmd_validate(&p.fan),
        Command::Complete => cmd_complete(&p.fan),
        Command::NormalFan => cmd_normal_fan(p),
        Command::WeakNormal => cmd_weak_normal(p),
        Command::Quadrics => cmd_quadrics(p, o),
        Command::PsiCheck => cmd_psi_check(p),
        Command::PsiSample => cmd_psi_sample(p, o),
        Command::Genericity => cmd_genericity(p, o),
        Command::Leaves => cmd_leaves(&p.fan),
        Command::Seifert => cmd_seifert(&p.fan),
        Command::CoordinateSubs => cmd_coordinate_subs(&p.fan),
        Command::KahlerAudit => cmd_kahler(p, o),
        Command::TorusPeriods => cmd_torus(p, o),
        Command::Hopf => cmd_hopf(p, o),
        Command::Fixtures => unreachable!("handled before parsing"),
    }
}

fn need_psi(p: &Problem) -> Result<&PsiMap> {
    p.psi
        .as_ref()
        .ok_or_else(|| Error::Input("this command needs a `psi` section".into()))
}

fn need_offsets(p: &Problem) -> Result<&Vec<Scalar>> {
    p.offsets
        .as_ref()
        .ok_or_else(|| Error::Input("this command needs an `offsets` section".into()))
}

fn cmd_validate(f: &FanData) -> Result<(bool, Value)> {
    let t = f.table();
    let r = validate_fan(f)?;
    let overlaps: Vec<Value> = r
        .overlaps
        .iter()
        .map(|o| json!({ "first": o.first, "second": o.second, "mu": vec_json(&o.mu, t), "nu": vec_json(&o.nu, t) }))
        .collect();
    Ok((
        r.ok(),
        json!({ "dependent_faces": r.dependent_faces, "overlaps": overlaps }),
    ))
}

fn cmd_complete(f: &FanData) -> Result<(bool, Value)> {
    let r = is_complete(f)?;
    let ridges: Vec<Value> = r
        .ridges
        .iter()
        .map(|x| match x {
            RidgeFailure::Count { ridge, count } => json!({ "kind": "count", "ridge": ridge, "count": count }),
            RidgeFailure::SameSide { ridge, faces } => {
                json!({ "kind": "same-side", "ridge": ridge, "faces": [faces.0, faces.1] })
            }
            RidgeFailure::Degenerate { ridge } => json!({ "kind": "degenerate", "ridge": ridge }),
        })
        .collect();
    Ok((
        r.complete(),
        json!({
            "wrong_size": r.wrong_size,
            "ridge_failures": ridges,
            "components": r.components,
            "diagnostics": r.diagnostics(),
        }),
    ))
}

fn polytope(p: &Problem) -> Result<PolytopeH> {
    let mut poly = PolytopeH::new(
        p.fan.n(),
        p.fan.vectors().to_vec(),
        need_offsets(p)?.clone(),
        p.fan.table().clone(),
    )?;
    poly.max_bits = p.fan.max_bits();
    Ok(poly)
}

fn cmd_normal_fan(p: &Problem) -> Result<(bool, Value)> {
    let t = p.fan.table();
    let nf = normal_fan(&polytope(p)?)?;
    let vertices: Vec<Value> = nf
        .vertices
        .iter()
        .map(|v| json!({ "point": vec_json(&v.point, t), "facets": v.active }))
        .collect();
    let same = nf.fan.complex() == p.fan.complex();
    Ok((
        same,
        json!({
            "vertices": vertices,
            "nerve": { "m": nf.fan.m(), "maximal_faces": nf.fan.complex().maximal_faces() },
            "matches_input_complex": same,
        }),
    ))
}

fn certificate_json(c: &WeakNormalCertificate, f: &FanData) -> Value {
    let t = f.table();
    let cones: Vec<Value> = c
        .faces
        .iter()
        .zip(&c.vertices)
        .zip(&c.betas)
        .map(|((face, u), b)| json!({ "I": face, "u": vec_json(u, t), "beta": vec_json(b, t) }))
        .collect();
    json!({
        "offsets": vec_json(&c.offsets, t),
        "cones": cones,
        "scale_exponent": c.scale_exponent,
        "forced_zeros": c.forced_zeros.iter().map(|(i, k)| json!({ "I": i, "i": k })).collect::<Vec<_>>(),
    })
}

/// The supplied offsets if they certify the fan, otherwise a search.
/// Only complete fans can refine a normal fan; for the others the LP outcome
/// is still reported.
fn find_certificate(p: &Problem) -> Result<(Option<WeakNormalCertificate>, Value)> {
    let completeness = is_complete(&p.fan)?;
    if !completeness.complete() {
        let lp = match search_certificate(p) {
            Ok((_, v)) => v,
            Err(e) => json!({ "reason": e.reason(), "message": e.to_string() }),
        };
        return Ok((
            None,
            json!({ "reason": "fan is not complete", "diagnostics": completeness.diagnostics(), "lp": lp }),
        ));
    }
    search_certificate(p)
}

fn search_certificate(p: &Problem) -> Result<(Option<WeakNormalCertificate>, Value)> {
    if let Some(b) = &p.offsets {
        if let Some(c) = certificate_from_offsets(&p.fan, b)? {
            let v = json!({ "source": "input-offsets", "certificate": certificate_json(&c, &p.fan) });
            return Ok((Some(c), v));
        }
    }
    match weak_normal_certificate(&p.fan)? {
        WeakNormalOutcome::Found(c) => {
            let v = json!({ "source": "search", "certificate": certificate_json(&c, &p.fan) });
            Ok((Some(c), v))
        }
        WeakNormalOutcome::NotFound {
            farkas,
            forced_zeros,
            reason,
        } => Ok((
            None,
            json!({
                "source": "search",
                "reason": reason,
                "farkas": vec_json(&farkas, p.fan.table()),
                "forced_zeros": forced_zeros.iter().map(|(i, k)| json!({ "I": i, "i": k })).collect::<Vec<_>>(),
            }),
        )),
    }
}

fn cmd_weak_normal(p: &Problem) -> Result<(bool, Value)> {
    let (cert, v) = find_certificate(p)?;
    Ok((cert.is_some(), v))
}

fn cmd_quadrics(p: &Problem, o: &Options) -> Result<(bool, Value)> {
    let t = p.fan.table();
    let poly = polytope(p)?;
    let q = gamma_matrix(&p.fan, &poly.offsets)?;
    let samples = sample_zp(&poly, o.seed, o.samples)?;
    let max_residual = samples
        .iter()
        .flat_map(|z| quadric_residual(&q, z))
        .fold(0.0f64, |a, r| a.max(r.abs()));
    let mut all_in_u = true;
    for z in &samples {
        all_in_u &= membership(p.fan.complex(), z, 1e-12)?.in_u;
    }
    let nd = nondegeneracy_check(&q, &samples, 1e-9);
    let residual_ok = max_residual < 1e-10;
    let user_points: Vec<Value> = match &p.points {
        None => Vec::new(),
        Some(pts) => pts
            .iter()
            .map(|z| {
                let m = membership(p.fan.complex(), z, 1e-12)?;
                Ok(json!({
                    "point": point_json(z),
                    "residual": quadric_residual(&q, z),
                    "in_U": m.in_u,
                    "in_ZK": m.in_zk,
                    "margin": m.margin,
                }))
            })
            .collect::<Result<_>>()?,
    };
    let gamma: Vec<Value> = (0..q.gamma.rows()).map(|r| vec_json(q.gamma.row(r), t)).collect();
    Ok((
        residual_ok && all_in_u && nd.full_rank(),
        json!({
            "gamma": gamma,
            "rhs": vec_json(&q.rhs, t),
            "samples": samples.len(),
            "max_residual": max_residual,
            "all_in_U": all_in_u,
            "min_singular_value": nd.min_singular,
            "rank_drops": nd.rank_drops,
            "tolerances": { "residual": 1e-10, "singular": 1e-9 },
            "points": user_points,
        }),
    ))
}

fn psi_report(p: &Problem, psi: &PsiMap) -> Result<(bool, Value)> {
    let r = check_psi(&p.fan, psi)?;
    Ok((
        r.ok(),
        json!({ "real_rank": r.real_rank, "cond_a": r.cond_a, "cond_b": r.cond_b }),
    ))
}

fn cmd_psi_check(p: &Problem) -> Result<(bool, Value)> {
    psi_report(p, need_psi(p)?)
}

fn cmd_psi_sample(p: &Problem, o: &Options) -> Result<(bool, Value)> {
    let psi = sample_psi(&p.fan, o.seed)?;
    let (ok, mut v) = psi_report(p, &psi)?;
    v["psi"] = serde_json::to_value(psi_spec(&psi, p.fan.table())).expect("serializable");
    Ok((ok, v))
}

fn genericity_json(g: &Genericity) -> Value {
    match g {
        Genericity::Holds => json!({ "holds": true }),
        Genericity::Witness(w) => json!({ "holds": false, "witness": ints_json(w) }),
    }
}

fn cmd_genericity(p: &Problem, o: &Options) -> Result<(bool, Value)> {
    let g1 = genericity_g1(&p.fan)?;
    let g2 = genericity_g2(&p.fan)?;
    let psi = match &p.psi {
        Some(psi) => psi.clone(),
        None => sample_psi(&p.fan, o.seed)?,
    };
    let sub = psi_subspace_check(&p.fan, &psi, &Candidates::Height(o.height))?;
    let status = match &sub.status {
        SubspaceStatus::Verified => json!({ "verdict": "verified" }),
        SubspaceStatus::Counterexample {
            w,
            l_dim,
            q_dim,
            q_invariant,
        } => json!({
            "verdict": "counterexample",
            "w": w.iter().map(|v| ints_json(v)).collect::<Vec<_>>(),
            "l_dim": l_dim,
            "q_dim": q_dim,
            "q_invariant": q_invariant,
        }),
        SubspaceStatus::Skipped(why) => json!({ "verdict": "skipped", "reason": why }),
    };
    let ok = g1.holds() && g2.holds() && sub.status == SubspaceStatus::Verified;
    Ok((
        ok,
        json!({
            "g1": genericity_json(&g1),
            "g2": genericity_json(&g2),
            "subspace": {
                "status": status,
                "height": sub.height,
                "candidates_checked": sub.candidates_checked,
                "invariant_q_found": sub.invariant_q_found,
                "parity_applies": sub.parity_applies,
            },
            "psi": psi_json(&psi, p.fan.table()),
        }),
    ))
}

fn cmd_leaves(f: &FanData) -> Result<(bool, Value)> {
    let leaves: Vec<Value> = all_leaves(f)?
        .iter()
        .map(|l| {
            json!({
                "I": l.face,
                "rank": l.rank,
                "g_leaf": { "torus": l.torus, "affine": l.affine },
                "compact": l.compact,
            })
        })
        .collect();
    let seifert = detect_seifert(f)?.rational;
    Ok((true, json!({ "leaves": leaves, "seifert": seifert })))
}

fn cmd_seifert(f: &FanData) -> Result<(bool, Value)> {
    let r = detect_seifert(f)?;
    Ok((
        true,
        json!({
            "rational": r.rational,
            "relations": r.relations.iter().map(|v| ints_json(v)).collect::<Vec<_>>(),
            "primitive": r.primitive,
            "generators_primitive": r.generators_primitive,
            "rays": r.rays,
            "base_dimension": f.n(),
        }),
    ))
}

fn cmd_coordinate_subs(f: &FanData) -> Result<(bool, Value)> {
    let subs: Vec<Value> = coordinate_submanifolds(f, None)?
        .iter()
        .map(|s| {
            json!({
                "J": s.j,
                "K_J": s.k_j,
                "nonempty": s.nonempty,
                "dimension": s.dimension,
                "fan_valid": s.fan_valid,
                "complete": s.complete,
            })
        })
        .collect();
    Ok((true, json!({ "submanifolds": subs })))
}

fn cmd_kahler(p: &Problem, o: &Options) -> Result<(bool, Value)> {
    let (cert, cert_json) = find_certificate(p)?;
    let Some(cert) = cert else {
        return Ok((false, json!({ "weak_normal": cert_json })));
    };
    let betas = beta_vectors(&p.fan, &cert)?;
    let opts = AuditOptions {
        seed: o.seed,
        samples: o.samples,
        tol_eig: o.tol_eig,
        ..AuditOptions::default()
    };
    let r = kahler_audit(&p.fan, &betas, &opts)?;
    let values: Vec<Value> = match &p.points {
        None => Vec::new(),
        Some(pts) => pts
            .iter()
            .map(|z| match potential(&betas, z) {
                Ok(v) => json!({ "point": point_json(z), "potential": v }),
                Err(e) => json!({ "point": point_json(z), "error": e.to_string() }),
            })
            .collect(),
    };
    Ok((
        r.ok(),
        json!({
            "weak_normal": cert_json,
            "audit": serde_json::to_value(&r).expect("serializable"),
            "tolerances": serde_json::to_value(&opts).expect("serializable"),
            "potential": values,
        }),
    ))
}

fn cmd_torus(p: &Problem, o: &Options) -> Result<(bool, Value)> {
    let t = p.fan.table();
    let r = torus_periods(&p.fan, need_psi(p)?, o.precision.min(256))?;
    let gens: Vec<Value> = r
        .coefficients
        .iter()
        .zip(&r.numeric)
        .map(|(c, num)| {
            json!({
                "coefficient": c.iter().map(|z| complex_json(z, t)).collect::<Vec<_>>(),
                "value": num.iter().map(|(re, im)| json!({ "re": interval_json(re), "im": interval_json(im) })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let ok = r.real_rank == 2 * p.fan.ell().unwrap_or(0);
    Ok((
        ok,
        json!({
            "eliminated": r.eliminated,
            "convention": "generator k is 2*pi*i*coefficient[k]",
            "generators": gens,
            "real_rank": r.real_rank,
        }),
    ))
}

fn cmd_hopf(p: &Problem, o: &Options) -> Result<(bool, Value)> {
    let t = p.fan.table();
    let h = hopf_data(&p.fan, need_psi(p)?, o.precision.min(256))?;
    let contracting = h.moduli.iter().all(|x| x.hi < 1.0);
    Ok((
        contracting,
        json!({
            "ghost": h.ghost,
            "zeta": h.zetas.iter().map(|z| complex_json(z, t)).collect::<Vec<_>>(),
            "lambda": vec_json(&h.lambda, t),
            "mu": vec_json(&h.mu, t),
            "flipped": h.flipped,
            "moduli": h.moduli.iter().map(interval_json).collect::<Vec<_>>(),
            "contracting": contracting,
        }),
    ))
}
