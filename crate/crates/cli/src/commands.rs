use std::fmt::{self, Write as _};
use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};
use toric_origami::cylinder::{kernel_dimension, Branch, CylinderError};
use toric_origami::localization::{
    audit_localization, build_covering, max_admissible_epsilon, CoveringParams, LocalizationError,
};
use toric_origami::oracle::{oracle_check_template, OracleError};
use toric_origami::quantization::danilov_template;
use toric_origami::rational::{format_rational, format_vector};
use toric_origami::template::{
    gen_hirzebruch, gen_simplex, gen_sphere_template, parse_template, render_template, validate_template,
    FoldConfiguration, OrigamiTemplate, ValidatedTemplate,
};

use crate::render::{integer, lattice, pretty, terms, yes_no};

pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Self { stdout, passed: true }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable file, malformed input or bad flag value.
    Usage(String),
    /// The input parsed but a check failed.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

type CliResult = Result<Outcome, CliError>;

fn load(path: &Path) -> Result<OrigamiTemplate, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_template(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_validated(path: &Path) -> Result<ValidatedTemplate, CliError> {
    load(path)?.validated().map_err(|e| CliError::Check(format!("{}: {e}", path.display())))
}

pub fn validate(path: &Path) -> CliResult {
    let template = load(path)?;
    let report = validate_template(&template);
    let mut out = String::new();
    for p in &report.polytopes {
        match (&p.polytope, &p.error) {
            (Some(d), _) => {
                writeln!(out, "polytope {} ({}): Delzant, {} vertices", p.name, p.sign, d.vertices().len()).unwrap()
            }
            (None, Some(e)) => writeln!(out, "polytope {} ({}): {e}", p.name, p.sign).unwrap(),
            (None, None) => writeln!(out, "polytope {} ({}): unchecked", p.name, p.sign).unwrap(),
        }
    }
    for (i, f) in report.folds.iter().enumerate() {
        let status = match &f.checks {
            Some(c) if f.passed() => match c.configuration {
                Some(FoldConfiguration::SameSide) => "ok (same side)",
                Some(FoldConfiguration::Mirrored) => "ok (mirrored)",
                None => "ok",
            },
            _ => "failed",
        };
        writeln!(out, "fold {i} ({}:{} / {}:{}): {status}", f.fold.a.0, f.fold.a.1, f.fold.b.0, f.fold.b.1).unwrap();
    }
    writeln!(out, "connected: {}", yes_no(report.connected)).unwrap();
    for w in &report.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    for p in report.problems() {
        writeln!(out, "problem: {p}").unwrap();
    }
    out.push_str(if report.accepted { "ACCEPTED\n" } else { "REJECTED\n" });
    Ok(Outcome { stdout: out, passed: report.accepted })
}

pub fn rr(path: &Path, as_json: bool) -> CliResult {
    let t = load_validated(path)?;
    let rr = danilov_template(&t);
    if !as_json {
        return Ok(Outcome::pass(format!("character: {}\ndimension: {}\n", rr.character, rr.dimension)));
    }
    let mut polytopes = Vec::new();
    let mut faces = Vec::new();
    for sp in t.polytopes() {
        let c = &rr.per_polytope[&sp.name];
        polytopes.push(json!({
            "name": sp.name,
            "sign": sp.sign.symbol(),
            "character": c.to_string(),
            "dimension": integer(&c.dimension()),
        }));
        for face in sp.polytope.faces().faces() {
            let c = &rr.per_face[&(sp.name.clone(), face.facets().to_vec())];
            let vertices: Vec<String> =
                face.vertices().iter().map(|&v| format_vector(&sp.polytope.vertices()[v])).collect();
            faces.push(json!({
                "polytope": sp.name,
                "sign": sp.sign.symbol(),
                "dim": face.dim(),
                "facets": face.facets(),
                "vertices": vertices,
                "character": c.to_string(),
            }));
        }
    }
    let v = json!({
        "character": rr.character.to_string(),
        "terms": terms(&rr.character),
        "dimension": integer(&rr.dimension),
        "polytopes": polytopes,
        "faces": faces,
    });
    Ok(Outcome::pass(pretty(&v)))
}

pub fn oracle(path: &Path, direction: Option<Vec<i64>>) -> CliResult {
    let t = load_validated(path)?;
    let report = match oracle_check_template(&t, direction.as_deref()) {
        Ok(r) => r,
        Err(e @ OracleError::NonIntegralVertex(_)) => {
            return Ok(Outcome { stdout: format!("SKIPPED: {e}\n"), passed: false });
        }
        Err(e @ (OracleError::NonGenericDirection { .. } | OracleError::DimensionMismatch { .. })) => {
            return Err(CliError::Usage(e.to_string()));
        }
        Err(e) => return Err(CliError::Check(e.to_string())),
    };
    let mut out = String::new();
    let dir: Vec<String> = report.direction.iter().map(i64::to_string).collect();
    let how = if direction.is_some() { "" } else { " (chosen automatically)" };
    writeln!(out, "direction: {}{how}", dir.join(",")).unwrap();
    for (name, f) in &report.per_polytope {
        writeln!(out, "  {name}: {f}").unwrap();
    }
    let fixed = match report.fixed_point_laurent() {
        Ok(l) => l.to_string(),
        Err(_) => report.fixed_point.to_string(),
    };
    writeln!(out, "fixed point: {fixed}").unwrap();
    writeln!(out, "enumeration: {}", report.enumeration).unwrap();
    out.push_str(if report.agree { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { stdout: out, passed: report.agree })
}

pub fn covering(path: &Path, epsilon: Option<BigRational>, allow_inadmissible: bool, as_json: bool) -> CliResult {
    let t = load_validated(path)?;
    let admissibility = max_admissible_epsilon(&t);
    let epsilon = epsilon.unwrap_or_else(|| admissibility.suggested_epsilon());
    let bound = admissibility.squared_bound().map_or("none".to_string(), format_rational);
    let admissible = admissibility.admits(&epsilon);
    let mut out = String::new();
    if !as_json {
        writeln!(out, "epsilon^2 bound: {bound}").unwrap();
        writeln!(
            out,
            "epsilon: {} ({})",
            format_rational(&epsilon),
            if admissible { "admissible" } else { "not admissible" }
        )
        .unwrap();
    }
    let params = if allow_inadmissible { CoveringParams::overridden(epsilon) } else { CoveringParams::new(epsilon) };
    let params = params.map_err(|e| CliError::Usage(e.to_string()))?;

    let bound_json = admissibility.squared_bound().map(format_rational);
    let failure = |mut out: String, e: &LocalizationError| {
        if as_json {
            out = pretty(&json!({ "passed": false, "epsilon_squared_bound": bound_json, "error": e.to_string() }));
        } else {
            writeln!(out, "FAIL: {e}").unwrap();
        }
        Ok(Outcome { stdout: out, passed: false })
    };

    let cover = match build_covering(&t, &params) {
        Ok(c) => c,
        Err(e) => return failure(out, &e),
    };
    let name = |i: usize| &t.polytopes()[i].name;
    let assignments: Vec<Value> = cover
        .assignments
        .iter()
        .map(|a| {
            json!({
                "polytope": name(a.polytope),
                "point": a.point,
                "region": a.tag.to_string(),
                "ambiguous": a.ambiguous,
            })
        })
        .collect();
    if !as_json {
        out.push_str("assignments:\n");
        for a in &cover.assignments {
            let flag = if a.ambiguous { " (ambiguous)" } else { "" };
            writeln!(out, "  {} {} -> {}{flag}", name(a.polytope), lattice(&a.point), a.tag).unwrap();
        }
    }
    let report = match audit_localization(&t, &params) {
        Ok(r) => r,
        Err(e) => {
            if !as_json && cover.first_offender().is_some() {
                let pairing = cover.crack_pairing(&t);
                writeln!(
                    out,
                    "crack pairing: {} points, signed sum {} ({})",
                    pairing.points,
                    pairing.character,
                    if pairing.cancels() { "cancels" } else { "does not cancel" }
                )
                .unwrap();
            }
            return failure(out, &e);
        }
    };
    if as_json {
        let mut v = report.to_json();
        v["assignments"] = Value::Array(assignments);
        return Ok(Outcome { stdout: pretty(&v), passed: report.passed() });
    }
    out.push_str("regions:\n");
    for r in &report.regions {
        writeln!(out, "  {} ({}) {}: {}", r.polytope, r.sign, r.tag, r.contribution).unwrap();
    }
    writeln!(out, "fold band points: {}", report.fold_band_points).unwrap();
    writeln!(out, "crack points: {}", report.crack_points).unwrap();
    writeln!(out, "total: {}", report.total).unwrap();
    writeln!(out, "expected: {}", report.expected).unwrap();
    writeln!(out, "face interiors match: {}", yes_no(report.face_interiors_match)).unwrap();
    writeln!(out, "signed copies cancel: {}", yes_no(report.pairs_cancel())).unwrap();
    out.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { stdout: out, passed: report.passed() })
}

pub fn cylinder(t: &BigRational, modes: RangeInclusive<i64>, as_json: bool) -> CliResult {
    let (lo, hi) = (*modes.start(), *modes.end());
    let report = kernel_dimension(t, modes).map_err(|e| match e {
        CylinderError::NegativeT(_) => CliError::Usage(e.to_string()),
        _ => CliError::Check(e.to_string()),
    })?;
    let passed = report.verified() && report.dimension() == 0;
    if as_json {
        let certificates: Vec<Value> = report
            .certificates
            .iter()
            .map(|c| {
                json!({
                    "branch": match c.branch { Branch::Plus => "plus", Branch::Minus => "minus" },
                    "m": c.m,
                    "slope_plus": format_rational(&c.slope_plus),
                    "slope_minus": format_rational(&c.slope_minus),
                    "decays_at_plus": c.decays_at_plus,
                    "decays_at_minus": c.decays_at_minus,
                    "square_integrable": c.square_integrable(),
                    "verified": c.verify(),
                })
            })
            .collect();
        let v = json!({
            "t": format_rational(t),
            "modes": [lo, hi],
            "certificates": certificates,
            "blanket": {
                "min_abs_slope": format_rational(&report.blanket.min_abs_slope),
                "verified": report.blanket.verify(),
            },
            "kernel": report.dimension(),
            "index": report.index(),
            "passed": passed,
        });
        return Ok(Outcome { stdout: pretty(&v), passed });
    }
    let mut out = String::new();
    writeln!(out, "t = {}, modes {lo}..{hi}", format_rational(t)).unwrap();
    writeln!(out, "{:<6} {:>5} {:>12} {:>12} {:>4}", "branch", "m", "slope(+inf)", "slope(-inf)", "L2").unwrap();
    for c in &report.certificates {
        writeln!(
            out,
            "{:<6} {:>5} {:>12} {:>12} {:>4}",
            c.branch.to_string(),
            c.m,
            format_rational(&c.slope_plus),
            format_rational(&c.slope_minus),
            yes_no(c.square_integrable())
        )
        .unwrap();
    }
    writeln!(
        out,
        "blanket: |slope| >= {} for every integer mode ({})",
        format_rational(&report.blanket.min_abs_slope),
        if report.blanket.verify() { "verified" } else { "not verified" }
    )
    .unwrap();
    writeln!(out, "kernel {}, index {}", report.dimension(), report.index()).unwrap();
    out.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { stdout: out, passed })
}

pub fn enumerate(path: &Path, as_json: bool) -> CliResult {
    let t = load_validated(path)?;
    let lists: Vec<_> = t.polytopes().iter().map(|sp| (sp, sp.polytope.lattice_points())).collect();
    if as_json {
        let polytopes: Vec<Value> =
            lists.iter().map(|(sp, pts)| json!({ "name": sp.name, "sign": sp.sign.symbol(), "points": pts })).collect();
        return Ok(Outcome::pass(pretty(&json!({ "polytopes": polytopes }))));
    }
    let mut out = String::new();
    for (sp, pts) in &lists {
        writeln!(out, "{} ({}): {} points", sp.name, sp.sign, pts.len()).unwrap();
        for x in pts {
            writeln!(out, "  {}", lattice(x)).unwrap();
        }
    }
    Ok(Outcome::pass(out))
}

fn generated(t: Result<OrigamiTemplate, toric_origami::template::TemplateError>) -> CliResult {
    let t = t.map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Outcome::pass(render_template(&t)))
}

pub fn generate_sphere(n: usize, k: &BigRational) -> CliResult {
    generated(gen_sphere_template(n, k))
}

pub fn generate_simplex(n: usize, k: &BigRational) -> CliResult {
    generated(gen_simplex(n, k).and_then(|p| OrigamiTemplate::single("simplex", n, p.halfspaces().to_vec())))
}

pub fn generate_hirzebruch(a: i64, height: &BigRational, width: &BigRational) -> CliResult {
    generated(
        gen_hirzebruch(a, height, width)
            .and_then(|p| OrigamiTemplate::single("hirzebruch", 2, p.halfspaces().to_vec())),
    )
}
