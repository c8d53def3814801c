//! Polytopes and templates shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use toric_origami::geometry::DelzantPolytope;
use toric_origami::rational::{rat, ratio};
use toric_origami::template::{
    gen_hirzebruch, gen_product, gen_simplex, gen_sphere_template, parse_template, FoldSpec, OrigamiTemplate,
    PolytopeSpec, Sign,
};

pub fn cube(n: usize, k: i64) -> DelzantPolytope {
    let interval = gen_simplex(1, &rat(k)).unwrap();
    let mut p = interval.clone();
    for _ in 1..n {
        p = gen_product(&p, &interval).unwrap();
    }
    p
}

/// Simplices, cubes, products and Hirzebruch trapezoids, all with integral
/// vertices in the nonnegative orthant.
pub fn corpus_polytopes() -> Vec<(String, DelzantPolytope)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 1..=3 {
            out.push((format!("{k}simplex{n}"), gen_simplex(n, &rat(k)).unwrap()));
        }
    }
    for n in 2..=3 {
        for k in 1..=2 {
            out.push((format!("cube{n}x{k}"), cube(n, k)));
        }
    }
    let s = |n, k| gen_simplex(n, &rat(k)).unwrap();
    out.push(("simplex1*simplex2".into(), gen_product(&s(1, 1), &s(2, 1)).unwrap()));
    out.push(("simplex2*simplex1".into(), gen_product(&s(2, 1), &s(1, 1)).unwrap()));
    out.push(("2simplex2*simplex1".into(), gen_product(&s(2, 2), &s(1, 1)).unwrap()));
    for a in 0..=3 {
        for extra in 1..=2 {
            let w = a + extra;
            out.push((format!("hirzebruch{a}w{w}"), gen_hirzebruch(a, &rat(1), &rat(w)).unwrap()));
        }
    }
    out.push(("hirzebruch1h2w3".into(), gen_hirzebruch(1, &rat(2), &rat(3)).unwrap()));
    out.push(("hirzebruch2h2w5".into(), gen_hirzebruch(2, &rat(2), &rat(5)).unwrap()));
    out
}

pub fn single(name: &str, p: &DelzantPolytope) -> OrigamiTemplate {
    OrigamiTemplate::single(name, p.dim(), p.halfspaces().to_vec()).unwrap()
}

/// `P` with sign + and a copy with sign -, folded along facet `facet`.
pub fn two_copies(p: &DelzantPolytope, facet: usize) -> OrigamiTemplate {
    let spec = |name: &str, sign| PolytopeSpec { name: name.into(), sign, halfspaces: p.halfspaces().to_vec() };
    OrigamiTemplate::new(
        p.dim(),
        vec![spec("P", Sign::Plus), spec("Q", Sign::Minus)],
        vec![FoldSpec::new(("P", facet), ("Q", facet))],
    )
    .unwrap()
}

pub fn template_file(name: &str) -> (String, OrigamiTemplate) {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "templates", name].iter().collect();
    let text = std::fs::read_to_string(p).unwrap();
    let t = parse_template(&text).unwrap();
    (text, t)
}

pub const ACCEPTED_FILES: [&str; 6] =
    ["s4.json", "s4_integral.json", "unit_simplex.json", "square.json", "hirzebruch.json", "cylinder_band.json"];

/// Spheres of every size and scale, the shipped accepted templates, a few
/// sphere halves at rational scale and every corpus polytope on its own.
pub fn corpus_templates() -> Vec<(String, OrigamiTemplate)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 1..=3 {
            out.push((format!("sphere{n}k{k}"), gen_sphere_template(n, &rat(k)).unwrap()));
        }
    }
    out.push(("sphere2k5/2".into(), gen_sphere_template(2, &ratio(5, 2)).unwrap()));
    for f in ACCEPTED_FILES {
        out.push((f.to_string(), template_file(f).1));
    }
    for (name, p) in corpus_polytopes() {
        out.push((name.clone(), single(&name, &p)));
    }
    out
}
