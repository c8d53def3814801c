use std::collections::{BTreeMap, BTreeSet};

use super::{FoldSpec, OrigamiTemplate, Sign};
use crate::geometry::{affine_dimension, vertices_of, DelzantPolytope, GeometryError, Halfspace, Polytope};
use crate::rational::{format_rational, RationalVector};

/// How the two polytopes of a fold sit relative to the fold hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FoldConfiguration {
    /// Both polytopes on the same side; the fold facets carry identical
    /// halfspace data.
    SameSide,
    /// Polytopes on opposite sides; the fold halfspaces are negatives.
    Mirrored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeVerdict {
    pub name: String,
    pub sign: Sign,
    pub polytope: Option<DelzantPolytope>,
    pub error: Option<GeometryError>,
}

/// Geometric fold checks; only computed when both polytopes are valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldChecks {
    /// `None` when the two facets do not lie on one hyperplane.
    pub configuration: Option<FoldConfiguration>,
    /// The two facets have the same vertex set.
    pub facets_equal: bool,
    /// Around every face of the fold facet both polytopes are cut out by the
    /// same hyperplanes.
    pub local_agreement: bool,
}

impl FoldChecks {
    pub fn passed(&self) -> bool {
        self.configuration.is_some() && self.facets_equal && self.local_agreement
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldVerdict {
    pub fold: FoldSpec,
    pub distinct_polytopes: bool,
    pub opposite_signs: bool,
    /// Some facet of this fold also appears in another fold.
    pub facet_reused: bool,
    pub checks: Option<FoldChecks>,
}

impl FoldVerdict {
    pub fn passed(&self) -> bool {
        self.distinct_polytopes
            && self.opposite_signs
            && !self.facet_reused
            && self.checks.as_ref().is_some_and(FoldChecks::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub polytopes: Vec<PolytopeVerdict>,
    pub folds: Vec<FoldVerdict>,
    /// The graph with polytopes as nodes and folds as edges is connected.
    pub connected: bool,
    pub warnings: Vec<String>,
    pub accepted: bool,
}

impl ValidationReport {
    /// One line per failed check.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.polytopes {
            if let Some(e) = &p.error {
                out.push(format!("polytope \"{}\": {e}", p.name));
            }
        }
        for (i, f) in self.folds.iter().enumerate() {
            let label = format!("fold {i} ({}:{} / {}:{})", f.fold.a.0, f.fold.a.1, f.fold.b.0, f.fold.b.1);
            if !f.distinct_polytopes {
                out.push(format!("{label}: both sides on the same polytope"));
            }
            if !f.opposite_signs {
                out.push(format!("{label}: fold joins equal signs"));
            }
            if f.facet_reused {
                out.push(format!("{label}: facet used by more than one fold"));
            }
            match &f.checks {
                None => out.push(format!("{label}: not checked, a polytope is invalid")),
                Some(c) => {
                    if c.configuration.is_none() {
                        out.push(format!("{label}: facets lie on different hyperplanes"));
                    }
                    if !c.facets_equal {
                        out.push(format!("{label}: facets have different vertex sets"));
                    }
                    if !c.local_agreement {
                        out.push(format!("{label}: polytopes disagree near the fold"));
                    }
                }
            }
        }
        if !self.connected {
            out.push("fold graph is not connected".to_string());
        }
        out
    }
}

/// Runs every check and collects the verdicts; never fails.
pub fn validate_template(t: &OrigamiTemplate) -> ValidationReport {
    let n = t.dimension();
    let polytopes: Vec<PolytopeVerdict> = t
        .polytopes()
        .iter()
        .map(|spec| {
            let built = Polytope::new(n, spec.halfspaces.clone()).and_then(DelzantPolytope::try_from);
            let (polytope, error) = match built {
                Ok(p) => (Some(p), None),
                Err(e) => (None, Some(e)),
            };
            PolytopeVerdict { name: spec.name.clone(), sign: spec.sign, polytope, error }
        })
        .collect();

    let mut facet_uses: BTreeMap<(&str, usize), usize> = BTreeMap::new();
    for f in t.folds() {
        for side in [&f.a, &f.b] {
            *facet_uses.entry((side.0.as_str(), side.1)).or_default() += 1;
        }
    }

    let index = |name: &str| t.polytope_index(name).expect("fold names resolved at construction");
    let folds: Vec<FoldVerdict> = t
        .folds()
        .iter()
        .map(|f| {
            let (ia, ib) = (index(&f.a.0), index(&f.b.0));
            let facet_reused = facet_uses[&(f.a.0.as_str(), f.a.1)] > 1 || facet_uses[&(f.b.0.as_str(), f.b.1)] > 1;
            let checks = match (&polytopes[ia].polytope, &polytopes[ib].polytope) {
                (Some(pa), Some(pb)) => Some(fold_checks(pa, f.a.1, pb, f.b.1)),
                _ => None,
            };
            FoldVerdict {
                fold: f.clone(),
                distinct_polytopes: ia != ib,
                opposite_signs: polytopes[ia].sign != polytopes[ib].sign,
                facet_reused,
                checks,
            }
        })
        .collect();

    let connected = is_connected(t.polytopes().len(), t.folds().iter().map(|f| (index(&f.a.0), index(&f.b.0))));
    let warnings = overlap_warnings(n, &polytopes);
    let accepted = polytopes.iter().all(|p| p.error.is_none()) && folds.iter().all(FoldVerdict::passed) && connected;
    ValidationReport { polytopes, folds, connected, warnings, accepted }
}

fn facet_vertices(p: &Polytope, facet: usize) -> Vec<RationalVector> {
    (0..p.vertices().len()).filter(|&i| p.vertex_facets(i).contains(&facet)).map(|i| p.vertices()[i].clone()).collect()
}

/// Hyperplane key; unoriented keys identify `h` with its flip.
fn hyperplane_key(h: &Halfspace, oriented: bool) -> (Vec<i64>, String) {
    let first = h.normal().iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let h = if oriented || first > 0 { h.clone() } else { h.flipped() };
    (h.normal().to_vec(), format_rational(h.offset()))
}

fn fold_checks(pa: &DelzantPolytope, fa: usize, pb: &DelzantPolytope, fb: usize) -> FoldChecks {
    let (ha, hb) = (&pa.halfspaces()[fa], &pb.halfspaces()[fb]);
    let configuration = if ha == hb {
        Some(FoldConfiguration::SameSide)
    } else if *ha == hb.flipped() {
        Some(FoldConfiguration::Mirrored)
    } else {
        None
    };
    let facets_equal = facet_vertices(pa, fa) == facet_vertices(pb, fb);
    let local_agreement = match configuration {
        Some(c) if facets_equal => {
            let oriented = c == FoldConfiguration::SameSide;
            agree_near_facet(pa, fa, pb, fb, oriented) && agree_near_facet(pb, fb, pa, fa, oriented)
        }
        _ => false,
    };
    FoldChecks { configuration, facets_equal, local_agreement }
}

/// For each face `G` of facet `fa` of `pa`, the matching face of facet `fb`
/// of `pb` (same vertices) exists and lies on the same set of hyperplanes.
fn agree_near_facet(pa: &DelzantPolytope, fa: usize, pb: &DelzantPolytope, fb: usize, oriented: bool) -> bool {
    let coords = |p: &DelzantPolytope, idx: &[usize]| -> Vec<RationalVector> {
        let mut v: Vec<RationalVector> = idx.iter().map(|&i| p.vertices()[i].clone()).collect();
        v.sort();
        v
    };
    let planes = |p: &DelzantPolytope, facets: &[usize]| -> BTreeSet<(Vec<i64>, String)> {
        facets.iter().map(|&i| hyperplane_key(&p.halfspaces()[i], oriented)).collect()
    };
    pa.faces().faces().iter().filter(|g| g.facets().contains(&fa)).all(|g| {
        let target = coords(pa, g.vertices());
        pb.faces()
            .faces()
            .iter()
            .find(|h| h.facets().contains(&fb) && coords(pb, h.vertices()) == target)
            .is_some_and(|h| planes(pa, g.facets()) == planes(pb, h.facets()))
    })
}

fn is_connected(nodes: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    let r0 = root(&mut parent, 0);
    (0..nodes).all(|x| root(&mut parent, x) == r0)
}

fn overlap_warnings(n: usize, polytopes: &[PolytopeVerdict]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, a) in polytopes.iter().enumerate() {
        for b in &polytopes[i + 1..] {
            let (Some(pa), Some(pb)) = (&a.polytope, &b.polytope) else { continue };
            if a.sign != b.sign {
                continue;
            }
            let combined: Vec<Halfspace> = pa.halfspaces().iter().chain(pb.halfspaces()).cloned().collect();
            let Ok(vertices) = vertices_of(n, &combined) else { continue };
            let refs: Vec<&RationalVector> = vertices.iter().collect();
            if affine_dimension(&refs) == n {
                out.push(format!(
                    "polytopes \"{}\" and \"{}\" have the same sign and overlap; shared lattice points are counted once per polytope",
                    a.name, b.name
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::template::{gen_sphere_template, parse_template, PolytopeSpec};

    fn h(normal: &[i64], offset: num_rational::BigRational) -> Halfspace {
        Halfspace::new(normal.to_vec(), offset).unwrap()
    }

    #[test]
    fn sphere_template_is_accepted() {
        let t = gen_sphere_template(2, &rat(1)).unwrap();
        let report = validate_template(&t);
        assert!(report.accepted, "{:?}", report.problems());
        assert_eq!(report.folds[0].checks.as_ref().unwrap().configuration, Some(FoldConfiguration::SameSide));
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn equal_signs_are_rejected() {
        let t = gen_sphere_template(2, &rat(1)).unwrap().with_signs(&[Sign::Plus, Sign::Plus]).unwrap();
        let report = validate_template(&t);
        assert!(!report.accepted);
        assert!(!report.folds[0].opposite_signs);
        assert!(report.folds[0].checks.as_ref().unwrap().passed());
        assert!(report.problems().iter().any(|p| p.contains("equal signs")));
        assert!(report.warnings.iter().any(|w| w.contains("overlap")));
    }

    #[test]
    fn adjacent_slopes_must_agree() {
        // conv{(0,0),(1,0),(0,1)} and conv{(0,0),(1,0),(1/2,1)}, glued on y = 0
        let tri = vec![h(&[0, 1], rat(0)), h(&[1, 0], rat(0)), h(&[-1, -1], rat(1))];
        let skew = vec![h(&[0, 1], rat(0)), h(&[2, -1], rat(0)), h(&[-2, -1], rat(2))];
        let t = OrigamiTemplate::new(
            2,
            vec![
                PolytopeSpec { name: "a".into(), sign: Sign::Plus, halfspaces: tri },
                PolytopeSpec { name: "b".into(), sign: Sign::Minus, halfspaces: skew },
            ],
            vec![FoldSpec::new(("a", 0), ("b", 0))],
        )
        .unwrap();
        let report = validate_template(&t);
        assert!(!report.accepted);
        // the skew triangle is not Delzant either, so check agreement directly
        let pa = DelzantPolytope::try_from(Polytope::new(2, t.polytopes()[0].halfspaces.clone()).unwrap()).unwrap();
        let pb_poly = Polytope::new(2, t.polytopes()[1].halfspaces.clone()).unwrap();
        assert!(DelzantPolytope::try_from(pb_poly).is_err());
        let sq_a = vec![h(&[0, 1], rat(0)), h(&[1, 0], rat(0)), h(&[-1, 0], rat(1)), h(&[0, -1], rat(1))];
        let trap = vec![h(&[0, 1], rat(0)), h(&[1, 0], rat(0)), h(&[-1, -1], rat(2)), h(&[0, -1], rat(1))];
        let pa2 = DelzantPolytope::try_from(Polytope::new(2, sq_a).unwrap()).unwrap();
        let pb2 = DelzantPolytope::try_from(Polytope::new(2, trap).unwrap()).unwrap();
        let c = fold_checks(&pa2, 0, &pb2, 0);
        assert_eq!(c.configuration, Some(FoldConfiguration::SameSide));
        assert!(!c.facets_equal && !c.local_agreement);
        assert!(fold_checks(&pa, 2, &pa, 2).passed());
        // same bottom edge, different facet through (1, 0)
        let c = fold_checks(&pa2, 0, &pa, 0);
        assert!(c.facets_equal && !c.local_agreement && !c.passed());
    }

    #[test]
    fn mirrored_fold_is_recognized() {
        let upper = vec![h(&[0, 1], rat(0)), h(&[1, 0], rat(0)), h(&[-1, 0], rat(1)), h(&[0, -1], rat(1))];
        let lower = vec![h(&[0, -1], rat(0)), h(&[1, 0], rat(0)), h(&[-1, 0], rat(1)), h(&[0, 1], rat(1))];
        let t = OrigamiTemplate::new(
            2,
            vec![
                PolytopeSpec { name: "u".into(), sign: Sign::Plus, halfspaces: upper },
                PolytopeSpec { name: "l".into(), sign: Sign::Minus, halfspaces: lower },
            ],
            vec![FoldSpec::new(("u", 0), ("l", 0))],
        )
        .unwrap();
        let report = validate_template(&t);
        assert!(report.accepted, "{:?}", report.problems());
        assert_eq!(report.folds[0].checks.as_ref().unwrap().configuration, Some(FoldConfiguration::Mirrored));
    }

    #[test]
    fn verdict_is_symmetric_under_side_swap() {
        let t = gen_sphere_template(3, &rat(2)).unwrap();
        let swapped = t.with_folds(t.folds().iter().map(FoldSpec::swapped).collect()).unwrap();
        assert_eq!(validate_template(&t).accepted, validate_template(&swapped).accepted);
    }

    #[test]
    fn disconnected_and_reused_folds() {
        let s4 = gen_sphere_template(2, &rat(1)).unwrap();
        let mut polys = s4.polytopes().to_vec();
        polys.push(PolytopeSpec { name: "extra".into(), sign: Sign::Plus, halfspaces: polys[0].halfspaces.clone() });
        let t = OrigamiTemplate::new(2, polys.clone(), s4.folds().to_vec()).unwrap();
        let report = validate_template(&t);
        assert!(!report.connected && !report.accepted);

        let folds = vec![s4.folds()[0].clone(), FoldSpec::new(("extra", 2), (&s4.folds()[0].b.0, 2))];
        let t = OrigamiTemplate::new(2, polys, folds).unwrap();
        let report = validate_template(&t);
        assert!(report.connected);
        assert!(report.folds.iter().all(|f| f.facet_reused));
        assert!(!report.accepted);
    }

    #[test]
    fn self_fold_and_invalid_polytope() {
        let s4 = gen_sphere_template(2, &rat(1)).unwrap();
        let name = &s4.polytopes()[0].name;
        let t = s4.with_folds(vec![FoldSpec::new((name, 0), (name, 1))]).unwrap();
        let report = validate_template(&t);
        assert!(!report.folds[0].distinct_polytopes && !report.accepted);

        let text = r#"{ "dimension": 2, "polytopes": [ { "name": "P", "sign": "+", "halfspaces": [
            { "normal": [1, 0], "offset": "0" }, { "normal": [0, 1], "offset": "0" },
            { "normal": [-2, -1], "offset": "2" } ] } ], "folds": [] }"#;
        let report = validate_template(&parse_template(text).unwrap());
        assert!(matches!(report.polytopes[0].error, Some(GeometryError::NotDelzant { .. })));
        assert!(!report.accepted);
    }

    #[test]
    fn single_polytope_without_folds() {
        let sq = vec![h(&[1, 0], rat(0)), h(&[0, 1], rat(0)), h(&[-1, 0], ratio(3, 1)), h(&[0, -1], rat(1))];
        let t = OrigamiTemplate::single("P", 2, sq).unwrap();
        assert!(validate_template(&t).accepted);
        assert!(t.validated().is_ok());
    }
}
