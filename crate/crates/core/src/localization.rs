//! Lattice bookkeeping for the covering of an origami template by face
//! neighbourhoods, a fold band and cracks.
//!
//! Regions are never built as polytopes. Each lattice point is classified by
//! exact squared Euclidean distances:
//!
//! 1. crack: on a non-fold facet adjacent to a fold facet, at squared
//!    distance in `[eps^2/4, eps^2]` from the fold hyperplane;
//! 2. fold band: at squared distance in `(0, eps^2)` from a fold hyperplane;
//! 3. face region: the first face, by increasing dimension, at squared
//!    distance below `eps^2`;
//! 4. otherwise the interior.
//!
//! Points lying on a fold hyperplane fall through to the face regions of
//! each polytope and cancel between the two signed copies.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::Character;
use crate::exec::{map_slice, Strategy};
use crate::geometry::{DelzantPolytope, Face};
use crate::quantization::danilov_template_with;
use crate::rational::{
    format_rational, format_vector, inverse, rational_below_sqrt, squared_norm, to_rational_vector, LatticeVector,
    RationalVector,
};
use crate::template::{Sign, ValidatedTemplate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("epsilon {} is not admissible: epsilon^2 must be below {}", format_rational(.epsilon), .bound.as_ref().map_or("infinity".to_string(), format_rational))]
    InadmissibleEpsilon { epsilon: BigRational, bound: Option<BigRational> },
    #[error("audit failed in polytope \"{polytope}\", region {region}, at point {}: {reason}", format_lattice(.point))]
    AuditFailure { polytope: String, region: String, point: LatticeVector, reason: String },
}

fn format_lattice(x: &[i64]) -> String {
    format_vector(&to_rational_vector(x))
}

/// Bound on admissible radii.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    /// No lattice point constrains the radius.
    Unconstrained,
    /// `eps` is admissible iff `eps^2` is strictly below this squared
    /// distance.
    Below(BigRational),
}

impl Admissibility {
    pub fn admits(&self, epsilon: &BigRational) -> bool {
        epsilon.is_positive()
            && match self {
                Admissibility::Unconstrained => true,
                Admissibility::Below(bound) => &(epsilon * epsilon) < bound,
            }
    }

    pub fn squared_bound(&self) -> Option<&BigRational> {
        match self {
            Admissibility::Unconstrained => None,
            Admissibility::Below(b) => Some(b),
        }
    }

    /// A dyadic radius strictly inside the admissible range.
    pub fn suggested_epsilon(&self) -> BigRational {
        match self {
            Admissibility::Unconstrained => BigRational::one(),
            Admissibility::Below(bound) => rational_below_sqrt(bound, 4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringParams {
    epsilon: BigRational,
    strict: bool,
}

impl CoveringParams {
    /// Radius checked against the admissible bound.
    pub fn new(epsilon: BigRational) -> Result<Self, LocalizationError> {
        if !epsilon.is_positive() {
            return Err(LocalizationError::NonPositiveEpsilon);
        }
        Ok(Self { epsilon, strict: true })
    }

    /// Radius used as given even when inadmissible.
    pub fn overridden(epsilon: BigRational) -> Result<Self, LocalizationError> {
        Ok(Self { strict: false, ..Self::new(epsilon)? })
    }

    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }

    pub fn half_band(&self) -> BigRational {
        &self.epsilon / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionTag {
    /// Index into the polytope's face lattice.
    Face {
        face: usize,
        dim: usize,
        facets: Vec<usize>,
    },
    FoldBand {
        fold: usize,
    },
    Crack {
        fold: usize,
        facet: usize,
    },
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionTag::Face { dim, facets, .. } => write!(f, "face{facets:?} (dim {dim})"),
            RegionTag::FoldBand { fold } => write!(f, "fold band {fold}"),
            RegionTag::Crack { fold, facet } => write!(f, "crack of fold {fold} on facet {facet}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointAssignment {
    pub polytope: usize,
    pub point: LatticeVector,
    pub tag: RegionTag,
    /// More than one face of the chosen dimension was within range.
    pub ambiguous: bool,
}

/// Projection data for the affine hull of one face: `proj(x) = x - M (A x + c)`.
struct FaceProjection {
    normals: Vec<Vec<BigRational>>,
    offsets: Vec<BigRational>,
    m: Vec<Vec<BigRational>>,
}

impl FaceProjection {
    fn new(p: &DelzantPolytope, face: &Face) -> Self {
        let normals: Vec<Vec<BigRational>> =
            face.facets().iter().map(|&i| to_rational_vector(p.halfspaces()[i].normal())).collect();
        let offsets = face.facets().iter().map(|&i| p.halfspaces()[i].offset().clone()).collect();
        let k = normals.len();
        let n = p.dim();
        let m = if k == 0 {
            Vec::new()
        } else {
            let gram: Vec<Vec<BigRational>> =
                (0..k).map(|i| (0..k).map(|j| dot(&normals[i], &normals[j])).collect()).collect();
            let gram_inv = inverse(&gram).expect("facet normals of a face of a simple polytope are independent");
            (0..n).map(|r| (0..k).map(|j| (0..k).map(|i| &normals[i][r] * &gram_inv[i][j]).sum()).collect()).collect()
        };
        Self { normals, offsets, m }
    }

    fn project(&self, x: &[BigRational]) -> RationalVector {
        if self.normals.is_empty() {
            return x.to_vec();
        }
        let residual: Vec<BigRational> = self.normals.iter().zip(&self.offsets).map(|(a, c)| dot(a, x) + c).collect();
        x.iter().zip(&self.m).map(|(xi, row)| xi - dot(row, &residual)).collect()
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Per-polytope distance machinery.
struct FaceDistances<'a> {
    polytope: &'a DelzantPolytope,
    projections: Vec<FaceProjection>,
    /// For each face, the indices of its subfaces (itself included).
    subfaces: Vec<Vec<usize>>,
}

impl<'a> FaceDistances<'a> {
    fn new(polytope: &'a DelzantPolytope) -> Self {
        let faces = polytope.faces().faces();
        let projections = faces.iter().map(|f| FaceProjection::new(polytope, f)).collect();
        let subfaces =
            faces.iter().map(|f| (0..faces.len()).filter(|&g| f.contains_face(&faces[g])).collect()).collect();
        Self { polytope, projections, subfaces }
    }

    /// Squared distance from `x` to every face. The nearest point of a face
    /// is the projection onto the affine hull of the subface whose relative
    /// interior contains it, and such a projection lies in the polytope.
    fn squared_distances(&self, x: &[i64]) -> Vec<BigRational> {
        let xr = to_rational_vector(x);
        let to_hull: Vec<Option<BigRational>> = self
            .projections
            .iter()
            .map(|proj| {
                let y = proj.project(&xr);
                self.polytope.contains(&y).then(|| {
                    let diff: Vec<BigRational> = xr.iter().zip(&y).map(|(a, b)| a - b).collect();
                    squared_norm(&diff)
                })
            })
            .collect();
        self.subfaces
            .iter()
            .map(|subs| {
                subs.iter()
                    .filter_map(|&g| to_hull[g].clone())
                    .min()
                    .expect("vertices are subfaces and always project into the polytope")
            })
            .collect()
    }
}

fn fold_sides(t: &ValidatedTemplate, polytope: usize) -> Vec<(usize, usize)> {
    t.folds()
        .iter()
        .enumerate()
        .flat_map(|(k, f)| [(k, f.a, f.facet_a), (k, f.b, f.facet_b)])
        .filter(|&(_, p, _)| p == polytope)
        .map(|(k, _, facet)| (k, facet))
        .collect()
}

/// Fold hyperplanes as halfspaces of the first polytope of each fold.
fn fold_hyperplanes(t: &ValidatedTemplate) -> Vec<&crate::geometry::Halfspace> {
    t.folds().iter().map(|f| &t.polytopes()[f.a].polytope.halfspaces()[f.facet_a]).collect()
}

/// The squared-distance bound below which every radius keeps fold bands and
/// cracks free of lattice points and puts every lattice point only in the
/// neighbourhoods of faces containing it.
pub fn max_admissible_epsilon(t: &ValidatedTemplate) -> Admissibility {
    max_admissible_epsilon_with(t, Strategy::default())
}

pub fn max_admissible_epsilon_with(t: &ValidatedTemplate, strategy: Strategy) -> Admissibility {
    let hyperplanes = fold_hyperplanes(t);
    let per_polytope = map_slice(strategy, t.polytopes(), |sp| {
        let p = &sp.polytope;
        let dist = FaceDistances::new(p);
        let faces = p.faces().faces();
        let points = p.lattice_points_with(strategy);
        let per_point = map_slice(strategy, &points, |x| {
            let xr = to_rational_vector(x);
            let mut best: Option<BigRational> = None;
            let mut offer = |d: BigRational| {
                if best.as_ref().is_none_or(|b| &d < b) {
                    best = Some(d);
                }
            };
            for h in &hyperplanes {
                let d = h.squared_distance(&xr);
                if !d.is_zero() {
                    offer(d);
                }
            }
            for (face, d) in faces.iter().zip(dist.squared_distances(x)) {
                if face.dim() < p.dim() && !face.facets().iter().all(|&i| p.halfspaces()[i].slack_sign(x).is_eq()) {
                    offer(d);
                }
            }
            best
        });
        per_point.into_iter().flatten().min()
    });
    match per_polytope.into_iter().flatten().min() {
        Some(b) => Admissibility::Below(b),
        None => Admissibility::Unconstrained,
    }
}

/// Region assignment of every lattice point of every polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub epsilon: BigRational,
    pub admissibility: Admissibility,
    pub assignments: Vec<PointAssignment>,
}

/// Signed sum over crack points; the two sides of a fold should cancel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrackPairing {
    pub points: usize,
    pub character: Character,
}

impl CrackPairing {
    pub fn cancels(&self) -> bool {
        self.character.is_zero()
    }
}

impl Covering {
    pub fn crack_pairing(&self, t: &ValidatedTemplate) -> CrackPairing {
        let mut character = Character::zero(t.dimension());
        let mut points = 0;
        for a in self.assignments.iter().filter(|a| matches!(a.tag, RegionTag::Crack { .. })) {
            points += 1;
            character.add_term(a.point.clone(), BigInt::from(t.polytopes()[a.polytope].sign.value()));
        }
        CrackPairing { points, character }
    }

    /// First point not in a face region, or classified ambiguously.
    pub fn first_offender(&self) -> Option<&PointAssignment> {
        self.assignments.iter().find(|a| a.ambiguous || !matches!(a.tag, RegionTag::Face { .. }))
    }
}

pub fn build_covering(t: &ValidatedTemplate, params: &CoveringParams) -> Result<Covering, LocalizationError> {
    build_covering_with(t, params, Strategy::default())
}

pub fn build_covering_with(
    t: &ValidatedTemplate,
    params: &CoveringParams,
    strategy: Strategy,
) -> Result<Covering, LocalizationError> {
    let admissibility = max_admissible_epsilon_with(t, strategy);
    if params.strict && !admissibility.admits(&params.epsilon) {
        return Err(LocalizationError::InadmissibleEpsilon {
            epsilon: params.epsilon.clone(),
            bound: admissibility.squared_bound().cloned(),
        });
    }
    let eps2 = &params.epsilon * &params.epsilon;
    let quarter = &eps2 / BigRational::from_integer(BigInt::from(4));
    let mut assignments = Vec::new();
    for (i, sp) in t.polytopes().iter().enumerate() {
        let p = &sp.polytope;
        let folds = fold_sides(t, i);
        let fold_facets: Vec<usize> = folds.iter().map(|&(_, f)| f).collect();
        let dist = FaceDistances::new(p);
        let faces = p.faces();
        let points = p.lattice_points_with(strategy);
        let tags = map_slice(strategy, &points, |x| {
            let xr = to_rational_vector(x);
            for &(k, facet) in &folds {
                let d = p.halfspaces()[facet].squared_distance(&xr);
                let on_adjacent = (0..p.halfspaces().len()).find(|&g| {
                    !fold_facets.contains(&g) && p.halfspaces()[g].slack_sign(x).is_eq() && {
                        let mut pair = vec![facet, g];
                        pair.sort_unstable();
                        faces.find(&pair).is_some()
                    }
                });
                if let Some(g) = on_adjacent {
                    if quarter <= d && d <= eps2 {
                        return (RegionTag::Crack { fold: k, facet: g }, false);
                    }
                }
                if d.is_positive() && d < eps2 {
                    return (RegionTag::FoldBand { fold: k }, false);
                }
            }
            let d = dist.squared_distances(x);
            for j in 0..p.dim() {
                let near: Vec<usize> = faces.faces_of_dim(j).map(|(idx, _)| idx).filter(|&idx| d[idx] < eps2).collect();
                if let Some(&first) = near.first() {
                    let f = &faces.faces()[first];
                    return (RegionTag::Face { face: first, dim: j, facets: f.facets().to_vec() }, near.len() > 1);
                }
            }
            let top = faces.faces().len() - 1;
            (RegionTag::Face { face: top, dim: p.dim(), facets: Vec::new() }, false)
        });
        assignments.extend(points.into_iter().zip(tags).map(|(point, (tag, ambiguous))| PointAssignment {
            polytope: i,
            point,
            tag,
            ambiguous,
        }));
    }
    Ok(Covering { epsilon: params.epsilon.clone(), admissibility, assignments })
}

/// Signed contribution of one face region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionContribution {
    pub polytope: String,
    pub sign: Sign,
    pub tag: RegionTag,
    pub points: Vec<LatticeVector>,
    pub contribution: Character,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub epsilon: BigRational,
    pub admissibility: Admissibility,
    /// Nonempty face regions, by polytope and then face order.
    pub regions: Vec<RegionContribution>,
    pub fold_band_points: usize,
    pub crack_points: usize,
    pub total: Character,
    pub expected: Character,
    /// Each face region holds exactly the lattice points of the relative
    /// interior of its face.
    pub face_interiors_match: bool,
    /// Signed totals per geometric face (keyed by vertex coordinates),
    /// summed over all polytopes.
    pub geometric_face_totals: BTreeMap<Vec<RationalVector>, Character>,
}

impl AuditReport {
    pub fn total_matches(&self) -> bool {
        self.total == self.expected
    }

    /// Whether the signed copies of every geometric face cancel.
    pub fn pairs_cancel(&self) -> bool {
        self.geometric_face_totals.values().all(Character::is_zero)
    }

    pub fn passed(&self) -> bool {
        self.fold_band_points == 0 && self.crack_points == 0 && self.total_matches() && self.face_interiors_match
    }

    /// Machine-readable form: region, its lattice points, their terms.
    pub fn to_json(&self) -> Value {
        let regions: Vec<Value> = self
            .regions
            .iter()
            .map(|r| {
                let points: Vec<Value> = r
                    .points
                    .iter()
                    .map(|x| {
                        let term = Character::monomial(x.len(), x).expect("point length matches");
                        let term = if r.sign == Sign::Minus { -&term } else { term };
                        json!({ "point": x, "term": term.to_string() })
                    })
                    .collect();
                json!({
                    "polytope": r.polytope,
                    "sign": r.sign.symbol(),
                    "region": r.tag.to_string(),
                    "points": points,
                    "contribution": r.contribution.to_string(),
                })
            })
            .collect();
        json!({
            "epsilon": format_rational(&self.epsilon),
            "epsilon_squared_bound": self.admissibility.squared_bound().map(format_rational),
            "regions": regions,
            "fold_band_points": self.fold_band_points,
            "crack_points": self.crack_points,
            "total": self.total.to_string(),
            "expected": self.expected.to_string(),
            "face_interiors_match": self.face_interiors_match,
            "pairs_cancel": self.pairs_cancel(),
            "passed": self.passed(),
        })
    }
}

/// Builds the covering, reassembles the character from the face regions and
/// checks it against the lattice-point sum. Fails on the first lattice point
/// outside a face region.
pub fn audit_localization(t: &ValidatedTemplate, params: &CoveringParams) -> Result<AuditReport, LocalizationError> {
    audit_localization_with(t, params, Strategy::default())
}

pub fn audit_localization_with(
    t: &ValidatedTemplate,
    params: &CoveringParams,
    strategy: Strategy,
) -> Result<AuditReport, LocalizationError> {
    let covering = build_covering_with(t, params, strategy)?;
    if let Some(bad) = covering.first_offender() {
        let reason = if bad.ambiguous {
            "within epsilon of several faces of the same dimension"
        } else {
            "lattice point outside every face region"
        };
        return Err(LocalizationError::AuditFailure {
            polytope: t.polytopes()[bad.polytope].name.clone(),
            region: bad.tag.to_string(),
            point: bad.point.clone(),
            reason: reason.to_string(),
        });
    }

    let n = t.dimension();
    let mut grouped: BTreeMap<(usize, usize), Vec<LatticeVector>> = BTreeMap::new();
    for a in &covering.assignments {
        if let RegionTag::Face { face, .. } = a.tag {
            grouped.entry((a.polytope, face)).or_default().push(a.point.clone());
        }
    }
    let mut regions = Vec::new();
    let mut total = Character::zero(n);
    let mut face_interiors_match = true;
    let mut geometric_face_totals: BTreeMap<Vec<RationalVector>, Character> = BTreeMap::new();
    for ((i, face_index), points) in grouped {
        let sp = &t.polytopes()[i];
        let p = &sp.polytope;
        let face = &p.faces().faces()[face_index];
        let coeff = BigInt::from(sp.sign.value());
        let contribution = Character::from_terms(n, points.iter().map(|x| (x.clone(), coeff.clone())))
            .expect("points have the template dimension");
        if p.face_interior_lattice_points(face) != points {
            face_interiors_match = false;
        }
        total = &total + &contribution;
        let mut key: Vec<RationalVector> = face.vertices().iter().map(|&v| p.vertices()[v].clone()).collect();
        key.sort();
        let entry = geometric_face_totals.entry(key).or_insert_with(|| Character::zero(n));
        *entry = &*entry + &contribution;
        regions.push(RegionContribution {
            polytope: sp.name.clone(),
            sign: sp.sign,
            tag: RegionTag::Face { face: face_index, dim: face.dim(), facets: face.facets().to_vec() },
            points,
            contribution,
        });
    }
    let expected = danilov_template_with(t, strategy).character;
    let report = AuditReport {
        epsilon: covering.epsilon,
        admissibility: covering.admissibility,
        regions,
        fold_band_points: 0,
        crack_points: 0,
        total,
        expected,
        face_interiors_match,
        geometric_face_totals,
    };
    if !report.total_matches() {
        let point = report.total.checked_sub(&report.expected).ok().and_then(|d| d.terms().keys().next().cloned());
        return Err(LocalizationError::AuditFailure {
            polytope: String::new(),
            region: "total".into(),
            point: point.unwrap_or_default(),
            reason: "reassembled character differs from the lattice-point sum".into(),
        });
    }
    Ok(report)
}
