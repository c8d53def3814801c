//! Origami templates: signed Delzant polytopes glued along fold facets.
//!
//! An [`OrigamiTemplate`] is the structural form read from a file. It becomes
//! a [`ValidatedTemplate`] once every polytope is Delzant and every fold
//! passes the agreement checks in [`validate_template`].

mod format;
mod generators;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::geometry::{DelzantPolytope, GeometryError, Halfspace};

pub use format::{parse_template, render_template};
pub use generators::{gen_hirzebruch, gen_product, gen_simplex, gen_sphere_template};
pub use validate::{validate_template, FoldChecks, FoldConfiguration, FoldVerdict, PolytopeVerdict, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One polytope entry of a template before geometric validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSpec {
    pub name: String,
    pub sign: Sign,
    pub halfspaces: Vec<Halfspace>,
}

/// A fold gluing facet `a.1` of polytope `a.0` to facet `b.1` of `b.0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoldSpec {
    pub a: (String, usize),
    pub b: (String, usize),
}

impl FoldSpec {
    pub fn new(a: (&str, usize), b: (&str, usize)) -> Self {
        Self { a: (a.0.to_string(), a.1), b: (b.0.to_string(), b.1) }
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b.clone(), b: self.a.clone() }
    }
}

/// Structurally valid template: names are unique, folds reference existing
/// polytopes and facets, and dimensions agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrigamiTemplate {
    dimension: usize,
    polytopes: Vec<PolytopeSpec>,
    folds: Vec<FoldSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("fold references unknown polytope \"{0}\"")]
    UnknownPolytopeName(String),
    #[error("polytope \"{polytope}\": dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { polytope: String, expected: usize, got: usize },
    #[error("malformed rational \"{0}\"")]
    MalformedRational(String),
    #[error("template must contain at least one polytope")]
    NoPolytopes,
    #[error("duplicate polytope name \"{0}\"")]
    DuplicateName(String),
    #[error("polytope \"{polytope}\" has no facet {facet} ({count} halfspaces)")]
    FacetOutOfRange { polytope: String, facet: usize, count: usize },
    #[error("polytope \"{polytope}\": {source}")]
    Geometry { polytope: String, source: GeometryError },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("template rejected: {}", .0.problems().join("; "))]
    Rejected(Box<ValidationReport>),
}

impl OrigamiTemplate {
    pub fn new(dimension: usize, polytopes: Vec<PolytopeSpec>, folds: Vec<FoldSpec>) -> Result<Self, TemplateError> {
        if polytopes.is_empty() {
            return Err(TemplateError::NoPolytopes);
        }
        if dimension == 0 {
            return Err(TemplateError::InvalidParameter("dimension must be at least 1".into()));
        }
        for (i, p) in polytopes.iter().enumerate() {
            if polytopes[..i].iter().any(|q| q.name == p.name) {
                return Err(TemplateError::DuplicateName(p.name.clone()));
            }
            if let Some(h) = p.halfspaces.iter().find(|h| h.dim() != dimension) {
                return Err(TemplateError::DimensionMismatch {
                    polytope: p.name.clone(),
                    expected: dimension,
                    got: h.dim(),
                });
            }
        }
        for fold in &folds {
            for (name, facet) in [&fold.a, &fold.b] {
                let p = polytopes
                    .iter()
                    .find(|p| &p.name == name)
                    .ok_or_else(|| TemplateError::UnknownPolytopeName(name.clone()))?;
                if *facet >= p.halfspaces.len() {
                    return Err(TemplateError::FacetOutOfRange {
                        polytope: name.clone(),
                        facet: *facet,
                        count: p.halfspaces.len(),
                    });
                }
            }
        }
        Ok(Self { dimension, polytopes, folds })
    }

    /// A template with one positively oriented polytope and no folds.
    pub fn single(name: &str, dimension: usize, halfspaces: Vec<Halfspace>) -> Result<Self, TemplateError> {
        Self::new(dimension, vec![PolytopeSpec { name: name.to_string(), sign: Sign::Plus, halfspaces }], Vec::new())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn polytopes(&self) -> &[PolytopeSpec] {
        &self.polytopes
    }

    pub fn folds(&self) -> &[FoldSpec] {
        &self.folds
    }

    pub fn polytope_index(&self, name: &str) -> Option<usize> {
        self.polytopes.iter().position(|p| p.name == name)
    }

    pub fn validated(&self) -> Result<ValidatedTemplate, TemplateError> {
        ValidatedTemplate::try_from(self)
    }

    /// Same polytopes with one sign changed per entry; used to build
    /// deliberately invalid variants.
    pub fn with_signs(&self, signs: &[Sign]) -> Result<Self, TemplateError> {
        if signs.len() != self.polytopes.len() {
            return Err(TemplateError::InvalidParameter("one sign per polytope".into()));
        }
        let mut out = self.clone();
        for (p, s) in out.polytopes.iter_mut().zip(signs) {
            p.sign = *s;
        }
        Ok(out)
    }

    pub fn with_folds(&self, folds: Vec<FoldSpec>) -> Result<Self, TemplateError> {
        Self::new(self.dimension, self.polytopes.clone(), folds)
    }

    /// Renames polytopes, consistently in folds.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> Result<Self, TemplateError> {
        let polytopes = self.polytopes.iter().map(|p| PolytopeSpec { name: rename(&p.name), ..p.clone() }).collect();
        let folds =
            self.folds.iter().map(|f| FoldSpec { a: (rename(&f.a.0), f.a.1), b: (rename(&f.b.0), f.b.1) }).collect();
        Self::new(self.dimension, polytopes, folds)
    }

    pub fn translated(&self, shift: &[i64]) -> Result<Self, TemplateError> {
        if shift.len() != self.dimension {
            return Err(TemplateError::InvalidParameter(format!("shift must have length {}", self.dimension)));
        }
        Ok(self.map_halfspaces(|h| h.translated(shift)))
    }

    /// Image under `x -> g x` for `g` in GL(n, Z).
    pub fn transformed(&self, g: &[Vec<i64>]) -> Result<Self, TemplateError> {
        let inv_t = crate::geometry::unimodular_inverse_transpose(g, self.dimension)
            .map_err(|e| TemplateError::InvalidParameter(e.to_string()))?;
        Ok(self.map_halfspaces(|h| h.transformed(&inv_t)))
    }

    fn map_halfspaces(&self, f: impl Fn(&Halfspace) -> Halfspace) -> Self {
        let mut out = self.clone();
        for p in &mut out.polytopes {
            p.halfspaces = p.halfspaces.iter().map(&f).collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPolytope {
    pub name: String,
    pub sign: Sign,
    pub polytope: DelzantPolytope,
}

/// A fold with polytopes resolved to indices into
/// [`ValidatedTemplate::polytopes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedFold {
    pub a: usize,
    pub facet_a: usize,
    pub b: usize,
    pub facet_b: usize,
    pub configuration: FoldConfiguration,
}

/// A template that passed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedTemplate {
    dimension: usize,
    polytopes: Vec<SignedPolytope>,
    folds: Vec<ResolvedFold>,
    warnings: Vec<String>,
}

impl ValidatedTemplate {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn polytopes(&self) -> &[SignedPolytope] {
        &self.polytopes
    }

    pub fn folds(&self) -> &[ResolvedFold] {
        &self.folds
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Fold facets of polytope `i`.
    pub fn fold_facets(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .folds
            .iter()
            .flat_map(|f| [(f.a, f.facet_a), (f.b, f.facet_b)])
            .filter(|&(p, _)| p == i)
            .map(|(_, facet)| facet)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl TryFrom<&OrigamiTemplate> for ValidatedTemplate {
    type Error = TemplateError;

    fn try_from(t: &OrigamiTemplate) -> Result<Self, Self::Error> {
        let report = validate_template(t);
        if !report.accepted {
            return Err(TemplateError::Rejected(Box::new(report)));
        }
        let polytopes = t
            .polytopes
            .iter()
            .zip(&report.polytopes)
            .map(|(spec, verdict)| SignedPolytope {
                name: spec.name.clone(),
                sign: spec.sign,
                polytope: verdict.polytope.clone().expect("accepted polytopes are Delzant"),
            })
            .collect();
        let folds = t
            .folds
            .iter()
            .zip(&report.folds)
            .map(|(f, v)| ResolvedFold {
                a: t.polytope_index(&f.a.0).expect("resolved at construction"),
                facet_a: f.a.1,
                b: t.polytope_index(&f.b.0).expect("resolved at construction"),
                facet_b: f.b.1,
                configuration: v
                    .checks
                    .as_ref()
                    .and_then(|c| c.configuration)
                    .expect("accepted folds have a configuration"),
            })
            .collect();
        Ok(Self { dimension: t.dimension, polytopes, folds, warnings: report.warnings })
    }
}

impl TryFrom<OrigamiTemplate> for ValidatedTemplate {
    type Error = TemplateError;

    fn try_from(t: OrigamiTemplate) -> Result<Self, Self::Error> {
        Self::try_from(&t)
    }
}
