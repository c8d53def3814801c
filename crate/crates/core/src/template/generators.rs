use num_rational::BigRational;
use num_traits::Signed;

use super::{FoldSpec, OrigamiTemplate, PolytopeSpec, Sign, TemplateError};
use crate::geometry::{DelzantPolytope, Halfspace, Polytope};
use crate::rational::rat;

fn geometry(name: &str) -> impl Fn(crate::geometry::GeometryError) -> TemplateError + '_ {
    move |source| TemplateError::Geometry { polytope: name.to_string(), source }
}

fn unit(n: usize, i: usize, value: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = value;
    e
}

/// Halfspaces of `{x_i >= 0, sum x_i <= k}`; the last one is the
/// hypotenuse.
fn simplex_halfspaces(n: usize, k: &BigRational) -> Vec<Halfspace> {
    let mut h: Vec<Halfspace> = (0..n).map(|i| Halfspace::new(unit(n, i, 1), rat(0)).expect("nonzero")).collect();
    h.push(Halfspace::new(vec![-1; n], k.clone()).expect("nonzero"));
    h
}

fn check_simplex_params(n: usize, k: &BigRational) -> Result<(), TemplateError> {
    if n == 0 {
        return Err(TemplateError::InvalidParameter("dimension must be at least 1".into()));
    }
    if !k.is_positive() {
        return Err(TemplateError::InvalidParameter("scale must be positive".into()));
    }
    Ok(())
}

/// The simplex `{x_i >= 0, sum x_i <= k}`.
pub fn gen_simplex(n: usize, k: &BigRational) -> Result<DelzantPolytope, TemplateError> {
    check_simplex_params(n, k)?;
    let p = Polytope::new(n, simplex_halfspaces(n, k)).map_err(geometry("simplex"))?;
    DelzantPolytope::try_from(p).map_err(geometry("simplex"))
}

/// Two copies of `{x_i >= 0, sum x_i <= k/2}` with signs `+` and `-`,
/// folded along the hypotenuse. For `k = 1` this is the image of `S^{2n}`
/// with moment map `|z|^2 / 2`.
pub fn gen_sphere_template(n: usize, k: &BigRational) -> Result<OrigamiTemplate, TemplateError> {
    check_simplex_params(n, k)?;
    let half = k / rat(2);
    let h = simplex_halfspaces(n, &half);
    OrigamiTemplate::new(
        n,
        vec![
            PolytopeSpec { name: "plus".into(), sign: Sign::Plus, halfspaces: h.clone() },
            PolytopeSpec { name: "minus".into(), sign: Sign::Minus, halfspaces: h },
        ],
        vec![FoldSpec::new(("plus", n), ("minus", n))],
    )
}

/// `P x Q` in `n_P + n_Q` variables; facets of `P` come first.
pub fn gen_product(p: &Polytope, q: &Polytope) -> Result<DelzantPolytope, TemplateError> {
    let n = p.dim() + q.dim();
    let lift = |h: &Halfspace, before: usize| {
        let mut normal = vec![0; n];
        normal[before..before + h.dim()].copy_from_slice(h.normal());
        Halfspace::new(normal, h.offset().clone()).expect("nonzero")
    };
    let halfspaces: Vec<Halfspace> =
        p.halfspaces().iter().map(|h| lift(h, 0)).chain(q.halfspaces().iter().map(|h| lift(h, p.dim()))).collect();
    let product = Polytope::new(n, halfspaces).map_err(geometry("product"))?;
    DelzantPolytope::try_from(product).map_err(geometry("product"))
}

/// The Hirzebruch trapezoid `{x >= 0, 0 <= y <= height, x + a y <= width}`,
/// which needs `width > a * height`.
pub fn gen_hirzebruch(a: i64, height: &BigRational, width: &BigRational) -> Result<DelzantPolytope, TemplateError> {
    if a < 0 {
        return Err(TemplateError::InvalidParameter("twist must be nonnegative".into()));
    }
    if !height.is_positive() {
        return Err(TemplateError::InvalidParameter("height must be positive".into()));
    }
    if !(width - height * rat(a)).is_positive() {
        return Err(TemplateError::InvalidParameter("width must exceed twist times height".into()));
    }
    let h = vec![
        Halfspace::new(vec![1, 0], rat(0)).expect("nonzero"),
        Halfspace::new(vec![0, 1], rat(0)).expect("nonzero"),
        Halfspace::new(vec![0, -1], height.clone()).expect("nonzero"),
        Halfspace::new(vec![-1, -a], width.clone()).expect("nonzero"),
    ];
    let p = Polytope::new(2, h).map_err(geometry("hirzebruch"))?;
    DelzantPolytope::try_from(p).map_err(geometry("hirzebruch"))
}
