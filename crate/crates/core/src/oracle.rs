//! Fixed-point cross-check: Brion's vertex-cone sum, specialized along a
//! generic one-parameter subgroup and evaluated exactly in Q(q).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{LaurentPoly, PolyQ, RationalFunction};
use crate::exec::{map_slice, Strategy};
use crate::geometry::DelzantPolytope;
use crate::quantization::danilov_template_with;
use crate::rational::{dot_int, dot_int_rat, format_vector, to_lattice_vector, RationalVector};
use crate::template::ValidatedTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex {} is not integral", format_vector(.0))]
    NonIntegralVertex(RationalVector),
    #[error("direction {direction:?} is orthogonal to edge {edge:?}")]
    NonGenericDirection { direction: Vec<i64>, edge: Vec<i64> },
    #[error("direction has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{} is not a vertex of the polytope", format_vector(.0))]
    UnknownVertex(RationalVector),
    #[error("vertex sum did not reduce to a Laurent polynomial: {0}")]
    NotPolynomial(String),
}

/// Whether `a` pairs nontrivially with every edge and separates the
/// vertices of each polytope.
pub fn is_generic(polytopes: &[&DelzantPolytope], a: &[i64]) -> bool {
    polytopes.iter().all(|p| {
        let edges_ok = p.cones().iter().all(|c| c.edge_generators.iter().all(|w| dot_int(w, a) != 0));
        let mut seen = BTreeSet::new();
        let distinct = p.vertices().iter().all(|v| seen.insert(dot_int_rat(a, v)));
        edges_ok && distinct
    })
}

/// Nonnegative integer vectors other than zero, by increasing max-norm and
/// lexicographically within a norm.
fn candidates(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (1i64..).flat_map(move |r| {
        let total = (r + 1).pow(n as u32);
        (0..total).filter_map(move |idx| {
            let mut v = vec![0; n];
            let mut rem = idx;
            for c in (0..n).rev() {
                v[c] = rem % (r + 1);
                rem /= r + 1;
            }
            (v.iter().copied().max() == Some(r)).then_some(v)
        })
    })
}

/// The first generic direction in the search order of [`candidates`].
pub fn find_generic_direction(polytopes: &[&DelzantPolytope]) -> Vec<i64> {
    find_generic_directions(polytopes, 1).remove(0)
}

/// The first `count` generic directions in search order.
pub fn find_generic_directions(polytopes: &[&DelzantPolytope], count: usize) -> Vec<Vec<i64>> {
    let n = polytopes.first().map_or(1, |p| p.dim());
    candidates(n).filter(|a| is_generic(polytopes, a)).take(count).collect()
}

fn check_direction(n: usize, a: &[i64]) -> Result<(), OracleError> {
    if a.len() != n {
        return Err(OracleError::DimensionMismatch { expected: n, got: a.len() });
    }
    Ok(())
}

/// Numerator and denominator data of one vertex term in the form
/// `sign * q^shift / prod (1 - q^{c_i})` with every `c_i > 0`.
struct VertexTerm {
    sign: i64,
    shift: i64,
    exponents: Vec<u64>,
}

fn vertex_term(p: &DelzantPolytope, index: usize, a: &[i64]) -> Result<VertexTerm, OracleError> {
    let v = &p.vertices()[index];
    let x = to_lattice_vector(v).ok_or_else(|| OracleError::NonIntegralVertex(v.clone()))?;
    let mut sign = 1;
    let mut shift = dot_int(&x, a);
    let mut exponents = Vec::new();
    for w in &p.cones()[index].edge_generators {
        let c = dot_int(w, a);
        if c == 0 {
            return Err(OracleError::NonGenericDirection { direction: a.to_vec(), edge: w.clone() });
        }
        // 1/(1 - q^c) = -q^{-c} / (1 - q^{-c})
        if c < 0 {
            sign = -sign;
            shift -= c;
        }
        exponents.push(c.unsigned_abs());
    }
    Ok(VertexTerm { sign, shift, exponents })
}

fn term_to_rational_function(t: &VertexTerm) -> RationalFunction {
    let num = LaurentPoly::monomial(BigInt::from(t.sign), t.shift).to_rational_function();
    t.exponents.iter().fold(num, |acc, &c| &acc * &RationalFunction::geometric(c as usize))
}

/// `q^<v,a> * prod_w 1/(1 - q^<w,a>)` over the primitive edge generators
/// `w` at the vertex `v`.
pub fn brion_vertex_term(p: &DelzantPolytope, v: &[BigRational], a: &[i64]) -> Result<RationalFunction, OracleError> {
    check_direction(p.dim(), a)?;
    let index = p.vertex_index(v).ok_or_else(|| OracleError::UnknownVertex(v.to_vec()))?;
    Ok(term_to_rational_function(&vertex_term(p, index, a)?))
}

/// Sum of the vertex terms of `p`.
pub fn fixed_point_character(p: &DelzantPolytope, a: &[i64]) -> Result<RationalFunction, OracleError> {
    fixed_point_character_with(p, a, Strategy::default())
}

/// As [`fixed_point_character`]. Every term is put over the common
/// denominator `prod_c (1 - q^c)^{m_c}`, so the sum is a single exact
/// polynomial division at the end.
pub fn fixed_point_character_with(
    p: &DelzantPolytope,
    a: &[i64],
    strategy: Strategy,
) -> Result<RationalFunction, OracleError> {
    check_direction(p.dim(), a)?;
    let indices: Vec<usize> = (0..p.vertices().len()).collect();
    let terms: Vec<VertexTerm> =
        map_slice(strategy, &indices, |&i| vertex_term(p, i, a)).into_iter().collect::<Result<_, _>>()?;

    let mut multiplicity: BTreeMap<u64, usize> = BTreeMap::new();
    for t in &terms {
        let mut local: BTreeMap<u64, usize> = BTreeMap::new();
        for &c in &t.exponents {
            *local.entry(c).or_default() += 1;
        }
        for (c, m) in local {
            let e = multiplicity.entry(c).or_default();
            *e = (*e).max(m);
        }
    }
    let min_shift = terms.iter().map(|t| t.shift).min().unwrap_or(0);
    let power = |c: u64, m: usize| (0..m).fold(PolyQ::one(), |acc, _| &acc * &PolyQ::one_minus_power(c as usize));
    let denominator = multiplicity.iter().fold(PolyQ::one(), |acc, (&c, &m)| &acc * &power(c, m));

    let numerators = map_slice(strategy, &terms, |t| {
        let mut local: BTreeMap<u64, usize> = BTreeMap::new();
        for &c in &t.exponents {
            *local.entry(c).or_default() += 1;
        }
        let cofactor = multiplicity
            .iter()
            .fold(PolyQ::one(), |acc, (&c, &m)| &acc * &power(c, m - local.get(&c).copied().unwrap_or(0)));
        let sign = BigRational::from_integer(BigInt::from(t.sign));
        cofactor.scale(&sign).shift((t.shift - min_shift) as usize)
    });
    let numerator = numerators.iter().fold(PolyQ::zero(), |acc, x| &acc + x);
    let (quotient, remainder) = numerator.div_rem(&denominator);
    let reduced = if remainder.is_zero() {
        RationalFunction::from_poly(quotient)
    } else {
        RationalFunction::new(numerator, denominator).expect("nonzero denominator")
    };
    Ok(&reduced * &RationalFunction::q_power(min_shift))
}

/// Both sides of the oracle comparison for one template and direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub direction: Vec<i64>,
    /// Signed vertex sum per polytope, in template order.
    pub per_polytope: Vec<(String, RationalFunction)>,
    pub fixed_point: RationalFunction,
    pub enumeration: LaurentPoly,
    pub agree: bool,
}

impl OracleReport {
    /// The fixed-point side as a Laurent polynomial.
    pub fn fixed_point_laurent(&self) -> Result<LaurentPoly, OracleError> {
        self.fixed_point.as_laurent().ok_or_else(|| OracleError::NotPolynomial(self.fixed_point.to_string()))
    }
}

/// Compares the signed vertex sum with the specialized lattice-point
/// character. Without a direction the first generic one is used.
pub fn oracle_check_template(t: &ValidatedTemplate, direction: Option<&[i64]>) -> Result<OracleReport, OracleError> {
    oracle_check_template_with(t, direction, Strategy::default())
}

pub fn oracle_check_template_with(
    t: &ValidatedTemplate,
    direction: Option<&[i64]>,
    strategy: Strategy,
) -> Result<OracleReport, OracleError> {
    let polytopes: Vec<&DelzantPolytope> = t.polytopes().iter().map(|sp| &sp.polytope).collect();
    for p in &polytopes {
        if let Some(v) = p.vertices().iter().find(|v| to_lattice_vector(v).is_none()) {
            return Err(OracleError::NonIntegralVertex(v.clone()));
        }
    }
    let a = match direction {
        Some(a) => a.to_vec(),
        None => find_generic_direction(&polytopes),
    };
    check_direction(t.dimension(), &a)?;
    let mut per_polytope = Vec::new();
    let mut fixed_point = RationalFunction::zero();
    for sp in t.polytopes() {
        let f = fixed_point_character_with(&sp.polytope, &a, strategy)?;
        let signed = if sp.sign.value() < 0 { -&f } else { f };
        fixed_point = &fixed_point + &signed;
        per_polytope.push((sp.name.clone(), signed));
    }
    let enumeration = danilov_template_with(t, strategy).character.specialize(&a).expect("direction length checked");
    let agree = fixed_point == enumeration.to_rational_function();
    Ok(OracleReport { direction: a, per_polytope, fixed_point, enumeration, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::template::{gen_product, gen_simplex, gen_sphere_template, OrigamiTemplate};

    fn square() -> DelzantPolytope {
        let i = gen_simplex(1, &rat(1)).unwrap();
        gen_product(&i, &i).unwrap()
    }

    #[test]
    fn generic_directions() {
        let unit = gen_simplex(2, &rat(1)).unwrap();
        assert_eq!(find_generic_direction(&[&unit]), vec![1, 2]);
        assert_eq!(find_generic_direction(&[&gen_simplex(1, &rat(1)).unwrap()]), vec![1]);
        assert_eq!(find_generic_direction(&[&square()]), vec![1, 2]);
        let three = find_generic_directions(&[&unit], 3);
        assert_eq!(three, vec![vec![1, 2], vec![2, 1], vec![1, 3]]);
    }

    #[test]
    fn interval_terms() {
        let seg = gen_simplex(1, &rat(2)).unwrap();
        let left = brion_vertex_term(&seg, &[rat(0)], &[1]).unwrap();
        assert_eq!(left, RationalFunction::geometric(1));
        let right = brion_vertex_term(&seg, &[rat(2)], &[1]).unwrap();
        let expected = &RationalFunction::q_power(3) * &RationalFunction::geometric(1);
        assert_eq!(right, -&expected);
        assert_eq!(fixed_point_character(&seg, &[1]).unwrap().to_string(), "1 + q + q^2");
    }

    #[test]
    fn simplex_terms() {
        let unit = gen_simplex(2, &rat(1)).unwrap();
        let origin = brion_vertex_term(&unit, &[rat(0), rat(0)], &[1, 2]).unwrap();
        assert_eq!(origin, &RationalFunction::geometric(1) * &RationalFunction::geometric(2));
        assert_eq!(fixed_point_character(&unit, &[1, 2]).unwrap().to_string(), "1 + q + q^2");
        assert!(matches!(fixed_point_character(&unit, &[1, 1]), Err(OracleError::NonGenericDirection { .. })));
        assert!(matches!(fixed_point_character(&unit, &[1]), Err(OracleError::DimensionMismatch { .. })));
    }

    #[test]
    fn half_simplex_is_rejected() {
        let t = gen_sphere_template(2, &rat(1)).unwrap().validated().unwrap();
        assert!(matches!(oracle_check_template(&t, None), Err(OracleError::NonIntegralVertex(_))));
    }

    #[test]
    fn template_checks() {
        let t = gen_sphere_template(2, &rat(2)).unwrap().validated().unwrap();
        let report = oracle_check_template(&t, None).unwrap();
        assert!(report.agree);
        assert!(report.fixed_point.is_zero() && report.enumeration.is_zero());

        let sq = OrigamiTemplate::single("P", 2, square().halfspaces().to_vec()).unwrap().validated().unwrap();
        let report = oracle_check_template(&sq, Some(&[1, 2])).unwrap();
        assert!(report.agree);
        assert_eq!(report.enumeration.to_string(), "1 + q + q^2 + q^3");
        assert_eq!(report.fixed_point_laurent().unwrap(), report.enumeration);
        assert!(matches!(oracle_check_template(&sq, Some(&[0, 1])), Err(OracleError::NonGenericDirection { .. })));
    }

    #[test]
    fn strategies_agree() {
        let p = gen_simplex(3, &rat(3)).unwrap();
        let a = find_generic_direction(&[&p]);
        assert_eq!(
            fixed_point_character_with(&p, &a, Strategy::Sequential).unwrap(),
            fixed_point_character_with(&p, &a, Strategy::Parallel).unwrap()
        );
    }
}
