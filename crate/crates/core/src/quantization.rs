//! The Riemann-Roch character of a template as a signed lattice-point sum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::Character;
use crate::exec::{map_slice, Strategy};
use crate::geometry::{DelzantPolytope, GeometryError};
use crate::rational::to_lattice_vector;
use crate::template::ValidatedTemplate;

/// Character of a template with its breakdown by polytope and by face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrResult {
    pub character: Character,
    /// Signed character of each polytope, by name.
    pub per_polytope: BTreeMap<String, Character>,
    /// Signed character of the lattice points in the relative interior of
    /// each face, keyed by polytope name and the face's facet set.
    pub per_face: BTreeMap<(String, Vec<usize>), Character>,
    /// The character at `t = 1`.
    pub dimension: BigInt,
}

/// Sum of `t^x` over the lattice points `x` of the closed polytope.
pub fn danilov_polytope(p: &DelzantPolytope) -> Character {
    danilov_polytope_with(p, Strategy::default())
}

pub fn danilov_polytope_with(p: &DelzantPolytope, strategy: Strategy) -> Character {
    let n = p.dim();
    Character::from_terms(n, p.lattice_points_with(strategy).into_iter().map(|x| (x, BigInt::one())))
        .expect("lattice points have the polytope's dimension")
}

/// `t^v` for an integral vertex, zero for a non-integral one.
pub fn vertex_contribution(p: &DelzantPolytope, v: &[BigRational]) -> Result<Character, GeometryError> {
    p.vertex_index(v).ok_or_else(|| GeometryError::UnknownVertex(v.to_vec()))?;
    Ok(match to_lattice_vector(v) {
        Some(x) => Character::monomial(p.dim(), &x).expect("vertex has the polytope's dimension"),
        None => Character::zero(p.dim()),
    })
}

struct PolytopeParts {
    total: Character,
    faces: Vec<(Vec<usize>, Character)>,
}

fn polytope_parts(p: &DelzantPolytope, sign: i64, strategy: Strategy) -> PolytopeParts {
    let n = p.dim();
    let coeff = BigInt::from(sign);
    let lattice = p.faces();
    let mut faces: Vec<Character> = vec![Character::zero(n); lattice.faces().len()];
    let mut total = Character::zero(n);
    for x in p.lattice_points_with(strategy) {
        let face = lattice.carrier_of(p, &x).expect("every point of P lies in exactly one open face");
        faces[face].add_term(x.clone(), coeff.clone());
        total.add_term(x, coeff.clone());
    }
    let faces = lattice.faces().iter().map(|f| f.facets().to_vec()).zip(faces).collect();
    PolytopeParts { total, faces }
}

/// Signed lattice-point character of a validated template. Overlapping
/// polytopes count shared points once each.
pub fn danilov_template(t: &ValidatedTemplate) -> RrResult {
    danilov_template_with(t, Strategy::default())
}

/// As [`danilov_template`]; the parallel strategy evaluates polytopes
/// concurrently.
pub fn danilov_template_with(t: &ValidatedTemplate, strategy: Strategy) -> RrResult {
    let parts = map_slice(strategy, t.polytopes(), |sp| polytope_parts(&sp.polytope, sp.sign.value(), strategy));
    let mut character = Character::zero(t.dimension());
    let mut per_polytope = BTreeMap::new();
    let mut per_face = BTreeMap::new();
    for (sp, part) in t.polytopes().iter().zip(parts) {
        character = &character + &part.total;
        for (facets, c) in part.faces {
            per_face.insert((sp.name.clone(), facets), c);
        }
        per_polytope.insert(sp.name.clone(), part.total);
    }
    let dimension = character.dimension();
    RrResult { character, per_polytope, per_face, dimension }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::template::{gen_simplex, gen_sphere_template, OrigamiTemplate};

    fn ch(n: usize, pts: &[&[i64]]) -> Character {
        Character::from_terms(n, pts.iter().map(|x| (x.to_vec(), BigInt::one()))).unwrap()
    }

    #[test]
    fn simplices() {
        let unit = gen_simplex(2, &rat(1)).unwrap();
        assert_eq!(danilov_polytope(&unit), ch(2, &[&[0, 0], &[1, 0], &[0, 1]]));
        assert_eq!(danilov_polytope(&unit).dimension(), BigInt::from(3));
        let seg = gen_simplex(1, &rat(2)).unwrap();
        assert_eq!(danilov_polytope(&seg).specialize(&[1]).unwrap().to_string(), "1 + q + q^2");
        let half = gen_simplex(2, &ratio(1, 2)).unwrap();
        assert_eq!(danilov_polytope(&half), Character::one(2));
    }

    #[test]
    fn vertex_contributions() {
        let unit = gen_simplex(2, &rat(1)).unwrap();
        assert_eq!(vertex_contribution(&unit, &[rat(0), rat(0)]).unwrap(), Character::one(2));
        let half = gen_simplex(2, &ratio(1, 2)).unwrap();
        assert!(vertex_contribution(&half, &[ratio(1, 2), rat(0)]).unwrap().is_zero());
        let twice = gen_simplex(2, &rat(2)).unwrap();
        assert_eq!(vertex_contribution(&twice, &[rat(2), rat(0)]).unwrap().to_string(), "t1^2");
        assert!(vertex_contribution(&twice, &[rat(1), rat(0)]).is_err());
    }

    #[test]
    fn spheres_cancel() {
        for n in 1..=3 {
            for k in 1..=3 {
                let t = gen_sphere_template(n, &rat(k)).unwrap().validated().unwrap();
                let rr = danilov_template(&t);
                assert!(rr.character.is_zero(), "n={n} k={k}");
                assert_eq!(rr.per_polytope.len(), 2);
                assert!(!rr.per_polytope["plus"].is_zero());
            }
        }
    }

    #[test]
    fn single_square_and_face_breakdown() {
        let sq =
            crate::template::gen_product(&gen_simplex(1, &rat(1)).unwrap(), &gen_simplex(1, &rat(1)).unwrap()).unwrap();
        let t = OrigamiTemplate::single("P", 2, sq.halfspaces().to_vec()).unwrap().validated().unwrap();
        let rr = danilov_template(&t);
        assert_eq!(rr.character.to_string(), "1 + t1 + t2 + t1*t2");
        assert_eq!(rr.dimension, BigInt::from(4));
        // four vertices, no edge or interior points
        assert_eq!(rr.per_face.values().filter(|c| !c.is_zero()).count(), 4);
        let face_sum = rr.per_face.values().fold(Character::zero(2), |acc, c| &acc + c);
        assert_eq!(face_sum, rr.character);
    }

    #[test]
    fn strategies_agree() {
        let t = gen_sphere_template(3, &rat(4)).unwrap().validated().unwrap();
        assert_eq!(danilov_template_with(&t, Strategy::Sequential), danilov_template_with(&t, Strategy::Parallel));
    }
}
