use std::ops::Deref;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{FaceLattice, GeometryError, Polytope};
use crate::rational::{abs_int, determinant, inverse, primitive_direction, to_rational_vector, RationalVector};

/// The tangent cone at one vertex of a simple polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCone {
    pub vertex: RationalVector,
    /// Facets through the vertex, ascending.
    pub facets: Vec<usize>,
    /// `|det|` of the facet-normal matrix.
    pub normal_determinant: BigInt,
    /// Primitive edge directions; entry `i` leaves facet `facets[i]` and stays
    /// on the others.
    pub edge_generators: Vec<Vec<i64>>,
    /// `|det|` of the primitive edge-generator matrix.
    pub edge_determinant: BigInt,
}

impl VertexCone {
    pub fn is_unimodular(&self) -> bool {
        self.normal_determinant.is_one() && self.edge_determinant.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantReport {
    pub simple: bool,
    /// Vertices lying on more than `n` facets, with their facet counts.
    pub non_simple_vertices: Vec<(RationalVector, usize)>,
    /// One cone per simple vertex, in vertex order.
    pub cones: Vec<VertexCone>,
    pub accepted: bool,
}

impl DelzantReport {
    /// First offending vertex, for error messages.
    pub fn first_violation(&self) -> Option<GeometryError> {
        if let Some((v, facets)) = self.non_simple_vertices.first() {
            return Some(GeometryError::NotSimple { vertex: v.clone(), facets: *facets });
        }
        self.cones.iter().find(|c| !c.is_unimodular()).map(|c| GeometryError::NotDelzant {
            vertex: c.vertex.clone(),
            determinant: c.normal_determinant.to_string(),
        })
    }
}

fn vertex_cone(p: &Polytope, index: usize) -> VertexCone {
    let facets = p.vertex_facets(index).to_vec();
    let normals: Vec<Vec<BigRational>> =
        facets.iter().map(|&f| to_rational_vector(p.halfspaces()[f].normal())).collect();
    let normal_determinant = abs_int(&determinant(&normals));
    // Columns of N^{-1} are the edge directions: column i pairs to 1 with
    // normal i and to 0 with the others.
    let inv = inverse(&normals).expect("vertex is the unique solution of its facet equalities");
    let n = facets.len();
    let edge_generators: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let column: Vec<BigRational> = inv.iter().map(|row| row[i].clone()).collect();
            primitive_direction(&column).into_iter().map(|x| x.to_i64().expect("edge generator fits in i64")).collect()
        })
        .collect();
    let edges: Vec<Vec<BigRational>> = edge_generators.iter().map(|e| to_rational_vector(e)).collect();
    let edge_determinant = abs_int(&determinant(&edges));
    VertexCone { vertex: p.vertices()[index].clone(), facets, normal_determinant, edge_generators, edge_determinant }
}

/// Simplicity and unimodularity of every vertex cone.
pub fn is_delzant(p: &Polytope) -> DelzantReport {
    let n = p.dim();
    let mut non_simple_vertices = Vec::new();
    let mut cones = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if p.vertex_facets(i).len() == n {
            cones.push(vertex_cone(p, i));
        } else {
            non_simple_vertices.push((v.clone(), p.vertex_facets(i).len()));
        }
    }
    let simple = non_simple_vertices.is_empty();
    let accepted = simple && cones.iter().all(VertexCone::is_unimodular);
    DelzantReport { simple, non_simple_vertices, cones, accepted }
}

/// A polytope whose vertex cones are all unimodular, with its face lattice
/// and vertex cones cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantPolytope {
    polytope: Polytope,
    faces: FaceLattice,
    cones: Vec<VertexCone>,
}

impl TryFrom<Polytope> for DelzantPolytope {
    type Error = GeometryError;

    fn try_from(polytope: Polytope) -> Result<Self, Self::Error> {
        let faces = polytope.face_lattice()?;
        let report = is_delzant(&polytope);
        if let Some(err) = report.first_violation() {
            return Err(err);
        }
        Ok(Self { polytope, faces, cones: report.cones })
    }
}

impl Deref for DelzantPolytope {
    type Target = Polytope;

    fn deref(&self) -> &Polytope {
        &self.polytope
    }
}

impl DelzantPolytope {
    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    /// Vertex cones in vertex order.
    pub fn cones(&self) -> &[VertexCone] {
        &self.cones
    }

    /// Primitive edge directions at `vertex`; they form a Z-basis of Z^n.
    pub fn edge_generators_at_vertex(&self, vertex: &[BigRational]) -> Result<&[Vec<i64>], GeometryError> {
        let i = self.vertex_index(vertex).ok_or_else(|| GeometryError::UnknownVertex(vertex.to_vec()))?;
        Ok(&self.cones[i].edge_generators)
    }

    pub fn translated(&self, shift: &[i64]) -> Result<Self, GeometryError> {
        Self::try_from(self.polytope.translated(shift)?)
    }

    pub fn transformed(&self, g: &[Vec<i64>]) -> Result<Self, GeometryError> {
        Self::try_from(self.polytope.transformed(g)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Halfspace;
    use crate::rational::{rat, ratio};

    fn polytope(rows: &[(&[i64], BigRational)]) -> Polytope {
        let n = rows[0].0.len();
        let h = rows.iter().map(|(a, c)| Halfspace::new(a.to_vec(), c.clone()).unwrap()).collect();
        Polytope::new(n, h).unwrap()
    }

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    #[test]
    fn twice_simplex_is_delzant() {
        let p = polytope(&[(&[1, 0], rat(0)), (&[0, 1], rat(0)), (&[-1, -1], rat(2))]);
        let report = is_delzant(&p);
        assert!(report.accepted);
        assert!(report.cones.iter().all(|c| c.normal_determinant == BigInt::one()));
        let d = DelzantPolytope::try_from(p).unwrap();
        let gens = d.edge_generators_at_vertex(&[rat(2), rat(0)]).unwrap();
        assert_eq!(sorted(gens.to_vec()), vec![vec![-1, 0], vec![-1, 1]]);
    }

    #[test]
    fn det_two_triangle_is_rejected() {
        let p = polytope(&[(&[1, 0], rat(0)), (&[0, 1], rat(0)), (&[-2, -1], rat(2))]);
        let report = is_delzant(&p);
        assert!(report.simple);
        assert!(!report.accepted);
        let bad = report.cones.iter().find(|c| c.vertex == vec![rat(1), rat(0)]).unwrap();
        assert_eq!(bad.normal_determinant, BigInt::from(2));
        assert_eq!(bad.edge_determinant, BigInt::from(2));
        assert!(matches!(DelzantPolytope::try_from(p), Err(GeometryError::NotDelzant { .. })));
    }

    #[test]
    fn unit_square_and_interval() {
        let sq = polytope(&[(&[1, 0], rat(0)), (&[0, 1], rat(0)), (&[-1, 0], rat(1)), (&[0, -1], rat(1))]);
        let d = DelzantPolytope::try_from(sq).unwrap();
        assert_eq!(d.edge_generators_at_vertex(&[rat(0), rat(0)]).unwrap(), &[vec![1, 0], vec![0, 1]]);
        let k = 4;
        let seg = polytope(&[(&[1], rat(0)), (&[-1], rat(k))]);
        let d = DelzantPolytope::try_from(seg).unwrap();
        assert_eq!(d.edge_generators_at_vertex(&[rat(k)]).unwrap(), &[vec![-1]]);
        assert!(matches!(d.edge_generators_at_vertex(&[rat(1)]), Err(GeometryError::UnknownVertex(_))));
    }

    #[test]
    fn half_simplex_is_delzant_with_rational_vertices() {
        let p = polytope(&[(&[1, 0], rat(0)), (&[0, 1], rat(0)), (&[-1, -1], ratio(1, 2))]);
        assert!(is_delzant(&p).accepted);
        assert!(!p.has_integral_vertices());
    }

    #[test]
    fn non_simple_polytope_report() {
        let p = polytope(&[
            (&[0, 0, 1], rat(0)),
            (&[1, 0, -1], rat(1)),
            (&[-1, 0, -1], rat(1)),
            (&[0, 1, -1], rat(1)),
            (&[0, -1, -1], rat(1)),
        ]);
        let report = is_delzant(&p);
        assert!(!report.simple && !report.accepted);
        assert_eq!(report.non_simple_vertices, vec![(vec![rat(0), rat(0), rat(1)], 4)]);
    }
}
