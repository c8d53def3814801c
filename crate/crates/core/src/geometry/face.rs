use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{GeometryError, Polytope};
use crate::rational::{to_rational_vector, LatticeVector};

/// A nonempty face of a simple polytope, identified by the (maximal) set of
/// facets containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    dim: usize,
    facets: Vec<usize>,
    vertices: Vec<usize>,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Facet indices whose intersection is this face, ascending.
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    /// Indices into [`Polytope::vertices`], ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Whether `other` is a face of `self` (its facet set is a superset).
    pub fn contains_face(&self, other: &Face) -> bool {
        self.facets.iter().all(|f| other.facets.contains(f))
    }

    /// On every facet of the face and strictly inside every other facet.
    pub fn relative_interior_contains(&self, polytope: &Polytope, x: &[BigRational]) -> bool {
        polytope.halfspaces().iter().enumerate().all(|(i, h)| {
            let s = h.slack(x);
            if self.facets.contains(&i) {
                s.is_zero()
            } else {
                s.is_positive()
            }
        })
    }

    pub fn relative_interior_contains_lattice(&self, polytope: &Polytope, x: &[i64]) -> bool {
        polytope.halfspaces().iter().enumerate().all(|(i, h)| {
            let s = h.slack_sign(x);
            if self.facets.contains(&i) {
                s.is_eq()
            } else {
                s.is_gt()
            }
        })
    }
}

/// All nonempty faces, sorted by dimension and then by facet set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    dim: usize,
    faces: Vec<Face>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, j: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == j)
    }

    /// Face counts `(f_0, ..., f_n)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    pub fn find(&self, facets: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.facets == facets)
    }

    /// The unique face whose relative interior contains the lattice point.
    pub fn carrier_of(&self, polytope: &Polytope, x: &[i64]) -> Option<usize> {
        let tight: Vec<usize> = polytope
            .halfspaces()
            .iter()
            .enumerate()
            .filter_map(|(i, h)| match h.slack_sign(x) {
                std::cmp::Ordering::Less => Some(None),
                std::cmp::Ordering::Equal => Some(Some(i)),
                std::cmp::Ordering::Greater => None,
            })
            .collect::<Option<Vec<usize>>>()?;
        self.find(&tight)
    }
}

impl Polytope {
    /// Face lattice of a simple polytope. Every subset of the facets through
    /// a vertex cuts out a face of complementary dimension.
    pub fn face_lattice(&self) -> Result<FaceLattice, GeometryError> {
        let n = self.dim();
        for (i, v) in self.vertices().iter().enumerate() {
            if self.vertex_facets(i).len() != n {
                return Err(GeometryError::NotSimple { vertex: v.clone(), facets: self.vertex_facets(i).len() });
            }
        }
        let mut by_facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for i in 0..self.vertices().len() {
            let tight = self.vertex_facets(i);
            for mask in 0u32..(1 << n) {
                let subset: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| tight[b]).collect();
                by_facets.entry(subset).or_default().push(i);
            }
        }
        let mut faces: Vec<Face> = by_facets
            .into_iter()
            .map(|(facets, mut vertices)| {
                vertices.sort_unstable();
                vertices.dedup();
                Face { dim: n - facets.len(), facets, vertices }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.facets).cmp(&(b.dim, &b.facets)));
        Ok(FaceLattice { dim: n, faces })
    }

    /// Lattice points in the relative interior of `face`.
    pub fn face_interior_lattice_points(&self, face: &Face) -> Vec<LatticeVector> {
        self.lattice_points().into_iter().filter(|x| face.relative_interior_contains_lattice(self, x)).collect()
    }

    /// Exact check that `x` lies in the relative interior of `face`.
    pub fn face_relative_interior_contains(&self, face: &Face, x: &[i64]) -> bool {
        face.relative_interior_contains(self, &to_rational_vector(x))
    }
}
