use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GeometryError, Halfspace};
use crate::rational::{inverse, rank, row_reduce, solve, to_lattice_vector, RationalVector};

/// A bounded, full-dimensional polytope in Q^n given by irredundant
/// halfspaces, with its vertices (lexicographic order) and vertex-facet
/// incidences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    vertices: Vec<RationalVector>,
    vertex_facets: Vec<Vec<usize>>,
}

/// Calls `f` with every `k`-subset of `0..m`, in lexicographic order.
pub(crate) fn for_each_combination(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn normal_rows(halfspaces: &[Halfspace], cols: &[usize]) -> Vec<Vec<BigRational>> {
    halfspaces
        .iter()
        .map(|h| cols.iter().map(|&c| BigRational::from_integer(BigInt::from(h.normal()[c]))).collect())
        .collect()
}

/// Vertices of a pointed system (normal matrix of full column rank) by
/// intersecting every `cols.len()`-subset of boundary hyperplanes.
fn enumerate_vertices(halfspaces: &[Halfspace], cols: &[usize]) -> BTreeSet<RationalVector> {
    let k = cols.len();
    let rows = normal_rows(halfspaces, cols);
    let mut found = BTreeSet::new();
    for_each_combination(halfspaces.len(), k, |subset| {
        let a: Vec<Vec<BigRational>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let b: Vec<BigRational> = subset.iter().map(|&i| -halfspaces[i].offset().clone()).collect();
        let Some(x) = solve(&a, &b) else { return };
        let feasible = rows.iter().zip(halfspaces).all(|(row, h)| {
            let dot = row.iter().zip(&x).fold(BigRational::zero(), |acc, (r, xi)| acc + r * xi);
            !(dot + h.offset()).is_negative()
        });
        if feasible {
            found.insert(x);
        }
    });
    found
}

/// All vertices of `{x : <n_i, x> + c_i >= 0}`, deduplicated and sorted
/// lexicographically.
pub fn vertices_of(dim: usize, halfspaces: &[Halfspace]) -> Result<Vec<RationalVector>, GeometryError> {
    if halfspaces.is_empty() {
        return Err(GeometryError::NoHalfspaces);
    }
    if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
        return Err(GeometryError::DimensionMismatch { expected: dim, got: h.dim() });
    }
    let all: Vec<usize> = (0..dim).collect();
    let ech = row_reduce(normal_rows(halfspaces, &all));
    let pivots = ech.pivots;

    // Feasibility is decided on the pivot coordinates alone: every feasible
    // point can be moved along ker(N) to vanish on the free coordinates, and
    // a nonempty pointed polyhedron always has a vertex.
    let reduced = enumerate_vertices(halfspaces, &pivots);
    if reduced.is_empty() {
        return Err(GeometryError::EmptyPolytope);
    }
    if pivots.len() < dim || has_recession_ray(halfspaces, dim) {
        return Err(GeometryError::UnboundedPolytope);
    }
    Ok(reduced.into_iter().collect())
}

/// Whether the pointed cone `{d : <n_i, d> >= 0}` has an extreme ray.
fn has_recession_ray(halfspaces: &[Halfspace], dim: usize) -> bool {
    let all: Vec<usize> = (0..dim).collect();
    let rows = normal_rows(halfspaces, &all);
    let mut ray = false;
    for_each_combination(halfspaces.len(), dim - 1, |subset| {
        if ray {
            return;
        }
        let a: Vec<Vec<BigRational>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let Some(d) = kernel_line(&a, dim) else { return };
        for sign in [BigRational::one(), -BigRational::one()] {
            let dir: Vec<BigRational> = d.iter().map(|x| x * &sign).collect();
            let inside = rows
                .iter()
                .all(|row| !row.iter().zip(&dir).fold(BigRational::zero(), |acc, (r, x)| acc + r * x).is_negative());
            if inside {
                ray = true;
            }
        }
    });
    ray
}

/// Spanning vector of the kernel when `a` (k x dim) has rank `dim - 1`.
fn kernel_line(a: &[Vec<BigRational>], dim: usize) -> Option<RationalVector> {
    let ech = row_reduce(a.to_vec());
    if ech.pivots.len() != dim - 1 {
        return None;
    }
    let free = (0..dim).find(|c| !ech.pivots.contains(c))?;
    let mut d = vec![BigRational::zero(); dim];
    d[free] = BigRational::one();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        d[p] = -row[free].clone();
    }
    Some(d)
}

pub(crate) fn affine_dimension(points: &[&RationalVector]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let diffs: Vec<Vec<BigRational>> =
        points[1..].iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

impl Polytope {
    /// Validates and builds the polytope: bounded, nonempty, full-dimensional
    /// and every halfspace supporting a distinct facet.
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, GeometryError> {
        let vertices = vertices_of(dim, &halfspaces)?;
        let refs: Vec<&RationalVector> = vertices.iter().collect();
        let affine_dim = affine_dimension(&refs);
        if affine_dim < dim {
            return Err(GeometryError::EmptyInterior { dim, affine_dim });
        }
        let vertex_facets: Vec<Vec<usize>> = vertices
            .iter()
            .map(|v| (0..halfspaces.len()).filter(|&i| halfspaces[i].slack(v).is_zero()).collect())
            .collect();
        for (i, h) in halfspaces.iter().enumerate() {
            if halfspaces[..i].contains(h) {
                return Err(GeometryError::RedundantHalfspace { index: i });
            }
            let tight: Vec<&RationalVector> =
                vertices.iter().zip(&vertex_facets).filter(|(_, f)| f.contains(&i)).map(|(v, _)| v).collect();
            if tight.is_empty() || affine_dimension(&tight) + 1 != dim {
                return Err(GeometryError::RedundantHalfspace { index: i });
            }
        }
        Ok(Self { dim, halfspaces, vertices, vertex_facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// Indices of the facets through vertex `i`, ascending.
    pub fn vertex_facets(&self, i: usize) -> &[usize] {
        &self.vertex_facets[i]
    }

    pub fn vertex_index(&self, v: &[BigRational]) -> Option<usize> {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).ok()
    }

    pub fn is_simple(&self) -> bool {
        self.vertex_facets.iter().all(|f| f.len() == self.dim)
    }

    pub fn has_integral_vertices(&self) -> bool {
        self.vertices.iter().all(|v| to_lattice_vector(v).is_some())
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Image under `x -> x + shift`.
    pub fn translated(&self, shift: &[i64]) -> Result<Self, GeometryError> {
        if shift.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: shift.len() });
        }
        Self::new(self.dim, self.halfspaces.iter().map(|h| h.translated(shift)).collect())
    }

    /// Image under `x -> g x` for `g` in GL(n, Z).
    pub fn transformed(&self, g: &[Vec<i64>]) -> Result<Self, GeometryError> {
        let inv_t = unimodular_inverse_transpose(g, self.dim)?;
        Self::new(self.dim, self.halfspaces.iter().map(|h| h.transformed(&inv_t)).collect())
    }
}

/// `g^{-T}` for an integer matrix with determinant +-1.
pub(crate) fn unimodular_inverse_transpose(g: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<i64>>, GeometryError> {
    if g.len() != dim || g.iter().any(|r| r.len() != dim) {
        return Err(GeometryError::DimensionMismatch { expected: dim, got: g.len() });
    }
    let m: Vec<Vec<BigRational>> = g.iter().map(|r| crate::rational::to_rational_vector(r)).collect();
    let det = crate::rational::determinant(&m);
    if det.abs() != BigRational::one() {
        return Err(GeometryError::NotUnimodular);
    }
    let inv = inverse(&m).ok_or(GeometryError::NotUnimodular)?;
    let mut out = vec![vec![0i64; dim]; dim];
    for (i, row) in inv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let v = to_lattice_vector(std::slice::from_ref(x)).ok_or(GeometryError::NotUnimodular)?;
            out[j][i] = v[0];
        }
    }
    Ok(out)
}
