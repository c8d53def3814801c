use num_traits::ToPrimitive;

use super::Polytope;
use crate::exec::{flat_map_range, Strategy};
use crate::rational::LatticeVector;

impl Polytope {
    /// Integer bounding box `[lo_i, hi_i]` from the rational vertex range,
    /// rounded inward.
    pub fn lattice_bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.dim())
            .map(|c| {
                let coords = self.vertices().iter().map(|v| &v[c]);
                let lo = coords.clone().min().expect("polytope has vertices").ceil();
                let hi = coords.max().expect("polytope has vertices").floor();
                (
                    lo.to_integer().to_i64().expect("coordinate fits in i64"),
                    hi.to_integer().to_i64().expect("coordinate fits in i64"),
                )
            })
            .collect()
    }

    pub fn contains_lattice_point(&self, x: &[i64]) -> bool {
        self.halfspaces().iter().all(|h| !h.slack_sign(x).is_lt())
    }

    /// All points of Z^n in the closed polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        self.lattice_points_with(Strategy::default())
    }

    /// As [`Polytope::lattice_points`]; the parallel strategy scans slabs of
    /// the first coordinate concurrently.
    pub fn lattice_points_with(&self, strategy: Strategy) -> Vec<LatticeVector> {
        let bbox = self.lattice_bounding_box();
        let (lo, hi) = bbox[0];
        if lo > hi {
            return Vec::new();
        }
        flat_map_range(strategy, lo..hi + 1, |x0| {
            let mut out = Vec::new();
            let mut point = vec![0i64; self.dim()];
            point[0] = x0;
            self.scan(&bbox, 1, &mut point, &mut out);
            out
        })
    }

    fn scan(&self, bbox: &[(i64, i64)], coord: usize, point: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
        if coord == point.len() {
            if self.contains_lattice_point(point) {
                out.push(point.clone());
            }
            return;
        }
        let (lo, hi) = bbox[coord];
        for x in lo..=hi {
            point[coord] = x;
            self.scan(bbox, coord + 1, point, out);
        }
    }
}
