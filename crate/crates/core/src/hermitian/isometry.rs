//! Isometries by backtracking over images of basis vectors.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{HermLattice, HermVector, LatticePoint};
use crate::error::Result;
use crate::matrix::Mat3;
use crate::qlambda::{QuadInt, QuadRat};

/// An isometry written on a lattice basis: column `j` holds the coordinates
/// of the image of `bⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsometryMatrix {
    pub entries: Mat3,
}

impl IsometryMatrix {
    pub fn ambient(&self, lat: &HermLattice) -> Mat3 {
        lat.to_ambient(&self.entries)
    }

    pub fn apply(&self, lat: &HermLattice, x: &HermVector) -> HermVector {
        HermVector(self.ambient(lat).mul_vec(&x.0))
    }

    pub fn preserves(&self, lat: &HermLattice) -> bool {
        // Uᵀ G Ū = G
        let g = lat.gram();
        &(&self.entries.transpose() * g) * &self.entries.conj() == *g
    }

    /// Order of the matrix, if at most `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut p = self.entries.clone();
        for k in 1..=limit {
            if p == Mat3::identity() {
                return Some(k);
            }
            p = &p * &self.entries;
        }
        None
    }
}

/// All maps sending the basis of `src` to vectors of `tgt` with the same
/// Gram matrix, as matrices on the `tgt` basis. Both lattices must be
/// positive definite.
pub fn isometries_between(src: &HermLattice, tgt: &HermLattice) -> Result<Vec<Mat3>> {
    if src.det() != tgt.det() {
        return Ok(Vec::new());
    }
    let gs = src.gram();
    let norms: Vec<BigRational> = (0..3).map(|i| gs.get(i, i).to_rational().expect("rational diagonal")).collect();
    let bound = norms.iter().max().expect("three norms").clone();
    let pts = super::vectors_up_to(tgt, &bound)?;
    let cands: Vec<Vec<&LatticePoint>> = norms.iter().map(|n| pts.iter().filter(|p| &p.norm == n).collect()).collect();
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| (cands[i].len(), i));

    let mut out = Vec::new();
    let mut chosen: [Option<&[QuadInt; 3]>; 3] = [None, None, None];
    backtrack(0, &order, &cands, gs, tgt, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn backtrack<'a>(
    depth: usize,
    order: &[usize; 3],
    cands: &'a [Vec<&'a LatticePoint>],
    gs: &Mat3,
    tgt: &HermLattice,
    chosen: &mut [Option<&'a [QuadInt; 3]>; 3],
    out: &mut Vec<Mat3>,
) {
    if depth == 3 {
        let cols = chosen.map(|c| c.expect("all chosen").clone().map(QuadRat::from));
        out.push(Mat3::from_columns(&cols));
        return;
    }
    let i = order[depth];
    for p in &cands[i] {
        let ok = order[..depth].iter().all(|&j| {
            let cj = chosen[j].expect("earlier choice");
            tgt.inner_coords(&p.coords, cj) == *gs.get(i, j)
        });
        if ok {
            chosen[i] = Some(&p.coords);
            backtrack(depth + 1, order, cands, gs, tgt, chosen, out);
            chosen[i] = None;
        }
    }
}

/// The full isometry group of a positive definite lattice, on its basis.
pub fn isometry_group(lat: &HermLattice) -> Result<Vec<IsometryMatrix>> {
    Ok(isometries_between(lat, lat)?.into_iter().map(|entries| IsometryMatrix { entries }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{enumerate_norm, lattice_l, lattice_m, lattice_o3};
    use std::collections::BTreeSet;

    /// Signed permutation matrices with entries in `{±1}`: the oracle for `O³`.
    fn signed_permutations() -> BTreeSet<Mat3> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = BTreeSet::new();
        for p in perms {
            for signs in 0..8 {
                out.insert(Mat3::from_fn(|i, j| {
                    if p[j] == i {
                        QuadRat::from(if signs >> j & 1 == 1 { -1 } else { 1 })
                    } else {
                        QuadRat::zero()
                    }
                }));
            }
        }
        out
    }

    #[test]
    fn unit_lattice_group_is_signed_permutations() {
        let g: BTreeSet<Mat3> = isometry_group(&lattice_o3()).unwrap().into_iter().map(|u| u.entries).collect();
        assert_eq!(g, signed_permutations());
    }

    #[test]
    fn group_orders() {
        let gl = isometry_group(&lattice_l()).unwrap();
        assert_eq!(gl.len(), 336);
        assert!(gl.iter().all(|u| u.preserves(&lattice_l())));
        let gm = isometry_group(&lattice_m()).unwrap();
        assert_eq!(gm.len(), 42);
    }

    #[test]
    fn isometries_permute_norm_three_vectors_of_m() {
        let m = lattice_m();
        let vs: BTreeSet<HermVector> = enumerate_norm(&m, 3).unwrap().into_iter().collect();
        for u in isometry_group(&m).unwrap() {
            let img: BTreeSet<HermVector> = vs.iter().map(|v| u.apply(&m, v)).collect();
            assert_eq!(img, vs);
        }
    }
}
