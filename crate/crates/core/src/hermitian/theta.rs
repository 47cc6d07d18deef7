//! Structure modulo `θ = √−7`: index-7 sublattices of `L` and the unimodular
//! superlattices of `M`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{enumerate_norm, isometries_between, lattice_l, HermLattice, HermVector};
use crate::error::{Error, Result};
use crate::matrix::Mat3;
use crate::qlambda::{QuadInt, QuadRat};

/// A point of `P²(F₇)`, scaled so its first nonzero coordinate is 1.
pub type F7Point = [u8; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Isotropic,
    /// Nonisotropic and orthogonal to some isotropic point.
    Plus,
    /// Nonisotropic and orthogonal to no isotropic point.
    Minus,
}

#[derive(Clone, Debug)]
pub struct Index7Sublattice {
    pub point: F7Point,
    pub class: PointClass,
    pub lattice: HermLattice,
    /// Rank of the Gram matrix of the sublattice reduced mod `θ`.
    pub reduced_rank: usize,
}

#[derive(Clone, Debug)]
pub struct Superlattice {
    pub point: F7Point,
    pub lattice: HermLattice,
    pub norm_one_count: usize,
    pub is_l: bool,
}

#[derive(Clone, Debug)]
pub struct MCopy {
    pub point: F7Point,
    pub lattice: HermLattice,
    /// Ambient matrix of an isometry carrying `M` onto this copy.
    pub isometry_from_m: Mat3,
}

fn inv7(a: u8) -> u8 {
    (1..7).find(|b| (a as u32 * *b as u32) % 7 == 1).expect("nonzero residue")
}

fn normalize(p: [u8; 3]) -> Option<F7Point> {
    let lead = *p.iter().find(|&&x| x != 0)?;
    let s = inv7(lead) as u32;
    Some(p.map(|x| ((x as u32 * s) % 7) as u8))
}

fn all_points() -> Vec<F7Point> {
    let mut out = Vec::new();
    for a in 0..7 {
        for b in 0..7 {
            out.push([1, a, b]);
        }
    }
    for a in 0..7 {
        out.push([0, 1, a]);
    }
    out.push([0, 0, 1]);
    out
}

/// The Gram matrix of an integral lattice modulo `θ`.
fn gram_mod_theta(lat: &HermLattice) -> Result<[[u8; 3]; 3]> {
    let g = lat.gram().to_quad_int().ok_or(Error::NonIntegral)?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].mod_theta())))
}

fn form(g: &[[u8; 3]; 3], x: &[u8; 3], y: &[u8; 3]) -> u8 {
    let mut acc = 0u32;
    for i in 0..3 {
        for j in 0..3 {
            acc += x[i] as u32 * y[j] as u32 * g[i][j] as u32;
        }
    }
    (acc % 7) as u8
}

fn rank_mod7(mut m: [[u8; 3]; 3]) -> usize {
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        let s = inv7(m[rank][col]) as u32;
        for r in 0..3 {
            if r != rank && m[r][col] != 0 {
                let f = (m[r][col] as u32 * s) % 7;
                for c in 0..3 {
                    m[r][c] = ((m[r][c] as u32 + 7 * 7 - f * m[rank][c] as u32) % 7) as u8;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis coordinates of `x` modulo `θ`.
pub fn reduce_mod_theta(lat: &HermLattice, x: &HermVector) -> Result<[u8; 3]> {
    Ok(lat.integral_coords(x).ok_or(Error::NonIntegral)?.map(|c| c.mod_theta()))
}

fn classify(g: &[[u8; 3]; 3], p: &F7Point, isotropic: &[F7Point]) -> PointClass {
    if form(g, p, p) == 0 {
        PointClass::Isotropic
    } else if isotropic.iter().any(|q| form(g, p, q) == 0) {
        PointClass::Plus
    } else {
        PointClass::Minus
    }
}

/// Isotropic points of `P(lat/θ lat)`.
pub fn isotropic_points(lat: &HermLattice) -> Result<Vec<F7Point>> {
    let g = gram_mod_theta(lat)?;
    Ok(all_points().into_iter().filter(|p| form(&g, p, p) == 0).collect())
}

fn small(k: u8) -> QuadInt {
    QuadInt::from_int(k as i64)
}

/// Preimage in `lat` of `p^⊥ ⊂ lat/θ lat`.
fn hyperplane_preimage(lat: &HermLattice, g: &[[u8; 3]; 3], p: &F7Point) -> Result<HermLattice> {
    // c ↦ Σ cᵢ fᵢ with fᵢ = ⟨bᵢ, p⟩ mod θ
    let f: [u8; 3] = std::array::from_fn(|i| ((0..3).map(|j| g[i][j] as u32 * p[j] as u32).sum::<u32>() % 7) as u8);
    let k = f.iter().position(|&x| x != 0).ok_or_else(|| Error::Invalid("form is degenerate".into()))?;
    let fk_inv = inv7(f[k]) as u32;
    let b = lat.basis();
    let basis: [HermVector; 3] = std::array::from_fn(|j| {
        if j == k {
            b[k].scale(&QuadRat::theta())
        } else {
            let t = ((f[j] as u32 * fk_inv) % 7) as u8;
            &b[j] - &b[k].scale(&QuadRat::from(small(t)))
        }
    });
    HermLattice::new(basis, lat.form_scale().clone())
}

/// All 57 index-7 sublattices `{x : ⟨x, p⟩ ≡ 0 mod θ}` of a unimodular lattice.
pub fn index7_sublattices(lat: &HermLattice) -> Result<Vec<Index7Sublattice>> {
    let g = gram_mod_theta(lat)?;
    if rank_mod7(g) != 3 {
        return Err(Error::Invalid("reduction mod θ is degenerate".into()));
    }
    let iso = isotropic_points(lat)?;
    all_points()
        .into_iter()
        .map(|p| {
            let sub = hyperplane_preimage(lat, &g, &p)?;
            Ok(Index7Sublattice {
                point: p,
                class: classify(&g, &p, &iso),
                reduced_rank: rank_mod7(gram_mod_theta(&sub)?),
                lattice: sub,
            })
        })
        .collect()
}

/// The unimodular superlattices `span(lat, v/θ)` over lines `v` of
/// `lat/θ lat`, for `lat` integral of determinant 7.
pub fn superlattices(lat: &HermLattice) -> Result<Vec<Superlattice>> {
    if lat.det() != BigRational::from_integer(7.into()) {
        return Err(Error::Invalid("expected a lattice of determinant 7".into()));
    }
    let l = lattice_l();
    let theta_inv = QuadRat::theta().inv()?;
    let b = lat.basis();
    let mut out = Vec::new();
    for p in all_points() {
        let k = p.iter().position(|&x| x != 0).expect("nonzero point");
        let mut v = HermVector::zero();
        for j in 0..3 {
            v = &v + &b[j].scale(&QuadRat::from(small(p[j])));
        }
        let basis: [HermVector; 3] = std::array::from_fn(|j| if j == k { v.scale(&theta_inv) } else { b[j].clone() });
        let sup = HermLattice::new(basis, lat.form_scale().clone())?;
        if !sup.is_integral() || sup.det() != BigRational::from_integer(1.into()) {
            continue;
        }
        let norm_one_count = enumerate_norm(&sup, 1)?.len();
        let is_l = sup.same_lattice(&l);
        out.push(Superlattice { point: p, lattice: sup, norm_one_count, is_l });
    }
    Ok(out)
}

/// The index-7 sublattices of `L` isometric to `M`, each with an explicit
/// isometry.
pub fn m_copies_in_l(lat: &HermLattice) -> Result<Vec<MCopy>> {
    let m = super::lattice_m();
    let mut out = Vec::new();
    for s in index7_sublattices(lat)? {
        if s.reduced_rank != 1 {
            continue;
        }
        let isos = isometries_between(&m, &s.lattice)?;
        let u = isos.first().ok_or_else(|| Error::Invalid(format!("no isometry onto the copy at {:?}", s.point)))?;
        let t = &(s.lattice.basis_matrix() * u) * m.basis_inverse();
        out.push(MCopy { point: s.point, lattice: s.lattice, isometry_from_m: t });
    }
    Ok(out)
}

/// Line through a nonzero residue vector.
pub fn line_of(v: [u8; 3]) -> Option<F7Point> {
    normalize(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{lattice_m, vector_s};
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn point_counts() {
        let subs = index7_sublattices(&lattice_l()).unwrap();
        assert_eq!(subs.len(), 57);
        let mut counts = BTreeMap::new();
        for s in &subs {
            *counts.entry(s.class).or_insert(0) += 1;
            assert_eq!(s.lattice.det(), BigRational::from_integer(7.into()));
            let want = if s.class == PointClass::Isotropic { 1 } else { 2 };
            assert_eq!(s.reduced_rank, want);
        }
        assert_eq!(counts[&PointClass::Isotropic], 8);
        assert_eq!(counts[&PointClass::Plus], 28);
        assert_eq!(counts[&PointClass::Minus], 21);
    }

    #[test]
    fn s_defines_m() {
        let l = lattice_l();
        let sp = line_of(reduce_mod_theta(&l, &vector_s()).unwrap()).unwrap();
        let subs = index7_sublattices(&l).unwrap();
        let s = subs.iter().find(|s| s.point == sp).unwrap();
        assert_eq!(s.class, PointClass::Isotropic);
        assert!(s.lattice.same_lattice(&lattice_m()));
    }

    #[test]
    fn roots_and_norm_three_residues() {
        let l = lattice_l();
        let g = gram_mod_theta(&l).unwrap();
        let iso = isotropic_points(&l).unwrap();
        for (n, class, count) in [(2, PointClass::Minus, 42), (3, PointClass::Plus, 56)] {
            let vs = enumerate_norm(&l, n).unwrap();
            let res: BTreeSet<[u8; 3]> = vs.iter().map(|v| reduce_mod_theta(&l, v).unwrap()).collect();
            assert_eq!(res.len(), count);
            for r in res {
                assert_eq!(classify(&g, &line_of(r).unwrap(), &iso), class);
            }
        }
    }

    #[test]
    fn norm_seven_vectors_over_isotropic_vectors() {
        let l = lattice_l();
        let mut hits: BTreeMap<[u8; 3], usize> = BTreeMap::new();
        for v in enumerate_norm(&l, 7).unwrap() {
            *hits.entry(reduce_mod_theta(&l, &v).unwrap()).or_default() += 1;
        }
        assert_eq!(hits.len(), 48);
        assert!(hits.values().all(|&c| c == 7));
    }

    #[test]
    fn superlattices_of_m() {
        let sups = superlattices(&lattice_m()).unwrap();
        assert_eq!(sups.len(), 8);
        assert_eq!(sups.iter().filter(|s| s.is_l).count(), 1);
        for s in &sups {
            assert_eq!(s.norm_one_count, if s.is_l { 0 } else { 6 });
        }
    }

    #[test]
    fn copies_of_m() {
        let l = lattice_l();
        let copies = m_copies_in_l(&l).unwrap();
        assert_eq!(copies.len(), 8);
        let m = lattice_m();
        for c in &copies {
            assert_eq!(enumerate_norm(&c.lattice, 3).unwrap().len(), 14);
            for b in m.basis() {
                let img = HermVector(c.isometry_from_m.mul_vec(&b.0));
                assert!(c.lattice.contains(&img));
            }
        }
        let plus = index7_sublattices(&l).unwrap().into_iter().find(|s| s.class == PointClass::Plus).unwrap();
        assert!(isometries_between(&m, &plus.lattice).unwrap().is_empty());
    }
}
