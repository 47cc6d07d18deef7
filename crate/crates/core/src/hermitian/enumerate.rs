//! Short vectors via the underlying rank-6 `Z`-lattice with basis
//! `{bᵢ, λbᵢ}` and quadratic form `q(x) = ⟨x,x⟩`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{HermLattice, HermVector};
use crate::error::{Error, Result};
use crate::qlambda::{QuadInt, QuadRat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticePoint {
    pub norm: BigRational,
    pub coords: [QuadInt; 3],
    pub vector: HermVector,
}

fn real_basis(k: usize) -> [QuadInt; 3] {
    let mut c: [QuadInt; 3] = Default::default();
    c[k / 2] = if k % 2 == 0 { QuadInt::from_int(1) } else { QuadInt::lambda() };
    c
}

fn real_coords(u: &[i64; 6]) -> [QuadInt; 3] {
    std::array::from_fn(|i| QuadInt::new(u[2 * i], u[2 * i + 1]))
}

/// Integral 6×6 Gram matrix of `d·q`, with `d` the least common denominator.
fn integral_real_gram(lat: &HermLattice) -> ([[BigInt; 6]; 6], BigInt) {
    let mut q: [[BigRational; 6]; 6] = Default::default();
    for a in 0..6 {
        for b in 0..6 {
            q[a][b] = lat.inner_coords(&real_basis(a), &real_basis(b)).real_part();
        }
    }
    let d = q.iter().flatten().fold(BigInt::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let qi = std::array::from_fn(|a| std::array::from_fn(|b| (&q[a][b] * BigRational::from_integer(d.clone())).to_integer()));
    (qi, d)
}

/// All nonzero lattice vectors with `0 < ⟨x,x⟩ ≤ bound`, sorted by norm then
/// by coordinates on the basis.
pub fn vectors_up_to(lat: &HermLattice, bound: &BigRational) -> Result<Vec<LatticePoint>> {
    if !lat.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if !bound.is_positive() {
        return Ok(Vec::new());
    }
    let (qi, d) = integral_real_gram(lat);
    let qf: [[f64; 6]; 6] = std::array::from_fn(|a| std::array::from_fn(|b| qi[a][b].to_f64().expect("finite")));
    let bound_int = (bound * BigRational::from_integer(d.clone())).floor().to_integer();
    let c = bound_int.to_f64().expect("finite bound");

    // q(x) = Σᵢ diag[i] (xᵢ + Σ_{j>i} mu[i][j] xⱼ)²
    let mut diag = [0f64; 6];
    let mut mu = [[0f64; 6]; 6];
    for i in 0..6 {
        diag[i] = qf[i][i] - (0..i).map(|k| diag[k] * mu[k][i] * mu[k][i]).sum::<f64>();
        for j in i + 1..6 {
            mu[i][j] = (qf[i][j] - (0..i).map(|k| diag[k] * mu[k][i] * mu[k][j]).sum::<f64>()) / diag[i];
        }
    }
    let eps = 1e-7 * (1.0 + c);
    let mut found = Vec::new();
    let mut x = [0i64; 6];
    search(5, c, &diag, &mu, eps, &mut x, &mut found);

    let mut out = Vec::new();
    for u in found {
        if u.iter().all(|&t| t == 0) {
            continue;
        }
        let exact: BigInt = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .map(|(a, b)| &qi[a][b] * BigInt::from(u[a]) * BigInt::from(u[b]))
            .sum();
        if exact > bound_int || exact.is_zero() {
            continue;
        }
        let coords = real_coords(&u);
        let norm = BigRational::new(exact, d.clone());
        debug_assert_eq!(QuadRat::from(&norm), lat.inner_coords(&coords, &coords));
        let vector = lat.vector_from_coords(&coords);
        out.push(LatticePoint { norm, coords, vector });
    }
    out.sort();
    Ok(out)
}

fn search(i: usize, rem: f64, diag: &[f64; 6], mu: &[[f64; 6]; 6], eps: f64, x: &mut [i64; 6], out: &mut Vec<[i64; 6]>) {
    let center: f64 = -(i + 1..6).map(|j| mu[i][j] * x[j] as f64).sum::<f64>();
    let r = ((rem + eps).max(0.0) / diag[i]).sqrt();
    let lo = (center - r - 1e-9).ceil() as i64;
    let hi = (center + r + 1e-9).floor() as i64;
    for t in lo..=hi {
        let dt = t as f64 - center;
        let used = diag[i] * dt * dt;
        if used > rem + eps {
            continue;
        }
        x[i] = t;
        if i == 0 {
            out.push(*x);
        } else {
            search(i - 1, rem - used, diag, mu, eps, x, out);
        }
    }
    x[i] = 0;
}

/// Lattice vectors of norm exactly `n`.
pub fn enumerate_norm(lat: &HermLattice, n: i64) -> Result<Vec<HermVector>> {
    if n <= 0 {
        return Err(Error::Invalid(format!("norm must be positive, got {n}")));
    }
    let target = BigRational::from_integer(n.into());
    Ok(vectors_up_to(lat, &target)?
        .into_iter()
        .filter(|p| p.norm == target)
        .map(|p| p.vector)
        .collect())
}
