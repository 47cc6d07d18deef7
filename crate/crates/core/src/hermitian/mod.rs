//! Rank-3 Hermitian `O`-lattices inside `Q(λ)³`.
//!
//! Vectors are stored by their ambient coordinates; a lattice is an ordered
//! basis together with a scale for the standard form `Σ xᵢ ȳᵢ`. The lattice
//! `L` and its sublattice `M` use scale ½.

mod enumerate;
mod frames;
mod isometry;
mod theta;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Mat3, Vec3};
use crate::qlambda::{QuadInt, QuadRat};

pub use enumerate::{enumerate_norm, vectors_up_to, LatticePoint};
pub use frames::{frame_of, frames, norm7_decompose, norm7_decompositions, Frame};
pub use isometry::{isometries_between, isometry_group, IsometryMatrix};
pub use theta::{
    index7_sublattices, isotropic_points, line_of, m_copies_in_l, reduce_mod_theta, superlattices, F7Point, Index7Sublattice,
    MCopy, PointClass, Superlattice,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HermVector(pub Vec3);

impl HermVector {
    pub fn new(x: QuadRat, y: QuadRat, z: QuadRat) -> Self {
        HermVector([x, y, z])
    }

    pub fn from_ints(c: [QuadInt; 3]) -> Self {
        HermVector(c.map(QuadRat::from))
    }

    pub fn zero() -> Self {
        HermVector::new(QuadRat::zero(), QuadRat::zero(), QuadRat::zero())
    }

    pub fn coords(&self) -> &Vec3 {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(QuadRat::is_zero)
    }

    pub fn scale(&self, c: &QuadRat) -> Self {
        HermVector(std::array::from_fn(|i| &self.0[i] * c))
    }

    pub fn to_quad_ints(&self) -> Option<[QuadInt; 3]> {
        let [a, b, c] = &self.0;
        Some([a.to_quad_int()?, b.to_quad_int()?, c.to_quad_int()?])
    }

    /// Cyclic shift `(x, y, z) ↦ (z, x, y)`.
    pub fn rotate(&self) -> Self {
        let [a, b, c] = self.0.clone();
        HermVector([c, a, b])
    }
}

impl Add<&HermVector> for &HermVector {
    type Output = HermVector;
    fn add(self, o: &HermVector) -> HermVector {
        HermVector(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub<&HermVector> for &HermVector {
    type Output = HermVector;
    fn sub(self, o: &HermVector) -> HermVector {
        HermVector(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &HermVector {
    type Output = HermVector;
    fn neg(self) -> HermVector {
        HermVector(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl fmt::Display for HermVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// `form_scale · Σ xᵢ ȳᵢ`.
pub fn hermitian_form(form_scale: &QuadRat, x: &HermVector, y: &HermVector) -> QuadRat {
    let mut acc = QuadRat::zero();
    for i in 0..3 {
        if !x.0[i].is_zero() && !y.0[i].is_zero() {
            acc += &(&x.0[i] * &y.0[i].conj());
        }
    }
    &acc * form_scale
}

#[derive(Clone, Debug)]
pub struct HermLattice {
    basis: [HermVector; 3],
    form_scale: QuadRat,
    basis_matrix: Mat3,
    basis_inverse: Mat3,
    gram: Mat3,
}

impl PartialEq for HermLattice {
    fn eq(&self, o: &Self) -> bool {
        self.basis == o.basis && self.form_scale == o.form_scale
    }
}

impl Eq for HermLattice {}

impl HermLattice {
    pub fn new(basis: [HermVector; 3], form_scale: QuadRat) -> Result<Self> {
        let basis_matrix = Mat3::from_columns(&[basis[0].0.clone(), basis[1].0.clone(), basis[2].0.clone()]);
        let basis_inverse = basis_matrix.inverse()?;
        let gram = Mat3::from_fn(|i, j| hermitian_form(&form_scale, &basis[i], &basis[j]));
        if !(0..3).all(|i| gram.get(i, i).is_rational()) {
            return Err(Error::Invalid("form scale must be rational".into()));
        }
        Ok(HermLattice { basis, form_scale, basis_matrix, basis_inverse, gram })
    }

    pub fn basis(&self) -> &[HermVector; 3] {
        &self.basis
    }

    pub fn form_scale(&self) -> &QuadRat {
        &self.form_scale
    }

    /// Columns are the basis vectors in ambient coordinates.
    pub fn basis_matrix(&self) -> &Mat3 {
        &self.basis_matrix
    }

    pub fn basis_inverse(&self) -> &Mat3 {
        &self.basis_inverse
    }

    /// `gram[i][j] = ⟨bᵢ, bⱼ⟩`.
    pub fn gram(&self) -> &Mat3 {
        &self.gram
    }

    pub fn inner(&self, x: &HermVector, y: &HermVector) -> QuadRat {
        hermitian_form(&self.form_scale, x, y)
    }

    pub fn norm(&self, x: &HermVector) -> BigRational {
        self.inner(x, x).to_rational().expect("Hermitian norms are rational")
    }

    /// Inner product of vectors given by coordinates on the basis.
    pub fn inner_coords(&self, c: &[QuadInt; 3], d: &[QuadInt; 3]) -> QuadRat {
        let mut acc = QuadRat::zero();
        for i in 0..3 {
            if c[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if d[j].is_zero() {
                    continue;
                }
                let cd = QuadRat::from(&c[i] * &d[j].conj());
                acc += &(&cd * self.gram.get(i, j));
            }
        }
        acc
    }

    /// Determinant of the Gram matrix; a rational number since the Gram
    /// matrix is Hermitian.
    pub fn det(&self) -> BigRational {
        self.gram.det().to_rational().expect("Hermitian determinant is rational")
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_positive_definite(&self) -> bool {
        let g = &self.gram;
        let m1 = g.get(0, 0).to_rational().expect("rational diagonal");
        let m2 = (&(g.get(0, 0) * g.get(1, 1)) - &(g.get(0, 1) * g.get(1, 0)))
            .to_rational()
            .expect("Hermitian minor is rational");
        m1.is_positive() && m2.is_positive() && self.det().is_positive()
    }

    pub fn coords_of(&self, x: &HermVector) -> Vec3 {
        self.basis_inverse.mul_vec(&x.0)
    }

    /// Coordinates on the basis when `x` lies in the lattice.
    pub fn integral_coords(&self, x: &HermVector) -> Option<[QuadInt; 3]> {
        HermVector(self.coords_of(x)).to_quad_ints()
    }

    pub fn contains(&self, x: &HermVector) -> bool {
        self.integral_coords(x).is_some()
    }

    pub fn vector_from_coords(&self, c: &[QuadInt; 3]) -> HermVector {
        HermVector(self.basis_matrix.mul_vec(&c.clone().map(QuadRat::from)))
    }

    pub fn contains_lattice(&self, o: &HermLattice) -> bool {
        o.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_lattice(&self, o: &HermLattice) -> bool {
        self.contains_lattice(o) && o.contains_lattice(self)
    }

    /// Ambient form of a matrix given on this lattice's basis: `B·U·B⁻¹`.
    pub fn to_ambient(&self, on_basis: &Mat3) -> Mat3 {
        &(&self.basis_matrix * on_basis) * &self.basis_inverse
    }

    pub fn from_ambient(&self, ambient: &Mat3) -> Mat3 {
        &(&self.basis_inverse * ambient) * &self.basis_matrix
    }
}

fn qi(a: i64, b: i64) -> QuadInt {
    QuadInt::new(a, b)
}

fn lam_pow(k: u32) -> QuadInt {
    QuadInt::lambda().pow(k)
}

/// `L = {x ∈ O³ : xᵢ ≡ xⱼ mod λ̄, x₁+x₂+x₃ ≡ 0 mod λ}` with basis
/// `(2,0,0), (λ̄,λ̄,0), (λ,1,1)` and half the standard form.
pub fn lattice_l() -> HermLattice {
    let lb = QuadInt::lambda_bar();
    HermLattice::new(
        [
            HermVector::from_ints([qi(2, 0), qi(0, 0), qi(0, 0)]),
            HermVector::from_ints([lb.clone(), lb, qi(0, 0)]),
            HermVector::from_ints([QuadInt::lambda(), qi(1, 0), qi(1, 0)]),
        ],
        half(),
    )
    .expect("L basis is independent")
}

/// The norm-7 vector `s = (λ, −λ², λ³)`.
pub fn vector_s() -> HermVector {
    HermVector::from_ints([lam_pow(1), -lam_pow(2), lam_pow(3)])
}

/// `e₁ = (−λ̄², −λ̄, 0)`, `e₂ = (λ, λ, λ)`, `e₃ = (1, λ², −1)`.
pub fn m_basis() -> [HermVector; 3] {
    let lb = QuadInt::lambda_bar();
    [
        HermVector::from_ints([-(&lb * &lb), -lb, qi(0, 0)]),
        HermVector::from_ints([lam_pow(1), lam_pow(1), lam_pow(1)]),
        HermVector::from_ints([qi(1, 0), lam_pow(2), qi(-1, 0)]),
    ]
}

/// `M = {x ∈ L : ⟨x, s⟩ ≡ 0 mod θ}` on the basis `e₁, e₂, e₃`.
pub fn lattice_m() -> HermLattice {
    HermLattice::new(m_basis(), half()).expect("M basis is independent")
}

/// `O³` with the plain standard form.
pub fn lattice_o3() -> HermLattice {
    HermLattice::new(
        [
            HermVector::from_ints([qi(1, 0), qi(0, 0), qi(0, 0)]),
            HermVector::from_ints([qi(0, 0), qi(1, 0), qi(0, 0)]),
            HermVector::from_ints([qi(0, 0), qi(0, 0), qi(1, 0)]),
        ],
        QuadRat::one(),
    )
    .expect("identity basis")
}

pub(crate) fn half() -> QuadRat {
    QuadRat::new(QuadInt::from_int(1), 2.into())
}

fn divides(d: &QuadInt, x: &QuadInt) -> bool {
    QuadInt::divides(d, x).expect("nonzero divisor").is_some()
}

/// Membership in `L`, decided by the congruences defining it.
pub fn in_l(x: &HermVector) -> Result<bool> {
    let c = x.to_quad_ints().ok_or(Error::NonIntegral)?;
    let lb = QuadInt::lambda_bar();
    let congruent = (0..3).all(|i| (i + 1..3).all(|j| divides(&lb, &(&c[i] - &c[j]))));
    let sum = &(&c[0] + &c[1]) + &c[2];
    Ok(congruent && divides(&QuadInt::lambda(), &sum))
}

/// Membership in `M`: `x ∈ L` and `θ | ⟨x, s⟩`.
pub fn in_m(x: &HermVector) -> bool {
    if !matches!(in_l(x), Ok(true)) {
        return false;
    }
    let p = hermitian_form(&half(), x, &vector_s());
    match p.to_quad_int() {
        Some(p) => divides(&QuadInt::theta(), &p),
        None => false,
    }
}

/// Reflection `x ↦ x − 2⟨x,r⟩/⟨r,r⟩ · r` for the form of `lat`.
pub fn reflect(lat: &HermLattice, r: &HermVector, x: &HermVector) -> Result<HermVector> {
    let rr = lat.inner(r, r);
    if rr.is_zero() {
        return Err(Error::Isotropic);
    }
    let coeff = &(&QuadRat::from(2) * &lat.inner(x, r)) / &rr;
    Ok(x - &r.scale(&coeff))
}

/// The reflection in `r` as an ambient matrix.
pub fn reflection_matrix(lat: &HermLattice, r: &HermVector) -> Result<Mat3> {
    let e = lattice_o3();
    let cols: Vec<Vec3> = e.basis().iter().map(|b| reflect(lat, r, b).map(|v| v.0)).collect::<Result<_>>()?;
    Ok(Mat3::from_columns(&[cols[0].clone(), cols[1].clone(), cols[2].clone()]))
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rational(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn v(a: [(i64, i64); 3]) -> HermVector {
        HermVector::from_ints(a.map(|(x, y)| qi(x, y)))
    }

    #[test]
    fn inner_product_examples() {
        let l = lattice_l();
        let r = v([(2, 0), (0, 0), (0, 0)]);
        assert_eq!(l.inner(&r, &r), QuadRat::from(2));
        let m = lattice_m();
        let e = m.basis();
        assert_eq!(m.inner(&e[0], &e[1]), QuadRat::lambda_bar());
        assert_eq!(m.inner(&e[1], &e[0]), QuadRat::lambda());
        assert_eq!(l.inner(&r, &HermVector::zero()), QuadRat::zero());
    }

    #[test]
    fn gram_of_m() {
        let m = lattice_m();
        let lb = QuadRat::lambda_bar();
        let la = QuadRat::lambda();
        let three = QuadRat::from(3);
        let want = Mat3([
            [three.clone(), lb.clone(), lb.clone()],
            [la.clone(), three.clone(), lb],
            [la.clone(), la, three],
        ]);
        assert_eq!(m.gram(), &want);
    }

    #[test]
    fn membership_in_l() {
        assert!(in_l(&v([(0, 1), (1, 0), (1, 0)])).unwrap());
        assert!(!in_l(&v([(1, 0), (0, 0), (0, 0)])).unwrap());
        assert!(in_l(&v([(2, 0), (0, 0), (0, 0)])).unwrap());
        let half_vec = HermVector::new(half(), QuadRat::zero(), QuadRat::zero());
        assert_eq!(in_l(&half_vec), Err(Error::NonIntegral));
        for b in lattice_l().basis() {
            assert!(in_l(b).unwrap());
        }
    }

    #[test]
    fn membership_in_m() {
        let e = m_basis();
        assert!(in_m(&e[0]));
        assert!(in_m(&vector_s()));
        assert!(!in_m(&v([(2, 0), (0, 0), (0, 0)])));
        let l = lattice_l();
        assert_eq!(l.inner(&v([(2, 0), (0, 0), (0, 0)]), &vector_s()), QuadRat::lambda_bar());
        assert_eq!(l.inner(&vector_s(), &vector_s()), QuadRat::from(7));
    }

    #[test]
    fn determinants() {
        assert_eq!(lattice_l().det(), rational(1));
        assert_eq!(lattice_m().det(), rational(7));
        assert_eq!(lattice_o3().det(), rational(1));
        assert!(lattice_l().is_integral());
        assert!(lattice_l().is_positive_definite());
        assert!(lattice_l().contains_lattice(&lattice_m()));
    }

    #[test]
    fn reflection_examples() {
        let l = lattice_l();
        let r = v([(2, 0), (0, 0), (0, 0)]);
        assert_eq!(reflect(&l, &r, &r).unwrap(), v([(-2, 0), (0, 0), (0, 0)]));
        let y = v([(0, 0), (2, 0), (0, 0)]);
        assert_eq!(reflect(&l, &r, &y).unwrap(), y);
        let r = v([(0, 1), (1, 0), (1, 0)]);
        let x = v([(-1, -1), (-1, -1), (0, 0)]);
        assert_eq!(l.inner(&x, &r), QuadRat::from(-1));
        // x + r = (λ̄+λ, λ̄+1, 1) = (−1, −λ, 1)
        assert_eq!(reflect(&l, &r, &x).unwrap(), v([(-1, 0), (0, -1), (1, 0)]));
        assert_eq!(reflect(&l, &HermVector::zero(), &x), Err(Error::Isotropic));
    }

    #[test]
    fn theta_squares_to_minus_seven() {
        assert_eq!(QuadInt::theta() * QuadInt::theta(), QuadInt::from_int(BigInt::from(-7)));
    }
}
