//! The specific group elements and vertices the computations revolve
//! around.
//!
//! `Γ_L` acts in ambient coordinates of `O³`, where `D = Z₂³` and `C` is the
//! class of `L ⊗ Z₂`. `Γ_M` acts in coordinates on the basis `e₁, e₂, e₃` of
//! `M`, where `v = M ⊗ Z₂` is the class of the identity.

use crate::building::{canonicalize, NeighborKind, ProjElement, VertexClass, DEFAULT_PRECISION};
use crate::error::Result;
use crate::group::{closure, generating_subset, projective_image, stabilizer_elements};
use crate::hermitian::{isometry_group, lattice_l, lattice_m};
use crate::matrix::Mat3;
use crate::qlambda::QuadRat;

fn l() -> QuadRat {
    QuadRat::lambda()
}

fn int(n: i64) -> QuadRat {
    QuadRat::from(n)
}

fn proj(m: Mat3) -> ProjElement {
    ProjElement::new(m).expect("nonsingular generator")
}

/// The Galois map `ζ₇ ↦ ζ₇²` on the basis `1, ζ₇, ζ₇²`.
pub fn sigma() -> ProjElement {
    proj(Mat3([[int(1), int(0), l()], [int(0), int(0), int(-1)], [int(0), int(1), int(-1)]]))
}

/// Multiplication by `ζ₇` on the basis `1, ζ₇, ζ₇²`.
pub fn tau() -> ProjElement {
    proj(Mat3([[int(0), int(0), int(1)], [int(1), int(0), &int(1) + &l()], [int(0), int(1), l()]]))
}

/// `e₁ ↦ e₂ ↦ e₃ ↦ (λ/λ̄)e₁`.
pub fn beta_m() -> ProjElement {
    let c = &QuadRat::lambda() / &QuadRat::lambda_bar();
    proj(Mat3([[int(0), int(0), c], [int(1), int(0), int(0)], [int(0), int(1), int(0)]]))
}

/// Sends the standard frame `(2,0,0), (0,2,0), (0,0,2)` to the roots
/// `(2,0,0), (0,λ̄,λ̄), (0,λ̄,−λ̄)`.
pub fn beta_l() -> ProjElement {
    let li = QuadRat::lambda().inv().expect("λ ≠ 0");
    proj(Mat3([[int(1), int(0), int(0)], [int(0), li.clone(), li.clone()], [int(0), li.clone(), -li]]))
}

/// `στ⁵β_M⁻¹τ⁻⁵σ⁻¹`.
pub fn alpha_m() -> ProjElement {
    let (s, t) = (sigma(), tau());
    s.compose(&t.pow(5)).compose(&beta_m().inverse()).compose(&t.pow(-5)).compose(&s.inverse())
}

/// `α_M τ³`.
pub fn gamma_m() -> ProjElement {
    alpha_m().compose(&tau().pow(3))
}

pub fn vertex_d() -> VertexClass {
    VertexClass::from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).expect("identity")
}

pub fn vertex_c() -> VertexClass {
    canonicalize(lattice_l().basis_matrix(), DEFAULT_PRECISION).expect("L basis is nonsingular")
}

/// `M ⊗ Z₂` in coordinates on the basis of `M`.
pub fn vertex_v() -> VertexClass {
    vertex_d()
}

/// The labelled vertices of the strip around `C` and `D`, each given by
/// the rows of a matrix whose columns span the lattice.
pub fn strip_vertices() -> Vec<(char, VertexClass)> {
    let rows: [(char, [[i64; 3]; 3]); 7] = [
        ('A', [[2, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ('B', [[2, 0, 0], [0, 2, 1], [0, 0, 1]]),
        ('C', [[2, 1, 0], [0, 1, 1], [0, 0, 1]]),
        ('D', [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ('E', [[2, 0, 1], [0, 2, 1], [0, 0, 1]]),
        ('F', [[1, 0, 0], [0, 2, 1], [0, 0, 1]]),
        ('G', [[1, 0, 0], [0, 2, 0], [0, 0, 2]]),
    ];
    rows.into_iter().map(|(c, r)| (c, VertexClass::from_rows(r).expect("nonsingular"))).collect()
}

pub fn strip_vertex(label: char) -> VertexClass {
    strip_vertices().into_iter().find(|(c, _)| *c == label).expect("label A to G").1
}

/// The point-type and line-type neighbors of `v` fixed by `σ`.
pub fn sigma_fixed_neighbors() -> Result<(VertexClass, VertexClass)> {
    let s = sigma();
    let mut p = None;
    let mut l = None;
    for (kind, n) in vertex_v().neighbors_typed() {
        if crate::building::act(&s, &n, DEFAULT_PRECISION)? == n {
            match kind {
                NeighborKind::Point => p = Some(n),
                NeighborKind::Line => l = Some(n),
            }
        }
    }
    let err = || crate::Error::Invalid("σ fixes no point or no line of the link of v".into());
    Ok((p.ok_or_else(err)?, l.ok_or_else(err)?))
}

/// The projective image of `Isom L` acting on `O³`: 168 elements.
pub fn isom_l_projective() -> Result<Vec<ProjElement>> {
    let lat = lattice_l();
    let g: Vec<ProjElement> = isometry_group(&lat)?.iter().map(|u| proj(u.ambient(&lat))).collect();
    Ok(projective_image(&g))
}

/// The projective image of `Isom M` on the basis of `M`: 21 elements.
pub fn isom_m_projective() -> Result<Vec<ProjElement>> {
    let g: Vec<ProjElement> = isometry_group(&lattice_m())?.into_iter().map(|u| proj(u.entries)).collect();
    Ok(projective_image(&g))
}

/// The stabilizer in projective `Isom L` of the standard frame, i.e. of `D`.
pub fn frame_s4() -> Result<Vec<ProjElement>> {
    stabilizer_elements(&isom_l_projective()?, &vertex_d(), DEFAULT_PRECISION)
}

/// A few elements generating projective `Isom L`, followed by `β_L`.
pub fn gamma_l_generators() -> Result<Vec<ProjElement>> {
    let mut g = generating_subset(&isom_l_projective()?)?;
    g.push(beta_l());
    Ok(g)
}

pub fn gamma_m_generators() -> Vec<ProjElement> {
    vec![sigma(), tau(), beta_m()]
}

/// `⟨σ, τ⟩`, the group `F₂₁`.
pub fn f21() -> Result<Vec<ProjElement>> {
    closure(&[sigma(), tau()], 100)
}

/// `⟨e₁,e₂,e₃⟩`, `⟨e₁,e₂,e₃/λ⟩`, `⟨e₁,e₂/λ,e₃/λ⟩` in the coordinates of `M`.
pub fn beta_m_triangle() -> [VertexClass; 3] {
    let li = QuadRat::lambda().inv().expect("λ ≠ 0");
    let diag = |a: &QuadRat, b: &QuadRat| {
        let m = Mat3([[int(1), int(0), int(0)], [int(0), a.clone(), int(0)], [int(0), int(0), b.clone()]]);
        canonicalize(&m, DEFAULT_PRECISION).expect("nonsingular")
    };
    [diag(&int(1), &int(1)), diag(&int(1), &li), diag(&li, &li)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{act, projective_equal};
    use crate::hermitian::IsometryMatrix;

    #[test]
    fn generator_orders() {
        assert_eq!(sigma().matrix.pow(3).unwrap(), Mat3::identity());
        assert_eq!(tau().matrix.pow(7).unwrap(), Mat3::identity());
        assert!(!projective_equal(&sigma(), &tau()));
        let cube = beta_m().matrix.pow(3).unwrap();
        assert_eq!(cube.as_scalar(), Some(&QuadRat::lambda() / &QuadRat::lambda_bar()));
    }

    #[test]
    fn sigma_tau_beta_are_isometries_of_m() {
        let m = lattice_m();
        for g in [sigma(), tau()] {
            assert!(IsometryMatrix { entries: g.matrix }.preserves(&m));
        }
        assert!(IsometryMatrix { entries: beta_m().matrix }.preserves(&m));
    }

    #[test]
    fn beta_l_on_strip_vertices() {
        let b = beta_l();
        assert_eq!(act(&b, &strip_vertex('D'), 64).unwrap(), strip_vertex('B'));
        assert_eq!(act(&b, &strip_vertex('E'), 64).unwrap(), strip_vertex('C'));
        assert_eq!(vertex_c(), strip_vertex('C'));
        let d = vertex_d();
        for c in ['A', 'B', 'C', 'E', 'F', 'G'] {
            assert!(d.is_adjacent(&strip_vertex(c)), "{c}");
        }
    }

    #[test]
    fn beta_m_rotates_triangle() {
        let t = beta_m_triangle();
        let b = beta_m();
        // ⟨e₁,e₂,e₃⟩ ↦ ⟨e₁,e₂/λ,e₃/λ⟩ ↦ ⟨e₁,e₂,e₃/λ⟩ ↦ ⟨e₁,e₂,e₃⟩
        for i in 0..3 {
            assert_eq!(act(&b, &t[i], 64).unwrap(), t[(i + 2) % 3]);
        }
    }

    #[test]
    fn p_and_l() {
        let (p, l) = sigma_fixed_neighbors().unwrap();
        let t3l = act(&tau().pow(3), &l, 64).unwrap();
        assert!(p.is_adjacent(&t3l));
        let v = vertex_v();
        assert!(v.is_adjacent(&t3l));
        let a = alpha_m();
        assert_eq!(act(&a, &v, 64).unwrap(), p);
        assert_eq!(act(&a, &p, 64).unwrap(), t3l);
        assert_eq!(act(&a, &t3l, 64).unwrap(), v);
    }
}
