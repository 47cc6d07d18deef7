//! Type of a vertex fixed by a subgroup `S₄ ⊂ PGL₃(Q₂)`.
//!
//! Each involution of the Klein four-subgroup has a one-dimensional
//! eigenline for its simple eigenvalue. The three primitive vectors of the
//! lattice on these lines span `L₀`, and the index `[Λ : L₀]` is 1, 4 or 2
//! for the types 0, l and p.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{act, ProjElement, VertexClass};
use crate::error::{Error, Result};
use crate::group::{closure, describe_projective};
use crate::matrix::Mat3;
use crate::padic::val2;
use crate::qlambda::QuadRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum S4Kind {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "l")]
    L,
    #[serde(rename = "p")]
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S4Type {
    pub kind: S4Kind,
    /// `[Λ : L₀]`.
    pub index: u64,
}

fn two_pow(k: i64) -> QuadRat {
    QuadRat::from(BigInt::from(2)).pow(k).expect("nonzero base")
}

/// Primitive vector of `Z₂³` on the eigenline of the simple eigenvalue of
/// the involution `g`, given in lattice coordinates.
fn eigenline(g: &Mat3) -> Result<[QuadRat; 3]> {
    let vdet = val2(&g.det()).ok_or(Error::Singular)?;
    if vdet % 3 != 0 {
        return Err(Error::Invalid("involution does not preserve the lattice class".into()));
    }
    let g = g.scale(&two_pow(-vdet / 3));
    let tr = g.trace();
    if tr.is_zero() {
        return Err(Error::Invalid("not an involution".into()));
    }
    // s = −g/tr(g) has eigenvalues (1, −1, −1).
    let s = g.scale(&(-tr.inv()?));
    if &s * &s != Mat3::identity() {
        return Err(Error::Invalid("not an involution".into()));
    }
    let p = Mat3::identity().add(&s);
    let col = (0..3).map(|j| p.column(j)).find(|c| c.iter().any(|x| !x.is_zero())).expect("I + s is nonzero");
    let m = col.iter().filter_map(val2).min().expect("nonzero column");
    Ok(col.map(|x| &x * &two_pow(-m)))
}

/// Classifies `v` by the `S₄` generated projectively by `gens`.
pub fn s4_vertex_type(gens: &[ProjElement], v: &VertexClass, precision: u32) -> Result<S4Type> {
    let group = closure(gens, 100)?;
    let d = describe_projective(&group)?;
    if d.recognized_name != "S4" {
        return Err(Error::Invalid(format!("generators give {} of order {}, not S4", d.recognized_name, d.order)));
    }
    for g in &group {
        if &act(g, v, precision)? != v {
            return Err(Error::Invalid("the group does not fix the vertex".into()));
        }
    }
    let keys: BTreeSet<Mat3> = group.iter().map(ProjElement::key).collect();
    let involutions: Vec<&ProjElement> = group.iter().filter(|g| g.projective_order(2) == Some(2)).collect();
    // Double transpositions: the involutions with 3 conjugates.
    let mut klein = Vec::new();
    for t in &involutions {
        let class: BTreeSet<Mat3> = group.iter().map(|g| g.compose(t).compose(&g.inverse()).key()).collect();
        debug_assert!(class.iter().all(|c| keys.contains(c)));
        if class.len() == 3 {
            klein.push(*t);
        }
    }
    if klein.len() != 3 {
        return Err(Error::Invalid("no Klein four-subgroup of double transpositions".into()));
    }
    let h = v.matrix();
    let h_inv = h.inverse()?;
    let cols: Vec<[QuadRat; 3]> = klein
        .iter()
        .map(|t| eigenline(&(&(&h_inv * &t.matrix) * &h)))
        .collect::<Result<_>>()?;
    let f = Mat3::from_columns(&[cols[0].clone(), cols[1].clone(), cols[2].clone()]);
    let k = val2(&f.det()).ok_or_else(|| Error::Invalid("eigenlines are dependent".into()))?;
    let index = 1u64 << k;
    let kind = match index {
        1 => S4Kind::Zero,
        2 => S4Kind::P,
        4 => S4Kind::L,
        _ => return Err(Error::Invalid(format!("unexpected index {index}"))),
    };
    Ok(S4Type { kind, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::DEFAULT_PRECISION;

    fn signed_perm_gens() -> Vec<ProjElement> {
        [[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]]
            .map(|m| ProjElement::new(Mat3::from_ints(m)).unwrap())
            .to_vec()
    }

    #[test]
    fn model_lattices() {
        let gens = signed_perm_gens();
        let cases = [
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], S4Kind::Zero, 1),
            // x₁ + x₂ + x₃ ≡ 0 mod 2
            ([[2, 1, 1], [0, 1, 0], [0, 0, 1]], S4Kind::L, 4),
            // x₁ ≡ x₂ ≡ x₃ mod 2
            ([[2, 0, 1], [0, 2, 1], [0, 0, 1]], S4Kind::P, 2),
        ];
        for (rows, kind, index) in cases {
            let v = VertexClass::from_rows(rows).unwrap();
            assert_eq!(s4_vertex_type(&gens, &v, DEFAULT_PRECISION).unwrap(), S4Type { kind, index });
        }
    }

    #[test]
    fn rejects_non_s4_and_non_fixed() {
        let gens = signed_perm_gens();
        let v = VertexClass::from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(s4_vertex_type(&gens, &v, DEFAULT_PRECISION).is_err());
        let d = VertexClass::from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(s4_vertex_type(&gens[..1], &d, DEFAULT_PRECISION).is_err());
    }
}
