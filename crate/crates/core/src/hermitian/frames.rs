//! Frames of `L`: the roots sharing a nonzero class in `L/λL`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{enumerate_norm, lattice_l, HermLattice, HermVector};
use crate::error::{Error, Result};
use crate::qlambda::{QuadInt, QuadRat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Frame {
    /// Class in `L/λL`, as basis coordinates mod `λ`.
    pub residue: [u8; 3],
    pub roots: Vec<HermVector>,
}

fn residue_mod_lambda(lat: &HermLattice, x: &HermVector) -> Result<[u8; 3]> {
    let c = lat.integral_coords(x).ok_or(Error::NonIntegral)?;
    Ok(c.map(|t| t.mod_lambda()))
}

/// The 7 frames of `L`, ordered by residue.
pub fn frames(lat: &HermLattice) -> Result<Vec<Frame>> {
    let mut out: Vec<Frame> = Vec::new();
    for r in enumerate_norm(lat, 2)? {
        let residue = residue_mod_lambda(lat, &r)?;
        match out.iter_mut().find(|f| f.residue == residue) {
            Some(f) => f.roots.push(r),
            None => out.push(Frame { residue, roots: vec![r] }),
        }
    }
    for f in &mut out {
        f.roots.sort();
    }
    out.sort();
    Ok(out)
}

/// The frame of roots congruent to `x` modulo `λL`.
pub fn frame_of(lat: &HermLattice, x: &HermVector) -> Result<Frame> {
    let residue = residue_mod_lambda(lat, x)?;
    frames(lat)?
        .into_iter()
        .find(|f| f.residue == residue)
        .ok_or_else(|| Error::Invalid(format!("{x} lies in λL")))
}

/// Every ordered triple of mutually orthogonal roots `(e, e′, e″)` from the
/// frame of `x` with `λ̄x = e + λe′ + λ²e″`.
pub fn norm7_decompositions(x: &HermVector) -> Result<Vec<[HermVector; 3]>> {
    let l = lattice_l();
    let n = l.norm(x);
    if n != BigRational::from_integer(7.into()) {
        return Err(Error::WrongNorm { expected: "7".into(), found: n.to_string() });
    }
    if !l.contains(x) {
        return Err(Error::Invalid(format!("{x} is not in L")));
    }
    let frame = frame_of(&l, x)?;
    let target = x.scale(&QuadRat::lambda_bar());
    let lam = QuadRat::lambda();
    let lam2 = QuadRat::from(QuadInt::lambda().pow(2));
    let zero = QuadRat::zero();
    let mut out = Vec::new();
    for e in &frame.roots {
        for e1 in &frame.roots {
            if l.inner(e, e1) != zero {
                continue;
            }
            for e2 in &frame.roots {
                if l.inner(e, e2) != zero || l.inner(e1, e2) != zero {
                    continue;
                }
                let sum = &(e + &e1.scale(&lam)) + &e2.scale(&lam2);
                if sum == target {
                    out.push([e.clone(), e1.clone(), e2.clone()]);
                }
            }
        }
    }
    Ok(out)
}

/// The unique description `x = λ̄⁻¹(e + λe′ + λ²e″)` of a norm-7 vector.
pub fn norm7_decompose(x: &HermVector) -> Result<[HermVector; 3]> {
    let mut all = norm7_decompositions(x)?;
    if all.len() != 1 {
        return Err(Error::Invalid(format!("{} decompositions of {x}", all.len())));
    }
    Ok(all.pop().expect("one element"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::vector_s;

    fn v(a: [(i64, i64); 3]) -> HermVector {
        HermVector::from_ints(a.map(|(x, y)| QuadInt::new(x, y)))
    }

    #[test]
    fn seven_frames_of_six() {
        let fs = frames(&lattice_l()).unwrap();
        assert_eq!(fs.len(), 7);
        assert!(fs.iter().all(|f| f.roots.len() == 6));
        for f in &fs {
            for r in &f.roots {
                assert!(f.roots.contains(&-r));
            }
        }
    }

    #[test]
    fn standard_frame() {
        let f = frame_of(&lattice_l(), &v([(2, 0), (0, 0), (0, 0)])).unwrap();
        let mut want = Vec::new();
        for i in 0..3 {
            for s in [2, -2] {
                let mut c = [(0, 0); 3];
                c[i] = (s, 0);
                want.push(v(c));
            }
        }
        want.sort();
        assert_eq!(f.roots, want);
    }

    #[test]
    fn decomposition_of_s() {
        let d = norm7_decompose(&vector_s()).unwrap();
        assert_eq!(d, [v([(2, 0), (0, 0), (0, 0)]), v([(0, 0), (-2, 0), (0, 0)]), v([(0, 0), (0, 0), (2, 0)])]);
        let three = enumerate_norm(&lattice_l(), 3).unwrap();
        assert!(matches!(norm7_decompose(&three[0]), Err(Error::WrongNorm { .. })));
    }
}
