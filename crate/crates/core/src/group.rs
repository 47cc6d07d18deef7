//! Finite matrix groups, linear or projective: closure, element orders and
//! recognition of the few groups that occur here.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::building::{act, ProjElement, VertexClass};
use crate::error::{Error, Result};
use crate::matrix::Mat3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub order: usize,
    pub element_order_histogram: BTreeMap<u32, usize>,
    pub recognized_name: String,
}

const ORDER_LIMIT: u32 = 1000;

fn hist(pairs: &[(u32, usize)]) -> BTreeMap<u32, usize> {
    pairs.iter().copied().collect()
}

/// Name of a group from its order and element-order histogram, or "other".
pub fn recognize(order: usize, h: &BTreeMap<u32, usize>) -> String {
    let known: [(&str, &[(u32, usize)]); 6] = [
        ("Z3", &[(1, 1), (3, 2)]),
        ("F21", &[(1, 1), (3, 14), (7, 6)]),
        ("S4", &[(1, 1), (2, 9), (3, 8), (4, 6)]),
        ("L3(2)", &[(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]),
        ("2xF21", &[(1, 1), (2, 1), (3, 14), (6, 14), (7, 6), (14, 6)]),
        ("L3(2)x2", &[(1, 1), (2, 43), (3, 56), (4, 84), (6, 56), (7, 48), (14, 48)]),
    ];
    for (name, pairs) in known {
        let want = hist(pairs);
        if want.values().sum::<usize>() == order && &want == h {
            return name.to_string();
        }
    }
    "other".to_string()
}

fn describe_with(elements: &[Mat3], order_of: impl Fn(&Mat3) -> Option<u32>) -> Result<GroupDescriptor> {
    let mut h = BTreeMap::new();
    for g in elements {
        let k = order_of(g).ok_or_else(|| Error::NotAGroup("element of unbounded order".into()))?;
        *h.entry(k).or_insert(0) += 1;
    }
    Ok(GroupDescriptor { order: elements.len(), recognized_name: recognize(elements.len(), &h), element_order_histogram: h })
}

fn linear_order(g: &Mat3) -> Option<u32> {
    let mut p = g.clone();
    for k in 1..=ORDER_LIMIT {
        if p == Mat3::identity() {
            return Some(k);
        }
        p = &p * g;
    }
    None
}

/// Describes a finite group of matrices, checking closure under products.
pub fn describe_linear(elements: &[Mat3]) -> Result<GroupDescriptor> {
    let set: BTreeSet<&Mat3> = elements.iter().collect();
    if set.len() != elements.len() {
        return Err(Error::NotAGroup("repeated elements".into()));
    }
    for a in elements {
        for b in elements {
            if !set.contains(&(a * b)) {
                return Err(Error::NotAGroup("not closed under products".into()));
            }
        }
    }
    describe_with(elements, linear_order)
}

/// Distinct projective classes among `elements`.
pub fn projective_image(elements: &[ProjElement]) -> Vec<ProjElement> {
    let mut seen = BTreeMap::new();
    for g in elements {
        seen.entry(g.key()).or_insert_with(|| ProjElement { matrix: g.key() });
    }
    seen.into_values().collect()
}

/// Describes a finite subgroup of `PGL₃`, checking closure projectively.
pub fn describe_projective(elements: &[ProjElement]) -> Result<GroupDescriptor> {
    let keys: BTreeSet<Mat3> = elements.iter().map(ProjElement::key).collect();
    if keys.len() != elements.len() {
        return Err(Error::NotAGroup("repeated projective classes".into()));
    }
    for a in elements {
        for b in elements {
            if !keys.contains(&a.compose(b).key()) {
                return Err(Error::NotAGroup("not closed under products".into()));
            }
        }
    }
    let mats: Vec<Mat3> = elements.iter().map(|g| g.matrix.clone()).collect();
    describe_with(&mats, |m| ProjElement { matrix: m.clone() }.projective_order(ORDER_LIMIT))
}

/// Projective closure of `generators`, failing past `limit` elements.
pub fn closure(generators: &[ProjElement], limit: usize) -> Result<Vec<ProjElement>> {
    let id = ProjElement::identity();
    let mut seen: BTreeSet<Mat3> = BTreeSet::from([id.key()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in generators {
            let h = ProjElement { matrix: out[i].compose(g).key() };
            if seen.insert(h.matrix.clone()) {
                if out.len() >= limit {
                    return Err(Error::NotAGroup(format!("more than {limit} elements")));
                }
                out.push(h);
            }
        }
        i += 1;
    }
    out.sort();
    Ok(out)
}

/// A small generating set of a finite projective group, picked greedily in
/// the given order.
pub fn generating_subset(group: &[ProjElement]) -> Result<Vec<ProjElement>> {
    let target = projective_image(group).len();
    let mut gens: Vec<ProjElement> = Vec::new();
    let mut span: BTreeSet<Mat3> = BTreeSet::from([ProjElement::identity().key()]);
    for g in group {
        if span.len() == target {
            break;
        }
        if span.contains(&g.key()) {
            continue;
        }
        gens.push(g.clone());
        span = closure(&gens, target)?.into_iter().map(|e| e.matrix).collect();
    }
    Ok(gens)
}

/// The elements of a finite projective group fixing `v`.
pub fn stabilizer_elements(group: &[ProjElement], v: &VertexClass, precision: u32) -> Result<Vec<ProjElement>> {
    let mut out = Vec::new();
    for g in group {
        if &act(g, v, precision)? == v {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Stabilizer of `v` inside a finite group, described.
pub fn stabilizer_in_finite(group: &[ProjElement], v: &VertexClass, precision: u32) -> Result<GroupDescriptor> {
    let g = projective_image(group);
    describe_projective(&g)?;
    describe_projective(&stabilizer_elements(&g, v, precision)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlambda::QuadRat;

    fn perm(p: [usize; 3]) -> ProjElement {
        ProjElement::new(Mat3::from_fn(|i, j| if p[j] == i { QuadRat::one() } else { QuadRat::zero() })).unwrap()
    }

    #[test]
    fn signed_permutations_mod_sign_are_s4() {
        let gens = [
            perm([1, 2, 0]),
            perm([1, 0, 2]),
            ProjElement::new(Mat3::from_ints([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap(),
        ];
        let g = closure(&gens, 100).unwrap();
        let d = describe_projective(&g).unwrap();
        assert_eq!(d.order, 24);
        assert_eq!(d.recognized_name, "S4");
        assert!(generating_subset(&g).unwrap().len() <= 3);
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let g = closure(&[perm([1, 2, 0])], 10).unwrap();
        assert_eq!(describe_projective(&g).unwrap().recognized_name, "Z3");
    }

    #[test]
    fn closure_limit_and_non_groups() {
        let big = ProjElement::new(Mat3::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert!(matches!(closure(&[big], 50), Err(Error::NotAGroup(_))));
        let not_closed = vec![ProjElement::identity(), perm([1, 2, 0])];
        assert!(matches!(describe_projective(&not_closed), Err(Error::NotAGroup(_))));
    }
}
