use std::collections::BTreeSet;

use pgl3_lattices::group::describe_linear;
use pgl3_lattices::hermitian::*;
use pgl3_lattices::{Mat3, QuadInt, QuadRat};
use proptest::prelude::*;

fn ambient_group(lat: &HermLattice) -> Vec<Mat3> {
    isometry_group(lat).unwrap().iter().map(|u| u.ambient(lat)).collect()
}

fn image(g: &Mat3, lat: &HermLattice) -> HermLattice {
    let b = lat.basis().clone().map(|v| HermVector(g.mul_vec(&v.0)));
    HermLattice::new(b, lat.form_scale().clone()).unwrap()
}

#[test]
fn group_names() {
    let l = describe_linear(&ambient_group(&lattice_l())).unwrap();
    assert_eq!((l.order, l.recognized_name.as_str()), (336, "L3(2)x2"));
    let m = describe_linear(&isometry_group(&lattice_m()).unwrap().into_iter().map(|u| u.entries).collect::<Vec<_>>()).unwrap();
    assert_eq!((m.order, m.recognized_name.as_str()), (42, "2xF21"));
}

#[test]
fn isom_m_inside_isom_l() {
    let gl: BTreeSet<Mat3> = ambient_group(&lattice_l()).into_iter().collect();
    let gm = ambient_group(&lattice_m());
    assert_eq!(gm.len(), 42);
    assert!(gm.iter().all(|g| gl.contains(g)));
}

#[test]
fn isom_l_is_transitive_on_frames_and_roots() {
    let l = lattice_l();
    let g = ambient_group(&l);
    let fs = frames(&l).unwrap();
    let root_sets: BTreeSet<BTreeSet<HermVector>> = fs.iter().map(|f| f.roots.iter().cloned().collect()).collect();
    let orbit: BTreeSet<BTreeSet<HermVector>> =
        g.iter().map(|m| fs[0].roots.iter().map(|r| HermVector(m.mul_vec(&r.0))).collect()).collect();
    assert_eq!(orbit, root_sets);
    let roots: BTreeSet<HermVector> = enumerate_norm(&l, 2).unwrap().into_iter().collect();
    let r0 = roots.iter().next().unwrap();
    let root_orbit: BTreeSet<HermVector> = g.iter().map(|m| HermVector(m.mul_vec(&r0.0))).collect();
    assert_eq!(root_orbit, roots);
}

#[test]
fn isom_l_is_transitive_on_copies_of_m() {
    let l = lattice_l();
    let copies = m_copies_in_l(&l).unwrap();
    let first = &copies[0].lattice;
    let mut hit = vec![false; copies.len()];
    for g in ambient_group(&l) {
        let img = image(&g, first);
        let k = copies.iter().position(|c| c.lattice.same_lattice(&img)).expect("image is a copy of M");
        hit[k] = true;
    }
    assert!(hit.iter().all(|&h| h));
}

fn arb_vector() -> impl Strategy<Value = HermVector> {
    proptest::array::uniform3((-6i64..6, -6i64..6)).prop_map(|c| {
        let [x, y, z] = c.map(|(a, b)| QuadRat::from(QuadInt::new(a, b)));
        HermVector::new(x, y, z)
    })
}

proptest! {
    #[test]
    fn form_is_conjugate_symmetric(x in arb_vector(), y in arb_vector()) {
        let l = lattice_l();
        prop_assert_eq!(l.inner(&x, &y), l.inner(&y, &x).conj());
    }

    #[test]
    fn root_reflections_preserve_l(k in 0usize..42, c in proptest::array::uniform3((-4i64..4, -4i64..4))) {
        let l = lattice_l();
        let r = &enumerate_norm(&l, 2).unwrap()[k];
        let x = l.vector_from_coords(&c.map(|(a, b)| QuadInt::new(a, b)));
        let y = reflect(&l, r, &x).unwrap();
        prop_assert!(l.contains(&y));
        prop_assert_eq!(l.norm(&y), l.norm(&x));
    }
}
